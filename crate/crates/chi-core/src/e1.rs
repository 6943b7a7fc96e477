//! The first spectral-sequence page for two grading directions: homogeneous
//! polynomials `Q[x, y]_p`, identified with `Q[x]_{<= p}` via `y -> 1`,
//! carrying the parity monomial differential
//! `delta(x^a) = (-1)^p tau(a) x^{a+1} + (-1)^{p-a} tau(p-a) x^a`,
//! where `tau` is the odd-parity flag. Kernels and images are computed by
//! exact Gaussian elimination and compared against the closed-form bases.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::Matrix;
use crate::poly::{rat, Rat};
use crate::report::VerificationReport;
use crate::total::{BasisKey, CoefficientModel, MultiIndex};

/// Odd-parity flag `tau(m)`.
pub fn parity_flag(m: i64) -> i64 {
    if m.rem_euclid(2) == 0 {
        0
    } else {
        1
    }
}

/// The two-direction monomial model: keys are exponent pairs `[a, b]` for
/// `x^a y^b`, `d` is zero, and each `delta^j` raises its exponent when it
/// is odd (no sign at the model level; the alternating signs enter through
/// the total differential's target-index rule).
#[derive(Clone, Copy, Debug, Default)]
pub struct E1Model;

impl CoefficientModel for E1Model {
    fn directions(&self) -> usize {
        2
    }

    /// `x^a y^b` sits at multi-index `(a, b)` in total degree zero.
    fn key_bidegree(&self, key: &BasisKey) -> (i64, MultiIndex) {
        (-((key[0] + key[1]) as i64), vec![key[0], key[1]])
    }

    fn d_action(&self, _key: &BasisKey) -> Vec<(BasisKey, i64)> {
        Vec::new()
    }

    fn delta_action(&self, j: usize, key: &BasisKey) -> Vec<(BasisKey, i64)> {
        let e = key[j - 1];
        if e % 2 == 1 {
            let mut new = key.clone();
            new[j - 1] += 1;
            vec![(new, 1)]
        } else {
            Vec::new()
        }
    }
}

/// `delta` on the monomial `x^a` inside `Q[x]_{<= p}`, returned as
/// `(coefficient, exponent)` pairs inside `Q[x]_{<= p+1}`.
pub fn e1_delta(p: u32, a: u32) -> Vec<(i64, u32)> {
    assert!(a <= p);
    let sign_p = if p % 2 == 0 { 1 } else { -1 };
    let sign_pa = if (p - a) % 2 == 0 { 1 } else { -1 };
    let mut out = Vec::new();
    let c1 = sign_p * parity_flag(a as i64);
    if c1 != 0 {
        out.push((c1, a + 1));
    }
    let c2 = sign_pa * parity_flag((p - a) as i64);
    if c2 != 0 {
        out.push((c2, a));
    }
    out
}

/// Matrix of `delta^p : Q[x]_{<= p} -> Q[x]_{<= p+1}` in the monomial
/// bases (rows = target exponents `0..=p+1`, columns = source `0..=p`).
pub fn e1_matrix(p: u32) -> Matrix {
    let mut m = Matrix::zero(p as usize + 2, p as usize + 1);
    for a in 0..=p {
        for (c, e) in e1_delta(p, a) {
            m.set(e as usize, a as usize, rat(c));
        }
    }
    m
}

/// Per-degree slice of the page computation.
#[derive(Clone, Debug)]
pub struct PageRow {
    pub p: u32,
    pub kernel_dim: usize,
    pub image_prev_dim: usize,
    /// Exponents of the monomial kernel basis when the kernel happens to be
    /// spanned by monomials (even `p`); empty otherwise.
    pub kernel_monomials: Vec<u32>,
    /// `Im(delta^{p-1}) == ker(delta^p)` as subspaces.
    pub image_equals_kernel: bool,
    pub cohomology_dim: usize,
}

#[derive(Clone, Debug)]
pub struct PageReport {
    pub p_max: u32,
    pub rows: Vec<PageRow>,
    pub report: VerificationReport,
}

/// Computes kernels and images of the page differentials for
/// `1 <= p <= p_max` and checks the expected dimensions, the monomial
/// kernel bases in even degree, exactness in positive degree, and the
/// one-dimensional cohomology in degree zero.
pub fn e1_page(p_max: u32) -> PageReport {
    assert!(p_max >= 1);
    let mut rows = Vec::new();
    let mut all_ok = true;
    let mut detail_mismatch: Option<String> = None;

    for p in 1..=p_max {
        let m_p = e1_matrix(p);
        let m_prev = e1_matrix(p - 1);

        let kernel = m_p.kernel_basis();
        let kernel_dim = kernel.len();

        // Image of delta^{p-1}: row space of the transposed matrix, i.e.
        // span of the columns, expressed in the target basis Q[x]_{<= p}.
        let cols: Vec<Vec<Rat>> = (0..m_prev.cols)
            .map(|j| (0..m_prev.rows).map(|i| m_prev.get(i, j).clone()).collect())
            .collect();
        let image_basis = Matrix::from_rows(cols).row_space_basis();
        let image_prev_dim = image_basis.len();

        // Compare subspaces via canonical RREF bases. Kernel vectors are
        // length p+1 (source space of delta^p), as are image vectors
        // (target space of delta^{p-1}).
        let kernel_canon = if kernel.is_empty() {
            Vec::new()
        } else {
            Matrix::from_rows(kernel.clone()).row_space_basis()
        };
        let image_equals_kernel = image_basis == kernel_canon;

        // Closed-form expectations.
        let r = p / 2;
        let expected_kernel_dim = if p % 2 == 0 { r as usize + 1 } else { r as usize };
        let dims_ok = kernel_dim == expected_kernel_dim;

        let mut kernel_monomials = Vec::new();
        let mut monomial_ok = true;
        if p % 2 == 0 {
            // Kernel must be exactly the span of the even monomials.
            let mut expect = Matrix::zero(r as usize + 1, p as usize + 1);
            for (row, e) in (0..=p).step_by(2).enumerate() {
                expect.set(row, e as usize, rat(1));
                kernel_monomials.push(e);
            }
            monomial_ok = expect.row_space_basis() == kernel_canon;
        }

        // dim(ker / (im intersect ker)) via dim(im + ker).
        let mut stacked = image_basis.clone();
        stacked.extend(kernel.iter().cloned());
        let sum_dim = if stacked.is_empty() {
            0
        } else {
            Matrix::from_rows(stacked).rank()
        };
        let intersection_dim = image_prev_dim + kernel_dim - sum_dim;
        let cohomology_dim = kernel_dim - intersection_dim;
        let row_ok = dims_ok && image_equals_kernel && monomial_ok && cohomology_dim == 0;
        if !row_ok && detail_mismatch.is_none() {
            detail_mismatch = Some(alloc::format!(
                "p={}: ker={} (expected {}), im={}, exact={}, monomial={}",
                p, kernel_dim, expected_kernel_dim, image_prev_dim, image_equals_kernel, monomial_ok
            ));
        }
        all_ok &= row_ok;

        rows.push(PageRow {
            p,
            kernel_dim,
            image_prev_dim,
            kernel_monomials,
            image_equals_kernel,
            cohomology_dim,
        });
    }

    // Degree zero: delta^0 kills the constants, nothing maps in, so the
    // page starts with a single one-dimensional class.
    let h0 = e1_matrix(0).kernel_basis().len();
    all_ok &= h0 == 1;

    let mut report = VerificationReport::new(
        "e1-page",
        vec![("p_max", p_max as i64)],
    )
    .with_result(all_ok, rows.len(), rows.len())
    .detail("degree_zero_class", if h0 == 1 { "one-dimensional" } else { "unexpected" });
    if let Some(d) = detail_mismatch {
        report = report.detail("first_mismatch", d);
    }

    PageReport {
        p_max,
        rows,
        report,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_values() {
        // p=2, a=1: x^2 - x
        assert_eq!(e1_delta(2, 1), vec![(1, 2), (-1, 1)]);
        // p=2, a=0: 0
        assert_eq!(e1_delta(2, 0), vec![]);
        // p=3, a=0: -1 (constant term)
        assert_eq!(e1_delta(3, 0), vec![(-1, 0)]);
    }

    #[test]
    fn page_small() {
        let page = e1_page(4);
        assert!(page.report.pass);
        let p2 = &page.rows[1];
        assert_eq!(p2.p, 2);
        assert_eq!(p2.kernel_dim, 2);
        assert_eq!(p2.kernel_monomials, vec![0, 2]);
        assert_eq!(p2.image_prev_dim, 2);
        let p4 = &page.rows[3];
        assert_eq!(p4.kernel_dim, 3);
        assert_eq!(p4.kernel_monomials, vec![0, 2, 4]);
    }

    #[test]
    fn page_20_concentrated_in_degree_zero() {
        let page = e1_page(20);
        assert!(page.report.pass);
        for row in &page.rows {
            assert_eq!(row.cohomology_dim, 0, "p={}", row.p);
            assert!(row.image_equals_kernel);
        }
    }

    #[test]
    fn collapsed_formula_matches_total_differential() {
        // The one-variable differential is the y -> 1 collapse of the
        // total differential over the monomial model, up to the global
        // sign separating the source- and target-index conventions.
        use crate::total::{total_d, BigradedElement};
        for p in 0..=12u32 {
            for a in 0..=p {
                let b = p - a;
                let mut x = BigradedElement::zero(0);
                x.add_term(vec![a, b], vec![a, b], rat(1));
                assert!(x.well_formed(&E1Model));
                let dx = total_d(&E1Model, &x);
                let mut collapsed: Vec<(i64, u32)> = Vec::new();
                for (idx, comp) in &dx.terms {
                    for (_, c) in comp {
                        let int: i64 = {
                            use num_traits::ToPrimitive;
                            c.to_integer().to_i64().unwrap()
                        };
                        collapsed.push((-int, idx[0]));
                    }
                }
                collapsed.sort_by_key(|&(_, e)| core::cmp::Reverse(e));
                let mut expected = e1_delta(p, a);
                expected.sort_by_key(|&(_, e)| core::cmp::Reverse(e));
                assert_eq!(collapsed, expected, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn monomial_model_differential_squares_to_zero() {
        use crate::total::{total_d, BigradedElement};
        for a in 0..=6u32 {
            for b in 0..=6u32 {
                let mut x = BigradedElement::zero(0);
                x.add_term(vec![a, b], vec![a, b], rat(1));
                let ddx = total_d(&E1Model, &total_d(&E1Model, &x));
                assert!(ddx.is_zero(), "a={a} b={b}");
            }
        }
    }
}
