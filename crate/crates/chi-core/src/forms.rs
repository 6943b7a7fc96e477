//! Exterior algebra with rational-function coefficients: the logarithmic
//! forms `theta_N`, pullbacks along affine substitutions, and the two
//! top-form identities on the cube (the pullback closed form and the
//! shuffle-sum / product comparison).
//!
//! Simplex-side forms live in free variables `z_0..z_N` (variable index =
//! subscript); cube-side forms in `t_1..t_N`. The affine relation of the
//! simplex enters only through the explicit substitution `d_N`, never as a
//! quotient ring.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::character::chi;
use crate::perm::shuffles;
use crate::poly::{Monomial, MultiPoly, Var};
use crate::ratfunc::{RatFunc, RatFuncError};
use crate::report::VerificationReport;

/// Homogeneous exterior form: strictly increasing differential index
/// tuples with `RatFunc` coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffForm {
    pub degree: usize,
    terms: BTreeMap<Vec<Var>, RatFunc>,
}

impl DiffForm {
    pub fn zero(degree: usize) -> Self {
        DiffForm {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Degree-zero form from a scalar.
    pub fn scalar(c: RatFunc) -> Self {
        let mut f = DiffForm::zero(0);
        f.add_term(Vec::new(), c);
        f
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Var>, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, tuple: &[Var]) -> RatFunc {
        self.terms.get(tuple).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Adds `c * d(tuple)`, sorting the tuple and tracking the sign;
    /// repeated indices annihilate the term.
    pub fn add_term(&mut self, mut tuple: Vec<Var>, c: RatFunc) {
        assert_eq!(tuple.len(), self.degree, "tuple length/degree mismatch");
        if c.is_zero() {
            return;
        }
        // insertion sort, counting transpositions
        let mut swaps = 0usize;
        for i in 1..tuple.len() {
            let mut j = i;
            while j > 0 && tuple[j - 1] > tuple[j] {
                tuple.swap(j - 1, j);
                swaps += 1;
                j -= 1;
            }
        }
        for w in tuple.windows(2) {
            if w[0] == w[1] {
                return;
            }
        }
        let signed = if swaps % 2 == 0 { c } else { c.neg() };
        match self.terms.entry(tuple) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(signed);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&signed);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &DiffForm) -> DiffForm {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> DiffForm {
        DiffForm {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &DiffForm) -> DiffForm {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RatFunc) -> DiffForm {
        let mut out = DiffForm::zero(self.degree);
        for (t, k) in &self.terms {
            out.add_term(t.clone(), k.mul(c));
        }
        out
    }

    pub fn wedge(&self, other: &DiffForm) -> DiffForm {
        let mut out = DiffForm::zero(self.degree + other.degree);
        for (ta, ca) in &self.terms {
            for (tb, cb) in &other.terms {
                let mut tuple = ta.clone();
                tuple.extend_from_slice(tb);
                out.add_term(tuple, ca.mul(cb));
            }
        }
        out
    }

    /// Exterior derivative (coefficients differentiated by quotient rule).
    pub fn d(&self) -> DiffForm {
        let mut out = DiffForm::zero(self.degree + 1);
        for (t, c) in &self.terms {
            let mut vars = c.num().vars();
            for v in c.den().vars() {
                if let Err(i) = vars.binary_search(&v) {
                    vars.insert(i, v);
                }
            }
            for v in vars {
                // d(n/d) = (n' d - n d') / d^2
                let num = c.num();
                let den = c.den();
                let dnum = num.derivative(v);
                let dden = den.derivative(v);
                let deriv = RatFunc::new(
                    dnum.mul(den).sub(&num.mul(&dden)),
                    den.mul(den),
                );
                if deriv.is_zero() {
                    continue;
                }
                let mut tuple = alloc::vec![v];
                tuple.extend_from_slice(t);
                out.add_term(tuple, deriv);
            }
        }
        out
    }
}

/// Affine substitution `target variable -> polynomial in source variables`.
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    pub map: BTreeMap<Var, MultiPoly>,
}

impl Substitution {
    pub fn new(map: BTreeMap<Var, MultiPoly>) -> Self {
        Substitution { map }
    }

    /// The coordinate change `d_N`: `z_0 = t_1`, `z_k = t_{k+1} - t_k`,
    /// `z_N = 1 - t_N` (with `z_0 = 1` when `N = 0`).
    pub fn dif(n: u32) -> Self {
        let mut map = BTreeMap::new();
        for i in 0..=n {
            let p = if i == 0 && n == 0 {
                MultiPoly::one()
            } else if i == 0 {
                MultiPoly::var(1)
            } else if i < n {
                MultiPoly::var((i + 1) as Var).sub(&MultiPoly::var(i as Var))
            } else {
                MultiPoly::one().sub(&MultiPoly::var(n as Var))
            };
            map.insert(i as Var, p);
        }
        Substitution { map }
    }

    /// Variable permutation `t_i -> t_{w(i)}` given by a table on `1..=n`.
    pub fn permute(word: &[usize]) -> Self {
        let mut map = BTreeMap::new();
        for (i, &w) in word.iter().enumerate() {
            map.insert((i + 1) as Var, MultiPoly::var(w as Var));
        }
        Substitution { map }
    }

    /// Shift every variable index by `k`.
    pub fn shift(vars: &[Var], k: Var) -> Self {
        let mut map = BTreeMap::new();
        for &v in vars {
            map.insert(v, MultiPoly::var(v + k));
        }
        Substitution { map }
    }
}

/// Pullback: substitute into coefficients and expand each `d(target var)`
/// linearly through the substitution.
pub fn pullback(form: &DiffForm, subst: &Substitution) -> Result<DiffForm, RatFuncError> {
    let mut out = DiffForm::zero(form.degree);
    for (tuple, coeff) in form.terms() {
        let new_coeff = coeff.substitute(&subst.map)?;
        if new_coeff.is_zero() {
            continue;
        }
        // Expand the wedge of the substituted differentials.
        let mut expansion: Vec<(Vec<Var>, RatFunc)> = alloc::vec![(Vec::new(), new_coeff)];
        for v in tuple {
            let image = subst
                .map
                .get(v)
                .cloned()
                .unwrap_or_else(|| MultiPoly::var(*v));
            let mut next = Vec::new();
            for (prefix, c) in &expansion {
                for u in image.vars() {
                    let partial = image.derivative(u);
                    if partial.is_zero() {
                        continue;
                    }
                    let mut t = prefix.clone();
                    t.push(u);
                    next.push((t, c.mul(&RatFunc::from_poly(partial))));
                }
            }
            expansion = next;
        }
        for (t, c) in expansion {
            out.add_term(t, c);
        }
    }
    Ok(out)
}

/// The logarithmic form
/// `theta_N = sum_r (-1)^r (dz_0/z_0) ^ ... omit r ... ^ (dz_N/z_N)`
/// in variables `z_0..z_N`; `theta_0 = 1`.
pub fn theta_form(n: u32) -> DiffForm {
    if n == 0 {
        return DiffForm::scalar(RatFunc::one());
    }
    let mut out = DiffForm::zero(n as usize);
    for r in 0..=n {
        let tuple: Vec<Var> = (0..=n).filter(|&i| i != r).map(|i| i as Var).collect();
        let den = Monomial::from_pairs(
            &(0..=n)
                .filter(|&i| i != r)
                .map(|i| (i as Var, 1))
                .collect::<Vec<_>>(),
        );
        let sign = if r % 2 == 0 { RatFunc::one() } else { RatFunc::one().neg() };
        let coeff = sign
            .mul(&RatFunc::new(
                MultiPoly::one(),
                MultiPoly::from_term(den, crate::poly::rat(1)),
            ));
        out.add_term(tuple, coeff);
    }
    out
}

/// `(-1)^N chi_N(t_1..t_N) dt_1 ^ ... ^ dt_N`, the expected pullback.
fn expected_pullback(n: u32) -> DiffForm {
    let args: Vec<Var> = (1..=n).collect();
    let mut c = chi(n as usize, &args).expect("distinct").value;
    if n % 2 == 1 {
        c = c.neg();
    }
    let mut out = DiffForm::zero(n as usize);
    out.add_term(args, c);
    out
}

/// Checks `d_N^*(theta_N) = (-1)^N chi_N(t_1,...,t_N) dt_1 ^ ... ^ dt_N`.
pub fn verify_theta_pullback(n: u32) -> VerificationReport {
    assert!(n >= 1);
    let pb = pullback(&theta_form(n), &Substitution::dif(n)).expect("denominators survive");
    let expect = expected_pullback(n);
    let pass = pb == expect;
    VerificationReport::new("theta-pullback", alloc::vec![("n", n as i64)])
        .with_result(pass, pb.num_terms(), expect.num_terms())
        .detail(
            "coefficient",
            pb.coefficient(&(1..=n).collect::<Vec<_>>()).render("t"),
        )
}

/// Checks the two top-form expressions on the `(m+n)`-cube:
/// the signed shuffle sum of permuted pullbacks equals the wedge of the
/// two factor pullbacks (both equal `(-1)^{m+n} chi_m chi_n dt`).
pub fn verify_theta_ez(m: u32, n: u32) -> VerificationReport {
    let total = m + n;
    let omega = pullback(&theta_form(total), &Substitution::dif(total)).expect("denominators");

    // Shuffle-sum side: push each term forward along the cubical action,
    // i.e. pull back along its inverse, with orientation sign eps(tau).
    let mut lhs = DiffForm::zero(total as usize);
    for tau in &shuffles(m as usize, n as usize).elements {
        let inv = tau.inverse();
        let word: Vec<usize> = (1..=total as usize).map(|i| inv.apply(i)).collect();
        let moved = pullback(&omega, &Substitution::permute(&word)).expect("denominators");
        let signed = if tau.sign() == 1 { moved } else { moved.neg() };
        lhs = lhs.add(&signed);
    }

    // Product side: wedge of the factor pullbacks, the second factor's
    // variables shifted to t_{m+1}..t_{m+n}.
    let left = pullback(&theta_form(m), &Substitution::dif(m)).expect("denominators");
    let right = pullback(&theta_form(n), &Substitution::dif(n)).expect("denominators");
    let right_vars: Vec<Var> = (1..=n).collect();
    let right_shifted = pullback(&right, &Substitution::shift(&right_vars, m)).expect("shift");
    let rhs = left.wedge(&right_shifted);

    // Anchor value: (-1)^{m+n} chi_m(t_1..t_m) chi_n(t_{m+1}..t_{m+n}) dt.
    let mut anchor_coeff = chi(m as usize, &(1..=m).collect::<Vec<_>>())
        .expect("distinct")
        .value
        .mul(
            &chi(n as usize, &((m + 1)..=total).collect::<Vec<_>>())
                .expect("distinct")
                .value,
        );
    if total % 2 == 1 {
        anchor_coeff = anchor_coeff.neg();
    }
    let mut anchor = DiffForm::zero(total as usize);
    anchor.add_term((1..=total).collect(), anchor_coeff);

    let sides_equal = lhs == rhs;
    let anchor_ok = lhs == anchor;
    VerificationReport::new(
        "theta-ez",
        alloc::vec![("m", m as i64), ("n", n as i64)],
    )
    .with_result(sides_equal && anchor_ok, lhs.num_terms(), rhs.num_terms())
    .detail("sides", if sides_equal { "equal" } else { "different" })
    .detail(
        "closed_form",
        if anchor_ok {
            format!("(-1)^{} chi_{} chi_{} dt", total, m, n)
        } else {
            format!("unexpected")
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn rf_var(v: Var) -> RatFunc {
        RatFunc::var(v)
    }

    #[test]
    fn antisymmetry() {
        let mut a = DiffForm::zero(2);
        a.add_term(alloc::vec![1, 2], RatFunc::one());
        let mut b = DiffForm::zero(2);
        b.add_term(alloc::vec![2, 1], RatFunc::one());
        assert_eq!(a, b.neg());
        let mut c = DiffForm::zero(2);
        c.add_term(alloc::vec![1, 1], RatFunc::one());
        assert!(c.is_zero());
    }

    #[test]
    fn wedge_graded_commutative() {
        let mut one_form = DiffForm::zero(1);
        one_form.add_term(alloc::vec![1], rf_var(2));
        let mut other = DiffForm::zero(1);
        other.add_term(alloc::vec![2], rf_var(1));
        let ab = one_form.wedge(&other);
        let ba = other.wedge(&one_form);
        assert_eq!(ab, ba.neg()); // odd * odd
        let mut two_form = DiffForm::zero(2);
        two_form.add_term(alloc::vec![3, 4], RatFunc::one());
        assert_eq!(one_form.wedge(&two_form), two_form.wedge(&one_form));
    }

    #[test]
    fn theta_term_count_and_small_case() {
        for n in 1..=5u32 {
            assert_eq!(theta_form(n).num_terms(), n as usize + 1);
        }
        assert_eq!(theta_form(0), DiffForm::scalar(RatFunc::one()));
        // theta_1 = dz1/z1 - dz0/z0
        let t1 = theta_form(1);
        assert!(t1
            .coefficient(&[1])
            .equal(&RatFunc::new(MultiPoly::one(), MultiPoly::var(1))));
        assert!(t1
            .coefficient(&[0])
            .equal(&RatFunc::new(MultiPoly::one(), MultiPoly::var(0)).neg()));
    }

    #[test]
    fn pullback_of_dz0_under_dif1() {
        // dz0 under d_1 is dt1.
        let mut dz0 = DiffForm::zero(1);
        dz0.add_term(alloc::vec![0], RatFunc::one());
        let pb = pullback(&dz0, &Substitution::dif(1)).unwrap();
        let mut expect = DiffForm::zero(1);
        expect.add_term(alloc::vec![1], RatFunc::one());
        assert_eq!(pb, expect);
    }

    #[test]
    fn theta_pullback_n1_by_hand() {
        // -dt1/(1-t1) - dt1/t1 = -(1/(t1(1-t1))) dt1
        let r = verify_theta_pullback(1);
        assert!(r.pass, "{:?}", r);
        let pb = pullback(&theta_form(1), &Substitution::dif(1)).unwrap();
        let expect = RatFunc::new(
            MultiPoly::one(),
            MultiPoly::var(1).mul(&MultiPoly::one().sub(&MultiPoly::var(1))),
        )
        .neg();
        assert!(pb.coefficient(&[1]).equal(&expect));
    }

    #[test]
    fn theta_pullback_small_n() {
        for n in 1..=3u32 {
            assert!(verify_theta_pullback(n).pass, "n={n}");
        }
    }

    #[test]
    fn pullback_commutes_with_wedge() {
        let s = Substitution::dif(2);
        let mut a = DiffForm::zero(1);
        a.add_term(alloc::vec![0], rf_var(1));
        let mut b = DiffForm::zero(1);
        b.add_term(alloc::vec![2], rf_var(0));
        let lhs = pullback(&a.wedge(&b), &s).unwrap();
        let rhs = pullback(&a, &s).unwrap().wedge(&pullback(&b, &s).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_commutes_with_affine_pullback() {
        let s = Substitution::dif(2);
        let mut a = DiffForm::zero(1);
        a.add_term(alloc::vec![0], rf_var(1).mul(&rf_var(2)));
        let lhs = pullback(&a.d(), &s).unwrap();
        let rhs = pullback(&a, &s).unwrap().d();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_ez_small() {
        for (m, n) in [(1u32, 0u32), (0, 1), (1, 1), (2, 1)] {
            let r = verify_theta_ez(m, n);
            assert!(r.pass, "theta-ez failed at ({m},{n}): {:?}", r);
        }
        let _ = rat(0);
    }

    #[test]
    fn theta_ez_1_0_value() {
        // Both sides are -chi_1(t1) dt1.
        let r = verify_theta_ez(1, 0);
        assert!(r.pass);
        let left = pullback(&theta_form(1), &Substitution::dif(1)).unwrap();
        let expect = chi(1, &[1]).unwrap().value.neg();
        assert!(left.coefficient(&[1]).equal(&expect));
    }
}
