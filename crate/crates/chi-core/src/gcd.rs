//! Multivariate polynomial GCD over the rationals.
//!
//! Strategy: recurse on the largest occurring variable. A polynomial is
//! viewed as univariate in that variable with polynomial coefficients; the
//! content (GCD of those coefficients, one fewer variable) is split off and
//! the primitive parts go through a primitive pseudo-remainder sequence.
//! Rational coefficient contents are discarded throughout, so the result
//! is always an integer-primitive polynomial with positive leading
//! coefficient (the unit normalization used by `RatFunc`).
//!
//! Equality checks never rely on this code alone: `RatFunc::equal` always
//! runs the cross-multiplication oracle alongside the canonical forms.

use alloc::vec::Vec;

use crate::poly::{Monomial, MultiPoly, Var};

/// Coefficients of `p` as a univariate polynomial in `v`, index = degree.
fn coeffs_in(p: &MultiPoly, v: Var) -> Vec<MultiPoly> {
    let deg = p.degree_in(v) as usize;
    let mut out = alloc::vec![MultiPoly::zero(); deg + 1];
    for (m, c) in p.terms() {
        let e = m.exponent(v) as usize;
        let rest: Vec<(Var, u32)> = m
            .pairs()
            .iter()
            .filter(|&&(w, _)| w != v)
            .cloned()
            .collect();
        out[e].add_term(Monomial::from_pairs(&rest), c.clone());
    }
    out
}

/// Pseudo-remainder of `a` by `b`, both viewed in the variable `v`.
/// Requires `deg_v(a) >= deg_v(b) > 0` in exponents of `v`... callers only
/// need the invariant `prem` lowers the degree in `v` below `deg_v(b)`.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
    let db = b.degree_in(v);
    let bc = coeffs_in(b, v);
    let lead_b = bc[db as usize].clone();
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v);
        if dr < db {
            break;
        }
        let rc = coeffs_in(&r, v);
        let lead_r = rc[dr as usize].clone();
        // r <- lead_b * r - lead_r * v^(dr-db) * b
        let shift = Monomial::from_pairs(&[(v, dr - db)]);
        r = r
            .mul(&lead_b)
            .sub(&b.mul(&lead_r).mul_term(&shift, &crate::poly::rat(1)));
    }
    r
}

/// GCD of the polynomial coefficients, primitive and positively normalized.
fn coeff_gcd(coeffs: &[MultiPoly]) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.primitive_part() } else { gcd(&g, c) };
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive GCD of two rational-coefficient polynomials (unit-normalized:
/// integer coefficients with content 1 and positive leading coefficient).
/// Rational contents are treated as units; `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    // Nonzero constants are units over the rationals.
    if a.max_var().is_none() || b.max_var().is_none() {
        return MultiPoly::one();
    }
    let v = match a.max_var().max(b.max_var()) {
        Some(v) => v,
        None => return MultiPoly::one(),
    };
    if a.degree_in(v) == 0 || b.degree_in(v) == 0 {
        // v occurs in only one argument: it cannot divide the gcd, so
        // recurse into the coefficients of the one that contains it.
        let (with_v, other) = if a.degree_in(v) > 0 { (a, b) } else { (b, a) };
        let cont = coeff_gcd(&coeffs_in(with_v, v));
        return gcd(&cont, other);
    }

    let ca = coeff_gcd(&coeffs_in(a, v));
    let cb = coeff_gcd(&coeffs_in(b, v));
    let cont = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");

    // Primitive PRS on the primitive parts.
    let (mut r0, mut r1) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    while !r1.is_zero() {
        let r2 = pseudo_rem(&r0, &r1, v);
        let r2 = if r2.is_zero() {
            r2
        } else {
            // Strip the full multivariate content in v to contain growth.
            let c = coeff_gcd(&coeffs_in(&r2, v));
            r2.div_exact(&c).expect("content divides").primitive_part()
        };
        r0 = r1;
        r1 = r2;
    }
    if r0.degree_in(v) == 0 {
        // Primitive parts are coprime in v.
        return cont.primitive_part();
    }
    let pp = {
        let c = coeff_gcd(&coeffs_in(&r0, v));
        r0.div_exact(&c).expect("content divides")
    };
    cont.mul(&pp).primitive_part()
}

/// Least common multiple, unit-normalized like [`gcd`]. `lcm(0, _) = 0`.
pub fn lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero();
    }
    let g = gcd(a, b);
    a.div_exact(&g)
        .expect("gcd divides")
        .mul(b)
        .primitive_part()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn x(v: Var) -> MultiPoly {
        MultiPoly::var(v)
    }
    fn one() -> MultiPoly {
        MultiPoly::one()
    }

    #[test]
    fn univariate_gcd() {
        // (x1^2 - 1) and (x1^2 - 2x1 + 1) share (x1 - 1)
        let a = x(1).mul(&x(1)).sub(&one());
        let b = x(1).sub(&one()).mul(&x(1).sub(&one()));
        assert_eq!(gcd(&a, &b), x(1).sub(&one()));
    }

    #[test]
    fn multivariate_gcd() {
        // (x1 - x2)(x1 + x3) vs (x1 - x2)(x2 + x3)
        let f = x(1).sub(&x(2));
        let a = f.mul(&x(1).add(&x(3)));
        let b = f.mul(&x(2).add(&x(3)));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn coprime_gcd_is_one() {
        let a = x(1).add(&x(2));
        let b = x(1).sub(&x(2));
        assert_eq!(gcd(&a, &b), one());
    }

    #[test]
    fn sign_and_content_normalization() {
        let f = x(1).sub(&x(2)); // leading term x1
        let a = f.neg().scale(&rat(6));
        let b = f.scale(&rat(4));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn gcd_with_disjoint_variables() {
        let a = x(1).add(&one());
        let b = x(2).add(&one());
        assert_eq!(gcd(&a, &b), one());
    }

    #[test]
    fn lcm_of_shared_factors() {
        let f = x(1).sub(&x(2));
        let a = f.mul(&x(1));
        let b = f.mul(&x(2));
        let l = lcm(&a, &b);
        assert_eq!(l, f.mul(&x(1)).mul(&x(2)));
    }

    #[test]
    fn chain_denominator_cancellation() {
        // The cancellation pattern hit by the recursive shuffle sums:
        // gcd((x2-x1)*(1-x3), (x2-x1)*x3) is x1 - x2 (positive leading).
        let d = x(2).sub(&x(1));
        let a = d.mul(&one().sub(&x(3)));
        let b = d.mul(&x(3));
        assert_eq!(gcd(&a, &b), d.neg());
    }
}
