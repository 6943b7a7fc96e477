//! Fractions kept as multisets of (integer-coefficient) linear factors,
//! and an exact zero test for signed sums of such fractions.
//!
//! The shuffle-type identities are sums of up to 70 simple fractions whose
//! fully reduced common denominator is far too large to expand once and
//! reduce by GCD. Instead the denominators never leave factored form: the
//! least common multiple is a multiset union, each term is multiplied by
//! its cofactor (the missing factors), and the expanded numerators are
//! summed. All coefficients stay small integers, so this kernel runs over
//! `i64` and is independent of the rational-function GCD machinery.

use alloc::collections::BTreeMap;

use crate::poly::{Monomial, MultiPoly};

/// A polynomial factor, unit-normalized so that equal factors compare
/// equal: integer coefficients with positive leading coefficient. The
/// normalizing sign is returned separately.
pub fn normalize_factor(p: &MultiPoly<i64>) -> (MultiPoly<i64>, i64) {
    assert!(!p.is_zero(), "zero factor");
    let lead_neg = p.leading().map(|(_, c)| *c < 0).unwrap_or(false);
    if lead_neg {
        (p.neg(), -1)
    } else {
        (p.clone(), 1)
    }
}

/// `sign * numerator / (product of factors)`, factors unit-normalized.
#[derive(Clone, Debug)]
pub struct FactoredFraction {
    pub sign: i64,
    pub numerator: MultiPoly<i64>,
    pub den_factors: BTreeMap<MultiPoly<i64>, u32>,
}

impl FactoredFraction {
    pub fn new(sign: i64, numerator: MultiPoly<i64>, factors: &[MultiPoly<i64>]) -> Self {
        let mut den_factors: BTreeMap<MultiPoly<i64>, u32> = BTreeMap::new();
        let mut sign = sign;
        for f in factors {
            let (nf, s) = normalize_factor(f);
            sign *= s;
            *den_factors.entry(nf).or_insert(0) += 1;
        }
        FactoredFraction {
            sign,
            numerator,
            den_factors,
        }
    }

    /// Single monomial numerator.
    pub fn monomial_over(sign: i64, m: Monomial, factors: &[MultiPoly<i64>]) -> Self {
        Self::new(sign, MultiPoly::from_term(m, 1), factors)
    }
}

/// Multiset least common multiple of the denominators.
fn lcm_factors(terms: &[FactoredFraction]) -> BTreeMap<MultiPoly<i64>, u32> {
    let mut lcm: BTreeMap<MultiPoly<i64>, u32> = BTreeMap::new();
    for t in terms {
        for (f, &e) in &t.den_factors {
            let cur = lcm.entry(f.clone()).or_insert(0);
            if *cur < e {
                *cur = e;
            }
        }
    }
    lcm
}

/// Exact check that the signed sum of the fractions is zero, by clearing
/// the factored common denominator and expanding. Returns the common
/// denominator's factor count alongside the verdict.
pub fn sum_is_zero(terms: &[FactoredFraction]) -> (bool, usize) {
    let lcm = lcm_factors(terms);
    let mut acc: MultiPoly<i64> = MultiPoly::zero();
    for t in terms {
        let mut part = t.numerator.scale(&t.sign);
        for (f, &e_lcm) in &lcm {
            let e_t = t.den_factors.get(f).copied().unwrap_or(0);
            for _ in e_t..e_lcm {
                part = part.mul(f);
            }
        }
        acc = acc.add(&part);
    }
    (acc.is_zero(), lcm.len())
}
