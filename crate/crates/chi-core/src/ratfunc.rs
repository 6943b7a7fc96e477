//! Rational functions in canonical form.
//!
//! Invariants: the denominator is nonzero, shares no factor with the
//! numerator, has coprime integer coefficients (content 1) and a positive
//! leading coefficient in graded-lex order. Under this normalization equal
//! values have identical representations, so `==` is value equality.
//!
//! `equal` additionally runs an independent cross-multiplication check so a
//! normalization bug in the GCD can never produce a false "verified".

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::gcd;
use crate::poly::{rat, Monomial, MultiPoly, PolyDisplay, Rat, Var};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RatFuncError {
    DivisionByZero,
    /// A substitution sent the denominator to the zero polynomial; the
    /// payload is its rendering before substitution.
    ZeroDenominator(String),
    /// Relabel map collides on variables that occur in the function.
    NonInjectiveRelabel(Var, Var),
}

impl fmt::Display for RatFuncError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatFuncError::DivisionByZero => write!(f, "division by zero"),
            RatFuncError::ZeroDenominator(d) => {
                write!(f, "substitution maps denominator {} to zero", d)
            }
            RatFuncError::NonInjectiveRelabel(a, b) => {
                write!(f, "relabel sends occurring variables {} and {} to the same index", a, b)
            }
        }
    }
}

impl RatFunc {
    /// Canonicalize `num / den`. Panics if `den` is the zero polynomial;
    /// use [`RatFunc::div`] for a checked quotient.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num: MultiPoly::zero(),
                den: MultiPoly::one(),
            };
        }
        let g = gcd::gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        // Scale so den is integer-primitive with positive leading coefficient.
        let mut c = den.content();
        if den.leading().map(|(_, lc)| lc.is_negative()).unwrap_or(false) {
            c = -c;
        }
        let inv = rat(1) / c;
        den = den.scale(&inv);
        num = num.scale(&inv);
        RatFunc { num, den }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        // a/b + c/d = (a*(d/g) + c*(b/g)) / (b*(d/g)) with g = gcd(b, d).
        let g = gcd::gcd(&self.den, &other.den);
        let db = self.den.div_exact(&g).expect("gcd divides");
        let dd = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&dd).add(&other.num.mul(&db));
        let den = self.den.mul(&dd);
        RatFunc::new(num, den)
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        // Cross-reduce before multiplying to keep intermediates small.
        let g1 = gcd::gcd(&self.num, &other.den);
        let g2 = gcd::gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RatFunc::new(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn div(&self, other: &Self) -> Result<Self, RatFuncError> {
        if other.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        Ok(self.mul(&RatFunc {
            num: other.den.clone(),
            den: other.num.clone(),
        }))
    }

    pub fn inv(&self) -> Result<Self, RatFuncError> {
        RatFunc::one().div(self)
    }

    /// Value equality through two independent routes: canonical-form
    /// comparison of the difference, and cross-multiplication. Panics if
    /// the two routes ever disagree (that would mean a normalization bug).
    pub fn equal(&self, other: &Self) -> bool {
        let canonical = self.sub(other).is_zero();
        let cross = self.num.mul(&other.den) == other.num.mul(&self.den);
        assert_eq!(
            canonical, cross,
            "canonical-form equality and cross-multiplication oracle disagree"
        );
        canonical
    }

    /// Rename variables; the map must be injective on occurring variables.
    pub fn relabel(&self, map: &BTreeMap<Var, Var>) -> Result<Self, RatFuncError> {
        let mut occurring: Vec<Var> = self.num.vars();
        for v in self.den.vars() {
            if let Err(i) = occurring.binary_search(&v) {
                occurring.insert(i, v);
            }
        }
        let mut images: Vec<(Var, Var)> = Vec::with_capacity(occurring.len());
        for &v in &occurring {
            let w = map.get(&v).copied().unwrap_or(v);
            images.push((w, v));
        }
        images.sort();
        for pair in images.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(RatFuncError::NonInjectiveRelabel(pair[0].1, pair[1].1));
            }
        }
        let f = |v: Var| map.get(&v).copied().unwrap_or(v);
        // Injective relabeling cannot create cancellation, so the canonical
        // form is preserved without re-reducing; renormalize anyway to keep
        // the invariant enforcement in one place.
        Ok(RatFunc::new(self.num.relabel(&f), self.den.relabel(&f)))
    }

    /// Simultaneous polynomial substitution (a ring homomorphism wherever
    /// the denominator stays nonzero).
    pub fn substitute(&self, subst: &BTreeMap<Var, MultiPoly>) -> Result<Self, RatFuncError> {
        let den = self.den.substitute(subst);
        if den.is_zero() {
            return Err(RatFuncError::ZeroDenominator(crate::poly::render(&self.den)));
        }
        Ok(RatFunc::new(self.num.substitute(subst), den))
    }

    /// Evaluate at a rational point; `None` if the denominator vanishes.
    pub fn eval(&self, point: &BTreeMap<Var, Rat>) -> Option<Rat> {
        let d = self.den.eval(point);
        if num_traits::Zero::is_zero(&d) {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    /// Deterministic rendering, `num / den` with graded-lex term order.
    pub fn render(&self, prefix: &str) -> String {
        if self.den.is_one() {
            format!("{}", PolyDisplay::new(&self.num, prefix))
        } else {
            format!(
                "({}) / ({})",
                PolyDisplay::new(&self.num, prefix),
                PolyDisplay::new(&self.den, prefix)
            )
        }
    }

    /// `1 / (product of the given polynomials)`.
    pub fn inv_product(factors: &[MultiPoly]) -> Self {
        let mut den = MultiPoly::one();
        for f in factors {
            den = den.mul(f);
        }
        RatFunc::new(MultiPoly::one(), den)
    }

    /// `monomial * self` for a plain power product.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        self.mul(&RatFunc::from_poly(MultiPoly::from_term(m.clone(), rat(1))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: Var) -> MultiPoly {
        MultiPoly::var(v)
    }
    fn one() -> MultiPoly {
        MultiPoly::one()
    }

    #[test]
    fn partial_fraction_merge() {
        // 1/x1 + 1/(1-x1) = 1/(x1*(1-x1))
        let a = RatFunc::new(one(), x(1));
        let b = RatFunc::new(one(), one().sub(&x(1)));
        let sum = a.add(&b);
        let expect = RatFunc::new(one(), x(1).mul(&one().sub(&x(1))));
        assert!(sum.equal(&expect));
    }

    #[test]
    fn additive_inverse_and_roundtrip() {
        let a = RatFunc::new(x(2), x(2).sub(&x(1)));
        assert!(a.sub(&a).is_zero());
        let b = RatFunc::new(one().sub(&x(2)), one());
        let prod = a.mul(&b);
        let back = prod.div(&b).unwrap();
        assert!(back.equal(&a));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = RatFunc::one();
        assert_eq!(a.div(&RatFunc::zero()), Err(RatFuncError::DivisionByZero));
    }

    #[test]
    fn unreduced_fractions_normalize() {
        // 2x/2 == x
        let a = RatFunc::new(x(1).scale(&rat(2)), one().scale(&rat(2)));
        assert!(a.equal(&RatFunc::var(1)));
        // a vs a+1 differ
        let b = RatFunc::var(1).add(&RatFunc::one());
        assert!(!RatFunc::var(1).equal(&b));
    }

    #[test]
    fn denominator_normalization() {
        // x1 / (2 - 2*x2): canonical den is primitive with positive leading
        // coefficient, so the representation flips to (-x1/2) / (x2 - 1).
        let f = RatFunc::new(x(1), one().scale(&rat(2)).sub(&x(2).scale(&rat(2))));
        assert_eq!(f.den(), &x(2).sub(&one()));
        assert_eq!(f.num(), &x(1).scale(&crate::poly::ratio(-1, 2)));
        let g = RatFunc::new(x(1).neg(), x(2).scale(&rat(2)).sub(&one().scale(&rat(2))));
        assert!(f.equal(&g));
        assert_eq!(f, g);
    }

    #[test]
    fn relabel_injectivity() {
        let f = RatFunc::new(one(), x(1).mul(&x(2)));
        let mut m = BTreeMap::new();
        m.insert(1, 3);
        m.insert(2, 3);
        assert!(matches!(
            f.relabel(&m),
            Err(RatFuncError::NonInjectiveRelabel(_, _))
        ));
        // swap round-trips
        let mut swap = BTreeMap::new();
        swap.insert(1, 2);
        swap.insert(2, 1);
        let g = f.relabel(&swap).unwrap();
        assert_eq!(g.relabel(&swap).unwrap(), f);
    }

    #[test]
    fn substitute_zero_denominator() {
        let f = RatFunc::new(one(), x(1));
        let mut s = BTreeMap::new();
        s.insert(1, MultiPoly::zero());
        assert!(matches!(
            f.substitute(&s),
            Err(RatFuncError::ZeroDenominator(_))
        ));
    }

    #[test]
    fn rendering() {
        let f = RatFunc::new(one(), x(1).mul(&one().sub(&x(1))));
        assert_eq!(f.render("x"), "(-1) / (x1^2 - x1)");
    }
}
