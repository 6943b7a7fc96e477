//! Sparse multivariate polynomials over an exact coefficient ring.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`] under a fixed
//! graded-lexicographic order (total degree first, then exponents compared
//! variable-by-variable with lower variable index taking precedence), so
//! iteration order, leading terms and textual rendering are deterministic.
//!
//! The coefficient ring is a type parameter: `Rat` (arbitrary-precision
//! rationals) is used everywhere canonical forms matter, while `i64` backs
//! the fast denominator-clearing kernels where all coefficients stay small.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, Zero};

/// Variable index. Modules assign their own meaning (`x_i`, `t_i`, `z_i`).
pub type Var = u32;

/// Arbitrary-precision rational coefficient.
pub type Rat = num_rational::BigRational;

/// Coefficient ring used by [`MultiPoly`].
pub trait Coeff: Clone + Ord + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Coeff for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Coeff for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("i64 coefficient overflow")
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("i64 coefficient overflow")
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

/// Rational from an integer literal.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// A power product, stored sparsely as `(variable, exponent)` pairs sorted
/// by variable with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: Var) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    /// Build from pairs; merges duplicates and drops zero exponents.
    pub fn from_pairs(pairs: &[(Var, u32)]) -> Self {
        let mut exps: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        let mut sorted = pairs.to_vec();
        sorted.sort_by_key(|p| p.0);
        for &(v, e) in &sorted {
            if e == 0 {
                continue;
            }
            match exps.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => exps.push((v, e)),
            }
        }
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.exps
            .binary_search_by_key(&v, |p| p.0)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (va, ea) = self.exps[i];
            let (vb, eb) = other.exps[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    exps.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial { exps }
    }

    /// Exact division; `None` if some exponent of `other` exceeds ours.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(v, e) in &self.exps {
            let mut e = e;
            while j < other.exps.len() && other.exps[j].0 < v {
                return None;
            }
            if j < other.exps.len() && other.exps[j].0 == v {
                let eo = other.exps[j].1;
                if eo > e {
                    return None;
                }
                e -= eo;
                j += 1;
            }
            if e > 0 {
                exps.push((v, e));
            }
        }
        if j < other.exps.len() {
            return None;
        }
        Some(Monomial { exps })
    }

    pub fn max_var(&self) -> Option<Var> {
        self.exps.last().map(|p| p.0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Lexicographic with x1 > x2 > ...: at the first variable (in
        // increasing index order) where the exponents differ, the larger
        // exponent wins.
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        match ea.cmp(&eb) {
                            Ordering::Equal => {}
                            ord => return ord,
                        }
                        i += 1;
                        j += 1;
                    }
                },
                // The side that still has a variable has a nonzero exponent
                // at a smaller index than anything remaining on the other.
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MultiPoly<C: Coeff = Rat> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Default for MultiPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::from_term(Monomial::var(v), C::one())
    }

    pub fn from_term(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(list: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in list {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .map(|c| *c == C::one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn constant_part(&self) -> C {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg_ref()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg_ref());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc.mul_ref(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Leading (largest) monomial in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Largest variable index occurring.
    pub fn max_var(&self) -> Option<Var> {
        self.terms.keys().filter_map(|m| m.max_var()).max()
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = Vec::new();
        for m in self.terms.keys() {
            for &(v, _) in m.pairs() {
                if let Err(i) = vs.binary_search(&v) {
                    vs.insert(i, v);
                }
            }
        }
        vs
    }

    /// Rename variables. `map` must be injective on the occurring variables.
    pub fn relabel(&self, map: &dyn Fn(Var) -> Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let pairs: Vec<(Var, u32)> = m.pairs().iter().map(|&(v, e)| (map(v), e)).collect();
            out.add_term(Monomial::from_pairs(&pairs), c.clone());
        }
        out
    }

    /// Simultaneous substitution of polynomials for variables. Variables
    /// not present in `subst` are left alone.
    pub fn substitute(&self, subst: &BTreeMap<Var, MultiPoly<C>>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut untouched: Vec<(Var, u32)> = Vec::new();
            let mut term = MultiPoly::constant(c.clone());
            for &(v, e) in m.pairs() {
                match subst.get(&v) {
                    Some(p) => term = term.mul(&p.pow(e)),
                    None => untouched.push((v, e)),
                }
            }
            let term = term.mul_term(&Monomial::from_pairs(&untouched), &C::one());
            out = out.add(&term);
        }
        out
    }
}

impl MultiPoly<Rat> {
    /// Partial derivative.
    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let pairs: Vec<(Var, u32)> = m
                .pairs()
                .iter()
                .map(|&(w, k)| if w == v { (w, k - 1) } else { (w, k) })
                .collect();
            out.add_term(Monomial::from_pairs(&pairs), c * rat(e as i64));
        }
        out
    }

    /// Evaluate at a rational point (missing variables default to zero).
    pub fn eval(&self, point: &BTreeMap<Var, Rat>) -> Rat {
        let mut acc: Rat = Zero::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = point.get(&v).cloned().unwrap_or_else(Zero::zero);
                for _ in 0..e {
                    t *= &x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Zero polynomial has content zero.
    pub fn content(&self) -> Rat {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.is_zero() {
            return Zero::zero();
        }
        let mut den_lcm: BigInt = One::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd: BigInt = Zero::zero();
        for c in self.terms.values() {
            let scaled = (c * Rat::from_integer(den_lcm.clone())).to_integer();
            num_gcd = num_gcd.gcd(&scaled);
        }
        Rat::new(num_gcd, den_lcm)
    }

    /// `self / content`, sign-adjusted so the leading coefficient is positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().map(|(_, lc)| lc.is_negative()).unwrap_or(false) {
            c = -c;
        }
        let inv = rat(1) / c;
        self.scale(&inv)
    }

    /// Exact division; `None` when the division has a remainder.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut q = Self::zero();
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            let m = rm.div(&dm)?;
            let c = rc / &dc;
            q.add_term(m.clone(), c.clone());
            rem = rem.sub(&d.mul_term(&m, &c));
        }
        Some(q)
    }
}

/// Renders with variables as `prefix{index}`, terms in descending
/// graded-lex order, explicit `^` powers.
pub struct PolyDisplay<'a> {
    poly: &'a MultiPoly<Rat>,
    prefix: &'a str,
}

impl<'a> PolyDisplay<'a> {
    pub fn new(poly: &'a MultiPoly<Rat>, prefix: &'a str) -> Self {
        PolyDisplay { poly, prefix }
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = abs.is_one();
            if !coeff_is_one || m.is_one() {
                write!(f, "{}", abs)?;
            }
            for (k, &(v, e)) in m.pairs().iter().enumerate() {
                if k > 0 || !coeff_is_one {
                    write!(f, "*")?;
                }
                write!(f, "{}{}", self.prefix, v)?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

/// Default rendering with `x`-variables.
pub fn render(p: &MultiPoly<Rat>) -> String {
    use alloc::format;
    format!("{}", PolyDisplay::new(p, "x"))
}
