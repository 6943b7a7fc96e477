//! The character of the permutation Hopf algebra.
//!
//! `chi(N)` is the rational function
//! `1 / (x_1 (x_2 - x_1) ... (x_N - x_{N-1}) (1 - x_N))`, extended to a
//! linear map on the F-basis (permutations) by
//! `F_sigma -> chi_m(x_{sigma(1)}, ..., x_{sigma(m)})`. The product on the
//! F-basis is the shifted shuffle of one-line words; the checks below
//! certify that the assignment is multiplicative for that convention.
//!
//! Every identity is verified along two independent routes:
//! * a literal term-by-term route over the factored common denominator
//!   (integer arithmetic, no GCD involved), and
//! * canonical `RatFunc` arithmetic (for the shuffle relation a memoized
//!   recursion over suffixes; for multiplicativity an evaluation at a
//!   denominator-safe rational point).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::factored::{sum_is_zero, FactoredFraction};
use crate::perm::{binomial, interleaving_word, shuffles, Permutation};
use crate::poly::{rat, ratio, MultiPoly, Rat, Var};
use crate::ratfunc::RatFunc;
use crate::report::VerificationReport;
use crate::rng::SplitMix64;

/// A character value together with the argument variables it was built on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiValue {
    pub arity: usize,
    pub args: Vec<Var>,
    pub value: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChiError {
    RepeatedVariable(Var),
}

/// Denominator factors of `chi` at the given argument list:
/// `x_{a_1}, (x_{a_2} - x_{a_1}), ..., (1 - x_{a_N})`.
fn chi_factors<C: crate::poly::Coeff>(args: &[Var]) -> Vec<MultiPoly<C>> {
    let mut factors = Vec::with_capacity(args.len() + 1);
    if args.is_empty() {
        return factors;
    }
    factors.push(MultiPoly::var(args[0]));
    for w in args.windows(2) {
        factors.push(MultiPoly::var(w[1]).sub(&MultiPoly::var(w[0])));
    }
    factors.push(MultiPoly::one().sub(&MultiPoly::var(args[args.len() - 1])));
    factors
}

/// `chi_N` at the argument variables `args` (all distinct).
pub fn chi(n: usize, args: &[Var]) -> Result<ChiValue, ChiError> {
    assert_eq!(n, args.len(), "arity/argument mismatch");
    let mut seen = args.to_vec();
    seen.sort_unstable();
    for w in seen.windows(2) {
        if w[0] == w[1] {
            return Err(ChiError::RepeatedVariable(w[0]));
        }
    }
    Ok(ChiValue {
        arity: n,
        args: args.to_vec(),
        value: RatFunc::inv_product(&chi_factors::<Rat>(args)),
    })
}

/// An F-basis element of the permutation Hopf algebra.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FBasisElement {
    pub perm: Permutation,
}

/// Integer combination of F-basis elements of one symmetric group.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FBasisSum {
    pub terms: BTreeMap<Permutation, i64>,
}

impl FBasisSum {
    pub fn singleton(perm: Permutation) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(perm, 1);
        FBasisSum { terms }
    }

    pub fn add_term(&mut self, perm: Permutation, coeff: i64) {
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(perm) {
            Entry::Vacant(e) => {
                if coeff != 0 {
                    e.insert(coeff);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }
}

/// `F_sigma -> chi_m(x_{sigma(1)}, ..., x_{sigma(m)})`.
pub fn character_eval(f: &FBasisElement) -> ChiValue {
    let args: Vec<Var> = f.perm.word().iter().map(|&v| v as Var).collect();
    chi(args.len(), &args).expect("permutation entries are distinct")
}

/// Linear extension of the character to an F-basis sum.
pub fn character_eval_sum(s: &FBasisSum) -> RatFunc {
    let mut acc = RatFunc::zero();
    for (perm, &c) in &s.terms {
        let v = character_eval(&FBasisElement { perm: perm.clone() });
        acc = acc.add(&v.value.mul(&RatFunc::constant(rat(c))));
    }
    acc
}

/// Product of F-basis elements: sum over all shuffles of the word of
/// `sigma` with the word of `tau` shifted by `m`, each with coefficient 1.
pub fn mr_product(sigma: &Permutation, tau: &Permutation) -> FBasisSum {
    let m = sigma.len();
    let n = tau.len();
    let mut out = FBasisSum::default();
    for sh in &shuffles(m, n).elements {
        // Positions of the first block inside the product word.
        let mut word = alloc::vec![0u8; m + n];
        for i in 1..=m {
            word[sh.apply(i) - 1] = sigma.word()[i - 1];
        }
        for j in 1..=n {
            word[sh.apply(m + j) - 1] = tau.word()[j - 1] + m as u8;
        }
        out.add_term(
            Permutation::from_word(word).expect("shuffle of disjoint words is a permutation"),
            1,
        );
    }
    out
}

/// Argument lists `(x_{w_1}, ..., x_{w_{m+n}})` of the shuffle-relation
/// left-hand side: one word `w = (tau^{-1}(1), ...)` per shuffle.
fn shuffle_arg_lists(m: usize, n: usize) -> Vec<Vec<Var>> {
    shuffles(m, n)
        .elements
        .iter()
        .map(|tau| interleaving_word(tau).iter().map(|&v| v as Var).collect())
        .collect()
}

/// Literal route: `sum_w chi(args_w) - rhs == 0` over the factored common
/// denominator. `rhs` is given by its own argument blocks.
fn factored_route(arg_lists: &[Vec<Var>], rhs_blocks: &[Vec<Var>], flip_last_sign: bool) -> (bool, usize) {
    let mut terms: Vec<FactoredFraction> = Vec::with_capacity(arg_lists.len() + 1);
    for (i, args) in arg_lists.iter().enumerate() {
        let sign = if flip_last_sign && i + 1 == arg_lists.len() {
            -1
        } else {
            1
        };
        terms.push(FactoredFraction::new(
            sign,
            MultiPoly::one(),
            &chi_factors::<i64>(args),
        ));
    }
    let mut rhs_factors: Vec<MultiPoly<i64>> = Vec::new();
    for block in rhs_blocks {
        rhs_factors.extend(chi_factors::<i64>(block));
    }
    terms.push(FactoredFraction::new(-1, MultiPoly::one(), &rhs_factors));
    sum_is_zero(&terms)
}

/// Canonical route for the shuffle relation: the sum over interleavings is
/// folded as a memoized recursion on suffixes, so each step is a small
/// canonical `RatFunc` addition (this is the same sum, reassociated).
///
/// State `(i, j, prev)`: letters `a_i.., b_j..` still to be placed, `prev`
/// the variable placed last (`None` at the start, giving the bare `x_w1`
/// factor instead of a difference).
fn shuffle_sum_canonical(a: &[Var], b: &[Var]) -> RatFunc {
    type Key = (usize, usize, Option<Var>);
    fn go(
        a: &[Var],
        b: &[Var],
        i: usize,
        j: usize,
        prev: Option<Var>,
        memo: &mut BTreeMap<Key, RatFunc>,
    ) -> RatFunc {
        if let Some(v) = memo.get(&(i, j, prev)) {
            return v.clone();
        }
        let result = if i == a.len() && j == b.len() {
            match prev {
                None => RatFunc::one(),
                Some(p) => RatFunc::new(
                    MultiPoly::one(),
                    MultiPoly::one().sub(&MultiPoly::var(p)),
                ),
            }
        } else {
            let mut branches: Vec<(Var, usize, usize)> = Vec::with_capacity(2);
            if i < a.len() {
                branches.push((a[i], i + 1, j));
            }
            if j < b.len() {
                branches.push((b[j], i, j + 1));
            }
            let mut acc = RatFunc::zero();
            for (v, ni, nj) in branches {
                let step = match prev {
                    None => RatFunc::new(MultiPoly::one(), MultiPoly::var(v)),
                    Some(p) => RatFunc::new(
                        MultiPoly::one(),
                        MultiPoly::var(v).sub(&MultiPoly::var(p)),
                    ),
                };
                acc = acc.add(&step.mul(&go(a, b, ni, nj, Some(v), memo)));
            }
            acc
        };
        memo.insert((i, j, prev), result.clone());
        result
    }
    let mut memo = BTreeMap::new();
    go(a, b, 0, 0, None, &mut memo)
}

/// Checks the shuffle relation at `(m, n)`:
/// `sum over Sh(m,n) of chi_{m+n}(x_{tau^{-1}(1)}, ...) =
///  chi_m(x_1..x_m) * chi_n(x_{m+1}..x_{m+n})`.
pub fn verify_shuffle_relation(m: usize, n: usize) -> VerificationReport {
    verify_shuffle_relation_inner(m, n, false)
}

/// Same check with one shuffle term's sign deliberately flipped; used by
/// the CLI's injected-failure mode to exercise the exit-code contract.
pub fn verify_shuffle_relation_negated(m: usize, n: usize) -> VerificationReport {
    verify_shuffle_relation_inner(m, n, true)
}

fn verify_shuffle_relation_inner(m: usize, n: usize, flip: bool) -> VerificationReport {
    let report = VerificationReport::new(
        "shuffle-relation",
        alloc::vec![("m", m as i64), ("n", n as i64)],
    );
    let lists = shuffle_arg_lists(m, n);
    let left_block: Vec<Var> = (1..=m as Var).collect();
    let right_block: Vec<Var> = (m as Var + 1..=(m + n) as Var).collect();

    let (literal_ok, lcm_factors) = factored_route(
        &lists,
        &[left_block.clone(), right_block.clone()],
        flip,
    );

    // Canonical route. The recursion computes the same sum, so comparing it
    // to the product checks the identity through RatFunc normal forms. The
    // injected-failure mode subtracts twice the flipped term to stay
    // faithful to the literal sum being tested.
    let mut lhs = shuffle_sum_canonical(&left_block, &right_block);
    if flip {
        if let Some(last) = lists.last() {
            let term = chi(m + n, last).expect("distinct args").value;
            lhs = lhs.sub(&term).sub(&term);
        }
    }
    let rhs = chi(m, &left_block)
        .expect("distinct")
        .value
        .mul(&chi(n, &right_block).expect("distinct").value);
    let canonical_ok = lhs.equal(&rhs);

    let pass = literal_ok && canonical_ok;
    report
        .with_result(pass, lists.len(), 1)
        .detail("literal_route", if literal_ok { "zero" } else { "nonzero" })
        .detail(
            "canonical_route",
            if canonical_ok { "equal" } else { "different" },
        )
        .detail("common_denominator_factors", format!("{}", lcm_factors))
        .detail("shuffle_terms", format!("{}", binomial(m + n, m)))
}

/// Deterministic denominator-safe evaluation point for variables `1..=n`:
/// distinct rationals away from 0 and 1, so no factor `x_i`, `x_i - x_j`
/// or `1 - x_i` vanishes.
fn safe_point(count: usize, seed: u64) -> BTreeMap<Var, Rat> {
    let mut rng = SplitMix64::new(seed);
    let mut used: Vec<i64> = Vec::new();
    let mut point = BTreeMap::new();
    for v in 1..=count as Var {
        loop {
            let cand = rng.range_i64(2, 997);
            if !used.contains(&cand) {
                used.push(cand);
                point.insert(v, ratio(cand, 1009));
                break;
            }
        }
    }
    point
}

/// Checks multiplicativity of the character on a pair of F-basis elements:
/// `chi(F_sigma * F_tau) = chi(F_sigma) * chi(F_tau-shifted)`.
pub fn verify_multiplicativity(sigma: &Permutation, tau: &Permutation, seed: u64) -> VerificationReport {
    let m = sigma.len();
    let n = tau.len();
    let mut report = VerificationReport::new(
        "character-multiplicativity",
        alloc::vec![("m", m as i64), ("n", n as i64)],
    );
    report = report
        .detail("sigma", format!("{:?}", sigma.word()))
        .detail("tau", format!("{:?}", tau.word()));

    let product = mr_product(sigma, tau);
    let arg_lists: Vec<Vec<Var>> = product
        .terms
        .keys()
        .map(|p| p.word().iter().map(|&v| v as Var).collect())
        .collect();
    let sigma_args: Vec<Var> = sigma.word().iter().map(|&v| v as Var).collect();
    let tau_args: Vec<Var> = tau.word().iter().map(|&v| (v as usize + m) as Var).collect();

    let (literal_ok, _) = factored_route(&arg_lists, &[sigma_args.clone(), tau_args.clone()], false);

    // Secondary oracle: evaluate both sides at a denominator-safe point.
    let point = safe_point(m + n, seed);
    let mut lhs_val = Rat::from_integer(0.into());
    for args in &arg_lists {
        let v = chi(m + n, args).expect("distinct").value;
        lhs_val += v.eval(&point).expect("safe point");
    }
    let rhs = chi(m, &sigma_args)
        .expect("distinct")
        .value
        .mul(&chi(n, &tau_args).expect("distinct").value);
    let rhs_val = rhs.eval(&point).expect("safe point");
    let numeric_ok = lhs_val == rhs_val;

    report
        .with_result(literal_ok && numeric_ok, arg_lists.len(), 1)
        .detail("literal_route", if literal_ok { "zero" } else { "nonzero" })
        .detail("numeric_route", if numeric_ok { "equal" } else { "different" })
}

/// All permutations of `{1..n}` in lexicographic word order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn heapish(prefix: &mut Vec<u8>, rest: &mut Vec<u8>, out: &mut Vec<Permutation>) {
        if rest.is_empty() {
            out.push(Permutation::from_word(prefix.clone()).unwrap());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            prefix.push(v);
            heapish(prefix, rest, out);
            prefix.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    heapish(&mut Vec::new(), &mut (1..=n as u8).collect(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_small_values() {
        // chi_1 = 1 / (x1 (1 - x1))
        let c1 = chi(1, &[1]).unwrap();
        let expect = RatFunc::inv_product(&[
            MultiPoly::var(1),
            MultiPoly::one().sub(&MultiPoly::var(1)),
        ]);
        assert!(c1.value.equal(&expect));
        // chi_0 = 1
        assert!(chi(0, &[]).unwrap().value.is_one());
        // chi_2(x2, x1) = 1/(x2 (x1-x2) (1-x1))
        let c = chi(2, &[2, 1]).unwrap();
        let expect = RatFunc::inv_product(&[
            MultiPoly::var(2),
            MultiPoly::var(1).sub(&MultiPoly::var(2)),
            MultiPoly::one().sub(&MultiPoly::var(1)),
        ]);
        assert!(c.value.equal(&expect));
        // repeated variable is rejected
        assert_eq!(chi(2, &[3, 3]), Err(ChiError::RepeatedVariable(3)));
    }

    #[test]
    fn character_on_f_basis() {
        let id2 = Permutation::identity(2);
        let v = character_eval(&FBasisElement { perm: id2 });
        assert!(v.value.equal(&chi(2, &[1, 2]).unwrap().value));
        let swap = Permutation::from_word(alloc::vec![2, 1]).unwrap();
        let v = character_eval(&FBasisElement { perm: swap });
        assert!(v.value.equal(&chi(2, &[2, 1]).unwrap().value));
        let empty = character_eval(&FBasisElement {
            perm: Permutation::identity(0),
        });
        assert!(v.arity == 2 && empty.value.is_one());
    }

    #[test]
    fn mr_product_small() {
        // unit: m = 0
        let e = Permutation::identity(0);
        let t = Permutation::from_word(alloc::vec![2, 1]).unwrap();
        let p = mr_product(&e, &t);
        assert_eq!(p, FBasisSum::singleton(t.clone()));
        // S1 x S1: F_12 + F_21
        let one = Permutation::identity(1);
        let p = mr_product(&one, &one);
        let mut expect = FBasisSum::default();
        expect.add_term(Permutation::from_word(alloc::vec![1, 2]).unwrap(), 1);
        expect.add_term(Permutation::from_word(alloc::vec![2, 1]).unwrap(), 1);
        assert_eq!(p, expect);
        // term count (2,2)
        let id2 = Permutation::identity(2);
        assert_eq!(mr_product(&id2, &id2).terms.len(), 6);
    }

    #[test]
    fn shuffle_relation_small() {
        for (m, n) in [(0usize, 0usize), (1, 0), (0, 2), (1, 1), (2, 1), (2, 2)] {
            let r = verify_shuffle_relation(m, n);
            assert!(r.pass, "shuffle relation failed at ({m},{n}): {:?}", r);
        }
    }

    #[test]
    fn shuffle_relation_1_1_by_hand() {
        // chi2(x1,x2) + chi2(x2,x1) = chi1(x1) chi1(x2)
        let lhs = chi(2, &[1, 2])
            .unwrap()
            .value
            .add(&chi(2, &[2, 1]).unwrap().value);
        let rhs = chi(1, &[1]).unwrap().value.mul(&chi(1, &[2]).unwrap().value);
        assert!(lhs.equal(&rhs));
    }

    #[test]
    fn negated_relation_fails() {
        let r = verify_shuffle_relation_negated(2, 1);
        assert!(!r.pass);
    }

    #[test]
    fn multiplicativity_small() {
        for m in 0..=2usize {
            for n in 0..=2usize {
                for s in all_permutations(m) {
                    for t in all_permutations(n) {
                        let r = verify_multiplicativity(&s, &t, 7);
                        assert!(r.pass, "multiplicativity failed: {:?}", r);
                    }
                }
            }
        }
    }

    #[test]
    fn adjacent_transposition_changes_two_factors() {
        // Structural check: swapping adjacent arguments changes exactly the
        // affected denominator factors.
        let base: Vec<MultiPoly> = chi_factors::<Rat>(&[1, 2, 3, 4]);
        let swapped: Vec<MultiPoly> = chi_factors::<Rat>(&[1, 3, 2, 4]);
        let mut differing = 0;
        for (a, b) in base.iter().zip(&swapped) {
            if a != b {
                differing += 1;
            }
        }
        assert_eq!(differing, 3); // (x2-x1),(x3-x2),(x4-x3) vs (x3-x1),(x2-x3),(x4-x2)
    }
}
