//! Permutations in one-line notation and the shuffle sets Sh(m, n).

use alloc::vec::Vec;

/// A permutation of `{1, ..., n}` stored as its one-line word
/// `(sigma(1), ..., sigma(n))`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    word: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvalidPermutation;

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).collect(),
        }
    }

    /// Validates that `word` is a bijection of `{1, .., len}`.
    pub fn from_word(word: Vec<u8>) -> Result<Self, InvalidPermutation> {
        let n = word.len();
        let mut seen = alloc::vec![false; n + 1];
        for &v in &word {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(InvalidPermutation);
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { word })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `sigma(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn inverse(&self) -> Permutation {
        let mut word = alloc::vec![0u8; self.word.len()];
        for (i, &v) in self.word.iter().enumerate() {
            word[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { word }
    }

    /// `(self o other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            word: other.word.iter().map(|&v| self.word[v as usize - 1]).collect(),
        }
    }

    /// Sign via inversion count.
    pub fn sign(&self) -> i64 {
        let mut inv = 0usize;
        for i in 0..self.word.len() {
            for j in (i + 1)..self.word.len() {
                if self.word[i] > self.word[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// The set of (m, n)-shuffles: permutations of `{1..m+n}` increasing on
/// `{1..m}` and on `{m+1..m+n}`.
#[derive(Clone, Debug)]
pub struct ShuffleSet {
    pub m: usize,
    pub n: usize,
    pub elements: Vec<Permutation>,
}

/// Enumerates Sh(m, n), indexed by the m-subset of positions occupied by
/// the first block, in lexicographic subset order.
pub fn shuffles(m: usize, n: usize) -> ShuffleSet {
    let total = m + n;
    let mut elements = Vec::with_capacity(binomial(total, m) as usize);
    let mut subset: Vec<usize> = (1..=m).collect();
    loop {
        // tau(i) = i-th smallest chosen position for i <= m, then the
        // remaining positions in order for the second block.
        let mut word = alloc::vec![0u8; total];
        let mut in_subset = alloc::vec![false; total + 1];
        for (i, &pos) in subset.iter().enumerate() {
            word[i] = pos as u8;
            in_subset[pos] = true;
        }
        let rest = (1..=total).filter(|&p| !in_subset[p]);
        for (j, pos) in rest.enumerate() {
            word[m + j] = pos as u8;
        }
        elements.push(Permutation { word });
        // next lexicographic m-subset of {1..total}
        if m == 0 {
            break;
        }
        let mut i = m;
        while i > 0 && subset[i - 1] == total - (m - i) {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        subset[i - 1] += 1;
        for j in i..m {
            subset[j] = subset[j - 1] + 1;
        }
    }
    ShuffleSet { m, n, elements }
}

/// The interleaving word `(tau^{-1}(1), ..., tau^{-1}(m+n))` of a shuffle:
/// the value sitting at each position, i.e. the order in which the two
/// blocks' letters appear.
pub fn interleaving_word(tau: &Permutation) -> Vec<u8> {
    tau.inverse().word().to_vec()
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u64 = 1;
    for i in 0..k {
        num = num * (n - i) as u64 / (i + 1) as u64;
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_counts() {
        for m in 0..=5 {
            for n in 0..=5 {
                let sh = shuffles(m, n);
                assert_eq!(sh.elements.len() as u64, binomial(m + n, m), "({m},{n})");
                // increasing on both blocks, pairwise distinct
                for tau in &sh.elements {
                    for i in 1..m {
                        assert!(tau.apply(i) < tau.apply(i + 1));
                    }
                    for i in (m + 1)..(m + n) {
                        assert!(tau.apply(i) < tau.apply(i + 1));
                    }
                }
                for i in 0..sh.elements.len() {
                    for j in (i + 1)..sh.elements.len() {
                        assert_ne!(sh.elements[i], sh.elements[j]);
                    }
                }
            }
        }
    }

    #[test]
    fn shuffles_1_1() {
        let sh = shuffles(1, 1);
        assert_eq!(sh.elements.len(), 2);
        assert_eq!(sh.elements[0].word(), &[1, 2]);
        assert_eq!(sh.elements[0].sign(), 1);
        assert_eq!(sh.elements[1].word(), &[2, 1]);
        assert_eq!(sh.elements[1].sign(), -1);
    }

    #[test]
    fn shuffles_degenerate() {
        assert_eq!(shuffles(0, 3).elements, alloc::vec![Permutation::identity(3)]);
        assert_eq!(shuffles(3, 0).elements, alloc::vec![Permutation::identity(3)]);
        assert_eq!(shuffles(0, 0).elements, alloc::vec![Permutation::identity(0)]);
    }

    #[test]
    fn sign_is_multiplicative() {
        let a = Permutation::from_word(alloc::vec![2, 3, 1, 4]).unwrap();
        let b = Permutation::from_word(alloc::vec![4, 1, 3, 2]).unwrap();
        assert_eq!(a.compose(&b).sign(), a.sign() * b.sign());
        assert_eq!(a.compose(&a.inverse()), Permutation::identity(4));
    }

    #[test]
    fn sh22_sign_pattern() {
        let sh = shuffles(2, 2);
        let signs: Vec<i64> = sh.elements.iter().map(|t| t.sign()).collect();
        assert_eq!(signs, alloc::vec![1, -1, 1, 1, -1, 1]);
    }

    #[test]
    fn interleavings_are_block_preserving() {
        for tau in &shuffles(2, 1).elements {
            let w = interleaving_word(tau);
            let firsts: Vec<u8> = w.iter().copied().filter(|&v| v <= 2).collect();
            let seconds: Vec<u8> = w.iter().copied().filter(|&v| v > 2).collect();
            assert_eq!(firsts, alloc::vec![1, 2]);
            assert_eq!(seconds, alloc::vec![3]);
        }
    }
}
