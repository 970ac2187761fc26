//! Permutations in one-line notation, sets of position pairs, and inversion sets.
//!
//! Positions and values are 1-based throughout: a permutation of size `n` is a
//! word containing each of `1..=n` exactly once.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An unordered pair `{i, j}` stored with `i < j`.
pub type Pair = (usize, usize);

/// A permutation `π = π₁π₂…πₙ` given by its one-line word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from a word, checking that it is a bijection of `1..=n`.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n {
                return Err(Error::NotBijection {
                    n,
                    reason: format!("value {v} out of range"),
                });
            }
            if seen[v] {
                return Err(Error::NotBijection {
                    n,
                    reason: format!("value {v} repeated"),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<usize>) -> Self {
        debug_assert!(
            Permutation::new(word.clone()).is_ok(),
            "not a bijection: {word:?}"
        );
        Permutation { word }
    }

    /// `id_n = 12…n`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutations have size at least 1");
        Permutation {
            word: (1..=n).collect(),
        }
    }

    /// The reverse identity `w₀ = n(n-1)…1`.
    pub fn reverse_identity(n: usize) -> Self {
        assert!(n >= 1, "permutations have size at least 1");
        Permutation {
            word: (1..=n).rev().collect(),
        }
    }

    /// Parses either whitespace-separated values (`"2 4 1 3"`) or, for sizes up
    /// to 9, a compact digit string (`"2413"`).
    pub fn parse(text: &str) -> Result<Self> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        match tokens.as_slice() {
            [] => Err(Error::Empty),
            [single] if single.len() > 1 => {
                if !single.chars().all(|c| c.is_ascii_digit()) {
                    return Err(Error::InvalidToken(single.to_string()));
                }
                let word = single
                    .chars()
                    .map(|c| c.to_digit(10).unwrap() as usize)
                    .collect();
                Permutation::new(word)
            }
            _ => {
                // A multi-digit token next to others could be a compact chunk or
                // a genuine value >= 10; only the latter is meaningful here.
                let n = tokens.len();
                let mut word = Vec::with_capacity(n);
                for tok in tokens {
                    let v: usize = tok
                        .parse()
                        .map_err(|_| Error::InvalidToken(tok.to_string()))?;
                    if n <= 9 && tok.len() > 1 && v > n {
                        return Err(Error::MixedFormat);
                    }
                    word.push(v);
                }
                Permutation::new(word)
            }
        }
    }

    /// Standardizes a sequence of distinct integers to the permutation that is
    /// order isomorphic to it.
    pub fn pattern_of(values: &[usize]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by_key(|&i| values[i]);
        let mut word = vec![0; values.len()];
        for (rank, &i) in order.iter().enumerate() {
            if rank > 0 && values[order[rank - 1]] == values[i] {
                return Err(Error::NotBijection {
                    n: values.len(),
                    reason: format!("value {} repeated", values[i]),
                });
            }
            word[i] = rank + 1;
        }
        Ok(Permutation { word })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    /// Always false; permutations have size at least one.
    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn into_word(self) -> Vec<usize> {
        self.word
    }

    /// `π(i)` for a 1-based position `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn is_reverse_identity(&self) -> bool {
        let n = self.len();
        self.word.iter().enumerate().all(|(i, &v)| v == n - i)
    }

    /// Functional composition: `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_size(self.len(), other.len())?;
        Ok(Permutation {
            word: other.word.iter().map(|&j| self.apply(j)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut word = vec![0; self.len()];
        for (i, &v) in self.word.iter().enumerate() {
            word[v - 1] = i + 1;
        }
        Permutation { word }
    }

    /// `rev(π) = πₙ…π₁`.
    pub fn reversal(&self) -> Permutation {
        Permutation {
            word: self.word.iter().rev().copied().collect(),
        }
    }

    /// `w₀ ∘ π`, whose inversion set is the complement of that of `π`.
    pub fn complement(&self) -> Permutation {
        let n = self.len();
        Permutation {
            word: self.word.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    pub fn inversion_count(&self) -> usize {
        let n = self.len();
        (0..n)
            .map(|i| (i + 1..n).filter(|&j| self.word[i] > self.word[j]).count())
            .sum()
    }

    pub fn inversion_set(&self) -> InversionSet {
        let n = self.len();
        let mut set = PairSet::new(n);
        for i in 1..=n {
            for j in i + 1..=n {
                if self.apply(i) > self.apply(j) {
                    set.insert(i, j);
                }
            }
        }
        InversionSet(set)
    }

    /// Length of the longest strictly decreasing subsequence of the word, which
    /// is the clique number of the inversion graph.
    pub fn longest_decreasing_run(&self) -> usize {
        let mut best = vec![1usize; self.len()];
        for j in 0..self.len() {
            for i in 0..j {
                if self.word[i] > self.word[j] {
                    best[j] = best[j].max(best[i] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }
}

pub(crate) fn check_size(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::SizeMismatch { expected, actual })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.word.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse(s)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.word.serialize(serializer)
    }
}

/// All permutations of size `n` in lexicographic order of their words.
pub fn all_permutations(n: usize) -> Permutations {
    Permutations {
        next: (n >= 1).then(|| (1..=n).collect()),
    }
}

/// Iterator returned by [`all_permutations`].
#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut w = current.clone();
        // standard next-permutation step
        if let Some(i) = (0..w.len().saturating_sub(1))
            .rev()
            .find(|&i| w[i] < w[i + 1])
        {
            let j = (i + 1..w.len()).rev().find(|&j| w[j] > w[i]).unwrap();
            w.swap(i, j);
            w[i + 1..].reverse();
            self.next = Some(w);
        }
        Some(Permutation { word: current })
    }
}

/// A set of unordered pairs `{i, j}` with `1 <= i < j <= n`, stored as a
/// bitset over the lexicographic enumeration of pairs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairSet {
    n: usize,
    bits: Vec<u64>,
}

impl PairSet {
    pub fn new(n: usize) -> Self {
        let slots = n * n.saturating_sub(1) / 2;
        PairSet {
            n,
            bits: vec![0; slots.div_ceil(64)],
        }
    }

    /// Every pair of `[n]`; the inversion set of `w₀`.
    pub fn full(n: usize) -> Self {
        let mut set = PairSet::new(n);
        for i in 1..=n {
            for j in i + 1..=n {
                set.insert(i, j);
            }
        }
        set
    }

    pub fn from_pairs<I: IntoIterator<Item = Pair>>(n: usize, pairs: I) -> Result<Self> {
        let mut set = PairSet::new(n);
        for (i, j) in pairs {
            if i == 0 || i >= j || j > n {
                return Err(Error::InvalidPair(i, j));
            }
            set.insert(i, j);
        }
        Ok(set)
    }

    /// Size of the ambient ground set `[n]`.
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(1 <= i && i < j && j <= self.n);
        let a = i - 1;
        a * self.n - a * (a + 1) / 2 + (j - i - 1)
    }

    #[inline]
    fn normalize(&self, a: usize, b: usize) -> Pair {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        assert!(
            i >= 1 && i < j && j <= self.n,
            "pair {{{a}, {b}}} invalid for n = {}",
            self.n
        );
        (i, j)
    }

    /// Membership of `{a, b}`; the order of the arguments does not matter.
    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        if a == b || a == 0 || b == 0 || a > self.n || b > self.n {
            return false;
        }
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        let k = self.index(i, j);
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    /// Inserts `{a, b}`. Panics if the pair is not a valid pair of `[n]`.
    pub fn insert(&mut self, a: usize, b: usize) -> bool {
        let (i, j) = self.normalize(a, b);
        let k = self.index(i, j);
        let fresh = self.bits[k / 64] >> (k % 64) & 1 == 0;
        self.bits[k / 64] |= 1 << (k % 64);
        fresh
    }

    pub fn remove(&mut self, a: usize, b: usize) -> bool {
        let (i, j) = self.normalize(a, b);
        let k = self.index(i, j);
        let present = self.bits[k / 64] >> (k % 64) & 1 == 1;
        self.bits[k / 64] &= !(1 << (k % 64));
        present
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Pairs in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Pair> + '_ {
        let n = self.n;
        (1..=n)
            .flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
            .filter(move |&(i, j)| self.contains(i, j))
    }

    /// The lexicographically smallest pair, if any.
    pub fn first(&self) -> Option<Pair> {
        self.iter().next()
    }

    fn zip_with(&self, other: &PairSet, op: impl Fn(u64, u64) -> u64) -> Result<PairSet> {
        check_size(self.n, other.n)?;
        Ok(PairSet {
            n: self.n,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    pub fn union(&self, other: &PairSet) -> Result<PairSet> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &PairSet) -> Result<PairSet> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &PairSet) -> Result<PairSet> {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &PairSet) -> Result<PairSet> {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn is_disjoint(&self, other: &PairSet) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// All pairs of `[n]` not in `self`.
    pub fn complement(&self) -> PairSet {
        PairSet::full(self.n)
            .difference(self)
            .expect("same ground set")
    }

    /// The transitivity test characterizing inversion sets: for every
    /// `i < j < k`, `ij, jk ∈ T ⇒ ik ∈ T` and `ik ∈ T ⇒ ij ∈ T or jk ∈ T`.
    pub fn is_inversion_set(&self) -> bool {
        let n = self.n;
        for i in 1..=n {
            for j in i + 1..=n {
                let ij = self.contains(i, j);
                for k in j + 1..=n {
                    let jk = self.contains(j, k);
                    let ik = self.contains(i, k);
                    if ij && jk && !ik {
                        return false;
                    }
                    if ik && !ij && !jk {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `{{s(i), s(j)} : {i, j} ∈ self}`.
    pub fn apply_map(&self, s: &Permutation) -> Result<PairSet> {
        check_size(self.n, s.len())?;
        let mut out = PairSet::new(self.n);
        for (i, j) in self.iter() {
            out.insert(s.apply(i), s.apply(j));
        }
        Ok(out)
    }

    /// Edges with both endpoints in `vertices`.
    pub fn induced(&self, vertices: impl IntoIterator<Item = usize>) -> PairSet {
        let vs: Vec<usize> = vertices.into_iter().collect();
        let mut out = PairSet::new(self.n);
        for (a, &u) in vs.iter().enumerate() {
            for &v in &vs[a + 1..] {
                if self.contains(u, v) {
                    out.insert(u, v);
                }
            }
        }
        out
    }
}

impl fmt::Debug for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for PairSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter().map(|(i, j)| [i, j]))
    }
}

/// A pair set known to be the inversion set `T_π` of some permutation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct InversionSet(PairSet);

impl InversionSet {
    /// Validates `pairs` against the inversion-set criterion.
    pub fn new(pairs: PairSet) -> Result<Self> {
        if pairs.is_inversion_set() {
            Ok(InversionSet(pairs))
        } else {
            Err(Error::NotInversionSet)
        }
    }

    pub fn as_pairs(&self) -> &PairSet {
        &self.0
    }

    pub fn into_pairs(self) -> PairSet {
        self.0
    }

    /// The unique permutation realizing this set.
    pub fn to_permutation(&self) -> Permutation {
        let n = self.0.n();
        let mut word = vec![0; n];
        // rank construction: π(i) = i + #{j > i : ij ∈ T} − #{j < i : ji ∈ T}
        for i in 1..=n {
            let above = (i + 1..=n).filter(|&j| self.0.contains(i, j)).count();
            let below = (1..i).filter(|&j| self.0.contains(j, i)).count();
            word[i - 1] = i + above - below;
        }
        Permutation::from_word_unchecked(word)
    }
}

impl Deref for InversionSet {
    type Target = PairSet;

    fn deref(&self) -> &PairSet {
        &self.0
    }
}

impl fmt::Debug for InversionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<InversionSet> for PairSet {
    fn from(t: InversionSet) -> PairSet {
        t.0
    }
}

/// Recovers the permutation whose inversion set is `pairs`.
pub fn permutation_from_inversion_set(pairs: &PairSet) -> Result<Permutation> {
    let t = InversionSet::new(pairs.clone())?;
    let p = t.to_permutation();
    debug_assert_eq!(p.inversion_set(), t);
    Ok(p)
}

/// True iff some permutation has exactly these inversions.
pub fn is_inversion_set(pairs: &PairSet) -> bool {
    pairs.is_inversion_set()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pairs(n: usize, ps: &[Pair]) -> PairSet {
        PairSet::from_pairs(n, ps.iter().copied()).unwrap()
    }

    #[test]
    fn parse_both_notations() {
        assert_eq!(p("2 4 1 3").word(), &[2, 4, 1, 3]);
        assert_eq!(p("2413").word(), &[2, 4, 1, 3]);
        assert_eq!(p("1").word(), &[1]);
        assert_eq!(p("10 9 8 7 6 5 4 3 2 1 11").len(), 11);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Permutation::parse("2 2 3"),
            Err(Error::NotBijection { .. })
        ));
        assert_eq!(Permutation::parse("   "), Err(Error::Empty));
        assert_eq!(Permutation::parse("21 3"), Err(Error::MixedFormat));
        assert!(matches!(
            Permutation::parse("1 x"),
            Err(Error::InvalidToken(_))
        ));
        assert!(matches!(
            Permutation::parse("1x2"),
            Err(Error::InvalidToken(_))
        ));
        assert!(Permutation::parse("1 2 4").is_err());
        assert!(Permutation::parse("0 1").is_err());
    }

    #[test]
    fn display_is_space_separated() {
        assert_eq!(p("2413").to_string(), "2 4 1 3");
    }

    #[test]
    fn compose_examples() {
        assert_eq!(p("231").compose(&p("213")).unwrap(), p("321"));
        assert_eq!(
            Permutation::identity(4).compose(&p("2413")).unwrap(),
            p("2413")
        );
        assert_eq!(
            p("2413").compose(&p("2413").inverse()).unwrap(),
            Permutation::identity(4)
        );
        assert!(matches!(
            p("21").compose(&p("123")),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn inverse_and_reversal() {
        assert_eq!(p("2413").inverse(), p("3142"));
        assert_eq!(Permutation::identity(5).inverse(), Permutation::identity(5));
        assert_eq!(p("4321").inverse(), p("4321"));
        assert_eq!(Permutation::identity(4).reversal(), p("4321"));
        assert_eq!(p("2413").reversal(), p("3142"));
        for q in all_permutations(4) {
            assert_eq!(q.reversal().reversal(), q);
        }
    }

    #[test]
    fn inversion_set_examples() {
        assert_eq!(
            *p("2413").inversion_set(),
            pairs(4, &[(1, 3), (2, 3), (2, 4)])
        );
        assert!(Permutation::identity(6).inversion_set().is_empty());
        assert_eq!(*p("4321").inversion_set(), PairSet::full(4));
    }

    #[test]
    fn criterion_examples() {
        assert!(is_inversion_set(&pairs(3, &[(1, 2), (1, 3), (2, 3)])));
        assert!(!is_inversion_set(&pairs(3, &[(1, 3)])));
        assert!(is_inversion_set(&PairSet::new(5)));
    }

    #[test]
    fn from_inversion_set_examples() {
        assert_eq!(
            permutation_from_inversion_set(&pairs(3, &[(1, 2)])).unwrap(),
            p("213")
        );
        assert_eq!(
            permutation_from_inversion_set(&pairs(4, &[(1, 3), (2, 3), (2, 4)])).unwrap(),
            p("2413")
        );
        assert_eq!(
            permutation_from_inversion_set(&PairSet::new(4)).unwrap(),
            Permutation::identity(4)
        );
        assert_eq!(
            permutation_from_inversion_set(&pairs(3, &[(1, 3)])),
            Err(Error::NotInversionSet)
        );
    }

    #[test]
    fn apply_map_examples() {
        let m = pairs(3, &[(1, 2)]).apply_map(&p("132").inverse()).unwrap();
        assert_eq!(m, pairs(3, &[(1, 3)]));
        let t = p("2413").inversion_set();
        assert_eq!(
            t.apply_map(&Permutation::identity(4)).unwrap(),
            *t.as_pairs()
        );

        let lhs = p("132")
            .inversion_set()
            .symmetric_difference(
                &p("213")
                    .inversion_set()
                    .apply_map(&p("132").inverse())
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(lhs, pairs(3, &[(1, 3), (2, 3)]));
        assert_eq!(p("213").compose(&p("132")).unwrap(), p("231"));
        assert_eq!(lhs, *p("231").inversion_set());
    }

    #[test]
    fn empty_sets_carry_their_size() {
        assert_ne!(PairSet::new(3), PairSet::new(4));
    }

    #[test]
    fn longest_decreasing_run_examples() {
        assert_eq!(p("4321").longest_decreasing_run(), 4);
        assert_eq!(p("1234").longest_decreasing_run(), 1);
        assert_eq!(p("2413").longest_decreasing_run(), 2);
    }

    #[test]
    fn enumerates_symmetric_group_in_lex_order() {
        let all: Vec<_> = all_permutations(3).map(|q| q.to_string()).collect();
        assert_eq!(all, ["1 2 3", "1 3 2", "2 1 3", "2 3 1", "3 1 2", "3 2 1"]);
        assert_eq!(all_permutations(6).count(), 720);
        assert_eq!(all_permutations(1).count(), 1);
        assert_eq!(all_permutations(0).count(), 0);
    }

    #[test]
    fn pattern_standardizes() {
        assert_eq!(Permutation::pattern_of(&[7, 2, 9]).unwrap(), p("213"));
        assert!(Permutation::pattern_of(&[3, 3]).is_err());
    }

    #[test]
    fn pair_set_bits_span_words() {
        let full = PairSet::full(13);
        assert_eq!(full.len(), 78);
        assert!(full.contains(12, 13));
        assert!(full.complement().is_empty());
        assert_eq!(full.iter().last(), Some((12, 13)));
    }
}
