//! π-blocks (common intervals), the substitution decomposition tree and
//! inflation.
//!
//! A π-block is an interval of positions whose image is an interval of
//! values. A block is strong when no other block overlaps it; the strong
//! blocks form a laminar family whose Hasse diagram is the substitution tree.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// The interval `{lo, lo + 1, …, hi}` of positions, `1 <= lo <= hi`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo == 0 || lo > hi {
            return Err(Error::IntervalOutOfRange { lo, hi, n: hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn singleton(x: usize) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_singleton(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: usize) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Nonempty intersection with neither interval containing the other.
    pub fn overlaps(&self, other: &Interval) -> bool {
        let meet = self.lo.max(other.lo) <= self.hi.min(other.hi);
        meet && !self.contains_interval(other) && !other.contains_interval(self)
    }

    pub fn positions(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }

    fn check_within(&self, n: usize) -> Result<()> {
        if self.lo == 0 || self.lo > self.hi || self.hi > n {
            Err(Error::IntervalOutOfRange {
                lo: self.lo,
                hi: self.hi,
                n,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(serializer)
    }
}

/// Type of a block or module with at least two elements. Singletons count as
/// parallel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    Parallel,
    Serial,
    Prime,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockKind::Parallel => "parallel",
            BlockKind::Serial => "serial",
            BlockKind::Prime => "prime",
        })
    }
}

/// True iff `p(interval)` is again an interval.
pub fn is_block(p: &Permutation, interval: Interval) -> Result<bool> {
    interval.check_within(p.len())?;
    let (min, max) = interval
        .positions()
        .map(|i| p.apply(i))
        .fold((usize::MAX, 0), |(lo, hi), v| (lo.min(v), hi.max(v)));
    Ok(max - min + 1 == interval.len())
}

/// Every π-block, sorted by `(lo, hi)`.
pub fn all_blocks(p: &Permutation) -> Vec<Interval> {
    let n = p.len();
    let mut out = Vec::new();
    for lo in 1..=n {
        let (mut min, mut max) = (usize::MAX, 0);
        for hi in lo..=n {
            let v = p.apply(hi);
            min = min.min(v);
            max = max.max(v);
            if max - min == hi - lo {
                out.push(Interval { lo, hi });
            }
        }
    }
    out
}

/// Blocks overlapped by no other block, sorted by `(lo, hi)`.
pub fn strong_blocks(p: &Permutation) -> Vec<Interval> {
    strong_among(&all_blocks(p))
}

fn strong_among(blocks: &[Interval]) -> Vec<Interval> {
    blocks
        .iter()
        .filter(|b| !blocks.iter().any(|c| b.overlaps(c)))
        .copied()
        .collect()
}

/// Lookup from left endpoint to the right endpoints of strong blocks.
struct StrongIndex {
    by_lo: BTreeMap<usize, Vec<usize>>,
}

impl StrongIndex {
    fn new(p: &Permutation) -> Self {
        let mut by_lo: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for b in strong_blocks(p) {
            by_lo.entry(b.lo).or_default().push(b.hi);
        }
        StrongIndex { by_lo }
    }

    /// The maximal strong blocks strictly inside `outer`, left to right. These
    /// partition `outer` because strong blocks are laminar and include every
    /// singleton.
    fn children(&self, outer: Interval) -> Vec<Interval> {
        let mut out = Vec::new();
        let mut x = outer.lo;
        while x <= outer.hi {
            let hi = self.by_lo[&x]
                .iter()
                .copied()
                .filter(|&h| h <= outer.hi && Interval { lo: x, hi: h } != outer)
                .max()
                .expect("singletons are strong");
            out.push(Interval { lo: x, hi });
            x = hi + 1;
        }
        out
    }
}

fn skeleton_of(p: &Permutation, parts: &[Interval]) -> Permutation {
    let mins: Vec<usize> = parts
        .iter()
        .map(|c| c.positions().map(|i| p.apply(i)).min().unwrap())
        .collect();
    Permutation::pattern_of(&mins).expect("blocks have disjoint images")
}

fn kind_of_skeleton(skeleton: &Permutation) -> BlockKind {
    if skeleton.is_identity() {
        BlockKind::Parallel
    } else if skeleton.is_reverse_identity() {
        BlockKind::Serial
    } else {
        BlockKind::Prime
    }
}

/// Type of a block with at least two elements, read off the relative order of
/// the images of its maximal strong sub-blocks.
pub fn classify_block(p: &Permutation, interval: Interval) -> Result<BlockKind> {
    if !is_block(p, interval)? {
        return Err(Error::NotABlock {
            lo: interval.lo,
            hi: interval.hi,
        });
    }
    if interval.is_singleton() {
        return Err(Error::SingletonBlock);
    }
    let children = StrongIndex::new(p).children(interval);
    Ok(kind_of_skeleton(&skeleton_of(p, &children)))
}

/// A permutation is simple when its only blocks are the singletons and
/// `[1, n]`. Taken literally this makes `1`, `12` and `21` simple.
pub fn is_simple(p: &Permutation) -> bool {
    let n = p.len();
    all_blocks(p)
        .iter()
        .all(|b| b.is_singleton() || b.len() == n)
}

/// Node of the substitution decomposition.
///
/// Leaves are singleton intervals of kind [`BlockKind::Parallel`] with the
/// unit skeleton `1` and no children. Inner nodes have a skeleton whose size
/// equals the number of children.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubstitutionTree {
    pub interval: Interval,
    pub kind: BlockKind,
    pub skeleton: Permutation,
    pub children: Vec<SubstitutionTree>,
}

impl SubstitutionTree {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Nodes in preorder (parent before children, children left to right).
    pub fn preorder(&self) -> Vec<&SubstitutionTree> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            out.push(node);
            stack.extend(node.children.iter().rev());
        }
        out
    }

    /// Node intervals, i.e. the strong blocks, sorted by `(lo, hi)`.
    pub fn intervals(&self) -> Vec<Interval> {
        let mut out: Vec<Interval> = self.preorder().iter().map(|t| t.interval).collect();
        out.sort();
        out
    }

    /// Validates the tree shape and evaluates the iterated inflation.
    pub fn to_permutation(&self) -> Result<Permutation> {
        self.validate(true)?;
        Ok(self.evaluate_with(&|node| node.skeleton.clone()))
    }

    pub(crate) fn validate(&self, check_kinds: bool) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedTree(msg));
        if self.interval.lo == 0 || self.interval.lo > self.interval.hi {
            return bad(format!("invalid interval {}", self.interval));
        }
        if self.is_leaf() {
            if !self.interval.is_singleton() {
                return bad(format!("leaf {} is not a singleton", self.interval));
            }
            if self.skeleton.len() != 1 {
                return bad(format!(
                    "leaf {} has skeleton of size {}",
                    self.interval,
                    self.skeleton.len()
                ));
            }
            if check_kinds && self.kind != BlockKind::Parallel {
                return bad(format!("leaf {} must be parallel", self.interval));
            }
            return Ok(());
        }
        if self.children.len() < 2 {
            return bad(format!("node {} has a single child", self.interval));
        }
        if self.skeleton.len() != self.children.len() {
            return bad(format!(
                "node {} has {} children but a skeleton of size {}",
                self.interval,
                self.children.len(),
                self.skeleton.len()
            ));
        }
        let mut next = self.interval.lo;
        for child in &self.children {
            if child.interval.lo != next {
                return bad(format!("children of {} do not tile it", self.interval));
            }
            next = child.interval.hi + 1;
        }
        if next != self.interval.hi + 1 {
            return bad(format!("children of {} do not tile it", self.interval));
        }
        if check_kinds && kind_of_skeleton(&self.skeleton) != self.kind {
            return bad(format!(
                "node {} labelled {} but skeleton {} is {}",
                self.interval,
                self.kind,
                self.skeleton,
                kind_of_skeleton(&self.skeleton)
            ));
        }
        for child in &self.children {
            child.validate(check_kinds)?;
        }
        Ok(())
    }

    /// Evaluates the iterated inflation with the skeleton of every inner node
    /// chosen by `skeleton`. The tree shape must already be valid.
    pub(crate) fn evaluate_with(
        &self,
        skeleton: &dyn Fn(&SubstitutionTree) -> Permutation,
    ) -> Permutation {
        if self.is_leaf() {
            return Permutation::identity(1);
        }
        let parts: Vec<Permutation> = self
            .children
            .iter()
            .map(|c| c.evaluate_with(skeleton))
            .collect();
        inflate(&skeleton(self), &parts).expect("validated arity")
    }
}

/// The substitution decomposition of `p` as a tree over its strong blocks.
pub fn substitution_tree(p: &Permutation) -> SubstitutionTree {
    let index = StrongIndex::new(p);
    build(p, &index, Interval { lo: 1, hi: p.len() })
}

fn build(p: &Permutation, index: &StrongIndex, interval: Interval) -> SubstitutionTree {
    if interval.is_singleton() {
        return SubstitutionTree {
            interval,
            kind: BlockKind::Parallel,
            skeleton: Permutation::identity(1),
            children: Vec::new(),
        };
    }
    let parts = index.children(interval);
    let skeleton = skeleton_of(p, &parts);
    SubstitutionTree {
        interval,
        kind: kind_of_skeleton(&skeleton),
        skeleton,
        children: parts.into_iter().map(|c| build(p, index, c)).collect(),
    }
}

/// `skeleton[parts…]`: position block `i` carries the pattern `parts[i]`, and
/// the blocks are stacked in value according to `skeleton`.
pub fn inflate(skeleton: &Permutation, parts: &[Permutation]) -> Result<Permutation> {
    if parts.len() != skeleton.len() {
        return Err(Error::ArityMismatch {
            skeleton: skeleton.len(),
            parts: parts.len(),
        });
    }
    // offset[v] = total size of the parts whose skeleton value is below v
    let inv = skeleton.inverse();
    let mut offset = vec![0; skeleton.len() + 1];
    for v in 1..=skeleton.len() {
        offset[v] = offset[v - 1] + parts[inv.apply(v) - 1].len();
    }
    let mut word = Vec::with_capacity(offset[skeleton.len()]);
    for (i, part) in parts.iter().enumerate() {
        let base = offset[skeleton.word()[i] - 1];
        word.extend(part.word().iter().map(|&v| base + v));
    }
    Ok(Permutation::from_word_unchecked(word))
}

/// Inverse of [`substitution_tree`].
pub fn tree_to_permutation(tree: &SubstitutionTree) -> Result<Permutation> {
    tree.to_permutation()
}
