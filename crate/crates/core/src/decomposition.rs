//! Inv-decompositions: unordered pairs `(τ₁, τ₂)` of non-identity permutations
//! whose inversion sets partition `T_π`.
//!
//! Every decomposition is determined by a [`DecompositionChoice`]: a side for
//! the external edges of each prime strong block, and a permutation `σ` of
//! the children of each serial strong block, with `M_a M_b ⊂ T₁` iff
//! `ab ∈ T_σ`. The same choice can be realized on the substitution tree by
//! inflating two rewritten copies of it.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::blocks::{substitution_tree, BlockKind, Interval, SubstitutionTree};
use crate::error::{Error, Result};
use crate::graph::edge_classes_structural;
use crate::perm::{check_size, InversionSet, Pair, PairSet, Permutation};

/// An unordered pair `τ₁ ⊔ τ₂ = π`, stored with `tau1` holding the
/// lexicographically smallest inversion of `π`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct InvDecomposition {
    pub tau1: Permutation,
    pub tau2: Permutation,
}

impl InvDecomposition {
    /// Checks that `a` and `b` form an inv-decomposition of `p` and returns it
    /// in canonical order.
    pub fn new(p: &Permutation, a: Permutation, b: Permutation) -> Result<Self> {
        check_size(p.len(), a.len())?;
        check_size(p.len(), b.len())?;
        let t = p.inversion_set();
        let (ta, tb) = (a.inversion_set(), b.inversion_set());
        if a.is_identity() || b.is_identity() {
            return Err(Error::InvalidDecomposition("a part is the identity".into()));
        }
        if !ta.is_disjoint(&tb) {
            return Err(Error::InvalidDecomposition(
                "parts share an inversion".into(),
            ));
        }
        if ta.union(&tb)? != *t.as_pairs() {
            return Err(Error::InvalidDecomposition(
                "parts do not cover the inversion set".into(),
            ));
        }
        let first = t.first().expect("non-identity parts imply inversions");
        Ok(if ta.contains(first.0, first.1) {
            InvDecomposition { tau1: a, tau2: b }
        } else {
            InvDecomposition { tau1: b, tau2: a }
        })
    }

    pub fn parts(&self) -> [&Permutation; 2] {
        [&self.tau1, &self.tau2]
    }
}

/// Which part receives the external edges of a prime strong block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

impl Serialize for Side {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u8(match self {
            Side::First => 1,
            Side::Second => 2,
        })
    }
}

/// The free data of an inv-decomposition, keyed by strong block.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecompositionChoice {
    pub prime_side: BTreeMap<Interval, Side>,
    pub serial_perm: BTreeMap<Interval, Permutation>,
}

impl DecompositionChoice {
    /// The choice producing the same pair with the parts swapped.
    pub fn swapped(&self) -> DecompositionChoice {
        DecompositionChoice {
            prime_side: self
                .prime_side
                .iter()
                .map(|(&k, s)| (k, s.flip()))
                .collect(),
            serial_perm: self
                .serial_perm
                .iter()
                .map(|(&k, s)| (k, s.complement()))
                .collect(),
        }
    }

    fn validate(&self, tree: &SubstitutionTree) -> Result<()> {
        let mut primes = 0;
        let mut serials = 0;
        for node in tree.preorder() {
            match node.kind {
                BlockKind::Prime => {
                    primes += 1;
                    if !self.prime_side.contains_key(&node.interval) {
                        return Err(Error::InvalidChoice(format!(
                            "no side for prime block {}",
                            node.interval
                        )));
                    }
                }
                BlockKind::Serial => {
                    serials += 1;
                    match self.serial_perm.get(&node.interval) {
                        None => {
                            return Err(Error::InvalidChoice(format!(
                                "no permutation for serial block {}",
                                node.interval
                            )))
                        }
                        Some(s) if s.len() != node.children.len() => {
                            return Err(Error::InvalidChoice(format!(
                                "serial block {} has {} children but σ has size {}",
                                node.interval,
                                node.children.len(),
                                s.len()
                            )))
                        }
                        Some(_) => {}
                    }
                }
                BlockKind::Parallel => {}
            }
        }
        if primes != self.prime_side.len() || serials != self.serial_perm.len() {
            return Err(Error::InvalidChoice(
                "choice names blocks that are not prime/serial strong blocks".into(),
            ));
        }
        Ok(())
    }
}

/// Number of strong prime blocks and, per arity, of strong serial blocks.
fn decision_profile(tree: &SubstitutionTree) -> (u32, Vec<usize>) {
    let mut primes = 0;
    let mut serial_arities = Vec::new();
    for node in tree.preorder() {
        match node.kind {
            BlockKind::Prime => primes += 1,
            BlockKind::Serial => serial_arities.push(node.children.len()),
            BlockKind::Parallel => {}
        }
    }
    (primes, serial_arities)
}

/// Exact number of unordered inv-decompositions:
/// `½ · 2^m · ∏ (i!)^{k_i} − 1`, with `m` prime strong blocks and `k_i`
/// serial strong blocks of arity `i`. The identity has none.
pub fn count_decompositions(p: &Permutation) -> Result<u128> {
    let (primes, arities) = decision_profile(&substitution_tree(p));
    if primes == 0 && arities.is_empty() {
        return Ok(0);
    }
    let mut total: u128 = 1u128
        .checked_shl(primes)
        .filter(|_| primes < 128)
        .ok_or(Error::CountOverflow)?;
    for k in arities {
        for f in 2..=k as u128 {
            total = total.checked_mul(f).ok_or(Error::CountOverflow)?;
        }
    }
    Ok(total / 2 - 1)
}

/// Per decision node, the edge classes its choice distributes.
enum Decision {
    Prime {
        block: Interval,
        external: PairSet,
    },
    Serial {
        block: Interval,
        pairs: Vec<Vec<PairSet>>,
    },
}

fn decisions(tree: &SubstitutionTree, t: &PairSet) -> Vec<Decision> {
    let n = t.n();
    let cross = |a: Interval, b: Interval| {
        let mut s = PairSet::new(n);
        for u in a.positions() {
            for v in b.positions() {
                if t.contains(u, v) {
                    s.insert(u, v);
                }
            }
        }
        s
    };
    let mut out = Vec::new();
    for node in tree.preorder() {
        let kids: Vec<Interval> = node.children.iter().map(|c| c.interval).collect();
        match node.kind {
            BlockKind::Prime => {
                let mut external = PairSet::new(n);
                for a in 0..kids.len() {
                    for b in a + 1..kids.len() {
                        external = external.union(&cross(kids[a], kids[b])).unwrap();
                    }
                }
                out.push(Decision::Prime {
                    block: node.interval,
                    external,
                });
            }
            BlockKind::Serial => {
                let pairs = (0..kids.len())
                    .map(|a| (0..kids.len()).map(|b| cross(kids[a], kids[b])).collect())
                    .collect();
                out.push(Decision::Serial {
                    block: node.interval,
                    pairs,
                });
            }
            BlockKind::Parallel => {}
        }
    }
    out
}

#[derive(Clone)]
enum State {
    Prime(Side),
    Serial(Vec<usize>),
}

fn next_word(w: &mut [usize]) -> bool {
    let Some(i) = (0..w.len().saturating_sub(1))
        .rev()
        .find(|&i| w[i] < w[i + 1])
    else {
        return false;
    };
    let j = (i + 1..w.len()).rev().find(|&j| w[j] > w[i]).unwrap();
    w.swap(i, j);
    w[i + 1..].reverse();
    true
}

/// Odometer over all choices; the last decision node turns fastest.
struct Odometer {
    states: Vec<State>,
    done: bool,
}

impl Odometer {
    fn new(ds: &[Decision]) -> Self {
        let states = ds
            .iter()
            .map(|d| match d {
                Decision::Prime { .. } => State::Prime(Side::First),
                Decision::Serial { pairs, .. } => State::Serial((1..=pairs.len()).collect()),
            })
            .collect();
        Odometer {
            states,
            done: ds.is_empty(),
        }
    }

    fn advance(&mut self) {
        for st in self.states.iter_mut().rev() {
            match st {
                State::Prime(side @ Side::First) => {
                    *side = Side::Second;
                    return;
                }
                State::Prime(side) => *side = Side::First,
                State::Serial(w) => {
                    if next_word(w) {
                        return;
                    }
                    w.sort_unstable();
                }
            }
        }
        self.done = true;
    }
}

fn first_part(ds: &[Decision], states: &[State], n: usize) -> PairSet {
    let mut t1 = PairSet::new(n);
    for (d, st) in ds.iter().zip(states) {
        match (d, st) {
            (Decision::Prime { external, .. }, State::Prime(Side::First)) => {
                t1 = t1.union(external).unwrap();
            }
            (Decision::Prime { .. }, State::Prime(Side::Second)) => {}
            (Decision::Serial { pairs, .. }, State::Serial(w)) => {
                for a in 0..w.len() {
                    for b in a + 1..w.len() {
                        if w[a] > w[b] {
                            t1 = t1.union(&pairs[a][b]).unwrap();
                        }
                    }
                }
            }
            _ => unreachable!("state matches decision"),
        }
    }
    t1
}

fn to_choice(ds: &[Decision], states: &[State]) -> DecompositionChoice {
    let mut choice = DecompositionChoice::default();
    for (d, st) in ds.iter().zip(states) {
        match (d, st) {
            (Decision::Prime { block, .. }, State::Prime(side)) => {
                choice.prime_side.insert(*block, *side);
            }
            (Decision::Serial { block, .. }, State::Serial(w)) => {
                choice
                    .serial_perm
                    .insert(*block, Permutation::from_word_unchecked(w.clone()));
            }
            _ => unreachable!("state matches decision"),
        }
    }
    choice
}

/// Lazily produced inv-decompositions of a permutation, in canonical order of
/// the parts and in choice order (decision nodes in preorder, prime side 1
/// before 2, serial `σ` in lexicographic order).
pub struct Decompositions {
    decisions: Vec<Decision>,
    odometer: Odometer,
    total: PairSet,
    first: Option<Pair>,
}

impl Iterator for Decompositions {
    type Item = InvDecomposition;

    fn next(&mut self) -> Option<InvDecomposition> {
        let first = self.first?;
        while !self.odometer.done {
            let t1 = first_part(&self.decisions, &self.odometer.states, self.total.n());
            self.odometer.advance();
            // keep one of each swapped pair of choices
            if !t1.contains(first.0, first.1) || t1 == self.total {
                continue;
            }
            let t2 = self.total.difference(&t1).unwrap();
            let tau1 = InversionSet::new(t1).expect("edge-class union is an inversion set");
            let tau2 = InversionSet::new(t2).expect("edge-class union is an inversion set");
            return Some(InvDecomposition {
                tau1: tau1.to_permutation(),
                tau2: tau2.to_permutation(),
            });
        }
        None
    }
}

/// All inv-decompositions of `p`; use `.take(k)` to cap the output.
pub fn enumerate_decompositions(p: &Permutation) -> Decompositions {
    let tree = substitution_tree(p);
    let total = p.inversion_set().into_pairs();
    let decisions = decisions(&tree, &total);
    Decompositions {
        odometer: Odometer::new(&decisions),
        decisions,
        first: total.first(),
        total,
    }
}

/// Every [`DecompositionChoice`] for `p`, trivial ones included, in choice order.
pub fn choices(p: &Permutation) -> impl Iterator<Item = DecompositionChoice> {
    let tree = substitution_tree(p);
    let ds = decisions(&tree, &p.inversion_set());
    let mut odo = Odometer::new(&ds);
    std::iter::from_fn(move || {
        if odo.done {
            return None;
        }
        let c = to_choice(&ds, &odo.states);
        odo.advance();
        Some(c)
    })
}

/// Builds the pair for `choice` from edge classes: `T₁` collects the external
/// edges of prime blocks on side one and the serial child pairs inverted by
/// their `σ`.
pub fn decomposition_from_classes(
    p: &Permutation,
    choice: &DecompositionChoice,
) -> Result<InvDecomposition> {
    let tree = substitution_tree(p);
    choice.validate(&tree)?;
    let total = p.inversion_set().into_pairs();
    let ds = decisions(&tree, &total);
    let states: Vec<State> = ds
        .iter()
        .map(|d| match d {
            Decision::Prime { block, .. } => State::Prime(choice.prime_side[block]),
            Decision::Serial { block, .. } => {
                State::Serial(choice.serial_perm[block].word().to_vec())
            }
        })
        .collect();
    let t1 = first_part(&ds, &states, p.len());
    let t2 = total.difference(&t1)?;
    if t1.is_empty() || t2.is_empty() {
        return Err(Error::TrivialChoice);
    }
    InvDecomposition::new(
        p,
        crate::perm::permutation_from_inversion_set(&t1)?,
        crate::perm::permutation_from_inversion_set(&t2)?,
    )
}

/// Builds the pair for `choice` by inflating two rewritten copies of the
/// substitution tree: each prime skeleton is kept in the copy of its side and
/// replaced by an identity in the other; each serial skeleton becomes `σ` in
/// the first copy and `w₀ ∘ σ` in the second.
pub fn decomposition_by_inflation(
    p: &Permutation,
    choice: &DecompositionChoice,
) -> Result<InvDecomposition> {
    let tree = substitution_tree(p);
    choice.validate(&tree)?;
    let copy = |side: Side| {
        tree.evaluate_with(&|node: &SubstitutionTree| match node.kind {
            BlockKind::Parallel => node.skeleton.clone(),
            BlockKind::Prime if choice.prime_side[&node.interval] == side => node.skeleton.clone(),
            BlockKind::Prime => Permutation::identity(node.skeleton.len()),
            BlockKind::Serial => {
                let sigma = &choice.serial_perm[&node.interval];
                match side {
                    Side::First => sigma.clone(),
                    Side::Second => sigma.complement(),
                }
            }
        })
    };
    let (tau1, tau2) = (copy(Side::First), copy(Side::Second));
    if tau1.is_identity() || tau2.is_identity() {
        return Err(Error::TrivialChoice);
    }
    InvDecomposition::new(p, tau1, tau2)
}

/// At least two edge classes.
pub fn is_decomposable(p: &Permutation) -> bool {
    edge_classes_structural(p).len() >= 2
}

/// Order in which the parts of a multiplicative decomposition multiply to `π`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProductOrder {
    /// `π = τ₁ ∘ τ₂`
    Tau1Tau2,
    /// `π = τ₂ ∘ τ₁`
    Tau2Tau1,
}

pub fn product_order(p: &Permutation, d: &InvDecomposition) -> Option<ProductOrder> {
    if d.tau1.compose(&d.tau2).ok().as_ref() == Some(p) {
        Some(ProductOrder::Tau1Tau2)
    } else if d.tau2.compose(&d.tau1).ok().as_ref() == Some(p) {
        Some(ProductOrder::Tau2Tau1)
    } else {
        None
    }
}

/// `π = τ₁τ₂` or `π = τ₂τ₁`.
pub fn is_multiplicative(p: &Permutation, d: &InvDecomposition) -> Result<bool> {
    InvDecomposition::new(p, d.tau1.clone(), d.tau2.clone())?;
    Ok(product_order(p, d).is_some())
}

/// A multiplicative decomposition, when one exists.
///
/// The second part takes the edges induced on a single strong block: the
/// second non-parallel strong block in preorder if there are two, otherwise
/// the union of the first two children of the serial block with at least
/// three children. Every component of the second part's graph is then an
/// induced subgraph of `G_π`, which forces `π = τ₁τ₂`.
pub fn multiplicative_witness(p: &Permutation) -> Option<InvDecomposition> {
    let tree = substitution_tree(p);
    let non_parallel: Vec<&SubstitutionTree> = tree
        .preorder()
        .into_iter()
        .filter(|t| t.kind != BlockKind::Parallel)
        .collect();
    let vertices: Interval = if non_parallel.len() >= 2 {
        non_parallel[1].interval
    } else {
        let node = non_parallel
            .iter()
            .find(|t| t.kind == BlockKind::Serial && t.children.len() >= 3)?;
        Interval {
            lo: node.children[0].interval.lo,
            hi: node.children[1].interval.hi,
        }
    };
    let total = p.inversion_set();
    let t2 = total.induced(vertices.positions());
    let t1 = total.difference(&t2).ok()?;
    let tau1 = InversionSet::new(t1).ok()?.to_permutation();
    let tau2 = InversionSet::new(t2).ok()?.to_permutation();
    debug_assert_eq!(tau1.compose(&tau2).ok().as_ref(), Some(p));
    InvDecomposition::new(p, tau1, tau2).ok()
}

/// The 0/1 vector `v_π` with `(v_π)_{ij} = 1` iff `π(i) < π(j)`, for `i ≠ j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LopVertex {
    n: usize,
    entries: Vec<u8>,
}

impl LopVertex {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `(v_π)_{ij}` for `i ≠ j`.
    pub fn entry(&self, i: usize, j: usize) -> u8 {
        assert!(i != j && (1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    /// Off-diagonal entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u8)> + '_ {
        let n = self.n;
        (1..=n)
            .flat_map(move |i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(move |(i, j)| ((i, j), self.entry(i, j)))
    }
}

pub fn vertex_vector(p: &Permutation) -> LopVertex {
    let n = p.len();
    let mut entries = vec![0; n * n];
    for i in 1..=n {
        for j in 1..=n {
            if i != j && p.apply(i) < p.apply(j) {
                entries[(i - 1) * n + (j - 1)] = 1;
            }
        }
    }
    LopVertex { n, entries }
}

/// Whether `v_π` is adjacent to `v_id` on the linear ordering polytope; this
/// holds exactly when `π` is not inv-decomposable.
pub fn is_neighbor_of_identity(p: &Permutation) -> Result<bool> {
    if p.is_identity() {
        return Err(Error::IdentityVertex);
    }
    Ok(!is_decomposable(p))
}

/// Whether the inversion sets of `parts` are pairwise disjoint with union `T_π`.
pub fn validate_partition(p: &Permutation, parts: &[Permutation]) -> Result<bool> {
    for part in parts {
        check_size(p.len(), part.len())?;
    }
    let mut seen = PairSet::new(p.len());
    for part in parts {
        let t = part.inversion_set();
        if !seen.is_disjoint(&t) {
            return Ok(false);
        }
        seen = seen.union(&t)?;
    }
    Ok(seen == *p.inversion_set().as_pairs())
}

/// The permutation whose inversion set is `T[parts[i]] ⊔ T[parts[j]]`.
pub fn merge_parts(
    p: &Permutation,
    parts: &[Permutation],
    i: usize,
    j: usize,
) -> Result<Permutation> {
    for index in [i, j] {
        if index >= parts.len() {
            return Err(Error::PartIndex {
                index,
                len: parts.len(),
            });
        }
    }
    if i == j {
        return Err(Error::SamePart);
    }
    if !validate_partition(p, parts)? {
        return Err(Error::InvalidPartition);
    }
    let merged = parts[i].inversion_set().union(&parts[j].inversion_set())?;
    crate::perm::permutation_from_inversion_set(&merged)
}

/// `C(n, 2) − n + 2`: permutations with at least this many inversions are
/// inv-decomposable once `n >= 5`.
pub fn min_inversions_guarantee(n: usize) -> usize {
    assert!(n >= 1);
    n * (n - 1) / 2 + 2 - n
}

/// Pairs whose multiplicity differs between the two sides, as
/// `(pair, lhs count, rhs count)`.
pub fn binomial_imbalance(
    lhs: &[Permutation],
    rhs: &[Permutation],
) -> Result<Vec<(Pair, usize, usize)>> {
    let n = lhs.first().or(rhs.first()).ok_or(Error::Empty)?.len();
    if lhs.is_empty() || rhs.is_empty() {
        return Err(Error::Empty);
    }
    let mut counts: BTreeMap<Pair, (usize, usize)> = BTreeMap::new();
    for (side, perms) in [(0, lhs), (1, rhs)] {
        for q in perms {
            check_size(n, q.len())?;
            for e in q.inversion_set().iter() {
                let c = counts.entry(e).or_default();
                if side == 0 {
                    c.0 += 1;
                } else {
                    c.1 += 1;
                }
            }
        }
    }
    Ok(counts
        .into_iter()
        .filter(|(_, (a, b))| a != b)
        .map(|(e, (a, b))| (e, a, b))
        .collect())
}

/// Whether `∏ X_{lhs} − ∏ X_{rhs}` is a relation of the inversion model, i.e.
/// the inversion sets agree as multisets.
pub fn binomial_holds(lhs: &[Permutation], rhs: &[Permutation]) -> Result<bool> {
    Ok(binomial_imbalance(lhs, rhs)?.is_empty())
}
