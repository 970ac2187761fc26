//! Brute-force reference implementations and the exhaustive sweep driver.
//!
//! Nothing here relies on the structure theory used by the fast paths: blocks
//! come from explicit image sets, modules from subset enumeration, and
//! decompositions from splitting `T_π` every possible way.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::blocks::{classify_block, substitution_tree, BlockKind, Interval, SubstitutionTree};
use crate::decomposition::{
    choices, count_decompositions, decomposition_by_inflation, decomposition_from_classes,
    enumerate_decompositions, is_decomposable, is_multiplicative, is_neighbor_of_identity,
    merge_parts, min_inversions_guarantee, multiplicative_witness, validate_partition,
    vertex_vector, InvDecomposition,
};
use crate::error::{Error, Result};
use crate::graph::{
    connected_components, edge_classes_closure, edge_classes_structural, inversion_graph,
    is_module, owning_module, Graph,
};
use crate::perm::{all_permutations, InversionSet, PairSet, Permutation};

/// Largest `|T_π|` for which [`brute_decompositions`] enumerates subsets.
pub const MAX_BRUTE_INVERSIONS: usize = 25;
/// Largest graph for module enumeration.
pub const MAX_BRUTE_VERTICES: usize = 10;
/// Default number of failing permutations kept per check.
pub const DEFAULT_WITNESS_CAP: usize = 10;

/// Every inv-decomposition of `p`, found by testing all splits of `T_π` into
/// two nonempty parts against the inversion-set criterion.
pub fn brute_decompositions(p: &Permutation) -> Result<Vec<InvDecomposition>> {
    let inversions: Vec<_> = p.inversion_set().iter().collect();
    let m = inversions.len();
    if m > MAX_BRUTE_INVERSIONS {
        return Err(Error::Budget(format!(
            "{m} inversions exceed the subset budget of {MAX_BRUTE_INVERSIONS}"
        )));
    }
    let mut out = Vec::new();
    if m < 2 {
        return Ok(out);
    }
    let full = (1u32 << m) - 1;
    // bit 0 is the smallest inversion; fixing it in the first part picks one
    // representative of each unordered pair
    for mask in (1..full).step_by(2) {
        let mut first = PairSet::new(p.len());
        let mut second = PairSet::new(p.len());
        for (k, &(i, j)) in inversions.iter().enumerate() {
            if mask >> k & 1 == 1 {
                first.insert(i, j);
            } else {
                second.insert(i, j);
            }
        }
        if first.is_inversion_set() && second.is_inversion_set() {
            out.push(InvDecomposition {
                tau1: InversionSet::new(first)?.to_permutation(),
                tau2: InversionSet::new(second)?.to_permutation(),
            });
        }
    }
    out.sort();
    Ok(out)
}

/// Same contract as [`brute_decompositions`], by scanning all pairs of `S_n`.
pub fn brute_decompositions_by_pairs(p: &Permutation) -> Result<Vec<InvDecomposition>> {
    let n = p.len();
    if n > 6 {
        return Err(Error::Budget(format!(
            "pair scan limited to n <= 6, got {n}"
        )));
    }
    let t = p.inversion_set();
    let Some(first) = t.first() else {
        return Ok(Vec::new());
    };
    let all: Vec<(Permutation, InversionSet)> = all_permutations(n)
        .map(|q| {
            let tq = q.inversion_set();
            (q, tq)
        })
        .collect();
    let mut out = Vec::new();
    for (a, ta) in &all {
        if a.is_identity() || !ta.contains(first.0, first.1) || !ta.is_subset(&t) {
            continue;
        }
        for (b, tb) in &all {
            if !b.is_identity() && ta.is_disjoint(tb) && ta.union(tb)? == *t.as_pairs() {
                out.push(InvDecomposition {
                    tau1: a.clone(),
                    tau2: b.clone(),
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

fn adjacency_masks(graph: &Graph) -> Vec<u32> {
    let n = graph.n();
    (1..=n)
        .map(|u| {
            (1..=n)
                .filter(|&v| graph.adjacent(u, v))
                .fold(0u32, |m, v| m | 1 << (v - 1))
        })
        .collect()
}

fn mask_to_set(mask: u32) -> Vec<usize> {
    (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

fn set_to_mask(set: impl IntoIterator<Item = usize>) -> u32 {
    set.into_iter().fold(0, |m, v| m | 1 << (v - 1))
}

fn check_vertex_budget(graph: &Graph) -> Result<()> {
    if graph.n() > MAX_BRUTE_VERTICES {
        return Err(Error::Budget(format!(
            "{} vertices exceed the module budget of {MAX_BRUTE_VERTICES}",
            graph.n()
        )));
    }
    Ok(())
}

fn module_masks(graph: &Graph) -> Vec<u32> {
    let adj = adjacency_masks(graph);
    let n = graph.n();
    (1u32..1 << n)
        .filter(|&s| {
            (0..n)
                .filter(|&v| s >> v & 1 == 0)
                .all(|v| adj[v] & s == 0 || adj[v] & s == s)
        })
        .collect()
}

fn overlapping(a: u32, b: u32) -> bool {
    a & b != 0 && a & !b != 0 && b & !a != 0
}

fn strong_masks(modules: &[u32]) -> Vec<u32> {
    modules
        .iter()
        .copied()
        .filter(|&m| !modules.iter().any(|&o| overlapping(m, o)))
        .collect()
}

/// All nonempty vertex sets that are modules, each sorted, in lexicographic order.
pub fn brute_modules(graph: &Graph) -> Result<Vec<Vec<usize>>> {
    check_vertex_budget(graph)?;
    let mut out: Vec<_> = module_masks(graph).into_iter().map(mask_to_set).collect();
    out.sort();
    Ok(out)
}

/// Modules overlapped by no other module.
pub fn brute_strong_modules(graph: &Graph) -> Result<Vec<Vec<usize>>> {
    check_vertex_budget(graph)?;
    let mut out: Vec<_> = strong_masks(&module_masks(graph))
        .into_iter()
        .map(mask_to_set)
        .collect();
    out.sort();
    Ok(out)
}

/// Intervals whose image, sorted, is a run of consecutive values.
pub fn brute_blocks(p: &Permutation) -> Vec<Interval> {
    let n = p.len();
    let mut out = Vec::new();
    for lo in 1..=n {
        for hi in lo..=n {
            let mut image: Vec<usize> = (lo..=hi).map(|i| p.apply(i)).collect();
            image.sort_unstable();
            if image.windows(2).all(|w| w[1] == w[0] + 1) {
                out.push(Interval { lo, hi });
            }
        }
    }
    out
}

/// Blocks from [`brute_blocks`] that no other block overlaps.
pub fn brute_strong_blocks(p: &Permutation) -> Vec<Interval> {
    let blocks = brute_blocks(p);
    let meets = |a: &Interval, b: &Interval| {
        let (sa, sb): (BTreeSet<usize>, BTreeSet<usize>) =
            (a.positions().collect(), b.positions().collect());
        !sa.is_disjoint(&sb) && !sa.is_subset(&sb) && !sb.is_subset(&sa)
    };
    blocks
        .iter()
        .filter(|a| !blocks.iter().any(|b| meets(a, b)))
        .copied()
        .collect()
}

/// Size of a largest clique, by subset enumeration.
pub fn brute_max_clique(graph: &Graph) -> Result<usize> {
    check_vertex_budget(graph)?;
    let adj = adjacency_masks(graph);
    let n = graph.n();
    Ok((0u32..1 << n)
        .filter(|&s| {
            (0..n)
                .filter(|&v| s >> v & 1 == 1)
                .all(|v| (adj[v] | 1 << v) & s == s)
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

/// Three-part partitions of `T_π` obtained by splitting either part of a
/// two-part decomposition once more.
pub fn three_part_partitions(p: &Permutation) -> Result<Vec<[Permutation; 3]>> {
    let mut out = BTreeSet::new();
    for d in brute_decompositions(p)? {
        for (keep, split) in [(&d.tau1, &d.tau2), (&d.tau2, &d.tau1)] {
            for e in brute_decompositions(split)? {
                let mut parts = [keep.clone(), e.tau1, e.tau2];
                parts.sort();
                out.insert(parts);
            }
        }
    }
    Ok(out.into_iter().collect())
}

macro_rules! checks {
    ($($variant:ident => $name:literal, $max:literal, $doc:literal;)*) => {
        /// A property verified by [`sweep_verify`] on every permutation of `S_n`.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Check {
            $(#[doc = $doc] $variant,)*
        }

        impl Check {
            pub const ALL: &'static [Check] = &[$(Check::$variant,)*];

            pub fn name(self) -> &'static str {
                match self { $(Check::$variant => $name,)* }
            }

            /// Largest `n` the check may run at.
            pub fn max_n(self) -> usize {
                match self { $(Check::$variant => $max,)* }
            }
        }

        impl FromStr for Check {
            type Err = Error;

            fn from_str(s: &str) -> Result<Check> {
                match s {
                    $($name => Ok(Check::$variant),)*
                    other => Err(Error::UnknownCheck(other.to_string())),
                }
            }
        }
    };
}

checks! {
    InversionRoundTrip => "inversion-round-trip", 8, "Inversion set to permutation and back.";
    TreeRoundTrip => "tree-round-trip", 8, "Substitution tree to permutation and back, plus tree invariants.";
    Complement => "complement", 8, "Complement of `T_π` is `T[w₀π]`.";
    ProductIdentity => "product-identity", 6, "`T[τ₁τ₂] = T[τ₂] Δ τ₂⁻¹(T[τ₁])` for all `τ₂`.";
    DecreasingRunClique => "lds-clique", 8, "Longest decreasing subsequence equals the clique number.";
    Blocks => "blocks", 8, "Fast block scan agrees with the image-set scan.";
    StrongBlocks => "strong-blocks", 8, "Tree nodes are the strong blocks; children are maximal strong sub-blocks.";
    StrongModules => "strong-modules", 6, "Strong modules by subset enumeration are exactly the strong blocks.";
    IntervalModules => "interval-modules", 8, "An interval is a module iff it is a block.";
    NonStrongModules => "non-strong-modules", 6, "Non-strong modules are unions of children of parallel or serial strong modules, and conversely.";
    Naka => "naka", 6, "Modules map their outside and their gaps onto those of their image.";
    ComponentsFixed => "components-fixed", 8, "Connected components are fixed setwise.";
    EdgeClasses => "edge-classes", 8, "Structural and closure edge classes coincide; each class is external to one strong module.";
    CountVsBrute => "count-vs-brute", 6, "Counting formula and enumeration agree with exhaustive splitting.";
    Enumeration => "enumeration", 6, "Enumerated pairs are distinct, sound, class-atomic and satisfy the midpoint identity.";
    Inflation => "inflation", 6, "Inflation-built pairs equal edge-class-built pairs.";
    Multiplicative => "multiplicative", 8, "Decomposable permutations have a multiplicative witness.";
    NonMultiplicativeRun => "non-multiplicative-lds", 6, "Connected graphs with a non-multiplicative decomposition contain a decreasing run of four.";
    Criterion => "criterion", 8, "Equivalent characterizations of decomposability agree.";
    LengthBound => "length-bound", 8, "Enough inversions force decomposability.";
    ThreePartMerge => "three-part-merge", 5, "Merging two parts of a three-part partition gives an inversion set.";
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Check {
    /// Checks included in an `all` selection at size `n`: those within budget,
    /// minus the length bound below `n = 5`, where it is known to fail.
    pub fn applicable(n: usize) -> Vec<Check> {
        Check::ALL
            .iter()
            .copied()
            .filter(|c| n <= c.max_n() && !(*c == Check::LengthBound && n <= 4))
            .collect()
    }

    /// Parses `all` or a comma-separated list of check names.
    pub fn parse_selection(text: &str, n: usize) -> Result<Vec<Check>> {
        if text.trim() == "all" {
            return Ok(Check::applicable(n));
        }
        let mut out: Vec<Check> = text
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }

    fn run(self, p: &Permutation) -> bool {
        match self {
            Check::InversionRoundTrip => p.inversion_set().to_permutation() == *p,
            Check::TreeRoundTrip => check_tree(p),
            Check::Complement => {
                let w0p = Permutation::reverse_identity(p.len()).compose(p).unwrap();
                p.inversion_set().complement() == *w0p.inversion_set()
            }
            Check::ProductIdentity => check_product_identity(p),
            Check::DecreasingRunClique => {
                brute_max_clique(&inversion_graph(p)).ok() == Some(p.longest_decreasing_run())
            }
            Check::Blocks => crate::blocks::all_blocks(p) == brute_blocks(p),
            Check::StrongBlocks => check_strong_blocks(p),
            Check::StrongModules => {
                brute_strong_modules(&inversion_graph(p)).unwrap()
                    == tree_vertex_sets(&substitution_tree(p))
            }
            Check::IntervalModules => {
                let g = inversion_graph(p);
                let blocks: BTreeSet<Interval> = brute_blocks(p).into_iter().collect();
                (1..=p.len()).all(|lo| {
                    (lo..=p.len()).all(|hi| {
                        let set: Vec<usize> = (lo..=hi).collect();
                        is_module(&g, &set).unwrap() == blocks.contains(&Interval { lo, hi })
                    })
                })
            }
            Check::NonStrongModules => check_non_strong_modules(p),
            Check::Naka => check_naka(p),
            Check::ComponentsFixed => connected_components(&inversion_graph(p)).iter().all(|c| {
                let image: BTreeSet<usize> = c.iter().map(|&i| p.apply(i)).collect();
                image == c.iter().copied().collect()
            }),
            Check::EdgeClasses => check_edge_classes(p),
            Check::CountVsBrute => {
                let brute = brute_decompositions(p).unwrap();
                let mut fast: Vec<_> = enumerate_decompositions(p).collect();
                fast.sort();
                count_decompositions(p).ok() == Some(brute.len() as u128) && fast == brute
            }
            Check::Enumeration => check_enumeration(p),
            Check::Inflation => check_inflation(p),
            Check::Multiplicative => match multiplicative_witness(p) {
                Some(d) => {
                    is_decomposable(p)
                        && InvDecomposition::new(p, d.tau1.clone(), d.tau2.clone()).is_ok()
                        && is_multiplicative(p, &d).unwrap_or(false)
                }
                None => !is_decomposable(p),
            },
            Check::NonMultiplicativeRun => {
                connected_components(&inversion_graph(p)).len() != 1
                    || enumerate_decompositions(p).all(|d| is_multiplicative(p, &d).unwrap())
                    || p.longest_decreasing_run() >= 4
            }
            Check::Criterion => check_criterion(p),
            Check::LengthBound => {
                p.inversion_count() < min_inversions_guarantee(p.len()) || is_decomposable(p)
            }
            Check::ThreePartMerge => three_part_partitions(p).unwrap().iter().all(|parts| {
                validate_partition(p, parts).unwrap_or(false)
                    && (0..3).all(|i| {
                        (0..3)
                            .filter(|&j| j != i)
                            .all(|j| merge_parts(p, parts, i, j).is_ok())
                    })
            }),
        }
    }
}

fn check_tree(p: &Permutation) -> bool {
    let tree = substitution_tree(p);
    if tree.to_permutation().as_ref() != Ok(p) {
        return false;
    }
    tree.preorder().iter().all(|node| {
        let alternates = node.kind == BlockKind::Prime
            || node
                .children
                .iter()
                .all(|c| c.is_leaf() || c.kind != node.kind);
        let prime_ok = node.kind != BlockKind::Prime
            || (node.skeleton.len() >= 4 && crate::blocks::is_simple(&node.skeleton));
        alternates && prime_ok
    })
}

fn check_product_identity(p: &Permutation) -> bool {
    let t1 = p.inversion_set();
    all_permutations(p.len()).all(|t2| {
        let lhs = p.compose(&t2).unwrap().inversion_set();
        let rhs = t2
            .inversion_set()
            .symmetric_difference(&t1.apply_map(&t2.inverse()).unwrap())
            .unwrap();
        *lhs == rhs
    })
}

fn check_strong_blocks(p: &Permutation) -> bool {
    let strong = brute_strong_blocks(p);
    let tree = substitution_tree(p);
    if tree.intervals() != strong {
        return false;
    }
    tree.preorder().iter().filter(|t| !t.is_leaf()).all(|node| {
        let inside: Vec<&Interval> = strong
            .iter()
            .filter(|s| node.interval.contains_interval(s) && **s != node.interval)
            .collect();
        let maximal: Vec<Interval> = inside
            .iter()
            .filter(|s| !inside.iter().any(|o| o != *s && o.contains_interval(s)))
            .map(|s| **s)
            .collect();
        let kids: Vec<Interval> = node.children.iter().map(|c| c.interval).collect();
        maximal == kids
    })
}

fn check_non_strong_modules(p: &Permutation) -> bool {
    let g = inversion_graph(p);
    let modules = module_masks(&g);
    let strong: BTreeSet<u32> = strong_masks(&modules).into_iter().collect();
    let tree = substitution_tree(p);
    let unions_of_children: Vec<(BlockKind, Vec<u32>)> = tree
        .preorder()
        .iter()
        .filter(|t| !t.is_leaf())
        .map(|t| {
            (
                t.kind,
                t.children
                    .iter()
                    .map(|c| set_to_mask(c.interval.positions()))
                    .collect(),
            )
        })
        .collect();
    let is_union_of_children = |m: u32, kids: &[u32]| {
        kids.iter().all(|&k| m & k == 0 || m & k == k)
            && kids.iter().filter(|&&k| m & k == k).count() >= 1
    };
    let forward = modules.iter().filter(|m| !strong.contains(m)).all(|&m| {
        unions_of_children
            .iter()
            .any(|(kind, kids)| *kind != BlockKind::Prime && is_union_of_children(m, kids))
    });
    let backward = unions_of_children
        .iter()
        .filter(|(kind, _)| *kind != BlockKind::Prime)
        .all(|(_, kids)| {
            (1u32..1 << kids.len()).all(|sel| {
                let m = (0..kids.len())
                    .filter(|b| sel >> b & 1 == 1)
                    .fold(0, |acc, b| acc | kids[b]);
                modules.contains(&m)
            })
        });
    forward && backward
}

fn check_naka(p: &Permutation) -> bool {
    let n = p.len();
    let g = inversion_graph(p);
    let split = |s: &BTreeSet<usize>| {
        let (lo, hi) = (*s.first().unwrap(), *s.last().unwrap());
        let below: BTreeSet<usize> = (1..lo).collect();
        let above: BTreeSet<usize> = (hi + 1..=n).collect();
        let gaps: BTreeSet<usize> = (lo..=hi).filter(|x| !s.contains(x)).collect();
        (below, above, gaps)
    };
    module_masks(&g).into_iter().all(|m| {
        let set: BTreeSet<usize> = mask_to_set(m).into_iter().collect();
        let image: BTreeSet<usize> = set.iter().map(|&i| p.apply(i)).collect();
        let (below, above, gaps) = split(&set);
        let (ibelow, iabove, igaps) = split(&image);
        let outside: BTreeSet<usize> = below.union(&above).map(|&i| p.apply(i)).collect();
        let ioutside: BTreeSet<usize> = ibelow.union(&iabove).copied().collect();
        let gap_image: BTreeSet<usize> = gaps.iter().map(|&i| p.apply(i)).collect();
        outside == ioutside && gap_image == igaps
    })
}

fn check_edge_classes(p: &Permutation) -> bool {
    let structural = edge_classes_structural(p);
    let closure = edge_classes_closure(&inversion_graph(p));
    if !structural.same_partition(&closure) {
        return false;
    }
    let total: usize = structural.classes.iter().map(|c| c.edges.len()).sum();
    if total != p.inversion_count() {
        return false;
    }
    let tree = substitution_tree(p);
    structural.classes.iter().all(|class| {
        let module = class
            .origin
            .expect("structural classes carry origins")
            .module();
        class
            .edges
            .iter()
            .all(|&(u, v)| owning_module(&tree, u, v) == module)
    })
}

fn check_enumeration(p: &Permutation) -> bool {
    let all: Vec<InvDecomposition> = enumerate_decompositions(p).collect();
    if count_decompositions(p).ok() != Some(all.len() as u128) {
        return false;
    }
    let distinct: BTreeSet<&InvDecomposition> = all.iter().collect();
    if distinct.len() != all.len() {
        return false;
    }
    let classes = edge_classes_structural(p);
    let v_id = vertex_vector(&Permutation::identity(p.len()));
    let v_p = vertex_vector(p);
    all.iter().all(|d| {
        let sound = InvDecomposition::new(p, d.tau1.clone(), d.tau2.clone()).as_ref() == Ok(d);
        let (t1, t2) = (d.tau1.inversion_set(), d.tau2.inversion_set());
        let atomic = (0..classes.len()).all(|k| {
            let class = classes.class_set(k, p.len());
            class.is_subset(&t1) || class.is_subset(&t2)
        });
        let (v1, v2) = (vertex_vector(&d.tau1), vertex_vector(&d.tau2));
        let midpoint = v_id
            .entries()
            .zip(v_p.entries())
            .zip(v1.entries().zip(v2.entries()))
            .all(|((a, b), (c, d))| a.1 + b.1 == c.1 + d.1);
        sound && atomic && midpoint
    })
}

fn check_inflation(p: &Permutation) -> bool {
    let mut built = BTreeSet::new();
    for c in choices(p) {
        match (
            decomposition_by_inflation(p, &c),
            decomposition_from_classes(p, &c),
        ) {
            (Ok(a), Ok(b)) if a == b => {
                built.insert(a);
            }
            (Err(Error::TrivialChoice), Err(Error::TrivialChoice)) => {}
            _ => return false,
        }
    }
    let listed: BTreeSet<InvDecomposition> = enumerate_decompositions(p).collect();
    built == listed
}

fn check_criterion(p: &Permutation) -> bool {
    let classes = edge_classes_structural(p).len();
    let closure = edge_classes_closure(&inversion_graph(p)).len();
    let decomposable = is_decomposable(p);
    let counted = count_decompositions(p).map(|c| c > 0).unwrap_or(true);
    let multiplicative = multiplicative_witness(p).is_some();
    // [1, n] has to be counted here: 23541 is decomposable, yet its only
    // non-parallel block other than [1, 5] is [3, 4].
    let nonparallel = crate::blocks::all_blocks(p)
        .into_iter()
        .filter(|b| !b.is_singleton())
        .filter(|b| classify_block(p, *b).unwrap() != BlockKind::Parallel)
        .count();
    let blocks_ok = (nonparallel >= 2) == decomposable;
    let neighbor_ok = match is_neighbor_of_identity(p) {
        Ok(nb) => nb != decomposable,
        Err(_) => p.is_identity(),
    };
    decomposable == (classes >= 2)
        && decomposable == (closure >= 2)
        && decomposable == counted
        && decomposable == multiplicative
        && blocks_ok
        && neighbor_ok
}

/// Outcome of one check over a sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub passes: usize,
    pub failures: usize,
    /// Failing permutations in lexicographic order, possibly capped.
    pub witnesses: Vec<Permutation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub permutations_checked: usize,
    pub checks: BTreeMap<String, CheckOutcome>,
}

impl SweepReport {
    pub fn total_failures(&self) -> usize {
        self.checks.values().map(|c| c.failures).sum()
    }

    pub fn is_success(&self) -> bool {
        self.total_failures() == 0
    }

    fn merge(&mut self, other: SweepReport, cap: Option<usize>) {
        self.permutations_checked += other.permutations_checked;
        for (name, o) in other.checks {
            let mine = self.checks.entry(name).or_default();
            mine.passes += o.passes;
            mine.failures += o.failures;
            mine.witnesses.extend(o.witnesses);
            if let Some(cap) = cap {
                mine.witnesses.truncate(cap);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    /// Worker threads; the permutations are split into contiguous
    /// lexicographic ranges.
    pub jobs: usize,
    /// Maximum witnesses per check; `None` keeps all of them.
    pub witness_cap: Option<usize>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            jobs: 1,
            witness_cap: Some(DEFAULT_WITNESS_CAP),
        }
    }
}

fn sweep_range(
    n: usize,
    perms: &[Permutation],
    checks: &[Check],
    cap: Option<usize>,
) -> SweepReport {
    let mut report = SweepReport {
        n,
        permutations_checked: perms.len(),
        checks: checks
            .iter()
            .map(|c| (c.name().to_string(), CheckOutcome::default()))
            .collect(),
    };
    for p in perms {
        for &check in checks {
            let outcome = report.checks.get_mut(check.name()).unwrap();
            if check.run(p) {
                outcome.passes += 1;
            } else {
                outcome.failures += 1;
                if cap.map_or(true, |c| outcome.witnesses.len() < c) {
                    outcome.witnesses.push(p.clone());
                }
            }
        }
    }
    report
}

/// Runs `checks` on every permutation of size `n`.
pub fn sweep_verify(n: usize, checks: &[Check], options: SweepOptions) -> Result<SweepReport> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if let Some(c) = checks.iter().find(|c| n > c.max_n()) {
        return Err(Error::Budget(format!(
            "check {c} is limited to n <= {}, got n = {n}",
            c.max_n()
        )));
    }
    let perms: Vec<Permutation> = all_permutations(n).collect();
    let jobs = options.jobs.clamp(1, perms.len());
    let chunk = perms.len().div_ceil(jobs);
    let partials: Vec<SweepReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = perms
            .chunks(chunk)
            .map(|range| scope.spawn(move || sweep_range(n, range, checks, options.witness_cap)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    let mut report = SweepReport {
        n,
        permutations_checked: 0,
        checks: checks
            .iter()
            .map(|c| (c.name().to_string(), CheckOutcome::default()))
            .collect(),
    };
    for part in partials {
        report.merge(part, options.witness_cap);
    }
    Ok(report)
}

/// Tree nodes as vertex sets, for comparisons against brute-force modules.
pub fn tree_vertex_sets(tree: &SubstitutionTree) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = tree
        .intervals()
        .into_iter()
        .map(|i| i.positions().collect())
        .collect();
    out.sort();
    out
}
