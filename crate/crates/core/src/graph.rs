//! Inversion graphs, modules, and the edge-class partition.
//!
//! Edge classes are computed two ways: structurally from the substitution tree
//! (serial child pairs and prime external edges), and as the transitive
//! closure of the local "two edges at a vertex whose far ends are not
//! adjacent" relation.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::blocks::{substitution_tree, BlockKind, Interval, SubstitutionTree};
use crate::error::{Error, Result};
use crate::perm::{Pair, PairSet, Permutation};

/// A simple undirected graph on the vertex set `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    edges: PairSet,
}

impl Graph {
    pub fn new(edges: PairSet) -> Self {
        Graph { edges }
    }

    pub fn n(&self) -> usize {
        self.edges.n()
    }

    pub fn edges(&self) -> &PairSet {
        &self.edges
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.contains(u, v)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n()).filter(move |&v| self.adjacent(u, v))
    }

    pub fn complement(&self) -> Graph {
        Graph::new(self.edges.complement())
    }
}

/// `G_π = ([n], T_π)`.
pub fn inversion_graph(p: &Permutation) -> Graph {
    Graph::new(p.inversion_set().into_pairs())
}

/// Checks that every vertex outside `set` is adjacent to all of `set` or to
/// none of it.
pub fn is_module(graph: &Graph, set: &[usize]) -> Result<bool> {
    if set.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    let n = graph.n();
    let mut inside = vec![false; n + 1];
    for &v in set {
        if v == 0 || v > n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        inside[v] = true;
    }
    Ok((1..=n).filter(|&v| !inside[v]).all(|v| {
        let first = graph.adjacent(v, set[0]);
        set.iter().all(|&m| graph.adjacent(v, m) == first)
    }))
}

/// The strong modules of `G_π`, which are exactly the strong π-blocks.
pub fn strong_modules(p: &Permutation) -> Vec<Interval> {
    substitution_tree(p).intervals()
}

/// Vertex sets of the connected components, each sorted, ordered by their
/// smallest vertex.
pub fn connected_components(graph: &Graph) -> Vec<Vec<usize>> {
    let n = graph.n();
    let mut uf = UnionFind::<usize>::new(n);
    for (u, v) in graph.edges().iter() {
        uf.union(u - 1, v - 1);
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 1..=n {
        groups.entry(uf.find(v - 1)).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

/// Where a structurally computed edge class comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClassOrigin {
    /// All edges between children `pair.0 < pair.1` (1-based, left to right)
    /// of a serial strong module.
    SerialPair {
        module: Interval,
        pair: (usize, usize),
    },
    /// All external edges of a prime strong module.
    PrimeExternal { module: Interval },
}

impl ClassOrigin {
    pub fn module(&self) -> Interval {
        match *self {
            ClassOrigin::SerialPair { module, .. } | ClassOrigin::PrimeExternal { module } => {
                module
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeClass {
    /// Sorted lexicographically.
    pub edges: Vec<Pair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub origin: Option<ClassOrigin>,
}

/// A partition of the edge set into edge classes, in canonical order: classes
/// sorted by their smallest edge, edges inside a class sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeClassPartition {
    pub classes: Vec<EdgeClass>,
}

impl EdgeClassPartition {
    fn canonical(mut classes: Vec<EdgeClass>) -> Self {
        for c in &mut classes {
            c.edges.sort_unstable();
        }
        classes.retain(|c| !c.edges.is_empty());
        classes.sort_by(|a, b| a.edges[0].cmp(&b.edges[0]));
        EdgeClassPartition { classes }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Same blocks of edges, ignoring origins.
    pub fn same_partition(&self, other: &EdgeClassPartition) -> bool {
        self.classes.len() == other.classes.len()
            && self
                .classes
                .iter()
                .zip(&other.classes)
                .all(|(a, b)| a.edges == b.edges)
    }

    /// Index of the class holding `edge`.
    pub fn class_of(&self, edge: Pair) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.edges.binary_search(&edge).is_ok())
    }

    pub fn class_set(&self, index: usize, n: usize) -> PairSet {
        PairSet::from_pairs(n, self.classes[index].edges.iter().copied()).expect("edges of [n]")
    }
}

/// Edges between two disjoint vertex intervals that are present in `edges`.
fn cross_edges(edges: &PairSet, a: Interval, b: Interval) -> Vec<Pair> {
    let mut out = Vec::new();
    for u in a.positions() {
        for v in b.positions() {
            if edges.contains(u, v) {
                out.push((u.min(v), u.max(v)));
            }
        }
    }
    out
}

/// Edge classes read off the substitution tree of `p`.
pub fn edge_classes_structural(p: &Permutation) -> EdgeClassPartition {
    edge_classes_from_tree(&substitution_tree(p), &p.inversion_set())
}

pub(crate) fn edge_classes_from_tree(
    tree: &SubstitutionTree,
    edges: &PairSet,
) -> EdgeClassPartition {
    let mut classes = Vec::new();
    for node in tree.preorder() {
        let k = node.children.len();
        match node.kind {
            BlockKind::Serial => {
                for a in 0..k {
                    for b in a + 1..k {
                        classes.push(EdgeClass {
                            edges: cross_edges(
                                edges,
                                node.children[a].interval,
                                node.children[b].interval,
                            ),
                            origin: Some(ClassOrigin::SerialPair {
                                module: node.interval,
                                pair: (a + 1, b + 1),
                            }),
                        });
                    }
                }
            }
            BlockKind::Prime => {
                let mut all = Vec::new();
                for a in 0..k {
                    for b in a + 1..k {
                        all.extend(cross_edges(
                            edges,
                            node.children[a].interval,
                            node.children[b].interval,
                        ));
                    }
                }
                classes.push(EdgeClass {
                    edges: all,
                    origin: Some(ClassOrigin::PrimeExternal {
                        module: node.interval,
                    }),
                });
            }
            BlockKind::Parallel => {}
        }
    }
    EdgeClassPartition::canonical(classes)
}

/// Transitive closure of the relation joining edges `ij` and `ik` whenever
/// `jk` is not an edge. Meant for permutation graphs.
pub fn edge_classes_closure(graph: &Graph) -> EdgeClassPartition {
    let edges: Vec<Pair> = graph.edges().iter().collect();
    let id: BTreeMap<Pair, usize> = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let key = |u: usize, v: usize| id[&(u.min(v), u.max(v))];
    let mut uf = UnionFind::<usize>::new(edges.len());
    for i in 1..=graph.n() {
        let nbrs: Vec<usize> = graph.neighbors(i).collect();
        for (a, &j) in nbrs.iter().enumerate() {
            for &k in &nbrs[a + 1..] {
                if !graph.adjacent(j, k) {
                    uf.union(key(i, j), key(i, k));
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Pair>> = BTreeMap::new();
    for (k, &e) in edges.iter().enumerate() {
        groups.entry(uf.find(k)).or_default().push(e);
    }
    EdgeClassPartition::canonical(
        groups
            .into_values()
            .map(|edges| EdgeClass {
                edges,
                origin: None,
            })
            .collect(),
    )
}

/// The smallest strong module containing both endpoints of an edge; the edge
/// is external to exactly this module.
pub fn owning_module(tree: &SubstitutionTree, u: usize, v: usize) -> Interval {
    let mut node = tree;
    loop {
        match node
            .children
            .iter()
            .find(|c| c.interval.contains(u) && c.interval.contains(v))
        {
            Some(c) => node = c,
            None => return node.interval,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn edges(part: &EdgeClassPartition) -> Vec<Vec<Pair>> {
        part.classes.iter().map(|c| c.edges.clone()).collect()
    }

    #[test]
    fn inversion_graph_examples() {
        assert_eq!(inversion_graph(&p("321")).edges().len(), 3);
        let g = inversion_graph(&p("2413"));
        assert_eq!(
            g.edges().iter().collect::<Vec<_>>(),
            vec![(1, 3), (2, 3), (2, 4)]
        );
        assert!(inversion_graph(&Permutation::identity(5))
            .edges()
            .is_empty());
    }

    #[test]
    fn module_examples() {
        let g = inversion_graph(&p("2413"));
        assert!(!is_module(&g, &[1, 2]).unwrap());
        assert!(is_module(&inversion_graph(&p("321")), &[1, 2]).unwrap());
        assert!(is_module(&g, &[1, 2, 3, 4]).unwrap());
        assert_eq!(is_module(&g, &[]), Err(Error::EmptyVertexSet));
        assert!(matches!(
            is_module(&g, &[5]),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn strong_module_examples() {
        let iv = |lo, hi| Interval { lo, hi };
        assert_eq!(
            strong_modules(&p("2143")),
            vec![
                iv(1, 1),
                iv(1, 2),
                iv(1, 4),
                iv(2, 2),
                iv(3, 3),
                iv(3, 4),
                iv(4, 4)
            ]
        );
        assert_eq!(strong_modules(&p("2413")).len(), 5);
        assert_eq!(strong_modules(&Permutation::identity(6)).len(), 7);
    }

    #[test]
    fn components_examples() {
        assert_eq!(
            connected_components(&inversion_graph(&p("2143"))),
            vec![vec![1, 2], vec![3, 4]]
        );
        assert_eq!(connected_components(&inversion_graph(&p("123"))).len(), 3);
        assert_eq!(
            connected_components(&inversion_graph(&p("321"))),
            vec![vec![1, 2, 3]]
        );
    }

    #[test]
    fn structural_examples() {
        let c = edge_classes_structural(&p("321"));
        assert_eq!(edges(&c), vec![vec![(1, 2)], vec![(1, 3)], vec![(2, 3)]]);
        let c = edge_classes_structural(&p("2413"));
        assert_eq!(edges(&c), vec![vec![(1, 3), (2, 3), (2, 4)]]);
        assert!(matches!(
            c.classes[0].origin,
            Some(ClassOrigin::PrimeExternal { .. })
        ));
        let c = edge_classes_structural(&p("3412"));
        assert_eq!(edges(&c), vec![vec![(1, 3), (1, 4), (2, 3), (2, 4)]]);
    }

    #[test]
    fn closure_examples() {
        let c = edge_classes_closure(&inversion_graph(&p("321")));
        assert_eq!(c.len(), 3);
        assert_eq!(edge_classes_closure(&inversion_graph(&p("2413"))).len(), 1);
        assert!(edge_classes_closure(&Graph::new(PairSet::new(4))).is_empty());
    }

    #[test]
    fn class_json() {
        let c = edge_classes_structural(&p("3412"));
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"classes":[{"edges":[[1,3],[1,4],[2,3],[2,4]],"origin":{"kind":"serial-pair","module":[1,4],"pair":[1,2]}}]}"#
        );
        let c = edge_classes_closure(&inversion_graph(&p("21")));
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"classes":[{"edges":[[1,2]]}]}"#
        );
    }

    #[test]
    fn owning_module_is_smallest_common() {
        let t = substitution_tree(&p("2143"));
        assert_eq!(owning_module(&t, 1, 2), Interval { lo: 1, hi: 2 });
        assert_eq!(owning_module(&t, 2, 3), Interval { lo: 1, hi: 4 });
    }
}
