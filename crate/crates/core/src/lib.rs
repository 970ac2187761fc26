//! Decompositions of permutation inversion sets.
//!
//! Given a permutation `π`, this crate computes its substitution
//! decomposition, the edge classes of its inversion graph, and every way to
//! split its inversion set `T_π` into the inversion sets of two (or more)
//! other permutations. Each structural notion also has a brute-force
//! counterpart in [`oracle`] used for exhaustive verification at small sizes.
//!
//! ```
//! use invdec_core::{count_decompositions, enumerate_decompositions, Permutation};
//!
//! let p: Permutation = "321".parse()?;
//! assert_eq!(count_decompositions(&p)?, 2);
//! let first = enumerate_decompositions(&p).next().unwrap();
//! assert_eq!(first.tau1.to_string(), "2 1 3");
//! assert_eq!(first.tau2.to_string(), "2 3 1");
//! # Ok::<(), invdec_core::Error>(())
//! ```

pub mod blocks;
pub mod decomposition;
mod error;
pub mod graph;
pub mod oracle;
pub mod perm;

pub use blocks::{
    all_blocks, classify_block, inflate, is_block, is_simple, strong_blocks, substitution_tree,
    tree_to_permutation, BlockKind, Interval, SubstitutionTree,
};
pub use decomposition::{
    binomial_holds, binomial_imbalance, choices, count_decompositions, decomposition_by_inflation,
    decomposition_from_classes, enumerate_decompositions, is_decomposable, is_multiplicative,
    is_neighbor_of_identity, merge_parts, min_inversions_guarantee, multiplicative_witness,
    product_order, validate_partition, vertex_vector, DecompositionChoice, InvDecomposition,
    LopVertex, ProductOrder, Side,
};
pub use error::{Error, Result};
pub use graph::{
    connected_components, edge_classes_closure, edge_classes_structural, inversion_graph,
    is_module, strong_modules, ClassOrigin, EdgeClass, EdgeClassPartition, Graph,
};
pub use oracle::{sweep_verify, Check, CheckOutcome, SweepOptions, SweepReport};
pub use perm::{
    all_permutations, is_inversion_set, permutation_from_inversion_set, InversionSet, Pair,
    PairSet, Permutation,
};
