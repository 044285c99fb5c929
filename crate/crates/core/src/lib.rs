//! Labelled trees on `[n]` counted by indegree sequence.
//!
//! Orient every edge `{i, j}` of a tree on `[n]` from the smaller label to
//! the larger one. The nonzero in-degrees form a partition of `n - 1`, and
//! grouping edge labels by the vertex they point into gives a set partition
//! of `[2, n]` ([`treemap::phi`]). Each fiber of that map has
//! `(n-1)!/(n-|pi|)!` trees.
//!
//! Modules:
//!
//! * [`model`]: trees, set and integer partitions, code words, text/JSON formats;
//! * [`treemap`]: orientation, `phi`, star decompositions, edge contraction;
//! * [`codec`]: the generalized Prüfer bijection and the classic Prüfer code;
//! * [`lattice`]: refinement order, enumeration, Möbius function, Stirling numbers;
//! * [`census`]: closed forms, exhaustive enumeration, Möbius inversion;
//! * [`involution`]: the label swap exchanging fibers of adjacent transpositions;
//! * [`omega`]: code sets of fibers, cube tiling and subsequence checks;
//! * [`verify`]: exhaustive verification suites used by the CLI.

pub mod arith;
pub mod census;
pub mod codec;
pub mod error;
pub mod involution;
pub mod lattice;
pub mod model;
pub mod omega;
pub mod treemap;
pub mod verify;

pub use error::{Error, Result};
pub use model::{
    parse_code_word, parse_integer_partition, parse_partition, parse_tree, partition_type,
    CodeWord, IntegerPartition, LabelledTree, SetPartition,
};
