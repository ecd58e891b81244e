//! Solvers for the Second Price Matching (2PM) and Second Price Perfect
//! Matching (2PPM) problems on bipartite bid graphs.
//!
//! In both problems a bipartite graph `G = (A ∪ B, E)` is given, where `A`
//! holds goods and `B` holds bidders that each bid 1 on their neighbors. A
//! solution picks a set `S ⊆ B` of "second bidders" and a matching of goods
//! to the remaining bidders; profit counts the matched goods that have a
//! neighbor in `S`. 2PPM additionally requires every good to be matched.
//!
//! The crate is organized as:
//!
//! - [`graph`]: instance and solution types, profit evaluation, validation;
//! - [`matching`]: blossom search on multigraphs, bipartite augmenting-path
//!   search, and a brute-force Tutte-Berge evaluator;
//! - [`matroid`]: the transversal matroid of the bid graph and its dual,
//!   which characterizes 2PPM feasibility;
//! - [`solvers`]: exact solvers for degree-constrained instances, greedy and
//!   sampled continuous-greedy approximations, and brute-force oracles;
//! - [`reductions`]: instance generators with certifiable optima, including
//!   vertex-cover and max-k-cover gadgets.
//!
//! The crate is `no_std` (with `alloc`); file formats and the command line
//! front end live in the companion `spm-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod graph;
pub mod matching;
pub mod matroid;
pub mod reductions;
pub mod solvers;

pub use graph::{BipartiteInstance, Matching, Multigraph, ProblemKind, Solution};
