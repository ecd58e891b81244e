//! Instance generators with certifiable optima.
//!
//! The two gadget families encode other optimization problems into 2PPM
//! instances whose optimal profit satisfies an exact linear identity with
//! the source optimum, so generated instances come with known answers:
//!
//! - [`vc_gadget`]: from 3-regular vertex cover,
//!   `OPT_2PPM + OPT_VC = 2n + m`;
//! - [`kcover_gadget`]: from max k-cover,
//!   `OPT_2PPM = N * OPT_MC + (m - k)`.
//!
//! Alongside them live incidence lifts of regular multigraphs, the tight
//! 10-vertex family for the cubic matching bound, configuration-model
//! generators, and the exhaustive source-problem oracles used to certify
//! the identities.

mod gen;
mod kcover;
mod vc;

pub use gen::{
    brute_max_k_cover, brute_vertex_cover, gen_biregular, gen_regular_multigraph,
    gen_tight_example, incidence_instance, random_feasible_solution, BRUTE_SOURCE_MAX,
};
pub use kcover::{certify_kcover_identity, kcover_gadget, KcGadget, KcoverIdentityReport};
pub use vc::{
    certify_vc_identity, construct_from_cover, extract_vertex_cover, vc_gadget, VcGadget,
    VcIdentityReport,
};

use thiserror::Error;

use crate::graph::Violation;
use crate::solvers::SolveError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("source graph has parallel edges between {u} and {v}")]
    NotSimple { u: usize, v: usize },
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error("source edge {edge} is not covered")]
    NotACover { edge: usize },
    #[error("cover vertex {vertex} out of range (source has {size} vertices)")]
    CoverOutOfRange { vertex: usize, size: usize },
    #[error("invalid solution: {0}")]
    InvalidSolution(#[from] Violation),
    #[error("expected a 2ppm solution")]
    WrongKind,
    #[error("k = {k} exceeds the family size m = {m}")]
    BadCoverParams { k: usize, m: usize },
    #[error("need at least one universe copy")]
    NoCopies,
    #[error("set element {element} out of range (universe size {universe})")]
    ElementOutOfRange { element: usize, universe: usize },
    #[error("degree sum must be even: {n} vertices of degree {d}")]
    ParityViolation { n: usize, d: usize },
    #[error("generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },
    #[error("too large for exhaustive search: size {size} exceeds limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error(transparent)]
    Solve(#[from] SolveError),
}
