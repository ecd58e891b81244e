//! Solving strategies for 2PM and 2PPM, plus auto-dispatch.
//!
//! Exact routes: [`solve_32_regular`] and [`solve_d2_regular_d4`] for
//! `(d,2)`-regular inputs, [`solve_a2`] when every good has degree 2, and
//! the exhaustive oracles [`solve_brute_2ppm`] and [`solve_brute_2pm`].
//! Approximate routes: [`solve_greedy`], [`solve_continuous_greedy`], and
//! [`degree_gap_solution`]. [`solve_auto`] picks the strongest applicable
//! strategy and labels its guarantee.

mod brute;
mod regular;
mod submodular;

pub use brute::{
    solve_brute_2pm, solve_brute_2ppm, BRUTE_2PM_MAX_BIDDERS, BRUTE_2PPM_MAX_CANDIDATES,
};
pub use regular::{
    build_auxiliary_graph, decompose_32, solve_32_regular, solve_d2_regular_d4, AuxiliaryGraph,
    Decomposition32, HVertex,
};
pub use submodular::{solve_continuous_greedy, solve_greedy, CgParams};

pub(crate) use brute::for_each_combination;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use thiserror::Error;

use crate::graph::{BipartiteInstance, ProblemKind, Solution};
use crate::matching::max_matching_bipartite;
use crate::matroid::TransversalMatroidOracle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search space too large: {candidates} candidates exceed the limit of {limit}")]
    SearchSpace { candidates: u128, limit: u128 },
}

/// Which strategy produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    ThreeTwoRegular,
    DTwoRegular,
    DegreeATwo,
    Greedy,
    ContinuousGreedy,
    Brute,
    DegreeGap,
}

impl Strategy {
    pub fn tag(self) -> &'static str {
        match self {
            Strategy::ThreeTwoRegular => "32regular",
            Strategy::DTwoRegular => "d2regular",
            Strategy::DegreeATwo => "a2",
            Strategy::Greedy => "greedy",
            Strategy::ContinuousGreedy => "cg",
            Strategy::Brute => "brute",
            Strategy::DegreeGap => "degreegap",
        }
    }

    /// The guarantee label this strategy earns for a problem kind. Labels
    /// are reporting metadata, not enforced bounds.
    pub fn guarantee(self, kind: ProblemKind) -> &'static str {
        match (self, kind) {
            (Strategy::ThreeTwoRegular, ProblemKind::TwoPpm) => "exact",
            (Strategy::ThreeTwoRegular, ProblemKind::TwoPm) => "9/10",
            (Strategy::DTwoRegular, _) | (Strategy::Brute, _) => "exact",
            (Strategy::DegreeATwo, ProblemKind::TwoPpm) => "exact",
            (Strategy::Greedy, ProblemKind::TwoPpm) => "1/2-greedy",
            (Strategy::ContinuousGreedy, ProblemKind::TwoPpm) => "cg-sampled",
            (Strategy::DegreeGap, _) => "degree-gap",
            _ => "heuristic",
        }
    }
}

/// A solution together with the strategy that produced it and the guarantee
/// label that strategy carries for the requested problem kind.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub solution: Solution,
    pub strategy: Strategy,
    pub guarantee: &'static str,
}

/// Exact solver for instances where every good has degree 2.
///
/// Feasible selections then have pairwise-disjoint neighborhoods, so the
/// coverage of `S` is the plain degree sum over `S` and the problem reduces
/// to a maximum-weight independent set in the dual matroid with weights
/// `deg(b)`.
pub fn solve_a2(inst: &BipartiteInstance) -> Result<Solution, SolveError> {
    for a in 0..inst.n_a() {
        if inst.deg_a(a) != 2 {
            return Err(SolveError::Precondition(format!(
                "good {a} has degree {}, expected 2",
                inst.deg_a(a)
            )));
        }
    }
    let oracle = TransversalMatroidOracle::new(inst);
    let weights: Vec<u64> = (0..inst.n_b()).map(|b| inst.deg_b(b) as u64).collect();
    let s_set = oracle.max_weight_dual_independent(&weights);
    let matching = crate::matching::a_perfect_matching(inst, &s_set)
        .ok_or_else(|| SolveError::Precondition("no A-perfect matching exists".into()))?;

    let profit = inst.neighborhood(&s_set).expect("s_set is in range").len();
    let weight: u64 = s_set.iter().map(|&b| weights[b]).sum();
    assert_eq!(
        profit as u64, weight,
        "disjoint neighborhoods make coverage additive"
    );

    let sol = Solution::new(
        ProblemKind::TwoPpm,
        s_set,
        (0..inst.n_a()).collect(),
        matching,
        profit,
    );
    inst.validate_solution(&sol)
        .expect("constructed solution validates");
    Ok(sol)
}

/// A feasible solution plus the coverage floor `(1 - d_B/d_A) * |A|` it is
/// guaranteed to clear, as the exact rational `bound_num / bound_den`.
#[derive(Debug, Clone)]
pub struct DegreeGapOutcome {
    pub solution: Solution,
    pub bound_num: i64,
    pub bound_den: i64,
}

/// Takes any maximum matching, declares the unmatched bidders to be the
/// second bidders, and certifies the solution against the degree-gap floor
/// computed from `d_A = min deg(a)` and `d_B = max deg(b)`.
pub fn degree_gap_solution(inst: &BipartiteInstance) -> Result<DegreeGapOutcome, SolveError> {
    if inst.n_a() == 0 {
        return Err(SolveError::Precondition("instance has no goods".into()));
    }
    let matching = max_matching_bipartite(inst, &[]);
    if matching.len() < inst.n_a() {
        return Err(SolveError::Precondition(
            "no A-perfect matching exists".into(),
        ));
    }

    let mut matched_b = alloc::vec![false; inst.n_b()];
    for &(_, b) in matching.pairs() {
        matched_b[b] = true;
    }
    let s_set: Vec<usize> = (0..inst.n_b()).filter(|&b| !matched_b[b]).collect();
    debug_assert_eq!(s_set.len(), inst.n_b() - inst.n_a());
    let profit = inst.neighborhood(&s_set).expect("s_set is in range").len();

    let d_a = (0..inst.n_a())
        .map(|a| inst.deg_a(a))
        .min()
        .expect("n_a > 0") as i64;
    let d_b = (0..inst.n_b()).map(|b| inst.deg_b(b)).max().unwrap_or(0) as i64;
    let bound_num = (d_a - d_b) * inst.n_a() as i64;
    let bound_den = d_a;
    assert!(
        profit as i64 * bound_den >= bound_num,
        "profit {profit} under the floor {bound_num}/{bound_den}"
    );

    let sol = Solution::new(
        ProblemKind::TwoPpm,
        s_set,
        (0..inst.n_a()).collect(),
        matching,
        profit,
    );
    inst.validate_solution(&sol)
        .expect("constructed solution validates");
    Ok(DegreeGapOutcome {
        solution: sol,
        bound_num,
        bound_den,
    })
}

/// Dispatches to the strongest strategy the degree profile admits:
/// `(3,2)`-regular and `(d>=4,2)`-regular inputs get their exact pipelines,
/// degree-2 goods get the dual-matroid solver, everything else falls back to
/// greedy.
pub fn solve_auto(inst: &BipartiteInstance, kind: ProblemKind) -> Result<SolveOutcome, SolveError> {
    let strategy = match (inst.uniform_left_degree(), inst.uniform_right_degree()) {
        (Some(3), Some(2)) => Strategy::ThreeTwoRegular,
        (Some(d), Some(2)) if d >= 4 => Strategy::DTwoRegular,
        (Some(2), _) => Strategy::DegreeATwo,
        _ => Strategy::Greedy,
    };
    let solution = match strategy {
        Strategy::ThreeTwoRegular => solve_32_regular(inst)?,
        Strategy::DTwoRegular => solve_d2_regular_d4(inst)?,
        Strategy::DegreeATwo => solve_a2(inst)?,
        _ => solve_greedy(inst)?,
    };
    Ok(SolveOutcome {
        solution: Solution { kind, ..solution },
        strategy,
        guarantee: strategy.guarantee(kind),
    })
}
