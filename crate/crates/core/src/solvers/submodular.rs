//! Approximate solvers for general 2PPM inputs.
//!
//! Both solvers maximize the coverage `|N(S)|` subject to `S` being
//! independent in the dual transversal matroid. [`solve_greedy`] is the
//! classic marginal-gain greedy over that constraint; it carries the
//! standard 1/2 guarantee of matroid greedy. [`solve_continuous_greedy`] is
//! a sampled continuous greedy on the multilinear extension followed by swap
//! rounding; the rounding keeps every intermediate set a dual basis, so the
//! output is always feasible.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::graph::{BipartiteInstance, ProblemKind, Solution};
use crate::matching::a_perfect_matching;
use crate::matroid::{IncrementalDual, TransversalMatroidOracle};

use super::SolveError;

/// Greedy over the dual matroid: repeatedly add the feasible bidder with the
/// largest marginal coverage (ties by ascending index) until no feasible
/// bidder is left, so the result is a maximal feasible set.
pub fn solve_greedy(inst: &BipartiteInstance) -> Result<Solution, SolveError> {
    let mut cursor = IncrementalDual::new(inst)
        .ok_or_else(|| SolveError::Precondition("no A-perfect matching exists".into()))?;

    let mut covered = vec![false; inst.n_a()];
    let mut dead = vec![false; inst.n_b()]; // infeasible once, infeasible forever
    loop {
        let mut candidates: Vec<(usize, usize)> = (0..inst.n_b())
            .filter(|&b| !dead[b] && !cursor.is_selected(b))
            .map(|b| {
                let gain = inst.adj_b(b).iter().filter(|&&a| !covered[a]).count();
                (gain, b)
            })
            .collect();
        candidates.sort_by_key(|&(gain, b)| (core::cmp::Reverse(gain), b));

        let mut advanced = false;
        for (_, b) in candidates {
            if cursor.try_select(b) {
                for &a in inst.adj_b(b) {
                    covered[a] = true;
                }
                advanced = true;
                break;
            }
            dead[b] = true;
        }
        if !advanced {
            break;
        }
    }

    let s_set = cursor.selected_set();
    let profit = covered.iter().filter(|&&c| c).count();
    let sol = Solution::new(
        ProblemKind::TwoPpm,
        s_set,
        (0..inst.n_a()).collect(),
        cursor.matching(),
        profit,
    );
    inst.validate_solution(&sol)
        .expect("greedy solution validates");
    Ok(sol)
}

/// Knobs for the sampled continuous greedy.
#[derive(Debug, Clone, Copy)]
pub struct CgParams {
    pub steps: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CgParams {
    fn default() -> Self {
        Self {
            steps: 50,
            samples: 64,
            seed: 0,
        }
    }
}

/// Sampled continuous greedy over the dual-matroid polytope.
///
/// Each step estimates per-bidder marginal coverage under the current
/// fractional point by Monte-Carlo sampling, moves toward the best weighted
/// dual basis, and the final fractional point is swap-rounded to a single
/// basis. Randomized but reproducible for a fixed seed.
pub fn solve_continuous_greedy(
    inst: &BipartiteInstance,
    params: CgParams,
) -> Result<Solution, SolveError> {
    if params.steps == 0 || params.samples == 0 {
        return Err(SolveError::Precondition(
            "continuous greedy needs steps >= 1 and samples >= 1".into(),
        ));
    }
    let base_matching = a_perfect_matching(inst, &[])
        .ok_or_else(|| SolveError::Precondition("no A-perfect matching exists".into()))?;

    if inst.n_b() == inst.n_a() {
        // The only dual basis is the empty set.
        let sol = Solution::new(
            ProblemKind::TwoPpm,
            Vec::new(),
            (0..inst.n_a()).collect(),
            base_matching,
            0,
        );
        inst.validate_solution(&sol)
            .expect("empty selection validates");
        return Ok(sol);
    }

    let oracle = TransversalMatroidOracle::new(inst);
    let mut rng = ChaCha12Rng::seed_from_u64(params.seed);
    let mut y = vec![0.0f64; inst.n_b()];
    let mut bases: Vec<Vec<usize>> = Vec::with_capacity(params.steps);
    let basis_size = inst.n_b() - inst.n_a();

    for _ in 0..params.steps {
        // Estimated marginal coverage of each bidder against R ~ y.
        let mut weights = vec![0u64; inst.n_b()];
        for _ in 0..params.samples {
            let in_r: Vec<bool> = y.iter().map(|&p| rng.random::<f64>() < p).collect();
            let mut hit = vec![false; inst.n_a()];
            for (b, _) in in_r.iter().enumerate().filter(|&(_, &r)| r) {
                for &a in inst.adj_b(b) {
                    hit[a] = true;
                }
            }
            for (b, _) in in_r.iter().enumerate().filter(|&(_, &r)| !r) {
                weights[b] += inst.adj_b(b).iter().filter(|&&a| !hit[a]).count() as u64;
            }
        }
        let base = oracle.max_weight_dual_independent(&weights);
        assert_eq!(
            base.len(),
            basis_size,
            "greedy over a matroid returns a basis"
        );
        for &b in &base {
            y[b] += 1.0 / params.steps as f64;
        }
        bases.push(base);
    }

    // Swap rounding: merge the bases pairwise, always staying on a basis.
    let mut current: BTreeSet<usize> = bases[0].iter().copied().collect();
    let mut weight = 1.0f64;
    for base in bases.into_iter().skip(1) {
        let other: BTreeSet<usize> = base.into_iter().collect();
        current = merge_bases(&oracle, current, weight, other, 1.0, &mut rng);
        weight += 1.0;
    }

    let s_set: Vec<usize> = current.into_iter().collect();
    let matching = a_perfect_matching(inst, &s_set).expect("rounded set is a dual basis");
    let profit = inst.neighborhood(&s_set).expect("s_set is in range").len();
    let sol = Solution::new(
        ProblemKind::TwoPpm,
        s_set,
        (0..inst.n_a()).collect(),
        matching,
        profit,
    );
    inst.validate_solution(&sol)
        .expect("rounded solution validates");
    Ok(sol)
}

/// Randomly merges two dual bases into one, using strong basis exchange to
/// keep both sides bases at every step.
fn merge_bases(
    oracle: &TransversalMatroidOracle<'_>,
    mut xs: BTreeSet<usize>,
    wx: f64,
    mut ys: BTreeSet<usize>,
    wy: f64,
    rng: &mut ChaCha12Rng,
) -> BTreeSet<usize> {
    loop {
        let Some(&i) = xs.difference(&ys).next() else {
            return xs;
        };
        let mut swapped = false;
        for &j in ys.difference(&xs) {
            let x_swap: Vec<usize> = xs.iter().copied().filter(|&e| e != i).chain([j]).collect();
            let y_swap: Vec<usize> = ys.iter().copied().filter(|&e| e != j).chain([i]).collect();
            let (mut x_swap, mut y_swap) = (x_swap, y_swap);
            x_swap.sort_unstable();
            y_swap.sort_unstable();
            if oracle.is_dual_independent(&x_swap) && oracle.is_dual_independent(&y_swap) {
                if rng.random::<f64>() * (wx + wy) < wx {
                    ys.remove(&j);
                    ys.insert(i);
                } else {
                    xs.remove(&i);
                    xs.insert(j);
                }
                swapped = true;
                break;
            }
        }
        assert!(swapped, "strong basis exchange always finds a partner");
    }
}
