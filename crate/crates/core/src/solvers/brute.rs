//! Exhaustive oracles for both problems, size-guarded.
//!
//! These exist to cross-check every other solver, so they stay deliberately
//! simple: enumerate candidate second-bidder sets and answer each with plain
//! matching computations.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{BipartiteInstance, Matching, ProblemKind, Solution};
use crate::matching::{self, NONE};

use super::SolveError;

/// Candidate-count ceiling for the 2PPM oracle.
pub const BRUTE_2PPM_MAX_CANDIDATES: u128 = 5_000_000;
/// Bidder-count ceiling for the 2PM oracle (it enumerates all of `2^|B|`).
pub const BRUTE_2PM_MAX_BIDDERS: usize = 20;

/// Visits all `k`-element subsets of `0..n` in lexicographic order until the
/// callback asks to stop.
pub(crate) fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return;
        }
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut out: u128 = 1;
    for i in 0..k.min(n - k) {
        out = out.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    out
}

/// Provably optimal 2PPM solution by enumerating every candidate set of size
/// at most `|B| - |A|`.
pub fn solve_brute_2ppm(inst: &BipartiteInstance) -> Result<Solution, SolveError> {
    if inst.n_a() > inst.n_b() {
        return Err(SolveError::Precondition("|A| exceeds |B|".into()));
    }
    let r = inst.n_b() - inst.n_a();
    let candidates: u128 = (0..=r).map(|k| binomial(inst.n_b(), k)).sum();
    if candidates > BRUTE_2PPM_MAX_CANDIDATES {
        return Err(SolveError::SearchSpace {
            candidates,
            limit: BRUTE_2PPM_MAX_CANDIDATES,
        });
    }

    let mut best: Option<(usize, Vec<usize>, Matching)> = None;
    'sizes: for k in 0..=r {
        for_each_combination(inst.n_b(), k, |s| {
            if let Some(m) = matching::a_perfect_matching(inst, s) {
                let profit = inst.neighborhood(s).expect("s is in range").len();
                if best.as_ref().is_none_or(|&(p, _, _)| profit > p) {
                    best = Some((profit, s.to_vec(), m));
                }
            }
            best.as_ref().is_none_or(|&(p, _, _)| p < inst.n_a())
        });
        if best.as_ref().is_some_and(|&(p, _, _)| p == inst.n_a()) {
            break 'sizes;
        }
    }

    let (profit, s_set, matching) =
        best.ok_or_else(|| SolveError::Precondition("no A-perfect matching exists".into()))?;
    let sol = Solution::new(
        ProblemKind::TwoPpm,
        s_set,
        (0..inst.n_a()).collect(),
        matching,
        profit,
    );
    inst.validate_solution(&sol)
        .expect("oracle solution validates");
    Ok(sol)
}

/// Provably optimal 2PM solution: for every `S ⊆ B`, the best allocation
/// first saturates as much of `N(S)` as possible and then extends the
/// matching over the remaining goods, which never evicts a matched good.
pub fn solve_brute_2pm(inst: &BipartiteInstance) -> Result<Solution, SolveError> {
    if inst.n_b() > BRUTE_2PM_MAX_BIDDERS {
        return Err(SolveError::SearchSpace {
            candidates: 1u128.checked_shl(inst.n_b() as u32).unwrap_or(u128::MAX),
            limit: 1u128 << BRUTE_2PM_MAX_BIDDERS,
        });
    }

    let mut best: Option<Solution> = None;
    for mask in 0u32..(1u32 << inst.n_b()) {
        let s_set: Vec<usize> = (0..inst.n_b()).filter(|&b| mask & (1 << b) != 0).collect();
        let in_ns = {
            let mut in_ns = vec![false; inst.n_a()];
            for &b in &s_set {
                for &a in inst.adj_b(b) {
                    in_ns[a] = true;
                }
            }
            in_ns
        };
        let allowed_b: Vec<bool> = (0..inst.n_b()).map(|b| mask & (1 << b) == 0).collect();

        let mut mate_a = vec![NONE; inst.n_a()];
        let mut mate_b = vec![NONE; inst.n_b()];
        let mut visited = vec![false; inst.n_b()];
        let mut profit = 0usize;
        for a in (0..inst.n_a()).filter(|&a| in_ns[a]) {
            visited.fill(false);
            if matching::kuhn_augment(inst, &allowed_b, &mut mate_a, &mut mate_b, &mut visited, a) {
                profit += 1;
            }
        }
        if best.as_ref().is_some_and(|b| b.profit >= profit) {
            continue;
        }
        for a in (0..inst.n_a()).filter(|&a| !in_ns[a]) {
            visited.fill(false);
            matching::kuhn_augment(inst, &allowed_b, &mut mate_a, &mut mate_b, &mut visited, a);
        }

        let matching = matching::collect_pairs(&mate_a);
        let w_set = matching.left_vertices();
        let sol = Solution::new(ProblemKind::TwoPm, s_set, w_set, matching, profit);
        inst.validate_solution(&sol)
            .expect("oracle solution validates");
        best = Some(sol);
        if profit == inst.n_a() {
            break;
        }
    }

    Ok(best.expect("the empty selection always yields a solution"))
}
