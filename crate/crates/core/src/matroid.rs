//! The transversal matroid of the bid graph and its dual.
//!
//! Independent sets of the transversal matroid `M = (B, I)` are the bidder
//! sets saturable by a matching. A set `S` is independent in the dual `M*`
//! exactly when `B \ S` still spans `M`, i.e. when an A-perfect matching
//! avoids `S` — which is precisely 2PPM feasibility. Both oracles answer by
//! running matching computations; no rank cache is kept, so a single oracle
//! may serve concurrent queries.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{BipartiteInstance, Matching};
use crate::matching::{self, NONE};

/// Independence and dual-independence queries over a borrowed instance.
#[derive(Debug, Clone, Copy)]
pub struct TransversalMatroidOracle<'a> {
    inst: &'a BipartiteInstance,
}

impl<'a> TransversalMatroidOracle<'a> {
    pub fn new(inst: &'a BipartiteInstance) -> Self {
        Self { inst }
    }

    pub fn instance(&self) -> &'a BipartiteInstance {
        self.inst
    }

    /// Rank of a bidder subset: the size of a maximum matching that only
    /// uses bidders from `subset`.
    pub fn rank(&self, subset: &[usize]) -> usize {
        let mut allowed = vec![false; self.inst.n_b()];
        for &b in subset {
            assert!(b < self.inst.n_b(), "bidder {b} out of range");
            allowed[b] = true;
        }
        let (mate_a, _) = matching::hopcroft_karp(self.inst, &allowed);
        mate_a.iter().filter(|&&b| b != NONE).count()
    }

    /// True iff some matching saturates every bidder of `i_set`.
    pub fn is_independent(&self, i_set: &[usize]) -> bool {
        self.rank(i_set) == i_set.len()
    }

    /// True iff an A-perfect matching avoids `s_set` — the exact 2PPM
    /// feasibility test.
    pub fn is_dual_independent(&self, s_set: &[usize]) -> bool {
        matching::a_perfect_matching(self.inst, s_set).is_some()
    }

    /// Maximum-weight dual-independent set via the matroid greedy algorithm:
    /// bidders are scanned in order of decreasing weight (ties by ascending
    /// index) and kept whenever the augmented set stays dual-independent.
    ///
    /// Returns the empty set when the instance admits no A-perfect matching
    /// (nothing is dual-independent then, not even the empty set).
    pub fn max_weight_dual_independent(&self, weights: &[u64]) -> Vec<usize> {
        assert_eq!(weights.len(), self.inst.n_b(), "one weight per bidder");
        let Some(mut cursor) = IncrementalDual::new(self.inst) else {
            return Vec::new();
        };
        let mut order: Vec<usize> = (0..self.inst.n_b()).collect();
        order.sort_by_key(|&b| (core::cmp::Reverse(weights[b]), b));
        for b in order {
            cursor.try_select(b);
        }
        cursor.selected_set()
    }
}

/// Grows a dual-independent set one bidder at a time, maintaining the
/// A-perfect matching that certifies feasibility. Testing `S ∪ {b}` costs a
/// single rerouting pass instead of a matching recomputation; the observable
/// answers are identical to [`TransversalMatroidOracle::is_dual_independent`].
#[derive(Debug, Clone)]
pub struct IncrementalDual<'a> {
    inst: &'a BipartiteInstance,
    allowed_b: Vec<bool>,
    selected: Vec<bool>,
    mate_a: Vec<usize>,
    mate_b: Vec<usize>,
}

impl<'a> IncrementalDual<'a> {
    /// Starts from `S = ∅`; `None` when the instance admits no A-perfect
    /// matching at all.
    pub fn new(inst: &'a BipartiteInstance) -> Option<Self> {
        let allowed = vec![true; inst.n_b()];
        let (mate_a, mate_b) = matching::hopcroft_karp(inst, &allowed);
        if mate_a.contains(&NONE) {
            return None;
        }
        Some(Self {
            inst,
            allowed_b: allowed,
            selected: vec![false; inst.n_b()],
            mate_a,
            mate_b,
        })
    }

    pub fn is_selected(&self, b: usize) -> bool {
        self.selected[b]
    }

    /// Attempts to add `b` to the selection. On success the certifying
    /// matching has been rerouted around `b`; on failure nothing changed.
    pub fn try_select(&mut self, b: usize) -> bool {
        assert!(!self.selected[b], "bidder {b} already selected");
        self.allowed_b[b] = false;
        let a = self.mate_b[b];
        if a == NONE {
            self.selected[b] = true;
            return true;
        }
        self.mate_b[b] = NONE;
        self.mate_a[a] = NONE;
        let mut visited = vec![false; self.inst.n_b()];
        if matching::kuhn_augment(
            self.inst,
            &self.allowed_b,
            &mut self.mate_a,
            &mut self.mate_b,
            &mut visited,
            a,
        ) {
            self.selected[b] = true;
            true
        } else {
            self.mate_a[a] = b;
            self.mate_b[b] = a;
            self.allowed_b[b] = true;
            false
        }
    }

    /// The selected bidders, ascending.
    pub fn selected_set(&self) -> Vec<usize> {
        (0..self.inst.n_b()).filter(|&b| self.selected[b]).collect()
    }

    /// The current A-perfect matching avoiding the selection.
    pub fn matching(&self) -> Matching {
        matching::collect_pairs(&self.mate_a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn complete_2x3() -> BipartiteInstance {
        BipartiteInstance::new(2, 3, &[(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]).unwrap()
    }

    fn random_instance(rng: &mut ChaCha12Rng) -> BipartiteInstance {
        let n_a = rng.random_range(1..=5);
        let n_b = rng.random_range(1..=8);
        let mut edges = Vec::new();
        for a in 0..n_a {
            for b in 0..n_b {
                if rng.random::<f64>() < 0.4 {
                    edges.push((a, b));
                }
            }
        }
        BipartiteInstance::new(n_a, n_b, &edges).unwrap()
    }

    fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
        (0u32..(1 << n)).map(move |mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
    }

    #[test]
    fn empty_and_singletons_are_independent() {
        let inst = complete_2x3();
        let oracle = TransversalMatroidOracle::new(&inst);
        assert!(oracle.is_independent(&[]));
        assert!(oracle.is_independent(&[1]));
        assert!(
            !oracle.is_independent(&[0, 1, 2]),
            "only two goods to match"
        );
    }

    #[test]
    fn dual_independence_on_complete_2x3() {
        let inst = complete_2x3();
        let oracle = TransversalMatroidOracle::new(&inst);
        assert!(oracle.is_dual_independent(&[]));
        for b in 0..3 {
            assert!(oracle.is_dual_independent(&[b]));
        }
        for pair in [[0, 1], [0, 2], [1, 2]] {
            assert!(!oracle.is_dual_independent(&pair));
        }
    }

    #[test]
    fn dual_independence_matches_rank_characterization() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        for _ in 0..30 {
            let inst = random_instance(&mut rng);
            let oracle = TransversalMatroidOracle::new(&inst);
            for s in subsets(inst.n_b()) {
                let complement: Vec<usize> = (0..inst.n_b()).filter(|b| !s.contains(b)).collect();
                assert_eq!(
                    oracle.is_dual_independent(&s),
                    oracle.rank(&complement) == inst.n_a()
                );
            }
        }
    }

    #[test]
    fn dual_independence_is_downward_closed() {
        let mut rng = ChaCha12Rng::seed_from_u64(29);
        for _ in 0..30 {
            let inst = random_instance(&mut rng);
            let oracle = TransversalMatroidOracle::new(&inst);
            for s in subsets(inst.n_b()) {
                if !oracle.is_dual_independent(&s) {
                    continue;
                }
                for drop in 0..s.len() {
                    let smaller: Vec<usize> = s
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != drop)
                        .map(|(_, &b)| b)
                        .collect();
                    assert!(oracle.is_dual_independent(&smaller));
                }
            }
        }
    }

    #[test]
    fn exchange_property_holds_on_samples() {
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        for _ in 0..20 {
            let inst = random_instance(&mut rng);
            let oracle = TransversalMatroidOracle::new(&inst);
            let independent: Vec<Vec<usize>> = subsets(inst.n_b())
                .filter(|s| oracle.is_dual_independent(s))
                .collect();
            for s in &independent {
                for t in &independent {
                    if s.len() >= t.len() {
                        continue;
                    }
                    let extendable = t.iter().any(|&x| {
                        if s.contains(&x) {
                            return false;
                        }
                        let mut bigger = s.clone();
                        bigger.push(x);
                        bigger.sort_unstable();
                        oracle.is_dual_independent(&bigger)
                    });
                    assert!(extendable, "exchange failed for {s:?} into {t:?}");
                }
            }
        }
    }

    #[test]
    fn greedy_with_zero_weights_returns_a_maximal_set() {
        let inst = complete_2x3();
        let oracle = TransversalMatroidOracle::new(&inst);
        let s = oracle.max_weight_dual_independent(&[0, 0, 0]);
        assert_eq!(s.len(), 1, "every dual basis here is a singleton");
    }

    #[test]
    fn greedy_breaks_ties_by_ascending_index() {
        let inst = complete_2x3();
        let oracle = TransversalMatroidOracle::new(&inst);
        assert_eq!(oracle.max_weight_dual_independent(&[2, 2, 2]), vec![0]);
    }

    #[test]
    fn greedy_with_degree_weights_on_two_regular_bidders() {
        // a1:{b1,b2,b3}, a2:{b1,b2,b4}, a3:{b3,b4}; every bidder weighs 2
        let inst = BipartiteInstance::new(
            3,
            4,
            &[
                (0, 0),
                (1, 0),
                (0, 1),
                (1, 1),
                (0, 2),
                (2, 2),
                (1, 3),
                (2, 3),
            ],
        )
        .unwrap();
        let oracle = TransversalMatroidOracle::new(&inst);
        let s = oracle.max_weight_dual_independent(&[2, 2, 2, 2]);
        assert_eq!(s.len(), 1, "no pair leaves an A-perfect matching behind");
        assert_eq!(s.iter().map(|&b| inst.deg_b(b)).sum::<usize>(), 2);
    }

    #[test]
    fn greedy_weight_is_optimal_on_brute_forceable_instances() {
        let mut rng = ChaCha12Rng::seed_from_u64(37);
        for _ in 0..40 {
            let inst = random_instance(&mut rng);
            let oracle = TransversalMatroidOracle::new(&inst);
            let weights: Vec<u64> = (0..inst.n_b()).map(|_| rng.random_range(0..6)).collect();
            let greedy = oracle.max_weight_dual_independent(&weights);
            let greedy_weight: u64 = greedy.iter().map(|&b| weights[b]).sum();
            let best = subsets(inst.n_b())
                .filter(|s| oracle.is_dual_independent(s))
                .map(|s| s.iter().map(|&b| weights[b]).sum::<u64>())
                .max()
                .unwrap_or(0);
            assert_eq!(greedy_weight, best);
        }
    }

    #[test]
    fn incremental_cursor_matches_fresh_queries() {
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        for _ in 0..40 {
            let inst = random_instance(&mut rng);
            let oracle = TransversalMatroidOracle::new(&inst);
            let Some(mut cursor) = IncrementalDual::new(&inst) else {
                assert!(!oracle.is_dual_independent(&[]));
                continue;
            };
            let mut picked = Vec::new();
            for b in 0..inst.n_b() {
                let mut candidate = picked.clone();
                candidate.push(b);
                let fresh = oracle.is_dual_independent(&candidate);
                assert_eq!(cursor.try_select(b), fresh);
                if fresh {
                    picked.push(b);
                }
            }
            assert_eq!(cursor.selected_set(), picked);
        }
    }
}
