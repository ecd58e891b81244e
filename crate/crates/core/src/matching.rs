//! Maximum matchings.
//!
//! Three engines live here: an Edmonds blossom search for general
//! multigraphs, a Hopcroft-Karp search for bipartite instances with a
//! forbidden bidder set, and an exhaustive Tutte-Berge evaluator used as a
//! cross-checking oracle. All searches scan vertices in ascending order, so
//! the returned matchings are reproducible across runs.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use thiserror::Error;

use crate::graph::{BipartiteInstance, Matching, Multigraph};

pub(crate) const NONE: usize = usize::MAX;

/// The exhaustive Tutte-Berge evaluator refuses graphs above this size.
pub const TUTTE_BERGE_MAX_VERTICES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error(
        "graph too large for exhaustive Tutte-Berge evaluation: {n_v} vertices (limit {limit})"
    )]
    TooLarge { n_v: usize, limit: usize },
}

/// A minimizer of the Tutte-Berge formula together with the value it
/// certifies: `value = (|U| - odd(G - U) + |V|) / 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TutteBergeWitness {
    pub value: usize,
    pub witness_u: Vec<usize>,
}

/// Maximum-cardinality matching in a general multigraph via blossom search.
///
/// Parallel edges never change the matching number, so they are collapsed
/// before the search; use [`Multigraph::min_edge_id`] to recover the
/// representative edge id of a matched pair.
pub fn max_matching_general(g: &Multigraph) -> Matching {
    let n = g.n_v();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, list) in adj.iter_mut().enumerate() {
        let mut last = NONE;
        for &(to, _) in g.adj(v) {
            if to != last {
                list.push(to);
                last = to;
            }
        }
    }

    let mut mate = vec![NONE; n];
    for root in 0..n {
        if mate[root] == NONE {
            blossom_augment(&adj, &mut mate, root);
        }
    }

    let mut pairs = Vec::new();
    for (v, &m) in mate.iter().enumerate() {
        if m != NONE && v < m {
            pairs.push((v, m));
        }
    }
    Matching::from_pairs(pairs)
}

/// One phase of the blossom algorithm: grow an alternating tree from `root`,
/// contracting odd cycles as they appear, and augment if a free vertex is
/// reached.
fn blossom_augment(adj: &[Vec<usize>], mate: &mut [usize], root: usize) -> bool {
    let n = adj.len();
    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    let mut queue = VecDeque::new();
    used[root] = true;
    queue.push_back(root);

    let mut finish = NONE;
    'bfs: while let Some(v) = queue.pop_front() {
        for &to in &adj[v] {
            if base[v] == base[to] || mate[v] == to {
                continue;
            }
            if to == root || (mate[to] != NONE && parent[mate[to]] != NONE) {
                // An even-even edge closes an odd cycle: contract it down to
                // the common base.
                let cur_base = blossom_lca(&base, &parent, mate, v, to);
                let mut in_blossom = vec![false; n];
                mark_blossom_path(&mut in_blossom, &base, &mut parent, mate, v, cur_base, to);
                mark_blossom_path(&mut in_blossom, &base, &mut parent, mate, to, cur_base, v);
                for i in 0..n {
                    if in_blossom[base[i]] {
                        base[i] = cur_base;
                        if !used[i] {
                            used[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to] == NONE {
                parent[to] = v;
                if mate[to] == NONE {
                    finish = to;
                    break 'bfs;
                }
                used[mate[to]] = true;
                queue.push_back(mate[to]);
            }
        }
    }

    if finish == NONE {
        return false;
    }
    // Flip matched/unmatched along the alternating path back to the root.
    let mut v = finish;
    loop {
        let pv = parent[v];
        let next = mate[pv];
        mate[v] = pv;
        mate[pv] = v;
        if next == NONE {
            break;
        }
        v = next;
    }
    true
}

fn blossom_lca(base: &[usize], parent: &[usize], mate: &[usize], a: usize, b: usize) -> usize {
    let mut seen = vec![false; base.len()];
    let mut a = base[a];
    loop {
        seen[a] = true;
        if mate[a] == NONE {
            break;
        }
        a = base[parent[mate[a]]];
    }
    let mut b = base[b];
    loop {
        if seen[b] {
            return b;
        }
        b = base[parent[mate[b]]];
    }
}

fn mark_blossom_path(
    in_blossom: &mut [bool],
    base: &[usize],
    parent: &mut [usize],
    mate: &[usize],
    mut v: usize,
    stop: usize,
    mut child: usize,
) {
    while base[v] != stop {
        in_blossom[base[v]] = true;
        in_blossom[base[mate[v]]] = true;
        parent[v] = child;
        child = mate[v];
        v = parent[mate[v]];
    }
}

/// Maximum matching between `A` and `B \ forbidden_b` (Hopcroft-Karp).
///
/// Panics if `forbidden_b` contains an out-of-range index.
pub fn max_matching_bipartite(inst: &BipartiteInstance, forbidden_b: &[usize]) -> Matching {
    let mut allowed = vec![true; inst.n_b()];
    for &b in forbidden_b {
        assert!(b < inst.n_b(), "forbidden bidder {b} out of range");
        allowed[b] = false;
    }
    let (mate_a, _) = hopcroft_karp(inst, &allowed);
    collect_pairs(&mate_a)
}

/// A matching saturating all of `A` and avoiding `forbidden_b`, decided
/// exactly; `None` when no such matching exists.
pub fn a_perfect_matching(inst: &BipartiteInstance, forbidden_b: &[usize]) -> Option<Matching> {
    let m = max_matching_bipartite(inst, forbidden_b);
    (m.len() == inst.n_a()).then_some(m)
}

pub(crate) fn collect_pairs(mate_a: &[usize]) -> Matching {
    let pairs = mate_a
        .iter()
        .enumerate()
        .filter(|&(_, &b)| b != NONE)
        .map(|(a, &b)| (a, b))
        .collect();
    Matching::from_pairs(pairs)
}

/// Hopcroft-Karp restricted to the allowed bidders; returns the two pairing
/// arrays (`NONE` marks free vertices).
pub(crate) fn hopcroft_karp(
    inst: &BipartiteInstance,
    allowed_b: &[bool],
) -> (Vec<usize>, Vec<usize>) {
    let n_a = inst.n_a();
    let mut mate_a = vec![NONE; n_a];
    let mut mate_b = vec![NONE; inst.n_b()];
    let mut dist = vec![NONE; n_a];
    let mut queue = VecDeque::new();

    loop {
        // BFS layering from the free A-vertices.
        queue.clear();
        for a in 0..n_a {
            if mate_a[a] == NONE {
                dist[a] = 0;
                queue.push_back(a);
            } else {
                dist[a] = NONE;
            }
        }
        let mut reachable_free_b = false;
        while let Some(a) = queue.pop_front() {
            for &b in inst.adj_a(a) {
                if !allowed_b[b] {
                    continue;
                }
                match mate_b[b] {
                    NONE => reachable_free_b = true,
                    a2 => {
                        if dist[a2] == NONE {
                            dist[a2] = dist[a] + 1;
                            queue.push_back(a2);
                        }
                    }
                }
            }
        }
        if !reachable_free_b {
            break;
        }
        for a in 0..n_a {
            if mate_a[a] == NONE {
                hk_dfs(inst, allowed_b, &mut mate_a, &mut mate_b, &mut dist, a);
            }
        }
    }
    (mate_a, mate_b)
}

fn hk_dfs(
    inst: &BipartiteInstance,
    allowed_b: &[bool],
    mate_a: &mut [usize],
    mate_b: &mut [usize],
    dist: &mut [usize],
    a: usize,
) -> bool {
    for &b in inst.adj_a(a) {
        if !allowed_b[b] {
            continue;
        }
        let a2 = mate_b[b];
        if a2 == NONE
            || (dist[a2] == dist[a].wrapping_add(1)
                && hk_dfs(inst, allowed_b, mate_a, mate_b, dist, a2))
        {
            mate_a[a] = b;
            mate_b[b] = a;
            return true;
        }
    }
    dist[a] = NONE;
    false
}

/// Single-source augmenting-path step shared by the incremental dual oracle
/// and the brute-force solvers. Tries to match `a`, rerouting matched
/// neighbors recursively; `visited_b` must be cleared by the caller.
pub(crate) fn kuhn_augment(
    inst: &BipartiteInstance,
    allowed_b: &[bool],
    mate_a: &mut [usize],
    mate_b: &mut [usize],
    visited_b: &mut [bool],
    a: usize,
) -> bool {
    for &b in inst.adj_a(a) {
        if !allowed_b[b] || visited_b[b] {
            continue;
        }
        visited_b[b] = true;
        if mate_b[b] == NONE || kuhn_augment(inst, allowed_b, mate_a, mate_b, visited_b, mate_b[b])
        {
            mate_a[a] = b;
            mate_b[b] = a;
            return true;
        }
    }
    false
}

/// Evaluates `min_U (|U| - odd(G - U) + |V|) / 2` by exhausting all vertex
/// subsets in Gray-code order. A test oracle, not a production path.
pub fn tutte_berge_brute(g: &Multigraph) -> Result<TutteBergeWitness, MatchingError> {
    let n = g.n_v();
    if n > TUTTE_BERGE_MAX_VERTICES {
        return Err(MatchingError::TooLarge {
            n_v: n,
            limit: TUTTE_BERGE_MAX_VERTICES,
        });
    }

    let mut best = i64::MAX;
    let mut best_mask: u32 = 0;
    for k in 0..(1u64 << n) {
        let mask = (k ^ (k >> 1)) as u32;
        let odd = odd_components(g, mask);
        let val = mask.count_ones() as i64 - odd as i64 + n as i64;
        if val < best {
            best = val;
            best_mask = mask;
        }
    }

    debug_assert!(best >= 0 && best % 2 == 0);
    let witness_u = (0..n).filter(|&v| best_mask & (1 << v) != 0).collect();
    Ok(TutteBergeWitness {
        value: (best / 2) as usize,
        witness_u,
    })
}

/// Number of odd-size connected components of `G - U`.
fn odd_components(g: &Multigraph, removed: u32) -> usize {
    let n = g.n_v();
    let mut seen = vec![false; n];
    let mut stack = Vec::new();
    let mut odd = 0;
    for start in 0..n {
        if seen[start] || removed & (1 << start) != 0 {
            continue;
        }
        let mut size = 0usize;
        seen[start] = true;
        stack.push(start);
        while let Some(v) = stack.pop() {
            size += 1;
            for &(to, _) in g.adj(v) {
                if !seen[to] && removed & (1 << to) == 0 {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        if size % 2 == 1 {
            odd += 1;
        }
    }
    odd
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::{gen_regular_multigraph, gen_tight_example};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn k3() -> Multigraph {
        Multigraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn triangle_has_matching_number_one() {
        assert_eq!(max_matching_general(&k3()).len(), 1);
    }

    #[test]
    fn tight_example_has_matching_number_four() {
        let g = gen_tight_example(1);
        assert_eq!(g.n_v(), 10);
        assert_eq!(g.n_edges(), 15);
        assert_eq!(max_matching_general(&g).len(), 4);
    }

    #[test]
    fn parallel_pair_graph_has_matching_number_one() {
        // 3 vertices, parallel pair on (0,1) plus (0,2) and (1,2)
        let g = Multigraph::new(3, vec![(0, 1), (0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(max_matching_general(&g).len(), 1);
    }

    #[test]
    fn bipartite_matching_respects_forbidden_set() {
        let inst = BipartiteInstance::new(2, 3, &[(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)])
            .unwrap();
        assert_eq!(max_matching_bipartite(&inst, &[0, 1, 2]).len(), 0);
        assert_eq!(max_matching_bipartite(&inst, &[0]).len(), 2);
        assert!(a_perfect_matching(&inst, &[0, 1]).is_none());
        assert!(a_perfect_matching(&inst, &[]).is_some());
    }

    #[test]
    fn demo_instance_has_a_perfect_matching_avoiding_optimal_s() {
        let inst = crate::graph::tests::demo_6x9();
        let m = a_perfect_matching(&inst, &[3, 5, 6]).expect("A-perfect matching exists");
        assert_eq!(m.len(), 6);
    }

    #[test]
    fn tutte_berge_on_triangle() {
        let w = tutte_berge_brute(&k3()).unwrap();
        assert_eq!(w.value, 1);
        assert!(w.witness_u.is_empty());
    }

    #[test]
    fn tutte_berge_on_tight_example() {
        let w = tutte_berge_brute(&gen_tight_example(1)).unwrap();
        assert_eq!(w.value, 4);
        let odd = odd_components(
            &gen_tight_example(1),
            w.witness_u.iter().fold(0u32, |m, &v| m | 1 << v),
        );
        assert_eq!(
            w.value,
            (w.witness_u.len() + 10 - odd) / 2,
            "witness must certify its value"
        );
    }

    #[test]
    fn tutte_berge_refuses_large_graphs() {
        let g = Multigraph::new(17, vec![(0, 1)]).unwrap();
        assert_eq!(
            tutte_berge_brute(&g),
            Err(MatchingError::TooLarge { n_v: 17, limit: 16 })
        );
    }

    fn random_multigraph(rng: &mut ChaCha12Rng, max_v: usize) -> Multigraph {
        let n = rng.random_range(2..=max_v);
        let m = rng.random_range(0..=(2 * n));
        let edges = (0..m)
            .map(|_| {
                let u = rng.random_range(0..n);
                let mut v = rng.random_range(0..n - 1);
                if v >= u {
                    v += 1;
                }
                (u, v)
            })
            .collect();
        Multigraph::new(n, edges).unwrap()
    }

    #[test]
    fn blossom_agrees_with_tutte_berge_on_random_graphs() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..200 {
            let g = random_multigraph(&mut rng, 12);
            let nu = max_matching_general(&g).len();
            assert_eq!(
                nu,
                tutte_berge_brute(&g).unwrap().value,
                "graph: {:?}",
                g.edges()
            );
        }
    }

    #[test]
    fn cubic_graphs_meet_the_two_fifths_bound() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for round in 0..100 {
            let n = [6, 8, 10][round % 3];
            let g = gen_regular_multigraph(n, 3, rng.random()).unwrap();
            let nu = max_matching_general(&g).len();
            assert!(5 * nu >= 2 * n, "nu = {nu} on {n} vertices");
        }
        // equality on the tight example and its disjoint copies
        for copies in 1..=3 {
            let g = gen_tight_example(copies);
            assert_eq!(5 * max_matching_general(&g).len(), 2 * g.n_v());
        }
    }

    #[test]
    fn matchings_have_disjoint_endpoints() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = random_multigraph(&mut rng, 12);
            let m = max_matching_general(&g);
            let mut seen = vec![false; g.n_v()];
            for &(u, v) in m.pairs() {
                assert!(!seen[u] && !seen[v]);
                seen[u] = true;
                seen[v] = true;
                assert!(
                    g.min_edge_id(u, v).is_some(),
                    "matched pair must be an edge"
                );
            }
        }
    }
}
