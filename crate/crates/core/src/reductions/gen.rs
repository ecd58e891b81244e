//! Generators and exhaustive source-problem oracles.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::graph::{BipartiteInstance, Multigraph, ProblemKind, Solution};
use crate::matroid::IncrementalDual;
use crate::solvers::for_each_combination;

use super::ReductionError;

/// Vertex/set-count ceiling for the exhaustive source oracles.
pub const BRUTE_SOURCE_MAX: usize = 24;

const PAIRING_ATTEMPTS: usize = 100;

/// The bipartite incidence instance of a `d`-regular loop-free multigraph:
/// goods are vertices, bidders are edges. The result is `(d,2)`-regular and
/// its auxiliary graph recovers the input.
pub fn incidence_instance(h: &Multigraph, d: usize) -> Result<BipartiteInstance, ReductionError> {
    for v in 0..h.n_v() {
        if h.degree(v) != d {
            return Err(ReductionError::NotRegular {
                vertex: v,
                degree: h.degree(v),
                expected: d,
            });
        }
    }
    let mut edges = Vec::with_capacity(2 * h.n_edges());
    for (i, &(u, v)) in h.edges().iter().enumerate() {
        edges.push((u, i));
        edges.push((v, i));
    }
    Ok(BipartiteInstance::new(h.n_v(), h.n_edges(), &edges)
        .expect("incidence edges are distinct and in range"))
}

/// Random `(d,2)`-regular instance via configuration-model pairing on the
/// good stubs. Bidder pairs that would bid twice on one good are rejected by
/// reshuffling; parallel bidder pairs are fine.
pub fn gen_biregular(n_a: usize, d: usize, seed: u64) -> Result<BipartiteInstance, ReductionError> {
    let h = pair_stubs(n_a, d, seed)?;
    let mut edges = Vec::with_capacity(2 * h.len());
    for (b, &(u, v)) in h.iter().enumerate() {
        edges.push((u, b));
        edges.push((v, b));
    }
    Ok(BipartiteInstance::new(n_a, n_a * d / 2, &edges)
        .expect("pairing produced distinct in-range bids"))
}

/// Random `d`-regular loop-free multigraph via the same pairing.
pub fn gen_regular_multigraph(
    n_v: usize,
    d: usize,
    seed: u64,
) -> Result<Multigraph, ReductionError> {
    let pairs = pair_stubs(n_v, d, seed)?;
    Ok(Multigraph::new(n_v, pairs).expect("pairing rejects loops"))
}

fn pair_stubs(n: usize, d: usize, seed: u64) -> Result<Vec<(usize, usize)>, ReductionError> {
    if !(n * d).is_multiple_of(2) {
        return Err(ReductionError::ParityViolation { n, d });
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| core::iter::repeat_n(v, d)).collect();
    for _ in 0..PAIRING_ATTEMPTS {
        stubs.shuffle(&mut rng);
        if stubs.chunks(2).all(|c| c[0] != c[1]) {
            return Ok(stubs.chunks(2).map(|c| (c[0], c[1])).collect());
        }
    }
    Err(ReductionError::GenerationFailed {
        attempts: PAIRING_ATTEMPTS,
    })
}

/// Disjoint copies of the 10-vertex cubic multigraph whose maximum matching
/// meets the `2|V|/5` floor with equality: a center joined to three arms,
/// each arm joined to an outer pair connected by a double edge.
pub fn gen_tight_example(copies: usize) -> Multigraph {
    let mut edges = Vec::with_capacity(15 * copies);
    for c in 0..copies {
        let base = 10 * c;
        for t in 0..3 {
            let arm = base + 1 + 3 * t;
            let (out1, out2) = (arm + 1, arm + 2);
            edges.push((base, arm));
            edges.push((arm, out1));
            edges.push((arm, out2));
            edges.push((out1, out2));
            edges.push((out1, out2));
        }
    }
    Multigraph::new(10 * copies, edges).expect("the gadget is loop-free")
}

/// Exhaustive minimum vertex cover; the smallest cover that is
/// lexicographically first among its size class.
pub fn brute_vertex_cover(g: &Multigraph) -> Result<Vec<usize>, ReductionError> {
    let n = g.n_v();
    if n > BRUTE_SOURCE_MAX {
        return Err(ReductionError::TooLarge {
            size: n,
            limit: BRUTE_SOURCE_MAX,
        });
    }
    for k in 0..=n {
        let mut found: Option<Vec<usize>> = None;
        for_each_combination(n, k, |cand| {
            let mut in_cover = [false; BRUTE_SOURCE_MAX];
            for &v in cand {
                in_cover[v] = true;
            }
            if g.edges().iter().all(|&(u, v)| in_cover[u] || in_cover[v]) {
                found = Some(cand.to_vec());
                return false;
            }
            true
        });
        if let Some(cover) = found {
            return Ok(cover);
        }
    }
    unreachable!("the full vertex set covers everything")
}

/// Exhaustive max k-cover value over all `C(m, k)` subfamilies.
pub fn brute_max_k_cover(sets: &[Vec<usize>], k: usize) -> Result<usize, ReductionError> {
    let m = sets.len();
    if m > BRUTE_SOURCE_MAX {
        return Err(ReductionError::TooLarge {
            size: m,
            limit: BRUTE_SOURCE_MAX,
        });
    }
    if k > m {
        return Err(ReductionError::BadCoverParams { k, m });
    }
    let universe = sets.iter().flatten().max().map_or(0, |&e| e + 1);
    let mut best = 0;
    for_each_combination(m, k, |family| {
        let mut hit = vec![false; universe];
        for &t in family {
            for &e in &sets[t] {
                hit[e] = true;
            }
        }
        best = best.max(hit.iter().filter(|&&h| h).count());
        true
    });
    Ok(best)
}

/// A random feasible 2PPM solution: bidders are tried in shuffled order and
/// kept while the selection stays feasible, then thinned at random so the
/// samples are not all maximal. `None` when the instance has no A-perfect
/// matching.
pub fn random_feasible_solution(inst: &BipartiteInstance, seed: u64) -> Option<Solution> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut cursor = IncrementalDual::new(inst)?;
    let mut order: Vec<usize> = (0..inst.n_b()).collect();
    order.shuffle(&mut rng);
    for b in order {
        cursor.try_select(b);
    }
    let s_set: Vec<usize> = cursor
        .selected_set()
        .into_iter()
        .filter(|_| rng.random::<f64>() < 0.75)
        .collect();
    let matching = cursor.matching();
    let profit = inst.neighborhood(&s_set).expect("s_set is in range").len();
    let sol = Solution::new(
        ProblemKind::TwoPpm,
        s_set,
        (0..inst.n_a()).collect(),
        matching,
        profit,
    );
    inst.validate_solution(&sol)
        .expect("sampled solution validates");
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::{
        certify_kcover_identity, certify_vc_identity, construct_from_cover, extract_vertex_cover,
        kcover_gadget, vc_gadget,
    };
    use crate::solvers::{build_auxiliary_graph, solve_32_regular, solve_brute_2ppm};
    use rand::{Rng, SeedableRng};

    pub(crate) fn k4() -> Multigraph {
        Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn k33() -> Multigraph {
        let edges = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
        Multigraph::new(6, edges).unwrap()
    }

    fn petersen() -> Multigraph {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        edges.extend((0..5).map(|i| (i, 5 + i)));
        Multigraph::new(10, edges).unwrap()
    }

    #[test]
    fn vc_gadget_sizes() {
        let g = vc_gadget(&k4()).unwrap();
        assert_eq!((g.instance.n_a(), g.instance.n_b()), (14, 18));
        let g = vc_gadget(&k33()).unwrap();
        assert_eq!((g.instance.n_a(), g.instance.n_b()), (21, 27));
        let g = vc_gadget(&petersen()).unwrap();
        assert_eq!((g.instance.n_a(), g.instance.n_b()), (35, 45));
    }

    #[test]
    fn vc_gadget_degree_profile() {
        let g = vc_gadget(&k4()).unwrap();
        for e in 0..g.m_src() {
            assert_eq!(g.instance.deg_a(g.a_e(e)), 3);
            assert_eq!(g.instance.deg_b(g.b_e(e)), 1);
        }
        for v in 0..g.n_src() {
            assert_eq!(g.instance.deg_a(g.a_v1(v)), 2);
            assert_eq!(g.instance.deg_a(g.a_v2(v)), 2);
            assert_eq!(g.instance.deg_b(g.b_v(v)), 4);
            assert_eq!(g.instance.deg_b(g.b_v1(v)), 2);
            assert_eq!(g.instance.deg_b(g.b_v2(v)), 1);
        }
    }

    #[test]
    fn vc_gadget_rejects_bad_sources() {
        let parallel = Multigraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        assert!(matches!(
            vc_gadget(&parallel),
            Err(ReductionError::NotSimple { .. })
        ));
        let square = Multigraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(matches!(
            vc_gadget(&square),
            Err(ReductionError::NotRegular { .. })
        ));
    }

    #[test]
    fn cover_encoding_on_k4() {
        let g = vc_gadget(&k4()).unwrap();
        let sol = construct_from_cover(&g, &[0, 1, 2]).unwrap();
        assert_eq!(sol.profit, 11);
        let sol = construct_from_cover(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(sol.profit, 10);
        assert!(matches!(
            construct_from_cover(&g, &[0, 1]),
            Err(ReductionError::NotACover { .. })
        ));
    }

    #[test]
    fn cover_encoding_on_k33() {
        let g = vc_gadget(&k33()).unwrap();
        let min_cover = brute_vertex_cover(&k33()).unwrap();
        assert_eq!(min_cover.len(), 3);
        assert_eq!(construct_from_cover(&g, &min_cover).unwrap().profit, 18);
    }

    #[test]
    fn vc_identity_on_k4() {
        let g = vc_gadget(&k4()).unwrap();
        let report = certify_vc_identity(&g).unwrap();
        assert_eq!(report.opt_2ppm, 11);
        assert_eq!(report.opt_vc, 3);
        assert!(report.holds());
    }

    #[test]
    fn extraction_round_trips_through_cover_encoding() {
        let g = vc_gadget(&k4()).unwrap();
        for cover in [vec![0, 1, 2], vec![1, 2, 3], vec![0, 1, 2, 3]] {
            let sol = construct_from_cover(&g, &cover).unwrap();
            let (back, sol2) = extract_vertex_cover(&g, &sol).unwrap();
            assert_eq!(back, cover);
            assert_eq!(sol2.profit, sol.profit);
        }
    }

    #[test]
    fn extraction_improves_random_solutions() {
        let mut rng = ChaCha12Rng::seed_from_u64(83);
        for src in [k4(), k33()] {
            let g = vc_gadget(&src).unwrap();
            for _ in 0..25 {
                let sol = random_feasible_solution(&g.instance, rng.random()).unwrap();
                let (cover, sol2) = extract_vertex_cover(&g, &sol).unwrap();
                assert!(sol2.profit >= sol.profit);
                assert_eq!(cover.len(), 2 * g.n_src() + g.m_src() - sol2.profit);
            }
        }
    }

    #[test]
    fn extraction_rejects_foreign_solutions() {
        let g = vc_gadget(&k4()).unwrap();
        let other = vc_gadget(&k33()).unwrap();
        let sol = construct_from_cover(&other, &[0, 1, 2]).unwrap();
        assert!(matches!(
            extract_vertex_cover(&g, &sol),
            Err(ReductionError::InvalidSolution(_))
        ));
    }

    #[test]
    fn kcover_gadget_sizes() {
        let sets = vec![vec![0], vec![0, 1]];
        let g = kcover_gadget(2, &sets, 1, 1).unwrap();
        assert_eq!((g.instance.n_a(), g.instance.n_b()), (3, 4));
        let g = kcover_gadget(2, &sets, 1, 3).unwrap();
        assert_eq!((g.instance.n_a(), g.instance.n_b()), (7, 8));
        assert!(matches!(
            kcover_gadget(2, &sets, 3, 1),
            Err(ReductionError::BadCoverParams { .. })
        ));
    }

    #[test]
    fn kcover_gadget_allows_empty_sets() {
        let sets = vec![vec![], vec![0]];
        let g = kcover_gadget(1, &sets, 1, 1).unwrap();
        assert_eq!(g.instance.deg_b(g.set_node(0)), 1, "only the dummy edge");
        assert!(certify_kcover_identity(&g).unwrap().holds());
    }

    #[test]
    fn kcover_identity_on_toy_instances() {
        let sets = vec![vec![0], vec![0, 1]];
        let g = kcover_gadget(2, &sets, 1, 1).unwrap();
        let report = certify_kcover_identity(&g).unwrap();
        assert_eq!((report.opt_mc, report.opt_2ppm), (2, 3));
        assert!(report.holds());

        let g = kcover_gadget(2, &sets, 1, 2).unwrap();
        let report = certify_kcover_identity(&g).unwrap();
        assert_eq!(report.opt_2ppm, 5);
        assert!(report.holds());

        // k = m: no dummies at all
        let g = kcover_gadget(2, &sets, 2, 2).unwrap();
        let report = certify_kcover_identity(&g).unwrap();
        assert_eq!(report.dummies, 0);
        assert!(report.holds());
    }

    #[test]
    fn incidence_of_tight_example_is_32_regular() {
        let inst = incidence_instance(&gen_tight_example(1), 3).unwrap();
        assert_eq!((inst.n_a(), inst.n_b()), (10, 15));
        assert_eq!(inst.uniform_left_degree(), Some(3));
        assert_eq!(inst.uniform_right_degree(), Some(2));
        assert_eq!(solve_32_regular(&inst).unwrap().profit, 9);
        assert_eq!(solve_brute_2ppm(&inst).unwrap().profit, 9);
    }

    #[test]
    fn incidence_of_parallel_bundle_is_complete() {
        let bundle = Multigraph::new(2, vec![(0, 1); 4]).unwrap();
        let inst = incidence_instance(&bundle, 4).unwrap();
        assert_eq!((inst.n_a(), inst.n_b()), (2, 4));
        assert_eq!(inst.n_edges(), 8);
        assert!(matches!(
            incidence_instance(&bundle, 3),
            Err(ReductionError::NotRegular { .. })
        ));
    }

    #[test]
    fn auxiliary_recovers_incidence_source() {
        let mut rng = ChaCha12Rng::seed_from_u64(89);
        for round in 0..30 {
            let d = [3, 4, 5][round % 3];
            let n = [4, 6, 8, 10][round % 4];
            let h = gen_regular_multigraph(n, d, rng.random()).unwrap();
            let inst = incidence_instance(&h, d).unwrap();
            let aux = build_auxiliary_graph(&inst).unwrap();
            assert_eq!(aux.graph.n_v(), h.n_v());
            assert_eq!(aux.graph.sorted_edge_pairs(), h.sorted_edge_pairs());
        }
    }

    #[test]
    fn biregular_generator_is_deterministic_and_regular() {
        let a = gen_biregular(8, 4, 7).unwrap();
        let b = gen_biregular(8, 4, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.uniform_left_degree(), Some(4));
        assert_eq!(a.uniform_right_degree(), Some(2));
        assert!(crate::matching::a_perfect_matching(&a, &[]).is_some());
        assert!(matches!(
            gen_biregular(3, 3, 0),
            Err(ReductionError::ParityViolation { .. })
        ));
    }

    #[test]
    fn tight_example_scales_by_disjoint_copies() {
        for copies in 1..=3 {
            let g = gen_tight_example(copies);
            assert_eq!(g.n_v(), 10 * copies);
            assert_eq!(g.n_edges(), 15 * copies);
            assert_eq!(g.uniform_degree(), Some(3));
            assert_eq!(crate::matching::max_matching_general(&g).len(), 4 * copies);
        }
    }

    #[test]
    fn brute_vertex_cover_on_k4() {
        let cover = brute_vertex_cover(&k4()).unwrap();
        assert_eq!(cover.len(), 3);
        assert_eq!(
            cover,
            vec![0, 1, 2],
            "lexicographically first minimum cover"
        );
    }

    #[test]
    fn brute_max_k_cover_on_toy_family() {
        let sets = vec![vec![0], vec![0, 1]];
        assert_eq!(brute_max_k_cover(&sets, 1).unwrap(), 2);
        assert_eq!(brute_max_k_cover(&sets, 2).unwrap(), 2);
        assert_eq!(brute_max_k_cover(&[], 0).unwrap(), 0);
    }
}
