//! Cross-engine checks at sizes beyond the unit tests.
//!
//! The exact solvers assert their closed-form profit identities internally,
//! so running them on larger random instances is itself a strong check even
//! where brute force can no longer follow.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use spm_core::matching::{max_matching_general, tutte_berge_brute};
use spm_core::reductions::{gen_biregular, gen_regular_multigraph, random_feasible_solution};
use spm_core::solvers::{
    build_auxiliary_graph, solve_32_regular, solve_continuous_greedy, solve_d2_regular_d4,
    solve_greedy, CgParams,
};
use spm_core::Multigraph;

#[test]
fn solve_32_identity_holds_at_larger_scales() {
    let mut rng = ChaCha12Rng::seed_from_u64(101);
    for round in 0..60 {
        let n_a = [12, 14, 16, 20][round % 4];
        let inst = gen_biregular(n_a, 3, rng.random()).unwrap();
        let aux = build_auxiliary_graph(&inst).unwrap();
        let nu = max_matching_general(&aux.graph).len();
        let sol = solve_32_regular(&inst).unwrap();
        assert_eq!(sol.profit, n_a / 2 + nu);
        assert_eq!(inst.validate_solution(&sol), Ok(()));
        assert!(10 * sol.profit >= 9 * n_a);
    }
}

/// Heavy fuzz of the d = 3 pipeline; the decomposition carries structural
/// assertions at every step, so a clean pass means none of them can be
/// tripped across thousands of instances. Run with `--ignored`.
#[test]
#[ignore = "heavy fuzz, run on demand"]
fn fuzz_solve_32_decomposition() {
    let mut rng = ChaCha12Rng::seed_from_u64(0xF32);
    for round in 0..4000 {
        let n_a = 2 * rng.random_range(1..=20);
        let inst = gen_biregular(n_a, 3, rng.random()).unwrap();
        let aux = build_auxiliary_graph(&inst).unwrap();
        let nu = max_matching_general(&aux.graph).len();
        let sol = solve_32_regular(&inst).unwrap();
        assert_eq!(sol.profit, n_a / 2 + nu, "round {round}, n_a {n_a}");
    }
}

/// Heavy fuzz of the d >= 4 pipeline and the cover transformation on random
/// simple cubic sources. Run with `--ignored`.
#[test]
#[ignore = "heavy fuzz, run on demand"]
fn fuzz_d4_and_cover_extraction() {
    let mut rng = ChaCha12Rng::seed_from_u64(0xF44);
    for _ in 0..1500 {
        let d = rng.random_range(4..=8);
        let mut n_a = rng.random_range(4..=20);
        if (n_a * d) % 2 == 1 {
            n_a += 1;
        }
        // cramped stub pairings can exhaust their retry budget; redraw
        let inst = loop {
            if let Ok(inst) = gen_biregular(n_a, d, rng.random()) {
                break inst;
            }
        };
        assert_eq!(solve_d2_regular_d4(&inst).unwrap().profit, n_a);
    }

    use spm_core::reductions::{extract_vertex_cover, vc_gadget};
    let mut sources = 0;
    while sources < 60 {
        let n = 2 * rng.random_range(2..=6);
        let Ok(src) = gen_regular_multigraph(n, 3, rng.random()) else {
            continue;
        };
        if !src.is_simple() {
            continue;
        }
        sources += 1;
        let gadget = vc_gadget(&src).unwrap();
        for _ in 0..20 {
            let sol = random_feasible_solution(&gadget.instance, rng.random()).unwrap();
            let (cover, sol2) = extract_vertex_cover(&gadget, &sol).unwrap();
            assert!(sol2.profit >= sol.profit);
            assert_eq!(cover.len(), 2 * n + src.n_edges() - sol2.profit);
        }
    }
}

#[test]
fn solve_d4_saturates_larger_instances() {
    let mut rng = ChaCha12Rng::seed_from_u64(103);
    for round in 0..40 {
        let (n_a, d) = [(12, 4), (16, 4), (12, 5), (10, 6)][round % 4];
        let inst = gen_biregular(n_a, d, rng.random()).unwrap();
        let sol = solve_d2_regular_d4(&inst).unwrap();
        assert_eq!(sol.profit, n_a);
    }
}

#[test]
fn blossom_matches_tutte_berge_up_to_the_guard() {
    let mut rng = ChaCha12Rng::seed_from_u64(107);
    for _ in 0..40 {
        let n = rng.random_range(13..=16);
        let m = rng.random_range(n..=3 * n);
        let edges: Vec<(usize, usize)> = (0..m)
            .map(|_| {
                let u = rng.random_range(0..n);
                let mut v = rng.random_range(0..n - 1);
                if v >= u {
                    v += 1;
                }
                (u, v)
            })
            .collect();
        let g = Multigraph::new(n, edges).unwrap();
        assert_eq!(
            max_matching_general(&g).len(),
            tutte_berge_brute(&g).unwrap().value
        );
    }
    // dense regular multigraphs stress the contraction path; dense pairings
    // can exhaust their retry budget, so resample the seed on failure
    for round in 0..20 {
        let d = [3, 5, 7][round % 3];
        let g = loop {
            if let Ok(g) = gen_regular_multigraph(14, d, rng.random()) {
                break g;
            }
        };
        assert_eq!(
            max_matching_general(&g).len(),
            tutte_berge_brute(&g).unwrap().value
        );
    }
}

#[test]
fn approximate_solvers_stay_feasible_on_medium_instances() {
    let mut rng = ChaCha12Rng::seed_from_u64(109);
    for _ in 0..10 {
        let n_a = rng.random_range(8..=14);
        let n_b = rng.random_range(n_a + 2..=n_a + 10);
        let mut edges = Vec::new();
        for a in 0..n_a {
            for b in 0..n_b {
                if rng.random::<f64>() < 0.3 {
                    edges.push((a, b));
                }
            }
        }
        let inst = spm_core::BipartiteInstance::new(n_a, n_b, &edges).unwrap();
        if spm_core::matching::a_perfect_matching(&inst, &[]).is_none() {
            continue;
        }
        let greedy = solve_greedy(&inst).unwrap();
        let cg = solve_continuous_greedy(
            &inst,
            CgParams {
                steps: 20,
                samples: 16,
                seed: rng.random(),
            },
        )
        .unwrap();
        assert_eq!(inst.validate_solution(&greedy), Ok(()));
        assert_eq!(inst.validate_solution(&cg), Ok(()));
        // greedy sees every gain the sampled relaxation can certify here
        let any = random_feasible_solution(&inst, rng.random()).unwrap();
        assert!(greedy.profit >= any.profit / 2);
    }
}
