//! The vertex-cover gadget and its solution transformation.
//!
//! From a simple 3-regular graph, each source edge `e` becomes a good `a_e`
//! with a private bidder `b_e`, each source vertex `v` becomes a bidder
//! `b_v` bidding on its incident edge goods, and a path gadget
//! `b_v - a_v1 - b_v1 - a_v2 - b_v2` hangs off every `b_v`. Optimal profit
//! and minimum cover size always add up to `2n + m`.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{BipartiteInstance, Multigraph, ProblemKind, Solution};
use crate::matching::{collect_pairs, NONE};
use crate::solvers::solve_brute_2ppm;

use super::{brute_vertex_cover, ReductionError};

/// A 2PPM instance encoding a 3-regular vertex-cover source.
#[derive(Debug, Clone)]
pub struct VcGadget {
    pub instance: BipartiteInstance,
    pub source: Multigraph,
}

impl VcGadget {
    pub fn n_src(&self) -> usize {
        self.source.n_v()
    }

    pub fn m_src(&self) -> usize {
        self.source.n_edges()
    }

    // Canonical vertex numbering: source edges first, then the per-vertex
    // gadget chains, so golden files stay stable.

    pub fn a_e(&self, e: usize) -> usize {
        e
    }

    pub fn a_v1(&self, v: usize) -> usize {
        self.m_src() + 2 * v
    }

    pub fn a_v2(&self, v: usize) -> usize {
        self.m_src() + 2 * v + 1
    }

    pub fn b_e(&self, e: usize) -> usize {
        e
    }

    pub fn b_v(&self, v: usize) -> usize {
        self.m_src() + 3 * v
    }

    pub fn b_v1(&self, v: usize) -> usize {
        self.m_src() + 3 * v + 1
    }

    pub fn b_v2(&self, v: usize) -> usize {
        self.m_src() + 3 * v + 2
    }
}

/// Builds the gadget; the source must be simple and 3-regular.
pub fn vc_gadget(src: &Multigraph) -> Result<VcGadget, ReductionError> {
    for v in 0..src.n_v() {
        if src.degree(v) != 3 {
            return Err(ReductionError::NotRegular {
                vertex: v,
                degree: src.degree(v),
                expected: 3,
            });
        }
        if let Some(w) = src.adj(v).windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(ReductionError::NotSimple { u: v, v: w[0].0 });
        }
    }

    let (n, m) = (src.n_v(), src.n_edges());
    let (a_v1, a_v2) = (|v| m + 2 * v, |v| m + 2 * v + 1);
    let (b_v, b_v1, b_v2) = (|v| m + 3 * v, |v| m + 3 * v + 1, |v| m + 3 * v + 2);
    let mut edges = Vec::new();
    for (e, &(u, v)) in src.edges().iter().enumerate() {
        edges.push((e, e)); // a_e gets its private bidder b_e
        edges.push((e, b_v(u)));
        edges.push((e, b_v(v)));
    }
    for v in 0..n {
        edges.push((a_v1(v), b_v(v)));
        edges.push((a_v1(v), b_v1(v)));
        edges.push((a_v2(v), b_v1(v)));
        edges.push((a_v2(v), b_v2(v)));
    }
    let instance = BipartiteInstance::new(m + 2 * n, m + 3 * n, &edges)
        .expect("gadget edges are distinct and in range");
    Ok(VcGadget {
        instance,
        source: src.clone(),
    })
}

/// The canonical solution encoding a vertex cover: profit `2n + m - |cover|`.
pub fn construct_from_cover(g: &VcGadget, cover: &[usize]) -> Result<Solution, ReductionError> {
    let (n, m) = (g.n_src(), g.m_src());
    let mut in_cover = vec![false; n];
    for &v in cover {
        if v >= n {
            return Err(ReductionError::CoverOutOfRange { vertex: v, size: n });
        }
        in_cover[v] = true;
    }
    for (e, &(u, v)) in g.source.edges().iter().enumerate() {
        if !in_cover[u] && !in_cover[v] {
            return Err(ReductionError::NotACover { edge: e });
        }
    }

    let mut pairs = Vec::with_capacity(m + 2 * n);
    for e in 0..m {
        pairs.push((g.a_e(e), g.b_e(e)));
    }
    for (v, &covered) in in_cover.iter().enumerate() {
        if covered {
            pairs.push((g.a_v1(v), g.b_v1(v)));
        } else {
            pairs.push((g.a_v1(v), g.b_v(v)));
        }
        pairs.push((g.a_v2(v), g.b_v2(v)));
    }

    let mut matched_b = vec![false; g.instance.n_b()];
    for &(_, b) in &pairs {
        matched_b[b] = true;
    }
    let s_set: Vec<usize> = (0..g.instance.n_b()).filter(|&b| !matched_b[b]).collect();
    let profit = g
        .instance
        .neighborhood(&s_set)
        .expect("s_set is in range")
        .len();
    let cover_size = in_cover.iter().filter(|&&c| c).count();
    assert_eq!(
        profit,
        2 * n + m - cover_size,
        "cover encoding always earns 2n + m - |U|"
    );

    let sol = Solution::new(
        ProblemKind::TwoPpm,
        s_set,
        (0..g.instance.n_a()).collect(),
        crate::graph::Matching::from_pairs(pairs),
        profit,
    );
    g.instance
        .validate_solution(&sol)
        .expect("cover encoding validates");
    Ok(sol)
}

/// Normalizes any feasible solution into cover shape — private bidders
/// matched, path tails matched, never two saturated endpoints on one source
/// edge — and reads a vertex cover off the unsaturated `b_v` nodes.
///
/// The returned solution never earns less than the input, and the cover size
/// is exactly `2n + m - profit`.
pub fn extract_vertex_cover(
    g: &VcGadget,
    sol: &Solution,
) -> Result<(Vec<usize>, Solution), ReductionError> {
    if sol.kind != ProblemKind::TwoPpm {
        return Err(ReductionError::WrongKind);
    }
    g.instance.validate_solution(sol)?;

    let (n, m) = (g.n_src(), g.m_src());
    let mut mate_a = vec![NONE; g.instance.n_a()];
    let mut mate_b = vec![NONE; g.instance.n_b()];
    for &(a, b) in sol.matching.pairs() {
        mate_a[a] = b;
        mate_b[b] = a;
    }

    // Give every edge good its private bidder.
    for e in 0..m {
        let (a, priv_b) = (g.a_e(e), g.b_e(e));
        if mate_a[a] != priv_b {
            debug_assert_eq!(
                mate_b[priv_b], NONE,
                "a private bidder has a single neighbor"
            );
            let old = mate_a[a];
            mate_b[old] = NONE;
            mate_a[a] = priv_b;
            mate_b[priv_b] = a;
        }
    }
    // Push every path tail onto its private end.
    for v in 0..n {
        let (a, tail_b) = (g.a_v2(v), g.b_v2(v));
        if mate_a[a] != tail_b {
            debug_assert_eq!(mate_a[a], g.b_v1(v));
            let old = mate_a[a];
            mate_b[old] = NONE;
            mate_a[a] = tail_b;
            mate_b[tail_b] = a;
        }
    }
    // Unsaturate one endpoint of every fully saturated source edge. A pass
    // may create new saturated pairs upstream, so rescan to a fixpoint.
    let mut passes = 0;
    loop {
        let mut changed = false;
        for &(u, v) in g.source.edges() {
            if mate_b[g.b_v(u)] != NONE && mate_b[g.b_v(v)] != NONE {
                let w = u.min(v);
                let a1 = g.a_v1(w);
                assert_eq!(mate_a[a1], g.b_v(w), "a saturated b_v holds its own a_v1");
                assert_eq!(
                    mate_b[g.b_v1(w)],
                    NONE,
                    "b_v1 is free while a_v1 sits on b_v"
                );
                mate_b[g.b_v(w)] = NONE;
                mate_a[a1] = g.b_v1(w);
                mate_b[g.b_v1(w)] = a1;
                changed = true;
            }
        }
        passes += 1;
        assert!(passes <= n + 1, "each rematch unsaturates one b_v for good");
        if !changed {
            break;
        }
    }

    let cover: Vec<usize> = (0..n).filter(|&v| mate_b[g.b_v(v)] == NONE).collect();
    for (e, &(u, v)) in g.source.edges().iter().enumerate() {
        assert!(
            mate_b[g.b_v(u)] == NONE || mate_b[g.b_v(v)] == NONE,
            "fixpoint leaves edge {e} covered"
        );
    }

    let s_set: Vec<usize> = (0..g.instance.n_b())
        .filter(|&b| mate_b[b] == NONE)
        .collect();
    let profit = g
        .instance
        .neighborhood(&s_set)
        .expect("s_set is in range")
        .len();
    let sol2 = Solution::new(
        ProblemKind::TwoPpm,
        s_set,
        (0..g.instance.n_a()).collect(),
        collect_pairs(&mate_a),
        profit,
    );
    g.instance
        .validate_solution(&sol2)
        .expect("transformed solution validates");
    assert!(
        profit >= sol.profit,
        "the transformation never loses profit"
    );
    assert_eq!(cover.len(), 2 * n + m - profit);
    Ok((cover, sol2))
}

/// Both sides of `OPT_2PPM + OPT_VC = 2n + m`, brute-forced independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VcIdentityReport {
    pub opt_2ppm: usize,
    pub opt_vc: usize,
    pub n_src: usize,
    pub m_src: usize,
}

impl VcIdentityReport {
    pub fn holds(&self) -> bool {
        self.opt_2ppm + self.opt_vc == 2 * self.n_src + self.m_src
    }
}

pub fn certify_vc_identity(g: &VcGadget) -> Result<VcIdentityReport, ReductionError> {
    let opt_vc = brute_vertex_cover(&g.source)?.len();
    let opt_2ppm = solve_brute_2ppm(&g.instance)
        .map_err(ReductionError::Solve)?
        .profit;
    Ok(VcIdentityReport {
        opt_2ppm,
        opt_vc,
        n_src: g.n_src(),
        m_src: g.m_src(),
    })
}
