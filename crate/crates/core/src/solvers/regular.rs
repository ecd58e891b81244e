//! Exact solvers for instances whose bidders are 2-regular.
//!
//! When every bidder bids on exactly two goods, the instance folds into a
//! general multigraph on the goods: bidder `b` becomes an edge joining its
//! two neighbors. A maximum matching `M'` of that auxiliary graph selects a
//! bidder set `B'` with pairwise-disjoint neighborhoods, which the two
//! pipelines below augment into optimal second-bidder sets:
//!
//! - `d = 3`: strip `B'` from the instance, split what remains into even
//!   cycles and a forest, carve the forest into leaf-to-leaf paths, and read
//!   an A-perfect matching off the cycles and paths. The profit always lands
//!   exactly on `n/2 + ν(G')`.
//! - `d >= 4`: match each good outside `N(B')` to a good inside it through a
//!   shared bidder (Hall's condition makes that matching exist), which
//!   extends `B'` to a set seeing all of `A`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{BipartiteInstance, Matching, Multigraph, ProblemKind, Solution};
use crate::matching::{a_perfect_matching, max_matching_general};

use super::SolveError;

/// The goods-side multigraph whose edges are 2-regular bidders, with the
/// bidder behind each edge id.
#[derive(Debug, Clone)]
pub struct AuxiliaryGraph {
    pub graph: Multigraph,
    /// `phi[edge_id]` is the bidder whose two bids form that edge.
    pub phi: Vec<usize>,
}

/// Builds the auxiliary graph of an instance whose bidders all have degree
/// exactly 2. Edge ids follow bidder order, so `phi` is the identity; it is
/// kept explicit because downstream code only relies on the bijection.
pub fn build_auxiliary_graph(inst: &BipartiteInstance) -> Result<AuxiliaryGraph, SolveError> {
    let mut edges = Vec::with_capacity(inst.n_b());
    for b in 0..inst.n_b() {
        let nb = inst.adj_b(b);
        if nb.len() != 2 {
            return Err(SolveError::Precondition(format!(
                "bidder {b} has degree {}, expected 2",
                nb.len()
            )));
        }
        edges.push((nb[0], nb[1]));
    }
    let graph = Multigraph::new(inst.n_a(), edges).expect("adjacency lists are strict, no loops");
    Ok(AuxiliaryGraph {
        graph,
        phi: (0..inst.n_b()).collect(),
    })
}

/// A vertex of the stripped instance `H`: either a good or a bidder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HVertex {
    A(usize),
    B(usize),
}

/// The cycle/path structure behind the `d = 3` solver.
///
/// Cycles and paths alternate between goods and bidders. Each cycle starts
/// at its smallest good, oriented toward that good's smaller bidder
/// neighbor; each path runs from its smaller bidder endpoint (the dropped
/// one) to the larger.
#[derive(Debug, Clone)]
pub struct Decomposition32 {
    pub cycles: Vec<Vec<HVertex>>,
    pub paths: Vec<Vec<HVertex>>,
    /// One unmatched endpoint per path, parallel to `paths`.
    pub dropped_endpoints: Vec<usize>,
}

/// Internal working ids: goods are `0..n_a`, bidder `b` is `n_a + b`.
struct HGraph {
    n_a: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl HGraph {
    fn new(inst: &BipartiteInstance, in_b_prime: &[bool]) -> Self {
        let n = inst.n_a() + inst.n_b();
        let mut edges = Vec::new();
        let mut adj = vec![Vec::new(); n];
        for (a, b) in inst.edges() {
            if in_b_prime[b] {
                continue;
            }
            let u = a;
            let v = inst.n_a() + b;
            let id = edges.len();
            edges.push((u, v));
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        Self {
            n_a: inst.n_a(),
            edges,
            adj,
        }
    }

    fn is_good(&self, v: usize) -> bool {
        v < self.n_a
    }

    fn to_hvertex(&self, v: usize) -> HVertex {
        if self.is_good(v) {
            HVertex::A(v)
        } else {
            HVertex::B(v - self.n_a)
        }
    }
}

/// Finds any cycle among the non-banned vertices, as aligned vertex/edge
/// rings (`edges[i]` joins `vertices[i]` and `vertices[i + 1 mod len]`).
fn find_cycle(h: &HGraph, banned: &[bool]) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = h.adj.len();
    let mut color = vec![0u8; n];
    let mut parent_vertex = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];

    for start in 0..n {
        if banned[start] || color[start] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        color[start] = 1;
        while let Some(&(v, i)) = stack.last() {
            if i >= h.adj[v].len() {
                color[v] = 2;
                stack.pop();
                continue;
            }
            stack.last_mut().expect("stack is nonempty").1 += 1;
            let (to, eid) = h.adj[v][i];
            if banned[to] || eid == parent_edge[v] {
                continue;
            }
            match color[to] {
                1 => {
                    // Back edge: walk parents from v up to `to`.
                    let mut vertices = vec![v];
                    let mut edges = vec![eid];
                    let mut x = v;
                    while x != to {
                        edges.push(parent_edge[x]);
                        x = parent_vertex[x];
                        vertices.push(x);
                    }
                    // vertices = [v, ..., to]; edges[i] joins vertices[i-1]
                    // and vertices[i], except edges[0] which closes v-to.
                    vertices.reverse(); // [to, ..., v]
                    edges.reverse(); // [to->.., .., ->v, closing v-to]
                    return Some((vertices, edges));
                }
                0 => {
                    color[to] = 1;
                    parent_vertex[to] = v;
                    parent_edge[to] = eid;
                    stack.push((to, 0));
                }
                _ => {}
            }
        }
    }
    None
}

/// Tree path between two vertices over the alive edges.
fn tree_path(h: &HGraph, alive_edge: &[bool], from: usize, to: usize) -> Vec<usize> {
    let n = h.adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(v) = stack.pop() {
        if v == to {
            break;
        }
        for &(w, eid) in &h.adj[v] {
            if alive_edge[eid] && !seen[w] {
                seen[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    assert!(seen[to], "leaves must share a tree");
    let mut path = vec![to];
    let mut x = to;
    while x != from {
        x = parent[x];
        path.push(x);
    }
    path.reverse();
    path
}

/// Splits the stripped instance into vertex-disjoint even cycles plus
/// leaf-to-leaf forest paths.
///
/// `b_prime` must be the bidder set of a maximum matching of the auxiliary
/// graph on a (3,2)-regular instance; every structural assertion below
/// leans on that maximality.
pub fn decompose_32(inst: &BipartiteInstance, b_prime: &[usize]) -> Decomposition32 {
    let n_a = inst.n_a();
    let mut in_b_prime = vec![false; inst.n_b()];
    for &b in b_prime {
        in_b_prime[b] = true;
    }
    let mut in_nbp = vec![false; n_a]; // N(B')
    for &b in b_prime {
        for &a in inst.adj_b(b) {
            assert!(!in_nbp[a], "B' neighborhoods must be pairwise disjoint");
            in_nbp[a] = true;
        }
    }

    let h = HGraph::new(inst, &in_b_prime);
    let n = h.adj.len();

    // Phase 1: peel off vertex-disjoint cycles.
    let mut in_cycle = vec![false; n];
    let mut cycle_edge = vec![false; h.edges.len()];
    let mut cycles_raw: Vec<Vec<usize>> = Vec::new();
    while let Some((vertices, edges)) = find_cycle(&h, &in_cycle) {
        assert!(vertices.len() % 2 == 0, "bipartite cycles are even");
        for &v in &vertices {
            in_cycle[v] = true;
        }
        for &e in &edges {
            cycle_edge[e] = true;
        }
        cycles_raw.push(vertices);
    }

    // Phase 2: the remaining edges form a forest. Its leaves are exactly the
    // degree-3 goods that sit on a cycle; strip them.
    let mut alive = vec![false; h.edges.len()];
    let mut deg = vec![0usize; n];
    for (eid, &(u, v)) in h.edges.iter().enumerate() {
        if !cycle_edge[eid] {
            alive[eid] = true;
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    let first_leaves: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    for &v in &first_leaves {
        assert!(
            h.is_good(v) && !in_nbp[v] && in_cycle[v],
            "forest leaves are on-cycle degree-3 goods"
        );
        for &(w, eid) in &h.adj[v] {
            if alive[eid] {
                alive[eid] = false;
                deg[v] -= 1;
                deg[w] -= 1;
            }
        }
    }

    // Phase 3: repeatedly cut a path between the two smallest leaves of the
    // first tree that still has an edge.
    let mut paths_raw: Vec<Vec<usize>> = Vec::new();
    let mut rounds = 0usize;
    loop {
        // Every remaining leaf is a bidder hanging off N(B').
        let leaves: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
        for &bv in &leaves {
            assert!(!h.is_good(bv), "forest leaves after stripping sit in B");
            let nbr = h.adj[bv]
                .iter()
                .find(|&&(_, eid)| alive[eid])
                .map(|&(w, _)| w)
                .expect("a leaf keeps one alive edge");
            assert!(
                h.is_good(nbr) && in_nbp[nbr],
                "a leaf's tree neighbor lies in N(B')"
            );
        }

        let Some(root) = (0..n).find(|&v| deg[v] > 0) else {
            break;
        };
        rounds += 1;
        assert!(rounds <= inst.n_b(), "path extraction must terminate");

        // Collect the component of `root`.
        let mut comp = Vec::new();
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &(w, eid) in &h.adj[v] {
                if alive[eid] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        let mut tree_leaves: Vec<usize> = comp.iter().copied().filter(|&v| deg[v] == 1).collect();
        tree_leaves.sort_unstable();
        assert!(tree_leaves.len() >= 2, "a tree with an edge has two leaves");

        let (x, y) = (tree_leaves[0], tree_leaves[1]);
        let path = tree_path(&h, &alive, x, y);
        assert!(path.len() % 2 == 1 && !h.is_good(path[0]) && !h.is_good(path[path.len() - 1]));

        let degrees_before: Vec<usize> = (0..n_a).map(|a| deg[a]).collect();
        let mut on_path = vec![false; n];
        for &v in &path {
            on_path[v] = true;
        }
        for &v in &path {
            for &(w, eid) in &h.adj[v] {
                if alive[eid] {
                    alive[eid] = false;
                    deg[v] -= 1;
                    deg[w] -= 1;
                }
            }
        }
        for a in 0..n_a {
            if !on_path[a] {
                assert_eq!(
                    deg[a], degrees_before[a],
                    "off-path goods keep their degree"
                );
            }
        }
        paths_raw.push(path);
    }

    // Every good lies in exactly one cycle or one path.
    let mut owner = vec![0usize; n_a];
    for c in &cycles_raw {
        for &v in c {
            if h.is_good(v) {
                owner[v] += 1;
            }
        }
    }
    for p in &paths_raw {
        for &v in p {
            if h.is_good(v) {
                owner[v] += 1;
            }
        }
    }
    assert!(
        owner.iter().all(|&c| c == 1),
        "each good sits in exactly one cycle or path"
    );

    // Canonical orientations.
    let cycles = cycles_raw
        .into_iter()
        .map(|c| orient_cycle(&h, c))
        .collect();
    let mut paths = Vec::new();
    let mut dropped_endpoints = Vec::new();
    for mut p in paths_raw {
        if p[0] > p[p.len() - 1] {
            p.reverse();
        }
        dropped_endpoints.push(p[0] - n_a);
        paths.push(p.iter().map(|&v| h.to_hvertex(v)).collect());
    }

    Decomposition32 {
        cycles,
        paths,
        dropped_endpoints,
    }
}

/// Rotates the cycle to start at its smallest good, heading toward that
/// good's smaller bidder neighbor.
fn orient_cycle(h: &HGraph, cycle: Vec<usize>) -> Vec<HVertex> {
    let len = cycle.len();
    let start = (0..len)
        .filter(|&i| h.is_good(cycle[i]))
        .min_by_key(|&i| cycle[i])
        .expect("cycles alternate, so they contain goods");
    let next = cycle[(start + 1) % len];
    let prev = cycle[(start + len - 1) % len];
    let forward = next < prev;
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        let idx = if forward {
            (start + k) % len
        } else {
            (start + len - k) % len
        };
        out.push(h.to_hvertex(cycle[idx]));
    }
    out
}

/// Exact `d = 3` solver; the profit is always `n_a/2 + ν(G')`.
pub fn solve_32_regular(inst: &BipartiteInstance) -> Result<Solution, SolveError> {
    require_degrees(inst, 3)?;
    let aux = build_auxiliary_graph(inst)?;
    let m_prime = max_matching_general(&aux.graph);
    let nu = m_prime.len();
    let b_prime: Vec<usize> = m_prime
        .pairs()
        .iter()
        .map(|&(u, v)| {
            aux.phi[aux
                .graph
                .min_edge_id(u, v)
                .expect("matched pair is an edge")]
        })
        .collect();

    let decomp = decompose_32(inst, &b_prime);

    // Read the A-perfect matching of H off the cycles and paths.
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(inst.n_a());
    for cycle in &decomp.cycles {
        for chunk in cycle.chunks(2) {
            match (chunk[0], chunk[1]) {
                (HVertex::A(a), HVertex::B(b)) => pairs.push((a, b)),
                other => panic!("cycle must alternate starting at a good, got {other:?}"),
            }
        }
    }
    for path in &decomp.paths {
        for chunk in path[1..].chunks(2) {
            match (chunk[0], chunk[1]) {
                (HVertex::A(a), HVertex::B(b)) => pairs.push((a, b)),
                other => panic!("path tail must alternate good/bidder, got {other:?}"),
            }
        }
    }
    assert_eq!(pairs.len(), inst.n_a(), "matching must be A-perfect");

    let mut matched_b = vec![false; inst.n_b()];
    for &(_, b) in &pairs {
        matched_b[b] = true;
    }
    let mut in_b_prime = vec![false; inst.n_b()];
    for &b in &b_prime {
        in_b_prime[b] = true;
    }
    let s_set: Vec<usize> = (0..inst.n_b()).filter(|&b| !matched_b[b]).collect();
    assert!(
        b_prime.iter().all(|&b| !matched_b[b]),
        "the matching lives in H, off B'"
    );

    // No good outside N(B') may see two second bidders outside B'.
    let mut in_nbp = vec![false; inst.n_a()];
    for &b in &b_prime {
        for &a in inst.adj_b(b) {
            in_nbp[a] = true;
        }
    }
    let mut extra_hits = vec![0usize; inst.n_a()];
    for &b in &s_set {
        if !in_b_prime[b] {
            for &a in inst.adj_b(b) {
                if !in_nbp[a] {
                    extra_hits[a] += 1;
                }
            }
        }
    }
    assert!(
        extra_hits.iter().all(|&c| c <= 1),
        "goods outside N(B') see at most one extra second bidder"
    );

    let profit = inst.neighborhood(&s_set).expect("s_set is in range").len();
    assert_eq!(
        profit,
        inst.n_a() / 2 + nu,
        "profit must equal n/2 + nu(G')"
    );

    let sol = Solution::new(
        ProblemKind::TwoPpm,
        s_set,
        (0..inst.n_a()).collect(),
        Matching::from_pairs(pairs),
        profit,
    );
    inst.validate_solution(&sol)
        .expect("constructed solution validates");
    Ok(sol)
}

/// Exact `d >= 4` solver; the profit is always `n_a`.
pub fn solve_d2_regular_d4(inst: &BipartiteInstance) -> Result<Solution, SolveError> {
    let d = inst.uniform_left_degree().unwrap_or(0);
    if d < 4 {
        return Err(SolveError::Precondition(format!(
            "goods must share a degree d >= 4, found {:?}",
            inst.uniform_left_degree()
        )));
    }
    require_degrees(inst, d)?;

    let aux = build_auxiliary_graph(inst)?;
    let m_prime = max_matching_general(&aux.graph);
    let b_prime: Vec<usize> = m_prime
        .pairs()
        .iter()
        .map(|&(u, v)| {
            aux.phi[aux
                .graph
                .min_edge_id(u, v)
                .expect("matched pair is an edge")]
        })
        .collect();

    let mut in_b_prime = vec![false; inst.n_b()];
    for &b in &b_prime {
        in_b_prime[b] = true;
    }
    let mut in_nbp = vec![false; inst.n_a()];
    for &b in &b_prime {
        for &a in inst.adj_b(b) {
            in_nbp[a] = true;
        }
    }

    // Every remaining bidder touches at most one good outside N(B'),
    // otherwise M' was not maximum.
    #[cfg(debug_assertions)]
    for (b, _) in in_b_prime
        .iter()
        .enumerate()
        .filter(|&(_, &inside)| !inside)
    {
        let outside = inst.adj_b(b).iter().filter(|&&a| !in_nbp[a]).count();
        debug_assert!(outside <= 1, "bidder {b} joins two goods outside N(B')");
    }

    // Bipartite graph between A \ N(B') and N(B') through shared bidders;
    // keep the smallest bidder per good pair as the representative.
    let outside: Vec<usize> = (0..inst.n_a()).filter(|&a| !in_nbp[a]).collect();
    let index_of: Vec<usize> = {
        let mut idx = vec![usize::MAX; inst.n_a()];
        for (i, &a) in outside.iter().enumerate() {
            idx[a] = i;
        }
        idx
    };
    let mut bridge_edges: Vec<(usize, usize)> = Vec::new(); // (outside-index, inside good)
    let mut representative: Vec<Vec<(usize, usize)>> = vec![Vec::new(); outside.len()];
    for (b, _) in in_b_prime
        .iter()
        .enumerate()
        .filter(|&(_, &inside)| !inside)
    {
        let nb = inst.adj_b(b);
        let (x, y) = (nb[0], nb[1]);
        let (out_good, in_good) = if !in_nbp[x] && in_nbp[y] {
            (x, y)
        } else if in_nbp[x] && !in_nbp[y] {
            (y, x)
        } else {
            continue;
        };
        let oi = index_of[out_good];
        if !representative[oi].iter().any(|&(g, _)| g == in_good) {
            representative[oi].push((in_good, b));
            bridge_edges.push((oi, in_good));
        }
    }
    let bridge = BipartiteInstance::new(outside.len(), inst.n_a(), &bridge_edges)
        .expect("bridge edges are deduplicated and in range");
    let m_bridge = a_perfect_matching(&bridge, &[])
        .expect("Hall's condition guarantees a matching covering A \\ N(B')");

    let mut s_set = b_prime.clone();
    for &(oi, in_good) in m_bridge.pairs() {
        let &(_, b) = representative[oi]
            .iter()
            .find(|&&(g, _)| g == in_good)
            .expect("matched bridge pair has a representative bidder");
        s_set.push(b);
    }
    s_set.sort_unstable();

    let matching = a_perfect_matching(inst, &s_set)
        .expect("degree d - 2 >= 2 keeps Hall's condition after removing S");
    let profit = inst.neighborhood(&s_set).expect("s_set is in range").len();
    assert_eq!(profit, inst.n_a(), "S must see every good");
    assert!(s_set.len() <= inst.n_b() - inst.n_a());

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

fn require_degrees(inst: &BipartiteInstance, d: usize) -> Result<(), SolveError> {
    if inst.n_a() == 0 || inst.n_b() == 0 {
        return Err(SolveError::Precondition(
            "instance has an empty side".into(),
        ));
    }
    for a in 0..inst.n_a() {
        if inst.deg_a(a) != d {
            return Err(SolveError::Precondition(format!(
                "good {a} has degree {}, expected {d}",
                inst.deg_a(a)
            )));
        }
    }
    for b in 0..inst.n_b() {
        if inst.deg_b(b) != 2 {
            return Err(SolveError::Precondition(format!(
                "bidder {b} has degree {}, expected 2",
                inst.deg_b(b)
            )));
        }
    }
    Ok(())
}
