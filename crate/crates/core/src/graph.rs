//! Bid graphs, multigraphs, matchings, and solution validation.
//!
//! [`BipartiteInstance`] is the universal input object: goods on the `A`
//! side, bidders on the `B` side. [`Multigraph`] hosts auxiliary graphs with
//! parallel edges. [`Solution`] carries its matching explicitly so that
//! validation is a local `O(|E|)` check and certificates are portable.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use thiserror::Error;

/// Errors raised while constructing graphs or querying them with bad indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex index {index} out of range (size {size})")]
    VertexOutOfRange { index: usize, size: usize },
    #[error("duplicate edge ({a}, {b})")]
    DuplicateEdge { a: usize, b: usize },
    #[error("loop edge at vertex {vertex}")]
    LoopEdge { vertex: usize },
}

/// A bipartite bid graph `G = (A ∪ B, E)` with goods `A` and bidders `B`.
///
/// Adjacency lists are stored sorted ascending on both sides, parallel edges
/// are rejected, and the structure is immutable after construction, so every
/// operation on it is safe to run concurrently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteInstance {
    n_a: usize,
    n_b: usize,
    adj_a: Vec<Vec<usize>>,
    adj_b: Vec<Vec<usize>>,
}

impl BipartiteInstance {
    /// Builds an instance from `(a, b)` edge pairs (0-based).
    pub fn new(n_a: usize, n_b: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj_a = vec![Vec::new(); n_a];
        let mut adj_b = vec![Vec::new(); n_b];
        for &(a, b) in edges {
            if a >= n_a {
                return Err(GraphError::VertexOutOfRange {
                    index: a,
                    size: n_a,
                });
            }
            if b >= n_b {
                return Err(GraphError::VertexOutOfRange {
                    index: b,
                    size: n_b,
                });
            }
            adj_a[a].push(b);
            adj_b[b].push(a);
        }
        for (a, list) in adj_a.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge { a, b: w[0] });
            }
        }
        for list in adj_b.iter_mut() {
            list.sort_unstable();
        }
        Ok(Self {
            n_a,
            n_b,
            adj_a,
            adj_b,
        })
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn n_edges(&self) -> usize {
        self.adj_a.iter().map(Vec::len).sum()
    }

    /// Neighbors of good `a`, sorted ascending.
    pub fn adj_a(&self, a: usize) -> &[usize] {
        &self.adj_a[a]
    }

    /// Neighbors of bidder `b`, sorted ascending.
    pub fn adj_b(&self, b: usize) -> &[usize] {
        &self.adj_b[b]
    }

    pub fn deg_a(&self, a: usize) -> usize {
        self.adj_a[a].len()
    }

    pub fn deg_b(&self, b: usize) -> usize {
        self.adj_b[b].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n_a && self.adj_a[a].binary_search(&b).is_ok()
    }

    /// All edges sorted by `(a, b)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n_edges());
        for (a, list) in self.adj_a.iter().enumerate() {
            for &b in list {
                out.push((a, b));
            }
        }
        out
    }

    /// The common degree of all `A`-vertices, if they agree (`None` when the
    /// side is empty or irregular).
    pub fn uniform_left_degree(&self) -> Option<usize> {
        let d = self.adj_a.first()?.len();
        self.adj_a.iter().all(|l| l.len() == d).then_some(d)
    }

    /// The common degree of all `B`-vertices, if they agree.
    pub fn uniform_right_degree(&self) -> Option<usize> {
        let d = self.adj_b.first()?.len();
        self.adj_b.iter().all(|l| l.len() == d).then_some(d)
    }

    /// `N(S)`: the goods adjacent to at least one bidder of `s`, sorted
    /// ascending.
    pub fn neighborhood(&self, s: &[usize]) -> Result<Vec<usize>, GraphError> {
        let mut seen = vec![false; self.n_a];
        for &b in s {
            if b >= self.n_b {
                return Err(GraphError::VertexOutOfRange {
                    index: b,
                    size: self.n_b,
                });
            }
            for &a in &self.adj_b[b] {
                seen[a] = true;
            }
        }
        Ok((0..self.n_a).filter(|&a| seen[a]).collect())
    }

    /// Checks every [`Solution`] invariant against this instance; reports the
    /// first violated one.
    pub fn validate_solution(&self, sol: &Solution) -> Result<(), Violation> {
        check_sorted_set(&sol.s_set, self.n_b, SetSide::S)?;
        check_sorted_set(&sol.w_set, self.n_a, SetSide::W)?;

        let mut matched_a = vec![false; self.n_a];
        let mut matched_b = vec![false; self.n_b];
        for &(a, b) in sol.matching.pairs() {
            if a >= self.n_a {
                return Err(Violation::IndexOutOfRange {
                    side: SetSide::W,
                    index: a,
                });
            }
            if b >= self.n_b {
                return Err(Violation::IndexOutOfRange {
                    side: SetSide::S,
                    index: b,
                });
            }
            if !self.has_edge(a, b) {
                return Err(Violation::NotAnEdge { a, b });
            }
            if matched_a[a] || matched_b[b] {
                return Err(Violation::OverlappingMatching);
            }
            matched_a[a] = true;
            matched_b[b] = true;
        }

        if sol.w_set.iter().any(|&w| !matched_a[w]) {
            return Err(Violation::UnsaturatedW);
        }
        let mut in_w = vec![false; self.n_a];
        for &w in &sol.w_set {
            in_w[w] = true;
        }
        if (0..self.n_a).any(|a| matched_a[a] && !in_w[a]) {
            return Err(Violation::MatchingOutsideW);
        }
        if sol.s_set.iter().any(|&s| matched_b[s]) {
            return Err(Violation::SMeetsMatching);
        }

        if sol.kind == ProblemKind::TwoPpm {
            if sol.w_set.len() != self.n_a {
                return Err(Violation::NotAPerfect);
            }
            if sol.s_set.len() > self.n_b.saturating_sub(self.n_a) {
                return Err(Violation::STooLarge);
            }
        }

        let expected = self.coverage(&sol.s_set, &in_w);
        if sol.profit != expected {
            return Err(Violation::ProfitMismatch {
                claimed: sol.profit,
                actual: expected,
            });
        }
        Ok(())
    }

    /// The profit `|N(S) ∩ W|` of a solution, after validating it.
    pub fn profit(&self, sol: &Solution) -> Result<usize, Violation> {
        self.validate_solution(sol)?;
        Ok(sol.profit)
    }

    fn coverage(&self, s_set: &[usize], in_w: &[bool]) -> usize {
        let mut seen = vec![false; self.n_a];
        let mut count = 0;
        for &b in s_set {
            for &a in &self.adj_b[b] {
                if in_w[a] && !seen[a] {
                    seen[a] = true;
                    count += 1;
                }
            }
        }
        count
    }
}

fn check_sorted_set(set: &[usize], size: usize, side: SetSide) -> Result<(), Violation> {
    for (i, &v) in set.iter().enumerate() {
        if v >= size {
            return Err(Violation::IndexOutOfRange { side, index: v });
        }
        if i > 0 && set[i - 1] >= v {
            return Err(Violation::NotAscending { side });
        }
    }
    Ok(())
}

/// Which side of the bipartition a violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetSide {
    S,
    W,
}

impl fmt::Display for SetSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetSide::S => write!(f, "S"),
            SetSide::W => write!(f, "W"),
        }
    }
}

/// The first invariant a candidate solution violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("{side} index {index} out of range")]
    IndexOutOfRange { side: SetSide, index: usize },
    #[error("{side} not strictly ascending")]
    NotAscending { side: SetSide },
    #[error("matching pair ({a}, {b}) is not an edge")]
    NotAnEdge { a: usize, b: usize },
    #[error("matching endpoints overlap")]
    OverlappingMatching,
    #[error("matching does not saturate W")]
    UnsaturatedW,
    #[error("matching covers a vertex outside W")]
    MatchingOutsideW,
    #[error("S meets matching")]
    SMeetsMatching,
    #[error("not A-perfect")]
    NotAPerfect,
    #[error("S exceeds |B| - |A|")]
    STooLarge,
    #[error("profit mismatch: claimed {claimed}, recomputed {actual}")]
    ProfitMismatch { claimed: usize, actual: usize },
}

/// A general graph that permits parallel edges but not loops. Edge ids are
/// dense: the edge with id `i` is `edges()[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n_v: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl Multigraph {
    pub fn new(n_v: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n_v];
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u >= n_v {
                return Err(GraphError::VertexOutOfRange {
                    index: u,
                    size: n_v,
                });
            }
            if v >= n_v {
                return Err(GraphError::VertexOutOfRange {
                    index: v,
                    size: n_v,
                });
            }
            if u == v {
                return Err(GraphError::LoopEdge { vertex: u });
            }
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        Ok(Self { n_v, edges, adj })
    }

    pub fn n_v(&self) -> usize {
        self.n_v
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Incident `(neighbor, edge_id)` pairs of `v`, sorted ascending.
    pub fn adj(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// The common degree of all vertices, if they agree.
    pub fn uniform_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    /// True when no two edges join the same vertex pair.
    pub fn is_simple(&self) -> bool {
        self.adj
            .iter()
            .all(|list| list.windows(2).all(|w| w[0].0 != w[1].0))
    }

    /// The smallest edge id joining `u` and `v`, if any.
    pub fn min_edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.adj[u]
            .iter()
            .filter(|&&(to, _)| to == v)
            .map(|&(_, id)| id)
            .min()
    }

    /// Edge endpoint pairs normalized to `(min, max)` and sorted, ignoring
    /// edge ids. Two multigraphs on identically labeled vertices are equal
    /// as multigraphs iff these agree.
    pub fn sorted_edge_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect();
        pairs.sort_unstable();
        pairs
    }
}

/// A set of vertex-disjoint edges, stored as endpoint pairs sorted by the
/// first coordinate. For bipartite use the pairs are `(a, b)`; for general
/// graphs they are vertex pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn from_pairs(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// First coordinates, sorted ascending.
    pub fn left_vertices(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(a, _)| a).collect()
    }

    /// Second coordinates, sorted ascending.
    pub fn right_vertices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.pairs.iter().map(|&(_, b)| b).collect();
        out.sort_unstable();
        out
    }
}

/// Which of the two problems a solution answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    TwoPm,
    TwoPpm,
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemKind::TwoPm => write!(f, "2pm"),
            ProblemKind::TwoPpm => write!(f, "2ppm"),
        }
    }
}

impl core::str::FromStr for ProblemKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "2pm" => Ok(ProblemKind::TwoPm),
            "2ppm" => Ok(ProblemKind::TwoPpm),
            other => Err(alloc::format!("unknown problem kind `{other}`")),
        }
    }
}

/// A candidate answer: the second-bidder set `S`, the allocated goods `W`,
/// the matching that certifies feasibility, and the claimed profit.
///
/// For [`ProblemKind::TwoPpm`], `w_set` must be all of `A`. The profit is
/// recomputable as `|N(S) ∩ W|`; [`BipartiteInstance::validate_solution`]
/// checks it along with the structural invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub kind: ProblemKind,
    pub s_set: Vec<usize>,
    pub w_set: Vec<usize>,
    pub matching: Matching,
    pub profit: usize,
}

impl Solution {
    /// Assembles a solution, normalizing set order.
    pub fn new(
        kind: ProblemKind,
        mut s_set: Vec<usize>,
        mut w_set: Vec<usize>,
        matching: Matching,
        profit: usize,
    ) -> Self {
        s_set.sort_unstable();
        w_set.sort_unstable();
        Self {
            kind,
            s_set,
            w_set,
            matching,
            profit,
        }
    }
}
