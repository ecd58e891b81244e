//! The max-k-cover gadget.
//!
//! `N` identically wired copies of the universe sit on the goods side, each
//! element with a private bidder; the sets of the family become bidders; and
//! `m - k` dummy goods bid-adjacent to every set node force exactly `k` set
//! nodes to stay unsaturated. The optimal profit is `N * OPT_MC + (m - k)`.

use alloc::vec::Vec;

use crate::graph::BipartiteInstance;
use crate::solvers::solve_brute_2ppm;

use super::{brute_max_k_cover, ReductionError};

/// A 2PPM instance encoding a max-k-cover source.
#[derive(Debug, Clone)]
pub struct KcGadget {
    pub instance: BipartiteInstance,
    pub universe_n: usize,
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
    pub n_copies: usize,
}

impl KcGadget {
    /// The good for element `j` of universe copy `i`.
    pub fn copy_element(&self, i: usize, j: usize) -> usize {
        i * self.universe_n + j
    }

    /// The dummy good `t` (adjacent to every set node).
    pub fn dummy(&self, t: usize) -> usize {
        self.n_copies * self.universe_n + t
    }

    /// The bidder for set `t` of the family.
    pub fn set_node(&self, t: usize) -> usize {
        t
    }

    /// The private bidder of element `j` in copy `i`.
    pub fn private(&self, i: usize, j: usize) -> usize {
        self.sets.len() + i * self.universe_n + j
    }
}

/// Builds the gadget. Set contents are normalized (sorted, deduplicated);
/// empty sets are allowed and keep only their dummy edges.
pub fn kcover_gadget(
    universe_n: usize,
    sets: &[Vec<usize>],
    k: usize,
    n_copies: usize,
) -> Result<KcGadget, ReductionError> {
    let m = sets.len();
    if k > m {
        return Err(ReductionError::BadCoverParams { k, m });
    }
    if n_copies == 0 {
        return Err(ReductionError::NoCopies);
    }
    let mut normalized = Vec::with_capacity(m);
    for set in sets {
        let mut s = set.clone();
        s.sort_unstable();
        s.dedup();
        if let Some(&e) = s.iter().find(|&&e| e >= universe_n) {
            return Err(ReductionError::ElementOutOfRange {
                element: e,
                universe: universe_n,
            });
        }
        normalized.push(s);
    }

    let copy_element = |i: usize, j: usize| i * universe_n + j;
    let dummy = |t: usize| n_copies * universe_n + t;
    let private = |i: usize, j: usize| m + i * universe_n + j;
    let mut edges = Vec::new();
    for i in 0..n_copies {
        for (t, set) in normalized.iter().enumerate() {
            for &j in set {
                edges.push((copy_element(i, j), t));
            }
        }
        for j in 0..universe_n {
            edges.push((copy_element(i, j), private(i, j)));
        }
    }
    for t in 0..m - k {
        for s in 0..m {
            edges.push((dummy(t), s));
        }
    }
    let n_a = n_copies * universe_n + (m - k);
    let n_b = n_copies * universe_n + m;
    let instance =
        BipartiteInstance::new(n_a, n_b, &edges).expect("gadget edges are distinct and in range");
    Ok(KcGadget {
        instance,
        universe_n,
        sets: normalized,
        k,
        n_copies,
    })
}

/// Both sides of `OPT_2PPM = N * OPT_MC + (m - k)`, brute-forced
/// independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KcoverIdentityReport {
    pub opt_2ppm: usize,
    pub opt_mc: usize,
    pub n_copies: usize,
    pub dummies: usize,
}

impl KcoverIdentityReport {
    pub fn holds(&self) -> bool {
        self.opt_2ppm == self.n_copies * self.opt_mc + self.dummies
    }
}

pub fn certify_kcover_identity(g: &KcGadget) -> Result<KcoverIdentityReport, ReductionError> {
    let opt_mc = brute_max_k_cover(&g.sets, g.k)?;
    let opt_2ppm = solve_brute_2ppm(&g.instance)
        .map_err(ReductionError::Solve)?
        .profit;
    Ok(KcoverIdentityReport {
        opt_2ppm,
        opt_mc,
        n_copies: g.n_copies,
        dummies: g.sets.len() - g.k,
    })
}
