//! Named 3-regular source graphs accepted by `generate --type vc-gadget`.

use spm_core::graph::Multigraph;

/// `k4`, `k33`, or `petersen`; anything else is treated as a file path by
/// the caller.
pub fn builtin_source(name: &str) -> Option<Multigraph> {
    let edges: Vec<(usize, usize)> = match name {
        "k4" => vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        "k33" => (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect(),
        "petersen" => {
            let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
            e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
            e.extend((0..5).map(|i| (i, 5 + i)));
            e
        }
        _ => return None,
    };
    let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Some(Multigraph::new(n, edges).expect("builtin sources are loop-free"))
}
