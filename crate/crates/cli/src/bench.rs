//! Benchmark records and the CSV layout.

use spm_core::graph::{BipartiteInstance, ProblemKind};
use spm_core::matching::max_matching_general;
use spm_core::solvers::{build_auxiliary_graph, solve_brute_2pm, solve_brute_2ppm};

pub const CSV_HEADER: &str = "instance,n_a,n_b,algo,profit,optimum,ratio,ms,seed";

/// One row of a benchmark run. Failures keep their row, carrying an error
/// tag in the profit column.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub instance: String,
    pub n_a: Option<usize>,
    pub n_b: Option<usize>,
    pub algo: String,
    pub profit: Result<usize, String>,
    pub optimum: Option<usize>,
    pub ms: u128,
    pub seed: u64,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        let opt = |v: &Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        let profit = match &self.profit {
            Ok(p) => p.to_string(),
            Err(tag) => format!("error:{tag}"),
        };
        let ratio = match (&self.profit, self.optimum) {
            (Ok(p), Some(o)) if o > 0 => format!("{:.3}", *p as f64 / o as f64),
            _ => String::new(),
        };
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.instance,
            opt(&self.n_a),
            opt(&self.n_b),
            self.algo,
            profit,
            opt(&self.optimum),
            ratio,
            self.ms,
            self.seed
        )
    }
}

/// The optimum profit when it can be certified: brute force when the size
/// guards admit it, else a closed form gated on verified degree profiles.
pub fn known_optimum(inst: &BipartiteInstance, kind: ProblemKind) -> Option<usize> {
    let brute = match kind {
        ProblemKind::TwoPpm => solve_brute_2ppm(inst).ok(),
        ProblemKind::TwoPm => solve_brute_2pm(inst).ok(),
    };
    if let Some(sol) = brute {
        return Some(sol.profit);
    }
    if inst.uniform_right_degree() == Some(2) {
        match inst.uniform_left_degree() {
            // n/2 + nu(G') is the 2PPM optimum only
            Some(3) if kind == ProblemKind::TwoPpm => {
                let aux = build_auxiliary_graph(inst).ok()?;
                return Some(inst.n_a() / 2 + max_matching_general(&aux.graph).len());
            }
            Some(d) if d >= 4 => return Some(inst.n_a()),
            _ => {}
        }
    }
    None
}
