//! Triangle-cover experiment on G(n, p).

use serde::Serialize;
use serde_json::json;

use dynachrome_core::coloring::greedy_coloring_by_id;
use dynachrome_core::constructions::triangle_certificate;
use dynachrome_core::generators::gnp;

use crate::error::CliError;
use crate::report::{run_trials, CsvRow, ExperimentReport};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleTrial {
    pub index: usize,
    pub seed: u64,
    pub edges: usize,
    pub vertices_in_triangles: usize,
    pub fraction_in_triangles: f64,
    /// Every vertex lies in a triangle, so the greedy proper coloring is dynamic.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleAggregate {
    pub trials: usize,
    pub certified: usize,
    pub certified_fraction: f64,
    pub mean_fraction_in_triangles: f64,
    /// n (1 - p³)^((n-2)/2), an upper bound on the probability that some
    /// vertex lies in no triangle.
    pub analytic_bound: f64,
}

impl CsvRow for TriangleTrial {
    fn header() -> &'static [&'static str] {
        &["index", "seed", "edges", "vertices_in_triangles", "fraction_in_triangles", "certified"]
    }

    fn row(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            self.seed.to_string(),
            self.edges.to_string(),
            self.vertices_in_triangles.to_string(),
            self.fraction_in_triangles.to_string(),
            self.certified.to_string(),
        ]
    }
}

pub fn triangle_failure_bound(n: usize, p: f64) -> f64 {
    n as f64 * (1.0 - p.powi(3)).powf((n as f64 - 2.0) / 2.0)
}

pub fn aggregate_triangles(trials: &[TriangleTrial], n: usize, p: f64) -> TriangleAggregate {
    let certified = trials.iter().filter(|t| t.certified).count();
    let count = trials.len().max(1) as f64;
    TriangleAggregate {
        trials: trials.len(),
        certified,
        certified_fraction: certified as f64 / count,
        mean_fraction_in_triangles: trials.iter().map(|t| t.fraction_in_triangles).sum::<f64>() / count,
        analytic_bound: triangle_failure_bound(n, p),
    }
}

pub type TriangleReport = ExperimentReport<TriangleTrial, TriangleAggregate>;

pub fn run_gnp_triangle_experiment(n: usize, p: f64, trials: usize, seed: u64) -> Result<TriangleReport, CliError> {
    if n < 3 || !(p > 0.0 && p < 1.0) || trials < 1 {
        return Err(CliError::Input(format!(
            "need n >= 3, 0 < p < 1 and trials >= 1, got n={n}, p={p}, trials={trials}"
        )));
    }
    let results = run_trials(trials, seed, |index, s| -> Result<TriangleTrial, CliError> {
        let g = gnp(n, p, s).map_err(CliError::input)?;
        let covered = g.vertices_in_triangles().len();
        let cert = triangle_certificate(&g, &greedy_coloring_by_id(&g))
            .map_err(|e| CliError::Verification(format!("trial {index}: {e}")))?;
        Ok(TriangleTrial {
            index,
            seed: s,
            edges: g.edge_count(),
            vertices_in_triangles: covered,
            fraction_in_triangles: covered as f64 / n as f64,
            certified: cert.certified,
        })
    });
    let trials_out = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(ExperimentReport {
        version: crate::report::REPORT_VERSION,
        experiment: "gnp_triangles",
        parameters: json!({ "n": n, "p": p, "trials": trials }),
        seed,
        aggregate: aggregate_triangles(&trials_out, n, p),
        trials: trials_out,
    })
}
