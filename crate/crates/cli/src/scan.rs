//! Search for instances with χ_d - χ > 2.
//!
//! Cubic graphs are drawn by seeded random sampling and deduplicated up to
//! isomorphism; this is not an exhaustive enumeration.

use std::fmt;
use std::str::FromStr;

use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;
use serde::Serialize;
use serde_json::json;

use dynachrome_core::constructions::kneser_dynamic_coloring;
use dynachrome_core::exact::{chromatic_number, dynamic_chromatic_number};
use dynachrome_core::generators::{cycle, kneser, random_regular, KneserSpec, DEFAULT_REGULAR_RETRIES};
use dynachrome_core::verify::{check_dynamic, check_proper};
use dynachrome_core::{Coloring, Graph};

use crate::error::CliError;
use crate::report::{opt, run_trials, CsvRow, ExperimentReport, REPORT_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanFamily {
    /// Connected cubic graphs on 4..=max_n vertices, `samples` draws.
    Cubic { max_n: usize, samples: usize },
    RandomRegular { n: usize, k: usize, trials: usize },
    /// C5, the Petersen graph, and KG(7,3) through its construction.
    Fixtures,
}

impl fmt::Display for ScanFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanFamily::Cubic { max_n, samples } => write!(f, "cubic:{max_n},{samples}"),
            ScanFamily::RandomRegular { n, k, trials } => write!(f, "regular:{n},{k},{trials}"),
            ScanFamily::Fixtures => write!(f, "fixtures"),
        }
    }
}

impl FromStr for ScanFamily {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let nums: Vec<usize> = args
            .split(',')
            .filter(|a| !a.trim().is_empty())
            .map(|a| a.trim().parse().map_err(|_| CliError::Input(format!("{s}: {a:?} is not an integer"))))
            .collect::<Result<_, _>>()?;
        match (name, nums.as_slice()) {
            ("cubic", &[max_n, samples]) => Ok(ScanFamily::Cubic { max_n, samples }),
            ("regular", &[n, k, trials]) => Ok(ScanFamily::RandomRegular { n, k, trials }),
            ("fixtures", &[]) => Ok(ScanFamily::Fixtures),
            _ => Err(CliError::Input(format!(
                "unknown scan family {s:?}; expected cubic:MAX_N,SAMPLES, regular:N,K,TRIALS or fixtures"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanStatus {
    /// Both χ and χ_d solved exactly.
    Solved,
    /// χ exact, χ_d only bounded above by a construction.
    Constructed,
    /// A solver ran out of budget; the instance is skipped.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRecord {
    pub index: usize,
    pub label: String,
    pub seed: Option<u64>,
    pub n: usize,
    pub edges: usize,
    pub status: ScanStatus,
    pub chi: Option<usize>,
    /// Exact when `status` is `solved`, an upper bound when `constructed`.
    pub chi_d: Option<usize>,
    pub gap: Option<i64>,
    pub counterexample_candidate: bool,
    pub chi_witness: Option<Vec<usize>>,
    pub chi_d_witness: Option<Vec<usize>>,
}

impl CsvRow for ScanRecord {
    fn header() -> &'static [&'static str] {
        &["index", "label", "seed", "n", "edges", "status", "chi", "chi_d", "gap", "counterexample_candidate"]
    }

    fn row(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            self.label.clone(),
            opt(&self.seed),
            self.n.to_string(),
            self.edges.to_string(),
            serde_json::to_value(self.status).unwrap().as_str().unwrap().to_string(),
            opt(&self.chi),
            opt(&self.chi_d),
            opt(&self.gap),
            self.counterexample_candidate.to_string(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanAggregate {
    pub instances: usize,
    pub solved: usize,
    pub constructed: usize,
    pub skipped: usize,
    pub max_gap: Option<i64>,
    pub candidates: usize,
    /// Sampled graphs dropped as disconnected or isomorphic to an earlier one.
    pub discarded_samples: usize,
}

pub type ScanReport = ExperimentReport<ScanRecord, ScanAggregate>;

pub fn aggregate_scan(records: &[ScanRecord], discarded_samples: usize) -> ScanAggregate {
    let count = |s| records.iter().filter(|r| r.status == s).count();
    ScanAggregate {
        instances: records.len(),
        solved: count(ScanStatus::Solved),
        constructed: count(ScanStatus::Constructed),
        skipped: count(ScanStatus::BudgetExhausted),
        max_gap: records.iter().filter_map(|r| r.gap).max(),
        candidates: records.iter().filter(|r| r.counterexample_candidate).count(),
        discarded_samples,
    }
}

struct Instance {
    label: String,
    seed: Option<u64>,
    graph: Graph,
    kneser: Option<KneserSpec>,
}

fn petgraph_of(g: &Graph) -> UnGraph<(), ()> {
    let edges: Vec<(u32, u32)> = g.edges().map(|(u, v)| (u as u32, v as u32)).collect();
    let mut pg = UnGraph::with_capacity(g.n(), edges.len());
    for _ in 0..g.n() {
        pg.add_node(());
    }
    pg.extend_with_edges(edges);
    pg
}

/// Keeps the first connected representative of each isomorphism class.
fn dedup_connected(candidates: Vec<Instance>) -> (Vec<Instance>, usize) {
    let mut kept: Vec<(Instance, UnGraph<(), ()>)> = Vec::new();
    let mut dropped = 0;
    for inst in candidates {
        if !inst.graph.is_connected() {
            dropped += 1;
            continue;
        }
        let pg = petgraph_of(&inst.graph);
        let dup = kept.iter().any(|(k, kpg)| {
            k.graph.n() == inst.graph.n() && k.graph.edge_count() == inst.graph.edge_count() && is_isomorphic(kpg, &pg)
        });
        if dup {
            dropped += 1;
        } else {
            kept.push((inst, pg));
        }
    }
    (kept.into_iter().map(|(i, _)| i).collect(), dropped)
}

fn sample_instances(family: ScanFamily, seed: u64) -> Result<(Vec<Instance>, usize), CliError> {
    match family {
        ScanFamily::Cubic { max_n, samples } => {
            if !(4..=12).contains(&max_n) {
                return Err(CliError::Input(format!("cubic scan needs 4 <= max_n <= 12, got {max_n}")));
            }
            let orders: Vec<usize> = (4..=max_n).step_by(2).collect();
            let drawn = run_trials(samples, seed, |i, s| {
                let n = orders[i % orders.len()];
                random_regular(n, 3, s, DEFAULT_REGULAR_RETRIES).map(|graph| Instance {
                    label: format!("cubic:{n}"),
                    seed: Some(s),
                    graph,
                    kneser: None,
                })
            });
            let drawn = drawn.into_iter().collect::<Result<Vec<_>, _>>().map_err(CliError::input)?;
            Ok(dedup_connected(drawn))
        }
        ScanFamily::RandomRegular { n, k, trials } => {
            let drawn = run_trials(trials, seed, |_, s| {
                random_regular(n, k, s, DEFAULT_REGULAR_RETRIES).map(|graph| Instance {
                    label: format!("regular:{n},{k}"),
                    seed: Some(s),
                    graph,
                    kneser: None,
                })
            });
            let drawn = drawn.into_iter().collect::<Result<Vec<_>, _>>().map_err(CliError::input)?;
            Ok((drawn, 0))
        }
        ScanFamily::Fixtures => {
            let fixed = |label: &str, graph: Graph, kneser: Option<KneserSpec>| Instance {
                label: label.to_string(),
                seed: None,
                graph,
                kneser,
            };
            Ok((
                vec![
                    fixed("cycle:5", cycle(5).expect("valid"), None),
                    fixed("kneser:5,2", kneser(5, 2).expect("valid"), None),
                    fixed("kneser:7,3", kneser(7, 3).expect("valid"), KneserSpec::new(7, 3).ok()),
                ],
                0,
            ))
        }
    }
}

fn verified(g: &Graph, c: &Coloring, dynamic: bool, label: &str) -> Result<Vec<usize>, CliError> {
    let violations = if dynamic { check_dynamic(g, c) } else { check_proper(g, c) }
        .map_err(|e| CliError::Verification(format!("{label}: {e}")))?;
    if !violations.is_empty() {
        return Err(CliError::Verification(format!(
            "{label}: solver witness fails its check ({} violations)",
            violations.len()
        )));
    }
    Ok(c.to_vec().expect("solver witnesses are total"))
}

fn solve_instance(index: usize, inst: &Instance, budget: u64) -> Result<ScanRecord, CliError> {
    let g = &inst.graph;
    let mut rec = ScanRecord {
        index,
        label: inst.label.clone(),
        seed: inst.seed,
        n: g.n(),
        edges: g.edge_count(),
        status: ScanStatus::BudgetExhausted,
        chi: None,
        chi_d: None,
        gap: None,
        counterexample_candidate: false,
        chi_witness: None,
        chi_d_witness: None,
    };
    let chi = chromatic_number(g, budget);
    if chi.exhausted {
        return Ok(rec);
    }
    rec.chi = Some(chi.value);
    rec.chi_witness = Some(verified(g, &chi.witness, false, &inst.label)?);

    let (chi_d, witness, status) = match inst.kneser {
        Some(spec) => {
            let k = kneser_dynamic_coloring(spec).map_err(|e| CliError::Verification(e.to_string()))?;
            (k.colors_used, k.coloring, ScanStatus::Constructed)
        }
        None => {
            let r = dynamic_chromatic_number(g, budget);
            if r.exhausted {
                rec.chi = None;
                rec.chi_witness = None;
                return Ok(rec);
            }
            (r.value, r.witness, ScanStatus::Solved)
        }
    };
    rec.chi_d_witness = Some(verified(g, &witness, true, &inst.label)?);
    rec.chi_d = Some(chi_d);
    rec.status = status;
    let gap = chi_d as i64 - chi.value as i64;
    rec.gap = Some(gap);
    // Both witnesses were re-verified above; only exact gaps can refute.
    rec.counterexample_candidate = status == ScanStatus::Solved && gap > 2;
    if rec.counterexample_candidate {
        log::warn!("{}: χ_d - χ = {gap} exceeds 2", inst.label);
    }
    Ok(rec)
}

pub fn conjecture_scan(family: ScanFamily, seed: u64, budget: u64) -> Result<ScanReport, CliError> {
    let (instances, discarded) = sample_instances(family, seed)?;
    let records = run_trials(instances.len(), seed, |i, _| solve_instance(i, &instances[i], budget))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ExperimentReport {
        version: REPORT_VERSION,
        experiment: "conjecture_scan",
        parameters: json!({ "family": family.to_string(), "budget": budget }),
        seed,
        aggregate: aggregate_scan(&records, discarded),
        trials: records,
    })
}
