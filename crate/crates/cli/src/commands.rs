//! Subcommand definitions and their implementations.

use std::fs::File;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use dynachrome_core::bounds::{bound_report, BoundContext};
use dynachrome_core::coloring::greedy_coloring_by_id;
use dynachrome_core::constructions::{
    balanced_subset_coloring, double_total_coloring, kneser_dynamic_coloring, neighborhood_product_coloring,
    ConstructionError,
};
use dynachrome_core::exact::{
    chromatic_number, dynamic_chromatic_number, exact_double_total_dominating, is_k_critical, ExactError, Outcome,
    DEFAULT_BUDGET,
};
use dynachrome_core::generators::KneserSpec;
use dynachrome_core::io::{write_dimacs, write_edge_list};
use dynachrome_core::lll::{
    intersecting_neighborhoods, lll_condition_list, select_sublists, LllError, LllParams, DEFAULT_C_PRIME,
};
use dynachrome_core::verify::{
    check_domination, check_dynamic, check_list_respecting, check_proper, DominationMode, Violation,
};
use dynachrome_core::{ListAssignment, VertexSubset};

use crate::document::{Certificate, ColoringDocument};
use crate::error::CliError;
use crate::experiments::run_gnp_triangle_experiment;
use crate::input::{load, LoadedGraph};
use crate::report::{write_csv, CsvRow};
use crate::scan::{conjecture_scan, ScanFamily};

#[derive(Debug, Parser)]
#[command(name = "dynachrome", version, about = "Dynamic graph coloring: solve, construct, verify, experiment")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Search-node budget for exact solvers.
    #[arg(long, env = "DYNACHROME_BUDGET", default_value_t = DEFAULT_BUDGET, global = true)]
    pub budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// DIMACS (`p edge n m`) or 0-based edge-list file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Generator spec such as `cycle:5`, `kneser:7,3`, `gnp:200,0.5`, `regular:100,9`.
    #[arg(long)]
    pub family: Option<String>,
}

impl GraphArgs {
    fn load(&self, seed: u64) -> Result<LoadedGraph, CliError> {
        load(self.graph.as_deref(), self.family.as_deref(), seed)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dimacs)]
        output: GraphFormat,
    },
    /// Solve an invariant exactly.
    Solve {
        #[command(flatten)]
        input: GraphArgs,
        #[arg(long, value_enum, default_value_t = Problem::Dynamic)]
        problem: Problem,
    },
    /// Report the upper bounds whose hypotheses hold.
    Bounds {
        #[command(flatten)]
        input: GraphArgs,
        /// Known chromatic number.
        #[arg(long)]
        chi: Option<usize>,
        /// Treat the graph as KG(M, N), given as `M,N`.
        #[arg(long)]
        kneser: Option<String>,
        /// JSON vertex subset claimed to be double total dominating.
        #[arg(long)]
        double_total: Option<PathBuf>,
        /// JSON vertex subset claimed to be total dominating.
        #[arg(long)]
        total: Option<PathBuf>,
    },
    /// Build a certified dynamic coloring.
    Construct {
        #[command(subcommand)]
        which: Construction,
    },
    /// Check a certificate against a graph.
    Verify {
        #[command(flatten)]
        input: GraphArgs,
        /// Coloring document to check.
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ColoringCheck::Dynamic)]
        check: ColoringCheck,
        /// Lists the coloring must respect.
        #[arg(long)]
        lists: Option<PathBuf>,
        /// Vertex subset to check for domination.
        #[arg(long)]
        subset: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Domination::DoubleTotal)]
        domination: Domination,
    },
    /// Run a statistical experiment.
    Experiment {
        #[command(subcommand)]
        which: Experiment,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dimacs,
    Edges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Chromatic,
    Dynamic,
    DoubleTotal,
    Critical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColoringCheck {
    Proper,
    Dynamic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Domination {
    Total,
    DoubleTotal,
}

#[derive(Debug, Subcommand)]
pub enum Construction {
    /// KG(m, n) with 2n < m < 3n, at most m - 2n + 4 colors.
    Kneser {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Balanced subset on a k-regular graph.
    Balanced {
        #[command(flatten)]
        input: GraphArgs,
        #[arg(long, default_value_t = DEFAULT_C_PRIME)]
        c_prime: f64,
    },
    /// Double total dominating set with exact colorings of both sides.
    DoubleTotal {
        #[command(flatten)]
        input: GraphArgs,
    },
    /// Pair coloring of a greedy coloring with a neighbourhood 2-coloring.
    Product {
        #[command(flatten)]
        input: GraphArgs,
    },
    /// l-sublists of identical m-lists with empty neighbourhood intersections.
    Sublists {
        #[command(flatten)]
        input: GraphArgs,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        l: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum Experiment {
    /// Fraction of G(n, p) samples in which every vertex lies in a triangle.
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Also write per-trial rows as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Exact χ and χ_d over a family, flagging gaps above 2.
    Scan {
        /// `cubic:MAX_N,SAMPLES`, `regular:N,K,TRIALS` or `fixtures`.
        #[arg(long)]
        family: String,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// What a command prints, and the exit code it ends with.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub json: Value,
    pub text: String,
    pub exit_code: i32,
}

impl Output {
    fn ok(json: Value, text: impl Into<String>) -> Self {
        Self {
            json,
            text: text.into(),
            exit_code: 0,
        }
    }

    fn with_code(mut self, code: i32) -> Self {
        self.exit_code = code;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("values serialise"),
            Format::Text => self.text.clone(),
        }
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialise")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn construction_error(e: ConstructionError) -> CliError {
    match e {
        ConstructionError::VerificationFailed(_) => CliError::Verification(e.to_string()),
        ConstructionError::Exhausted { .. } => CliError::Budget(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

fn lll_error(e: LllError) -> CliError {
    CliError::Input(e.to_string())
}

fn dynamic_certificate(g: &dynachrome_core::Graph, c: &dynachrome_core::Coloring) -> Certificate {
    Certificate::from_violations("dynamic", check_dynamic(g, c).expect("constructions return total colorings"))
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let seed = cli.seed;
    let budget = cli.budget;
    match &cli.command {
        Command::Gen { family, output } => {
            let g = load(None, Some(family), seed)?;
            let body = match output {
                GraphFormat::Dimacs => write_dimacs(&g.graph),
                GraphFormat::Edges => write_edge_list(&g.graph),
            };
            Ok(Output::ok(
                json!({ "graph_id": g.id, "n": g.graph.n(), "edges": g.graph.edge_count(), "text": body }),
                body,
            ))
        }
        Command::Solve { input, problem } => solve(&input.load(seed)?, *problem, budget),
        Command::Bounds {
            input,
            chi,
            kneser,
            double_total,
            total,
        } => {
            let g = input.load(seed)?;
            let mut ctx = BoundContext::new(budget);
            ctx.chi = *chi;
            ctx.kneser = match kneser {
                Some(s) => Some(parse_kneser(s)?),
                None => g.family.as_ref().and_then(|f| match f {
                    dynachrome_core::generators::GraphFamily::Kneser(m, n) => KneserSpec::new(*m, *n).ok(),
                    _ => None,
                }),
            };
            ctx.double_total_dominating = double_total.as_deref().map(read_json).transpose()?;
            ctx.total_dominating = total.as_deref().map(read_json).transpose()?;
            for s in [&ctx.double_total_dominating, &ctx.total_dominating].into_iter().flatten() {
                if s.host_size() != g.graph.n() {
                    return Err(CliError::Input(format!(
                        "subset is over {} vertices, graph has {}",
                        s.host_size(),
                        g.graph.n()
                    )));
                }
            }
            let report = bound_report(&g.graph, &ctx);
            let mut text = format!("{}\n", g.id);
            for r in &report.records {
                text += &format!(
                    "{:<16} {:<12} {:>5}  {}\n",
                    r.name,
                    if r.applicable { "applicable" } else { "n/a" },
                    r.value.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
                    r.note
                );
            }
            Ok(Output::ok(json!({ "graph_id": g.id, "bounds": report }), text))
        }
        Command::Construct { which } => construct(which, seed, budget),
        Command::Verify {
            input,
            coloring,
            check,
            lists,
            subset,
            domination,
        } => {
            let g = input.load(seed)?;
            let mut certs = Vec::new();
            if let Some(path) = coloring {
                let doc: ColoringDocument = read_json(path)?;
                let c = doc.coloring()?;
                let v = match check {
                    ColoringCheck::Proper => check_proper(&g.graph, &c),
                    ColoringCheck::Dynamic => check_dynamic(&g.graph, &c),
                }
                .map_err(CliError::input)?;
                let kind = match check {
                    ColoringCheck::Proper => "proper",
                    ColoringCheck::Dynamic => "dynamic",
                };
                certs.push(Certificate::from_violations(kind, v));
                if let Some(lp) = lists {
                    let la: ListAssignment = read_json(lp)?;
                    let v = check_list_respecting(&g.graph, &la, &c).map_err(CliError::input)?;
                    certs.push(Certificate::from_violations("list", v));
                }
            } else if lists.is_some() {
                return Err(CliError::Input("--lists needs --coloring".into()));
            }
            if let Some(path) = subset {
                let t: VertexSubset = read_json(path)?;
                if t.host_size() != g.graph.n() {
                    return Err(CliError::Input(format!(
                        "subset is over {} vertices, graph has {}",
                        t.host_size(),
                        g.graph.n()
                    )));
                }
                let (mode, kind) = match domination {
                    Domination::Total => (DominationMode::Total, "total_domination"),
                    Domination::DoubleTotal => (DominationMode::DoubleTotal, "double_total_domination"),
                };
                certs.push(Certificate::from_violations(kind, check_domination(&g.graph, &t, mode)));
            }
            if certs.is_empty() {
                return Err(CliError::Input("nothing to verify: give --coloring and/or --subset".into()));
            }
            let all = certs.iter().all(|c| c.holds);
            let text = certs
                .iter()
                .map(|c| {
                    let head = format!("{}: {}", c.kind, if c.holds { "ok" } else { "FAILED" });
                    if c.holds {
                        head
                    } else {
                        format!("{head}\n{}", describe(&c.violations))
                    }
                })
                .collect::<Vec<_>>()
                .join("\n");
            let out = Output::ok(json!({ "graph_id": g.id, "valid": all, "certificates": certs }), text);
            Ok(if all { out } else { out.with_code(3) })
        }
        Command::Experiment { which } => experiment(which, seed, budget),
    }
}

fn parse_kneser(s: &str) -> Result<KneserSpec, CliError> {
    let (m, n) = s
        .split_once(',')
        .ok_or_else(|| CliError::Input(format!("expected M,N, got {s:?}")))?;
    let m = m.trim().parse().map_err(CliError::input)?;
    let n = n.trim().parse().map_err(CliError::input)?;
    KneserSpec::new(m, n).map_err(CliError::input)
}

fn solve(g: &LoadedGraph, problem: Problem, budget: u64) -> Result<Output, CliError> {
    let graph = &g.graph;
    match problem {
        Problem::Chromatic | Problem::Dynamic => {
            let (r, name) = if problem == Problem::Chromatic {
                (chromatic_number(graph, budget), "chromatic")
            } else {
                (dynamic_chromatic_number(graph, budget), "dynamic")
            };
            let cert = if problem == Problem::Chromatic {
                Certificate::from_violations("proper", check_proper(graph, &r.witness).map_err(CliError::input)?)
            } else {
                dynamic_certificate(graph, &r.witness)
            };
            if !cert.holds {
                return Err(CliError::Verification(format!("{name} witness fails its check")));
            }
            let doc = ColoringDocument::new(g.id.clone(), &r.witness, vec![cert]);
            let text = if r.exhausted {
                format!("{}: {name} number in [{}, {}] (budget exhausted)", g.id, r.lower_bound, r.value)
            } else {
                format!("{}: {name} number = {}", g.id, r.value)
            };
            let out = Output::ok(json!({ "problem": name, "result": r, "coloring": doc }), text);
            Ok(if r.exhausted { out.with_code(2) } else { out })
        }
        Problem::DoubleTotal => {
            let r = exact_double_total_dominating(graph, budget);
            let (json_outcome, text, code) = match &r.outcome {
                Outcome::Found(t) => (json!({ "found": t }), format!("{}: double total dominating set {:?}", g.id, t.members()), 0),
                Outcome::Infeasible => (json!({ "found": null, "infeasible": true }), format!("{}: none exists", g.id), 0),
                Outcome::BudgetExhausted => (json!({ "found": null, "infeasible": false }), format!("{}: budget exhausted", g.id), 2),
            };
            Ok(Output::ok(
                json!({ "problem": "double_total", "graph_id": g.id, "nodes_explored": r.nodes_explored, "outcome": json_outcome }),
                text,
            )
            .with_code(code))
        }
        Problem::Critical => match is_k_critical(graph, budget) {
            Ok(c) => Ok(Output::ok(
                json!({ "problem": "critical", "graph_id": g.id, "result": c }),
                format!("{}: χ = {}, {}critical", g.id, c.k, if c.critical { "" } else { "not " }),
            )),
            Err(ExactError::BudgetExhausted { nodes_explored }) => Err(CliError::Budget(format!(
                "criticality undecided after {nodes_explored} nodes"
            ))),
            Err(e) => Err(CliError::input(e)),
        },
    }
}

fn construct(which: &Construction, seed: u64, budget: u64) -> Result<Output, CliError> {
    match which {
        Construction::Kneser { m, n } => {
            let spec = KneserSpec::new(*m, *n).map_err(CliError::input)?;
            let k = kneser_dynamic_coloring(spec).map_err(construction_error)?;
            let id = format!("kneser:{m},{n}");
            let cert = dynamic_certificate(&k.graph, &k.coloring).with_detail(json!({
                "colors_used": k.colors_used,
                "bound": spec.t() + 4,
                "chi": spec.chromatic_number(),
                "two_coloring": k.two_coloring,
                "subset_size": k.subset.len(),
            }));
            let doc = ColoringDocument::new(id.clone(), &k.coloring, vec![cert]);
            Ok(Output::ok(
                to_value(&doc),
                format!("{id}: {} colors (bound {}, χ = {})", k.colors_used, spec.t() + 4, spec.chromatic_number()),
            ))
        }
        Construction::Balanced { input, c_prime } => {
            let g = input.load(seed)?;
            let k = g
                .graph
                .regular_degree()
                .ok_or_else(|| CliError::Input("balanced construction needs a regular graph".into()))?;
            let params = LllParams::new(k, *c_prime, seed).map_err(lll_error)?;
            let chi = greedy_coloring_by_id(&g.graph);
            let out = balanced_subset_coloring(&g.graph, &params, &chi).map_err(construction_error)?;
            let cert = dynamic_certificate(&g.graph, &out.coloring).with_detail(json!({
                "colors": out.coloring.palette_size(),
                "bound": out.color_bound,
                "greedy_chi": chi.palette_size(),
                "subset_size": out.subset.len(),
                "params": out.params,
                "resamples": out.log.resample_count,
            }));
            let doc = ColoringDocument::new(g.id.clone(), &out.coloring, vec![cert]);
            Ok(Output::ok(
                to_value(&doc),
                format!("{}: {} colors (bound {})", g.id, out.coloring.palette_size(), out.color_bound),
            ))
        }
        Construction::DoubleTotal { input } => {
            let g = input.load(seed)?;
            let out = double_total_coloring(&g.graph, seed, None, budget).map_err(construction_error)?;
            let cert = dynamic_certificate(&g.graph, &out.coloring).with_detail(json!({
                "subset": out.subset,
                "chi_inside": out.chi_inside,
                "chi_outside": out.chi_outside,
                "resamples": out.log.resample_count,
            }));
            let dt = Certificate::from_violations(
                "double_total_domination",
                check_domination(&g.graph, &out.subset, DominationMode::DoubleTotal),
            );
            let doc = ColoringDocument::new(g.id.clone(), &out.coloring, vec![cert, dt]);
            Ok(Output::ok(
                to_value(&doc),
                format!("{}: {} colors = χ(T) {} + χ(V∖T) {}", g.id, out.coloring.palette_size(), out.chi_inside, out.chi_outside),
            ))
        }
        Construction::Product { input } => {
            let g = input.load(seed)?;
            let c = greedy_coloring_by_id(&g.graph);
            let (h, log) = neighborhood_product_coloring(&g.graph, &c, seed, None).map_err(construction_error)?;
            let cert = dynamic_certificate(&g.graph, &h)
                .with_detail(json!({ "base_colors": c.palette_size(), "resamples": log.resample_count }));
            let doc = ColoringDocument::new(g.id.clone(), &h, vec![cert]);
            Ok(Output::ok(to_value(&doc), format!("{}: {} colors from {} base colors", g.id, h.palette_size(), c.palette_size())))
        }
        Construction::Sublists { input, m, l } => {
            let g = input.load(seed)?;
            let lists = ListAssignment::uniform(g.graph.n(), 0..*m);
            let run = select_sublists(&g.graph, &lists, *l, seed, None).map_err(lll_error)?;
            let condition = g
                .graph
                .regular_degree()
                .and_then(|k| lll_condition_list(k, *l, *m).ok());
            let log = run.log.clone();
            let sub = run.into_success().ok_or_else(|| {
                CliError::Budget(format!("sublist selection exhausted after {} resamples", log.resample_count))
            })?;
            let bad = intersecting_neighborhoods(&g.graph, &sub);
            if !bad.is_empty() {
                return Err(CliError::Verification(format!("{} neighbourhoods still intersect", bad.len())));
            }
            Ok(Output::ok(
                json!({ "graph_id": g.id, "lists": sub, "condition": condition, "log": log }),
                format!("{}: sublists of size {l} found after {} resamples", g.id, log.resample_count),
            ))
        }
    }
}

fn experiment(which: &Experiment, seed: u64, budget: u64) -> Result<Output, CliError> {
    match which {
        Experiment::Gnp { n, p, trials, csv } => {
            let r = run_gnp_triangle_experiment(*n, *p, *trials, seed)?;
            maybe_csv(csv.as_deref(), &r.trials)?;
            let a = &r.aggregate;
            Ok(Output::ok(
                to_value(&r),
                format!(
                    "G({n}, {p}): {}/{} certified, mean triangle coverage {:.4}, analytic bound {:.3e}",
                    a.certified, a.trials, a.mean_fraction_in_triangles, a.analytic_bound
                ),
            ))
        }
        Experiment::Scan { family, csv } => {
            let fam: ScanFamily = family.parse()?;
            let r = conjecture_scan(fam, seed, budget)?;
            maybe_csv(csv.as_deref(), &r.trials)?;
            let a = &r.aggregate;
            Ok(Output::ok(
                to_value(&r),
                format!(
                    "{fam}: {} instances, {} solved, {} constructed, {} skipped, max gap {}, {} candidates",
                    a.instances,
                    a.solved,
                    a.constructed,
                    a.skipped,
                    a.max_gap.map(|g| g.to_string()).unwrap_or_else(|| "-".into()),
                    a.candidates
                ),
            ))
        }
    }
}

fn maybe_csv<R: CsvRow>(path: Option<&Path>, rows: &[R]) -> Result<(), CliError> {
    if let Some(p) = path {
        write_csv(rows, File::create(p)?)?;
    }
    Ok(())
}

/// Violations rendered one per line, for text output.
pub fn describe(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| format!("{:?} {:?}", v.kind, v.witness))
        .collect::<Vec<_>>()
        .join("\n")
}
