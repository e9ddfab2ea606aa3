//! Local-lemma conditions and Moser–Tardos resampling.
//!
//! Each construction is an event system: a vector of independent random
//! variables and a family of bad events, each determined by a fixed set of
//! variables. The engine samples every variable, then repeatedly takes the
//! lowest-indexed bad event that currently holds and resamples exactly its
//! variables, until no bad event holds or the resample cap is reached.

use std::collections::BTreeSet;
use std::f64::consts::E;

use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::coloring::{Color, Coloring, ListAssignment};
use crate::graph::{Graph, Vertex};
use crate::hypergraph::Hypergraph;
use crate::rng::{seeded, SeededRng};
use crate::subset::VertexSubset;

/// Resample cap per bad event when the caller gives none.
pub const RESAMPLES_PER_EVENT: u64 = 1000;

/// Default c' for the balanced-subset construction.
pub const DEFAULT_C_PRIME: f64 = 7.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LllError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("graph is not regular")]
    NotRegular,
    #[error("vertex {vertex} has degree {degree}; a double total dominating set needs degree >= 2 everywhere")]
    ImpossibleStructure { vertex: Vertex, degree: usize },
    #[error("sampling probability p = {p} is outside (0, 1); clamp it first")]
    DegenerateProbability { p: f64 },
    #[error("list at vertex {vertex} has {len} colors, fewer than l = {l}")]
    ListTooShort { vertex: Vertex, len: usize, l: usize },
    #[error("list assignment covers {lists} vertices, graph has {n}")]
    ListCountMismatch { lists: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionCheck {
    pub holds: bool,
    /// Left-hand side of the inequality; the condition holds iff it is ≤ 1.
    pub margin: f64,
}

/// e · r2 · Δ(H) · (1/2)^(r1 - 1) ≤ 1, the symmetric local-lemma condition
/// for 2-coloring a hypergraph with edge sizes in [r1, r2].
pub fn lll_condition_hypergraph(r1: usize, r2: usize, max_degree: usize) -> Result<ConditionCheck, LllError> {
    if r1 < 2 || r1 > r2 || max_degree < 1 {
        return Err(LllError::InvalidParameters(format!(
            "need 2 <= r1 <= r2 and max degree >= 1, got r1={r1}, r2={r2}, max degree={max_degree}"
        )));
    }
    let ln = 1.0 + (r2 as f64).ln() + (max_degree as f64).ln() - (r1 as f64 - 1.0) * std::f64::consts::LN_2;
    let margin = ln.exp();
    Ok(ConditionCheck {
        holds: margin <= 1.0,
        margin,
    })
}

/// e · Δ² ≤ 2^(δ - 1): the hypergraph condition applied to the neighbourhood
/// hypergraph of a graph, where r1 = δ and r2 = Δ(H) = Δ. Fails for δ < 2.
pub fn lll_condition_graph(max_degree: usize, min_degree: usize) -> ConditionCheck {
    lll_condition_hypergraph(min_degree, max_degree, max_degree).unwrap_or(ConditionCheck {
        holds: false,
        margin: f64::INFINITY,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ListConditionCheck {
    pub holds: bool,
    /// e · k² · m · (l/m)^k.
    pub margin: f64,
    /// l · (e · l · k²)^(1/(k-1)); the condition holds iff m is at least this.
    pub threshold: f64,
}

/// e · k² · m · (l/m)^k ≤ 1 for sublist selection on a k-regular graph.
pub fn lll_condition_list(k: usize, l: usize, m: usize) -> Result<ListConditionCheck, LllError> {
    if k < 2 || l < 1 || l > m {
        return Err(LllError::InvalidParameters(format!(
            "need k >= 2 and 1 <= l <= m, got k={k}, l={l}, m={m}"
        )));
    }
    let (kf, lf, mf) = (k as f64, l as f64, m as f64);
    let ln = 1.0 + 2.0 * kf.ln() + mf.ln() + kf * (lf / mf).ln();
    let margin = ln.exp();
    let threshold = lf * (E * lf * kf * kf).powf(1.0 / (kf - 1.0));
    Ok(ListConditionCheck {
        holds: margin <= 1.0,
        margin,
        threshold,
    })
}

/// Parameters of the balanced-subset construction on a k-regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LllParams {
    pub k: usize,
    pub c_prime: f64,
    /// Inclusion probability actually used.
    pub p: f64,
    /// c' · ln k / k before any clamping.
    pub p_raw: f64,
    pub clamped: bool,
    /// Smallest admissible deviation: λ² = 3 c' ln k (1 + ln 2 + ln(k² + 1)).
    pub lambda: f64,
    /// Whether 3 c' ln k (1 + ln 2 + ln(k² + 1)) ≤ λ² < (c' ln k)² has a solution.
    pub lambda_window_nonempty: bool,
    pub seed: u64,
    pub max_resamples: Option<u64>,
}

impl LllParams {
    pub fn new(k: usize, c_prime: f64, seed: u64) -> Result<Self, LllError> {
        if k < 2 {
            return Err(LllError::InvalidParameters(format!("need k >= 2, got {k}")));
        }
        if c_prime.is_nan() || c_prime <= 6.0 || !c_prime.is_finite() {
            return Err(LllError::InvalidParameters(format!("need c' > 6, got {c_prime}")));
        }
        let ln_k = (k as f64).ln();
        let kf = k as f64;
        let p_raw = c_prime * ln_k / kf;
        let lambda_sq = 3.0 * c_prime * ln_k * (1.0 + std::f64::consts::LN_2 + (kf * kf + 1.0).ln());
        Ok(Self {
            k,
            c_prime,
            p: p_raw,
            p_raw,
            clamped: false,
            lambda: lambda_sq.sqrt(),
            lambda_window_nonempty: lambda_sq < (c_prime * ln_k).powi(2),
            seed,
            max_resamples: None,
        })
    }

    pub fn with_max_resamples(mut self, cap: u64) -> Self {
        self.max_resamples = Some(cap);
        self
    }

    pub fn is_degenerate(&self) -> bool {
        !(self.p > 0.0 && self.p < 1.0)
    }

    /// Replaces a degenerate p (≥ 1 at small k) by 1/2.
    pub fn clamped(mut self) -> Self {
        if self.is_degenerate() {
            log::warn!(
                "c' ln k / k = {:.3} is not a probability at k = {}; using p = 0.5",
                self.p_raw,
                self.k
            );
            self.p = 0.5;
            self.clamped = true;
        }
        self
    }

    /// Upper end 2 c' ln k of the target interval for deg_T.
    pub fn degree_ceiling(&self) -> f64 {
        2.0 * self.c_prime * (self.k as f64).ln()
    }

    /// 2e (k² + 1) exp(-λ² / (3 c' ln k)); equals 1 at the chosen λ.
    pub fn chernoff_margin(&self) -> f64 {
        let kf = self.k as f64;
        let mean = self.c_prime * kf.ln();
        2.0 * E * (kf * kf + 1.0) * (-(self.lambda * self.lambda) / (3.0 * mean)).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResampleOutcome {
    Success,
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResampleLog {
    pub outcome: ResampleOutcome,
    pub resample_count: u64,
    /// How many times each bad event was resampled.
    pub triggers: Vec<u64>,
    pub seed: u64,
    pub params: serde_json::Value,
}

/// Final state of a resampling run together with its log. On success no bad
/// event holds in `state`.
#[derive(Debug, Clone, PartialEq)]
pub struct Resampled<T> {
    pub state: T,
    pub log: ResampleLog,
}

impl<T> Resampled<T> {
    pub fn succeeded(&self) -> bool {
        self.log.outcome == ResampleOutcome::Success
    }

    pub fn into_success(self) -> Option<T> {
        self.succeeded().then_some(self.state)
    }

    fn map<U>(self, f: impl FnOnce(T) -> U) -> Resampled<U> {
        Resampled {
            state: f(self.state),
            log: self.log,
        }
    }
}

trait EventSystem {
    type State;
    fn variable_count(&self) -> usize;
    fn event_count(&self) -> usize;
    fn event_variables(&self, event: usize) -> &[usize];
    fn sample(&self, state: &mut Self::State, var: usize, rng: &mut SeededRng);
    fn violated(&self, state: &Self::State, event: usize) -> bool;
}

fn run_resampling<S: EventSystem>(
    sys: &S,
    mut state: S::State,
    seed: u64,
    max_resamples: Option<u64>,
    params: serde_json::Value,
) -> Resampled<S::State> {
    let cap = max_resamples.unwrap_or(RESAMPLES_PER_EVENT * sys.event_count().max(1) as u64);
    let mut rng = seeded(seed);
    for var in 0..sys.variable_count() {
        sys.sample(&mut state, var, &mut rng);
    }
    let mut var_events = vec![Vec::new(); sys.variable_count()];
    for e in 0..sys.event_count() {
        for &var in sys.event_variables(e) {
            var_events[var].push(e);
        }
    }
    let mut bad: BTreeSet<usize> = (0..sys.event_count()).filter(|&e| sys.violated(&state, e)).collect();
    let mut triggers = vec![0u64; sys.event_count()];
    let mut stamp = vec![0u64; sys.event_count()];
    let mut count = 0u64;
    let outcome = loop {
        let Some(&e) = bad.first() else {
            break ResampleOutcome::Success;
        };
        if count >= cap {
            break ResampleOutcome::Exhausted;
        }
        count += 1;
        triggers[e] += 1;
        for &var in sys.event_variables(e) {
            sys.sample(&mut state, var, &mut rng);
        }
        for &var in sys.event_variables(e) {
            for &a in &var_events[var] {
                if stamp[a] == count {
                    continue;
                }
                stamp[a] = count;
                if sys.violated(&state, a) {
                    bad.insert(a);
                } else {
                    bad.remove(&a);
                }
            }
        }
    };
    Resampled {
        state,
        log: ResampleLog {
            outcome,
            resample_count: count,
            triggers,
            seed,
            params,
        },
    }
}

struct HypergraphTwoColoring<'a> {
    h: &'a Hypergraph,
}

impl EventSystem for HypergraphTwoColoring<'_> {
    type State = Vec<Color>;

    fn variable_count(&self) -> usize {
        self.h.n()
    }

    fn event_count(&self) -> usize {
        self.h.edge_count()
    }

    fn event_variables(&self, event: usize) -> &[usize] {
        self.h.edge(event)
    }

    fn sample(&self, state: &mut Vec<Color>, var: usize, rng: &mut SeededRng) {
        state[var] = usize::from(rng.gen_bool(0.5));
    }

    fn violated(&self, state: &Vec<Color>, event: usize) -> bool {
        let e = self.h.edge(event);
        e.iter().all(|&v| state[v] == state[e[0]])
    }
}

/// Moser–Tardos 2-coloring: each vertex red or blue with probability 1/2;
/// a monochromatic edge has its vertices recolored.
pub fn moser_tardos_2color(h: &Hypergraph, seed: u64, max_resamples: Option<u64>) -> Resampled<Coloring> {
    let sys = HypergraphTwoColoring { h };
    let params = json!({ "vertices": h.n(), "edges": h.edge_count() });
    run_resampling(&sys, vec![0; h.n()], seed, max_resamples, params)
        .map(|colors| Coloring::new(colors, 2).expect("colors are 0 or 1"))
}

/// Per-vertex neighbourhood events over vertex-membership bits.
struct NeighborhoodMembership<'a, F> {
    g: &'a Graph,
    p: f64,
    bad: F,
}

impl<F: Fn(usize, usize) -> bool> EventSystem for NeighborhoodMembership<'_, F> {
    type State = Vec<bool>;

    fn variable_count(&self) -> usize {
        self.g.n()
    }

    fn event_count(&self) -> usize {
        self.g.n()
    }

    fn event_variables(&self, event: usize) -> &[usize] {
        self.g.neighbors(event)
    }

    fn sample(&self, state: &mut Vec<bool>, var: usize, rng: &mut SeededRng) {
        state[var] = rng.gen_bool(self.p);
    }

    fn violated(&self, state: &Vec<bool>, event: usize) -> bool {
        let nb = self.g.neighbors(event);
        let inside = nb.iter().filter(|&&w| state[w]).count();
        (self.bad)(inside, nb.len())
    }
}

/// Resamples a uniformly random subset T until every vertex has neighbours
/// both inside and outside T. The bad event at v is "N(v) ⊆ T or N(v) ∩ T = ∅".
pub fn find_double_total_dominating(
    g: &Graph,
    seed: u64,
    max_resamples: Option<u64>,
) -> Result<Resampled<VertexSubset>, LllError> {
    if let Some(vertex) = (0..g.n()).find(|&v| g.degree(v) < 2) {
        return Err(LllError::ImpossibleStructure {
            vertex,
            degree: g.degree(vertex),
        });
    }
    let sys = NeighborhoodMembership {
        g,
        p: 0.5,
        bad: |inside: usize, degree: usize| inside == 0 || inside == degree,
    };
    let params = json!({ "vertices": g.n(), "p": 0.5 });
    Ok(run_resampling(&sys, vec![false; g.n()], seed, max_resamples, params).map(VertexSubset::from_mask))
}

/// Balanced subset of a k-regular graph: every vertex must satisfy
/// 0 < deg_T(v) < 2 c' ln k and have a neighbour outside T.
#[derive(Debug, Clone, PartialEq)]
pub struct BalancedSubset {
    pub run: Resampled<VertexSubset>,
    pub params: LllParams,
}

pub fn find_balanced_subset(g: &Graph, params: &LllParams) -> Result<BalancedSubset, LllError> {
    let k = g.regular_degree().ok_or(LllError::NotRegular)?;
    if k != params.k {
        return Err(LllError::InvalidParameters(format!(
            "parameters are for k = {}, graph is {k}-regular",
            params.k
        )));
    }
    if params.is_degenerate() {
        return Err(LllError::DegenerateProbability { p: params.p });
    }
    let ceiling = params.degree_ceiling();
    let sys = NeighborhoodMembership {
        g,
        p: params.p,
        bad: move |inside: usize, degree: usize| inside == 0 || inside as f64 >= ceiling || inside == degree,
    };
    let json_params = serde_json::to_value(params).expect("plain struct serialises");
    let run = run_resampling(&sys, vec![false; g.n()], params.seed, params.max_resamples, json_params)
        .map(VertexSubset::from_mask);
    Ok(BalancedSubset { run, params: *params })
}

struct SublistSelection<'a> {
    g: &'a Graph,
    lists: &'a ListAssignment,
    l: usize,
}

impl SublistSelection<'_> {
    fn neighborhood_intersects(&self, state: &[Vec<Color>], v: Vertex) -> bool {
        let nb = self.g.neighbors(v);
        let Some((&first, rest)) = nb.split_first() else {
            return false;
        };
        state[first]
            .iter()
            .any(|c| rest.iter().all(|&u| state[u].binary_search(c).is_ok()))
    }
}

impl EventSystem for SublistSelection<'_> {
    type State = Vec<Vec<Color>>;

    fn variable_count(&self) -> usize {
        self.g.n()
    }

    fn event_count(&self) -> usize {
        self.g.n()
    }

    fn event_variables(&self, event: usize) -> &[usize] {
        self.g.neighbors(event)
    }

    fn sample(&self, state: &mut Vec<Vec<Color>>, var: usize, rng: &mut SeededRng) {
        let full = self.lists.list(var);
        let mut pick: Vec<Color> = sample(rng, full.len(), self.l).into_iter().map(|i| full[i]).collect();
        pick.sort_unstable();
        state[var] = pick;
    }

    fn violated(&self, state: &Vec<Vec<Color>>, event: usize) -> bool {
        self.neighborhood_intersects(state, event)
    }
}

/// Picks a uniformly random l-subset L'(v) ⊆ L(v) at every vertex and
/// resamples the sublists of N(v) whenever the L'(u), u ∈ N(v), share a color.
pub fn select_sublists(
    g: &Graph,
    lists: &ListAssignment,
    l: usize,
    seed: u64,
    max_resamples: Option<u64>,
) -> Result<Resampled<ListAssignment>, LllError> {
    g.regular_degree().ok_or(LllError::NotRegular)?;
    if lists.len() != g.n() {
        return Err(LllError::ListCountMismatch {
            lists: lists.len(),
            n: g.n(),
        });
    }
    if l == 0 {
        return Err(LllError::InvalidParameters("l must be at least 1".into()));
    }
    if let Some(vertex) = (0..g.n()).find(|&v| lists.list(v).len() < l) {
        return Err(LllError::ListTooShort {
            vertex,
            len: lists.list(vertex).len(),
            l,
        });
    }
    let sys = SublistSelection { g, lists, l };
    let params = json!({ "vertices": g.n(), "l": l });
    Ok(run_resampling(&sys, vec![Vec::new(); g.n()], seed, max_resamples, params).map(ListAssignment::new))
}

/// Vertices whose neighbours' lists share a color; empty means the
/// assignment separates every neighbourhood.
pub fn intersecting_neighborhoods(g: &Graph, lists: &ListAssignment) -> Vec<Vertex> {
    (0..g.n())
        .filter(|&v| {
            let nb = g.neighbors(v);
            let Some((&first, rest)) = nb.split_first() else {
                return false;
            };
            lists
                .list(first)
                .iter()
                .any(|&c| rest.iter().all(|&u| lists.allows(u, c)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, cycle, random_regular, DEFAULT_REGULAR_RETRIES};
    use crate::verify::{check_domination, check_hypergraph_2coloring, DominationMode};

    #[test]
    fn hypergraph_condition_values() {
        let ok = lll_condition_hypergraph(9, 9, 9).unwrap();
        assert!(ok.holds);
        assert!((ok.margin - E * 81.0 / 256.0).abs() < 1e-12);
        let bad = lll_condition_hypergraph(8, 8, 8).unwrap();
        assert!(!bad.holds);
        assert!((bad.margin - E * 64.0 / 128.0).abs() < 1e-12);
        let tiny = lll_condition_hypergraph(2, 2, 1).unwrap();
        assert!(!tiny.holds && (tiny.margin - E).abs() < 1e-12);
        assert!(lll_condition_hypergraph(1, 2, 1).is_err());
        assert!(lll_condition_hypergraph(3, 2, 1).is_err());
    }

    #[test]
    fn graph_condition_at_nine() {
        assert!(lll_condition_graph(9, 9).holds);
        assert!(!lll_condition_graph(8, 8).holds);
        assert!(!lll_condition_graph(3, 1).holds);
    }

    #[test]
    fn list_condition_values() {
        let ok = lll_condition_list(50, 4, 5).unwrap();
        assert!(ok.holds && ok.margin < 0.5);
        assert!(ok.threshold <= 5.0);
        let bad = lll_condition_list(20, 4, 5).unwrap();
        assert!(!bad.holds && (bad.margin - 62.7).abs() < 0.1);
        assert!(bad.threshold > 5.0);
        for k in 2..30 {
            assert!(!lll_condition_list(k, 3, 3).unwrap().holds);
        }
    }

    #[test]
    fn params_window_and_clamp() {
        let p = LllParams::new(3, 7.0, 0).unwrap();
        assert!(p.p_raw > 1.0 && p.is_degenerate());
        let c = p.clamped();
        assert!(c.clamped && c.p == 0.5);
        let p16 = LllParams::new(16, 7.0, 0).unwrap();
        assert!((p16.degree_ceiling() - 38.816).abs() < 1e-3);
        assert!((p16.chernoff_margin() - 1.0).abs() < 1e-9);
        assert!(!p16.lambda_window_nonempty);
        // the window opens once c' ln k outgrows 3 (1 + ln 2 + ln(k^2 + 1))
        assert!(LllParams::new(1_000_000, 7.0, 0).unwrap().lambda_window_nonempty);
        assert!(LllParams::new(16, 6.0, 0).is_err());
    }

    #[test]
    fn two_color_single_edge_and_triangle() {
        let edge = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        let run = moser_tardos_2color(&edge, 1, None);
        assert!(run.succeeded());
        assert!(check_hypergraph_2coloring(&edge, &run.state).unwrap().is_empty());

        let k3 = Hypergraph::from_graph(&complete(3).unwrap());
        let run = moser_tardos_2color(&k3, 1, None);
        assert_eq!(run.log.outcome, ResampleOutcome::Exhausted);
        assert_eq!(run.log.resample_count, 3000);
        assert_eq!(run.log.triggers.iter().sum::<u64>(), 3000);
    }

    #[test]
    fn deterministic_per_seed() {
        let g = random_regular(40, 9, 5, DEFAULT_REGULAR_RETRIES).unwrap();
        let a = find_double_total_dominating(&g, 11, None).unwrap();
        let b = find_double_total_dominating(&g, 11, None).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn double_total_on_cycles() {
        let c8 = cycle(8).unwrap();
        let run = find_double_total_dominating(&c8, 3, None).unwrap();
        let t = run.into_success().unwrap();
        assert!(check_domination(&c8, &t, DominationMode::DoubleTotal).is_empty());

        let run = find_double_total_dominating(&cycle(6).unwrap(), 3, Some(5000)).unwrap();
        assert!(!run.succeeded());

        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            find_double_total_dominating(&path, 0, None),
            Err(LllError::ImpossibleStructure { vertex: 0, degree: 1 })
        ));
    }

    #[test]
    fn double_total_on_nine_regular() {
        assert!(lll_condition_graph(9, 9).holds);
        for seed in 0..5 {
            let g = random_regular(100, 9, seed, DEFAULT_REGULAR_RETRIES).unwrap();
            let t = find_double_total_dominating(&g, seed, None).unwrap().into_success().unwrap();
            assert!(check_domination(&g, &t, DominationMode::DoubleTotal).is_empty());
        }
    }

    #[test]
    fn balanced_subset_bipartite() {
        let g = complete_bipartite(16, 16).unwrap();
        let params = LllParams::new(16, 7.0, 2).unwrap();
        assert!(matches!(
            find_balanced_subset(&g, &params),
            Err(LllError::DegenerateProbability { .. })
        ));
        let out = find_balanced_subset(&g, &params.clamped()).unwrap();
        let t = out.run.into_success().unwrap();
        for v in 0..g.n() {
            let d = t.degree_into(&g, v);
            assert!(d > 0 && (d as f64) < params.degree_ceiling() && t.degree_outside(&g, v) > 0);
        }
        assert_eq!(
            find_balanced_subset(&cycle(5).unwrap(), &LllParams::new(3, 7.0, 0).unwrap().clamped()),
            Err(LllError::InvalidParameters("parameters are for k = 3, graph is 2-regular".into()))
        );
    }

    #[test]
    fn sublists_on_square() {
        let g = cycle(4).unwrap();
        let lists = ListAssignment::uniform(4, 0..4);
        let out = select_sublists(&g, &lists, 1, 9, None).unwrap().into_success().unwrap();
        assert!(intersecting_neighborhoods(&g, &out).is_empty());
        for v in 0..4 {
            assert_eq!(out.list(v).len(), 1);
        }
        // l = m leaves no freedom: every neighbourhood shares the whole list.
        let run = select_sublists(&g, &lists, 4, 9, Some(100)).unwrap();
        assert!(!run.succeeded());
        assert!(matches!(
            select_sublists(&g, &lists, 5, 0, None),
            Err(LllError::ListTooShort { l: 5, .. })
        ));
    }
}
