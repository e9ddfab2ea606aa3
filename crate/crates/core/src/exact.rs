//! Exhaustive search oracles for small instances.
//!
//! Budgets count search nodes (one per tentative assignment), never wall
//! time, so every result is reproducible. Running out of budget is always
//! reported separately from a certified "no solution".

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::coloring::{greedy_coloring, Color, Coloring, ListAssignment};
use crate::graph::{Graph, Vertex};
use crate::hypergraph::Hypergraph;
use crate::subset::VertexSubset;

/// Default node budget for a single solve call.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("graph must be connected")]
    NotConnected,
    #[error("list assignment covers {lists} vertices, graph has {n}")]
    ListSizeMismatch { lists: usize, n: usize },
    #[error("search budget exhausted after {nodes_explored} nodes")]
    BudgetExhausted { nodes_explored: u64 },
}

/// Optimal value of a chromatic-type invariant with a witness coloring.
///
/// When `exhausted` is set the optimum is only known to lie in
/// `[lower_bound, value]`, and `witness` realises `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: usize,
    pub lower_bound: usize,
    pub witness: Coloring,
    pub nodes_explored: u64,
    pub exhausted: bool,
}

impl Serialize for SolveResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SolveResult", 5)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("lower_bound", &self.lower_bound)?;
        st.serialize_field("witness", &self.witness.to_vec())?;
        st.serialize_field("nodes_explored", &self.nodes_explored)?;
        st.serialize_field("exhausted", &self.exhausted)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    /// The search space was exhausted: no solution exists.
    Infeasible,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport<T> {
    pub outcome: Outcome<T>,
    pub nodes_explored: u64,
}

impl<T> SearchReport<T> {
    pub fn found(&self) -> Option<&T> {
        match &self.outcome {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn into_found(self) -> Option<T> {
        match self.outcome {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self.outcome, Outcome::Infeasible)
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self.outcome, Outcome::BudgetExhausted)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Found,
    Fail,
    OutOfBudget,
}

struct NodeCounter {
    nodes: u64,
    budget: u64,
}

impl NodeCounter {
    fn new(budget: u64) -> Self {
        Self { nodes: 0, budget }
    }

    /// Counts one node; false once the budget is spent.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.budget
    }

    fn remaining(&self) -> u64 {
        self.budget.saturating_sub(self.nodes)
    }
}

/// Decides k-colorability (optionally dynamic) with a static vertex order,
/// forward checking and color-symmetry breaking.
struct KColorSearch<'a> {
    g: &'a Graph,
    order: Vec<Vertex>,
    k: usize,
    dynamic: bool,
    colors: Vec<Option<Color>>,
    /// forbid[v * k + c]: colored neighbours of v holding color c.
    forbid: Vec<u32>,
    /// Colors currently blocked at v.
    blocked: Vec<usize>,
    uncolored_neighbors: Vec<usize>,
    counter: &'a mut NodeCounter,
}

impl<'a> KColorSearch<'a> {
    fn new(g: &'a Graph, k: usize, dynamic: bool, counter: &'a mut NodeCounter) -> Self {
        Self {
            g,
            order: g.degree_order(),
            k,
            dynamic,
            colors: vec![None; g.n()],
            forbid: vec![0; g.n() * k],
            blocked: vec![0; g.n()],
            uncolored_neighbors: g.degrees(),
            counter,
        }
    }

    fn run(mut self) -> (Step, Vec<Option<Color>>) {
        let step = self.extend(0, 0);
        (step, self.colors)
    }

    fn assign(&mut self, v: Vertex, c: Color) -> bool {
        self.colors[v] = Some(c);
        let mut ok = true;
        for &w in self.g.neighbors(v) {
            self.uncolored_neighbors[w] -= 1;
            let slot = &mut self.forbid[w * self.k + c];
            *slot += 1;
            if *slot == 1 {
                self.blocked[w] += 1;
                if self.colors[w].is_none() && self.blocked[w] == self.k {
                    ok = false;
                }
            }
        }
        if ok && self.dynamic {
            ok = self.g.neighbors(v).iter().all(|&w| self.neighborhood_ok(w));
        }
        ok
    }

    fn unassign(&mut self, v: Vertex, c: Color) {
        for &w in self.g.neighbors(v) {
            self.uncolored_neighbors[w] += 1;
            let slot = &mut self.forbid[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.blocked[w] -= 1;
            }
        }
        self.colors[v] = None;
    }

    /// A fully colored neighbourhood of a degree ≥ 2 vertex must hold two colors.
    fn neighborhood_ok(&self, w: Vertex) -> bool {
        let nb = self.g.neighbors(w);
        if nb.len() < 2 || self.uncolored_neighbors[w] > 0 {
            return true;
        }
        let first = self.colors[nb[0]];
        nb.iter().any(|&x| self.colors[x] != first)
    }

    fn extend(&mut self, idx: usize, used: usize) -> Step {
        if idx == self.order.len() {
            return Step::Found;
        }
        let v = self.order[idx];
        for c in 0..(used + 1).min(self.k) {
            if self.forbid[v * self.k + c] > 0 {
                continue;
            }
            if !self.counter.tick() {
                return Step::OutOfBudget;
            }
            let ok = self.assign(v, c);
            if ok {
                match self.extend(idx + 1, used.max(c + 1)) {
                    Step::Fail => {}
                    other => return other,
                }
            }
            self.unassign(v, c);
        }
        Step::Fail
    }
}

fn solve_chromatic_type(g: &Graph, budget: u64, dynamic: bool) -> SolveResult {
    let n = g.n();
    if n == 0 {
        return SolveResult {
            value: 0,
            lower_bound: 0,
            witness: Coloring::from_colors(vec![]),
            nodes_explored: 0,
            exhausted: false,
        };
    }
    let mut lower = g.greedy_clique_size();
    let (mut upper, mut best) = if dynamic {
        if g.max_degree() >= 2 {
            lower = lower.max(3);
        }
        // All-distinct colors are always dynamic.
        (n, Coloring::from_colors((0..n).collect()))
    } else {
        let greedy = greedy_coloring(g, &g.degree_order());
        (greedy.colors_used(), greedy)
    };
    let mut counter = NodeCounter::new(budget);
    let mut k = lower;
    while k < upper {
        let (step, colors) = KColorSearch::new(g, k, dynamic, &mut counter).run();
        match step {
            Step::Found => {
                upper = k;
                best = Coloring::partial(colors, k).expect("search stays in palette");
            }
            Step::Fail => k += 1,
            Step::OutOfBudget => {
                return SolveResult {
                    value: upper,
                    lower_bound: k,
                    witness: Coloring::partial(best.assignment().to_vec(), upper).expect("witness fits"),
                    nodes_explored: counter.nodes,
                    exhausted: true,
                };
            }
        }
    }
    SolveResult {
        value: upper,
        lower_bound: upper,
        witness: Coloring::partial(best.assignment().to_vec(), upper).expect("witness fits"),
        nodes_explored: counter.nodes,
        exhausted: false,
    }
}

/// χ(g) by branch and bound over colorings, vertices ordered by descending
/// degree, each vertex limited to one more than the largest color in use.
pub fn chromatic_number(g: &Graph, budget: u64) -> SolveResult {
    solve_chromatic_type(g, budget, false)
}

/// χ_d(g): as [`chromatic_number`] with the extra rule that a vertex of
/// degree ≥ 2 whose neighbourhood is fully colored must see two colors.
pub fn dynamic_chromatic_number(g: &Graph, budget: u64) -> SolveResult {
    solve_chromatic_type(g, budget, true)
}

/// A dynamic coloring choosing each vertex's color from its list.
pub fn list_dynamic_coloring(
    g: &Graph,
    lists: &ListAssignment,
    budget: u64,
) -> Result<SearchReport<Coloring>, ExactError> {
    if lists.len() != g.n() {
        return Err(ExactError::ListSizeMismatch {
            lists: lists.len(),
            n: g.n(),
        });
    }
    struct ListSearch<'a> {
        g: &'a Graph,
        lists: &'a ListAssignment,
        order: Vec<Vertex>,
        colors: Vec<Option<Color>>,
        uncolored_neighbors: Vec<usize>,
        counter: NodeCounter,
    }
    impl ListSearch<'_> {
        fn neighborhood_ok(&self, w: Vertex) -> bool {
            let nb = self.g.neighbors(w);
            if nb.len() < 2 || self.uncolored_neighbors[w] > 0 {
                return true;
            }
            let first = self.colors[nb[0]];
            nb.iter().any(|&x| self.colors[x] != first)
        }

        fn extend(&mut self, idx: usize) -> Step {
            if idx == self.order.len() {
                return Step::Found;
            }
            let v = self.order[idx];
            let lists = self.lists;
            for &c in lists.list(v) {
                if self.g.neighbors(v).iter().any(|&w| self.colors[w] == Some(c)) {
                    continue;
                }
                if !self.counter.tick() {
                    return Step::OutOfBudget;
                }
                self.colors[v] = Some(c);
                for &w in self.g.neighbors(v) {
                    self.uncolored_neighbors[w] -= 1;
                }
                if self.g.neighbors(v).iter().all(|&w| self.neighborhood_ok(w)) {
                    match self.extend(idx + 1) {
                        Step::Fail => {}
                        other => return other,
                    }
                }
                for &w in self.g.neighbors(v) {
                    self.uncolored_neighbors[w] += 1;
                }
                self.colors[v] = None;
            }
            Step::Fail
        }
    }
    let mut search = ListSearch {
        g,
        lists,
        order: g.degree_order(),
        colors: vec![None; g.n()],
        uncolored_neighbors: g.degrees(),
        counter: NodeCounter::new(budget),
    };
    let step = search.extend(0);
    let outcome = match step {
        Step::Found => {
            Outcome::Found(Coloring::partial(search.colors, lists.palette_bound()).expect("colors come from lists"))
        }
        Step::Fail => Outcome::Infeasible,
        Step::OutOfBudget => Outcome::BudgetExhausted,
    };
    Ok(SearchReport {
        outcome,
        nodes_explored: search.counter.nodes,
    })
}

/// Exact 2-coloring of a hypergraph with no monochromatic edge.
pub fn hypergraph_2color_exact(h: &Hypergraph, budget: u64) -> SearchReport<Coloring> {
    struct TwoColorSearch<'a> {
        h: &'a Hypergraph,
        incidence: Vec<Vec<usize>>,
        order: Vec<Vertex>,
        colors: Vec<Option<Color>>,
        /// counts[e][c]: vertices of edge e colored c.
        counts: Vec<[usize; 2]>,
        counter: NodeCounter,
    }
    impl TwoColorSearch<'_> {
        fn extend(&mut self, idx: usize) -> Step {
            if idx == self.order.len() {
                return Step::Found;
            }
            let v = self.order[idx];
            // The first vertex is fixed to color 0; swapping colors is a symmetry.
            let choices: &[Color] = if idx == 0 { &[0] } else { &[0, 1] };
            for &c in choices {
                if !self.counter.tick() {
                    return Step::OutOfBudget;
                }
                self.colors[v] = Some(c);
                let mut ok = true;
                for &e in &self.incidence[v] {
                    self.counts[e][c] += 1;
                    if self.counts[e][c] == self.h.edge(e).len() {
                        ok = false;
                    }
                }
                if ok {
                    match self.extend(idx + 1) {
                        Step::Fail => {}
                        other => return other,
                    }
                }
                for &e in &self.incidence[v] {
                    self.counts[e][c] -= 1;
                }
                self.colors[v] = None;
            }
            Step::Fail
        }
    }
    let incidence = h.incidence();
    let mut order: Vec<Vertex> = (0..h.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(incidence[v].len()), v));
    let mut search = TwoColorSearch {
        h,
        incidence,
        order,
        colors: vec![None; h.n()],
        counts: vec![[0, 0]; h.edge_count()],
        counter: NodeCounter::new(budget),
    };
    let outcome = match search.extend(0) {
        Step::Found => Outcome::Found(Coloring::partial(search.colors, 2).expect("two colors")),
        Step::Fail => Outcome::Infeasible,
        Step::OutOfBudget => Outcome::BudgetExhausted,
    };
    SearchReport {
        outcome,
        nodes_explored: search.counter.nodes,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Criticality {
    /// χ(g).
    pub k: usize,
    pub critical: bool,
    /// A vertex whose deletion leaves χ unchanged, when not critical.
    pub non_critical_vertex: Option<Vertex>,
    pub nodes_explored: u64,
}

/// Whether g is χ(g)-critical. Deleting single vertices suffices: every
/// proper induced subgraph sits inside some `g - v`, and χ is monotone.
pub fn is_k_critical(g: &Graph, budget: u64) -> Result<Criticality, ExactError> {
    if !g.is_connected() {
        return Err(ExactError::NotConnected);
    }
    let mut counter = NodeCounter::new(budget);
    let whole = chromatic_number(g, budget);
    counter.nodes += whole.nodes_explored;
    if whole.exhausted {
        return Err(ExactError::BudgetExhausted {
            nodes_explored: counter.nodes,
        });
    }
    let k = whole.value;
    for v in 0..g.n() {
        let rest = VertexSubset::new(g.n(), (0..g.n()).filter(|&w| w != v)).expect("in range");
        let (sub, _) = g.induced_subgraph(&rest).expect("in range");
        let r = chromatic_number(&sub, counter.remaining());
        counter.nodes += r.nodes_explored;
        if r.lower_bound >= k {
            return Ok(Criticality {
                k,
                critical: false,
                non_critical_vertex: Some(v),
                nodes_explored: counter.nodes,
            });
        }
        if r.exhausted {
            return Err(ExactError::BudgetExhausted {
                nodes_explored: counter.nodes,
            });
        }
    }
    Ok(Criticality {
        k,
        critical: true,
        non_critical_vertex: None,
        nodes_explored: counter.nodes,
    })
}

/// A set T such that every vertex has neighbours both in T and outside T.
///
/// Vertices are decided in id order with vertex 0 placed in T, which loses
/// nothing because the complement of a solution is a solution.
pub fn exact_double_total_dominating(g: &Graph, budget: u64) -> SearchReport<VertexSubset> {
    if g.n() == 0 {
        return SearchReport {
            outcome: Outcome::Found(VertexSubset::empty(0)),
            nodes_explored: 0,
        };
    }
    if (0..g.n()).any(|v| g.degree(v) < 2) {
        return SearchReport {
            outcome: Outcome::Infeasible,
            nodes_explored: 0,
        };
    }
    struct DomSearch<'a> {
        g: &'a Graph,
        inside: Vec<Option<bool>>,
        in_count: Vec<usize>,
        out_count: Vec<usize>,
        counter: NodeCounter,
    }
    impl DomSearch<'_> {
        fn extend(&mut self, v: Vertex) -> Step {
            if v == self.g.n() {
                return Step::Found;
            }
            let choices: &[bool] = if v == 0 { &[true] } else { &[true, false] };
            for &member in choices {
                if !self.counter.tick() {
                    return Step::OutOfBudget;
                }
                self.inside[v] = Some(member);
                let mut ok = true;
                for &w in self.g.neighbors(v) {
                    if member {
                        self.in_count[w] += 1;
                    } else {
                        self.out_count[w] += 1;
                    }
                    let decided = self.in_count[w] + self.out_count[w];
                    if decided == self.g.degree(w) && (self.in_count[w] == 0 || self.out_count[w] == 0) {
                        ok = false;
                    }
                }
                if ok {
                    match self.extend(v + 1) {
                        Step::Fail => {}
                        other => return other,
                    }
                }
                for &w in self.g.neighbors(v) {
                    if member {
                        self.in_count[w] -= 1;
                    } else {
                        self.out_count[w] -= 1;
                    }
                }
                self.inside[v] = None;
            }
            Step::Fail
        }
    }
    let mut search = DomSearch {
        g,
        inside: vec![None; g.n()],
        in_count: vec![0; g.n()],
        out_count: vec![0; g.n()],
        counter: NodeCounter::new(budget),
    };
    let outcome = match search.extend(0) {
        Step::Found => Outcome::Found(VertexSubset::from_mask(
            search.inside.iter().map(|m| m.expect("all decided")).collect(),
        )),
        Step::Fail => Outcome::Infeasible,
        Step::OutOfBudget => Outcome::BudgetExhausted,
    };
    SearchReport {
        outcome,
        nodes_explored: search.counter.nodes,
    }
}
