//! Certificate checkers.
//!
//! Every checker reports all violations, not just the first, sorted by
//! witness ids. An empty result means the certificate holds.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Coloring, ListAssignment};
use crate::graph::{Graph, Vertex};
use crate::hypergraph::Hypergraph;
use crate::subset::VertexSubset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Witness `[u, v]`: an edge with equal endpoint colors.
    ImproperEdge,
    /// Witness `[v]`: a vertex of degree ≥ 2 whose neighbours share one color.
    MonochromaticNeighborhood,
    /// Witness `[v]`: no neighbour of `v` lies in T.
    #[serde(rename = "empty_T_neighborhood")]
    EmptyTNeighborhood,
    /// Witness `[v]`: no neighbour of `v` lies outside T.
    EmptyComplementNeighborhood,
    /// Witness `[v]`: the color of `v` is not in its list.
    ListViolation,
    /// Witness `[i]`: hyperedge `i` is monochromatic.
    MonochromaticHyperedge,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Vec<usize>,
}

impl Violation {
    fn new(kind: ViolationKind, witness: Vec<usize>) -> Self {
        Self { kind, witness }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DominationMode {
    Total,
    DoubleTotal,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("coloring covers {coloring} vertices but the instance has {expected}")]
    SizeMismatch { coloring: usize, expected: usize },
    #[error("vertex {0} is uncolored")]
    Uncolored(Vertex),
    #[error("hypergraph 2-coloring needs palette size 2, got {0}")]
    PaletteNotTwo(usize),
}

fn require_total(c: &Coloring, n: usize) -> Result<(), VerifyError> {
    if c.len() != n {
        return Err(VerifyError::SizeMismatch {
            coloring: c.len(),
            expected: n,
        });
    }
    match c.first_uncolored() {
        Some(v) => Err(VerifyError::Uncolored(v)),
        None => Ok(()),
    }
}

fn sorted(mut v: Vec<Violation>) -> Vec<Violation> {
    v.sort_by(|a, b| a.witness.cmp(&b.witness).then(a.kind.cmp(&b.kind)));
    v
}

pub fn check_proper(g: &Graph, c: &Coloring) -> Result<Vec<Violation>, VerifyError> {
    require_total(c, g.n())?;
    Ok(g.edges()
        .filter(|&(u, v)| c.color(u) == c.color(v))
        .map(|(u, v)| Violation::new(ViolationKind::ImproperEdge, vec![u, v]))
        .collect())
}

/// Proper, and every vertex of degree at least 2 sees two neighbour colors.
pub fn check_dynamic(g: &Graph, c: &Coloring) -> Result<Vec<Violation>, VerifyError> {
    let mut out = check_proper(g, c)?;
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        if nb.len() >= 2 {
            let first = c.color(nb[0]);
            if nb.iter().all(|&w| c.color(w) == first) {
                out.push(Violation::new(ViolationKind::MonochromaticNeighborhood, vec![v]));
            }
        }
    }
    Ok(sorted(out))
}

/// Total mode: every vertex has a neighbour in `t`. Double-total mode: in
/// addition every vertex has a neighbour outside `t`.
pub fn check_domination(g: &Graph, t: &VertexSubset, mode: DominationMode) -> Vec<Violation> {
    assert_eq!(t.host_size(), g.n(), "subset host size must match the graph");
    let mut out = Vec::new();
    for v in 0..g.n() {
        let inside = t.degree_into(g, v);
        if inside == 0 {
            out.push(Violation::new(ViolationKind::EmptyTNeighborhood, vec![v]));
        }
        if mode == DominationMode::DoubleTotal && inside == g.degree(v) {
            out.push(Violation::new(ViolationKind::EmptyComplementNeighborhood, vec![v]));
        }
    }
    out
}

pub fn check_list_respecting(g: &Graph, lists: &ListAssignment, c: &Coloring) -> Result<Vec<Violation>, VerifyError> {
    require_total(c, g.n())?;
    if lists.len() != g.n() {
        return Err(VerifyError::SizeMismatch {
            coloring: lists.len(),
            expected: g.n(),
        });
    }
    Ok((0..g.n())
        .filter(|&v| !lists.allows(v, c.color(v)))
        .map(|v| Violation::new(ViolationKind::ListViolation, vec![v]))
        .collect())
}

pub fn check_hypergraph_2coloring(h: &Hypergraph, c: &Coloring) -> Result<Vec<Violation>, VerifyError> {
    if c.palette_size() != 2 {
        return Err(VerifyError::PaletteNotTwo(c.palette_size()));
    }
    require_total(c, h.n())?;
    Ok(h.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.iter().all(|&v| c.color(v) == c.color(e[0])))
        .map(|(i, _)| Violation::new(ViolationKind::MonochromaticHyperedge, vec![i]))
        .collect())
}
