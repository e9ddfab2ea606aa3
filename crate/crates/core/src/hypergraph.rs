//! Hypergraphs as multisets of vertex sets, plus the two derived
//! constructions the colouring pipelines need: the neighbourhood hypergraph
//! of a graph and the regular augmentation of a uniform hypergraph.

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::subset::VertexSubset;

/// Default cap on the vertex count [`regularize_hypergraph`] may produce.
pub const DEFAULT_VERTEX_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("hyperedge {index} has {size} vertices; at least 2 are required")]
    EdgeTooSmall { index: usize, size: usize },
    #[error("hyperedge {index} contains vertex {vertex} outside 0..{n}")]
    VertexOutOfRange { index: usize, vertex: Vertex, n: usize },
    #[error("hyperedge {index} repeats vertex {vertex}")]
    RepeatedVertex { index: usize, vertex: Vertex },
    #[error("hypergraph is not {k}-uniform (edge {index} has size {size})")]
    NotUniform { k: usize, index: usize, size: usize },
    #[error("maximum degree {max_degree} exceeds k = {k}")]
    DegreeTooLarge { max_degree: usize, k: usize },
    #[error("regularized hypergraph would have {projected} vertices, over the budget of {budget}")]
    OverBudget { projected: u128, budget: usize },
    #[error("k must be at least 2, got {0}")]
    InvalidUniformity(usize),
}

/// A hypergraph on vertices `0..n` whose edges form a multiset.
///
/// Each edge is stored sorted. `sources` optionally records the graph vertex
/// an edge came from (for neighbourhood hypergraphs, edge `N(v)` has source `v`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<Vertex>>,
    sources: Vec<Option<Vertex>>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<Vertex>>) -> Result<Self, HypergraphError> {
        let sources = vec![None; edges.len()];
        Self::with_sources(n, edges, sources)
    }

    pub fn with_sources(
        n: usize,
        edges: Vec<Vec<Vertex>>,
        sources: Vec<Option<Vertex>>,
    ) -> Result<Self, HypergraphError> {
        assert_eq!(edges.len(), sources.len(), "one source slot per edge");
        let mut sorted = Vec::with_capacity(edges.len());
        for (index, mut e) in edges.into_iter().enumerate() {
            if e.len() < 2 {
                return Err(HypergraphError::EdgeTooSmall { index, size: e.len() });
            }
            e.sort_unstable();
            if let Some(&vertex) = e.iter().find(|&&v| v >= n) {
                return Err(HypergraphError::VertexOutOfRange { index, vertex, n });
            }
            if let Some(w) = e.windows(2).find(|w| w[0] == w[1]) {
                return Err(HypergraphError::RepeatedVertex { index, vertex: w[0] });
            }
            sorted.push(e);
        }
        Ok(Self {
            n,
            edges: sorted,
            sources,
        })
    }

    /// A graph viewed as a 2-uniform hypergraph.
    pub fn from_graph(g: &Graph) -> Self {
        let edges: Vec<Vec<Vertex>> = g.edges().map(|(u, v)| vec![u, v]).collect();
        let sources = vec![None; edges.len()];
        Self {
            n: g.n(),
            edges,
            sources,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[Vertex] {
        &self.edges[i]
    }

    pub fn source(&self, i: usize) -> Option<Vertex> {
        self.sources[i]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Smallest edge size r1, `None` without edges.
    pub fn min_edge_size(&self) -> Option<usize> {
        self.edges.iter().map(Vec::len).min()
    }

    /// Largest edge size r2, `None` without edges.
    pub fn max_edge_size(&self) -> Option<usize> {
        self.edges.iter().map(Vec::len).max()
    }

    /// Number of edges containing each vertex (multiplicities counted).
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    /// Edge indices incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    pub fn is_uniform(&self, k: usize) -> bool {
        self.edges.iter().all(|e| e.len() == k)
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.degrees().into_iter().all(|d| d == k)
    }
}

/// Result of [`neighborhood_hypergraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodHypergraph {
    pub hypergraph: Hypergraph,
    /// Host vertex for each hypergraph vertex. Identity without a target.
    pub vertex_map: Vec<Vertex>,
    /// Source vertices that contributed no edge because `|N(v)| < 2`.
    pub skipped_low_degree: usize,
}

/// Hypergraph whose edges are the open neighbourhoods `N(v)`.
///
/// One edge per source vertex of degree at least 2, duplicates kept. With a
/// `target` set T only neighbourhoods lying entirely inside T are kept, and
/// the vertex set becomes T relabelled in ascending order.
pub fn neighborhood_hypergraph(g: &Graph, target: Option<&VertexSubset>) -> NeighborhoodHypergraph {
    let (vertex_map, position): (Vec<Vertex>, Vec<Option<usize>>) = match target {
        Some(t) => (t.members().to_vec(), t.positions()),
        None => ((0..g.n()).collect(), (0..g.n()).map(Some).collect()),
    };
    let mut edges = Vec::new();
    let mut sources = Vec::new();
    let mut skipped_low_degree = 0;
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        let mapped: Option<Vec<Vertex>> = nb.iter().map(|&w| position.get(w).copied().flatten()).collect();
        let Some(edge) = mapped else { continue };
        if edge.len() < 2 {
            skipped_low_degree += 1;
            continue;
        }
        edges.push(edge);
        sources.push(Some(v));
    }
    let hypergraph = Hypergraph::with_sources(vertex_map.len(), edges, sources)
        .expect("neighbourhoods are duplicate-free and in range");
    NeighborhoodHypergraph {
        hypergraph,
        vertex_map,
        skipped_low_degree,
    }
}

/// Result of [`regularize_hypergraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regularized {
    pub hypergraph: Hypergraph,
    pub iterations: usize,
}

/// Embeds a k-uniform hypergraph with Δ ≤ k into a k-uniform k-regular one.
///
/// Each round takes k disjoint copies of the current hypergraph and, for every
/// vertex of degree below k, adds an edge through its k copies. Copy `j` of
/// vertex `v` is `j * n + v`, so the original hypergraph is copy 0. Every
/// round raises the minimum degree by one, giving `k - δ` rounds.
pub fn regularize_hypergraph(h: &Hypergraph, k: usize, vertex_budget: usize) -> Result<Regularized, HypergraphError> {
    if k < 2 {
        return Err(HypergraphError::InvalidUniformity(k));
    }
    if let Some((index, e)) = h.edges().iter().enumerate().find(|(_, e)| e.len() != k) {
        return Err(HypergraphError::NotUniform { k, index, size: e.len() });
    }
    let max_degree = h.max_degree();
    if max_degree > k {
        return Err(HypergraphError::DegreeTooLarge { max_degree, k });
    }
    let iterations = k - h.min_degree().min(k);
    let projected = (h.n() as u128).saturating_mul((k as u128).saturating_pow(iterations as u32));
    if projected > vertex_budget as u128 {
        return Err(HypergraphError::OverBudget {
            projected,
            budget: vertex_budget,
        });
    }

    let mut n = h.n();
    let mut edges = h.edges.clone();
    let mut sources = h.sources.clone();
    for _ in 0..iterations {
        let mut deg = vec![0usize; n];
        for e in &edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        let mut next_edges = Vec::with_capacity(edges.len() * k + n);
        let mut next_sources = Vec::with_capacity(next_edges.capacity());
        for copy in 0..k {
            let offset = copy * n;
            for (e, s) in edges.iter().zip(&sources) {
                next_edges.push(e.iter().map(|&v| v + offset).collect());
                next_sources.push(*s);
            }
        }
        for (v, &d) in deg.iter().enumerate() {
            if d < k {
                next_edges.push((0..k).map(|copy| copy * n + v).collect());
                next_sources.push(None);
            }
        }
        n *= k;
        edges = next_edges;
        sources = next_sources;
    }
    Ok(Regularized {
        hypergraph: Hypergraph { n, edges, sources },
        iterations,
    })
}
