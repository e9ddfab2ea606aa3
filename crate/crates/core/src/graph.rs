//! Simple undirected graphs stored as sorted adjacency lists.

use std::collections::VecDeque;

use thiserror::Error;

use crate::subset::VertexSubset;

/// Vertex identifier; graphs always use `0..n`.
pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("random regular generation failed after {0} attempts")]
    RetriesExhausted(usize),
}

/// An immutable simple undirected graph.
///
/// Adjacency lists are kept sorted, so membership tests are binary searches
/// and two graphs with the same edge set compare equal regardless of the
/// order the edges were supplied in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Self { adj, edge_count })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Maximum degree Δ; 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Minimum degree δ; 0 for the empty graph.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Returns `Some(k)` when every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == k).then_some(k)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Vertices sorted by descending degree, ties broken by ascending id.
    pub fn degree_order(&self) -> Vec<Vertex> {
        let mut order: Vec<Vertex> = (0..self.n()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(self.degree(v)), v));
        order
    }

    /// The subgraph induced by `s`, relabelled to `0..|s|` in ascending order
    /// of the original ids. The returned vector maps new ids back to old ones.
    pub fn induced_subgraph(&self, s: &VertexSubset) -> Result<(Graph, Vec<Vertex>), GraphError> {
        if let Some(&v) = s.members().iter().find(|&&v| v >= self.n()) {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() });
        }
        let mapping: Vec<Vertex> = s.members().to_vec();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in mapping.iter().enumerate() {
            index[v] = i;
        }
        let adj: Vec<Vec<Vertex>> = mapping
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect()
            })
            .collect();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Ok((Graph { adj, edge_count }, mapping))
    }

    /// Vertices having two adjacent neighbours, i.e. lying on a triangle.
    pub fn vertices_in_triangles(&self) -> VertexSubset {
        let members = (0..self.n()).filter(|&v| {
            let nb = &self.adj[v];
            nb.iter()
                .enumerate()
                .any(|(i, &a)| nb[i + 1..].iter().any(|&b| self.has_edge(a, b)))
        });
        VertexSubset::from_sorted_unchecked(self.n(), members.collect())
    }

    /// Connected component id per vertex, numbered in order of first vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// True for graphs with exactly one component (the empty graph is not connected).
    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().iter().all(|&c| c == 0)
    }

    /// Breadth-first 2-colouring per component; `None` if an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<usize>> {
        let mut side = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::new();
        for s in 0..self.n() {
            if side[s] != usize::MAX {
                continue;
            }
            side[s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if side[w] == usize::MAX {
                        side[w] = 1 - side[v];
                        queue.push_back(w);
                    } else if side[w] == side[v] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    /// True when the graph is a single 5-cycle, the one exception to the
    /// subcubic dynamic bound.
    pub fn is_c5(&self) -> bool {
        self.n() == 5 && self.regular_degree() == Some(2) && self.is_connected()
    }

    /// Size of a clique found greedily; a cheap lower bound on χ.
    pub fn greedy_clique_size(&self) -> usize {
        let mut best = usize::from(self.n() > 0);
        for start in self.degree_order() {
            let mut clique = vec![start];
            let mut cands: Vec<Vertex> = self.adj[start].clone();
            cands.sort_by_key(|&v| (std::cmp::Reverse(self.degree(v)), v));
            for v in cands {
                if clique.iter().all(|&c| self.has_edge(c, v)) {
                    clique.push(v);
                }
            }
            best = best.max(clique.len());
        }
        best
    }
}
