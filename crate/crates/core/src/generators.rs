//! Deterministic graph families and seeded random generators.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::Rng;

use crate::graph::{Graph, GraphError, Vertex};
use crate::hypergraph::Hypergraph;
use crate::rng::seeded;

/// Default number of restarts for [`random_regular`].
pub const DEFAULT_REGULAR_RETRIES: usize = 1000;

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameters(msg.into())
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(n, (0..n).tuple_combinations())
}

/// K_{a,b} with the `a` side on `0..a`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(a + b, (0..a).cartesian_product(a..a + b))
}

/// Parameters of the Kneser graph KG(m, n) on the n-subsets of {1, ..., m}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct KneserSpec {
    pub m: usize,
    pub n: usize,
}

impl KneserSpec {
    pub fn new(m: usize, n: usize) -> Result<Self, GraphError> {
        if n < 1 || m < 2 * n {
            return Err(invalid(format!("kneser needs m >= 2n >= 2, got m={m}, n={n}")));
        }
        if m > 64 {
            return Err(invalid(format!("kneser ground set limited to 64 elements, got {m}")));
        }
        Ok(Self { m, n })
    }

    /// t = m - 2n.
    pub fn t(&self) -> usize {
        self.m - 2 * self.n
    }

    /// The chromatic number m - 2n + 2 (Lovász).
    pub fn chromatic_number(&self) -> usize {
        self.t() + 2
    }

    /// Vertex labels as bitmasks (bit `i - 1` for element `i`), in
    /// lexicographic order of the sorted subsets.
    pub fn subsets(&self) -> Vec<u64> {
        (1..=self.m)
            .combinations(self.n)
            .map(|c| c.into_iter().fold(0u64, |acc, i| acc | (1 << (i - 1))))
            .collect()
    }

    pub fn graph(&self) -> Graph {
        let sets = self.subsets();
        let edges = (0..sets.len())
            .tuple_combinations()
            .filter(|&(a, b)| sets[a] & sets[b] == 0);
        Graph::from_edges(sets.len(), edges).expect("disjointness pairs are simple")
    }
}

pub fn kneser(m: usize, n: usize) -> Result<Graph, GraphError> {
    Ok(KneserSpec::new(m, n)?.graph())
}

/// Erdős–Rényi G(n, p): each pair `u < v` in lexicographic order is an edge
/// with probability `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("gnp needs 0 <= p <= 1, got {p}")));
    }
    let mut rng = seeded(seed);
    let edges: Vec<_> = (0..n).tuple_combinations().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, edges)
}

/// Random simple k-regular graph from the pairing model.
///
/// Points are paired one random pair at a time; a pair that would create a
/// loop or a multi-edge is rejected and redrawn. When no admissible pair is
/// left the attempt restarts, up to `max_retries` attempts.
pub fn random_regular(n: usize, k: usize, seed: u64, max_retries: usize) -> Result<Graph, GraphError> {
    if k >= n && (n, k) != (0, 0) {
        return Err(invalid(format!("random_regular needs k < n, got n={n}, k={k}")));
    }
    if (n * k) % 2 == 1 {
        return Err(invalid(format!("random_regular needs n*k even, got n={n}, k={k}")));
    }
    let mut rng = seeded(seed);
    'attempt: for _ in 0..max_retries {
        let mut points: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
        let mut edges: HashSet<(Vertex, Vertex)> = HashSet::with_capacity(n * k / 2);
        let admissible = |edges: &HashSet<(Vertex, Vertex)>, u: Vertex, v: Vertex| {
            u != v && !edges.contains(&(u.min(v), u.max(v)))
        };
        while !points.is_empty() {
            let len = points.len();
            let mut chosen = None;
            for _ in 0..64 {
                let pick = sample(&mut rng, len, 2);
                let (i, j) = (pick.index(0), pick.index(1));
                if admissible(&edges, points[i], points[j]) {
                    chosen = Some((i, j));
                    break;
                }
            }
            if chosen.is_none() {
                let candidates: Vec<(usize, usize)> = (0..len)
                    .tuple_combinations()
                    .filter(|&(i, j)| admissible(&edges, points[i], points[j]))
                    .collect();
                if candidates.is_empty() {
                    continue 'attempt;
                }
                chosen = Some(candidates[rng.gen_range(0..candidates.len())]);
            }
            let (i, j) = chosen.expect("set above");
            let (u, v) = (points[i], points[j]);
            edges.insert((u.min(v), u.max(v)));
            let (hi, lo) = (i.max(j), i.min(j));
            points.swap_remove(hi);
            points.swap_remove(lo);
        }
        let mut edges: Vec<_> = edges.into_iter().collect();
        edges.sort_unstable();
        return Graph::from_edges(n, edges);
    }
    Err(GraphError::RetriesExhausted(max_retries))
}

/// The Fano plane: 7 points, 7 lines of size 3, not 2-colourable.
pub fn fano_plane() -> Hypergraph {
    Hypergraph::new(
        7,
        vec![
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 5, 6],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
        ],
    )
    .expect("valid lines")
}

/// Random r-uniform hypergraph on `n` vertices with maximum degree at most
/// `max_degree`. Each edge draws `r` distinct vertices uniformly from those
/// still below the degree cap; generation stops early if fewer than `r` remain.
pub fn random_uniform_hypergraph(
    n: usize,
    r: usize,
    max_degree: usize,
    edge_count: usize,
    seed: u64,
) -> Result<Hypergraph, GraphError> {
    if r < 2 || r > n {
        return Err(invalid(format!("uniform hypergraph needs 2 <= r <= n, got r={r}, n={n}")));
    }
    let mut rng = seeded(seed);
    let mut degree = vec![0usize; n];
    let mut edges = Vec::with_capacity(edge_count);
    for _ in 0..edge_count {
        let open: Vec<Vertex> = (0..n).filter(|&v| degree[v] < max_degree).collect();
        if open.len() < r {
            break;
        }
        let edge: Vec<Vertex> = sample(&mut rng, open.len(), r).into_iter().map(|i| open[i]).collect();
        for &v in &edge {
            degree[v] += 1;
        }
        edges.push(edge);
    }
    Ok(Hypergraph::new(n, edges).expect("distinct in-range members"))
}

/// Named graph family, parsed from strings like `kneser:7,3` or `gnp:200,0.5`.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphFamily {
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Kneser(usize, usize),
    Gnp(usize, f64),
    RandomRegular(usize, usize),
}

impl GraphFamily {
    /// `seed` is ignored by the deterministic families.
    pub fn generate(&self, seed: u64) -> Result<Graph, GraphError> {
        match *self {
            GraphFamily::Cycle(n) => cycle(n),
            GraphFamily::Complete(n) => complete(n),
            GraphFamily::CompleteBipartite(a, b) => complete_bipartite(a, b),
            GraphFamily::Kneser(m, n) => kneser(m, n),
            GraphFamily::Gnp(n, p) => gnp(n, p, seed),
            GraphFamily::RandomRegular(n, k) => random_regular(n, k, seed, DEFAULT_REGULAR_RETRIES),
        }
    }

    pub fn is_random(&self) -> bool {
        matches!(self, GraphFamily::Gnp(..) | GraphFamily::RandomRegular(..))
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamily::Cycle(n) => write!(f, "cycle:{n}"),
            GraphFamily::Complete(n) => write!(f, "complete:{n}"),
            GraphFamily::CompleteBipartite(a, b) => write!(f, "complete-bipartite:{a},{b}"),
            GraphFamily::Kneser(m, n) => write!(f, "kneser:{m},{n}"),
            GraphFamily::Gnp(n, p) => write!(f, "gnp:{n},{p}"),
            GraphFamily::RandomRegular(n, k) => write!(f, "regular:{n},{k}"),
        }
    }
}

impl FromStr for GraphFamily {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let args: Vec<&str> = args.split(',').map(str::trim).filter(|a| !a.is_empty()).collect();
        let int = |i: usize| -> Result<usize, GraphError> {
            args.get(i)
                .ok_or_else(|| invalid(format!("{name}: missing argument {}", i + 1)))?
                .parse()
                .map_err(|_| invalid(format!("{name}: argument {} is not an integer", i + 1)))
        };
        let arity = |k: usize| -> Result<(), GraphError> {
            if args.len() == k {
                Ok(())
            } else {
                Err(invalid(format!("{name}: expected {k} arguments, got {}", args.len())))
            }
        };
        match name {
            "cycle" => arity(1).and(Ok(GraphFamily::Cycle(int(0)?))),
            "complete" => arity(1).and(Ok(GraphFamily::Complete(int(0)?))),
            "complete-bipartite" => arity(2).and(Ok(GraphFamily::CompleteBipartite(int(0)?, int(1)?))),
            "kneser" => arity(2).and(Ok(GraphFamily::Kneser(int(0)?, int(1)?))),
            "regular" => arity(2).and(Ok(GraphFamily::RandomRegular(int(0)?, int(1)?))),
            "gnp" => {
                arity(2)?;
                let p = args[1]
                    .parse()
                    .map_err(|_| invalid(format!("gnp: probability {:?} is not a number", args[1])))?;
                Ok(GraphFamily::Gnp(int(0)?, p))
            }
            other => Err(invalid(format!("unknown graph family {other:?}"))),
        }
    }
}
