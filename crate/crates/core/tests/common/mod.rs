//! Brute-force reference implementations. Deliberately naive: plain
//! enumeration over all assignments, sharing no code with the library.

#![allow(dead_code)]

use dynachrome_core::Graph;

/// Calls `f` on every vector in {0..k}^n until it returns true.
pub fn any_assignment(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k == 0 {
        return n == 0 && f(&[]);
    }
    let mut a = vec![0usize; n];
    loop {
        if f(&a) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            a[i] += 1;
            if a[i] < k {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

pub fn edges_of(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) {
                out.push((u, v));
            }
        }
    }
    out
}

pub fn is_proper(edges: &[(usize, usize)], a: &[usize]) -> bool {
    edges.iter().all(|&(u, v)| a[u] != a[v])
}

pub fn is_dynamic(g: &Graph, edges: &[(usize, usize)], a: &[usize]) -> bool {
    if !is_proper(edges, a) {
        return false;
    }
    (0..g.n()).all(|v| {
        let nb: Vec<usize> = (0..g.n()).filter(|&w| g.has_edge(v, w)).collect();
        nb.len() < 2 || nb.iter().any(|&w| a[w] != a[nb[0]])
    })
}

pub fn naive_chi(g: &Graph) -> usize {
    let edges = edges_of(g);
    (0..=g.n()).find(|&k| any_assignment(g.n(), k, |a| is_proper(&edges, a))).unwrap()
}

pub fn naive_chi_d(g: &Graph) -> usize {
    let edges = edges_of(g);
    (0..=g.n())
        .find(|&k| any_assignment(g.n(), k, |a| is_dynamic(g, &edges, a)))
        .unwrap()
}

/// Some 2-coloring of the hyperedges leaves none monochromatic.
pub fn naive_two_colorable(n: usize, edges: &[Vec<usize>]) -> bool {
    any_assignment(n, 2, |a| edges.iter().all(|e| e.iter().any(|&v| a[v] != a[e[0]])))
}

/// Some subset T gives every vertex neighbours on both sides.
pub fn naive_has_double_total(g: &Graph) -> bool {
    any_assignment(g.n(), 2, |a| {
        (0..g.n()).all(|v| {
            let sides: Vec<usize> = (0..g.n()).filter(|&w| g.has_edge(v, w)).map(|w| a[w]).collect();
            sides.contains(&0) && sides.contains(&1)
        })
    })
}
