mod common;

use common::*;
use dynachrome_core::bounds::{bound_report, BoundContext};
use dynachrome_core::constructions::{compose_disjoint_palettes, kneser_dynamic_coloring, product_coloring};
use dynachrome_core::exact::{chromatic_number, dynamic_chromatic_number, hypergraph_2color_exact, DEFAULT_BUDGET};
use dynachrome_core::generators::{gnp, random_regular, random_uniform_hypergraph, KneserSpec, DEFAULT_REGULAR_RETRIES};
use dynachrome_core::hypergraph::{neighborhood_hypergraph, regularize_hypergraph, DEFAULT_VERTEX_BUDGET};
use dynachrome_core::io::{read_dimacs, read_edge_list, write_dimacs, write_edge_list};
use dynachrome_core::lll::{find_double_total_dominating, moser_tardos_2color, select_sublists, intersecting_neighborhoods};
use dynachrome_core::verify::{check_domination, check_dynamic, check_hypergraph_2coloring, check_proper, DominationMode};
use dynachrome_core::{Coloring, Graph, ListAssignment, VertexSubset};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0usize..=max_n, 0.0f64..=1.0, any::<u64>()).prop_map(|(n, p, seed)| gnp(n, p, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gnp_is_simple_and_symmetric(g in graph(30)) {
        let mut sum = 0;
        for v in 0..g.n() {
            let nb = g.neighbors(v);
            prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(!nb.contains(&v));
            for &w in nb {
                prop_assert!(g.neighbors(w).contains(&v));
            }
            sum += nb.len();
        }
        prop_assert_eq!(sum, 2 * g.edge_count());
    }

    #[test]
    fn dimacs_round_trip(g in graph(40)) {
        prop_assert_eq!(read_dimacs(&write_dimacs(&g)).unwrap(), g.clone());
        let back = read_edge_list(&write_edge_list(&g)).unwrap();
        // Edge lists drop trailing isolated vertices.
        prop_assert_eq!(back.edge_count(), g.edge_count());
        prop_assert!(back.edges().eq(g.edges()));
    }

    #[test]
    fn random_regular_is_regular(half in 3usize..=20, k in 1usize..=6, seed in any::<u64>()) {
        let n = 2 * half;
        prop_assume!(k < n);
        let g = random_regular(n, k, seed, DEFAULT_REGULAR_RETRIES).unwrap();
        prop_assert_eq!(g.regular_degree(), Some(k));
        prop_assert_eq!(g.edge_count(), n * k / 2);
    }

    #[test]
    fn dynamic_implies_proper(g in graph(8), colors in prop::collection::vec(0usize..4, 8)) {
        let c = Coloring::new(colors[..g.n()].to_vec(), 4).unwrap();
        if check_dynamic(&g, &c).unwrap().is_empty() {
            prop_assert!(check_proper(&g, &c).unwrap().is_empty());
        }
        let edges = edges_of(&g);
        prop_assert_eq!(check_dynamic(&g, &c).unwrap().is_empty(), is_dynamic(&g, &edges, c.to_vec().unwrap().as_slice()));
    }

    #[test]
    fn double_total_means_both_sides_total(g in graph(12), mask in prop::collection::vec(any::<bool>(), 12)) {
        let t = VertexSubset::from_mask(mask[..g.n()].to_vec());
        if check_domination(&g, &t, DominationMode::DoubleTotal).is_empty() {
            prop_assert!(check_domination(&g, &t, DominationMode::Total).is_empty());
            prop_assert!(check_domination(&g, &t.complement(), DominationMode::Total).is_empty());
        }
    }

    #[test]
    fn resampling_is_deterministic(seed in any::<u64>(), hseed in any::<u64>()) {
        let h = random_uniform_hypergraph(30, 5, 3, 18, hseed).unwrap();
        let a = moser_tardos_2color(&h, seed, None);
        let b = moser_tardos_2color(&h, seed, None);
        prop_assert_eq!(&a, &b);
        if a.succeeded() {
            prop_assert!(check_hypergraph_2coloring(&h, &a.state).unwrap().is_empty());
        }
    }

    #[test]
    fn double_total_resampling_is_sound(seed in any::<u64>(), gseed in any::<u64>()) {
        let g = random_regular(30, 6, gseed, DEFAULT_REGULAR_RETRIES).unwrap();
        let run = find_double_total_dominating(&g, seed, None).unwrap();
        if let Some(t) = run.into_success() {
            prop_assert!(check_domination(&g, &t, DominationMode::DoubleTotal).is_empty());
        }
    }

    #[test]
    fn sublists_are_sound(seed in any::<u64>(), gseed in any::<u64>()) {
        let g = random_regular(20, 3, gseed, DEFAULT_REGULAR_RETRIES).unwrap();
        let lists = ListAssignment::uniform(20, 0..6);
        let run = select_sublists(&g, &lists, 3, seed, None).unwrap();
        if let Some(sub) = run.into_success() {
            prop_assert!(intersecting_neighborhoods(&g, &sub).is_empty());
            for v in 0..20 {
                prop_assert_eq!(sub.list(v).len(), 3);
                prop_assert!(sub.list(v).iter().all(|&c| lists.allows(v, c)));
            }
        }
    }

    #[test]
    fn applicable_bounds_dominate_exact(g in graph(8)) {
        prop_assume!(g.n() > 0);
        let chi_d = dynamic_chromatic_number(&g, DEFAULT_BUDGET);
        prop_assert!(!chi_d.exhausted);
        let report = bound_report(&g, &BoundContext::new(DEFAULT_BUDGET));
        for r in &report.records {
            if r.applicable {
                prop_assert!(r.value.unwrap() >= chi_d.value, "{} = {:?} < {}", r.name, r.value, chi_d.value);
            }
        }
    }

    #[test]
    fn product_uses_at_most_twice(g in graph(9)) {
        let nh = neighborhood_hypergraph(&g, None);
        if let Some(f) = hypergraph_2color_exact(&nh.hypergraph, DEFAULT_BUDGET).into_found() {
            let c = chromatic_number(&g, DEFAULT_BUDGET).witness;
            let h = product_coloring(&g, &c, &f).unwrap();
            prop_assert!(h.palette_size() <= 2 * c.palette_size());
        }
    }

    #[test]
    fn compose_rejects_exactly_non_double_total(g in graph(9), mask in prop::collection::vec(any::<bool>(), 9)) {
        let t = VertexSubset::from_mask(mask[..g.n()].to_vec());
        let (gi, _) = g.induced_subgraph(&t).unwrap();
        let (go, _) = g.induced_subgraph(&t.complement()).unwrap();
        let ci = chromatic_number(&gi, DEFAULT_BUDGET).witness;
        let co = chromatic_number(&go, DEFAULT_BUDGET).witness;
        let ok = check_domination(&g, &t, DominationMode::DoubleTotal).is_empty();
        prop_assert_eq!(compose_disjoint_palettes(&g, &t, &ci, &co).is_ok(), ok);
    }

    #[test]
    fn regularization_preserves_uniformity(n in 6usize..=12, seed in any::<u64>()) {
        let h = random_uniform_hypergraph(n, 4, 4, n / 2, seed).unwrap();
        prop_assume!(h.edge_count() > 0);
        let r = regularize_hypergraph(&h, 4, DEFAULT_VERTEX_BUDGET).unwrap();
        prop_assert!(r.hypergraph.is_uniform(4));
        prop_assert!(r.hypergraph.is_regular(4));
        // Copy 0 is the original hypergraph.
        for (i, e) in h.edges().iter().enumerate() {
            prop_assert_eq!(r.hypergraph.edge(i), e.as_slice());
        }
    }
}

#[test]
fn kneser_adjacency_is_disjointness() {
    for (m, n) in [(5, 2), (7, 3), (8, 3)] {
        let spec = KneserSpec::new(m, n).unwrap();
        let g = spec.graph();
        // Independent enumeration of n-subsets as sorted vectors.
        let mut sets: Vec<Vec<usize>> = Vec::new();
        any_assignment(m, 2, |a| {
            if a.iter().sum::<usize>() == n {
                sets.push((1..=m).filter(|&i| a[i - 1] == 1).collect());
            }
            false
        });
        sets.sort();
        assert_eq!(g.n(), sets.len());
        let labels: Vec<Vec<usize>> = spec
            .subsets()
            .iter()
            .map(|&s| dynachrome_core::constructions::kneser_label(s))
            .collect();
        let mut sorted = labels.clone();
        sorted.sort();
        assert_eq!(sorted, sets);
        for u in 0..g.n() {
            for v in 0..g.n() {
                let disjoint = labels[u].iter().all(|x| !labels[v].contains(x));
                assert_eq!(g.has_edge(u, v), u != v && disjoint);
            }
        }
    }
}

#[test]
fn kneser_colorings_against_exact_values() {
    // KG(7,3): χ = 3; the construction must land within χ + 2 and at or above χ_d.
    let k = kneser_dynamic_coloring(KneserSpec::new(7, 3).unwrap()).unwrap();
    let chi_d = dynamic_chromatic_number(&k.graph, DEFAULT_BUDGET);
    assert!(k.colors_used >= chi_d.lower_bound);
    assert!(k.colors_used <= 5);
}
