//! Upper bounds on the dynamic chromatic number with their hypotheses.
//!
//! A bound is reported as applicable only after its hypothesis has been
//! checked on the instance. Where a bound needs χ of some graph and no exact
//! value is supplied, the solver's value is used; it is always realised by a
//! proper coloring, so the bound stays valid even when the search ran out of
//! budget.

use serde::Serialize;

use crate::coloring::greedy_coloring_by_id;
use crate::exact::{chromatic_number, is_k_critical};
use crate::generators::KneserSpec;
use crate::graph::Graph;
use crate::lll::lll_condition_graph;
use crate::subset::VertexSubset;
use crate::verify::{check_domination, DominationMode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRecord {
    pub name: &'static str,
    pub applicable: bool,
    pub value: Option<usize>,
    pub source: &'static str,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub records: Vec<BoundRecord>,
}

impl BoundReport {
    /// Smallest applicable bound.
    pub fn best(&self) -> Option<&BoundRecord> {
        self.records
            .iter()
            .filter(|r| r.applicable && r.value.is_some())
            .min_by_key(|r| r.value)
    }

    pub fn get(&self, name: &str) -> Option<&BoundRecord> {
        self.records.iter().find(|r| r.name == name)
    }
}

/// Optional extra knowledge about the instance.
#[derive(Debug, Clone, Default)]
pub struct BoundContext {
    pub chi: Option<usize>,
    pub total_dominating: Option<VertexSubset>,
    pub double_total_dominating: Option<VertexSubset>,
    pub kneser: Option<KneserSpec>,
    /// Node budget for the solver calls made while evaluating bounds.
    pub budget: u64,
    /// Criticality is only tested on graphs with at most this many vertices.
    pub critical_max_n: usize,
}

impl BoundContext {
    pub fn new(budget: u64) -> Self {
        Self {
            budget,
            critical_max_n: 30,
            ..Self::default()
        }
    }
}

fn record(name: &'static str, source: &'static str, value: Option<usize>, applicable: bool, note: impl Into<String>) -> BoundRecord {
    BoundRecord {
        name,
        applicable,
        value,
        source,
        note: note.into(),
    }
}

/// Per component: C5 needs 5, Δ ≤ 3 allows 4, otherwise Δ + 1; never more
/// than the component order.
fn max_degree_bound(g: &Graph) -> BoundRecord {
    let comp = g.components();
    let count = comp.iter().max().map_or(0, |&c| c + 1);
    let mut members = vec![Vec::new(); count];
    for (v, &c) in comp.iter().enumerate() {
        members[c].push(v);
    }
    let mut value = 0;
    let mut has_c5 = false;
    for m in &members {
        let sub = VertexSubset::new(g.n(), m.iter().copied()).expect("component vertices are in range");
        let (h, _) = g.induced_subgraph(&sub).expect("component vertices are in range");
        let b = if h.is_c5() {
            has_c5 = true;
            5
        } else if h.max_degree() <= 3 {
            4
        } else {
            h.max_degree() + 1
        };
        value = value.max(b.min(h.n()));
    }
    let note = if has_c5 {
        "a C5 component needs 5 colors"
    } else {
        "per component, excluding C5"
    };
    record("max_degree", "Δ + 1, or 4 when Δ ≤ 3, unless C5", Some(value), true, note)
}

pub fn bound_report(g: &Graph, ctx: &BoundContext) -> BoundReport {
    let mut records = vec![max_degree_bound(g)];
    let chi = ctx.chi.unwrap_or_else(|| chromatic_number(g, ctx.budget).value);
    let chi_note = if ctx.chi.is_some() {
        "χ supplied"
    } else {
        "χ from solver"
    };
    let lll = lll_condition_graph(g.max_degree(), g.min_degree());

    let all_triangles = g.vertices_in_triangles().len() == g.n();
    records.push(record(
        "triangles",
        "every vertex in a triangle: χ_d = χ",
        Some(chi),
        all_triangles,
        if all_triangles {
            chi_note.to_string()
        } else {
            format!("{} vertices lie in no triangle", g.n() - g.vertices_in_triangles().len())
        },
    ));

    records.push(record(
        "lll_two_chi",
        "e Δ² ≤ 2^(δ-1): χ_d ≤ 2χ",
        Some(2 * chi),
        lll.holds,
        format!("e Δ² / 2^(δ-1) = {:.4}", lll.margin),
    ));

    let regular = g.regular_degree();
    let regular_ok = matches!(regular, Some(k) if k >= 4);
    records.push(record(
        "regular_two_chi",
        "k-regular, k ≥ 4: χ_d ≤ 2χ",
        Some(2 * chi),
        regular_ok,
        match regular {
            Some(k) => format!("{k}-regular"),
            None => "not regular".to_string(),
        },
    ));

    records.push(match &ctx.double_total_dominating {
        None => record("double_total", "χ(G[V∖T]) + χ(G[T])", None, false, "no double total dominating set given"),
        Some(t) if !check_domination(g, t, DominationMode::DoubleTotal).is_empty() => record(
            "double_total",
            "χ(G[V∖T]) + χ(G[T])",
            None,
            false,
            "given set is not double total dominating",
        ),
        Some(t) => {
            let (a, b) = split_chi(g, t, ctx.budget);
            record("double_total", "χ(G[V∖T]) + χ(G[T])", Some(a + b), true, format!("χ(T) = {a}, χ(V∖T) = {b}"))
        }
    });

    records.push(match &ctx.total_dominating {
        None => record("total_lll", "χ(G[V∖T]) + 2χ(G[T])", None, false, "no total dominating set given"),
        Some(t) if t.len() == g.n() || !check_domination(g, t, DominationMode::Total).is_empty() => record(
            "total_lll",
            "χ(G[V∖T]) + 2χ(G[T])",
            None,
            false,
            "given set is not a proper total dominating subset",
        ),
        Some(t) => {
            let (a, b) = split_chi(g, t, ctx.budget);
            record(
                "total_lll",
                "χ(G[V∖T]) + 2χ(G[T])",
                Some(2 * a + b),
                lll.holds,
                format!("χ(T) = {a}, χ(V∖T) = {b}; e Δ² / 2^(δ-1) = {:.4}", lll.margin),
            )
        }
    });

    records.push(match ctx.kneser {
        Some(spec) if spec.graph() == *g => {
            let t = spec.t();
            if t >= spec.n {
                record("kneser", "KG(m, n), m ≥ 3n: χ_d = χ = t + 2", Some(t + 2), true, "every vertex in a triangle")
            } else {
                record("kneser", "KG(2n + t, n), t < n: χ_d ≤ t + 4", Some(t + 4), true, format!("t = {t}"))
            }
        }
        Some(_) => record("kneser", "KG(2n + t, n): χ_d ≤ t + 4", None, false, "graph does not match the Kneser spec"),
        None => record("kneser", "KG(2n + t, n): χ_d ≤ t + 4", None, false, "not given as a Kneser graph"),
    });

    records.push(critical_bound(g, ctx, lll.holds));

    BoundReport { records }
}

fn split_chi(g: &Graph, t: &VertexSubset, budget: u64) -> (usize, usize) {
    let (g_in, _) = g.induced_subgraph(t).expect("subset matches graph");
    let (g_out, _) = g.induced_subgraph(&t.complement()).expect("subset matches graph");
    (chromatic_number(&g_in, budget).value, chromatic_number(&g_out, budget).value)
}

fn critical_bound(g: &Graph, ctx: &BoundContext, lll_holds: bool) -> BoundRecord {
    const SOURCE: &str = "k-critical with e Δ² ≤ 2^(δ-1): χ_d ≤ 2k - 2";
    if !lll_holds {
        return record("critical", SOURCE, None, false, "e Δ² ≤ 2^(δ-1) fails");
    }
    if g.n() > ctx.critical_max_n {
        return record("critical", SOURCE, None, false, "criticality not tested at this size");
    }
    match is_k_critical(g, ctx.budget) {
        Ok(c) if c.critical => record("critical", SOURCE, Some(2 * c.k - 2), true, format!("{}-critical", c.k)),
        Ok(c) => record("critical", SOURCE, None, false, format!("not critical; χ = {}", c.k)),
        Err(e) => record("critical", SOURCE, None, false, e.to_string()),
    }
}

/// Number of colors used by the greedy id-order coloring.
pub fn greedy_chi(g: &Graph) -> usize {
    greedy_coloring_by_id(g).palette_size()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::DEFAULT_BUDGET;
    use crate::generators::{complete, cycle, kneser, random_regular, DEFAULT_REGULAR_RETRIES};

    #[test]
    fn petersen_subcubic() {
        let r = bound_report(&kneser(5, 2).unwrap(), &BoundContext::new(DEFAULT_BUDGET));
        assert_eq!(r.get("max_degree").unwrap().value, Some(4));
        assert!(!r.get("triangles").unwrap().applicable);
    }

    #[test]
    fn c5_excluded() {
        let r = bound_report(&cycle(5).unwrap(), &BoundContext::new(DEFAULT_BUDGET));
        let rec = r.get("max_degree").unwrap();
        assert_eq!(rec.value, Some(5));
        assert!(rec.note.contains("C5"));
        let r = bound_report(&cycle(4).unwrap(), &BoundContext::new(DEFAULT_BUDGET));
        assert_eq!(r.get("max_degree").unwrap().value, Some(4));
    }

    #[test]
    fn nine_regular_two_chi() {
        let g = random_regular(20, 9, 1, DEFAULT_REGULAR_RETRIES).unwrap();
        let r = bound_report(&g, &BoundContext::new(DEFAULT_BUDGET));
        assert!(r.get("lll_two_chi").unwrap().applicable);
        assert!(r.get("regular_two_chi").unwrap().applicable);
        assert!(!r.get("critical").unwrap().applicable);
    }

    #[test]
    fn kneser_and_triangles() {
        let mut ctx = BoundContext::new(DEFAULT_BUDGET);
        ctx.kneser = Some(KneserSpec::new(7, 3).unwrap());
        let r = bound_report(&kneser(7, 3).unwrap(), &ctx);
        assert_eq!(r.get("kneser").unwrap().value, Some(5));
        assert!(r.get("kneser").unwrap().applicable);
        let r = bound_report(&complete(4).unwrap(), &ctx);
        assert!(!r.get("kneser").unwrap().applicable);
        assert_eq!(r.best().unwrap().value, Some(4));
    }

    #[test]
    fn given_sets_are_checked() {
        let mut ctx = BoundContext::new(DEFAULT_BUDGET);
        ctx.double_total_dominating = Some(VertexSubset::new(8, [0, 1, 4, 5]).unwrap());
        let r = bound_report(&cycle(8).unwrap(), &ctx);
        assert_eq!(r.get("double_total").unwrap().value, Some(4));
        ctx.double_total_dominating = Some(VertexSubset::new(8, [0, 1]).unwrap());
        let r = bound_report(&cycle(8).unwrap(), &ctx);
        assert!(!r.get("double_total").unwrap().applicable);
    }
}
