//! Certified dynamic colorings assembled from vertex partitions, pair
//! colorings and the Kneser structure.
//!
//! Every public construction re-runs [`check_dynamic`] on its output and
//! returns [`ConstructionError::VerificationFailed`] instead of a coloring
//! that does not verify.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{greedy_coloring_by_id, Color, Coloring};
use crate::exact::{chromatic_number, hypergraph_2color_exact, Outcome};
use crate::generators::KneserSpec;
use crate::graph::{Graph, Vertex};
use crate::hypergraph::neighborhood_hypergraph;
use crate::lll::{find_balanced_subset, find_double_total_dominating, moser_tardos_2color, LllError, LllParams, ResampleLog};
use crate::subset::VertexSubset;
use crate::verify::{
    check_domination, check_dynamic, check_hypergraph_2coloring, check_proper, DominationMode, VerifyError, Violation,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error("subset is not double total dominating ({} violations)", .0.len())]
    NotDoubleTotalDominating(Vec<Violation>),
    #[error("subset is not total dominating ({} violations)", .0.len())]
    NotTotalDominating(Vec<Violation>),
    #[error("{part} coloring is improper ({} violations)", .violations.len())]
    ImproperInput { part: &'static str, violations: Vec<Violation> },
    #[error("hypergraph 2-coloring leaves {} edges monochromatic", .0.len())]
    InvalidHypergraphColoring(Vec<Violation>),
    #[error("{part} coloring covers {got} vertices, expected {expected}")]
    SizeMismatch { part: &'static str, got: usize, expected: usize },
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Lll(#[from] LllError),
    #[error("{what} exhausted after {resamples} resamples")]
    Exhausted { what: &'static str, resamples: u64 },
    #[error("outside the supported regime: {0}")]
    OutsideRegime(String),
    #[error("{0}")]
    StructureFailed(String),
    /// The assembled coloring failed its own check. This is a bug signal.
    #[error("constructed coloring is not dynamic ({} violations)", .0.len())]
    VerificationFailed(Vec<Violation>),
}

fn expect_len(part: &'static str, c: &Coloring, expected: usize) -> Result<(), ConstructionError> {
    if c.len() != expected {
        return Err(ConstructionError::SizeMismatch {
            part,
            got: c.len(),
            expected,
        });
    }
    Ok(())
}

fn expect_proper(part: &'static str, g: &Graph, c: &Coloring) -> Result<(), ConstructionError> {
    expect_len(part, c, g.n())?;
    let violations = check_proper(g, c)?;
    if violations.is_empty() {
        Ok(())
    } else {
        Err(ConstructionError::ImproperInput { part, violations })
    }
}

fn certified(g: &Graph, colors: Vec<Color>, palette: usize) -> Result<Coloring, ConstructionError> {
    let c = Coloring::new(colors, palette).expect("constructed colors lie in the palette");
    let violations = check_dynamic(g, &c)?;
    if violations.is_empty() {
        Ok(c)
    } else {
        Err(ConstructionError::VerificationFailed(violations))
    }
}

/// Colors the two sides of a partition (T, V∖T) from disjoint palettes:
/// T takes `c_in`, the complement takes `c_out` shifted past `c_in`'s palette.
/// `c_in` is indexed by the members of T in ascending order, `c_out` likewise
/// by the complement.
pub fn compose_disjoint_palettes(
    g: &Graph,
    t: &VertexSubset,
    c_in: &Coloring,
    c_out: &Coloring,
) -> Result<Coloring, ConstructionError> {
    let violations = check_domination(g, t, DominationMode::DoubleTotal);
    if !violations.is_empty() {
        return Err(ConstructionError::NotDoubleTotalDominating(violations));
    }
    let out = t.complement();
    let (g_in, _) = g.induced_subgraph(t).expect("subset matches graph");
    let (g_out, _) = g.induced_subgraph(&out).expect("subset matches graph");
    expect_proper("inside", &g_in, c_in)?;
    expect_proper("outside", &g_out, c_out)?;
    let shift = c_in.palette_size();
    let mut colors = vec![0; g.n()];
    for (i, &v) in t.members().iter().enumerate() {
        colors[v] = c_in.color(i);
    }
    for (i, &v) in out.members().iter().enumerate() {
        colors[v] = shift + c_out.color(i);
    }
    certified(g, colors, shift + c_out.palette_size())
}

/// Pair coloring v ↦ 2·c(v) + f(v), where `c` is proper and `f` 2-colors the
/// neighbourhood hypergraph of `g`.
pub fn product_coloring(g: &Graph, c: &Coloring, f: &Coloring) -> Result<Coloring, ConstructionError> {
    expect_proper("base", g, c)?;
    expect_len("hypergraph", f, g.n())?;
    let nh = neighborhood_hypergraph(g, None);
    let violations = check_hypergraph_2coloring(&nh.hypergraph, f)?;
    if !violations.is_empty() {
        return Err(ConstructionError::InvalidHypergraphColoring(violations));
    }
    let colors = (0..g.n()).map(|v| 2 * c.color(v) + f.color(v)).collect();
    certified(g, colors, 2 * c.palette_size())
}

/// Pair colors 2·c_t + f on a total dominating set T, and `c_out` on a
/// palette after them on V∖T. `f` 2-colors the neighbourhood hypergraph
/// restricted to T; `c_t` and `f` are indexed by T's members in ascending
/// order, `c_out` by the complement's.
pub fn partial_product_coloring(
    g: &Graph,
    t: &VertexSubset,
    c_t: &Coloring,
    f: &Coloring,
    c_out: &Coloring,
) -> Result<Coloring, ConstructionError> {
    let violations = check_domination(g, t, DominationMode::Total);
    if !violations.is_empty() {
        return Err(ConstructionError::NotTotalDominating(violations));
    }
    let out = t.complement();
    let (g_in, _) = g.induced_subgraph(t).expect("subset matches graph");
    let (g_out, _) = g.induced_subgraph(&out).expect("subset matches graph");
    expect_proper("inside", &g_in, c_t)?;
    expect_proper("outside", &g_out, c_out)?;
    expect_len("hypergraph", f, t.len())?;
    let nh = neighborhood_hypergraph(g, Some(t));
    let violations = check_hypergraph_2coloring(&nh.hypergraph, f)?;
    if !violations.is_empty() {
        return Err(ConstructionError::InvalidHypergraphColoring(violations));
    }
    let shift = 2 * c_t.palette_size();
    let mut colors = vec![0; g.n()];
    for (i, &v) in t.members().iter().enumerate() {
        colors[v] = 2 * c_t.color(i) + f.color(i);
    }
    for (i, &v) in out.members().iter().enumerate() {
        colors[v] = shift + c_out.color(i);
    }
    certified(g, colors, shift + c_out.palette_size())
}

/// How the hypergraph 2-coloring of a pipeline was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoColoringSource {
    Exact,
    MoserTardos,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KneserColoring {
    pub spec: KneserSpec,
    pub graph: Graph,
    pub coloring: Coloring,
    pub colors_used: usize,
    /// Vertices whose subset avoids {1, ..., t}.
    pub subset: VertexSubset,
    pub two_coloring: TwoColoringSource,
}

/// Node budget for the exact hypergraph 2-coloring before falling back to
/// resampling.
const KNESER_EXACT_BUDGET: u64 = 2_000_000;

/// Dynamic coloring of KG(2n + t, n) with at most t + 4 colors, 1 ≤ t < n.
///
/// T is the set of n-subsets of {t+1, ..., m}. The complement is colored by
/// minimum element, G[T] by a breadth-first 2-coloring, and T by pairs with
/// a 2-coloring of the neighbourhoods that lie inside T.
pub fn kneser_dynamic_coloring(spec: KneserSpec) -> Result<KneserColoring, ConstructionError> {
    let t = spec.t();
    if t < 1 || t >= spec.n {
        return Err(ConstructionError::OutsideRegime(format!(
            "KG({}, {}) has t = {t}; need 1 <= t < n",
            spec.m, spec.n
        )));
    }
    let g = spec.graph();
    let sets = spec.subsets();
    let low: u64 = (1u64 << t) - 1;
    let subset = VertexSubset::from_mask(sets.iter().map(|&s| s & low == 0).collect());
    let out = subset.complement();

    let c_out = Coloring::new(
        out.members().iter().map(|&v| sets[v].trailing_zeros() as usize).collect(),
        t,
    )
    .expect("minimum element lies in 1..=t");

    let (g_in, _) = g.induced_subgraph(&subset).expect("subset matches graph");
    let sides = g_in.bipartition().ok_or_else(|| {
        ConstructionError::StructureFailed(format!("G[T] is not bipartite for KG({}, {})", spec.m, spec.n))
    })?;
    let c_t = Coloring::new(sides, 2).expect("bipartition sides are 0 or 1");

    let nh = neighborhood_hypergraph(&g, Some(&subset));
    let report = hypergraph_2color_exact(&nh.hypergraph, KNESER_EXACT_BUDGET);
    let (f, two_coloring) = match report.outcome {
        Outcome::Found(f) => (f, TwoColoringSource::Exact),
        Outcome::Infeasible => {
            return Err(ConstructionError::StructureFailed(
                "neighbourhoods inside T admit no 2-coloring".into(),
            ))
        }
        Outcome::BudgetExhausted => {
            log::info!("exact 2-coloring exhausted its budget; resampling instead");
            let run = moser_tardos_2color(&nh.hypergraph, 0, None);
            let resamples = run.log.resample_count;
            let f = run.into_success().ok_or(ConstructionError::Exhausted {
                what: "hypergraph 2-coloring",
                resamples,
            })?;
            (f, TwoColoringSource::MoserTardos)
        }
    };

    let coloring = partial_product_coloring(&g, &subset, &c_t, &f, &c_out)?;
    let colors_used = coloring.colors_used();
    Ok(KneserColoring {
        spec,
        graph: g,
        coloring,
        colors_used,
        subset,
        two_coloring,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BalancedColoring {
    pub coloring: Coloring,
    pub subset: VertexSubset,
    pub params: LllParams,
    pub log: ResampleLog,
    /// palette(chi_witness) + ⌊2 c' ln k⌋ + 1.
    pub color_bound: usize,
}

/// Colors a balanced subset T greedily and V∖T from `chi_witness` on a
/// palette after T's. A degenerate p is clamped to 1/2.
pub fn balanced_subset_coloring(
    g: &Graph,
    params: &LllParams,
    chi_witness: &Coloring,
) -> Result<BalancedColoring, ConstructionError> {
    expect_proper("witness", g, chi_witness)?;
    let params = params.clamped();
    let found = find_balanced_subset(g, &params)?;
    let log = found.run.log.clone();
    let subset = found.run.into_success().ok_or(ConstructionError::Exhausted {
        what: "balanced subset",
        resamples: log.resample_count,
    })?;
    let (g_in, map) = g.induced_subgraph(&subset).expect("subset matches graph");
    let c_in = greedy_coloring_by_id(&g_in);
    let shift = c_in.palette_size();
    let mut colors = vec![0; g.n()];
    for (i, &v) in map.iter().enumerate() {
        colors[v] = c_in.color(i);
    }
    for v in subset.complement().members() {
        colors[*v] = shift + chi_witness.color(*v);
    }
    let coloring = certified(g, colors, shift + chi_witness.palette_size())?;
    Ok(BalancedColoring {
        coloring,
        subset,
        params,
        log,
        color_bound: chi_witness.palette_size() + params.degree_ceiling().floor() as usize + 1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TriangleCertificate {
    pub certified: bool,
}

/// Certifies that the proper coloring `c` is dynamic because every vertex
/// lies in a triangle. The claim is confirmed by [`check_dynamic`].
pub fn triangle_certificate(g: &Graph, c: &Coloring) -> Result<TriangleCertificate, ConstructionError> {
    expect_proper("input", g, c)?;
    let certified = g.vertices_in_triangles().len() == g.n();
    if certified {
        let violations = check_dynamic(g, c)?;
        if !violations.is_empty() {
            return Err(ConstructionError::VerificationFailed(violations));
        }
    }
    Ok(TriangleCertificate { certified })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoubleTotalColoring {
    pub coloring: Coloring,
    pub subset: VertexSubset,
    pub chi_inside: usize,
    pub chi_outside: usize,
    pub log: ResampleLog,
}

/// Resamples a double total dominating set T, colors G[T] and G[V∖T]
/// optimally and composes them on disjoint palettes.
pub fn double_total_coloring(
    g: &Graph,
    seed: u64,
    max_resamples: Option<u64>,
    budget: u64,
) -> Result<DoubleTotalColoring, ConstructionError> {
    let run = find_double_total_dominating(g, seed, max_resamples)?;
    let log = run.log.clone();
    let subset = run.into_success().ok_or(ConstructionError::Exhausted {
        what: "double total dominating set",
        resamples: log.resample_count,
    })?;
    let (g_in, _) = g.induced_subgraph(&subset).expect("subset matches graph");
    let (g_out, _) = g.induced_subgraph(&subset.complement()).expect("subset matches graph");
    let inside = chromatic_number(&g_in, budget);
    let outside = chromatic_number(&g_out, budget);
    let coloring = compose_disjoint_palettes(g, &subset, &inside.witness, &outside.witness)?;
    Ok(DoubleTotalColoring {
        coloring,
        subset,
        chi_inside: inside.value,
        chi_outside: outside.value,
        log,
    })
}

/// Resamples a 2-coloring f of the neighbourhood hypergraph and returns the
/// pair coloring 2·c + f.
pub fn neighborhood_product_coloring(
    g: &Graph,
    c: &Coloring,
    seed: u64,
    max_resamples: Option<u64>,
) -> Result<(Coloring, ResampleLog), ConstructionError> {
    let nh = neighborhood_hypergraph(g, None);
    let run = moser_tardos_2color(&nh.hypergraph, seed, max_resamples);
    let log = run.log.clone();
    let f = run.into_success().ok_or(ConstructionError::Exhausted {
        what: "hypergraph 2-coloring",
        resamples: log.resample_count,
    })?;
    Ok((product_coloring(g, c, &f)?, log))
}

/// Subset-bitmask label of a Kneser vertex, elements listed from 1.
pub fn kneser_label(set: u64) -> Vec<Vertex> {
    (0..64).filter(|i| set >> i & 1 == 1).map(|i| i + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, cycle, random_regular, DEFAULT_REGULAR_RETRIES};

    fn col(v: &[usize]) -> Coloring {
        Coloring::from_colors(v.to_vec())
    }

    #[test]
    fn compose_on_c8_and_k4() {
        let g = cycle(8).unwrap();
        let t = VertexSubset::new(8, [0, 1, 4, 5]).unwrap();
        // G[T] and its complement are both perfect matchings.
        let c = compose_disjoint_palettes(&g, &t, &col(&[0, 1, 0, 1]), &col(&[0, 1, 0, 1])).unwrap();
        assert_eq!(c.palette_size(), 4);

        let k4 = complete(4).unwrap();
        let t = VertexSubset::new(4, [0, 1]).unwrap();
        let c = compose_disjoint_palettes(&k4, &t, &col(&[0, 1]), &col(&[0, 1])).unwrap();
        assert_eq!(c.to_vec().unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn compose_rejects_bad_inputs() {
        let g = cycle(6).unwrap();
        let t = VertexSubset::new(6, [0, 1, 3, 4]).unwrap();
        assert!(matches!(
            compose_disjoint_palettes(&g, &t, &col(&[0, 1, 0, 1]), &col(&[0, 0])),
            Err(ConstructionError::NotDoubleTotalDominating(_))
        ));
        let g = cycle(8).unwrap();
        let t = VertexSubset::new(8, [0, 1, 4, 5]).unwrap();
        assert!(matches!(
            compose_disjoint_palettes(&g, &t, &col(&[0, 0, 0, 1]), &col(&[0, 1, 0, 1])),
            Err(ConstructionError::ImproperInput { part: "inside", .. })
        ));
    }

    #[test]
    fn product_on_cycles_and_k4() {
        // On C6 the neighbourhoods form two triangles, so no f exists.
        let nh6 = neighborhood_hypergraph(&cycle(6).unwrap(), None);
        assert!(hypergraph_2color_exact(&nh6.hypergraph, 10_000).is_infeasible());
        let g = cycle(8).unwrap();
        let nh = neighborhood_hypergraph(&g, None);
        let f = hypergraph_2color_exact(&nh.hypergraph, 10_000).into_found().unwrap();
        let c = product_coloring(&g, &col(&[0, 1, 0, 1, 0, 1, 0, 1]), &f).unwrap();
        assert!(c.colors_used() <= 4);

        let k4 = complete(4).unwrap();
        let c = product_coloring(&k4, &col(&[0, 1, 2, 3]), &col(&[0, 0, 1, 1])).unwrap();
        assert!(c.palette_size() <= 8);

        assert!(matches!(
            product_coloring(&g, &col(&[0, 1, 0, 1, 0, 1, 0, 1]), &Coloring::new(vec![0; 8], 2).unwrap()),
            Err(ConstructionError::InvalidHypergraphColoring(_))
        ));
    }

    #[test]
    fn product_on_nine_regular() {
        let g = random_regular(40, 9, 3, DEFAULT_REGULAR_RETRIES).unwrap();
        let c = greedy_coloring_by_id(&g);
        let (h, log) = neighborhood_product_coloring(&g, &c, 1, None).unwrap();
        assert!(h.palette_size() <= 2 * c.palette_size());
        assert_eq!(log.outcome, crate::lll::ResampleOutcome::Success);
    }

    #[test]
    fn partial_product_on_k4() {
        let k4 = complete(4).unwrap();
        let t = VertexSubset::new(4, [0, 1, 2]).unwrap();
        let nh = neighborhood_hypergraph(&k4, Some(&t));
        assert_eq!(nh.hypergraph.edge_count(), 1);
        let c = partial_product_coloring(&k4, &t, &col(&[0, 1, 2]), &col(&[0, 1, 0]), &col(&[0])).unwrap();
        assert!(c.palette_size() <= 7);

        let c8 = cycle(8).unwrap();
        let t = VertexSubset::new(8, [0]).unwrap();
        assert!(matches!(
            partial_product_coloring(&c8, &t, &col(&[0]), &col(&[0]), &col(&[0; 7])),
            Err(ConstructionError::NotTotalDominating(_))
        ));
    }

    #[test]
    fn kneser_small_cases() {
        let k = kneser_dynamic_coloring(KneserSpec::new(7, 3).unwrap()).unwrap();
        assert!(k.colors_used <= 5);
        assert_eq!(k.subset.len(), 20);
        let k = kneser_dynamic_coloring(KneserSpec::new(8, 3).unwrap()).unwrap();
        assert!(k.colors_used <= 6);
        assert!(matches!(
            kneser_dynamic_coloring(KneserSpec::new(9, 3).unwrap()),
            Err(ConstructionError::OutsideRegime(_))
        ));
        assert!(matches!(
            kneser_dynamic_coloring(KneserSpec::new(6, 3).unwrap()),
            Err(ConstructionError::OutsideRegime(_))
        ));
        assert_eq!(kneser_label(0b1011), vec![1, 2, 4]);
    }

    #[test]
    fn balanced_on_bipartite() {
        let g = complete_bipartite(16, 16).unwrap();
        let params = LllParams::new(16, 7.0, 4).unwrap();
        let chi = Coloring::new(g.bipartition().unwrap(), 2).unwrap();
        let out = balanced_subset_coloring(&g, &params, &chi).unwrap();
        assert!(out.params.clamped);
        assert!(out.coloring.palette_size() <= out.color_bound);
    }

    #[test]
    fn balanced_rejects_irregular() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let params = LllParams::new(2, 7.0, 0).unwrap();
        assert!(matches!(
            balanced_subset_coloring(&g, &params, &col(&[0, 1, 0])),
            Err(ConstructionError::Lll(LllError::NotRegular))
        ));
    }

    #[test]
    fn triangle_certificates() {
        let k4 = complete(4).unwrap();
        assert!(triangle_certificate(&k4, &col(&[3, 1, 0, 2])).unwrap().certified);
        assert!(!triangle_certificate(&cycle(5).unwrap(), &col(&[0, 1, 0, 1, 2])).unwrap().certified);
        assert!(triangle_certificate(&k4, &col(&[0, 0, 1, 2])).is_err());
    }

    #[test]
    fn double_total_pipeline_on_c8() {
        let out = double_total_coloring(&cycle(8).unwrap(), 5, None, 10_000).unwrap();
        assert!(out.coloring.palette_size() <= out.chi_inside + out.chi_outside);
        assert!(matches!(
            double_total_coloring(&cycle(6).unwrap(), 5, Some(1000), 10_000),
            Err(ConstructionError::Exhausted { .. })
        ));
    }
}
