use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub type Color = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("vertex {vertex} has color {color}, outside palette of size {palette_size}")]
    ColorOutOfPalette {
        vertex: Vertex,
        color: Color,
        palette_size: usize,
    },
}

/// A total or partial assignment of colors `0..palette_size` to vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ColoringRepr", into = "ColoringRepr")]
pub struct Coloring {
    assignment: Vec<Option<Color>>,
    palette_size: usize,
}

#[derive(Serialize, Deserialize)]
struct ColoringRepr {
    palette_size: usize,
    assignment: Vec<Option<Color>>,
}

impl TryFrom<ColoringRepr> for Coloring {
    type Error = ColoringError;

    fn try_from(r: ColoringRepr) -> Result<Self, Self::Error> {
        Coloring::partial(r.assignment, r.palette_size)
    }
}

impl From<Coloring> for ColoringRepr {
    fn from(c: Coloring) -> Self {
        ColoringRepr {
            palette_size: c.palette_size,
            assignment: c.assignment,
        }
    }
}

impl Coloring {
    pub fn new(colors: Vec<Color>, palette_size: usize) -> Result<Self, ColoringError> {
        Self::partial(colors.into_iter().map(Some).collect(), palette_size)
    }

    pub fn partial(assignment: Vec<Option<Color>>, palette_size: usize) -> Result<Self, ColoringError> {
        for (vertex, c) in assignment.iter().enumerate() {
            if let Some(color) = *c {
                if color >= palette_size {
                    return Err(ColoringError::ColorOutOfPalette {
                        vertex,
                        color,
                        palette_size,
                    });
                }
            }
        }
        Ok(Self {
            assignment,
            palette_size,
        })
    }

    /// Total coloring whose palette is `max color + 1`.
    pub fn from_colors(colors: Vec<Color>) -> Self {
        let palette_size = colors.iter().max().map_or(0, |&m| m + 1);
        Self {
            assignment: colors.into_iter().map(Some).collect(),
            palette_size,
        }
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.assignment.get(v).copied().flatten()
    }

    /// Color of `v`; panics if `v` is uncolored.
    pub fn color(&self, v: Vertex) -> Color {
        self.assignment[v].unwrap_or_else(|| panic!("vertex {v} is uncolored"))
    }

    pub fn assignment(&self) -> &[Option<Color>] {
        &self.assignment
    }

    pub fn is_total(&self) -> bool {
        self.assignment.iter().all(Option::is_some)
    }

    /// The first uncolored vertex, if any.
    pub fn first_uncolored(&self) -> Option<Vertex> {
        self.assignment.iter().position(Option::is_none)
    }

    pub fn colors_used(&self) -> usize {
        self.assignment.iter().flatten().collect::<BTreeSet<_>>().len()
    }

    /// Colors as a plain vector; `None` if partial.
    pub fn to_vec(&self) -> Option<Vec<Color>> {
        self.assignment.iter().copied().collect()
    }
}

/// Greedy coloring visiting vertices in `order`, each taking the smallest
/// color absent from its already-colored neighbours. Uses at most Δ + 1 colors.
pub fn greedy_coloring(g: &Graph, order: &[Vertex]) -> Coloring {
    let mut colors: Vec<Option<Color>> = vec![None; g.n()];
    let mut taken = vec![usize::MAX; g.max_degree() + 2];
    for &v in order {
        for &w in g.neighbors(v) {
            if let Some(c) = colors[w] {
                if c < taken.len() {
                    taken[c] = v;
                }
            }
        }
        colors[v] = Some((0..).find(|&c| taken[c] != v).expect("a free color exists"));
    }
    let palette = colors.iter().flatten().max().map_or(0, |&m| m + 1);
    Coloring::partial(colors, palette).expect("palette covers all colors")
}

/// Greedy coloring in ascending vertex order.
pub fn greedy_coloring_by_id(g: &Graph) -> Coloring {
    let order: Vec<Vertex> = (0..g.n()).collect();
    greedy_coloring(g, &order)
}

/// Per-vertex sets of allowed colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    /// Lists are sorted and deduplicated.
    pub fn new(lists: Vec<Vec<Color>>) -> Self {
        let lists = lists
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        Self { lists }
    }

    /// The same list at every one of `n` vertices.
    pub fn uniform(n: usize, colors: impl IntoIterator<Item = Color>) -> Self {
        let list: Vec<Color> = colors.into_iter().collect();
        Self::new(vec![list; n])
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: Vertex) -> &[Color] {
        &self.lists[v]
    }

    pub fn allows(&self, v: Vertex, c: Color) -> bool {
        self.lists[v].binary_search(&c).is_ok()
    }

    /// One more than the largest color in any list.
    pub fn palette_bound(&self) -> usize {
        self.lists.iter().flat_map(|l| l.last()).max().map_or(0, |&m| m + 1)
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle};

    #[test]
    fn palette_enforced() {
        assert!(Coloring::new(vec![0, 2], 2).is_err());
        let c = Coloring::new(vec![0, 1, 0], 3).unwrap();
        assert_eq!(c.colors_used(), 2);
        assert_eq!(c.palette_size(), 3);
    }

    #[test]
    fn greedy_bounds() {
        let g = complete(5).unwrap();
        assert_eq!(greedy_coloring_by_id(&g).colors_used(), 5);
        let c = greedy_coloring_by_id(&cycle(6).unwrap());
        assert_eq!(c.to_vec().unwrap(), vec![0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn lists_normalised() {
        let l = ListAssignment::new(vec![vec![3, 1, 3]]);
        assert_eq!(l.list(0), &[1, 3]);
        assert!(l.allows(0, 3) && !l.allows(0, 2));
        assert_eq!(l.palette_bound(), 4);
    }

    #[test]
    fn serde_round_trip() {
        let c = Coloring::partial(vec![Some(1), None], 2).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"palette_size":2,"assignment":[1,null]}"#);
        assert_eq!(serde_json::from_str::<Coloring>(&json).unwrap(), c);
        assert!(serde_json::from_str::<Coloring>(r#"{"palette_size":1,"assignment":[1]}"#).is_err());
    }
}
