use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("vertex {vertex} outside host of size {host_size}")]
pub struct SubsetError {
    pub vertex: Vertex,
    pub host_size: usize,
}

/// A set `T` of vertices of a host graph with `host_size` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SubsetRepr", into = "SubsetRepr")]
pub struct VertexSubset {
    host_size: usize,
    members: Vec<Vertex>,
    mask: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct SubsetRepr {
    host_size: usize,
    members: Vec<Vertex>,
}

impl TryFrom<SubsetRepr> for VertexSubset {
    type Error = SubsetError;

    fn try_from(r: SubsetRepr) -> Result<Self, Self::Error> {
        VertexSubset::new(r.host_size, r.members)
    }
}

impl From<VertexSubset> for SubsetRepr {
    fn from(s: VertexSubset) -> Self {
        SubsetRepr {
            host_size: s.host_size,
            members: s.members,
        }
    }
}

impl VertexSubset {
    pub fn new<I: IntoIterator<Item = Vertex>>(host_size: usize, members: I) -> Result<Self, SubsetError> {
        let mut mask = vec![false; host_size];
        for v in members {
            if v >= host_size {
                return Err(SubsetError { vertex: v, host_size });
            }
            mask[v] = true;
        }
        Ok(Self::from_mask(mask))
    }

    pub fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(v, &m)| m.then_some(v))
            .collect();
        Self {
            host_size: mask.len(),
            members,
            mask,
        }
    }

    pub(crate) fn from_sorted_unchecked(host_size: usize, members: Vec<Vertex>) -> Self {
        let mut mask = vec![false; host_size];
        for &v in &members {
            mask[v] = true;
        }
        Self {
            host_size,
            members,
            mask,
        }
    }

    pub fn empty(host_size: usize) -> Self {
        Self::from_mask(vec![false; host_size])
    }

    pub fn full(host_size: usize) -> Self {
        Self::from_mask(vec![true; host_size])
    }

    pub fn host_size(&self) -> usize {
        self.host_size
    }

    /// Members in ascending order.
    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.mask.get(v).copied().unwrap_or(false)
    }

    pub fn complement(&self) -> Self {
        Self::from_mask(self.mask.iter().map(|&m| !m).collect())
    }

    /// Position of each member within `members()`, `None` for non-members.
    pub fn positions(&self) -> Vec<Option<usize>> {
        let mut pos = vec![None; self.host_size];
        for (i, &v) in self.members.iter().enumerate() {
            pos[v] = Some(i);
        }
        pos
    }

    /// deg_T(v) = |N(v) ∩ T|.
    pub fn degree_into(&self, g: &Graph, v: Vertex) -> usize {
        g.neighbors(v).iter().filter(|&&w| self.contains(w)).count()
    }

    /// |N(v) \ T|.
    pub fn degree_outside(&self, g: &Graph, v: Vertex) -> usize {
        g.degree(v) - self.degree_into(g, v)
    }
}
