// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Result, ShyError};

/// A point of `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        LatticePoint(coords.into())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v)
    }
}

impl<const N: usize> From<[i64; N]> for LatticePoint {
    fn from(v: [i64; N]) -> Self {
        LatticePoint(v.to_vec())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// How points of an image are related.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdjacencySpec {
    /// `c_u`: distinct points are adjacent when every coordinate differs by at
    /// most 1 and at most `u` coordinates differ.
    Cu(u32),
    /// Unordered index pairs into the image's point list, stored as `(lo, hi)`.
    ExplicitEdges(BTreeSet<(usize, usize)>),
}

impl AdjacencySpec {
    pub fn edges<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Self {
        AdjacencySpec::ExplicitEdges(
            pairs
                .into_iter()
                .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
                .collect(),
        )
    }
}

fn cu_adjacent(p: &LatticePoint, q: &LatticePoint, u: u32) -> bool {
    let mut changed = 0u32;
    for (a, b) in p.0.iter().zip(&q.0) {
        let d = (a - b).abs();
        if d > 1 {
            return false;
        }
        if d == 1 {
            changed += 1;
        }
    }
    changed >= 1 && changed <= u
}

/// A finite set of lattice points together with an adjacency relation.
///
/// Points keep the order they were given in; indices into that order are used
/// throughout the crate (map tables, explicit edges, point sets). Images are
/// immutable once built.
#[derive(Debug, Clone)]
pub struct DigitalImage {
    dim: usize,
    points: Vec<LatticePoint>,
    index: HashMap<LatticePoint, usize>,
    adjacency: AdjacencySpec,
    neighbors: Vec<Vec<usize>>,
    masks: Option<Vec<u64>>,
}

impl DigitalImage {
    pub fn new(dim: usize, points: Vec<LatticePoint>, adjacency: AdjacencySpec) -> Result<Self> {
        if dim == 0 {
            return Err(ShyError::Domain("dimension must be at least 1".into()));
        }
        let mut index = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if p.dim() != dim {
                return Err(ShyError::Domain(format!(
                    "point {p} has dimension {}, image dimension is {dim}",
                    p.dim()
                )));
            }
            if index.insert(p.clone(), i).is_some() {
                return Err(ShyError::Domain(format!("duplicate point {p}")));
            }
        }
        let n = points.len();
        let mut neighbors = vec![Vec::new(); n];
        match &adjacency {
            AdjacencySpec::Cu(u) => {
                if *u < 1 || *u as usize > dim {
                    return Err(ShyError::Domain(format!(
                        "c{u} adjacency needs 1 <= u <= {dim}"
                    )));
                }
                for i in 0..n {
                    for j in (i + 1)..n {
                        if cu_adjacent(&points[i], &points[j], *u) {
                            neighbors[i].push(j);
                            neighbors[j].push(i);
                        }
                    }
                }
            }
            AdjacencySpec::ExplicitEdges(edges) => {
                for &(a, b) in edges {
                    if a >= n || b >= n {
                        return Err(ShyError::Domain(format!(
                            "edge ({a}, {b}) refers to a point outside 0..{n}"
                        )));
                    }
                    if a == b {
                        return Err(ShyError::Domain(format!("self-loop at point {a}")));
                    }
                    neighbors[a].push(b);
                    neighbors[b].push(a);
                }
                for list in &mut neighbors {
                    list.sort_unstable();
                }
            }
        }
        let masks = (n <= 64).then(|| {
            neighbors
                .iter()
                .map(|ns| ns.iter().fold(0u64, |m, &j| m | (1 << j)))
                .collect()
        });
        Ok(DigitalImage {
            dim,
            points,
            index,
            adjacency,
            neighbors,
            masks,
        })
    }

    /// Image with `c_u` adjacency; the dimension is taken from the first point.
    pub fn with_cu(points: Vec<LatticePoint>, u: u32) -> Result<Self> {
        let dim = points
            .first()
            .map(LatticePoint::dim)
            .ok_or_else(|| ShyError::Domain("c_u image needs at least one point".into()))?;
        Self::new(dim, points, AdjacencySpec::Cu(u))
    }

    pub fn with_edges(
        points: Vec<LatticePoint>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let dim = points.first().map(LatticePoint::dim).unwrap_or(1);
        Self::new(dim, points, AdjacencySpec::edges(edges))
    }

    /// The digital interval `[a, b]` of `Z` under `c_1`.
    pub fn interval(a: i64, b: i64) -> Self {
        let points = (a..=b).map(|z| LatticePoint(vec![z])).collect();
        Self::new(1, points, AdjacencySpec::Cu(1)).expect("interval is well formed")
    }

    /// The cycle graph on `n` points `(0), ..., (n-1)` of `Z`, with explicit
    /// edges `i ~ i+1 mod n`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 points");
        let points = (0..n as i64).map(|z| LatticePoint(vec![z])).collect();
        Self::new(1, points, AdjacencySpec::edges((0..n).map(|i| (i, (i + 1) % n))))
            .expect("cycle is well formed")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &LatticePoint {
        &self.points[i]
    }

    pub fn adjacency(&self) -> &AdjacencySpec {
        &self.adjacency
    }

    pub fn index_of(&self, p: &LatticePoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub(crate) fn require_index(&self, p: &LatticePoint) -> Result<usize> {
        self.index_of(p)
            .ok_or_else(|| ShyError::Domain(format!("point {p} is not in the image")))
    }

    pub(crate) fn require_indices(&self, set: &[LatticePoint]) -> Result<Vec<usize>> {
        let mut out = set
            .iter()
            .map(|p| self.require_index(p))
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    /// Neighbor bitmasks, available when the image has at most 64 points.
    pub(crate) fn neighbor_masks(&self) -> Option<&[u64]> {
        self.masks.as_deref()
    }

    pub fn adjacent_idx(&self, i: usize, j: usize) -> bool {
        match &self.masks {
            Some(m) => m[i] >> j & 1 == 1,
            None => self.neighbors[i].binary_search(&j).is_ok(),
        }
    }

    pub fn are_adjacent(&self, p: &LatticePoint, q: &LatticePoint) -> Result<bool> {
        let i = self.require_index(p)?;
        let j = self.require_index(q)?;
        Ok(self.adjacent_idx(i, j))
    }

    /// Every edge once, as `(lo, hi)` index pairs in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// The same graph with explicit edges, whatever the original spec was.
    pub fn to_explicit(&self) -> DigitalImage {
        DigitalImage::new(
            self.dim,
            self.points.clone(),
            AdjacencySpec::ExplicitEdges(self.edges().collect()),
        )
        .expect("edges of a valid image are valid")
    }

    /// True when the image is a digital interval of `Z`: one-dimensional,
    /// consecutive integers, adjacency exactly `|a - b| = 1`.
    pub fn is_digital_interval(&self) -> bool {
        if self.dim != 1 || self.is_empty() {
            return false;
        }
        let mut coords: Vec<i64> = self.points.iter().map(|p| p.0[0]).collect();
        coords.sort_unstable();
        if coords.windows(2).any(|w| w[1] != w[0] + 1) {
            return false;
        }
        (0..self.len()).all(|i| {
            (0..self.len()).all(|j| {
                let unit = (self.points[i].0[0] - self.points[j].0[0]).abs() == 1;
                self.adjacent_idx(i, j) == unit
            })
        })
    }
}

/// Two images are equal when they list the same points in the same order and
/// carry the same graph, regardless of how the adjacency was specified.
impl PartialEq for DigitalImage {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.points == other.points && self.neighbors == other.neighbors
    }
}

impl Eq for DigitalImage {}
