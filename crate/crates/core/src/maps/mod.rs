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

//! Total maps between digital images and the deciders built on them.

mod cut_point;
mod cycle;
mod shy;

use std::sync::Arc;

use crate::digital::{DigitalImage, LatticePoint};
use crate::error::{Result, ShyError};

pub use cut_point::cut_point_audit;
pub use cycle::{cycle_order, degree_of_cycle_map, pi1_surjectivity_cycle};
pub use shy::{is_shy, shy_oracle, shy_oracle_full_codomain, ShyVerdict, ShyWitness};

/// A total function between two digital images, stored as a table of codomain
/// indices, one per domain point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitalMap {
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    table: Vec<usize>,
}

impl DigitalMap {
    pub fn new(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        table: Vec<usize>,
    ) -> Result<Self> {
        if table.len() != domain.len() {
            return Err(ShyError::Domain(format!(
                "table has {} entries for {} domain points",
                table.len(),
                domain.len()
            )));
        }
        if let Some((i, &v)) = table.iter().enumerate().find(|(_, &v)| v >= codomain.len()) {
            return Err(ShyError::Domain(format!(
                "table entry {i} -> {v} is outside the codomain (0..{})",
                codomain.len()
            )));
        }
        Ok(DigitalMap {
            domain,
            codomain,
            table,
        })
    }

    /// Builds the table by evaluating `rule` on every domain point.
    pub fn from_fn(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        mut rule: impl FnMut(&LatticePoint) -> LatticePoint,
    ) -> Result<Self> {
        let table = domain
            .points()
            .iter()
            .map(|p| codomain.require_index(&rule(p)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, codomain, table)
    }

    pub fn identity(img: Arc<DigitalImage>) -> Self {
        let table = (0..img.len()).collect();
        DigitalMap {
            domain: img.clone(),
            codomain: img,
            table,
        }
    }

    pub fn constant(domain: Arc<DigitalImage>, codomain: Arc<DigitalImage>, value: usize) -> Result<Self> {
        let table = vec![value; domain.len()];
        Self::new(domain, codomain, table)
    }

    pub fn domain(&self) -> &Arc<DigitalImage> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<DigitalImage> {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn apply_point(&self, p: &LatticePoint) -> Result<&LatticePoint> {
        let i = self.domain.require_index(p)?;
        Ok(self.codomain.point(self.table[i]))
    }

    /// Codomain indices hit by the map, sorted.
    pub fn image_indices(&self) -> Vec<usize> {
        let mut hit = vec![false; self.codomain.len()];
        for &v in &self.table {
            hit[v] = true;
        }
        (0..hit.len()).filter(|&i| hit[i]).collect()
    }

    /// Domain indices sent into `targets` (codomain indices).
    pub fn preimage(&self, targets: &[usize]) -> Vec<usize> {
        let mut wanted = vec![false; self.codomain.len()];
        for &t in targets {
            wanted[t] = true;
        }
        (0..self.table.len()).filter(|&i| wanted[self.table[i]]).collect()
    }

    pub fn fiber(&self, y: usize) -> Vec<usize> {
        self.preimage(&[y])
    }

    pub fn is_surjective(&self) -> bool {
        self.image_indices().len() == self.codomain.len()
    }

    /// Edge-preservation test: adjacent domain points go to equal or adjacent
    /// codomain points.
    pub fn is_continuous(&self) -> bool {
        self.first_broken_edge().is_none()
    }

    /// First domain edge whose ends land on distinct, non-adjacent points.
    pub fn first_broken_edge(&self) -> Option<(usize, usize)> {
        self.domain.edges().find(|&(i, j)| {
            let (a, b) = (self.table[i], self.table[j]);
            a != b && !self.codomain.adjacent_idx(a, b)
        })
    }

    pub(crate) fn require_continuous(&self) -> Result<()> {
        match self.first_broken_edge() {
            None => Ok(()),
            Some((i, j)) => Err(ShyError::Precondition(format!(
                "map is not continuous: adjacent {} and {} go to {} and {}",
                self.domain.point(i),
                self.domain.point(j),
                self.codomain.point(self.table[i]),
                self.codomain.point(self.table[j])
            ))),
        }
    }

    /// Continuity straight from the definition: the image of every connected
    /// subset of the domain is connected.
    pub fn is_continuous_oracle(&self, limit: usize) -> Result<bool> {
        let all: Vec<usize> = (0..self.domain.len()).collect();
        for subset in self.domain.enumerate_connected_subsets(&all, None, limit)? {
            let mut image: Vec<usize> = subset.iter().map(|&i| self.table[i]).collect();
            image.sort_unstable();
            image.dedup();
            if !self.codomain.is_connected_indices(&image) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &DigitalMap) -> Result<DigitalMap> {
        if *self.codomain != *g.domain {
            return Err(ShyError::Shape(
                "codomain of the first map differs from the domain of the second".into(),
            ));
        }
        let table = self.table.iter().map(|&y| g.table[y]).collect();
        DigitalMap::new(self.domain.clone(), g.codomain.clone(), table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digital::DEFAULT_ENUMERATION_LIMIT as LIM;

    fn c4() -> Arc<DigitalImage> {
        Arc::new(DigitalImage::cycle(4))
    }

    #[test]
    fn identity_and_constant_are_continuous() {
        let id = DigitalMap::identity(c4());
        assert!(id.is_continuous());
        assert!(id.is_continuous_oracle(LIM).unwrap());
        assert!(id.is_surjective());
        let k = DigitalMap::constant(c4(), c4(), 2).unwrap();
        assert!(k.is_continuous());
        assert!(k.is_continuous_oracle(LIM).unwrap());
        assert!(!k.is_surjective());
    }

    #[test]
    fn broken_edge_is_caught_by_both_deciders() {
        let p2 = Arc::new(DigitalImage::interval(0, 1));
        let p3 = Arc::new(DigitalImage::interval(0, 2));
        let f = DigitalMap::new(p2, p3, vec![0, 2]).unwrap();
        assert!(!f.is_continuous());
        assert!(!f.is_continuous_oracle(LIM).unwrap());
    }

    #[test]
    fn one_point_domain_is_continuous() {
        let pt = Arc::new(DigitalImage::interval(0, 0));
        let f = DigitalMap::constant(pt, c4(), 3).unwrap();
        assert!(f.is_continuous_oracle(LIM).unwrap());
    }

    #[test]
    fn doubling_wrap_is_surjective() {
        let f = DigitalMap::new(
            Arc::new(DigitalImage::cycle(8)),
            c4(),
            (0..8).map(|i| i % 4).collect(),
        )
        .unwrap();
        assert!(f.is_surjective());
        assert!(f.is_continuous());
    }

    #[test]
    fn oracle_respects_limit() {
        let big = Arc::new(DigitalImage::interval(0, 20));
        let f = DigitalMap::identity(big);
        assert!(matches!(f.is_continuous_oracle(LIM), Err(ShyError::Size { .. })));
    }

    #[test]
    fn table_validation() {
        assert!(DigitalMap::new(c4(), c4(), vec![0, 1]).is_err());
        assert!(DigitalMap::new(c4(), c4(), vec![0, 1, 2, 4]).is_err());
    }

    #[test]
    fn composition_checks_shapes() {
        let id = DigitalMap::identity(c4());
        assert_eq!(id.then(&id).unwrap(), id);
        let other = DigitalMap::identity(Arc::new(DigitalImage::cycle(5)));
        assert!(matches!(id.then(&other), Err(ShyError::Shape(_))));
    }
}
