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

//! Composition, strong products and wedges of digital images and maps.

use std::sync::Arc;

use crate::digital::{AdjacencySpec, DigitalImage, LatticePoint};
use crate::error::{Result, ShyError};
use crate::maps::DigitalMap;

/// `g ∘ f`; the codomain of `f` must be the domain of `g`.
pub fn compose(f: &DigitalMap, g: &DigitalMap) -> Result<DigitalMap> {
    f.then(g)
}

/// Mixed-radix decoding of a product index, first factor most significant.
fn decode(mut index: usize, sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for k in (0..sizes.len()).rev() {
        out[k] = index % sizes[k];
        index /= sizes[k];
    }
    out
}

fn encode(tuple: &[usize], sizes: &[usize]) -> usize {
    tuple.iter().zip(sizes).fold(0, |acc, (&t, &s)| acc * s + t)
}

/// Strong product: points are concatenated coordinates, and two distinct
/// points are adjacent when every coordinate block is equal or adjacent.
pub fn product_images(factors: &[&DigitalImage]) -> Result<DigitalImage> {
    if factors.len() < 2 {
        return Err(ShyError::Domain("a product needs at least two factors".into()));
    }
    if factors.iter().any(|f| f.is_empty()) {
        return Err(ShyError::Domain("product factor is empty".into()));
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.len()).collect();
    let total: usize = sizes.iter().product();
    let tuples: Vec<Vec<usize>> = (0..total).map(|i| decode(i, &sizes)).collect();
    let points = tuples
        .iter()
        .map(|t| {
            LatticePoint(
                t.iter()
                    .zip(factors)
                    .flat_map(|(&i, f)| f.point(i).coords().iter().copied())
                    .collect(),
            )
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..total {
        for j in (i + 1)..total {
            let close = tuples[i]
                .iter()
                .zip(&tuples[j])
                .zip(factors)
                .all(|((&a, &b), f)| a == b || f.adjacent_idx(a, b));
            if close {
                edges.push((i, j));
            }
        }
    }
    let dim = factors.iter().map(|f| f.dim()).sum();
    DigitalImage::new(dim, points, AdjacencySpec::edges(edges))
}

/// Coordinatewise map between the strong products of domains and codomains.
pub fn product_map(factors: &[&DigitalMap]) -> Result<DigitalMap> {
    let domains: Vec<&DigitalImage> = factors.iter().map(|f| f.domain().as_ref()).collect();
    let codomains: Vec<&DigitalImage> = factors.iter().map(|f| f.codomain().as_ref()).collect();
    let domain = product_images(&domains)?;
    let codomain = product_images(&codomains)?;
    let dsizes: Vec<usize> = domains.iter().map(|d| d.len()).collect();
    let csizes: Vec<usize> = codomains.iter().map(|c| c.len()).collect();
    let table = (0..domain.len())
        .map(|i| {
            let t: Vec<usize> = decode(i, &dsizes)
                .iter()
                .zip(factors)
                .map(|(&x, f)| f.apply(x))
                .collect();
            encode(&t, &csizes)
        })
        .collect();
    DigitalMap::new(Arc::new(domain), Arc::new(codomain), table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `X ∨ Y`: disjoint copies of `X` and `Y` with `x₀` and `y₀` identified.
///
/// `X` occupies indices `0..|X|` of the wedge; `Y` minus its basepoint follows.
/// Points are padded to a common dimension plus one tag coordinate (0 for the
/// left copy, 1 for the right), and adjacency is always explicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeImage {
    image: Arc<DigitalImage>,
    wedge_point: usize,
    left_part: Vec<usize>,
    right_part: Vec<usize>,
    left_source: Arc<DigitalImage>,
    right_source: Arc<DigitalImage>,
    left_base: usize,
    right_base: usize,
    left_embed: Vec<usize>,
    right_embed: Vec<usize>,
    origin: Vec<(Side, usize)>,
}

pub fn wedge(
    left: Arc<DigitalImage>,
    left_base: &LatticePoint,
    right: Arc<DigitalImage>,
    right_base: &LatticePoint,
) -> Result<WedgeImage> {
    let lb = left.require_index(left_base)?;
    let rb = right.require_index(right_base)?;
    let dim = left.dim().max(right.dim()) + 1;
    let lift = |p: &LatticePoint, tag: i64| {
        let mut c = p.coords().to_vec();
        c.resize(dim - 1, 0);
        c.push(tag);
        LatticePoint(c)
    };
    let mut points: Vec<LatticePoint> = left.points().iter().map(|p| lift(p, 0)).collect();
    let mut origin: Vec<(Side, usize)> = (0..left.len()).map(|i| (Side::Left, i)).collect();
    let left_embed: Vec<usize> = (0..left.len()).collect();
    let mut right_embed = vec![0; right.len()];
    for (j, q) in right.points().iter().enumerate() {
        if j == rb {
            right_embed[j] = lb;
        } else {
            right_embed[j] = points.len();
            points.push(lift(q, 1));
            origin.push((Side::Right, j));
        }
    }
    let edges = left
        .edges()
        .chain(right.edges().map(|(a, b)| (right_embed[a], right_embed[b])))
        .collect::<Vec<_>>();
    let image = DigitalImage::new(dim, points, AdjacencySpec::edges(edges))?;
    let mut right_part = right_embed.clone();
    right_part.sort_unstable();
    Ok(WedgeImage {
        image: Arc::new(image),
        wedge_point: lb,
        left_part: left_embed.clone(),
        right_part,
        left_source: left,
        right_source: right,
        left_base: lb,
        right_base: rb,
        left_embed,
        right_embed,
        origin,
    })
}

impl WedgeImage {
    pub fn image(&self) -> &Arc<DigitalImage> {
        &self.image
    }

    pub fn wedge_point(&self) -> usize {
        self.wedge_point
    }

    pub fn left_part(&self) -> &[usize] {
        &self.left_part
    }

    pub fn right_part(&self) -> &[usize] {
        &self.right_part
    }

    pub fn left_source(&self) -> &Arc<DigitalImage> {
        &self.left_source
    }

    pub fn right_source(&self) -> &Arc<DigitalImage> {
        &self.right_source
    }

    /// Where a wedge point came from; the wedge point reports the left copy.
    pub fn origin(&self, i: usize) -> (Side, usize) {
        self.origin[i]
    }

    pub fn embed(&self, side: Side, i: usize) -> usize {
        match side {
            Side::Left => self.left_embed[i],
            Side::Right => self.right_embed[i],
        }
    }

    /// Parts meet only in the wedge point and no edge crosses between the
    /// punctured parts.
    pub fn is_separated(&self) -> bool {
        let mut in_left = vec![false; self.image.len()];
        for &i in &self.left_part {
            in_left[i] = true;
        }
        let common: Vec<usize> = self.right_part.iter().copied().filter(|&i| in_left[i]).collect();
        if common != [self.wedge_point] {
            return false;
        }
        self.image.edges().all(|(a, b)| {
            a == self.wedge_point
                || b == self.wedge_point
                || in_left[a] == in_left[b]
        })
    }

    /// Looks for a connected `C` meeting both parts that misses the wedge
    /// point or has a disconnected trace on either part. `None` means every
    /// such `C` behaves.
    pub fn basepoint_separation_counterexample(&self, limit: usize) -> Result<Option<Vec<usize>>> {
        let all: Vec<usize> = (0..self.image.len()).collect();
        let mut in_left = vec![false; self.image.len()];
        for &i in &self.left_part {
            in_left[i] = true;
        }
        let mut in_right = vec![false; self.image.len()];
        for &i in &self.right_part {
            in_right[i] = true;
        }
        for c in self.image.enumerate_connected_subsets(&all, None, limit)? {
            let left: Vec<usize> = c.iter().copied().filter(|&i| in_left[i]).collect();
            let right: Vec<usize> = c.iter().copied().filter(|&i| in_right[i]).collect();
            if left.is_empty() || right.is_empty() {
                continue;
            }
            let ok = c.contains(&self.wedge_point)
                && self.image.is_connected_indices(&left)
                && self.image.is_connected_indices(&right);
            if !ok {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }
}

/// `f ∨ g: W -> W′`, applying `f` on the left part and `g` on the right.
pub fn vee_map(f: &DigitalMap, g: &DigitalMap, w: &WedgeImage, w2: &WedgeImage) -> Result<DigitalMap> {
    if **f.domain() != *w.left_source || **g.domain() != *w.right_source {
        return Err(ShyError::Shape("map domains are not the parts of the source wedge".into()));
    }
    if **f.codomain() != *w2.left_source || **g.codomain() != *w2.right_source {
        return Err(ShyError::Shape("map codomains are not the parts of the target wedge".into()));
    }
    if f.apply(w.left_base) != w2.left_base {
        return Err(ShyError::Pointedness("left map does not send basepoint to basepoint".into()));
    }
    if g.apply(w.right_base) != w2.right_base {
        return Err(ShyError::Pointedness("right map does not send basepoint to basepoint".into()));
    }
    let table = (0..w.image.len())
        .map(|i| match w.origin[i] {
            (Side::Left, x) => w2.embed(Side::Left, f.apply(x)),
            (Side::Right, y) => w2.embed(Side::Right, g.apply(y)),
        })
        .collect();
    DigitalMap::new(w.image.clone(), w2.image.clone(), table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digital::DEFAULT_ENUMERATION_LIMIT as LIM;
    use crate::maps::{shy_oracle, ShyWitness};

    fn arc(img: DigitalImage) -> Arc<DigitalImage> {
        Arc::new(img)
    }

    fn origin1() -> LatticePoint {
        LatticePoint::from([0])
    }

    #[test]
    fn compose_identities_and_mismatch() {
        let id = DigitalMap::identity(arc(DigitalImage::interval(0, 3)));
        assert_eq!(compose(&id, &id).unwrap(), id);
        let other = DigitalMap::identity(arc(DigitalImage::interval(0, 4)));
        assert!(matches!(compose(&id, &other), Err(ShyError::Shape(_))));
    }

    #[test]
    fn collapse_after_inclusion_is_shy() {
        // P5 -> P3 collapsing the ends, then P3 into P5 as the middle
        let p5 = arc(DigitalImage::interval(0, 4));
        let p3 = arc(DigitalImage::interval(0, 2));
        let collapse = DigitalMap::new(p5.clone(), p3.clone(), vec![0, 0, 1, 2, 2]).unwrap();
        let include = DigitalMap::new(p3, p5, vec![1, 2, 3]).unwrap();
        assert!(shy_oracle(&collapse, LIM).unwrap().shy);
        assert!(shy_oracle(&include, LIM).unwrap().shy);
        let h = compose(&collapse, &include).unwrap();
        assert!(shy_oracle(&h, LIM).unwrap().shy);
    }

    #[test]
    fn strong_products() {
        let p2 = DigitalImage::interval(0, 1);
        let sq = product_images(&[&p2, &p2]).unwrap();
        assert_eq!(sq.len(), 4);
        assert_eq!(sq.edge_count(), 6);
        assert_eq!(sq.dim(), 2);

        let x = DigitalImage::cycle(5);
        let one = DigitalImage::interval(7, 7);
        let copy = product_images(&[&x, &one]).unwrap();
        assert_eq!(copy.len(), x.len());
        assert_eq!(copy.edge_count(), x.edge_count());

        let big = product_images(&[&DigitalImage::cycle(4), &DigitalImage::interval(0, 2)]).unwrap();
        let all: Vec<usize> = (0..big.len()).collect();
        assert!(big.is_connected_indices(&all));

        let empty = DigitalImage::with_edges(vec![], []).unwrap();
        assert!(product_images(&[&p2, &empty]).is_err());
        assert!(product_images(&[&p2]).is_err());
    }

    #[test]
    fn strong_product_matches_cu_full() {
        // Z x Z with c1 factors is the c2 (8-neighbour) plane
        let a = DigitalImage::interval(0, 2);
        let b = DigitalImage::interval(0, 2);
        let prod = product_images(&[&a, &b]).unwrap();
        let c2 = DigitalImage::with_cu(prod.points().to_vec(), 2).unwrap();
        assert_eq!(prod, c2);
    }

    #[test]
    fn product_maps() {
        let p3 = arc(DigitalImage::interval(0, 2));
        let id = DigitalMap::identity(p3.clone());
        let prod = product_map(&[&id, &id]).unwrap();
        assert_eq!(prod.table(), (0..9).collect::<Vec<_>>());
        assert_eq!(prod.domain(), prod.codomain());

        // fold of P3 onto P2 with a disconnected fiber
        let p2 = arc(DigitalImage::interval(0, 1));
        let fold = DigitalMap::new(p3.clone(), p2, vec![0, 1, 0]).unwrap();
        assert!(!shy_oracle(&fold, LIM).unwrap().shy);
        let mixed = product_map(&[&id, &fold]).unwrap();
        assert!(!shy_oracle(&mixed, LIM).unwrap().shy);

        let k = DigitalMap::constant(p3.clone(), p3.clone(), 1).unwrap();
        let kk = product_map(&[&k, &k]).unwrap();
        assert!(shy_oracle(&kk, LIM).unwrap().shy);
    }

    #[test]
    fn wedge_shapes() {
        let p2 = arc(DigitalImage::interval(0, 1));
        let w = wedge(p2.clone(), &LatticePoint::from([1]), p2.clone(), &origin1()).unwrap();
        assert_eq!(w.image().len(), 3);
        assert_eq!(w.image().edge_count(), 2);
        assert!(w.is_separated());
        let degrees: Vec<usize> = (0..3).map(|i| w.image().neighbors(i).len()).collect();
        assert_eq!(degrees.iter().filter(|&&d| d == 2).count(), 1);

        let x = arc(DigitalImage::cycle(5));
        let pt = arc(DigitalImage::interval(0, 0));
        let w = wedge(x.clone(), &LatticePoint::from([2]), pt, &origin1()).unwrap();
        assert_eq!(w.image().len(), 5);
        assert_eq!(w.image().edge_count(), 5);

        let c4 = arc(DigitalImage::cycle(4));
        let eight = wedge(c4.clone(), &origin1(), c4.clone(), &origin1()).unwrap();
        assert_eq!(eight.image().len(), 7);
        assert_eq!(eight.image().edge_count(), 8);
        assert_eq!(eight.image().neighbors(eight.wedge_point()).len(), 4);
        assert!(eight.is_separated());
        assert_eq!(eight.basepoint_separation_counterexample(LIM).unwrap(), None);

        assert!(matches!(
            wedge(c4.clone(), &LatticePoint::from([9]), c4, &origin1()),
            Err(ShyError::Domain(_))
        ));
    }

    #[test]
    fn vee_maps() {
        let p3 = arc(DigitalImage::interval(0, 2));
        let w = wedge(p3.clone(), &origin1(), p3.clone(), &origin1()).unwrap();
        let id = DigitalMap::identity(p3.clone());
        let h = vee_map(&id, &id, &w, &w).unwrap();
        assert_eq!(h.table(), (0..w.image().len()).collect::<Vec<_>>());

        let collapse = DigitalMap::new(p3.clone(), p3.clone(), vec![0, 0, 1]).unwrap();
        let h = vee_map(&collapse, &collapse, &w, &w).unwrap();
        assert!(shy_oracle(&h, LIM).unwrap().shy);

        // right map folds: 0 -> 0, 1 -> 1, 2 -> 0 is not shy
        let fold = DigitalMap::new(p3.clone(), p3.clone(), vec![0, 1, 0]).unwrap();
        let h = vee_map(&id, &fold, &w, &w).unwrap();
        let v = shy_oracle(&h, LIM).unwrap();
        assert!(!v.shy);
        let ShyWitness { subset, .. } = v.witness.unwrap();
        assert!(subset.iter().all(|i| w.right_part().contains(i)));

        let unpointed = DigitalMap::new(p3.clone(), p3.clone(), vec![1, 1, 1]).unwrap();
        assert!(matches!(
            vee_map(&unpointed, &id, &w, &w),
            Err(ShyError::Pointedness(_))
        ));
    }
}
