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

use super::DigitalMap;
use crate::digital::DigitalImage;
use crate::error::{Result, ShyError};

/// Traversal order of an image whose graph is a single cycle of length >= 4.
///
/// The walk starts at the lattice-least point and first steps to the lesser of
/// its two neighbors; this fixes the orientation used for degrees.
pub fn cycle_order(img: &DigitalImage) -> Result<Vec<usize>> {
    let n = img.len();
    if n < 4 {
        return Err(ShyError::Shape(format!("a digital cycle needs at least 4 points, got {n}")));
    }
    if let Some(i) = (0..n).find(|&i| img.neighbors(i).len() != 2) {
        return Err(ShyError::Shape(format!(
            "point {} has {} neighbors; a cycle needs exactly 2",
            img.point(i),
            img.neighbors(i).len()
        )));
    }
    let start = (0..n).min_by(|&a, &b| img.point(a).cmp(img.point(b))).unwrap();
    let first = *img
        .neighbors(start)
        .iter()
        .min_by(|&&a, &&b| img.point(a).cmp(img.point(b)))
        .unwrap();
    let mut order = vec![start];
    let (mut prev, mut cur) = (start, first);
    while cur != start {
        if order.len() == n {
            break;
        }
        order.push(cur);
        let ns = img.neighbors(cur);
        let next = if ns[0] == prev { ns[1] } else { ns[0] };
        prev = cur;
        cur = next;
    }
    if order.len() != n || cur != start {
        return Err(ShyError::Shape("graph is 2-regular but not a single cycle".into()));
    }
    Ok(order)
}

/// Winding number of a continuous map between digital cycles: the signed
/// number of unit steps taken around the codomain while the domain is
/// traversed once, divided by the codomain length.
pub fn degree_of_cycle_map(f: &DigitalMap) -> Result<i64> {
    let dom = cycle_order(f.domain())?;
    let cod = cycle_order(f.codomain())?;
    f.require_continuous()?;
    let n = cod.len() as i64;
    let mut pos = vec![0i64; cod.len()];
    for (k, &i) in cod.iter().enumerate() {
        pos[i] = k as i64;
    }
    let mut total = 0i64;
    for k in 0..dom.len() {
        let a = pos[f.apply(dom[k])];
        let b = pos[f.apply(dom[(k + 1) % dom.len()])];
        total += match (b - a).rem_euclid(n) {
            0 => 0,
            1 => 1,
            d if d == n - 1 => -1,
            _ => unreachable!("continuity was checked"),
        };
    }
    debug_assert_eq!(total % n, 0);
    Ok(total / n)
}

/// The induced map on fundamental groups of the cycles is multiplication by
/// the degree, which is onto exactly when the degree is ±1.
pub fn pi1_surjectivity_cycle(f: &DigitalMap) -> Result<bool> {
    Ok(degree_of_cycle_map(f)?.abs() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digital::LatticePoint;
    use std::sync::Arc;

    fn cyc(n: usize) -> Arc<DigitalImage> {
        Arc::new(DigitalImage::cycle(n))
    }

    #[test]
    fn identity_constant_doubling() {
        assert_eq!(degree_of_cycle_map(&DigitalMap::identity(cyc(8))).unwrap(), 1);
        let k = DigitalMap::constant(cyc(8), cyc(4), 0).unwrap();
        assert_eq!(degree_of_cycle_map(&k).unwrap(), 0);
        let wrap = DigitalMap::new(cyc(8), cyc(4), (0..8).map(|i| i % 4).collect()).unwrap();
        assert_eq!(degree_of_cycle_map(&wrap).unwrap(), 2);
        assert!(!pi1_surjectivity_cycle(&wrap).unwrap());
        assert!(pi1_surjectivity_cycle(&DigitalMap::identity(cyc(8))).unwrap());
    }

    #[test]
    fn reversal_has_degree_minus_one() {
        let rev = DigitalMap::new(cyc(6), cyc(6), (0..6).map(|i| (6 - i) % 6).collect()).unwrap();
        assert_eq!(degree_of_cycle_map(&rev).unwrap(), -1);
        assert!(pi1_surjectivity_cycle(&rev).unwrap());
    }

    #[test]
    fn lattice_cycle_is_recognised() {
        // 8 boundary points of the 3x3 square under c1
        let mut pts = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                if (x, y) != (1, 1) {
                    pts.push(LatticePoint::from([x, y]));
                }
            }
        }
        let sq = DigitalImage::with_cu(pts, 1).unwrap();
        assert_eq!(cycle_order(&sq).unwrap().len(), 8);
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(cycle_order(&DigitalImage::interval(0, 5)), Err(ShyError::Shape(_))));
        assert!(matches!(cycle_order(&DigitalImage::cycle(3)), Err(ShyError::Shape(_))));
        // two disjoint 4-cycles
        let pts = (0..8).map(|i| LatticePoint::from([i])).collect();
        let two = DigitalImage::with_edges(
            pts,
            [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)],
        )
        .unwrap();
        assert!(matches!(cycle_order(&two), Err(ShyError::Shape(_))));
    }
}
