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

use std::cmp::Ordering;

use super::DigitalMap;
use crate::digital::{DigitalImage, LatticePoint};
use crate::error::{Result, ShyError};

/// A connected subset of the codomain whose preimage is disconnected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShyWitness {
    /// Codomain indices, in lattice order.
    pub subset: Vec<usize>,
    /// Domain indices, sorted.
    pub preimage: Vec<usize>,
}

impl ShyWitness {
    pub fn subset_points<'a>(&self, f: &'a DigitalMap) -> Vec<&'a LatticePoint> {
        self.subset.iter().map(|&i| f.codomain().point(i)).collect()
    }

    pub fn preimage_points<'a>(&self, f: &'a DigitalMap) -> Vec<&'a LatticePoint> {
        self.preimage.iter().map(|&i| f.domain().point(i)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShyVerdict {
    pub shy: bool,
    pub witness: Option<ShyWitness>,
}

impl ShyVerdict {
    fn pass() -> Self {
        ShyVerdict {
            shy: true,
            witness: None,
        }
    }

    fn fail(subset: Vec<usize>, preimage: Vec<usize>) -> Self {
        ShyVerdict {
            shy: false,
            witness: Some(ShyWitness { subset, preimage }),
        }
    }
}

fn in_lattice_order(img: &DigitalImage, mut set: Vec<usize>) -> Vec<usize> {
    set.sort_by(|&a, &b| img.point(a).cmp(img.point(b)));
    set
}

/// Orders candidate witnesses: smaller sets first, then lexicographically by
/// their points in lattice order.
fn witness_cmp(img: &DigitalImage, a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        a.iter()
            .map(|&i| img.point(i))
            .cmp(b.iter().map(|&i| img.point(i)))
    })
}

/// Local shyness test: connected fibers over the image, and connected
/// preimages of adjacent image pairs. Pairs with an endpoint outside `f(X)`
/// are not examined.
pub fn is_shy(f: &DigitalMap) -> Result<ShyVerdict> {
    f.require_continuous()?;
    let cod = f.codomain();
    let dom = f.domain();
    let image = in_lattice_order(cod, f.image_indices());
    for &y in &image {
        let fiber = f.fiber(y);
        if !dom.is_connected_indices(&fiber) {
            return Ok(ShyVerdict::fail(vec![y], fiber));
        }
    }
    for (k, &a) in image.iter().enumerate() {
        for &b in &image[k + 1..] {
            if !cod.adjacent_idx(a, b) {
                continue;
            }
            let pre = f.preimage(&[a, b]);
            if !dom.is_connected_indices(&pre) {
                return Ok(ShyVerdict::fail(vec![a, b], pre));
            }
        }
    }
    Ok(ShyVerdict::pass())
}

fn oracle_over(f: &DigitalMap, candidates: &[usize], limit: usize) -> Result<ShyVerdict> {
    let cod = f.codomain();
    let dom = f.domain();
    let mut best: Option<Vec<usize>> = None;
    let masks = dom.neighbor_masks().is_some();
    for subset in cod.enumerate_connected_subsets(candidates, None, limit)? {
        let disconnected = if masks {
            let m = f.preimage_mask(&subset);
            !dom.is_connected_mask(m)
        } else {
            !dom.is_connected_indices(&f.preimage(&subset))
        };
        if disconnected {
            let subset = in_lattice_order(cod, subset);
            let better = match &best {
                None => true,
                Some(b) => witness_cmp(cod, &subset, b) == Ordering::Less,
            };
            if better {
                best = Some(subset);
            }
        }
    }
    Ok(match best {
        None => ShyVerdict::pass(),
        Some(subset) => {
            let pre = f.preimage(&subset);
            ShyVerdict::fail(subset, pre)
        }
    })
}

/// Brute-force shyness: the preimage of every nonempty connected subset of
/// `f(X)` must be connected. The reported witness is the smallest violating
/// subset (by size, then lexicographically).
pub fn shy_oracle(f: &DigitalMap, limit: usize) -> Result<ShyVerdict> {
    f.require_continuous()?;
    let image = f.image_indices();
    if image.len() > limit {
        return Err(ShyError::Size {
            what: "image of the map".into(),
            size: image.len(),
            limit,
        });
    }
    oracle_over(f, &image, limit)
}

/// Brute-force shyness quantified over connected subsets of the whole
/// codomain rather than of `f(X)`. Agrees with [`shy_oracle`] on surjections.
pub fn shy_oracle_full_codomain(f: &DigitalMap, limit: usize) -> Result<ShyVerdict> {
    f.require_continuous()?;
    let all: Vec<usize> = (0..f.codomain().len()).collect();
    if all.len() > limit {
        return Err(ShyError::Size {
            what: "codomain".into(),
            size: all.len(),
            limit,
        });
    }
    oracle_over(f, &all, limit)
}

impl DigitalMap {
    fn preimage_mask(&self, targets: &[usize]) -> u64 {
        let mut wanted = 0u128;
        let small = self.codomain().len() <= 128;
        if small {
            for &t in targets {
                wanted |= 1 << t;
            }
        }
        let mut out = 0u64;
        for (i, &y) in self.table().iter().enumerate() {
            let hit = if small { wanted >> y & 1 == 1 } else { targets.contains(&y) };
            if hit {
                out |= 1 << i;
            }
        }
        out
    }
}
