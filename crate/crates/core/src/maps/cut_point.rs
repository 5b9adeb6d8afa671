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

use super::{is_shy, DigitalMap};
use crate::digital::LatticePoint;
use crate::error::{Result, ShyError};

/// Number of connected components of `X \ {r}` on which `f` is not
/// identically `f(r)`.
///
/// Requires a connected domain, a digital interval of `Z` as codomain, and a
/// shy map.
pub fn cut_point_audit(f: &DigitalMap, r: &LatticePoint) -> Result<usize> {
    let dom = f.domain();
    let r = dom.require_index(r)?;
    let all: Vec<usize> = (0..dom.len()).collect();
    if !dom.is_connected_indices(&all) {
        return Err(ShyError::Precondition("domain is not connected".into()));
    }
    if !f.codomain().is_digital_interval() {
        return Err(ShyError::Precondition(
            "codomain must be a digital interval of Z under c1".into(),
        ));
    }
    if !is_shy(f)?.shy {
        return Err(ShyError::Precondition("map is not shy".into()));
    }
    let rest: Vec<usize> = all.into_iter().filter(|&i| i != r).collect();
    let base = f.apply(r);
    Ok(dom
        .components_of_indices(&rest)
        .iter()
        .filter(|part| part.iter().any(|&i| f.apply(i) != base))
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digital::DigitalImage;
    use std::sync::Arc;

    #[test]
    fn constant_map_has_no_branches() {
        let f = DigitalMap::constant(
            Arc::new(DigitalImage::interval(-2, 2)),
            Arc::new(DigitalImage::interval(0, 3)),
            2,
        )
        .unwrap();
        assert_eq!(cut_point_audit(&f, &LatticePoint::from([0])).unwrap(), 0);
    }

    #[test]
    fn identity_on_interval_has_two() {
        let f = DigitalMap::identity(Arc::new(DigitalImage::interval(-2, 2)));
        assert_eq!(cut_point_audit(&f, &LatticePoint::from([0])).unwrap(), 2);
    }

    #[test]
    fn errors() {
        let f = DigitalMap::identity(Arc::new(DigitalImage::interval(-2, 2)));
        assert!(matches!(
            cut_point_audit(&f, &LatticePoint::from([9])),
            Err(ShyError::Domain(_))
        ));
        let fold = DigitalMap::new(
            Arc::new(DigitalImage::interval(-2, 2)),
            Arc::new(DigitalImage::interval(0, 2)),
            vec![2, 1, 0, 1, 2],
        )
        .unwrap();
        assert!(matches!(
            cut_point_audit(&fold, &LatticePoint::from([0])),
            Err(ShyError::Precondition(_))
        ));
        let into_cycle = DigitalMap::identity(Arc::new(DigitalImage::cycle(5)));
        assert!(matches!(
            cut_point_audit(&into_cycle, &LatticePoint::from([0])),
            Err(ShyError::Precondition(_))
        ));
    }
}
