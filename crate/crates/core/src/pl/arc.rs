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

//! Interval-to-circle maps given as PL angle functions, in turns.

use crate::error::{Result, ShyError};
use crate::rational::{int, midpoint, IntervalUnion, Rational, RationalInterval};

use super::{segment_preimage, PLFunction};

/// A map `[x_0, x_k] -> S¹` written as an angle in turns (1 = one revolution).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleMap {
    angles: PLFunction,
    total_variation: Rational,
}

impl AngleMap {
    pub fn new(angles: PLFunction) -> Result<Self> {
        if angles.is_circular() {
            return Err(ShyError::Shape("angle maps are defined on an interval".into()));
        }
        let total_variation = angles
            .segments()
            .map(|(a, b)| if a.1 > b.1 { &a.1 - &b.1 } else { &b.1 - &a.1 })
            .sum();
        Ok(AngleMap {
            angles,
            total_variation,
        })
    }

    pub fn angles(&self) -> &PLFunction {
        &self.angles
    }

    pub fn total_variation(&self) -> &Rational {
        &self.total_variation
    }

    /// Strictly monotone with total variation under one turn, i.e. injective
    /// as a map into the circle.
    pub fn is_injective(&self) -> bool {
        let ys: Vec<&Rational> = self.angles.values().collect();
        let up = ys.windows(2).all(|w| w[0] < w[1]);
        let down = ys.windows(2).all(|w| w[0] > w[1]);
        (up || down) && self.total_variation < int(1)
    }
}

/// Counterclockwise arc from `start` to `end` turns, at most one full turn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    start: Rational,
    end: Rational,
    start_closed: bool,
    end_closed: bool,
}

impl Arc {
    /// Builds the arc, shifting it so that `start` lies in `[0, 1)`.
    pub fn new(start: Rational, end: Rational, start_closed: bool, end_closed: bool) -> Result<Self> {
        let span = RationalInterval::new(start.clone(), end.clone(), start_closed, end_closed)?;
        if span.hi() - span.lo() > int(1) {
            return Err(ShyError::Domain(format!("arc from {start} to {end} exceeds one turn")));
        }
        let shift = -start.floor();
        Ok(Arc {
            start: &start + &shift,
            end: &end + &shift,
            start_closed,
            end_closed,
        })
    }

    pub fn closed(start: Rational, end: Rational) -> Result<Self> {
        Self::new(start, end, true, true)
    }

    pub fn start(&self) -> &Rational {
        &self.start
    }

    pub fn end(&self) -> &Rational {
        &self.end
    }

    fn span(&self) -> RationalInterval {
        RationalInterval::new(self.start.clone(), self.end.clone(), self.start_closed, self.end_closed)
            .expect("arc invariants")
    }
}

/// `{x : m(x) lies on the arc}`, comparing angles modulo one turn.
pub fn arc_preimage(m: &AngleMap, arc: &Arc) -> IntervalUnion {
    let span = arc.span();
    let mut parts = Vec::new();
    for (a, b) in m.angles.segments() {
        let (ylo, yhi) = if a.1 <= b.1 { (&a.1, &b.1) } else { (&b.1, &a.1) };
        let first = (ylo - arc.end()).floor().to_integer();
        let last = (yhi - arc.start()).ceil().to_integer();
        let mut k = first;
        while k <= last {
            let shifted = span.shifted(&Rational::from_integer(k.clone()));
            if let Some(piece) = segment_preimage(a, b, &shifted) {
                parts.push(piece);
            }
            k += 1;
        }
    }
    IntervalUnion::from_parts(parts)
}

/// Shyness of an injective angle map: every subarc of the image arc whose ends
/// are breakpoint angles or midpoints between consecutive ones has a
/// single-interval preimage. Arcs that leave the image are never tested.
pub fn is_shy_interval_to_circle(m: &AngleMap) -> Result<bool> {
    if !m.is_injective() {
        return Err(ShyError::UnsupportedRegime(
            "only strictly monotone angle maps of total variation below one turn are supported"
                .into(),
        ));
    }
    let mut tests: Vec<Rational> = m.angles.values().cloned().collect();
    tests.sort();
    let mids: Vec<Rational> = tests.windows(2).map(|w| midpoint(&w[0], &w[1])).collect();
    tests.extend(mids);
    tests.sort();
    for (i, lo) in tests.iter().enumerate() {
        for hi in &tests[i..] {
            let arc = Arc::closed(lo.clone(), hi.clone())?;
            if arc_preimage(m, &arc).len() != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn angle_map(points: &[(Rational, Rational)]) -> AngleMap {
        AngleMap::new(PLFunction::new(points.to_vec(), false).unwrap()).unwrap()
    }

    fn half_turn() -> AngleMap {
        angle_map(&[(int(0), int(0)), (rat(1, 2), rat(1, 2))])
    }

    #[test]
    fn lower_arc_pulls_back_to_the_two_ends() {
        let lower = Arc::closed(rat(1, 2), int(1)).unwrap();
        let pre = arc_preimage(&half_turn(), &lower);
        assert_eq!(
            pre.parts(),
            &[RationalInterval::point(int(0)), RationalInterval::point(rat(1, 2))]
        );
    }

    #[test]
    fn upper_arc_pulls_back_to_everything() {
        let upper = Arc::closed(int(0), rat(1, 2)).unwrap();
        assert_eq!(
            arc_preimage(&half_turn(), &upper).parts(),
            &[RationalInterval::closed(int(0), rat(1, 2))]
        );
    }

    #[test]
    fn constant_angle() {
        let k = angle_map(&[(int(0), rat(1, 3)), (int(1), rat(1, 3))]);
        let arc = Arc::closed(rat(1, 4), rat(1, 2)).unwrap();
        assert_eq!(
            arc_preimage(&k, &arc).parts(),
            &[RationalInterval::closed(int(0), int(1))]
        );
        // the same angle reached through a full-turn shift
        let arc = Arc::closed(rat(5, 4), rat(3, 2)).unwrap();
        assert_eq!(arc_preimage(&k, &arc).len(), 1);
    }

    #[test]
    fn arcs_normalize_and_validate() {
        let a = Arc::closed(rat(5, 4), rat(3, 2)).unwrap();
        assert_eq!(a.start(), &rat(1, 4));
        assert_eq!(a.end(), &rat(1, 2));
        let neg = Arc::closed(rat(-1, 4), rat(1, 4)).unwrap();
        assert_eq!(neg.start(), &rat(3, 4));
        assert!(Arc::closed(int(0), rat(3, 2)).is_err());
    }

    #[test]
    fn injective_maps_are_shy() {
        assert!(is_shy_interval_to_circle(&half_turn()).unwrap());
        let quarter = angle_map(&[(int(0), int(0)), (rat(1, 4), rat(1, 4))]);
        assert!(is_shy_interval_to_circle(&quarter).unwrap());
        let reversed = angle_map(&[(int(0), rat(1, 2)), (rat(1, 2), int(0))]);
        assert!(is_shy_interval_to_circle(&reversed).unwrap());
        let bent = angle_map(&[(int(0), rat(-1, 5)), (int(1), rat(1, 10)), (int(2), rat(7, 10))]);
        assert!(is_shy_interval_to_circle(&bent).unwrap());
    }

    #[test]
    fn unsupported_regimes() {
        let full = angle_map(&[(int(0), int(0)), (int(1), int(1))]);
        assert!(matches!(
            is_shy_interval_to_circle(&full),
            Err(ShyError::UnsupportedRegime(_))
        ));
        let folded = angle_map(&[(int(0), int(0)), (int(1), rat(1, 4)), (int(2), int(0))]);
        assert!(matches!(
            is_shy_interval_to_circle(&folded),
            Err(ShyError::UnsupportedRegime(_))
        ));
    }

    #[test]
    fn wrapped_image_arc() {
        // image crosses angle 0: from -1/8 to 1/8 turns
        let m = angle_map(&[(int(0), rat(-1, 8)), (int(1), rat(1, 8))]);
        let arc = Arc::closed(rat(7, 8), rat(9, 8)).unwrap();
        assert_eq!(
            arc_preimage(&m, &arc).parts(),
            &[RationalInterval::closed(int(0), int(1))]
        );
        let pre = arc_preimage(&m, &Arc::closed(int(0), int(0)).unwrap());
        assert_eq!(pre.parts(), &[RationalInterval::point(rat(1, 2))]);
    }
}
