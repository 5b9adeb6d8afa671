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

//! Exact piecewise-linear functions on an interval or a circle.

mod arc;

use std::cmp::Ordering;

use crate::error::{Result, ShyError};
use crate::rational::{midpoint, IntervalUnion, Rational, RationalInterval};

pub use arc::{arc_preimage, is_shy_interval_to_circle, AngleMap, Arc};

/// A continuous piecewise-linear function given by its breakpoints.
///
/// When `circular` is set the domain `[x_0, x_k]` has its ends glued and the
/// first and last values agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLFunction {
    breakpoints: Vec<(Rational, Rational)>,
    circular: bool,
}

/// A test interval whose preimage is not connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlWitness {
    pub interval: RationalInterval,
    pub preimage: IntervalUnion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlShyVerdict {
    pub shy: bool,
    pub witness: Option<PlWitness>,
}

impl PLFunction {
    pub fn new(breakpoints: Vec<(Rational, Rational)>, circular: bool) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(ShyError::Domain("a PL function needs at least 2 breakpoints".into()));
        }
        if let Some(w) = breakpoints.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(ShyError::Domain(format!(
                "breakpoint x values must strictly increase ({} then {})",
                w[0].0, w[1].0
            )));
        }
        if circular && breakpoints[0].1 != breakpoints[breakpoints.len() - 1].1 {
            return Err(ShyError::Domain(
                "a circular PL function needs equal first and last values".into(),
            ));
        }
        Ok(PLFunction {
            breakpoints,
            circular,
        })
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    pub fn is_circular(&self) -> bool {
        self.circular
    }

    pub fn start(&self) -> &Rational {
        &self.breakpoints[0].0
    }

    pub fn end(&self) -> &Rational {
        &self.breakpoints[self.breakpoints.len() - 1].0
    }

    pub fn values(&self) -> impl Iterator<Item = &Rational> {
        self.breakpoints.iter().map(|(_, y)| y)
    }

    pub fn min_value(&self) -> &Rational {
        self.values().min().unwrap()
    }

    pub fn max_value(&self) -> &Rational {
        self.values().max().unwrap()
    }

    pub fn is_constant(&self) -> bool {
        self.min_value() == self.max_value()
    }

    fn segments(&self) -> impl Iterator<Item = (&(Rational, Rational), &(Rational, Rational))> {
        self.breakpoints.windows(2).map(|w| (&w[0], &w[1]))
    }

    fn require_linear(&self) -> Result<()> {
        if self.circular {
            Err(ShyError::Shape("expected a function on an interval, got a circular one".into()))
        } else {
            Ok(())
        }
    }

    fn require_circular(&self) -> Result<()> {
        if self.circular {
            Ok(())
        } else {
            Err(ShyError::Shape("expected a circular function".into()))
        }
    }

    /// Value at `x`; circular functions accept any `x` and reduce it modulo
    /// the period.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let (start, end) = (self.start(), self.end());
        let x = if self.circular {
            let period = end - start;
            let turns = ((x - start) / &period).floor();
            x - turns * period
        } else {
            if x < start || x > end {
                return Err(ShyError::Domain(format!("{x} is outside [{start}, {end}]")));
            }
            x.clone()
        };
        let k = match self.breakpoints.binary_search_by(|(bx, _)| bx.cmp(&x)) {
            Ok(k) => return Ok(self.breakpoints[k].1.clone()),
            Err(k) => k,
        };
        let (x0, y0) = &self.breakpoints[k - 1];
        let (x1, y1) = &self.breakpoints[k];
        Ok(y0 + (&x - x0) * (y1 - y0) / (x1 - x0))
    }

    /// Monotonicity read off the breakpoint values.
    pub fn is_monotone(&self) -> Result<bool> {
        self.require_linear()?;
        let ys: Vec<&Rational> = self.values().collect();
        let up = ys.windows(2).all(|w| w[0] <= w[1]);
        let down = ys.windows(2).all(|w| w[0] >= w[1]);
        Ok(up || down)
    }

    /// `{x : f(x) ∈ target}` as a normalized union, solved segment by segment.
    pub fn preimage_interval(&self, target: &RationalInterval) -> IntervalUnion {
        IntervalUnion::from_parts(
            self.segments()
                .filter_map(|(a, b)| segment_preimage(a, b, target))
                .collect(),
        )
    }

    /// Breakpoint values plus midpoints of consecutive distinct values, sorted.
    fn level_test_set(&self) -> Vec<Rational> {
        let mut vals: Vec<Rational> = self.values().cloned().collect();
        vals.sort();
        vals.dedup();
        let mids: Vec<Rational> = vals.windows(2).map(|w| midpoint(&w[0], &w[1])).collect();
        vals.extend(mids);
        vals.sort();
        vals
    }

    fn shy_search(&self, count_parts: impl Fn(&IntervalUnion) -> usize) -> PlShyVerdict {
        let tests = self.level_test_set();
        for (i, lo) in tests.iter().enumerate() {
            for hi in &tests[i..] {
                let interval = RationalInterval::closed(lo.clone(), hi.clone());
                let preimage = self.preimage_interval(&interval);
                if count_parts(&preimage) != 1 {
                    return PlShyVerdict {
                        shy: false,
                        witness: Some(PlWitness { interval, preimage }),
                    };
                }
            }
        }
        PlShyVerdict {
            shy: true,
            witness: None,
        }
    }

    /// Shyness on an interval domain: every closed test interval inside the
    /// image, with ends among the breakpoint values and their midpoints, has a
    /// preimage of exactly one piece.
    pub fn shy_verdict(&self) -> Result<PlShyVerdict> {
        self.require_linear()?;
        Ok(self.shy_search(IntervalUnion::len))
    }

    pub fn is_shy_pl(&self) -> Result<bool> {
        Ok(self.shy_verdict()?.shy)
    }

    /// As [`shy_verdict`](Self::shy_verdict) but counting preimage pieces on
    /// the circle, where pieces touching both glued ends are one.
    pub fn circle_shy_verdict(&self) -> Result<PlShyVerdict> {
        self.require_circular()?;
        let (s, e) = (self.start().clone(), self.end().clone());
        Ok(self.shy_search(|u| u.circle_part_count(&s, &e)))
    }

    pub fn is_shy_circle_pl(&self) -> Result<bool> {
        Ok(self.circle_shy_verdict()?.shy)
    }
}

/// Solution set of `f(x) ∈ target` on the closed segment from `a` to `b`.
fn segment_preimage(
    (x0, y0): &(Rational, Rational),
    (x1, y1): &(Rational, Rational),
    target: &RationalInterval,
) -> Option<RationalInterval> {
    let (ylo, yhi) = match y0.cmp(y1) {
        Ordering::Equal => {
            return target
                .contains(y0)
                .then(|| RationalInterval::closed(x0.clone(), x1.clone()));
        }
        Ordering::Less => (y0, y1),
        Ordering::Greater => (y1, y0),
    };
    let hit = target.clip_closed(ylo, yhi)?;
    let inverse = |t: &Rational| x0 + (t - y0) * (x1 - x0) / (y1 - y0);
    let (a, b) = (inverse(hit.lo()), inverse(hit.hi()));
    if y0 < y1 {
        RationalInterval::new(a, b, hit.lo_closed(), hit.hi_closed()).ok()
    } else {
        RationalInterval::new(b, a, hit.hi_closed(), hit.lo_closed()).ok()
    }
}
