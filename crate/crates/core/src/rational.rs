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

//! Exact rational intervals and finite unions of them.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, BigRational, Zero};

use crate::error::{Result, ShyError};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn half() -> Rational {
    rat(1, 2)
}

/// Parses `p/q` or a bare integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || ShyError::Parse(format!("`{text}` is not a rational of the form p/q"));
    match t.split_once('/') {
        None => t.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(ShyError::Parse(format!("`{text}` has a zero denominator")));
            }
            Ok(BigRational::new(p, q))
        }
    }
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// A nonempty interval of the rational line with explicit endpoint openness.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
    lo_closed: bool,
    hi_closed: bool,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        match lo.cmp(&hi) {
            Ordering::Greater => Err(ShyError::Domain(format!("interval with lo {lo} > hi {hi}"))),
            Ordering::Equal if !(lo_closed && hi_closed) => Err(ShyError::Domain(format!(
                "degenerate interval at {lo} must be closed on both ends"
            ))),
            _ => Ok(RationalInterval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            }),
        }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Self::new(lo, hi, true, true).expect("closed interval needs lo <= hi")
    }

    pub fn open(lo: Rational, hi: Rational) -> Self {
        assert!(lo < hi, "open interval needs lo < hi");
        RationalInterval {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn point(x: Rational) -> Self {
        Self::closed(x.clone(), x)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed { *x >= self.lo } else { *x > self.lo };
        let below = if self.hi_closed { *x <= self.hi } else { *x < self.hi };
        above && below
    }

    /// Intersection with the closed interval `[a, b]`, `a <= b`.
    pub(crate) fn clip_closed(&self, a: &Rational, b: &Rational) -> Option<RationalInterval> {
        let (lo, lo_closed) = match self.lo.cmp(a) {
            Ordering::Less => (a.clone(), true),
            Ordering::Equal => (a.clone(), self.lo_closed),
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(b) {
            Ordering::Greater => (b.clone(), true),
            Ordering::Equal => (b.clone(), self.hi_closed),
            Ordering::Less => (self.hi.clone(), self.hi_closed),
        };
        RationalInterval::new(lo, hi, lo_closed, hi_closed).ok()
    }

    pub fn shifted(&self, by: &Rational) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + by,
            hi: &self.hi + by,
            ..self.clone()
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// Sorted union of pairwise disjoint intervals, no two of which could be
/// merged into one.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalUnion {
    parts: Vec<RationalInterval>,
}

/// Whether `next` (starting no earlier than `cur`) overlaps or abuts `cur`.
fn joins(cur: &RationalInterval, next: &RationalInterval) -> bool {
    match next.lo.cmp(&cur.hi) {
        Ordering::Less => true,
        Ordering::Equal => cur.hi_closed || next.lo_closed,
        Ordering::Greater => false,
    }
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion::default()
    }

    /// Normalizes an arbitrary collection of intervals.
    pub fn from_parts(mut parts: Vec<RationalInterval>) -> Self {
        // closed lower ends sort first among equal lo
        parts.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<RationalInterval> = Vec::with_capacity(parts.len());
        for next in parts {
            match out.last_mut() {
                Some(cur) if joins(cur, &next) => match next.hi.cmp(&cur.hi) {
                    Ordering::Greater => {
                        cur.hi = next.hi;
                        cur.hi_closed = next.hi_closed;
                    }
                    Ordering::Equal => cur.hi_closed |= next.hi_closed,
                    Ordering::Less => {}
                },
                _ => out.push(next),
            }
        }
        IntervalUnion { parts: out }
    }

    pub fn parts(&self) -> &[RationalInterval] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    /// Number of connected pieces once the ends of `[start, end]` are glued
    /// into a circle.
    pub fn circle_part_count(&self, start: &Rational, end: &Rational) -> usize {
        let n = self.parts.len();
        if n >= 2 && self.contains(start) && self.contains(end) {
            n - 1
        } else {
            n
        }
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}
