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

//! The Khalimsky line and the quotient `q: R -> Z`.
//!
//! Odd integers are open points and an even `z` has minimal neighborhood
//! `{z-1, z, z+1}`. `q` fixes even integers and sends every other real to the
//! odd integer within distance 1, so the fiber over an even `z` is `{z}` and
//! the fiber over an odd `z` is the open interval `(z-1, z+1)`.

use std::time::Instant;

use num::{BigInt, Integer};
use serde_json::json;

use crate::error::{Result, ShyError};
use crate::rational::{int, midpoint, rat, IntervalUnion, Rational, RationalInterval};
use crate::report::SuiteReport;

/// Largest box dimension accepted by [`verify_qn_shy_boxes`].
pub const MAX_BOX_DIM: usize = 3;
/// Largest per-axis side `b - a` accepted by [`verify_qn_shy_boxes`].
pub const MAX_BOX_SIDE: i64 = 20;

/// Integer interval `[a, b]`; these are exactly the connected subsets of the
/// Khalimsky line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KhalimskyInterval {
    a: i64,
    b: i64,
}

impl KhalimskyInterval {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a > b {
            return Err(ShyError::Domain(format!("Khalimsky interval [{a}, {b}] has a > b")));
        }
        Ok(KhalimskyInterval { a, b })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn len(&self) -> usize {
        (self.b - self.a + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, z: &BigInt) -> bool {
        *z >= BigInt::from(self.a) && *z <= BigInt::from(self.b)
    }

    /// All subintervals, ordered by left end then right end.
    pub fn subintervals(&self) -> impl Iterator<Item = KhalimskyInterval> + '_ {
        (self.a..=self.b).flat_map(move |a| (a..=self.b).map(move |b| KhalimskyInterval { a, b }))
    }
}

pub fn q_value(x: &Rational) -> BigInt {
    if x.is_integer() {
        // even integers are fixed; an odd integer is its own nearest odd integer
        return x.to_integer();
    }
    let lo = x.floor().to_integer();
    if lo.is_odd() {
        lo
    } else {
        lo + 1
    }
}

pub fn qn_value(xs: &[Rational]) -> Vec<BigInt> {
    xs.iter().map(q_value).collect()
}

pub fn q_fiber(z: i64) -> RationalInterval {
    if z.is_even() {
        RationalInterval::point(int(z))
    } else {
        RationalInterval::open(int(z - 1), int(z + 1))
    }
}

/// `q⁻¹([a, b])` as one interval: the left end is `a` (closed) for even `a`
/// and `a - 1` (open) for odd `a`, symmetrically on the right.
pub fn q_preimage_interval(k: KhalimskyInterval) -> RationalInterval {
    let (lo, lo_closed) = if k.a.is_even() { (k.a, true) } else { (k.a - 1, false) };
    let (hi, hi_closed) = if k.b.is_even() { (k.b, true) } else { (k.b + 1, false) };
    RationalInterval::new(int(lo), int(hi), lo_closed, hi_closed)
        .expect("preimage of a Khalimsky interval is a valid interval")
}

/// Connectivity in the Khalimsky line: a finite set is connected exactly when
/// it is a run of consecutive integers.
pub fn khalimsky_connected(set: &[i64]) -> bool {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s.windows(2).all(|w| w[1] == w[0] + 1)
}

/// Checks one interval: the fibers over it union to a single interval equal
/// to [`q_preimage_interval`], and `q` agrees with membership at the ends, a
/// quarter step either side of them, and the midpoint.
fn check_interval(k: KhalimskyInterval) -> Option<String> {
    let fibers = IntervalUnion::from_parts((k.a..=k.b).map(q_fiber).collect());
    let pre = q_preimage_interval(k);
    if fibers.len() != 1 {
        return Some(format!("fibers over [{}, {}] union to {fibers}", k.a, k.b));
    }
    if fibers.parts()[0] != pre {
        return Some(format!("fiber union {fibers} differs from {pre}"));
    }
    let quarter = rat(1, 4);
    let probes = [
        pre.lo() - &quarter,
        pre.lo().clone(),
        pre.lo() + &quarter,
        midpoint(pre.lo(), pre.hi()),
        pre.hi() - &quarter,
        pre.hi().clone(),
        pre.hi() + &quarter,
    ];
    for x in probes {
        if k.contains(&q_value(&x)) != pre.contains(&x) {
            return Some(format!("q({x}) disagrees with membership in {pre}"));
        }
    }
    None
}

/// Sweeps every Khalimsky interval inside `[-N, N]` and checks that its
/// preimage under `q` is a single interval.
pub fn verify_q_shy_window(n: u32) -> SuiteReport {
    let start = Instant::now();
    let n = n as i64;
    let mut report = SuiteReport::new("khalimsky-q", 0);
    let window = KhalimskyInterval { a: -n, b: n };
    for k in window.subintervals() {
        report.record(check_interval(k).map(|why| {
            json!({"check": "khalimsky", "interval": [k.a, k.b], "reason": why})
        }));
    }
    report.note("window", n);
    report.set_elapsed(start.elapsed());
    report
}

/// Sweeps every box (product of Khalimsky intervals) inside `window` and checks
/// that its preimage under `q^n` is a box of single intervals.
pub fn verify_qn_shy_boxes(window: &[KhalimskyInterval]) -> Result<SuiteReport> {
    let start = Instant::now();
    let d = window.len();
    if d == 0 || d > MAX_BOX_DIM {
        return Err(ShyError::Size {
            what: "box dimension".into(),
            size: d,
            limit: MAX_BOX_DIM,
        });
    }
    if let Some(w) = window.iter().find(|w| w.b - w.a > MAX_BOX_SIDE) {
        return Err(ShyError::Size {
            what: "window side".into(),
            size: (w.b - w.a) as usize,
            limit: MAX_BOX_SIDE as usize,
        });
    }
    let axes: Vec<Vec<(KhalimskyInterval, Option<String>, RationalInterval)>> = window
        .iter()
        .map(|w| {
            w.subintervals()
                .map(|k| (k, check_interval(k), q_preimage_interval(k)))
                .collect()
        })
        .collect();
    let mut report = SuiteReport::new("khalimsky-qn", 0);
    let mut idx = vec![0usize; d];
    'boxes: loop {
        let parts: Vec<_> = idx.iter().zip(&axes).map(|(&i, axis)| &axis[i]).collect();
        let mut failure = parts.iter().find_map(|(_, bad, _)| bad.clone());
        if failure.is_none() {
            let center: Vec<Rational> = parts.iter().map(|(_, _, pre)| midpoint(pre.lo(), pre.hi())).collect();
            let image = qn_value(&center);
            if !parts.iter().zip(&image).all(|((k, _, _), z)| k.contains(z)) {
                failure = Some("centre of the preimage box leaves the box".into());
            }
        }
        report.record(failure.map(|why| {
            let b: Vec<[i64; 2]> = parts.iter().map(|(k, _, _)| [k.a, k.b]).collect();
            json!({"check": "khalimsky", "box": b, "reason": why})
        }));
        for axis in (0..d).rev() {
            idx[axis] += 1;
            if idx[axis] < axes[axis].len() {
                continue 'boxes;
            }
            idx[axis] = 0;
        }
        break;
    }
    report.note("dimension", d);
    report.set_elapsed(start.elapsed());
    Ok(report)
}
