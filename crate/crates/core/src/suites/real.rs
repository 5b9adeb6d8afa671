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

//! Suites over PL functions, angle maps and the Khalimsky quotient, together
//! with their digital analogues.

use std::sync::Arc;

use serde_json::json;

use super::digital::{map_witness, table_at};
use super::gen;
use super::{run_indexed, run_random, CaseOutcome, SuiteConfig};
use crate::digital::DigitalImage;
use crate::error::{Result, ShyError};
use crate::io::{pl_to_value, union_to_value};
use crate::khalimsky::{verify_q_shy_window, verify_qn_shy_boxes, KhalimskyInterval, MAX_BOX_SIDE};
use crate::maps::{is_shy, shy_oracle, shy_oracle_full_codomain, DigitalMap};
use crate::pl::{arc_preimage, is_shy_interval_to_circle, AngleMap, Arc as CircleArc, PLFunction};
use crate::rational::{int, rat, IntervalUnion, RationalInterval};
use crate::report::SuiteReport;

pub fn tent() -> PLFunction {
    PLFunction::new(vec![(int(0), int(0)), (int(1), int(1)), (int(2), int(0))], false)
        .expect("tent is valid")
}

/// One period of a sine-like wave: up to 1, down to -1, back to 0.
pub fn sine_like() -> PLFunction {
    PLFunction::new(
        vec![(int(0), int(0)), (rat(1, 4), int(1)), (rat(3, 4), int(-1)), (int(1), int(0))],
        true,
    )
    .expect("sine-like function is valid")
}

pub fn half_turn() -> AngleMap {
    AngleMap::new(PLFunction::new(vec![(int(0), int(0)), (rat(1, 2), rat(1, 2))], false).unwrap())
        .expect("half turn is valid")
}

fn pl_witness(f: &PLFunction, check: &str, reason: &str) -> serde_json::Value {
    json!({"check": [check], "pl": pl_to_value(f), "reason": reason})
}

/// Values of a map from a digital interval, in increasing coordinate order.
fn values_along(f: &DigitalMap) -> Vec<i64> {
    let dom = f.domain();
    let mut idx: Vec<usize> = (0..dom.len()).collect();
    idx.sort_by_key(|&i| dom.point(i).coords()[0]);
    idx.iter()
        .map(|&i| f.codomain().point(f.apply(i)).coords()[0])
        .collect()
}

fn monotone_seq(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] <= w[1]) || v.windows(2).all(|w| w[0] >= w[1])
}

/// Exhaustive digital analogue over all continuous maps from `doms` into
/// `[0, 3]`. `judge(shy, values)` returns a tag to count, or the reason for a
/// failure.
fn digital_analogue(
    report: &mut SuiteReport,
    label: &str,
    doms: Vec<DigitalImage>,
    judge: impl Fn(bool, &[i64]) -> std::result::Result<&'static str, &'static str> + Sync,
) {
    let line = Arc::new(DigitalImage::interval(0, 3));
    for dom in doms {
        let dom = Arc::new(dom);
        let total = (line.len() as u64).pow(dom.len() as u32);
        run_indexed(report, label, total, |i| {
            let f = DigitalMap::new(dom.clone(), line.clone(), table_at(i, dom.len(), line.len()))
                .expect("table in range");
            if !f.is_continuous() {
                return CaseOutcome::pass();
            }
            let shy = match is_shy(&f) {
                Ok(v) => v.shy,
                Err(e) => return CaseOutcome::fail(map_witness(&f, &["shy"], e.to_string())),
            };
            match judge(shy, &values_along(&f)) {
                Ok(tag) => CaseOutcome::pass().tag(tag),
                Err(why) => CaseOutcome::fail(map_witness(&f, &["shy"], why)),
            }
        });
    }
}

pub(crate) fn monotone_shy(report: &mut SuiteReport, cfg: &SuiteConfig, cases: u64) -> Result<()> {
    // the tent must fail with a two-piece preimage
    let v = tent().shy_verdict()?;
    let tent_ok = !v.shy && v.witness.as_ref().is_some_and(|w| w.preimage.len() == 2);
    report.record((!tent_ok).then(|| pl_witness(&tent(), "shy-pl", "tent not reported with a two-part witness")));
    if let Some(w) = &v.witness {
        report.note("tent.witness", union_to_value(&w.preimage));
    }
    run_random(report, "random", cfg.seed, cases, |rng| {
        let f = gen::random_pl(rng);
        let shy = f.is_shy_pl().expect("interval domain");
        let mono = f.is_monotone().expect("interval domain");
        if shy != mono {
            return CaseOutcome::fail(pl_witness(&f, "shy-pl", "shyness and monotonicity disagree"));
        }
        CaseOutcome::pass().tag(if mono { "monotone" } else { "not_monotone" })
    });
    // digital intervals into a digital interval: shy iff monotone
    let doms = (1..=5).map(|k| DigitalImage::interval(0, k - 1)).collect();
    digital_analogue(report, "digital", doms, |shy, vals| match (shy, monotone_seq(vals)) {
        (true, true) => Ok("shy"),
        (false, false) => Ok("not_shy"),
        _ => Err("digital shyness differs from monotonicity"),
    });
    Ok(())
}

pub(crate) fn circle_constant(report: &mut SuiteReport, cfg: &SuiteConfig, cases: u64) -> Result<()> {
    let sine_shy = sine_like().is_shy_circle_pl()?;
    report.record(sine_shy.then(|| pl_witness(&sine_like(), "shy-pl", "sine-like function judged shy")));
    run_random(report, "random", cfg.seed, cases, |rng| {
        let f = gen::random_circular_pl(rng);
        let shy = f.is_shy_circle_pl().expect("circular");
        if shy && !f.is_constant() {
            return CaseOutcome::fail(pl_witness(&f, "shy-pl", "nonconstant circular function judged shy"));
        }
        if !shy && f.is_constant() {
            return CaseOutcome::fail(pl_witness(&f, "shy-pl", "constant circular function judged not shy"));
        }
        CaseOutcome::pass().tag(if shy { "shy" } else { "not_shy" })
    });
    // digital cycles do admit nonconstant shy maps (collapse an arc to a point
    // and send the rest to a neighbor), so these are counted, not asserted
    let doms = (4..=6).map(DigitalImage::cycle).collect();
    digital_analogue(report, "digital", doms, |shy, vals| {
        Ok(match (shy, vals.iter().all(|&v| v == vals[0])) {
            (true, true) => "shy_constant",
            (true, false) => "shy_nonconstant",
            (false, _) => "not_shy",
        })
    });
    Ok(())
}

pub(crate) fn khalimsky_q(report: &mut SuiteReport, cfg: &SuiteConfig) -> Result<()> {
    let n = cfg.window.unwrap_or(50);
    let line = verify_q_shy_window(n);
    report.absorb(line);
    report.note("window", n);
    let dim = cfg.dim.unwrap_or(1);
    if dim >= 2 {
        if 2 * n as i64 > MAX_BOX_SIDE {
            return Err(ShyError::Size {
                what: "box window side".into(),
                size: 2 * n as usize,
                limit: MAX_BOX_SIDE as usize,
            });
        }
        let axis = KhalimskyInterval::new(-(n as i64), n as i64)?;
        let boxes = verify_qn_shy_boxes(&vec![axis; dim])?;
        report.note("boxes", boxes.cases);
        report.absorb(boxes);
    }
    Ok(())
}

pub(crate) fn embedding_example(report: &mut SuiteReport, cfg: &SuiteConfig) -> Result<()> {
    let m = half_turn();
    let shy = is_shy_interval_to_circle(&m)?;
    report.record((!shy).then(|| json!({"check": ["shy-pl"], "reason": "half-turn map judged not shy"})));

    let lower = CircleArc::closed(rat(1, 2), int(1))?;
    let pre = arc_preimage(&m, &lower);
    let expected = IntervalUnion::from_parts(vec![
        RationalInterval::point(int(0)),
        RationalInterval::point(rat(1, 2)),
    ]);
    report.note("lower_arc_preimage", union_to_value(&pre));
    report.record((pre != expected || pre.len() != 2).then(|| {
        json!({"check": ["arc-preimage"], "got": union_to_value(&pre), "reason": "lower arc preimage is not {0, 1/2}"})
    }));

    let upper = CircleArc::closed(int(0), rat(1, 2))?;
    let whole = arc_preimage(&m, &upper);
    let expected = IntervalUnion::from_parts(vec![RationalInterval::closed(int(0), rat(1, 2))]);
    report.record((whole != expected).then(|| {
        json!({"check": ["arc-preimage"], "got": union_to_value(&whole), "reason": "upper arc preimage is not the domain"})
    }));

    // digital analogue: a 5-point arc inside an 8-cycle
    let f = DigitalMap::new(
        Arc::new(DigitalImage::interval(0, 4)),
        Arc::new(DigitalImage::cycle(8)),
        vec![0, 1, 2, 3, 4],
    )?;
    let restricted = is_shy(&f)?.shy && shy_oracle(&f, cfg.oracle_limit)?.shy;
    report.record((!restricted).then(|| map_witness(&f, &["shy", "oracle-shy"], "digital arc embedding not shy")));
    let full = shy_oracle_full_codomain(&f, cfg.oracle_limit)?;
    report.record(full.shy.then(|| {
        map_witness(&f, &["oracle-shy"], "whole-codomain quantifier should reject the arc embedding")
    }));
    Ok(())
}
