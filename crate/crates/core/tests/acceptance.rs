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

//! Acceptance criteria, each run at its stated scale and time budget.
//!
//! Runs without the libtest harness so that every criterion prints exactly
//! one PASS/FAIL line; the process exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use serde_json::Value;
use shylab::khalimsky::{verify_q_shy_window, verify_qn_shy_boxes};
use shylab::pl::arc_preimage;
use shylab::pl::Arc as CircleArc;
use shylab::rational::{half, int};
use shylab::suites::{check_wedge_lemma_exhaustive, half_turn, sine_like, tent};
use shylab::{
    is_shy, run_suite, DigitalImage, DigitalMap, IntervalUnion, KhalimskyInterval, RationalInterval, SuiteConfig,
    SuiteName, SuiteReport, DEFAULT_ENUMERATION_LIMIT,
};

type Check = Result<String, String>;
type Criterion = (&'static str, Option<u64>, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn clean(r: &SuiteReport) -> Result<(), String> {
    ensure(r.passed(), || {
        format!(
            "{} failures, first witness {}",
            r.failures,
            r.witness.as_ref().map(Value::to_string).unwrap_or_default()
        )
    })
}

fn note(r: &SuiteReport, key: &str) -> u64 {
    r.notes.get(key).and_then(Value::as_u64).unwrap_or(0)
}

fn sum_notes(r: &SuiteReport, keep: impl Fn(&str) -> bool) -> u64 {
    r.notes.iter().filter(|(k, _)| keep(k)).filter_map(|(_, v)| v.as_u64()).sum()
}

fn suite(name: SuiteName) -> Result<SuiteReport, String> {
    run_suite(name, &SuiteConfig::default()).map_err(|e| e.to_string())
}

fn oracle_equivalence() -> Check {
    let r = suite(SuiteName::OracleEquivalence)?;
    clean(&r)?;
    ensure(r.cases == 27 + 256 + 81 + 10_000, || format!("ran {} cases", r.cases))?;
    Ok(format!(
        "{} maps, {} continuous shy, {} continuous non-shy",
        r.cases,
        ["P3->P3.shy", "C4->C4.shy", "C4->P3.shy", "random.shy"].iter().map(|k| note(&r, k)).sum::<u64>(),
        ["P3->P3.not_shy", "C4->C4.not_shy", "C4->P3.not_shy", "random.not_shy"]
            .iter()
            .map(|k| note(&r, k))
            .sum::<u64>(),
    ))
}

fn monotone_shy() -> Check {
    let v = tent().shy_verdict().map_err(|e| e.to_string())?;
    let w = v.witness.ok_or("tent has no witness")?;
    ensure(!v.shy && w.preimage.len() == 2, || format!("tent witness {}", w.preimage))?;
    let r = suite(SuiteName::MonotoneShy)?;
    clean(&r)?;
    let random = note(&r, "random.monotone") + note(&r, "random.not_monotone");
    ensure(random == 10_000, || format!("{random} random functions"))?;
    Ok(format!(
        "{random} random functions ({} monotone); tent preimage of {} is {}",
        note(&r, "random.monotone"),
        w.interval,
        w.preimage
    ))
}

fn circle_constant() -> Check {
    ensure(!sine_like().is_shy_circle_pl().map_err(|e| e.to_string())?, || {
        "sine-like function judged shy".into()
    })?;
    let r = suite(SuiteName::CircleConstant)?;
    clean(&r)?;
    let random = note(&r, "random.shy") + note(&r, "random.not_shy");
    ensure(random == 10_000, || format!("{random} random functions"))?;
    Ok(format!("{random} random circular functions, {} shy (all constant)", note(&r, "random.shy")))
}

fn khalimsky() -> Check {
    let line = verify_q_shy_window(50);
    clean(&line)?;
    ensure(line.cases == 5_151, || format!("{} intervals", line.cases))?;
    let axis = KhalimskyInterval::new(-10, 10).map_err(|e| e.to_string())?;
    let boxes = verify_qn_shy_boxes(&[axis, axis]).map_err(|e| e.to_string())?;
    clean(&boxes)?;
    ensure(boxes.cases == 231 * 231, || format!("{} boxes", boxes.cases))?;
    Ok(format!("{} intervals, {} boxes", line.cases, boxes.cases))
}

fn composition() -> Check {
    let r = suite(SuiteName::Composition)?;
    clean(&r)?;
    ensure(r.cases == 5_000, || format!("{} pairs", r.cases))?;
    Ok(format!("{} pairs, every composite oracle-shy", r.cases))
}

fn factor() -> Check {
    let r = suite(SuiteName::Factor)?;
    clean(&r)?;
    ensure(r.cases == 5_000, || format!("{} products", r.cases))?;
    Ok(format!(
        "{} products ({} shy); converse candidates logged: {}",
        r.cases,
        note(&r, "random.product_shy"),
        note(&r, "random.converse_candidate")
    ))
}

fn wedge() -> Check {
    let r = suite(SuiteName::Wedge)?;
    clean(&r)?;
    let random = r.cases - note(&r, "lemma_wedges");
    ensure(random == 5_000, || format!("{random} wedge maps"))?;
    let lemma = check_wedge_lemma_exhaustive(4, DEFAULT_ENUMERATION_LIMIT);
    clean(&lemma)?;
    // pointed labeled graphs on 1..=4 points: 1 + 2*2 + 3*8 + 4*64
    ensure(lemma.cases == 285 * 285, || format!("{} wedges in lemma sweep", lemma.cases))?;
    Ok(format!(
        "{random} wedge maps ({} shy, {} not shy); {} small wedges separated",
        note(&r, "random.shy"),
        note(&r, "random.not_shy"),
        lemma.cases
    ))
}

fn cut_point() -> Check {
    let r = suite(SuiteName::CutPoint)?;
    clean(&r)?;
    let star = note(&r, "star.continuous") + note(&r, "star.discontinuous");
    ensure(star == 7u64.pow(7), || format!("{star} star maps"))?;
    Ok(format!("{star} star maps, {} shy; none with 3 nonconstant branches", note(&r, "star.shy")))
}

fn pi1_degree() -> Check {
    let r = suite(SuiteName::Pi1Degree)?;
    clean(&r)?;
    let maps = sum_notes(&r, |k| !k.contains(".wraps.") && (k.ends_with(".shy_surjection") || k.ends_with(".other")));
    let shy = sum_notes(&r, |k| !k.contains(".wraps.") && k.ends_with(".shy_surjection"));
    let wraps = sum_notes(&r, |k| k.ends_with(".wraps.wrap"));
    let pairs = sum_notes(&r, |k| k.starts_with("C") && k.ends_with(".shy_surjection") && !k.contains(".wraps."));
    ensure(shy > 0 && wraps > 0 && pairs > 0, || format!("nothing exercised: {:?}", r.notes))?;
    ensure(maps + wraps == r.cases, || format!("{} cases but {} tallied", r.cases, maps + wraps))?;
    Ok(format!("{maps} continuous cycle maps over m, n in 4..=6, {shy} shy surjections, {wraps} standard wraps"))
}

fn embedding_example() -> Check {
    let m = half_turn();
    ensure(shylab::pl::is_shy_interval_to_circle(&m).map_err(|e| e.to_string())?, || {
        "half-turn map judged not shy".into()
    })?;
    let lower = CircleArc::closed(half(), int(1)).map_err(|e| e.to_string())?;
    let got = arc_preimage(&m, &lower);
    let want = IntervalUnion::from_parts(vec![RationalInterval::point(int(0)), RationalInterval::point(half())]);
    ensure(got == want, || format!("lower arc preimage {got}"))?;
    let r = suite(SuiteName::EmbeddingExample)?;
    clean(&r)?;
    // image restriction matters digitally too: an arc into a cycle
    let c8 = std::sync::Arc::new(DigitalImage::cycle(8));
    let arc = DigitalMap::new(std::sync::Arc::new(DigitalImage::interval(0, 4)), c8, vec![0, 1, 2, 3, 4])
        .map_err(|e| e.to_string())?;
    ensure(is_shy(&arc).map_err(|e| e.to_string())?.shy, || "digital arc judged not shy".into())?;
    Ok(format!("half-turn shy; lower arc preimage {got}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 oracle-equivalence", Some(60), oracle_equivalence),
        ("2 monotone-shy", Some(30), monotone_shy),
        ("3 circle-constant", Some(30), circle_constant),
        ("4 khalimsky-q", Some(10), khalimsky),
        ("5 composition", Some(120), composition),
        ("6 factor", None, factor),
        ("7 wedge", None, wedge),
        ("8 cut-point", Some(60), cut_point),
        ("9 pi1-degree", Some(120), pi1_degree),
        ("10 embedding-example", None, embedding_example),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match (result, budget) {
            (Ok(_), Some(s)) if elapsed > Duration::from_secs(s) => {
                Err(format!("took {:.1}s, budget {s}s", elapsed.as_secs_f64()))
            }
            (r, _) => r,
        };
        let limit = budget.map(|s| format!(" < {s}s")).unwrap_or_default();
        match result {
            Ok(detail) => println!("PASS criterion {name} ({:.2}s{limit}): {detail}", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} ({:.2}s{limit}): {why}", elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
