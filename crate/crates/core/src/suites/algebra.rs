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

//! Suites for compositions, products and wedges.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::digital::map_witness;
use super::gen;
use super::{run_indexed, run_random, CaseOutcome, SuiteConfig};
use crate::constructions::{self, compose, product_map, vee_map, WedgeImage};
use crate::digital::DigitalImage;
use crate::error::Result;
use crate::io::map_to_value;
use crate::maps::{shy_oracle, DigitalMap};
use crate::report::SuiteReport;

fn oracle_shy(f: &DigitalMap, limit: usize) -> Option<bool> {
    shy_oracle(f, limit).ok().map(|v| v.shy)
}

/// A shy surjection out of `x`: a connected-block quotient, or occasionally a
/// random continuous map that the oracle accepts.
fn shy_surjection(rng: &mut ChaCha8Rng, x: &Arc<DigitalImage>, limit: usize) -> DigitalMap {
    if rng.gen_bool(0.3) {
        for _ in 0..20 {
            let y = Arc::new(gen::random_image(rng, 5, false));
            let f = gen::random_continuous_map(rng, x, &y, None);
            if f.is_surjective() && oracle_shy(&f, limit) == Some(true) {
                return f;
            }
        }
    }
    gen::random_quotient(rng, x)
}

/// A shy map out of `y`: quotient followed by an inclusion into a larger
/// image, an oracle-accepted random map, or an inclusion.
fn shy_map_from(rng: &mut ChaCha8Rng, y: &Arc<DigitalImage>, limit: usize) -> DigitalMap {
    match rng.gen_range(0..3) {
        0 => {
            let q = gen::random_quotient(rng, y);
            let extra = rng.gen_range(0..=3);
            let inc = gen::random_extension(rng, q.codomain(), extra);
            compose(&q, &inc).expect("inclusion starts at the quotient")
        }
        1 => {
            for _ in 0..20 {
                let z = Arc::new(gen::random_image(rng, 6, false));
                let g = gen::random_continuous_map(rng, y, &z, None);
                if oracle_shy(&g, limit) == Some(true) {
                    return g;
                }
            }
            DigitalMap::identity(y.clone())
        }
        _ => {
            let extra = rng.gen_range(0..=3);
            gen::random_extension(rng, y, extra)
        }
    }
}

pub(crate) fn composition(report: &mut SuiteReport, cfg: &SuiteConfig, cases: u64) -> Result<()> {
    let limit = cfg.oracle_limit;
    run_random(report, "random", cfg.seed, cases, |rng| {
        let connected = rng.gen_bool(0.7);
        let x = Arc::new(gen::random_image(rng, 7, connected));
        let f = shy_surjection(rng, &x, limit);
        let g = shy_map_from(rng, f.codomain(), limit);
        let pre_f = oracle_shy(&f, limit) == Some(true) && f.is_surjective();
        let pre_g = oracle_shy(&g, limit) == Some(true);
        if !(pre_f && pre_g) {
            return CaseOutcome::fail(json!({
                "check": ["oracle-shy"],
                "f": map_to_value(&f),
                "g": map_to_value(&g),
                "reason": "generator produced maps outside the hypotheses",
            }));
        }
        let h = compose(&f, &g).expect("shapes match");
        match oracle_shy(&h, limit) {
            Some(true) => CaseOutcome::pass(),
            _ => CaseOutcome::fail(json!({
                "check": ["oracle-shy"],
                "map": map_to_value(&h),
                "f": map_to_value(&f),
                "g": map_to_value(&g),
                "reason": "composite of a shy surjection and a shy map is not shy",
            })),
        }
    });
    Ok(())
}

fn random_factor(rng: &mut ChaCha8Rng) -> DigitalMap {
    let connected = rng.gen_bool(0.6);
    let x = Arc::new(gen::random_image(rng, 4, connected));
    if rng.gen_bool(0.5) {
        gen::random_quotient(rng, &x)
    } else {
        let y = Arc::new(gen::random_image(rng, 3, false));
        gen::random_continuous_map(rng, &x, &y, None)
    }
}

pub(crate) fn factor(report: &mut SuiteReport, cfg: &SuiteConfig, cases: u64) -> Result<()> {
    let limit = cfg.oracle_limit;
    run_random(report, "random", cfg.seed, cases, |rng| {
        let (f1, f2) = loop {
            let (a, b) = (random_factor(rng), random_factor(rng));
            if a.image_indices().len() * b.image_indices().len() <= limit {
                break (a, b);
            }
        };
        let prod = product_map(&[&f1, &f2]).expect("factors are nonempty");
        let (Some(p), Some(s1), Some(s2)) = (
            oracle_shy(&prod, limit),
            oracle_shy(&f1, limit),
            oracle_shy(&f2, limit),
        ) else {
            return CaseOutcome::fail(map_witness(&prod, &["oracle-shy"], "oracle refused a product case"));
        };
        if p && !(s1 && s2) {
            return CaseOutcome::fail(json!({
                "check": ["oracle-shy"],
                "map": map_to_value(&prod),
                "factors": [map_to_value(&f1), map_to_value(&f2)],
                "reason": "shy product with a non-shy factor",
            }));
        }
        let out = CaseOutcome::pass().tag(if p { "product_shy" } else { "product_not_shy" });
        // the converse is not asserted; candidates are only counted
        if !p && s1 && s2 {
            out.tag("converse_candidate")
        } else {
            out
        }
    });
    Ok(())
}

/// Pointed map `(x, x0) -> (x', x0')`: a quotient (whose codomain becomes the
/// target), a random continuous map, or rarely an arbitrary pointed table.
fn pointed_map(
    rng: &mut ChaCha8Rng,
    x: &Arc<DigitalImage>,
    x0: usize,
) -> (DigitalMap, usize) {
    match rng.gen_range(0..10) {
        0..=2 => {
            let q = gen::random_quotient(rng, x);
            let b = q.apply(x0);
            (q, b)
        }
        3 => {
            let t = Arc::new(gen::random_image(rng, 4, false));
            let b = rng.gen_range(0..t.len());
            let mut table: Vec<usize> = (0..x.len()).map(|_| rng.gen_range(0..t.len())).collect();
            table[x0] = b;
            (DigitalMap::new(x.clone(), t, table).expect("table in range"), b)
        }
        _ => {
            let t = Arc::new(gen::random_image(rng, 4, false));
            let b = rng.gen_range(0..t.len());
            (gen::random_continuous_map(rng, x, &t, Some((x0, b))), b)
        }
    }
}

pub(crate) fn wedge(report: &mut SuiteReport, cfg: &SuiteConfig, cases: u64) -> Result<()> {
    let limit = cfg.oracle_limit;
    run_random(report, "random", cfg.seed, cases, |rng| {
        let x = Arc::new(gen::random_image(rng, 4, false));
        let y = Arc::new(gen::random_image(rng, 4, false));
        let (x0, y0) = (rng.gen_range(0..x.len()), rng.gen_range(0..y.len()));
        let (f, fx0) = pointed_map(rng, &x, x0);
        let (g, gy0) = pointed_map(rng, &y, y0);
        let w = constructions::wedge(x.clone(), x.point(x0), y.clone(), y.point(y0)).expect("basepoints exist");
        let w2 = constructions::wedge(
            f.codomain().clone(),
            f.codomain().point(fx0),
            g.codomain().clone(),
            g.codomain().point(gy0),
        )
        .expect("basepoints exist");
        let h = vee_map(&f, &g, &w, &w2).expect("maps are pointed");
        let fail = |why: &str| {
            CaseOutcome::fail(json!({
                "check": ["oracle-shy", "continuity"],
                "map": map_to_value(&h),
                "left": map_to_value(&f),
                "right": map_to_value(&g),
                "reason": why,
            }))
        };
        if !w.is_separated() || !w2.is_separated() {
            return fail("wedge parts are not separated");
        }
        let (cf, cg, ch) = (f.is_continuous(), g.is_continuous(), h.is_continuous());
        if ch != (cf && cg) {
            return fail("glued map continuity differs from its pieces");
        }
        if !ch {
            return CaseOutcome::pass().tag("discontinuous");
        }
        match (oracle_shy(&h, limit), oracle_shy(&f, limit), oracle_shy(&g, limit)) {
            (Some(sh), Some(sf), Some(sg)) if sh == (sf && sg) => {
                CaseOutcome::pass().tag(if sh { "shy" } else { "not_shy" })
            }
            (Some(_), Some(_), Some(_)) => fail("wedge shyness differs from shyness of the pieces"),
            _ => fail("oracle refused a wedge case"),
        }
    });
    let lemma = check_wedge_lemma_exhaustive(4, limit);
    report.note("lemma_wedges", lemma.cases);
    report.absorb(lemma);
    Ok(())
}

fn pointed_graphs(max_part: usize) -> Vec<(Arc<DigitalImage>, usize)> {
    gen::labeled_graphs(max_part)
        .into_iter()
        .flat_map(|g| (0..g.len()).map(move |b| (g.clone(), b)))
        .collect()
}

/// Every wedge of two pointed graphs with at most `max_part` points each:
/// the parts are separated, and each connected set meeting both parts holds
/// the wedge point and meets each part in a connected set.
pub fn check_wedge_lemma_exhaustive(max_part: usize, limit: usize) -> SuiteReport {
    let mut report = SuiteReport::new("wedge-lemma", 0);
    let graphs = pointed_graphs(max_part);
    let n = graphs.len() as u64;
    run_indexed(&mut report, "lemma", n * n, |i| {
        let (x, a) = &graphs[(i / n) as usize];
        let (y, b) = &graphs[(i % n) as usize];
        let w: WedgeImage = constructions::wedge(x.clone(), x.point(*a), y.clone(), y.point(*b)).expect("basepoints exist");
        let bad = if !w.is_separated() {
            Some(json!("parts not separated"))
        } else {
            match w.basepoint_separation_counterexample(limit) {
                Ok(None) => None,
                Ok(Some(c)) => Some(json!(c)),
                Err(e) => Some(json!(e.to_string())),
            }
        };
        match bad {
            None => CaseOutcome::pass(),
            Some(detail) => CaseOutcome::fail(json!({
                "check": ["wedge-lemma"],
                "wedge": crate::io::image_to_value(w.image()),
                "detail": detail,
            })),
        }
    });
    report
}
