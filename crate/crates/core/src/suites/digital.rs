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

//! Suites over maps between digital images.

use std::sync::Arc;

use rand::Rng;
use serde_json::{json, Value};

use super::gen;
use super::{run_indexed, run_random, CaseOutcome, SuiteConfig};
use crate::digital::{DigitalImage, LatticePoint};
use crate::error::Result;
use crate::io::map_to_value;
use crate::maps::{
    cut_point_audit, degree_of_cycle_map, is_shy, shy_oracle, shy_oracle_full_codomain, DigitalMap,
    ShyVerdict,
};
use crate::report::SuiteReport;

pub(crate) fn map_witness(f: &DigitalMap, checks: &[&str], reason: impl Into<String>) -> Value {
    json!({"check": checks, "map": map_to_value(f), "reason": reason.into()})
}

/// Every codomain-index table for maps between images of the given sizes,
/// with the last domain point varying fastest.
pub(crate) fn table_at(mut index: u64, n_dom: usize, n_cod: usize) -> Vec<usize> {
    let mut t = vec![0; n_dom];
    for k in (0..n_dom).rev() {
        t[k] = (index % n_cod as u64) as usize;
        index /= n_cod as u64;
    }
    t
}

fn witness_is_sound(f: &DigitalMap, v: &ShyVerdict) -> bool {
    match &v.witness {
        None => v.shy,
        Some(w) => {
            let image = f.image_indices();
            !v.shy
                && f.codomain().is_connected_indices(&w.subset)
                && w.subset.iter().all(|y| image.contains(y))
                && w.preimage == f.preimage(&w.subset)
                && !f.domain().is_connected_indices(&w.preimage)
        }
    }
}

/// Both continuity deciders agree; on continuous maps the local and
/// brute-force shyness deciders agree (same verdict, same minimal witness,
/// sound witnesses); on surjections the image-restricted and whole-codomain
/// oracles agree.
pub(crate) fn equivalence_case(f: &DigitalMap, limit: usize) -> CaseOutcome {
    let run = || -> Result<CaseOutcome> {
        let cont = f.is_continuous();
        if cont != f.is_continuous_oracle(limit)? {
            return Ok(CaseOutcome::fail(map_witness(
                f,
                &["continuity"],
                "edge and connected-image continuity disagree",
            )));
        }
        if !cont {
            return Ok(CaseOutcome::pass().tag("discontinuous"));
        }
        let local = is_shy(f)?;
        let brute = shy_oracle(f, limit)?;
        if local.shy != brute.shy {
            return Ok(CaseOutcome::fail(map_witness(
                f,
                &["shy", "oracle-shy"],
                "local and brute-force shyness disagree",
            )));
        }
        if !witness_is_sound(f, &local) || !witness_is_sound(f, &brute) || local.witness != brute.witness {
            return Ok(CaseOutcome::fail(map_witness(
                f,
                &["shy", "oracle-shy"],
                "witnesses differ or are unsound",
            )));
        }
        let mut out = CaseOutcome::pass().tag(if local.shy { "shy" } else { "not_shy" });
        if f.is_surjective() {
            let full = shy_oracle_full_codomain(f, limit)?;
            if full.shy != brute.shy {
                return Ok(CaseOutcome::fail(map_witness(
                    f,
                    &["oracle-shy"],
                    "whole-codomain shyness differs on a surjection",
                )));
            }
            out = out.tag("surjective");
        }
        Ok(out)
    };
    run().unwrap_or_else(|e| CaseOutcome::fail(map_witness(f, &["oracle-shy"], e.to_string())))
}

fn exhaustive_equivalence(report: &mut SuiteReport, label: &str, dom: DigitalImage, cod: DigitalImage, limit: usize) {
    let (dom, cod) = (Arc::new(dom), Arc::new(cod));
    let total = (cod.len() as u64).pow(dom.len() as u32);
    run_indexed(report, label, total, |i| {
        let f = DigitalMap::new(dom.clone(), cod.clone(), table_at(i, dom.len(), cod.len()))
            .expect("table in range");
        equivalence_case(&f, limit)
    });
}

/// Every map from a labeled graph on at most 4 points to one on at most 3.
fn small_graph_equivalence(report: &mut SuiteReport, limit: usize) {
    let doms = gen::labeled_graphs(4);
    let cods = gen::labeled_graphs(3);
    let mut jobs: Vec<(usize, usize, u64)> = Vec::new();
    for (a, d) in doms.iter().enumerate() {
        for (b, c) in cods.iter().enumerate() {
            for t in 0..(c.len() as u64).pow(d.len() as u32) {
                jobs.push((a, b, t));
            }
        }
    }
    run_indexed(report, "small-graphs", jobs.len() as u64, |i| {
        let (a, b, t) = jobs[i as usize];
        let (dom, cod) = (&doms[a], &cods[b]);
        let f = DigitalMap::new(dom.clone(), cod.clone(), table_at(t, dom.len(), cod.len()))
            .expect("table in range");
        equivalence_case(&f, limit)
    });
}

pub(crate) fn oracle_equivalence(report: &mut SuiteReport, cfg: &SuiteConfig, cases: u64) -> Result<()> {
    let p3 = || DigitalImage::interval(0, 2);
    let c4 = || DigitalImage::cycle(4);
    exhaustive_equivalence(report, "P3->P3", p3(), p3(), cfg.oracle_limit);
    exhaustive_equivalence(report, "C4->C4", c4(), c4(), cfg.oracle_limit);
    exhaustive_equivalence(report, "C4->P3", c4(), p3(), cfg.oracle_limit);
    if cfg.exhaustive {
        small_graph_equivalence(report, cfg.oracle_limit);
    }
    run_random(report, "random", cfg.seed, cases, |rng| {
        let connected = rng.gen_bool(0.5);
        let dom = Arc::new(gen::random_image(rng, 8, connected));
        let f = if rng.gen_bool(0.3) {
            let q = gen::random_quotient(rng, &dom);
            if q.codomain().len() <= 6 {
                Some(q)
            } else {
                None
            }
        } else {
            None
        };
        let f = f.unwrap_or_else(|| {
            let cod = Arc::new(gen::random_image(rng, 6, false));
            gen::random_continuous_map(rng, &dom, &cod, None)
        });
        equivalence_case(&f, cfg.oracle_limit)
    });
    Ok(())
}

/// Center `(0, 0)` with three rays of two points each, under `c1`.
pub fn three_star() -> DigitalImage {
    let pts = [[0, 0], [1, 0], [2, 0], [0, 1], [0, 2], [-1, 0], [-2, 0]];
    DigitalImage::with_cu(pts.iter().map(|p| LatticePoint::from(*p)).collect(), 1)
        .expect("star is valid")
}

fn table_continuous(dom: &DigitalImage, cod: &DigitalImage, t: &[usize]) -> bool {
    dom.edges().all(|(a, b)| t[a] == t[b] || cod.adjacent_idx(t[a], t[b]))
}

fn cut_vertices(img: &DigitalImage) -> Vec<usize> {
    (0..img.len())
        .filter(|&r| {
            let rest: Vec<usize> = (0..img.len()).filter(|&i| i != r).collect();
            img.components_of_indices(&rest).len() > 1
        })
        .collect()
}

fn audit_case(f: &DigitalMap, cuts: &[usize]) -> CaseOutcome {
    match is_shy(f) {
        Ok(v) if v.shy => {}
        Ok(_) => return CaseOutcome::pass().tag("not_shy"),
        Err(e) => return CaseOutcome::fail(map_witness(f, &["shy"], e.to_string())),
    }
    let mut out = CaseOutcome::pass().tag("shy");
    for &r in cuts {
        match cut_point_audit(f, f.domain().point(r)) {
            Ok(n) if n <= 2 => {
                if n == 2 {
                    out = out.tag("two_branches");
                }
            }
            Ok(n) => {
                return CaseOutcome::fail(json!({
                    "check": ["shy"],
                    "map": map_to_value(f),
                    "cut_point": f.domain().point(r).coords(),
                    "branches": n,
                    "reason": "shy map nonconstant on more than two branches",
                }))
            }
            Err(e) => return CaseOutcome::fail(map_witness(f, &["shy"], e.to_string())),
        }
    }
    out
}

pub(crate) fn cut_point(report: &mut SuiteReport, cfg: &SuiteConfig, cases: u64) -> Result<()> {
    let star = Arc::new(three_star());
    let line = Arc::new(DigitalImage::interval(-3, 3));
    let center = [0usize];
    let total = (line.len() as u64).pow(star.len() as u32);
    run_indexed(report, "star", total, |i| {
        let t = table_at(i, star.len(), line.len());
        if !table_continuous(&star, &line, &t) {
            return CaseOutcome::pass().tag("discontinuous");
        }
        let f = DigitalMap::new(star.clone(), line.clone(), t).expect("table in range");
        audit_case(&f, &center).tag("continuous")
    });
    run_random(report, "random", cfg.seed, cases, |rng| {
        let (dom, cuts) = loop {
            let (n, density) = (rng.gen_range(3..=8), rng.gen_range(0.0..0.3));
            let img = gen::random_graph(rng, n, true, density);
            let cuts = cut_vertices(&img);
            if !cuts.is_empty() {
                break (Arc::new(img), cuts);
            }
        };
        let f = gen::random_continuous_map(rng, &dom, &line, None);
        audit_case(&f, &cuts)
    });
    Ok(())
}

/// All continuous maps `C_m -> C_n`, built as step sequences in `{-1, 0, 1}`
/// that close up.
fn continuous_cycle_tables(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut t = vec![0usize; m];
    fn go(k: usize, t: &mut Vec<usize>, m: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if k == m {
            let d = (t[0] + n - t[m - 1]) % n;
            if d == 0 || d == 1 || d == n - 1 {
                out.push(t.clone());
            }
            return;
        }
        for step in [0, 1, n - 1] {
            t[k] = (t[k - 1] + step) % n;
            go(k + 1, t, m, n, out);
        }
    }
    for start in 0..n {
        t[0] = start;
        go(1, &mut t, m, n, &mut out);
    }
    out
}

/// Degree-±1 wraps `i -> s ± floor(((i + r) mod m) n / m)` for `m >= n`.
fn standard_wraps(m: usize, n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    if m < n {
        return out;
    }
    for s in 0..n {
        for r in 0..m {
            for sign in [1i64, -1] {
                let t = (0..m)
                    .map(|i| {
                        let step = (((i + r) % m) * n / m) as i64;
                        (s as i64 + sign * step).rem_euclid(n as i64) as usize
                    })
                    .collect();
                out.push((t, sign));
            }
        }
    }
    out
}

pub(crate) fn pi1_degree(report: &mut SuiteReport, cfg: &SuiteConfig) -> Result<()> {
    let max = cfg.max_cycle.unwrap_or(6).max(4);
    let limit = cfg.oracle_limit;
    for m in 4..=max {
        for n in 4..=max {
            let dom = Arc::new(DigitalImage::cycle(m));
            let cod = Arc::new(DigitalImage::cycle(n));
            let tables = continuous_cycle_tables(m, n);
            let label = format!("C{m}->C{n}");
            run_indexed(report, &label, tables.len() as u64, |i| {
                let f = DigitalMap::new(dom.clone(), cod.clone(), tables[i as usize].clone())
                    .expect("table in range");
                let check = || -> Result<CaseOutcome> {
                    let deg = degree_of_cycle_map(&f)?;
                    let shy = is_shy(&f)?.shy;
                    if shy && f.is_surjective() {
                        if deg.abs() != 1 {
                            return Ok(CaseOutcome::fail(map_witness(
                                &f,
                                &["shy", "degree"],
                                format!("shy surjection of degree {deg}"),
                            )));
                        }
                        return Ok(CaseOutcome::pass().tag("shy_surjection"));
                    }
                    Ok(CaseOutcome::pass().tag("other"))
                };
                check().unwrap_or_else(|e| CaseOutcome::fail(map_witness(&f, &["degree"], e.to_string())))
            });
            let wraps = standard_wraps(m, n);
            run_indexed(report, &format!("{label}.wraps"), wraps.len() as u64, |i| {
                let (t, sign) = &wraps[i as usize];
                let f = DigitalMap::new(dom.clone(), cod.clone(), t.clone()).expect("table in range");
                if !f.is_continuous() {
                    return CaseOutcome::fail(map_witness(&f, &["continuity"], "standard wrap is not continuous"));
                }
                let ok = degree_of_cycle_map(&f).ok() == Some(*sign)
                    && is_shy(&f).map(|v| v.shy).unwrap_or(false)
                    && shy_oracle(&f, limit).map(|v| v.shy).unwrap_or(false);
                if ok {
                    CaseOutcome::pass().tag("wrap")
                } else {
                    CaseOutcome::fail(map_witness(&f, &["shy", "degree"], "standard wrap is not a shy degree ±1 map"))
                }
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_tables_are_exactly_the_continuous_maps() {
        for (m, n) in [(4, 4), (5, 4), (4, 6)] {
            let dom = DigitalImage::cycle(m);
            let cod = DigitalImage::cycle(n);
            let brute: Vec<Vec<usize>> = (0..(n as u64).pow(m as u32))
                .map(|i| table_at(i, m, n))
                .filter(|t| table_continuous(&dom, &cod, t))
                .collect();
            let mut fast = continuous_cycle_tables(m, n);
            fast.sort();
            assert_eq!(fast, brute);
        }
    }

    #[test]
    fn star_shape() {
        let s = three_star();
        assert_eq!(s.len(), 7);
        assert_eq!(s.edge_count(), 6);
        assert_eq!(cut_vertices(&s).len(), 4);
    }
}
