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

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use shylab::io::{
    image_from_json, image_to_value, interval_to_value, map_from_value, map_to_value, pl_from_value,
    pl_verdict_to_value, shy_verdict_to_value,
};
use shylab::khalimsky::q_fiber;
use shylab::maps::is_shy as decide_shy;
use shylab::pl::is_shy_interval_to_circle;
use shylab::rational::parse_rational;
use shylab::report::REPORT_SCHEMA;
use shylab::{
    compose, degree_of_cycle_map, product_images, product_map, q_value, run_suite, shy_oracle, vee_map, wedge,
    AngleMap, DigitalImage, DigitalMap, LatticePoint, ShyError, SuiteConfig, SuiteName, DEFAULT_ENUMERATION_LIMIT,
};

const ORACLE_ENV: &str = "SHYLAB_MAX_ORACLE";

#[derive(Parser)]
#[command(name = "shylab", version, about = "Continuity and shyness checks for digital and PL maps")]
struct Cli {
    /// Print a machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Enumeration limit for the brute-force oracles (overrides SHYLAB_MAX_ORACLE).
    #[arg(long, global = true, value_name = "N")]
    max_size: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a property of a map or PL function read from a JSON file.
    #[command(subcommand)]
    Check(Check),
    /// The quotient map from the real line onto the Khalimsky line.
    #[command(subcommand)]
    Khalimsky(Khalimsky),
    /// Build wedges, products and composites; prints JSON.
    #[command(subcommand)]
    Construct(Construct),
    /// Run a named theorem suite.
    Suite(SuiteArgs),
}

#[derive(Subcommand)]
enum Check {
    /// Adjacent points go to equal or adjacent points.
    Continuity { file: PathBuf },
    /// Shyness by the local fiber and adjacent-pair test.
    Shy { file: PathBuf },
    /// Shyness by enumerating every connected subset of the image.
    OracleShy { file: PathBuf },
    /// Monotonicity of a PL function on an interval.
    Monotone { file: PathBuf },
    /// Shyness of a PL function; `"units": "turns"` reads it as an angle map into the circle.
    ShyPl { file: PathBuf },
    /// Winding degree of a map between digital cycles.
    Degree { file: PathBuf },
}

#[derive(Subcommand)]
enum Khalimsky {
    /// Image of a rational under q, with its fiber.
    Q {
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// Check every Khalimsky interval (or box) in a window.
    Verify {
        #[arg(long, default_value_t = 50)]
        window: u32,
        #[arg(long)]
        dim: Option<usize>,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// Wedge of two images, or of two pointed maps, at the given basepoints.
    Wedge {
        left: PathBuf,
        right: PathBuf,
        /// Left basepoint as comma-separated coordinates; defaults to the first point.
        #[arg(long, allow_hyphen_values = true)]
        left_base: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        right_base: Option<String>,
    },
    /// Strong product of images, or product of maps.
    Product {
        #[arg(num_args = 2.., required = true)]
        files: Vec<PathBuf>,
    },
    /// `g ∘ f`.
    Compose { f: PathBuf, g: PathBuf },
}

#[derive(Args)]
struct SuiteArgs {
    name: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    cases: Option<u64>,
    /// Add the larger exhaustive sweeps where a suite has them.
    #[arg(long)]
    exhaustive: bool,
    #[arg(long)]
    window: Option<u32>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    max_cycle: Option<usize>,
}

/// Input problems; all map to exit status 2.
struct InputError(String);

impl From<ShyError> for InputError {
    fn from(e: ShyError) -> Self {
        InputError(e.to_string())
    }
}

struct Outcome {
    ok: bool,
    text: String,
    report: Value,
}

fn read_value(path: &Path) -> Result<Value, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Suite witnesses wrap the object under test; unwrap them so they replay.
fn unwrap_witness<'a>(v: &'a Value, key: &str) -> &'a Value {
    v.get(key).filter(|_| v.get("check").is_some()).unwrap_or(v)
}

fn read_map(path: &Path) -> Result<DigitalMap, InputError> {
    let v = read_value(path)?;
    Ok(map_from_value(unwrap_witness(&v, "map"))?)
}

fn read_pl(path: &Path) -> Result<(Value, shylab::PLFunction), InputError> {
    let v = read_value(path)?;
    let inner = unwrap_witness(&v, "pl").clone();
    let f = pl_from_value(&inner)?;
    Ok((inner, f))
}

fn oracle_limit(cli: &Cli) -> Result<usize, InputError> {
    if let Some(n) = cli.max_size {
        return Ok(n);
    }
    match std::env::var(ORACLE_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| InputError(format!("{ORACLE_ENV} must be a positive integer, got `{s}`"))),
        Err(_) => Ok(DEFAULT_ENUMERATION_LIMIT),
    }
}

fn parse_point(text: &str) -> Result<LatticePoint, InputError> {
    text.split(',')
        .map(|c| c.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map(LatticePoint)
        .map_err(|_| InputError(format!("bad point `{text}`, expected comma-separated integers")))
}

fn join_points(points: &[&LatticePoint]) -> String {
    let parts: Vec<String> = points.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn shy_outcome(command: &str, f: &DigitalMap, verdict: shylab::ShyVerdict) -> Outcome {
    let text = match &verdict.witness {
        None => "shy".to_string(),
        Some(w) => format!(
            "not shy: preimage of connected {} is disconnected {}",
            join_points(&w.subset_points(f)),
            join_points(&w.preimage_points(f)),
        ),
    };
    let mut report = shy_verdict_to_value(f, &verdict);
    report["command"] = json!(command);
    Outcome {
        ok: verdict.shy,
        text,
        report,
    }
}

fn check(cli: &Cli, what: &Check) -> Result<Outcome, InputError> {
    Ok(match what {
        Check::Continuity { file } => {
            let f = read_map(file)?;
            let broken = f.first_broken_edge();
            let text = match broken {
                None => "continuous".to_string(),
                Some((a, b)) => format!(
                    "not continuous: {} ~ {} but {} and {} are neither equal nor adjacent",
                    f.domain().point(a),
                    f.domain().point(b),
                    f.codomain().point(f.apply(a)),
                    f.codomain().point(f.apply(b)),
                ),
            };
            let edge = broken.map(|(a, b)| json!([f.domain().point(a).coords(), f.domain().point(b).coords()]));
            Outcome {
                ok: broken.is_none(),
                text,
                report: json!({"command": "continuity", "continuous": broken.is_none(), "broken_edge": edge}),
            }
        }
        Check::Shy { file } => {
            let f = read_map(file)?;
            let v = decide_shy(&f)?;
            shy_outcome("shy", &f, v)
        }
        Check::OracleShy { file } => {
            let f = read_map(file)?;
            let v = shy_oracle(&f, oracle_limit(cli)?)?;
            shy_outcome("oracle-shy", &f, v)
        }
        Check::Monotone { file } => {
            let (_, f) = read_pl(file)?;
            let m = f.is_monotone()?;
            Outcome {
                ok: m,
                text: if m { "monotone" } else { "not monotone" }.to_string(),
                report: json!({"command": "monotone", "monotone": m}),
            }
        }
        Check::ShyPl { file } => {
            let (raw, f) = read_pl(file)?;
            if raw.get("units").is_some() {
                let m = AngleMap::new(f)?;
                let shy = is_shy_interval_to_circle(&m)?;
                Outcome {
                    ok: shy,
                    text: if shy { "shy" } else { "not shy" }.to_string(),
                    report: json!({"command": "shy-pl", "shy": shy, "witness": null}),
                }
            } else {
                let v = if f.is_circular() {
                    f.circle_shy_verdict()?
                } else {
                    f.shy_verdict()?
                };
                let text = match &v.witness {
                    None => "shy".to_string(),
                    Some(w) => format!("not shy: preimage of {} is {}", w.interval, w.preimage),
                };
                let mut report = pl_verdict_to_value(&v);
                report["command"] = json!("shy-pl");
                Outcome {
                    ok: v.shy,
                    text,
                    report,
                }
            }
        }
        Check::Degree { file } => {
            let f = read_map(file)?;
            let d = degree_of_cycle_map(&f)?;
            Outcome {
                ok: true,
                text: format!("degree {d}"),
                report: json!({"command": "degree", "degree": d}),
            }
        }
    })
}

fn suite_config(cli: &Cli, args: &SuiteArgs) -> Result<SuiteConfig, InputError> {
    Ok(SuiteConfig {
        seed: args.seed,
        cases: args.cases,
        exhaustive: args.exhaustive,
        oracle_limit: oracle_limit(cli)?,
        window: args.window,
        dim: args.dim,
        max_cycle: args.max_cycle,
    })
}

fn suite_outcome(name: SuiteName, cfg: &SuiteConfig) -> Result<Outcome, InputError> {
    let report = run_suite(name, cfg)?;
    let mut text = report.summary_line();
    if let Some(w) = &report.witness {
        text.push_str(&format!("\nfirst witness: {w}"));
    }
    Ok(Outcome {
        ok: report.passed(),
        text,
        report: serde_json::to_value(&report).expect("report serializes"),
    })
}

fn khalimsky(cli: &Cli, what: &Khalimsky) -> Result<Outcome, InputError> {
    match what {
        Khalimsky::Q { value } => {
            let x = parse_rational(value)?;
            let z = q_value(&x);
            let fiber = i64::try_from(&z).ok().map(q_fiber);
            let text = match &fiber {
                Some(fib) => format!("q({x}) = {z}, fiber {fib}"),
                None => format!("q({x}) = {z}"),
            };
            Ok(Outcome {
                ok: true,
                text,
                report: json!({
                    "command": "khalimsky-q",
                    "x": x.to_string(),
                    "q": z.to_string(),
                    "fiber": fiber.as_ref().map(interval_to_value),
                }),
            })
        }
        Khalimsky::Verify { window, dim } => {
            let cfg = SuiteConfig {
                window: Some(*window),
                dim: *dim,
                oracle_limit: oracle_limit(cli)?,
                ..SuiteConfig::default()
            };
            suite_outcome(SuiteName::KhalimskyQ, &cfg)
        }
    }
}

fn is_map(v: &Value) -> bool {
    v.get("table").is_some()
}

fn base_point(spec: &Option<String>, img: &DigitalImage) -> Result<LatticePoint, InputError> {
    match spec {
        Some(s) => parse_point(s),
        None => img
            .points()
            .first()
            .cloned()
            .ok_or_else(|| InputError("cannot wedge an empty image".into())),
    }
}

fn construct(what: &Construct) -> Result<Outcome, InputError> {
    let built = match what {
        Construct::Wedge {
            left,
            right,
            left_base,
            right_base,
        } => {
            let (l, r) = (read_value(left)?, read_value(right)?);
            if is_map(&l) && is_map(&r) {
                let (f, g) = (map_from_value(&l)?, map_from_value(&r)?);
                let a = base_point(left_base, f.domain())?;
                let b = base_point(right_base, g.domain())?;
                let fa = f.apply_point(&a)?.clone();
                let gb = g.apply_point(&b)?.clone();
                let w = wedge(f.domain().clone(), &a, g.domain().clone(), &b)?;
                let w2 = wedge(f.codomain().clone(), &fa, g.codomain().clone(), &gb)?;
                map_to_value(&vee_map(&f, &g, &w, &w2)?)
            } else {
                let x = Arc::new(image_from_json(&l.to_string())?);
                let y = Arc::new(image_from_json(&r.to_string())?);
                let a = base_point(left_base, &x)?;
                let b = base_point(right_base, &y)?;
                image_to_value(wedge(x, &a, y, &b)?.image())
            }
        }
        Construct::Product { files } => {
            let values = files.iter().map(|p| read_value(p)).collect::<Result<Vec<_>, _>>()?;
            if values.iter().all(is_map) {
                let maps = values.iter().map(map_from_value).collect::<Result<Vec<_>, _>>()?;
                map_to_value(&product_map(&maps.iter().collect::<Vec<_>>())?)
            } else {
                let imgs = values
                    .iter()
                    .map(|v| image_from_json(&v.to_string()))
                    .collect::<Result<Vec<_>, _>>()?;
                image_to_value(&product_images(&imgs.iter().collect::<Vec<_>>())?)
            }
        }
        Construct::Compose { f, g } => map_to_value(&compose(&read_map(f)?, &read_map(g)?)?),
    };
    Ok(Outcome {
        ok: true,
        text: serde_json::to_string_pretty(&built).expect("json serializes"),
        report: built,
    })
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Check(what) => check(cli, what),
        Command::Khalimsky(what) => khalimsky(cli, what),
        Command::Construct(what) => construct(what),
        Command::Suite(args) => {
            let name: SuiteName = args.name.parse()?;
            suite_outcome(name, &suite_config(cli, args)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                let mut report = out.report;
                if let (Value::Object(m), false) = (&mut report, matches!(cli.command, Command::Construct(_))) {
                    m.entry("schema").or_insert(json!(REPORT_SCHEMA));
                }
                println!("{report}");
            } else {
                println!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
