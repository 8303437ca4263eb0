//! `jacobikit`: run check suites from structure files.

mod load;
mod run;
mod schema;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use jacobikit::tensor::{Alternating, Variance};
use jacobikit::{Jacobi, Rational};
use serde::Serialize;
use serde_json::{json, Value};

use run::Record;

#[derive(Parser)]
#[command(name = "jacobikit", version, about = "Exact checks for Jacobi, Poisson and Nijenhuis structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks of a structure file and write a JSON report.
    Check {
        file: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Bound on k for the torsion and hierarchy conditions.
        #[arg(long, default_value_t = jacobikit::jacobi::DEFAULT_KMAX)]
        kmax: u32,
        /// Worker threads (defaults to the number of cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Leave `timing_ms` empty so that reports are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
    /// Echo every declared object in canonical form.
    Print { file: PathBuf },
}

#[derive(Serialize)]
struct Summary {
    pass: usize,
    fail: usize,
    error: usize,
}

#[derive(Serialize)]
struct Report<'a> {
    checks: &'a [Record],
    timing_ms: BTreeMap<String, u128>,
    summary: Summary,
}

fn keyed<V: Variance>(a: &Alternating<Rational, V>) -> Value {
    let map: serde_json::Map<String, Value> = a
        .nonzero_components()
        .map(|(idx, s)| {
            let key = idx.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
            (format!("({key})"), Value::String(s.to_string()))
        })
        .collect();
    json!({ "degree": a.degree(), "components": map })
}

fn pair_json(p: &Jacobi) -> Value {
    json!({ "lambda": keyed(p.lambda()), "E": keyed(p.e()) })
}

fn rows(j: &jacobikit::Endomorphism) -> Value {
    Value::Array(j.rows().iter().map(|r| Value::Array(r.iter().map(|s| Value::String(s.to_string())).collect())).collect())
}

fn canonical(ws: &load::Workspace) -> Value {
    let map = |it: Box<dyn Iterator<Item = (String, Value)> + '_>| Value::Object(it.collect());
    json!({
        "chart": ws.chart.names(),
        "scalars": map(Box::new(ws.scalars.iter().map(|(k, v)| (k.clone(), Value::String(v.to_string()))))),
        "vectors": map(Box::new(ws.vectors.iter().map(|(k, v)| (k.clone(), keyed(v))))),
        "bivectors": map(Box::new(ws.bivectors.iter().map(|(k, v)| (k.clone(), keyed(v))))),
        "forms": map(Box::new(ws.forms.iter().map(|(k, v)| (k.clone(), keyed(v))))),
        "endomorphisms": map(Box::new(ws.endomorphisms.iter().map(|(k, v)| (k.clone(), json!({ "rows": rows(v) }))))),
        "pairs": map(Box::new(ws.pairs.iter().map(|(k, v)| (k.clone(), pair_json(v))))),
        "recursion_operators": map(Box::new(ws.recursion_operators.iter().map(|(k, r)| {
            (k.clone(), json!({
                "J": rows(r.j()),
                "X0": keyed(r.x0()),
                "alpha0": keyed(r.alpha0()),
                "phi0": r.phi0().to_string(),
            }))
        }))),
        "checks": ws.checks.iter().map(|c| json!({ "name": c.name, "operation": c.op.label() })).collect::<Vec<_>>(),
    })
}

fn write_out(out: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Print { file } => match load::load(&file) {
            Ok(ws) => {
                let text = serde_json::to_string_pretty(&canonical(&ws)).expect("serializable") + "\n";
                print!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Check { file, out, kmax, jobs, no_timing } => {
            let ws = match load::load(&file) {
                Ok(ws) => ws,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let (records, elapsed) = run::run_all(&ws.checks, kmax, jobs);
            let count = |s: &str| records.iter().filter(|r| r.status == s).count();
            let summary = Summary { pass: count("pass"), fail: count("fail"), error: count("error") };
            let timing_ms = if no_timing {
                BTreeMap::new()
            } else {
                records.iter().zip(&elapsed).map(|(r, ms)| (r.name.clone(), *ms)).collect()
            };
            let all_pass = summary.fail == 0 && summary.error == 0;
            let report = Report { checks: &records, timing_ms, summary };
            let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
            if let Err(e) = write_out(out.as_ref(), &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
