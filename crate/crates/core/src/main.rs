use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use tccc::divisors::{DivisorData, DivisorSpec};
use tccc::error::{Result, TcccError};
use tccc::harness::{run_suite, SuiteConfig};
use tccc::lattice_fan::{Fan, RationalVector};
use tccc::linalg::{format_rational, parse_rational};
use tccc::render::render_svg;
use tccc::twisted_sheaf::{stalk_p, torus_hom};

#[derive(Parser)]
#[command(name = "tccc", about = "Twisted polytope sheaves on toric fans")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fan checks.
    Fan {
        #[command(subcommand)]
        cmd: FanCmd,
    },
    /// Stalks and homs of twisted polytope sheaves.
    Sheaf {
        #[command(subcommand)]
        cmd: SheafCmd,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long)]
        range: Option<i64>,
        #[arg(long)]
        denom: Option<i64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        fan: Option<String>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Draw a 2-d twisted polytope sheaf.
    Render {
        #[arg(long)]
        fan: String,
        #[arg(long)]
        chi: String,
        #[arg(short = 'o', long = "out")]
        out: String,
    },
}

#[derive(Subcommand)]
enum FanCmd {
    Validate { fan: String },
}

#[derive(Subcommand)]
enum SheafCmd {
    Stalk {
        #[arg(long)]
        fan: String,
        #[arg(long)]
        chi: String,
        /// Comma-separated coordinates, or several points split by `;`.
        #[arg(long)]
        point: String,
    },
    Hom {
        #[arg(long)]
        fan: String,
        #[arg(long)]
        d1: String,
        #[arg(long)]
        d2: String,
    },
}

/// A divisor given as a JSON list of coefficients, a divisor object, or a
/// path to a file holding either.
fn parse_divisor(fan: &Arc<Fan>, text: &str) -> Result<DivisorData> {
    let raw = if std::path::Path::new(text).is_file() { std::fs::read_to_string(text)? } else { text.to_string() };
    let v: Value = serde_json::from_str(&raw)?;
    match v {
        Value::Array(items) => {
            let coeffs = items
                .iter()
                .map(|c| match c {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) => parse_rational(&n.to_string()),
                    other => Err(TcccError::Input(format!("bad coefficient {other}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if coeffs.len() != fan.num_rays() {
                return Err(TcccError::Input(format!("{} coefficients for {} rays", coeffs.len(), fan.num_rays())));
            }
            DivisorData::from_coeffs(fan, coeffs)
        }
        obj @ Value::Object(_) => {
            let spec: DivisorSpec = serde_json::from_value(obj)?;
            spec.to_divisor(fan)
        }
        other => Err(TcccError::Input(format!("expected a divisor, got {other}"))),
    }
}

fn parse_point(n: usize, text: &str) -> Result<RationalVector> {
    let xs = text.split(',').map(|t| parse_rational(t.trim())).collect::<Result<Vec<_>>>()?;
    if xs.len() != n {
        return Err(TcccError::Input(format!("point {text:?} has {} coordinates, fan has dim {n}", xs.len())));
    }
    Ok(RationalVector(xs))
}

fn load_fan(name: &str) -> Result<Arc<Fan>> {
    Ok(Arc::new(Fan::load(name)?))
}

fn print(v: &Value) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(v).expect("json"));
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Fan { cmd: FanCmd::Validate { fan } } => {
            let f = load_fan(&fan)?;
            let smooth = f.is_smooth();
            let complete = f.is_complete();
            let counts: Vec<usize> = (0..=f.dim()).map(|k| f.cones_of_dim(k).len()).collect();
            print(&json!({
                "fan": f.name, "dim": f.dim(), "cone_counts": counts,
                "smooth": smooth, "complete": complete,
            }));
            Ok(smooth && complete)
        }
        Cmd::Sheaf { cmd: SheafCmd::Stalk { fan, chi, point } } => {
            let f = load_fan(&fan)?;
            let d = parse_divisor(&f, &chi)?;
            let reports = point
                .split(';')
                .map(|p| {
                    let x = parse_point(f.dim(), p)?;
                    let g = stalk_p(&d, &x);
                    Ok(json!({"point": x.0.iter().map(format_rational).collect::<Vec<_>>(), "graded_dims": g}))
                })
                .collect::<Result<Vec<_>>>()?;
            print(&json!({"fan": f.name, "coeffs": d.coeff_strings(), "stalks": reports}));
            Ok(true)
        }
        Cmd::Sheaf { cmd: SheafCmd::Hom { fan, d1, d2 } } => {
            let f = load_fan(&fan)?;
            let (a, b) = (parse_divisor(&f, &d1)?, parse_divisor(&f, &d2)?);
            let h = torus_hom(&a, &b)?;
            print(&json!({"fan": f.name, "d1": a.coeff_strings(), "d2": b.coeff_strings(), "graded_dims": h}));
            Ok(true)
        }
        Cmd::Verify { suite, range, denom, seed, fan, samples } => {
            let cfg = SuiteConfig { fan, range, denom, seed, samples };
            let r = run_suite(&suite, &cfg)?;
            print(&serde_json::to_value(&r)?);
            Ok(r.ok())
        }
        Cmd::Render { fan, chi, out } => {
            let f = load_fan(&fan)?;
            let d = parse_divisor(&f, &chi)?;
            std::fs::write(&out, render_svg(&d)?)?;
            print(&json!({"fan": f.name, "coeffs": d.coeff_strings(), "svg": out}));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", json!({"error": e.to_string()}));
            ExitCode::from(match e {
                TcccError::Internal(_) => 1,
                _ => 2,
            })
        }
    }
}
