use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use synectic::bundle::{BundleConnection, BundleFrame, TangentPoint};
use synectic::catalog;
use synectic::report::{emit_report, Format};
use synectic::runner::{self, load_model, RunConfig};
use synectic::theorems::Check;

#[derive(Parser)]
#[command(name = "synectic", version, about = "Verify lift theorems for the synectic metric on tangent bundles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification checks on a model.
    Verify {
        /// Built-in model name or path to a model file.
        #[arg(long)]
        manifold: String,
        /// Restrict to these fields or tensors (repeatable).
        #[arg(long = "field")]
        fields: Vec<String>,
        /// Check ids to run (repeatable); see `synectic list`.
        #[arg(long = "check")]
        checks: Vec<String>,
        /// Run every check.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Override every check's tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a component block at one tangent point.
    Tensor {
        #[arg(long)]
        manifold: String,
        #[arg(long, value_enum)]
        what: What,
        /// Point as `x=x1,x2,...,y=y1,y2,...`.
        #[arg(long)]
        at: String,
    },
    /// List built-in models, their fields and the check ids.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Metric,
    Inverse,
    Gamma3,
    Gamma4,
    #[value(name = "H")]
    H,
    Riemann,
}

fn parse_point(text: &str, n: usize) -> Result<TangentPoint, String> {
    let bad = || format!("cannot parse point `{text}`; expected x=...,y=...");
    let rest = text.trim().strip_prefix("x=").ok_or_else(bad)?;
    let (xs, ys) = rest.split_once(",y=").ok_or_else(bad)?;
    let nums = |s: &str| -> Result<Vec<f64>, String> {
        s.split(',').map(|v| v.trim().parse::<f64>().map_err(|_| bad())).collect()
    };
    let (x, y) = (nums(xs)?, nums(ys)?);
    if x.len() != n || y.len() != n {
        return Err(format!("point needs {n} base and {n} fiber coordinates"));
    }
    Ok(TangentPoint::new(x, y))
}

/// Bundle index label: `3` for base index 3, `3'` for barred 3 (1-based).
fn label(a: usize, n: usize) -> String {
    if a < n {
        format!("{}", a + 1)
    } else {
        format!("{}'", a - n + 1)
    }
}

fn matrix_text(data: &[f64], rows: usize) -> String {
    data.chunks(rows)
        .map(|r| r.iter().map(|v| format!("{v:>14.6e}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn connection_text(conn: &BundleConnection) -> String {
    let m = 2 * conn.n;
    let mut lines = Vec::new();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let v = conn.coeff(a, b, c);
                if v != 0.0 {
                    lines.push(format!(
                        "Γ^{}_{} {} = {v:.12e}",
                        label(a, conn.n),
                        label(b, conn.n),
                        label(c, conn.n)
                    ));
                }
            }
        }
    }
    if lines.is_empty() {
        "all coefficients vanish".into()
    } else {
        lines.join("\n")
    }
}

fn base_text(name: &str, data: &[f64], n: usize, rank: usize) -> String {
    let mut lines = Vec::new();
    for (flat, v) in data.iter().enumerate() {
        if *v == 0.0 {
            continue;
        }
        let mut idx = vec![0; rank];
        let mut rest = flat;
        for slot in (0..rank).rev() {
            idx[slot] = rest % n + 1;
            rest /= n;
        }
        let idx: Vec<String> = idx.iter().map(usize::to_string).collect();
        lines.push(format!("{name}[{}] = {v:.12e}", idx.join(",")));
    }
    if lines.is_empty() {
        "all components vanish".into()
    } else {
        lines.join("\n")
    }
}

fn tensor(manifold: &str, what: What, at: &str) -> Result<String, (u8, String)> {
    let (model, _) = load_model(manifold).map_err(|e| (2, e.to_string()))?;
    let p = parse_point(at, model.dim).map_err(|e| (2, e))?;
    let frame = BundleFrame::new(&model, &p).map_err(|e| (1, e.to_string()))?;
    let n = model.dim;
    Ok(match what {
        What::Metric => matrix_text(frame.metric().data(), 2 * n),
        What::Inverse => matrix_text(frame.metric_inverse().data(), 2 * n),
        What::Gamma3 => connection_text(&frame.levi_civita()),
        What::Gamma4 => connection_text(&frame.metric_connection()),
        // H[k,j,i] = Hᵏ_ji, R[k,j,i,h] = R_kjiʰ
        What::H => base_text("H", &frame.geo.h, n, 3),
        What::Riemann => base_text("R", &frame.geo.riemann, n, 4),
    })
}

fn list() -> String {
    let mut out = String::from("models:\n");
    for name in catalog::BUILTIN_NAMES {
        let m = catalog::builtin(name).expect("listed");
        let keys = |it: Vec<&String>| it.into_iter().cloned().collect::<Vec<_>>().join(", ");
        out.push_str(&format!("  {name}\n"));
        out.push_str(&format!("    fields:   {}\n", keys(m.vector_fields.keys().collect())));
        out.push_str(&format!("    oneforms: {}\n", keys(m.one_forms.keys().collect())));
        out.push_str(&format!("    tensors:  {}\n", keys(m.tensors11.keys().collect())));
    }
    out.push_str("checks:\n");
    for c in Check::ALL {
        out.push_str(&format!("  {}\n", c.id()));
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            manifold,
            fields,
            checks,
            all,
            samples,
            seed,
            tol,
            format,
            out,
        } => {
            let config = RunConfig {
                manifold,
                fields,
                checks,
                all,
                samples,
                seed,
                tol,
                format,
                out,
            };
            let outcome = match runner::run(&config) {
                Ok(o) => o,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let text = emit_report(&outcome.report, config.format);
            match &config.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            for p in &outcome.problems {
                eprintln!("mismatch: {p}");
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Command::Tensor { manifold, what, at } => match tensor(&manifold, what, &at) {
            Ok(text) => {
                println!("{text}");
                ExitCode::SUCCESS
            }
            Err((code, msg)) => {
                eprintln!("error: {msg}");
                ExitCode::from(code)
            }
        },
        Command::List => {
            print!("{}", list());
            ExitCode::SUCCESS
        }
    }
}
