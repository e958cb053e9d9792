//! `revmahler` command-line front end.
//!
//! Every subcommand writes JSON (or CSV for `sweep`) to `--out` or stdout. The exit code is 0
//! when nothing was violated, 1 when a check failed, and 2 on bad input.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use revmahler::harness::{golden_check, run_sweep, Mode, SweepConfig};
use revmahler::io as formats;
use revmahler::lemma::verify_sign_claims;
use revmahler::mahler::{cone_bound, domain_product};
use revmahler::reduction::{audit_certificate, normalize_polygon, reduce_to_terminal};
use revmahler::{
    mahler_product, mahler_product_psh, santalo_axis_search, AxisProfile, BodyOfRevolution, GeneratingFunction,
    UnconditionalPolygon,
};
use serde::Serialize;
use serde_json::{json, Value};

/// Slack below zero tolerated before a product counts as a violation.
const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "revmahler", version, about = "Mahler volumes of bodies of revolution")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Files {
    /// Input JSON file, `-` for stdin.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Output file; stdout when absent.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Out {
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Volume of the body generated by a profile or a chain.
    Volume(Files),
    /// Polar of a chain or a generator; with --directions, the slice/projection check too.
    Polar {
        #[command(flatten)]
        io: Files,
        /// JSON {"directions": [[x, y, z], ...]}.
        #[arg(long, value_name = "FILE")]
        directions: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-7)]
        tolerance: f64,
    },
    /// Conjugate generating function; analytic profiles are sampled.
    Conjugate {
        #[command(flatten)]
        io: Files,
        /// Pieces used when writing a sampled conjugate.
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Mahler product of a body of revolution.
    Mahler {
        #[command(flatten)]
        io: Files,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Mahler product of a parallel-sections body.
    Psh {
        #[command(flatten)]
        io: Files,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Santaló point search along the axis; the unit cone when --in is absent.
    SantaloCone {
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Grid verification of the sign claims.
    VerifyLemma {
        #[arg(long, default_value_t = 100)]
        grid: usize,
        #[arg(long, default_value_t = 0.0)]
        tolerance: f64,
        #[command(flatten)]
        out: Out,
    },
    /// Reduction certificate for a chain; the chain is first scaled to D = (-1, 0), B = (0, 1).
    Reduce(Files),
    /// Seeded random sweep; writes CSV to --out and a JSON summary to --summary or stdout.
    Sweep {
        #[arg(long, default_value = "revolution", value_parser = parse_mode)]
        mode: Mode,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 12)]
        max_vertices: usize,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        summary: Option<PathBuf>,
    },
    /// Golden constants.
    Golden(Out),
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    Mode::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Mode::ALL.iter().map(|m| m.name()).collect();
        format!("unknown mode `{s}`; expected one of {}", names.join(", "))
    })
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn parse_file(path: &Path) -> Result<Value> {
    let text = read_input(path)?;
    formats::parse(&text).with_context(|| path.display().to_string())
}

fn emit(out: Option<&Path>, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}

/// A body file holds either a chain or a generator.
enum Body {
    Chain(UnconditionalPolygon),
    Generator(GeneratingFunction),
}

impl Body {
    fn read(path: &Path) -> Result<Self> {
        let v = parse_file(path)?;
        let body = if v.get("chain").is_some() {
            Body::Chain(formats::polygon_from_value(&v, "")?)
        } else {
            Body::Generator(formats::generator_from_value(&v, "")?)
        };
        Ok(body)
    }

    fn generator(self) -> Result<GeneratingFunction> {
        Ok(match self {
            Body::Chain(p) => GeneratingFunction::from_domain(&p)?,
            Body::Generator(g) => g,
        })
    }
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Volume(files) => {
            let g = Body::read(&files.input)?.generator()?;
            let body = BodyOfRevolution::new(g);
            let half_width = body.generator().half_width();
            emit(files.out.as_deref(), &json!({ "volume": body.volume(), "halfWidth": half_width }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Polar { io: files, directions, tolerance } => {
            let body = Body::read(&files.input)?;
            let g = match &body {
                Body::Chain(p) => {
                    let polar = p.polar()?;
                    if directions.is_none() {
                        emit(files.out.as_deref(), &formats::polygon_to_value(&polar))?;
                        return Ok(ExitCode::SUCCESS);
                    }
                    GeneratingFunction::from_domain(p)?
                }
                Body::Generator(g) => g.clone(),
            };
            let Some(dir_path) = directions else {
                emit(files.out.as_deref(), &formats::generator_to_value(&g.conjugate()?, 256))?;
                return Ok(ExitCode::SUCCESS);
            };
            let dirs =
                formats::read_directions(&read_input(&dir_path)?).with_context(|| dir_path.display().to_string())?;
            let report = BodyOfRevolution::new(g).slice_projection_duality(&dirs)?;
            emit(files.out.as_deref(), &report)?;
            Ok(status(report.max_deviation <= tolerance))
        }
        Command::Conjugate { io: files, samples } => {
            let g = Body::read(&files.input)?.generator()?;
            emit(files.out.as_deref(), &formats::generator_to_value(&g.conjugate()?, samples))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Mahler { io: files, tolerance } => {
            let g = Body::read(&files.input)?.generator()?;
            let report = mahler_product(&BodyOfRevolution::new(g))?;
            emit(files.out.as_deref(), &report)?;
            Ok(status(report.slack >= -tolerance))
        }
        Command::Psh { io: files, tolerance } => {
            let body = formats::psh_from_value(&parse_file(&files.input)?)?;
            let report = mahler_product_psh(&body)?;
            emit(files.out.as_deref(), &report)?;
            Ok(status(report.slack >= -tolerance))
        }
        Command::SantaloCone { input, out, tolerance } => {
            let profile = match input {
                Some(p) => formats::axis_profile_from_value(&parse_file(&p)?)?,
                None => AxisProfile::cone(),
            };
            let r = santalo_axis_search(&profile)?;
            let slack = r.best_product - cone_bound();
            emit(out.out.as_deref(), &json!({ "search": r, "bound": cone_bound(), "slack": slack }))?;
            Ok(status(slack >= -tolerance))
        }
        Command::VerifyLemma { grid, tolerance, out } => {
            let report = verify_sign_claims(grid, tolerance)?;
            emit(out.out.as_deref(), &report)?;
            Ok(status(report.total_violations == 0))
        }
        Command::Reduce(files) => {
            let p = formats::polygon_from_value(&parse_file(&files.input)?, "")?;
            let normalized = normalize_polygon(&p)?;
            let cert = reduce_to_terminal(&normalized)?;
            let audit = audit_certificate(&cert);
            let scaled = !normalized.approx_eq(&p, 0.0);
            let product = domain_product(&p)?;
            emit(
                files.out.as_deref(),
                &json!({ "inputProduct": product, "normalized": scaled, "certificate": cert, "audit": audit }),
            )?;
            Ok(status(audit.passed()))
        }
        Command::Sweep { mode, seed, samples, max_vertices, jobs, out, summary } => {
            let cfg = SweepConfig { samples, max_vertices, seed, mode, out_path: out, jobs };
            cfg.validate()?;
            let s = run_sweep(&cfg)?;
            emit(summary.as_deref(), &s)?;
            Ok(status(s.violations == 0))
        }
        Command::Golden(out) => {
            let r = golden_check()?;
            emit(out.out.as_deref(), &r)?;
            Ok(status(r.all_passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn modes_parse() {
        assert_eq!(parse_mode("psh").unwrap(), Mode::Psh);
        assert!(parse_mode("torus").unwrap_err().contains("revolution"));
    }
}
