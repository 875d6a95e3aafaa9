//! Command-line front end.
//!
//! Exit codes: 0 success, 1 not found or verification failed, 2 input lies on
//! a curve of the requested degree (or is otherwise out of range), 3 I/O or
//! format error, 4 enumeration budget exceeded, 5 internal anomaly.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sg_curves::curve::ordinary_count;
use sg_curves::error::{Error, Result};
use sg_curves::finder::{find_ordinary, verify_certificate};
use sg_curves::io::{
    emit_plot, generate, parse_points, read_certificate, write_certificate, write_points, GenKind, GeneratorSpec,
    Window,
};
use sg_curves::oracle::{binomial, brute_force_ordinary, Mode};
use sg_curves::param::{expected_dim_defect, param_dim, vanishing_subspace};
use sg_curves::PointSet;

#[derive(Parser)]
#[command(name = "sg-curves", version, about = "Ordinary lines, conics and cubics of planar point sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find an ordinary curve of the given degree.
    Find {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
        degree: u32,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Fail instead of falling back to brute force when cubic base
        /// selection fails.
        #[arg(long)]
        no_fallback: bool,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Enumerate subsets supporting an ordinary curve by brute force.
    Oracle {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=4))]
        degree: u32,
        #[arg(long)]
        input: PathBuf,
        /// List every supporting subset instead of the first.
        #[arg(long)]
        all: bool,
        /// Maximum number of subsets to examine.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Check a certificate against a point set.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Generate a point set.
    Gen {
        #[arg(long)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        bound: i64,
        #[arg(long)]
        on_line: Option<usize>,
        #[arg(long)]
        on_conic: Option<usize>,
        #[arg(long)]
        on_second: Option<usize>,
        #[arg(long)]
        off: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the dimension of the space of curves through the points.
    Dims {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        input: PathBuf,
    },
    /// Render the points and, optionally, a certificate's curve as SVG.
    Plot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long)]
        svg: PathBuf,
        /// Visible rectangle X0,Y0,X1,Y1 of the chart z = 1.
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Random,
    HeavyLine,
    HeavyConic,
    OnCubic,
    Grid,
    Case3b,
    Case3c,
}

impl From<KindArg> for GenKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Random => GenKind::Random,
            KindArg::HeavyLine => GenKind::HeavyLine,
            KindArg::HeavyConic => GenKind::HeavyConic,
            KindArg::OnCubic => GenKind::OnCubic,
            KindArg::Grid => GenKind::Grid,
            KindArg::Case3b => GenKind::Case3b,
            KindArg::Case3c => GenKind::Case3c,
        }
    }
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Success,
    /// Printed a negative answer; exit with this code.
    Negative(u8),
}

fn read_points(path: &Path) -> Result<PointSet> {
    parse_points(&fs::read_to_string(path)?)
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => Ok(fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Io(std::io::Error::other(e)))?;
            Ok(pool.install(f))
        }
    }
}

/// Writes a report next to the output (or in the working directory) for
/// results that must never pass silently.
fn write_report(kind: &str, output: Option<&Path>, input: &Path, points: &PointSet, detail: &str) {
    let path = match output {
        Some(o) => o.with_extension(format!("{kind}.txt")),
        None => PathBuf::from(format!("sg-curves-{kind}.txt")),
    };
    let text = format!(
        "# sg-curves {kind} report\n# input {}\n# {detail}\n{}",
        input.display(),
        write_points(points.points())
    );
    match fs::write(&path, text) {
        Ok(()) => eprintln!("{kind} report written to {}", path.display()),
        Err(e) => eprintln!("could not write {kind} report to {}: {e}", path.display()),
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Find { degree, input, output, no_fallback, threads } => {
            let points = read_points(&input)?;
            let found = with_threads(threads, || find_ordinary(points.points(), degree, !no_fallback))?;
            match found {
                Ok(cert) => {
                    emit(output.as_deref(), &write_certificate(&cert))?;
                    Ok(Outcome::Success)
                }
                Err(e @ (Error::Anomaly(_) | Error::OracleExhausted(_))) => {
                    let kind = if matches!(e, Error::Anomaly(_)) { "anomaly" } else { "counterexample" };
                    write_report(kind, output.as_deref(), &input, &points, &e.to_string());
                    Err(e)
                }
                Err(e) => Err(e),
            }
        }
        Command::Oracle { degree, input, all, budget, threads } => {
            let points = read_points(&input)?;
            let mode = if all { Mode::All } else { Mode::First };
            let found = with_threads(threads, || brute_force_ordinary(points.points(), degree, mode, budget))??;
            for (subset, curve) in &found {
                let idx: Vec<String> = subset.iter().map(ToString::to_string).collect();
                let coeffs: Vec<String> = curve.coeffs().iter().map(ToString::to_string).collect();
                println!("{} | {}", idx.join(" "), coeffs.join(" "));
            }
            if !found.is_empty() {
                return Ok(Outcome::Success);
            }
            if let Some(f) = vanishing_subspace(points.points(), degree)?.basis().first() {
                eprintln!("the input lies on the curve {} = 0; no ordinary curve is expected", f.clone().normalized()?);
                return Ok(Outcome::Negative(2));
            }
            if points.len() > ordinary_count(degree) {
                let detail = format!(
                    "no ordinary degree-{degree} curve among {} subsets",
                    binomial(points.len(), ordinary_count(degree))
                );
                eprintln!("{detail}");
                write_report("counterexample", None, &input, &points, &detail);
            }
            Ok(Outcome::Negative(1))
        }
        Command::Verify { input, cert } => {
            let points = read_points(&input)?;
            let cert = read_certificate(&fs::read_to_string(&cert)?)?;
            match verify_certificate(points.points(), &cert) {
                Ok(()) => {
                    println!("valid");
                    Ok(Outcome::Success)
                }
                Err(reason) => {
                    println!("invalid: {reason}");
                    Ok(Outcome::Negative(1))
                }
            }
        }
        Command::Gen { kind, n, seed, bound, on_line, on_conic, on_second, off, output } => {
            let spec = GeneratorSpec { kind: kind.into(), n, seed, bound, on_line, on_conic, on_second, off };
            let points = generate(&spec)?;
            emit(output.as_deref(), &write_points(points.points()))?;
            Ok(Outcome::Success)
        }
        Command::Dims { degree, input } => {
            let points = read_points(&input)?;
            println!("param_dim {}", param_dim(points.points(), degree)?);
            if points.len() <= 2 * degree as usize + 2 {
                let d = expected_dim_defect(points.points(), degree)?;
                println!("expected {}", d.expected);
                println!("defect {}", d.defect);
                match d.explanation {
                    Some(reason) => println!("explanation {reason}"),
                    None => println!("explanation -"),
                }
            }
            Ok(Outcome::Success)
        }
        Command::Plot { input, cert, svg, window } => {
            let points = read_points(&input)?;
            let window: Window = window.parse()?;
            let cert = cert.map(|c| fs::read_to_string(c).map_err(Error::from).and_then(|t| read_certificate(&t)));
            let cert = cert.transpose()?;
            fs::write(svg, emit_plot(points.points(), cert.as_ref(), window))?;
            Ok(Outcome::Success)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Negative(code)) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
