//! `chmoduli`: JSON in, JSON out front-end for `chmoduli-core`.
//!
//! Exit status is 0 on success, 1 when the computation itself fails and 2
//! when the input cannot be read or parsed. Failures print
//! `{"error": <code>, "detail": <message>}` on stdout.

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use chmoduli_core::moduli::minimal_dimension;
use chmoduli_core::sampling::{seeded_rng, QuadrupleKind};
use chmoduli_core::{
    certify_noninjectivity, classify, congruent_antiholomorphic, congruent_holomorphic, gram_of,
    membership, normalize, pp_point, random_quadruple, reconstruct, tau, variety_residual,
    BoundaryPoint, ClassificationReport, Complex64, HermitianVector, Membership, ModuliPoint,
    NormalizedGram, NumericConfig, PPPoint, Quadruple,
};
use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(
    name = "chmoduli",
    version,
    about = "Moduli of boundary quadruples in complex hyperbolic space"
)]
struct Cli {
    /// Absolute and relative tolerance for every numerical predicate.
    #[arg(long, global = true, allow_negative_numbers = true)]
    tol: Option<f64>,

    /// Read input from this file instead of stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quadruple -> moduli point, cross-ratios, classification and normal form.
    Invariants,
    /// {"lifts": [4 null vectors]} -> normalized Gram matrix.
    Normalize,
    /// Moduli point -> quadruple in the boundary of CH^n.
    Reconstruct {
        #[arg(long)]
        n: usize,
    },
    /// Moduli point -> membership verdict and residuals.
    CheckModuli {
        #[arg(long)]
        n: usize,
    },
    /// {"p": quadruple, "q": quadruple} -> congruence verdicts.
    Congruent,
    /// Certificate that cross-ratios do not separate p(t) from its mirror image.
    Counterexample {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// Random quadruples as JSON lines.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "generic")]
        kind: QuadrupleKind,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// CSV of the defining function over a grid of real X1, X2 at fixed A.
    Slice {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        x1_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        x1_max: f64,
        #[arg(long, allow_negative_numbers = true)]
        x2_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        x2_max: f64,
        #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u32).range(1..))]
        steps: u32,
    },
}

enum Failure {
    Input(String),
    Compute(chmoduli_core::Error),
}

impl From<chmoduli_core::Error> for Failure {
    fn from(e: chmoduli_core::Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

#[derive(Serialize)]
struct InvariantsReport {
    moduli: ModuliPoint,
    pp_point: PPPoint,
    classification: ClassificationReport,
    normal_form: NormalizedGram,
}

#[derive(Deserialize)]
struct LiftsInput {
    lifts: [HermitianVector; 4],
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ModuliInput {
    Wrapped { moduli: ModuliPoint },
    Bare(ModuliPoint),
}

impl ModuliInput {
    fn point(self) -> ModuliPoint {
        match self {
            ModuliInput::Wrapped { moduli } | ModuliInput::Bare(moduli) => moduli,
        }
    }
}

#[derive(Serialize)]
struct Reconstruction {
    n: usize,
    points: [BoundaryPoint; 4],
    lifts: [HermitianVector; 4],
}

#[derive(Serialize)]
struct MembershipReport {
    #[serde(flatten)]
    membership: Membership,
    minimal_dimension: usize,
}

#[derive(Deserialize)]
struct PairInput {
    p: Quadruple,
    q: Quadruple,
}

#[derive(Serialize)]
struct CongruenceReport {
    holomorphic: bool,
    antiholomorphic: bool,
}

fn read_input(path: &Option<PathBuf>) -> Outcome<String> {
    match path {
        Some(p) => {
            fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
        }
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn parse<T: DeserializeOwned>(path: &Option<PathBuf>) -> Outcome<T> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(e.to_string()))
}

fn emit<T: Serialize>(out: &mut impl Write, value: &T) -> Outcome<()> {
    serde_json::to_writer(&mut *out, value).map_err(|e| Failure::Input(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome<()> {
    if let Some(tol) = cli.tol.filter(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(chmoduli_core::Error::InvalidParameter(format!(
            "tolerance {tol} must be non-negative"
        ))
        .into());
    }
    let cfg = cli.tol.map(NumericConfig::uniform).unwrap_or_default();
    match cli.command {
        Command::Invariants => {
            let p: Quadruple = parse(&cli.input)?;
            let moduli = tau(&p, &cfg)?;
            let report = InvariantsReport {
                pp_point: pp_point(&p, &cfg)?,
                classification: classify(&moduli, &cfg),
                normal_form: normalize(&gram_of(&p.lifts(), &cfg)?, &cfg)?,
                moduli,
            };
            emit(out, &report)
        }
        Command::Normalize => {
            let input: LiftsInput = parse(&cli.input)?;
            emit(out, &normalize(&gram_of(&input.lifts, &cfg)?, &cfg)?)
        }
        Command::Reconstruct { n } => {
            let m = parse::<ModuliInput>(&cli.input)?.point();
            let lifts = reconstruct(&m, n, &cfg)?;
            let points = Quadruple::from_lifts(&lifts, &cfg)?.points().clone();
            emit(out, &Reconstruction { n, points, lifts })
        }
        Command::CheckModuli { n } => {
            let m = parse::<ModuliInput>(&cli.input)?.point();
            let report = MembershipReport {
                membership: membership(&m, n, &cfg),
                minimal_dimension: minimal_dimension(&m, &cfg),
            };
            emit(out, &report)
        }
        Command::Congruent => {
            let pair: PairInput = parse(&cli.input)?;
            let report = CongruenceReport {
                holomorphic: congruent_holomorphic(&pair.p, &pair.q, &cfg)?,
                antiholomorphic: congruent_antiholomorphic(&pair.p, &pair.q, &cfg)?,
            };
            emit(out, &report)
        }
        Command::Counterexample { t } => emit(out, &certify_noninjectivity(t, &cfg)?),
        Command::Sample {
            n,
            kind,
            count,
            seed,
        } => {
            for i in 0..count {
                emit(out, &random_quadruple(n, kind, &mut seeded_rng(seed, i))?)?;
            }
            Ok(())
        }
        Command::Slice {
            a,
            x1_min,
            x1_max,
            x2_min,
            x2_max,
            steps,
        } => {
            let at = |lo: f64, hi: f64, k: u32| {
                if steps == 1 {
                    lo
                } else {
                    lo + (hi - lo) * f64::from(k) / f64::from(steps - 1)
                }
            };
            writeln!(out, "x1,x2,residual")?;
            for i in 0..steps {
                for j in 0..steps {
                    let (x1, x2) = (at(x1_min, x1_max, i), at(x2_min, x2_max, j));
                    let m = ModuliPoint::new(Complex64::new(x1, 0.0), Complex64::new(x2, 0.0), a);
                    writeln!(out, "{x1},{x2},{}", variety_residual(&m))?;
                }
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    detail: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let (code, report) = match result {
        Ok(()) => (ExitCode::SUCCESS, None),
        Err(Failure::Compute(e)) => (
            ExitCode::from(1),
            Some(ErrorReport {
                error: e.code(),
                detail: e.to_string(),
            }),
        ),
        Err(Failure::Input(detail)) => (
            ExitCode::from(2),
            Some(ErrorReport {
                error: "malformed_input",
                detail,
            }),
        ),
    };
    if let Some(report) = report {
        let _ = serde_json::to_writer(&mut out, &report);
        let _ = writeln!(out);
    }
    let _ = out.flush();
    code
}
