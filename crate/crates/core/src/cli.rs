//! Command-line front end.
//!
//! Exit codes: 0 when every evaluated inequality holds, 1 when one is
//! violated (the report names the witness), 2 for usage or input errors.
//! Reports print with 15 significant digits; matrices print with full
//! round-trip precision.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::entropy::{
    chain_gaps, chain_reports, klein_gap, max_permutation_bound, monotonicity_gap,
    portrait_nonneg_gap, relative_entropy, von_neumann, InequalityReport,
};
use crate::hermitian::HermitianMatrix;
use crate::io::{parse_matrix, parse_vector, parse_vector_or_matrix, round_sig15, MatrixJson, VectorOrMatrix};
use crate::portraits::{embed_padded, portrait};
use crate::scalar::{entropy_exp_bound, gibbs_gap, pairwise_exp_sum, rho_ln_rho, tomogram_uncertainty, EigenvalueList};
use crate::search::{fuzz, minimize_gap, FuzzConfig, FuzzReport, MinimizeConfig, PortraitChoice, Target};
use crate::states::{validate_density, DensityMatrix, ProbabilityVector, RngSeed};
use crate::tolerances::Tolerances;

/// Environment variable overriding the inequality gap tolerance.
pub const TOL_ENV: &str = "QPORTRAIT_TOL";

#[derive(Debug, Parser)]
#[command(name = "qportrait", version, about = "Portrait maps and entropic inequalities for qudit density matrices")]
struct Cli {
    /// Emit JSON (the only output format; accepted for explicitness).
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a matrix is a density matrix.
    Validate {
        #[arg(long)]
        rho: PathBuf,
    },
    /// Apply a portrait map.
    Portrait {
        #[arg(long)]
        rho: PathBuf,
        #[command(flatten)]
        map: MapArgs,
    },
    /// Von Neumann entropy, or relative entropy when --sigma is given.
    Entropy {
        #[arg(long)]
        rho: PathBuf,
        #[arg(long)]
        sigma: Option<PathBuf>,
    },
    /// Evaluate one inequality.
    Inequality {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        rho: Option<PathBuf>,
        #[arg(long)]
        sigma: Option<PathBuf>,
        /// Eigenvalue list (JSON array) or Hermitian matrix (JSON matrix).
        #[arg(long)]
        b: Option<PathBuf>,
        /// Probability vector (JSON array).
        #[arg(long)]
        w: Option<PathBuf>,
        #[command(flatten)]
        map: MapArgs,
    },
    /// Relative entropies along the fold chain N, N-1, ..., 2.
    Chain {
        #[arg(long)]
        rho: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
    },
    /// Evaluate a target on seeded random inputs.
    Fuzz {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Minimize a target's gap with restarted simplex descent.
    Minimize {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, default_value_t = 10)]
        restarts: usize,
        #[arg(long, default_value_t = 2000)]
        iters: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Kind {
    Monotonicity,
    Nonneg,
    Klein,
    Pairwise,
    Gibbs,
    Tomogram,
    Expbound,
    Permutation,
}

#[derive(Debug, Args)]
struct MapArgs {
    /// Fold map with lower block size m (`m=<int>`).
    #[arg(long, value_parser = assignment("m"), conflicts_with = "traceblocks")]
    fold: Option<usize>,
    /// Block-trace map with upper block size n (`n=<int>`).
    #[arg(long, value_parser = assignment("n"))]
    traceblocks: Option<usize>,
}

impl MapArgs {
    fn choice(&self) -> PortraitChoice {
        match (self.fold, self.traceblocks) {
            (_, Some(n)) => PortraitChoice::trace_blocks(n),
            (Some(m), None) => PortraitChoice::fold(m),
            (None, None) => PortraitChoice::default(),
        }
    }
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Target inequality, e.g. `monotonicity`, `monotonicity:traceblocks=2`, `gibbs`.
    #[arg(long, alias = "target")]
    kind: String,
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long, default_value_t = RngSeed::DEFAULT.0)]
    seed: u64,
    /// Write the gap histogram as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    map: MapArgs,
}

impl SearchArgs {
    fn target(&self) -> Result<Target, String> {
        let mut t: Target = self.kind.parse().map_err(|e: crate::Error| e.to_string())?;
        if self.map.fold.is_some() || self.map.traceblocks.is_some() {
            match &mut t {
                Target::Monotonicity(c) | Target::Nonneg(c) => *c = self.map.choice(),
                _ => return Err(format!("--fold/--traceblocks do not apply to target {t}")),
            }
        }
        Ok(t)
    }
}

fn assignment(key: &'static str) -> impl Fn(&str) -> Result<usize, String> + Clone {
    move |s: &str| {
        let v = s.strip_prefix(key).and_then(|r| r.strip_prefix('=')).unwrap_or(s);
        v.parse::<usize>()
            .map_err(|_| format!("expected `{key}=<int>`, got `{s}`"))
    }
}

struct Outcome {
    output: Value,
    holds: bool,
}

/// Parses `argv` (including the program name), runs the command, prints the
/// report, and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let tol = match tolerances_from_env() {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    match execute(cli.command, &tol) {
        Ok(out) => {
            println!("{}", serde_json::to_string_pretty(&out.output).expect("JSON output"));
            if out.holds {
                0
            } else {
                eprintln!("inequality violated; see report for the witness");
                1
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn tolerances_from_env() -> Result<Tolerances, String> {
    let tol = Tolerances::default();
    match std::env::var(TOL_ENV) {
        Ok(v) => {
            let g: f64 = v
                .trim()
                .parse()
                .map_err(|_| format!("{TOL_ENV}={v} is not a number"))?;
            if !(g.is_finite() && g >= 0.0) {
                return Err(format!("{TOL_ENV}={v} must be a nonnegative finite number"));
            }
            Ok(tol.with_gap(g))
        }
        Err(_) => Ok(tol),
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_state(path: &Path, tol: &Tolerances) -> Result<DensityMatrix, String> {
    let m = parse_matrix(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    validate_density(&m, tol).map_err(|e| format!("{}: {e}", path.display()))
}

fn require<'a>(p: &'a Option<PathBuf>, flag: &str, kind: Kind) -> Result<&'a Path, String> {
    p.as_deref()
        .ok_or_else(|| format!("--{flag} is required for --kind {kind:?}").to_lowercase())
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

fn report_outcome(r: InequalityReport) -> Outcome {
    Outcome {
        holds: r.holds,
        output: to_value(&r),
    }
}

fn execute(cmd: Command, tol: &Tolerances) -> Result<Outcome, String> {
    let err = |e: crate::Error| e.to_string();
    match cmd {
        Command::Validate { rho } => {
            let d = load_state(&rho, tol)?;
            Ok(Outcome {
                holds: true,
                output: json!({
                    "valid": true,
                    "dim": d.dim(),
                    "trace": round_sig15(d.trace()),
                    "eigenvalues": d.eigenvalues().iter().map(|&x| round_sig15(x)).collect::<Vec<_>>(),
                }),
            })
        }
        Command::Portrait { rho, map } => {
            let d = load_state(&rho, tol)?;
            let c = map.choice();
            let p = c.partition(d.dim()).map_err(err)?;
            let out = portrait(&d, c.kind, p).map_err(err)?;
            let padded = embed_padded(&out, d.dim()).map_err(err)?;
            Ok(Outcome {
                holds: true,
                output: json!({
                    "kind": c.kind.name(),
                    "partition": [p.n_top(), p.m()],
                    "portrait": MatrixJson::from(out.matrix()),
                    "padded": MatrixJson::from(padded.matrix()),
                }),
            })
        }
        Command::Entropy { rho, sigma } => {
            let r = load_state(&rho, tol)?;
            let mut out = json!({ "von_neumann": round_sig15(von_neumann(&r, tol)) });
            if let Some(s) = sigma {
                let s = load_state(&s, tol)?;
                out["relative_entropy"] = to_value(&relative_entropy(&r, &s, tol).map_err(err)?);
            }
            Ok(Outcome { holds: true, output: out })
        }
        Command::Inequality { kind, rho, sigma, b, w, map } => {
            let pair = || -> Result<(DensityMatrix, DensityMatrix), String> {
                Ok((
                    load_state(require(&rho, "rho", kind)?, tol)?,
                    load_state(require(&sigma, "sigma", kind)?, tol)?,
                ))
            };
            let eigenvalues = || -> Result<EigenvalueList, String> {
                let path = require(&b, "b", kind)?;
                match parse_vector_or_matrix(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))? {
                    VectorOrMatrix::Vector(v) => EigenvalueList::new(v).map_err(err),
                    VectorOrMatrix::Matrix(m) => {
                        EigenvalueList::of(&HermitianMatrix::with_tolerance(m, tol.hermiticity).map_err(err)?)
                            .map_err(err)
                    }
                }
            };
            let weights = || -> Result<ProbabilityVector, String> {
                let path = require(&w, "w", kind)?;
                let v = parse_vector(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
                ProbabilityVector::with_tolerance(v, tol.trace).map_err(err)
            };
            let report = match kind {
                Kind::Klein => {
                    let (r, s) = pair()?;
                    klein_gap(&r, &s, tol).map_err(err)?
                }
                Kind::Monotonicity => {
                    let (r, s) = pair()?;
                    let c = map.choice();
                    monotonicity_gap(&r, &s, c.kind, c.partition(r.dim()).map_err(err)?, tol).map_err(err)?
                }
                Kind::Nonneg => {
                    let r = load_state(require(&rho, "rho", kind)?, tol)?;
                    let c = map.choice();
                    portrait_nonneg_gap(&r, c.kind, c.partition(r.dim()).map_err(err)?, tol).map_err(err)?
                }
                Kind::Permutation => {
                    let (r, s) = pair()?;
                    max_permutation_bound(&r, &s, tol).map_err(err)?.report
                }
                Kind::Pairwise => pairwise_exp_sum(&eigenvalues()?, tol).map_err(err)?,
                Kind::Gibbs => gibbs_gap(&eigenvalues()?, &weights()?, tol).map_err(err)?,
                Kind::Tomogram => tomogram_uncertainty(&weights()?, tol).map_err(err)?,
                Kind::Expbound => {
                    let r = load_state(require(&rho, "rho", kind)?, tol)?;
                    let bm = match &b {
                        Some(path) => {
                            let m = parse_matrix(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
                            HermitianMatrix::with_tolerance(m, tol.hermiticity).map_err(err)?
                        }
                        None => rho_ln_rho(&r, tol),
                    };
                    entropy_exp_bound(&r, &bm, tol).map_err(err)?
                }
            };
            Ok(report_outcome(report))
        }
        Command::Chain { rho, sigma } => {
            let r = load_state(&rho, tol)?;
            let s = load_state(&sigma, tol)?;
            let values = chain_gaps(&r, &s, tol).map_err(err)?;
            let reports = chain_reports(&values, tol);
            let holds = reports.iter().all(|x| x.holds);
            Ok(Outcome {
                holds,
                output: json!({
                    "dims": (2..=r.dim()).rev().collect::<Vec<_>>(),
                    "values": to_value(&values),
                    "reports": to_value(&reports),
                    "holds": holds,
                }),
            })
        }
        Command::Fuzz { search, samples } => {
            let cfg = FuzzConfig {
                target: search.target()?,
                dim: search.dim,
                samples,
                seed: RngSeed(search.seed),
                tol: *tol,
            };
            fuzz_outcome(fuzz(&cfg).map_err(err)?, search.csv.as_deref())
        }
        Command::Minimize { search, restarts, iters } => {
            let mut cfg = MinimizeConfig::new(search.target()?, search.dim, restarts, iters, RngSeed(search.seed));
            cfg.tol = *tol;
            fuzz_outcome(minimize_gap(&cfg).map_err(err)?, search.csv.as_deref())
        }
    }
}

fn fuzz_outcome(report: FuzzReport, csv: Option<&Path>) -> Result<Outcome, String> {
    if let Some(path) = csv {
        std::fs::write(path, report.histogram.to_csv()).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(Outcome {
        holds: report.violations == 0,
        output: to_value(&report),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assignment_parser() {
        let p = assignment("m");
        assert_eq!(p("m=2"), Ok(2));
        assert_eq!(p("3"), Ok(3));
        assert!(p("n=2").is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["qportrait", "frobnicate"]), 2);
        assert_eq!(run(["qportrait", "inequality", "--kind", "nope"]), 2);
        assert_eq!(run(["qportrait", "validate", "--rho", "/nonexistent/r.json"]), 2);
    }

    #[test]
    fn missing_inputs_are_usage_errors() {
        assert_eq!(run(["qportrait", "inequality", "--kind", "klein"]), 2);
        assert_eq!(run(["qportrait", "fuzz", "--kind", "klein", "--fold", "m=1"]), 2);
    }
}
