//! Counterexample search: seeded fuzzing and simplex minimization of
//! inequality gaps.
//!
//! Every target inequality is evaluated as an [`InequalityReport`]; a
//! counterexample would be a gap below `-tol.gap`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::entropy::{
    chain_gap, klein_gap, max_permutation_bound, monotonicity_gap, portrait_nonneg_gap,
    InequalityReport,
};
use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::io::{round_sig15, MatrixJson};
use crate::matrix::{ComplexMatrix, C64};
use crate::portraits::{BlockPartition, PortraitKind};
use crate::scalar::{
    entropy_exp_bound, gibbs_gap, pairwise_exp_sum, rho_ln_rho, tomogram_uncertainty,
    EigenvalueList,
};
use crate::simplex::{nelder_mead, SimplexCoefficients};
use crate::states::{DensityMatrix, ProbabilityVector, RngSeed, StateSampler};
use crate::tolerances::Tolerances;

/// Added to `G G^dagger` before normalization in the factor parameterization.
pub const FACTOR_REGULARIZATION: f64 = 1e-12;

/// Number of regular histogram bins.
pub const HISTOGRAM_BINS: usize = 50;

/// Which portrait map a target uses and the size of the block that selects
/// its partition: `m` (lower block) for folds, `n_top` for block traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PortraitChoice {
    pub kind: PortraitKind,
    pub size: Option<usize>,
}

impl PortraitChoice {
    pub fn fold(m: usize) -> Self {
        Self {
            kind: PortraitKind::FoldDiagonalBlocks,
            size: Some(m),
        }
    }

    pub fn trace_blocks(n_top: usize) -> Self {
        Self {
            kind: PortraitKind::TraceBlocks,
            size: Some(n_top),
        }
    }

    /// Resolves to a partition of `dim`; fold defaults to `m = 1`, block trace
    /// to `n_top = ceil(dim / 2)`.
    pub fn partition(&self, dim: usize) -> Result<BlockPartition> {
        match self.kind {
            PortraitKind::FoldDiagonalBlocks => BlockPartition::with_lower(dim, self.size.unwrap_or(1)),
            PortraitKind::TraceBlocks => {
                BlockPartition::with_upper(dim, self.size.unwrap_or(dim.div_ceil(2)))
            }
        }
    }
}

impl Default for PortraitChoice {
    fn default() -> Self {
        Self {
            kind: PortraitKind::FoldDiagonalBlocks,
            size: None,
        }
    }
}

/// An inequality that fuzzing and minimization can attack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Klein,
    Monotonicity(PortraitChoice),
    Nonneg(PortraitChoice),
    Chain,
    PermutationBound,
    Pairwise,
    Gibbs,
    Tomogram,
    ExpBound,
}

impl Target {
    /// One instance of every target with default portrait parameters.
    pub const ALL: [Target; 11] = [
        Target::Klein,
        Target::Monotonicity(PortraitChoice { kind: PortraitKind::FoldDiagonalBlocks, size: None }),
        Target::Monotonicity(PortraitChoice { kind: PortraitKind::TraceBlocks, size: None }),
        Target::Nonneg(PortraitChoice { kind: PortraitKind::FoldDiagonalBlocks, size: None }),
        Target::Nonneg(PortraitChoice { kind: PortraitKind::TraceBlocks, size: None }),
        Target::Chain,
        Target::PermutationBound,
        Target::Pairwise,
        Target::Gibbs,
        Target::Tomogram,
        Target::ExpBound,
    ];

    /// Whether the target is defined at this dimension.
    pub fn supports_dim(&self, dim: usize) -> bool {
        match self {
            Target::PermutationBound => dim >= 3,
            Target::Monotonicity(c) | Target::Nonneg(c) => dim >= 2 && c.partition(dim).is_ok(),
            _ => dim >= 2,
        }
    }

    fn shape(&self) -> InputShape {
        match self {
            Target::Klein | Target::Monotonicity(_) | Target::Chain | Target::PermutationBound => {
                InputShape::Pair
            }
            Target::Nonneg(_) => InputShape::State,
            Target::ExpBound => InputShape::StateObservable,
            Target::Pairwise => InputShape::Eigenvalues,
            Target::Gibbs => InputShape::EigenvaluesWeights,
            Target::Tomogram => InputShape::Weights,
        }
    }

    /// Number of real parameters the simplex search uses at `dim`.
    pub fn parameter_count(&self, dim: usize) -> usize {
        let n2 = dim * dim;
        match self.shape() {
            InputShape::Pair => 4 * n2,
            InputShape::State => 2 * n2,
            InputShape::StateObservable => 3 * n2,
            InputShape::Eigenvalues | InputShape::Weights => dim,
            InputShape::EigenvaluesWeights => 2 * dim,
        }
    }

    pub fn evaluate(&self, w: &Witness, tol: &Tolerances) -> Result<InequalityReport> {
        let mismatch = || Error::InvalidArgument(format!("witness does not fit target {self}"));
        match (self, w) {
            (Target::Klein, Witness::Pair { rho, sigma }) => klein_gap(rho, sigma, tol),
            (Target::Monotonicity(c), Witness::Pair { rho, sigma }) => {
                monotonicity_gap(rho, sigma, c.kind, c.partition(rho.dim())?, tol)
            }
            (Target::Chain, Witness::Pair { rho, sigma }) => chain_gap(rho, sigma, tol),
            (Target::PermutationBound, Witness::Pair { rho, sigma }) => {
                Ok(max_permutation_bound(rho, sigma, tol)?.report)
            }
            (Target::Nonneg(c), Witness::State { rho }) => {
                portrait_nonneg_gap(rho, c.kind, c.partition(rho.dim())?, tol)
            }
            (Target::ExpBound, Witness::StateObservable { rho, b }) => entropy_exp_bound(rho, b, tol),
            (Target::Pairwise, Witness::Eigenvalues { b }) => pairwise_exp_sum(b, tol),
            (Target::Gibbs, Witness::EigenvaluesWeights { b, w }) => gibbs_gap(b, w, tol),
            (Target::Tomogram, Witness::Weights { w }) => tomogram_uncertainty(w, tol),
            _ => Err(mismatch()),
        }
    }

    /// Random inputs for fuzz sample `index`.
    pub fn sample(&self, dim: usize, sampler: &mut StateSampler, index: u64, tol: &Tolerances) -> Result<Witness> {
        Ok(match self.shape() {
            InputShape::Pair => Witness::Pair {
                rho: sampler.mixed_hs(dim)?,
                sigma: sampler.mixed_hs(dim)?,
            },
            InputShape::State => Witness::State {
                rho: sampler.mixed_hs(dim)?,
            },
            InputShape::StateObservable => {
                let rho = sampler.mixed_hs(dim)?;
                // Odd samples use B = rho ln rho.
                let b = if index % 2 == 1 {
                    rho_ln_rho(&rho, tol)
                } else {
                    let scale = sampler.uniform(0.05, 3.0);
                    sampler.hermitian(dim).scaled(scale)
                };
                Witness::StateObservable { rho, b }
            }
            InputShape::Eigenvalues => {
                let scale = sampler.uniform(0.0, 5.0);
                Witness::Eigenvalues {
                    b: EigenvalueList::of(&sampler.hermitian(dim).scaled(scale))?,
                }
            }
            InputShape::EigenvaluesWeights => {
                let scale = sampler.uniform(0.0, 5.0);
                let b = EigenvalueList::new((0..dim).map(|_| scale * sampler.normal()).collect())?;
                let w = ProbabilityVector::from_diagonal_of(&sampler.mixed_hs(dim)?);
                Witness::EigenvaluesWeights { b, w }
            }
            InputShape::Weights => Witness::Weights {
                w: ProbabilityVector::from_diagonal_of(&sampler.mixed_hs(dim)?),
            },
        })
    }

    /// Maps simplex parameters to inputs. Density matrices come from
    /// `(G G^dagger + eps I) / Tr` with `G` read row-major as (re, im) pairs.
    pub fn decode(&self, dim: usize, x: &[f64]) -> Result<Witness> {
        let n2 = dim * dim;
        let state = |p: &[f64]| -> Result<DensityMatrix> {
            let data = p.chunks_exact(2).map(|c| C64::new(c[0], c[1])).collect();
            DensityMatrix::from_factor(&ComplexMatrix::from_row_major(dim, data)?, FACTOR_REGULARIZATION)
        };
        let weights = |p: &[f64]| -> Result<ProbabilityVector> {
            let s: f64 = p.iter().map(|v| v * v).sum();
            if s == 0.0 {
                return ProbabilityVector::uniform(p.len());
            }
            ProbabilityVector::new(p.iter().map(|v| v * v / s).collect())
        };
        Ok(match self.shape() {
            InputShape::Pair => Witness::Pair {
                rho: state(&x[..2 * n2])?,
                sigma: state(&x[2 * n2..4 * n2])?,
            },
            InputShape::State => Witness::State { rho: state(&x[..2 * n2])? },
            InputShape::StateObservable => {
                let rho = state(&x[..2 * n2])?;
                let p = &x[2 * n2..3 * n2];
                let mut b = ComplexMatrix::zeros(dim);
                let mut k = dim;
                for i in 0..dim {
                    b[(i, i)] = C64::new(p[i], 0.0);
                    for j in i + 1..dim {
                        let z = C64::new(p[k], p[k + 1]);
                        k += 2;
                        b[(i, j)] = z;
                        b[(j, i)] = z.conj();
                    }
                }
                Witness::StateObservable {
                    rho,
                    b: HermitianMatrix::new(b)?,
                }
            }
            InputShape::Eigenvalues => Witness::Eigenvalues {
                b: EigenvalueList::new(x[..dim].to_vec())?,
            },
            InputShape::EigenvaluesWeights => Witness::EigenvaluesWeights {
                b: EigenvalueList::new(x[..dim].to_vec())?,
                w: weights(&x[dim..2 * dim])?,
            },
            InputShape::Weights => Witness::Weights { w: weights(&x[..dim])? },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum InputShape {
    Pair,
    State,
    StateObservable,
    Eigenvalues,
    EigenvaluesWeights,
    Weights,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let with_choice = |f: &mut fmt::Formatter<'_>, name: &str, c: &PortraitChoice| match c.size {
            Some(s) => write!(f, "{name}:{}={s}", c.kind.name()),
            None => write!(f, "{name}:{}", c.kind.name()),
        };
        match self {
            Target::Klein => write!(f, "klein"),
            Target::Monotonicity(c) => with_choice(f, "monotonicity", c),
            Target::Nonneg(c) => with_choice(f, "nonneg", c),
            Target::Chain => write!(f, "chain"),
            Target::PermutationBound => write!(f, "permutation"),
            Target::Pairwise => write!(f, "pairwise"),
            Target::Gibbs => write!(f, "gibbs"),
            Target::Tomogram => write!(f, "tomogram"),
            Target::ExpBound => write!(f, "expbound"),
        }
    }
}

/// Parses `klein`, `monotonicity[:fold[=m]|:traceblocks[=n]]`, `nonneg[...]`,
/// `chain`, `permutation`, `pairwise`, `gibbs`, `tomogram`, `expbound`.
impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownTarget(s.to_string());
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n, Some(r)),
            None => (s, None),
        };
        let choice = |rest: Option<&str>| -> Result<PortraitChoice> {
            let Some(r) = rest else {
                return Ok(PortraitChoice::default());
            };
            let (kind, size) = match r.split_once('=') {
                Some((k, v)) => (k, Some(v.parse::<usize>().map_err(|_| unknown())?)),
                None => (r, None),
            };
            let kind = match kind {
                "fold" => PortraitKind::FoldDiagonalBlocks,
                "traceblocks" => PortraitKind::TraceBlocks,
                _ => return Err(unknown()),
            };
            Ok(PortraitChoice { kind, size })
        };
        let plain = |t: Target| if rest.is_some() { Err(unknown()) } else { Ok(t) };
        match name {
            "klein" => plain(Target::Klein),
            "monotonicity" => Ok(Target::Monotonicity(choice(rest)?)),
            "nonneg" => Ok(Target::Nonneg(choice(rest)?)),
            "chain" => plain(Target::Chain),
            "permutation" => plain(Target::PermutationBound),
            "pairwise" => plain(Target::Pairwise),
            "gibbs" => plain(Target::Gibbs),
            "tomogram" => plain(Target::Tomogram),
            "expbound" => plain(Target::ExpBound),
            _ => Err(unknown()),
        }
    }
}

/// Concrete inputs of one inequality instance.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Pair { rho: DensityMatrix, sigma: DensityMatrix },
    State { rho: DensityMatrix },
    StateObservable { rho: DensityMatrix, b: HermitianMatrix },
    Eigenvalues { b: EigenvalueList },
    EigenvaluesWeights { b: EigenvalueList, w: ProbabilityVector },
    Weights { w: ProbabilityVector },
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(None)?;
        match self {
            Witness::Pair { rho, sigma } => {
                map.serialize_entry("rho", &MatrixJson::from(rho.matrix()))?;
                map.serialize_entry("sigma", &MatrixJson::from(sigma.matrix()))?;
            }
            Witness::State { rho } => map.serialize_entry("rho", &MatrixJson::from(rho.matrix()))?,
            Witness::StateObservable { rho, b } => {
                map.serialize_entry("rho", &MatrixJson::from(rho.matrix()))?;
                map.serialize_entry("b", &MatrixJson::from(b.matrix()))?;
            }
            Witness::Eigenvalues { b } => map.serialize_entry("b", b.values())?,
            Witness::EigenvaluesWeights { b, w } => {
                map.serialize_entry("b", b.values())?;
                map.serialize_entry("w", w.weights())?;
            }
            Witness::Weights { w } => map.serialize_entry("w", w.weights())?,
        }
        map.end()
    }
}

/// Gap histogram: `HISTOGRAM_BINS` uniform bins over `[0, max finite gap]`,
/// plus an underflow bin for negative gaps and a bin for infinite or
/// indeterminate gaps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
    pub underflow: usize,
    pub infinite: usize,
}

impl Histogram {
    pub fn from_gaps(gaps: &[f64]) -> Self {
        let hi = gaps
            .iter()
            .copied()
            .filter(|g| g.is_finite())
            .fold(0.0, f64::max);
        let edges: Vec<f64> = (0..=HISTOGRAM_BINS)
            .map(|i| hi * i as f64 / HISTOGRAM_BINS as f64)
            .collect();
        let mut counts = vec![0; HISTOGRAM_BINS];
        let (mut underflow, mut infinite) = (0, 0);
        for &g in gaps {
            if !g.is_finite() {
                infinite += 1;
            } else if g < 0.0 {
                underflow += 1;
            } else {
                let bin = if hi > 0.0 {
                    ((g / hi * HISTOGRAM_BINS as f64) as usize).min(HISTOGRAM_BINS - 1)
                } else {
                    HISTOGRAM_BINS - 1
                };
                counts[bin] += 1;
            }
        }
        Self {
            edges,
            counts,
            underflow,
            infinite,
        }
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum::<usize>() + self.underflow + self.infinite
    }

    /// `bin_low,bin_high,count`; underflow and infinite bins are the first and
    /// last rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_low,bin_high,count\n");
        out.push_str(&format!("-inf,0,{}\n", self.underflow));
        for (i, c) in self.counts.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{}\n",
                round_sig15(self.edges[i]),
                round_sig15(self.edges[i + 1]),
                c
            ));
        }
        out.push_str(&format!("inf,inf,{}\n", self.infinite));
        out
    }
}

/// Aggregate result of a fuzz campaign or a minimization run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzReport {
    pub target: String,
    pub dim: usize,
    pub seed: u64,
    /// Inequality instances aggregated: fuzz samples, or one best point per restart.
    pub samples: usize,
    /// Total objective evaluations.
    pub evaluations: usize,
    #[serde(serialize_with = "ser_gap")]
    pub min_gap: f64,
    pub argmin: Option<Witness>,
    pub argmin_report: Option<InequalityReport>,
    pub histogram: Histogram,
    pub violations: usize,
    /// Inputs that failed to evaluate (should stay 0).
    pub errors: usize,
    #[serde(serialize_with = "ser_gap")]
    pub tol: f64,
}

fn ser_gap<S: serde::Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_infinite() {
        s.serialize_str(if *x > 0.0 { "inf" } else { "-inf" })
    } else {
        s.serialize_f64(round_sig15(*x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzConfig {
    pub target: Target,
    pub dim: usize,
    pub samples: usize,
    pub seed: RngSeed,
    pub tol: Tolerances,
}

fn validate(target: &Target, dim: usize, count: usize, what: &str) -> Result<()> {
    if count == 0 {
        return Err(Error::InvalidArgument(format!("{what} must be at least 1")));
    }
    if !target.supports_dim(dim) {
        return Err(Error::InvalidArgument(format!("target {target} is not defined at dimension {dim}")));
    }
    Ok(())
}

struct Tracker {
    gaps: Vec<f64>,
    best: Option<(f64, Witness, InequalityReport)>,
    violations: usize,
    errors: usize,
    tol: f64,
}

impl Tracker {
    fn new(tol: f64) -> Self {
        Self {
            gaps: Vec::new(),
            best: None,
            violations: 0,
            errors: 0,
            tol,
        }
    }

    fn record(&mut self, w: Witness, r: InequalityReport) {
        let g = r.gap_value();
        if !r.holds || g < -self.tol {
            self.violations += 1;
        }
        self.gaps.push(g);
        if self.best.as_ref().is_none_or(|(b, _, _)| g < *b) {
            self.best = Some((g, w, r));
        }
    }

    fn finish(self, target: &Target, dim: usize, seed: RngSeed, evaluations: usize) -> FuzzReport {
        let histogram = Histogram::from_gaps(&self.gaps);
        let (min_gap, argmin, argmin_report) = match self.best {
            Some((g, w, r)) => (g, Some(w), Some(r)),
            None => (f64::INFINITY, None, None),
        };
        FuzzReport {
            target: target.to_string(),
            dim,
            seed: seed.0,
            samples: self.gaps.len(),
            evaluations,
            min_gap,
            argmin,
            argmin_report,
            histogram,
            violations: self.violations,
            errors: self.errors,
            tol: self.tol,
        }
    }
}

/// Evaluates the target on `samples` independent random inputs.
pub fn fuzz(cfg: &FuzzConfig) -> Result<FuzzReport> {
    validate(&cfg.target, cfg.dim, cfg.samples, "samples")?;
    let mut t = Tracker::new(cfg.tol.gap);
    for i in 0..cfg.samples as u64 {
        let mut sampler = StateSampler::new(cfg.seed.derive(i));
        let evaluated = cfg
            .target
            .sample(cfg.dim, &mut sampler, i, &cfg.tol)
            .and_then(|w| cfg.target.evaluate(&w, &cfg.tol).map(|r| (w, r)));
        match evaluated {
            Ok((w, r)) => t.record(w, r),
            Err(_) => t.errors += 1,
        }
    }
    Ok(t.finish(&cfg.target, cfg.dim, cfg.seed, cfg.samples))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeConfig {
    pub target: Target,
    pub dim: usize,
    pub restarts: usize,
    /// Objective evaluations per restart after the initial simplex.
    pub iters: usize,
    pub seed: RngSeed,
    /// Initial simplex edge length.
    pub step: f64,
    pub tol: Tolerances,
}

impl MinimizeConfig {
    pub fn new(target: Target, dim: usize, restarts: usize, iters: usize, seed: RngSeed) -> Self {
        Self {
            target,
            dim,
            restarts,
            iters,
            seed,
            step: 0.5,
            tol: Tolerances::default(),
        }
    }
}

/// Drives the target's gap down with Nelder-Mead from `restarts` seeded
/// Gaussian starting points.
pub fn minimize_gap(cfg: &MinimizeConfig) -> Result<FuzzReport> {
    validate(&cfg.target, cfg.dim, cfg.restarts, "restarts")?;
    let params = cfg.target.parameter_count(cfg.dim);
    let mut t = Tracker::new(cfg.tol.gap);
    let mut evaluations = 0usize;
    for r in 0..cfg.restarts as u64 {
        let mut sampler = StateSampler::new(cfg.seed.derive(r));
        let x0: Vec<f64> = (0..params).map(|_| sampler.normal()).collect();
        let mut errors = 0usize;
        let objective = |x: &[f64]| -> f64 {
            match cfg
                .target
                .decode(cfg.dim, x)
                .and_then(|w| cfg.target.evaluate(&w, &cfg.tol))
            {
                Ok(rep) => rep.gap_value(),
                Err(_) => {
                    errors += 1;
                    f64::INFINITY
                }
            }
        };
        let m = nelder_mead(objective, &x0, cfg.step, cfg.iters, SimplexCoefficients::default());
        evaluations += params + 1 + m.evaluations;
        t.errors += errors;
        let w = cfg.target.decode(cfg.dim, &m.x)?;
        let rep = cfg.target.evaluate(&w, &cfg.tol)?;
        t.record(w, rep);
    }
    Ok(t.finish(&cfg.target, cfg.dim, cfg.seed, evaluations))
}
