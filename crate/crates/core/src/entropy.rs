//! Von Neumann entropy, quantum relative entropy, and the monotonicity-type
//! inequalities built from the portrait maps.
//!
//! Relative entropy is evaluated from the two spectral decompositions
//! `rho = sum_j p_j |u_j><u_j|`, `sigma = sum_k q_k |v_k><v_k|`:
//!
//! ```text
//! S(rho||sigma) = sum_j p_j ln p_j - sum_k w_k ln q_k,   w_k = sum_j p_j |<u_j|v_k>|^2
//! ```
//!
//! with `0 ln 0 = 0`, and `+inf` when a null direction of `sigma` carries
//! weight `w_k > support`.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::io::round_sig15;
use crate::portraits::{
    chain, distinct_portrait_permutations, embed_padded, portrait, qubit_portrait,
    BlockPartition, IndexPermutation, PortraitKind,
};
use crate::states::{partial_trace, DensityMatrix, Subsystem};
use crate::tolerances::Tolerances;

/// A real number or an infinity; never NaN.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ExtendedReal(f64);

impl ExtendedReal {
    pub const INFINITY: ExtendedReal = ExtendedReal(f64::INFINITY);

    pub fn finite(x: f64) -> Self {
        assert!(x.is_finite(), "ExtendedReal::finite({x})");
        Self(x)
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    /// The value as `f64` (`+-inf` for infinities).
    pub fn value(self) -> f64 {
        self.0
    }

    /// The finite value, if any.
    pub fn as_finite(self) -> Option<f64> {
        self.0.is_finite().then_some(self.0)
    }
}

impl std::fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.0 {
            x if x == f64::INFINITY => write!(f, "inf"),
            x if x == f64::NEG_INFINITY => write!(f, "-inf"),
            x => write!(f, "{}", round_sig15(x)),
        }
    }
}

impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            x if x == f64::INFINITY => s.serialize_str("inf"),
            x if x == f64::NEG_INFINITY => s.serialize_str("-inf"),
            x => s.serialize_f64(round_sig15(x)),
        }
    }
}

/// Both sides of one inequality instance `lhs >= rhs`, and its verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub label: String,
    pub lhs: ExtendedReal,
    pub rhs: ExtendedReal,
    /// `lhs - rhs`; `None` when both sides are `+inf`.
    pub gap: Option<ExtendedReal>,
    pub holds: bool,
    #[serde(serialize_with = "serialize_sig15")]
    pub tol: f64,
    /// Set when both sides are `+inf`; such instances count as holding.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub indeterminate: bool,
}

fn serialize_sig15<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig15(*x))
}

impl InequalityReport {
    pub fn new(label: impl Into<String>, lhs: ExtendedReal, rhs: ExtendedReal, tol: f64) -> Self {
        let (l, r) = (lhs.value(), rhs.value());
        let (gap, holds, indeterminate) = if l == f64::INFINITY && r == f64::INFINITY {
            (None, true, true)
        } else {
            let g = l - r;
            (Some(ExtendedReal(g)), g >= -tol, false)
        };
        Self {
            label: label.into(),
            lhs,
            rhs,
            gap,
            holds,
            tol,
            indeterminate,
        }
    }

    pub fn finite(label: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::new(label, ExtendedReal::finite(lhs), ExtendedReal::finite(rhs), tol)
    }

    /// Gap as `f64`: `+inf` for indeterminate reports.
    pub fn gap_value(&self) -> f64 {
        self.gap.map_or(f64::INFINITY, ExtendedReal::value)
    }
}

fn xlnx(p: f64, zero: f64) -> f64 {
    if p <= zero {
        0.0
    } else {
        p * p.ln()
    }
}

/// `-Tr(rho ln rho)`.
pub fn von_neumann(rho: &DensityMatrix, tol: &Tolerances) -> f64 {
    -rho.eigenvalues().iter().map(|&p| xlnx(p, tol.eig_zero)).sum::<f64>()
}

/// `S(rho||sigma) = Tr(rho ln rho - rho ln sigma)`.
pub fn relative_entropy(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    tol: &Tolerances,
) -> Result<ExtendedReal> {
    let n = rho.dim();
    if sigma.dim() != n {
        return Err(Error::DimensionMismatch(n, sigma.dim()));
    }
    let (rs, ss) = (rho.spectrum(), sigma.spectrum());
    let (u, v) = (&rs.eigenvectors, &ss.eigenvectors);
    let p: Vec<f64> = rs.eigenvalues.iter().map(|&x| x.max(0.0)).collect();

    let neg_entropy: f64 = p.iter().map(|&x| xlnx(x, tol.eig_zero)).sum();
    let mut cross = 0.0;
    for (k, &q) in ss.eigenvalues.iter().enumerate() {
        let mut w = 0.0;
        for (j, &pj) in p.iter().enumerate() {
            if pj == 0.0 {
                continue;
            }
            let mut overlap = crate::matrix::ZERO;
            for i in 0..n {
                overlap += u[(i, j)].conj() * v[(i, k)];
            }
            w += pj * overlap.norm_sqr();
        }
        if q > tol.eig_zero {
            cross += w * q.ln();
        } else if w > tol.support {
            return Ok(ExtendedReal::INFINITY);
        }
    }
    Ok(ExtendedReal(neg_entropy - cross))
}

/// Klein's inequality `S(rho||sigma) >= 0`.
pub fn klein_gap(rho: &DensityMatrix, sigma: &DensityMatrix, tol: &Tolerances) -> Result<InequalityReport> {
    let s = relative_entropy(rho, sigma, tol)?;
    Ok(InequalityReport::new("klein", s, ExtendedReal(0.0), tol.gap))
}

/// `S(rho||sigma) >= S(M(rho)||M(sigma))` for a portrait map `M`.
pub fn monotonicity_gap(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    kind: PortraitKind,
    p: BlockPartition,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let lhs = relative_entropy(rho, sigma, tol)?;
    let rhs = relative_entropy(&portrait(rho, kind, p)?, &portrait(sigma, kind, p)?, tol)?;
    Ok(InequalityReport::new(
        format!("monotonicity/{}/({},{})", kind.name(), p.n_top(), p.m()),
        lhs,
        rhs,
        tol.gap,
    ))
}

/// Bipartite monotonicity `S(rho12||sigma12) >= S(rho_i||sigma_i)` with the
/// reduced states taken by partial trace over `traced`.
pub fn partial_trace_monotonicity_gap(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    dims: (usize, usize),
    traced: Subsystem,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    let lhs = relative_entropy(rho, sigma, tol)?;
    let rhs = relative_entropy(
        &partial_trace(rho, dims, traced)?,
        &partial_trace(sigma, dims, traced)?,
        tol,
    )?;
    Ok(InequalityReport::new(
        format!("partial-trace-monotonicity/{traced:?}"),
        lhs,
        rhs,
        tol.gap,
    ))
}

/// `Tr[P ln P - P ln rho] >= 0` where `P` is the zero-padded portrait of `rho`.
pub fn portrait_nonneg_gap(
    rho: &DensityMatrix,
    kind: PortraitKind,
    p: BlockPartition,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    let padded = embed_padded(&portrait(rho, kind, p)?, rho.dim())?;
    let lhs = relative_entropy(&padded, rho, tol)?;
    Ok(InequalityReport::new(
        format!("nonneg/{}/({},{})", kind.name(), p.n_top(), p.m()),
        lhs,
        ExtendedReal(0.0),
        tol.gap,
    ))
}

/// `S(chain(rho)[i] || chain(sigma)[i])` for every level of the fold chain.
pub fn chain_gaps(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    tol: &Tolerances,
) -> Result<Vec<ExtendedReal>> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    chain(rho)?
        .iter()
        .zip(chain(sigma)?.iter())
        .map(|(r, s)| relative_entropy(r, s, tol))
        .collect()
}

/// One report per link of the chain (`S_i >= S_{i+1}`) plus the final `S_last >= 0`.
pub fn chain_reports(values: &[ExtendedReal], tol: &Tolerances) -> Vec<InequalityReport> {
    let mut out: Vec<InequalityReport> = values
        .windows(2)
        .enumerate()
        .map(|(i, w)| InequalityReport::new(format!("chain/{i}>={}", i + 1), w[0], w[1], tol.gap))
        .collect();
    if let Some(&last) = values.last() {
        out.push(InequalityReport::new(
            format!("chain/{}>=0", values.len() - 1),
            last,
            ExtendedReal(0.0),
            tol.gap,
        ));
    }
    out
}

/// Tightest chain link: the report with the smallest gap.
pub fn chain_gap(rho: &DensityMatrix, sigma: &DensityMatrix, tol: &Tolerances) -> Result<InequalityReport> {
    let values = chain_gaps(rho, sigma, tol)?;
    Ok(chain_reports(&values, tol)
        .into_iter()
        .min_by(|a, b| a.gap_value().total_cmp(&b.gap_value()))
        .expect("chain has at least one link"))
}

/// Permutation bound together with the maximizing relabeling.
#[derive(Debug, Clone, PartialEq)]
pub struct PermutationBound {
    pub report: InequalityReport,
    pub permutation: IndexPermutation,
}

/// `S(rho||sigma) >= max_pi S(qubit_portrait(rho, pi) || qubit_portrait(sigma, pi))`.
pub fn max_permutation_bound(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    tol: &Tolerances,
) -> Result<PermutationBound> {
    let n = rho.dim();
    if sigma.dim() != n {
        return Err(Error::DimensionMismatch(n, sigma.dim()));
    }
    if n < 3 {
        return Err(Error::InvalidArgument("permutation bound needs dimension >= 3".into()));
    }
    let lhs = relative_entropy(rho, sigma, tol)?;
    let mut best: Option<(ExtendedReal, IndexPermutation)> = None;
    for perm in distinct_portrait_permutations(n) {
        let s = relative_entropy(&qubit_portrait(rho, &perm)?, &qubit_portrait(sigma, &perm)?, tol)?;
        if best.as_ref().is_none_or(|(b, _)| s.value() > b.value()) {
            best = Some((s, perm));
        }
    }
    let (rhs, permutation) = best.expect("n >= 3 gives at least one permutation");
    Ok(PermutationBound {
        report: InequalityReport::new(
            format!("permutation-bound/{:?}", permutation.one_based()),
            lhs,
            rhs,
            tol.gap,
        ),
        permutation,
    })
}
