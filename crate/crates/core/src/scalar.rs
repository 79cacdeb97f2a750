//! Scalar inequalities on eigenvalue lists and probability vectors.

use crate::entropy::{von_neumann, InequalityReport};
use crate::error::{Error, Result};
use crate::hermitian::{eigh, HermitianMatrix};
use crate::states::{DensityMatrix, ProbabilityVector};
use crate::tolerances::Tolerances;

/// Largest `max b - min b` accepted by [`pairwise_exp_sum`].
pub const MAX_EXP_SPREAD: f64 = 700.0;

/// Real eigenvalues `b_k` of some Hermitian `B`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueList(Vec<f64>);

impl EigenvalueList {
    pub fn new(b: Vec<f64>) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::InvalidArgument("empty eigenvalue list".into()));
        }
        if let Some(x) = b.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite eigenvalue {x}")));
        }
        Ok(Self(b))
    }

    pub fn of(h: &HermitianMatrix) -> Result<Self> {
        Self::new(eigh(h)?.eigenvalues)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `ln sum_k exp(x_k)` with max subtraction.
pub fn log_sum_exp(x: &[f64]) -> f64 {
    let max = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + x.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}

/// `exp(S(rho)) <= sqrt(Tr e^{-B} Tr e^{B})`, reported as `rhs >= lhs`.
///
/// The report is oriented like the others (`lhs >= rhs` holds), so its `lhs`
/// is the trace bound and its `rhs` is `exp(S(rho))`.
pub fn entropy_exp_bound(
    rho: &DensityMatrix,
    b: &HermitianMatrix,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    if rho.dim() != b.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), b.dim()));
    }
    let exp_entropy = von_neumann(rho, tol).exp();
    let eig = eigh(b)?.eigenvalues;
    let neg: Vec<f64> = eig.iter().map(|x| -x).collect();
    let bound = (0.5 * (log_sum_exp(&eig) + log_sum_exp(&neg))).exp();
    Ok(InequalityReport::finite("expbound", bound, exp_entropy, tol.gap))
}

/// `B = rho ln rho` (with `0 ln 0 = 0`), the special case of the exp bound.
pub fn rho_ln_rho(rho: &DensityMatrix, tol: &Tolerances) -> HermitianMatrix {
    let zero = tol.eig_zero;
    HermitianMatrix::new_unchecked(
        rho.spectrum()
            .map(|p| if p <= zero { 0.0 } else { p * p.ln() }),
    )
}

/// `sum_{k,j} exp(b_k - b_j) >= N^2`.
pub fn pairwise_exp_sum(b: &EigenvalueList, tol: &Tolerances) -> Result<InequalityReport> {
    let v = b.values();
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo > MAX_EXP_SPREAD {
        return Err(Error::Overflow(hi - lo));
    }
    let lhs: f64 = v
        .iter()
        .map(|bk| v.iter().map(|bj| (bk - bj).exp()).sum::<f64>())
        .sum();
    let n = v.len() as f64;
    Ok(InequalityReport::finite("pairwise", lhs, n * n, tol.gap))
}

/// `ln sum_k e^{-b_k} + sum_k (w_k ln w_k + w_k b_k) >= 0`.
///
/// The left side equals `KL(w || g)` with the Gibbs vector `g_k = e^{-b_k} / Z`.
pub fn gibbs_gap(
    b: &EigenvalueList,
    w: &ProbabilityVector,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    if b.len() != w.len() {
        return Err(Error::DimensionMismatch(b.len(), w.len()));
    }
    let neg: Vec<f64> = b.values().iter().map(|x| -x).collect();
    let log_z = log_sum_exp(&neg);
    let tail: f64 = w
        .weights()
        .iter()
        .zip(b.values())
        .map(|(&wk, &bk)| if wk > 0.0 { wk * wk.ln() + wk * bk } else { 0.0 })
        .sum();
    Ok(InequalityReport::finite("gibbs", log_z + tail, 0.0, tol.gap))
}

/// Gibbs inequality with `b_k = -w_k`.
pub fn tomogram_uncertainty(w: &ProbabilityVector, tol: &Tolerances) -> Result<InequalityReport> {
    let b = EigenvalueList::new(w.weights().iter().map(|x| -x).collect())?;
    let mut r = gibbs_gap(&b, w, tol)?;
    r.label = "tomogram".into();
    Ok(r)
}
