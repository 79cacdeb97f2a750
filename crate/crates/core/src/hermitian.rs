//! Hermitian matrices, their eigendecomposition, and spectral matrix functions.
//!
//! The eigensolver is a cyclic complex Jacobi iteration. Each rotation zeroes
//! one off-diagonal pair `(p, q)` after removing the phase of `H[p][q]`, so the
//! real-symmetric rotation formulas apply unchanged.

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, ZERO};
use crate::tolerances::Tolerances;

/// A square complex matrix that is Hermitian within `Tolerances::hermiticity`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    /// Validates hermiticity with the default tolerance.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(m, Tolerances::default().hermiticity)
    }

    pub fn with_tolerance(m: ComplexMatrix, tol: f64) -> Result<Self> {
        if m.dim() == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be positive".into()));
        }
        let (deviation, row, col) = m.hermiticity_defect();
        if deviation > tol {
            return Err(Error::NotHermitian { row, col, deviation });
        }
        Ok(Self(m))
    }

    /// Wraps a matrix that is Hermitian by construction.
    pub(crate) fn new_unchecked(m: ComplexMatrix) -> Self {
        debug_assert!(m.hermiticity_defect().0 <= 1e-8);
        Self(m)
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_diagonal(diag))
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_rows(rows)?)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(ComplexMatrix::zeros(dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    /// `H + c I`.
    pub fn shifted(&self, c: f64) -> Self {
        let mut m = self.0.clone();
        for i in 0..m.dim() {
            m[(i, i)] += c;
        }
        Self(m)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self(self.0.scale(s))
    }

    /// `U H U^dagger` for a unitary `U`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Self {
        Self(u.matmul(&self.0).matmul(&u.adjoint()))
    }
}

impl std::ops::Index<(usize, usize)> for HermitianMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.0[idx]
    }
}

/// Eigenvalues (ascending) and the unitary whose columns are the eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `U f(Lambda) U^dagger`.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> ComplexMatrix {
        let n = self.dim();
        let u = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = ZERO;
                for (k, &fk) in fl.iter().enumerate() {
                    if fk != 0.0 {
                        acc += u[(i, k)] * u[(j, k)].conj() * fk;
                    }
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
            out[(i, i)] = C64::new(out[(i, i)].re, 0.0);
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|l| l)
    }

    /// `max |H - U Lambda U^dagger|`.
    pub fn reconstruction_residual(&self, h: &HermitianMatrix) -> f64 {
        self.reconstruct().max_abs_diff(h.matrix())
    }

    /// `max |U^dagger U - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let u = &self.eigenvectors;
        u.adjoint()
            .matmul(u)
            .max_abs_diff(&ComplexMatrix::identity(self.dim()))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(f64::NAN)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(f64::NAN)
    }
}

/// Stopping rule for the Jacobi iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiConfig {
    /// Converged once the off-diagonal Frobenius norm drops below
    /// `off_tol * max(1, ||H||_F)`.
    pub off_tol: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiConfig {
    fn default() -> Self {
        Self {
            off_tol: 1e-13,
            max_sweeps: 100,
        }
    }
}

/// Eigendecomposition with the default Jacobi configuration.
pub fn eigh(h: &HermitianMatrix) -> Result<Spectrum> {
    eigh_with(h, &JacobiConfig::default())
}

pub fn eigh_with(h: &HermitianMatrix, cfg: &JacobiConfig) -> Result<Spectrum> {
    let n = h.dim();
    // Start from the exactly Hermitian part so rounding in the input cannot
    // leave an unrotatable asymmetric residue.
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        a[(i, i)] = C64::new(h[(i, i)].re, 0.0);
        for j in i + 1..n {
            let z = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let threshold = cfg.off_tol * h.matrix().frobenius_norm().max(1.0);

    let mut converged = false;
    let mut off = off_diagonal_norm(&a);
    for _ in 0..cfg.max_sweeps {
        if off < threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        off = off_diagonal_norm(&a);
    }
    if !converged && off >= threshold {
        return Err(Error::NoConvergence {
            sweeps: cfg.max_sweeps,
            off_norm: off,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        // Fix the phase: first non-negligible component real and positive.
        let pivot = (0..n)
            .map(|r| v[(r, src)])
            .find(|z| z.norm() > 1e-12)
            .unwrap_or(C64::new(1.0, 0.0));
        let phase = pivot.conj() / pivot.norm();
        for r in 0..n {
            eigenvectors[(r, col)] = v[(r, src)] * phase;
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += a[(i, j)].norm_sqr();
        }
    }
    (2.0 * s).sqrt()
}

/// One Jacobi rotation `A <- J^dagger A J`, `V <- V J` annihilating `A[p][q]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau.abs() > 1e150 {
        0.5 / tau
    } else {
        let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
        sign / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let phase = apq / mag;
    let s_fwd = phase * s; // J[p][q]
    let s_bwd = phase.conj() * s; // -J[q][p]

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * s_bwd;
        a[(k, q)] = akp * s_fwd + akq * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * s_fwd;
        a[(q, k)] = apk * s_bwd + aqk * c;
    }
    a[(p, p)] = C64::new(app - t * mag, 0.0);
    a[(q, q)] = C64::new(aqq + t * mag, 0.0);
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * s_bwd;
        v[(k, q)] = vkp * s_fwd + vkq * c;
    }
}

/// `U f(Lambda) U^dagger` for an arbitrary real function of the eigenvalues.
pub fn matrix_fn<F: Fn(f64) -> f64>(h: &HermitianMatrix, f: F) -> Result<HermitianMatrix> {
    let spec = eigh(h)?;
    Ok(HermitianMatrix::new_unchecked(spec.map(f)))
}

pub fn matrix_exp(h: &HermitianMatrix) -> Result<HermitianMatrix> {
    matrix_fn(h, f64::exp)
}

/// How `ln` treats eigenvalues in `[-eig_zero, eig_zero]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroConvention {
    /// Zero eigenvalues are a domain error.
    Strict,
    /// Zero eigenvalues map to 0, for use inside products `rho ln rho` where `0 ln 0 = 0`.
    ZeroLogZero,
}

pub fn matrix_log(
    h: &HermitianMatrix,
    convention: ZeroConvention,
    tol: &Tolerances,
) -> Result<HermitianMatrix> {
    let spec = eigh(h)?;
    for &l in &spec.eigenvalues {
        if l < -tol.eig_zero || (l <= tol.eig_zero && convention == ZeroConvention::Strict) {
            return Err(Error::Domain(l));
        }
    }
    let zero = tol.eig_zero;
    Ok(HermitianMatrix::new_unchecked(
        spec.map(|l| if l <= zero { 0.0 } else { l.ln() }),
    ))
}

/// Sum of the real parts of the diagonal.
pub fn trace(h: &HermitianMatrix) -> f64 {
    h.matrix().trace_re()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn real(rows: &[&[f64]]) -> HermitianMatrix {
        HermitianMatrix::from_real_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn identity_spectrum() {
        let s = eigh(&HermitianMatrix::identity(2)).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 1.0]);
        assert!(s.unitarity_defect() < 1e-15);
    }

    #[test]
    fn pauli_x_spectrum() {
        let s = eigh(&real(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap();
        assert_abs_diff_eq!(s.eigenvalues[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.eigenvalues[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn two_by_two_hand_diagonalized() {
        // (1, +-1)/sqrt2 basis: 0.5 +- 0.25
        let h = real(&[&[0.5, 0.25], &[0.25, 0.5]]);
        let s = eigh(&h).unwrap();
        assert_abs_diff_eq!(s.eigenvalues[0], 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(s.eigenvalues[1], 0.75, epsilon = 1e-15);
        assert!(s.reconstruction_residual(&h) < 1e-15);
        // phase convention: first component real positive
        let v = &s.eigenvectors;
        assert!(v[(0, 0)].re > 0.0 && v[(0, 0)].im == 0.0);
        assert_abs_diff_eq!(v[(1, 0)].re, -std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
    }

    #[test]
    fn complex_entries_are_rotated() {
        let m = ComplexMatrix::from_rows(&[
            vec![C64::new(2.0, 0.0), C64::new(0.0, -1.0)],
            vec![C64::new(0.0, 1.0), C64::new(2.0, 0.0)],
        ])
        .unwrap();
        let h = HermitianMatrix::new(m).unwrap();
        let s = eigh(&h).unwrap();
        assert_abs_diff_eq!(s.eigenvalues[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.eigenvalues[1], 3.0, epsilon = 1e-14);
        assert!(s.reconstruction_residual(&h) < 1e-14);
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let m = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(Error::NotHermitian { row: 0, col: 1, .. })
        ));
    }

    #[test]
    fn sweep_budget_exhaustion_is_reported() {
        let h = real(&[&[1.0, 0.3, 0.2], &[0.3, 2.0, 0.1], &[0.2, 0.1, 3.0]]);
        let cfg = JacobiConfig {
            off_tol: 1e-13,
            max_sweeps: 1,
        };
        assert!(matches!(eigh_with(&h, &cfg), Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let e = matrix_exp(&HermitianMatrix::zeros(3)).unwrap();
        assert_eq!(e.matrix().max_abs_diff(&ComplexMatrix::identity(3)), 0.0);
    }

    #[test]
    fn log_of_diag_one_e() {
        let h = HermitianMatrix::from_diagonal(&[1.0, std::f64::consts::E]).unwrap();
        let l = matrix_log(&h, ZeroConvention::Strict, &Tolerances::default()).unwrap();
        let want = ComplexMatrix::from_diagonal(&[0.0, 1.0]);
        assert!(l.matrix().max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn exp_of_diag_logs() {
        let h = HermitianMatrix::from_diagonal(&[2f64.ln(), 3f64.ln()]).unwrap();
        let e = matrix_exp(&h).unwrap();
        assert!(e.matrix().max_abs_diff(&ComplexMatrix::from_diagonal(&[2.0, 3.0])) < 1e-14);
    }

    #[test]
    fn log_domain_errors() {
        let tol = Tolerances::default();
        let neg = HermitianMatrix::from_diagonal(&[1.0, -0.5]).unwrap();
        assert_eq!(
            matrix_log(&neg, ZeroConvention::ZeroLogZero, &tol),
            Err(Error::Domain(-0.5))
        );
        let singular = HermitianMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        assert_eq!(
            matrix_log(&singular, ZeroConvention::Strict, &tol),
            Err(Error::Domain(0.0))
        );
        let l = matrix_log(&singular, ZeroConvention::ZeroLogZero, &tol).unwrap();
        assert_eq!(l.matrix().max_abs(), 0.0);
    }

    #[test]
    fn traces() {
        assert_eq!(trace(&HermitianMatrix::identity(4)), 4.0);
        assert_abs_diff_eq!(
            trace(&HermitianMatrix::from_diagonal(&[0.5, 0.3, 0.2]).unwrap()),
            1.0,
            epsilon = 1e-16
        );
        assert_eq!(trace(&HermitianMatrix::zeros(3)), 0.0);
    }
}
