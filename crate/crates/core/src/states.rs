//! Density matrices, probability vectors, seeded samplers, and the bipartite
//! partial trace.
//!
//! Sampling uses ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded through
//! `SeedableRng::seed_from_u64`, so a given [`RngSeed`] yields the same stream
//! on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::hermitian::{eigh, HermitianMatrix, Spectrum};
use crate::matrix::{ComplexMatrix, C64, ZERO};
use crate::tolerances::Tolerances;

/// A Hermitian, unit-trace, positive semidefinite matrix together with its
/// spectrum (computed once during validation).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: HermitianMatrix,
    spectrum: Spectrum,
}

impl DensityMatrix {
    pub fn new(matrix: HermitianMatrix) -> Result<Self> {
        Self::with_tolerances(matrix, &Tolerances::default())
    }

    pub fn with_tolerances(matrix: HermitianMatrix, tol: &Tolerances) -> Result<Self> {
        let tr = matrix.matrix().trace_re();
        if (tr - 1.0).abs() > tol.trace {
            return Err(Error::TraceNotOne(tr));
        }
        let spectrum = eigh(&matrix)?;
        let min = spectrum.min_eigenvalue();
        if min < -tol.psd {
            return Err(Error::NegativeEigenvalue(min));
        }
        Ok(Self { matrix, spectrum })
    }

    pub fn from_diagonal(p: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::from_diagonal(p)?)
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::from_diagonal(&vec![1.0 / dim as f64; dim])
    }

    /// `|psi><psi|` for a (not necessarily normalized) state vector.
    pub fn from_pure(psi: &[C64]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm2 <= 0.0 {
            return Err(Error::InvalidArgument("zero state vector".into()));
        }
        let n = psi.len();
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = psi[i] * psi[j].conj() / norm2;
            }
        }
        Self::new(HermitianMatrix::new_unchecked(m))
    }

    /// `(G G^dagger + eps I) / Tr(...)`; positive by construction.
    pub fn from_factor(g: &ComplexMatrix, regularization: f64) -> Result<Self> {
        let mut m = g.matmul(&g.adjoint());
        let n = m.dim();
        for i in 0..n {
            m[(i, i)] = C64::new(m[(i, i)].re + regularization, 0.0);
        }
        let tr = m.trace_re();
        Self::new(HermitianMatrix::new_unchecked(m.scale(1.0 / tr)))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.matrix.matrix()
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum.eigenvalues
    }

    pub fn trace(&self) -> f64 {
        self.matrix.matrix().trace_re()
    }

    /// Kronecker product `self (x) other`, composite index `j1 * d2 + j2`.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        let (d1, d2) = (self.dim(), other.dim());
        let mut m = ComplexMatrix::zeros(d1 * d2);
        for a in 0..d1 {
            for b in 0..d1 {
                let x = self.matrix()[(a, b)];
                for c in 0..d2 {
                    for d in 0..d2 {
                        m[(a * d2 + c, b * d2 + d)] = x * other.matrix()[(c, d)];
                    }
                }
            }
        }
        DensityMatrix::new(HermitianMatrix::new_unchecked(m))
    }
}

impl std::ops::Index<(usize, usize)> for DensityMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.matrix[idx]
    }
}

/// Validates a raw complex matrix as a density matrix.
pub fn validate_density(m: &ComplexMatrix, tol: &Tolerances) -> Result<DensityMatrix> {
    let h = HermitianMatrix::with_tolerance(m.clone(), tol.hermiticity)?;
    DensityMatrix::with_tolerances(h, tol)
}

/// Nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(weights, Tolerances::default().trace)
    }

    pub fn with_tolerance(weights: Vec<f64>, tol: f64) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidProbability("empty vector".into()));
        }
        if let Some((k, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !w.is_finite() || **w < 0.0)
        {
            return Err(Error::InvalidProbability(format!("weight {k} is {w}")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > tol {
            return Err(Error::InvalidProbability(format!("weights sum to {sum}")));
        }
        Ok(Self(weights))
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    /// The diagonal of a density matrix: outcome probabilities of a
    /// measurement in the computational basis.
    pub fn from_diagonal_of(rho: &DensityMatrix) -> Self {
        let w: Vec<f64> = (0..rho.dim()).map(|i| rho[(i, i)].re.max(0.0)).collect();
        let s: f64 = w.iter().sum();
        Self(w.into_iter().map(|x| x / s).collect())
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Seed for a reproducible sample stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngSeed(pub u64);

impl RngSeed {
    /// Seed used when none is given on the command line.
    pub const DEFAULT: RngSeed = RngSeed(0xC0FFEE);

    /// Independent sub-seed for work item `index` (SplitMix64 finalizer).
    pub fn derive(self, index: u64) -> RngSeed {
        let mut z = self
            .0
            .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        RngSeed(z ^ (z >> 31))
    }
}

/// Owns a seeded generator and draws random states from it.
#[derive(Debug, Clone)]
pub struct StateSampler {
    rng: ChaCha20Rng,
}

impl StateSampler {
    pub fn new(seed: RngSeed) -> Self {
        Self {
            rng: ChaCha20Rng::seed_from_u64(seed.0),
        }
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn complex_normal(&mut self) -> C64 {
        C64::new(self.normal(), self.normal())
    }

    /// Matrix of independent standard complex Gaussians.
    pub fn ginibre(&mut self, dim: usize) -> ComplexMatrix {
        let data = (0..dim * dim).map(|_| self.complex_normal()).collect();
        ComplexMatrix::from_row_major(dim, data).expect("finite Gaussian draws")
    }

    /// Gaussian Hermitian matrix `(G + G^dagger) / 2`.
    pub fn hermitian(&mut self, dim: usize) -> HermitianMatrix {
        let g = self.ginibre(dim);
        HermitianMatrix::new_unchecked(g.add(&g.adjoint()).scale(0.5))
    }

    /// Haar-random unitary: eigenvectors of a Gaussian Hermitian matrix.
    pub fn unitary(&mut self, dim: usize) -> Result<ComplexMatrix> {
        Ok(eigh(&self.hermitian(dim))?.eigenvectors)
    }

    /// Hilbert-Schmidt random mixed state `G G^dagger / Tr(G G^dagger)`.
    pub fn mixed_hs(&mut self, dim: usize) -> Result<DensityMatrix> {
        check_dim(dim)?;
        let g = self.ginibre(dim);
        DensityMatrix::from_factor(&g, 0.0)
    }

    /// Pure state with a normalized complex Gaussian (Haar) vector.
    pub fn pure(&mut self, dim: usize) -> Result<DensityMatrix> {
        check_dim(dim)?;
        let psi: Vec<C64> = (0..dim).map(|_| self.complex_normal()).collect();
        DensityMatrix::from_pure(&psi)
    }

    /// Dirichlet(1, ..., 1) sample from normalized unit-rate exponentials.
    pub fn dirichlet(&mut self, dim: usize) -> Vec<f64> {
        let e: Vec<f64> = (0..dim).map(|_| self.rng.sample::<f64, _>(Exp1)).collect();
        let s: f64 = e.iter().sum();
        e.into_iter().map(|x| x / s).collect()
    }

    /// Diagonal state whose diagonal is a Dirichlet(1, ..., 1) sample.
    pub fn diagonal(&mut self, dim: usize) -> Result<DensityMatrix> {
        check_dim(dim)?;
        let p = self.dirichlet(dim);
        DensityMatrix::from_diagonal(&p)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::InvalidArgument(format!(
            "state dimension must be at least 2, got {dim}"
        )));
    }
    Ok(())
}

pub fn random_mixed_hs(dim: usize, seed: RngSeed) -> Result<DensityMatrix> {
    StateSampler::new(seed).mixed_hs(dim)
}

pub fn random_pure(dim: usize, seed: RngSeed) -> Result<DensityMatrix> {
    StateSampler::new(seed).pure(dim)
}

pub fn random_diagonal(dim: usize, seed: RngSeed) -> Result<DensityMatrix> {
    StateSampler::new(seed).diagonal(dim)
}

/// Which tensor factor a partial trace removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Partial trace over `subsystem` of a state on `C^d1 (x) C^d2`, with
/// composite index `j = j1 * d2 + j2`.
pub fn partial_trace(
    rho: &DensityMatrix,
    (d1, d2): (usize, usize),
    subsystem: Subsystem,
) -> Result<DensityMatrix> {
    if d1 == 0 || d2 == 0 || d1 * d2 != rho.dim() {
        return Err(Error::InvalidArgument(format!(
            "subsystem dims ({d1}, {d2}) do not factor dimension {}",
            rho.dim()
        )));
    }
    let m = rho.matrix();
    let out = match subsystem {
        Subsystem::Second => {
            let mut r = ComplexMatrix::zeros(d1);
            for j1 in 0..d1 {
                for k1 in 0..d1 {
                    let mut acc = ZERO;
                    for j2 in 0..d2 {
                        acc += m[(j1 * d2 + j2, k1 * d2 + j2)];
                    }
                    r[(j1, k1)] = acc;
                }
            }
            r
        }
        Subsystem::First => {
            let mut r = ComplexMatrix::zeros(d2);
            for j2 in 0..d2 {
                for k2 in 0..d2 {
                    let mut acc = ZERO;
                    for j1 in 0..d1 {
                        acc += m[(j1 * d2 + j2, j1 * d2 + k2)];
                    }
                    r[(j2, k2)] = acc;
                }
            }
            r
        }
    };
    DensityMatrix::new(HermitianMatrix::new_unchecked(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn maximally_mixed_qubit_is_valid() {
        let m = ComplexMatrix::from_diagonal(&[0.5, 0.5]);
        assert!(validate_density(&m, &Tolerances::default()).is_ok());
    }

    #[test]
    fn negative_eigenvalue_reported() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.6, 0.5], vec![0.5, 0.4]]).unwrap();
        match validate_density(&m, &Tolerances::default()) {
            Err(Error::NegativeEigenvalue(v)) => {
                // 0.5 - sqrt(0.26)
                assert_abs_diff_eq!(v, 0.5 - 0.26f64.sqrt(), epsilon = 1e-14);
                assert_abs_diff_eq!(v, -0.0099, epsilon = 1e-4);
            }
            other => panic!("expected NegativeEigenvalue, got {other:?}"),
        }
    }

    #[test]
    fn trace_not_one_reported() {
        let m = ComplexMatrix::from_diagonal(&[1.0, 0.1]);
        match validate_density(&m, &Tolerances::default()) {
            Err(Error::TraceNotOne(t)) => assert_abs_diff_eq!(t, 1.1, epsilon = 1e-15),
            other => panic!("expected TraceNotOne, got {other:?}"),
        }
    }

    #[test]
    fn non_hermitian_reported() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.5, 0.1], vec![0.0, 0.5]]).unwrap();
        assert!(matches!(
            validate_density(&m, &Tolerances::default()),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn samplers_are_deterministic() {
        let a = random_mixed_hs(3, RngSeed(7)).unwrap();
        let b = random_mixed_hs(3, RngSeed(7)).unwrap();
        assert_eq!(a.matrix(), b.matrix());
        let c = random_mixed_hs(3, RngSeed(8)).unwrap();
        assert_ne!(a.matrix(), c.matrix());
    }

    #[test]
    fn hs_states_are_normalized_and_positive() {
        for s in 0..50 {
            let r = random_mixed_hs(2 + s % 5, RngSeed(s as u64)).unwrap();
            assert_abs_diff_eq!(r.trace(), 1.0, epsilon = 1e-12);
            assert!(r.spectrum().min_eigenvalue() >= -1e-12);
        }
    }

    #[test]
    fn pure_states_are_projectors() {
        for s in 0..20 {
            let r = random_pure(4, RngSeed(s)).unwrap();
            let sq = r.matrix().matmul(r.matrix());
            assert!(sq.max_abs_diff(r.matrix()) < 1e-11);
            assert_abs_diff_eq!(r.trace(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn diagonal_states_have_exact_zero_offdiagonals() {
        let r = random_diagonal(5, RngSeed(3)).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    assert_eq!(r[(i, j)], ZERO);
                }
            }
        }
    }

    #[test]
    fn dimension_below_two_is_rejected() {
        assert!(matches!(
            random_mixed_hs(1, RngSeed(0)),
            Err(Error::InvalidArgument(_))
        ));
        assert!(random_pure(0, RngSeed(0)).is_err());
        assert!(random_diagonal(1, RngSeed(0)).is_err());
    }

    #[test]
    fn partial_trace_of_maximally_mixed() {
        let r = DensityMatrix::maximally_mixed(4).unwrap();
        let t = partial_trace(&r, (2, 2), Subsystem::Second).unwrap();
        assert!(t.matrix().max_abs_diff(&ComplexMatrix::from_diagonal(&[0.5, 0.5])) < 1e-16);
    }

    #[test]
    fn partial_trace_of_bell_state() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [C64::new(h, 0.0), ZERO, ZERO, C64::new(h, 0.0)];
        let bell = DensityMatrix::from_pure(&psi).unwrap();
        for sub in [Subsystem::First, Subsystem::Second] {
            let t = partial_trace(&bell, (2, 2), sub).unwrap();
            assert!(t.matrix().max_abs_diff(&ComplexMatrix::from_diagonal(&[0.5, 0.5])) < 1e-15);
        }
    }

    #[test]
    fn partial_trace_of_diagonal() {
        let r = DensityMatrix::from_diagonal(&[0.1, 0.2, 0.3, 0.4]).unwrap();
        let t = partial_trace(&r, (2, 2), Subsystem::Second).unwrap();
        assert!(t.matrix().max_abs_diff(&ComplexMatrix::from_diagonal(&[0.3, 0.7])) < 1e-16);
        let t = partial_trace(&r, (2, 2), Subsystem::First).unwrap();
        assert!(t.matrix().max_abs_diff(&ComplexMatrix::from_diagonal(&[0.4, 0.6])) < 1e-15);
    }

    #[test]
    fn partial_trace_dimension_mismatch() {
        let r = DensityMatrix::maximally_mixed(4).unwrap();
        assert!(partial_trace(&r, (2, 3), Subsystem::First).is_err());
    }

    #[test]
    fn product_state_partial_trace_recovers_factor() {
        let a = random_mixed_hs(2, RngSeed(1)).unwrap();
        let b = random_mixed_hs(3, RngSeed(2)).unwrap();
        let ab = a.tensor(&b).unwrap();
        let ra = partial_trace(&ab, (2, 3), Subsystem::Second).unwrap();
        let rb = partial_trace(&ab, (2, 3), Subsystem::First).unwrap();
        assert!(ra.matrix().max_abs_diff(a.matrix()) < 1e-12);
        assert!(rb.matrix().max_abs_diff(b.matrix()) < 1e-12);
    }

    #[test]
    fn probability_vector_validation() {
        assert!(ProbabilityVector::new(vec![0.5, 0.5]).is_ok());
        assert!(ProbabilityVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbabilityVector::new(vec![1.5, -0.5]).is_err());
        assert!(ProbabilityVector::new(vec![]).is_err());
    }

    #[test]
    fn derived_seeds_differ() {
        let s = RngSeed(42);
        assert_ne!(s.derive(0), s.derive(1));
        assert_eq!(s.derive(5), s.derive(5));
    }
}
