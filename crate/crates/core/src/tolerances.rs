/// Numerical thresholds shared across the crate.
///
/// `Default` gives the values every public function without an explicit
/// tolerance argument uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Maximum `|H[j][k] - conj(H[k][j])|` accepted as Hermitian.
    pub hermiticity: f64,
    /// Maximum reconstruction/unitarity residual of an eigendecomposition.
    pub eig_residual: f64,
    /// Eigenvalues at or below this are treated as zero (`0 ln 0 = 0`).
    pub eig_zero: f64,
    /// Smallest eigenvalue a density matrix may have is `-psd`.
    pub psd: f64,
    /// Allowed deviation of a trace (or probability sum) from 1.
    pub trace: f64,
    /// Weight on a null eigenvector of `sigma` above which `S(rho||sigma)` is `+inf`.
    pub support: f64,
    /// An inequality holds when `lhs - rhs >= -gap`.
    pub gap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity: 1e-10,
            eig_residual: 1e-10,
            eig_zero: 1e-12,
            psd: 1e-10,
            trace: 1e-10,
            support: 1e-10,
            gap: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn with_gap(mut self, gap: f64) -> Self {
        self.gap = gap;
        self
    }
}
