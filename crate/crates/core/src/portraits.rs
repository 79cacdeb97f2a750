//! Positive trace-preserving "portrait" maps on single-qudit density matrices.
//!
//! A matrix of dimension `N` is split as
//!
//! ```text
//!     | A  B |     A: n_top x n_top
//!     | C  D |     D: m x m,   m <= n_top
//! ```
//!
//! * [`fold_map`] returns `A` with `D` added into its top-left `m x m` corner.
//!   Kraus form: `K0 = P_top`, `K1 = sum_i |i><n_top + i|`.
//! * [`trace_block_map`] returns `[[Tr A, Tr B], [Tr C, Tr D]]`, where the trace
//!   of a rectangular block sums its `min(n_top, m) = m` leading diagonal entries.
//!
//! Outputs are compact; [`embed_padded`] restores the zero-padded `N x N` form.
//! For `N = 4`, `m = 2` the two maps coincide with the partial traces over the
//! first and second qubit respectively.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::matrix::{ComplexMatrix, ZERO};
use crate::states::DensityMatrix;

/// Split of dimension `n_top + m` into the blocks `A` (`n_top`) and `D` (`m`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockPartition {
    n_top: usize,
    m: usize,
}

impl BlockPartition {
    pub fn new(n_top: usize, m: usize) -> Result<Self> {
        if m == 0 || m > n_top {
            return Err(Error::InvalidArgument(format!(
                "block partition ({n_top}, {m}) needs 1 <= m <= n_top"
            )));
        }
        Ok(Self { n_top, m })
    }

    /// Partition of `dim` whose lower block has size `m`.
    pub fn with_lower(dim: usize, m: usize) -> Result<Self> {
        if m >= dim {
            return Err(Error::InvalidArgument(format!(
                "lower block {m} does not fit dimension {dim}"
            )));
        }
        Self::new(dim - m, m)
    }

    /// Partition of `dim` whose upper block has size `n_top`.
    pub fn with_upper(dim: usize, n_top: usize) -> Result<Self> {
        if n_top >= dim {
            return Err(Error::InvalidArgument(format!(
                "upper block {n_top} does not fit dimension {dim}"
            )));
        }
        Self::new(n_top, dim - n_top)
    }

    /// Every valid partition of `dim`: `m = 1 ..= dim / 2`.
    pub fn all(dim: usize) -> Vec<Self> {
        (1..=dim / 2).map(|m| Self { n_top: dim - m, m }).collect()
    }

    pub fn n_top(&self) -> usize {
        self.n_top
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n_top + self.m
    }

    fn check(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch(self.dim(), dim));
        }
        Ok(())
    }
}

/// Which of the two portrait maps to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PortraitKind {
    FoldDiagonalBlocks,
    TraceBlocks,
}

impl PortraitKind {
    pub const ALL: [PortraitKind; 2] = [PortraitKind::FoldDiagonalBlocks, PortraitKind::TraceBlocks];

    pub fn name(self) -> &'static str {
        match self {
            PortraitKind::FoldDiagonalBlocks => "fold",
            PortraitKind::TraceBlocks => "traceblocks",
        }
    }
}

/// A bijection on `{0, ..., N-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexPermutation(Vec<usize>);

impl IndexPermutation {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(Self(perm))
    }

    /// Builds from 1-based labels, e.g. `[2, 1, 3]`.
    pub fn from_one_based(perm: &[usize]) -> Result<Self> {
        if perm.contains(&0) {
            return Err(Error::InvalidArgument("1-based permutation contains 0".into()));
        }
        Self::new(perm.iter().map(|p| p - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Exchange of two (0-based) indices.
    pub fn swap(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut p: Vec<usize> = (0..n).collect();
        if a >= n || b >= n {
            return Err(Error::InvalidArgument(format!("swap ({a}, {b}) out of range {n}")));
        }
        p.swap(a, b);
        Ok(Self(p))
    }

    /// All `n!` permutations in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = IndexPermutation> {
        (0..n).permutations(n).map(IndexPermutation)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|p| p + 1).collect()
    }
}

fn density(m: ComplexMatrix) -> Result<DensityMatrix> {
    DensityMatrix::new(HermitianMatrix::new_unchecked(m))
}

/// `[[A, B], [C, D]] -> A + (D in the top-left corner)`, of size `n_top`.
pub fn fold_map(rho: &DensityMatrix, p: BlockPartition) -> Result<DensityMatrix> {
    density(fold_raw(rho.matrix(), p)?)
}

fn fold_raw(src: &ComplexMatrix, p: BlockPartition) -> Result<ComplexMatrix> {
    p.check(src.dim())?;
    let (n, m) = (p.n_top, p.m);
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = src[(i, j)];
        }
    }
    for i in 0..m {
        for j in 0..m {
            out[(i, j)] += src[(n + i, n + j)];
        }
    }
    Ok(out)
}

/// `[[A, B], [C, D]] -> [[Tr A, Tr B], [Tr C, Tr D]]`.
pub fn trace_block_map(rho: &DensityMatrix, p: BlockPartition) -> Result<DensityMatrix> {
    let src = rho.matrix();
    p.check(src.dim())?;
    let (n, m) = (p.n_top, p.m);
    let mut out = ComplexMatrix::zeros(2);
    out[(0, 0)] = (0..n).map(|i| src[(i, i)]).sum();
    out[(1, 1)] = (0..m).map(|i| src[(n + i, n + i)]).sum();
    let tr_b = (0..m).map(|i| src[(i, n + i)]).fold(ZERO, |a, b| a + b);
    out[(0, 1)] = tr_b;
    out[(1, 0)] = tr_b.conj();
    density(out)
}

/// Applies the chosen portrait map.
pub fn portrait(rho: &DensityMatrix, kind: PortraitKind, p: BlockPartition) -> Result<DensityMatrix> {
    match kind {
        PortraitKind::FoldDiagonalBlocks => fold_map(rho, p),
        PortraitKind::TraceBlocks => trace_block_map(rho, p),
    }
}

/// Places `small` in the top-left corner of a zero `target_dim` matrix.
pub fn embed_padded(small: &DensityMatrix, target_dim: usize) -> Result<DensityMatrix> {
    let n = small.dim();
    if target_dim < n {
        return Err(Error::InvalidArgument(format!(
            "cannot embed dimension {n} into smaller dimension {target_dim}"
        )));
    }
    if target_dim == n {
        return Ok(small.clone());
    }
    let mut out = ComplexMatrix::zeros(target_dim);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = small[(i, j)];
        }
    }
    density(out)
}

/// `result[j][k] = rho[perm(j)][perm(k)]`.
pub fn permute(rho: &DensityMatrix, perm: &IndexPermutation) -> Result<DensityMatrix> {
    density(permute_raw(rho.matrix(), perm)?)
}

fn permute_raw(src: &ComplexMatrix, perm: &IndexPermutation) -> Result<ComplexMatrix> {
    let n = src.dim();
    if perm.len() != n {
        return Err(Error::DimensionMismatch(perm.len(), n));
    }
    let pi = perm.as_slice();
    let mut out = ComplexMatrix::zeros(n);
    for j in 0..n {
        for k in 0..n {
            out[(j, k)] = src[(pi[j], pi[k])];
        }
    }
    Ok(out)
}

/// `[rho, fold(rho), fold(fold(rho)), ...]` down to dimension 2, each fold
/// adding the last diagonal entry into index 1.
pub fn chain(rho: &DensityMatrix) -> Result<Vec<DensityMatrix>> {
    let n = rho.dim();
    if n < 2 {
        return Err(Error::InvalidArgument("chain needs dimension >= 2".into()));
    }
    let mut out = Vec::with_capacity(n - 1);
    out.push(rho.clone());
    for d in (3..=n).rev() {
        let next = fold_map(out.last().expect("non-empty"), BlockPartition::with_lower(d, 1)?)?;
        out.push(next);
    }
    Ok(out)
}

/// Folds down to 2x2 by repeated last-index folds, without validating the
/// intermediate matrices.
fn fold_to_qubit(src: &ComplexMatrix) -> Result<ComplexMatrix> {
    let mut cur = src.clone();
    while cur.dim() > 2 {
        let d = cur.dim();
        cur = fold_raw(&cur, BlockPartition::with_lower(d, 1)?)?;
    }
    Ok(cur)
}

/// Qubit portrait of `rho` under one relabeling of its indices.
pub fn qubit_portrait(rho: &DensityMatrix, perm: &IndexPermutation) -> Result<DensityMatrix> {
    density(fold_to_qubit(&permute_raw(rho.matrix(), perm)?)?)
}

/// The qubit portrait for every one of the `N!` index permutations.
pub fn qubit_portraits(rho: &DensityMatrix) -> Result<Vec<(IndexPermutation, DensityMatrix)>> {
    if rho.dim() < 3 {
        return Err(Error::InvalidArgument("qubit portraits need dimension >= 3".into()));
    }
    IndexPermutation::all(rho.dim())
        .map(|p| {
            let q = qubit_portrait(rho, &p)?;
            Ok((p, q))
        })
        .collect()
}

/// One representative permutation per distinct qubit portrait.
///
/// The folded 2x2 matrix depends only on the ordered pair `(perm(1), perm(2))`:
/// its entries are `rho[a][b]`, `rho[b][b]` and `1 - rho[b][b]` in the corner.
/// This yields `N (N - 1)` permutations instead of `N!`.
pub fn distinct_portrait_permutations(n: usize) -> Vec<IndexPermutation> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1));
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let mut p = vec![a, b];
            p.extend((0..n).filter(|&k| k != a && k != b));
            out.push(IndexPermutation(p));
        }
    }
    out
}
