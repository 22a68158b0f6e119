//! Dense complex linear algebra over finite-dimensional Hilbert spaces and
//! the Hilbert-Schmidt space built on them.
//!
//! An operator is "a vector" here: the d×d complex matrices with the inner
//! product (a, b) = Tr a†b form a Hilbert space K, and most of the crate
//! works with operators in that role.  This module supplies the primitives
//! everything else builds on: the inner product, Hermitian
//! eigendecomposition, fractional powers, Kronecker products, rank-one dyads
//! (both on H and on K), partial transpose/trace, and the row-major
//! flattening that identifies K with C^(d²).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// A complex dense matrix regarded as a vector in the Hilbert-Schmidt space.
pub type HSOperator = DMatrix<Complex64>;

/// A raw complex column vector (amplitudes in H, or a flattened K vector).
pub type CVector = DVector<Complex64>;

/// Which tensor factor a partial operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Exponents accepted by [`mat_power`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Power {
    /// Fourth root — the cone-map factor ϱ^(1/4).
    Quarter,
    /// Square root — the representative-vector map ϱ ↦ ϱ^(1/2).
    Half,
}

impl Power {
    fn exponent(self) -> f64 {
        match self {
            Power::Quarter => 0.25,
            Power::Half => 0.5,
        }
    }
}

pub(crate) fn require_square(a: &HSOperator) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    Ok(a.nrows())
}

/// Largest entrywise deviation from Hermiticity, max_ij |a_ij - conj(a_ji)|.
/// Callers must pass a square matrix.
pub fn hermitian_defect(a: &HSOperator) -> f64 {
    let mut worst = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            let d = (a[(i, j)] - a[(j, i)].conj()).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Rejects non-square or non-Hermitian input.  The comparison is written so
/// that NaN entries fail rather than sneak through.
pub fn require_hermitian(a: &HSOperator, tolerance: f64) -> Result<()> {
    require_square(a)?;
    let defect = hermitian_defect(a);
    if defect.is_nan() || defect > tolerance {
        return Err(Error::NotHermitian { defect });
    }
    Ok(())
}

/// Rejects input whose minimal eigenvalue lies below -tolerance (includes
/// the Hermiticity precheck of [`hermitian_eig`]).
pub fn require_psd(a: &HSOperator, tolerance: f64) -> Result<()> {
    let (values, _) = hermitian_eig(a)?;
    if values[0] < -tolerance {
        return Err(Error::NotPsd {
            min_eigenvalue: values[0],
        });
    }
    Ok(())
}

/// Largest entrywise modulus of the difference of two equal-shape matrices.
pub fn max_abs_diff(a: &HSOperator, b: &HSOperator) -> f64 {
    let mut worst = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        let d = (x - y).norm();
        if d > worst {
            worst = d;
        }
    }
    worst
}

/// Hilbert-Schmidt inner product (a, b) = Tr a†b.
pub fn hs_inner(a: &HSOperator, b: &HSOperator) -> Result<Complex64> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            left_rows: a.nrows(),
            left_cols: a.ncols(),
            right_rows: b.nrows(),
            right_cols: b.ncols(),
        });
    }
    Ok(a.dotc(b))
}

/// Hilbert-Schmidt (Frobenius) norm, sqrt of (a, a).
pub fn hs_norm(a: &HSOperator) -> f64 {
    a.norm()
}

/// Eigendecomposition of a Hermitian matrix: eigenvalues ascending, matching
/// orthonormal eigenvectors as columns.  Each column's phase is fixed so its
/// first significant entry is real positive, which keeps outputs
/// reproducible byte-for-byte across runs.
pub fn hermitian_eig(a: &HSOperator) -> Result<(DVector<f64>, HSOperator)> {
    require_hermitian(a, tol::OPERATOR_PRECHECK)?;
    let n = a.nrows();
    // Symmetrize before handing to the solver so the up-to-1e-10 defect the
    // precheck allows cannot perturb the decomposition.
    let sym = (a + a.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = sym.symmetric_eigen();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let values = DVector::from_fn(n, |k, _| eig.eigenvalues[order[k]]);
    let mut vectors = HSOperator::zeros(n, n);
    for (k, &src) in order.iter().enumerate() {
        let mut col = eig.eigenvectors.column(src).clone_owned();
        phase_fix(&mut col);
        vectors.set_column(k, &col);
    }
    Ok((values, vectors))
}

/// Rotate a vector's global phase so its first entry of modulus > 1e-8 is
/// real positive.  Unit vectors always have such an entry.
pub(crate) fn phase_fix(v: &mut CVector) {
    for i in 0..v.len() {
        let m = v[i].norm();
        if m > 1e-8 {
            let correction = v[i].conj() / Complex64::new(m, 0.0);
            for k in 0..v.len() {
                v[k] *= correction;
            }
            return;
        }
    }
}

/// Fractional power of a PSD matrix via its eigendecomposition.  Eigenvalues
/// in [-1e-10, 0) are rounding noise and get clamped to zero; anything more
/// negative means the input was genuinely indefinite and is rejected.
pub fn mat_power(a: &HSOperator, p: Power) -> Result<HSOperator> {
    let (values, vectors) = hermitian_eig(a)?;
    let n = values.len();
    let mut powered = DVector::zeros(n);
    for (i, &w) in values.iter().enumerate() {
        if w < -tol::OPERATOR_PRECHECK {
            return Err(Error::NotPsd { min_eigenvalue: w });
        }
        powered[i] = w.max(0.0).powf(p.exponent());
    }
    let diag = HSOperator::from_diagonal(&powered.map(|w| Complex64::new(w, 0.0)));
    let m = &vectors * diag * vectors.adjoint();
    // Exact Hermiticity of the result, not just up to solver noise.
    Ok((&m + m.adjoint()) * Complex64::new(0.5, 0.0))
}

/// Kronecker product; realizes ⊗ both on H₁⊗H₂ and on K₁⊗K₂.
pub fn kron(a: &HSOperator, b: &HSOperator) -> HSOperator {
    a.kronecker(b)
}

/// Outer product |x⟩⟨y| of raw vectors (no norm requirement).
pub fn outer(x: &CVector, y: &CVector) -> HSOperator {
    x * y.adjoint()
}

/// Dyad |x⟩⟨y| on H for unit vectors; a projector when x = y.
pub fn rank_one_pure(x: &PureVector, y: &PureVector) -> Result<HSOperator> {
    if x.dim() != y.dim() {
        return Err(Error::ShapeMismatch {
            left_rows: x.dim(),
            left_cols: 1,
            right_rows: y.dim(),
            right_cols: 1,
        });
    }
    Ok(outer(x.vector(), y.vector()))
}

/// Dyad |x⟩⟨y| on K: the operator z ↦ (y, z)·x on Hilbert-Schmidt space,
/// materialized as an (nm)×(nm) matrix acting on row-major flattenings.
pub fn rank_one_hs(x: &HSOperator, y: &HSOperator) -> Result<HSOperator> {
    if x.shape() != y.shape() {
        return Err(Error::ShapeMismatch {
            left_rows: x.nrows(),
            left_cols: x.ncols(),
            right_rows: y.nrows(),
            right_cols: y.ncols(),
        });
    }
    Ok(outer(&flatten(x), &flatten(y)))
}

/// Row-major flattening of a matrix into a vector; the concrete isomorphism
/// K ≅ C^(rows·cols) under which hs_inner becomes the Euclidean product.
pub fn flatten(a: &HSOperator) -> CVector {
    let cols = a.ncols();
    CVector::from_fn(a.nrows() * cols, |k, _| a[(k / cols, k % cols)])
}

/// Inverse of [`flatten`].
pub fn unflatten(v: &CVector, rows: usize, cols: usize) -> Result<HSOperator> {
    if v.len() != rows * cols {
        return Err(Error::EntryCountMismatch {
            expected: rows * cols,
            got: v.len(),
        });
    }
    Ok(HSOperator::from_fn(rows, cols, |i, j| v[i * cols + j]))
}

pub(crate) fn check_bipartite(a: &HSOperator, dims: (usize, usize)) -> Result<()> {
    let n = require_square(a)?;
    let (d1, d2) = dims;
    if d1 == 0 || d2 == 0 {
        return Err(Error::DimensionTooSmall { min: 1, got: 0 });
    }
    if n != d1 * d2 {
        return Err(Error::SizeMismatch { size: n, d1, d2 });
    }
    Ok(())
}

/// Transpose one tensor factor of an operator on H₁⊗H₂.  Involutive and
/// trace-preserving; the separability oracle lives on top of this.
pub fn partial_transpose(
    a: &HSOperator,
    dims: (usize, usize),
    which: Subsystem,
) -> Result<HSOperator> {
    check_bipartite(a, dims)?;
    let (d1, d2) = dims;
    let n = d1 * d2;
    Ok(HSOperator::from_fn(n, n, |row, col| {
        let (i1, i2) = (row / d2, row % d2);
        let (j1, j2) = (col / d2, col % d2);
        match which {
            Subsystem::First => a[(j1 * d2 + i2, i1 * d2 + j2)],
            Subsystem::Second => a[(i1 * d2 + j2, j1 * d2 + i2)],
        }
    }))
}

/// Trace out one tensor factor, leaving the marginal on the kept one.
pub fn partial_trace(a: &HSOperator, dims: (usize, usize), keep: Subsystem) -> Result<HSOperator> {
    check_bipartite(a, dims)?;
    let (d1, d2) = dims;
    Ok(match keep {
        Subsystem::First => HSOperator::from_fn(d1, d1, |i, j| {
            (0..d2).map(|k| a[(i * d2 + k, j * d2 + k)]).sum()
        }),
        Subsystem::Second => HSOperator::from_fn(d2, d2, |i, j| {
            (0..d1).map(|k| a[(k * d2 + i, k * d2 + j)]).sum()
        }),
    })
}

/// A validated density matrix: Hermitian, PSD, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: HSOperator,
}

impl DensityMatrix {
    /// Validates all three invariants at 1e-12 and takes ownership.
    pub fn new(mat: HSOperator) -> Result<Self> {
        let n = require_square(&mat)?;
        if n == 0 {
            return Err(Error::DimensionTooSmall { min: 1, got: 0 });
        }
        let defect = hermitian_defect(&mat);
        if defect.is_nan() || defect > tol::DENSITY_INVARIANT {
            return Err(Error::NotHermitian { defect });
        }
        let trace = mat.trace();
        if !((trace.re - 1.0).abs() <= tol::DENSITY_INVARIANT
            && trace.im.abs() <= tol::DENSITY_INVARIANT)
        {
            return Err(Error::TraceNotOne { trace: trace.re });
        }
        let (values, _) = hermitian_eig(&mat)?;
        if values[0] < -tol::DENSITY_INVARIANT {
            return Err(Error::NotPsd {
                min_eigenvalue: values[0],
            });
        }
        Ok(Self { mat })
    }

    /// Repairs an approximately-PSD matrix into a valid density: symmetrize,
    /// clamp eigenvalue noise in [-1e-10, 0) to zero, renormalize the trace.
    /// Rejects genuinely indefinite or traceless input.  Used where a cone
    /// element arrives at operator tolerance (1e-10) but a strict density
    /// (1e-12) is needed downstream.
    pub fn project(mat: &HSOperator) -> Result<Self> {
        require_hermitian(mat, tol::OPERATOR_PRECHECK)?;
        let (values, vectors) = hermitian_eig(mat)?;
        let mut clamped = DVector::zeros(values.len());
        let mut total = 0.0;
        for (i, &w) in values.iter().enumerate() {
            if w < -tol::OPERATOR_PRECHECK {
                return Err(Error::NotPsd { min_eigenvalue: w });
            }
            clamped[i] = w.max(0.0);
            total += clamped[i];
        }
        if total <= tol::STRICT_POSITIVITY_FLOOR {
            return Err(Error::ZeroVector);
        }
        let diag = HSOperator::from_diagonal(&clamped.map(|w| Complex64::new(w / total, 0.0)));
        let m = &vectors * diag * vectors.adjoint();
        let sym = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(Self { mat: sym })
    }

    /// The density |v⟩⟨v| of a pure state.
    pub fn from_pure(v: &PureVector) -> Self {
        Self {
            mat: outer(v.vector(), v.vector()),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &HSOperator {
        &self.mat
    }

    pub fn into_matrix(self) -> HSOperator {
        self.mat
    }
}

/// A unit vector in H.
#[derive(Debug, Clone, PartialEq)]
pub struct PureVector {
    vec: CVector,
}

impl PureVector {
    /// Validates unit norm at 1e-12 and takes ownership.
    pub fn new(vec: CVector) -> Result<Self> {
        if vec.is_empty() {
            return Err(Error::DimensionTooSmall { min: 1, got: 0 });
        }
        let norm = vec.norm();
        let deviation = (norm - 1.0).abs();
        if deviation.is_nan() || deviation > tol::DENSITY_INVARIANT {
            return Err(Error::NotUnitNorm { norm });
        }
        Ok(Self { vec })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(vec: CVector) -> Result<Self> {
        if vec.is_empty() {
            return Err(Error::DimensionTooSmall { min: 1, got: 0 });
        }
        let norm = vec.norm();
        if norm <= tol::STRICT_POSITIVITY_FLOOR {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            vec: vec / Complex64::new(norm, 0.0),
        })
    }

    /// The standard basis vector e_index.
    pub fn basis_state(dim: usize, index: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionTooSmall { min: 1, got: 0 });
        }
        assert!(
            index < dim,
            "basis index {index} out of range for dim {dim}"
        );
        Ok(Self {
            vec: CVector::from_fn(dim, |i, _| {
                if i == index {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }),
        })
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    pub fn vector(&self) -> &CVector {
        &self.vec
    }

    /// The rank-one projector |v⟩⟨v|.
    pub fn projector(&self) -> HSOperator {
        outer(&self.vec, &self.vec)
    }
}
