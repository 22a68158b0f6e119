//! Standard forms of matrix algebras: the quadruple (K, M, P, ϱ^(1/2)).
//!
//! For a faithful reference density ϱ on H, the Hilbert-Schmidt space K
//! carries the algebra M acting by left multiplication, the natural cone
//! P = closure{ϱ^(1/4) a ϱ^(1/4) : a ≥ 0} (in finite dimensions this is
//! exactly the PSD operators), and the distinguished cone vector ϱ^(1/2).
//! The composite of two standard forms uses the product reference state,
//! whose distinguished vector factorizes as ϱ₁^(1/2) ⊗ ϱ₂^(1/2).
//!
//! The algebra M is never materialized; it acts through [`left_multiply`].
//! Only the *reference* state must be faithful — [`representative_vector`]
//! accepts arbitrary densities, since every PSD matrix has a PSD square
//! root.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hs::{
    self, hermitian_eig, kron, mat_power, require_hermitian, DensityMatrix, HSOperator, Power,
};
use crate::tol;

/// The standard form (K, M, P, ϱ^(1/2)) of one matrix algebra, anchored at a
/// faithful reference state.
#[derive(Debug, Clone)]
pub struct StandardForm {
    dim: usize,
    rho: DensityMatrix,
    rho_quarter: HSOperator,
    rho_half: HSOperator,
    floor: f64,
}

impl StandardForm {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    /// ϱ^(1/4), the cone-map factor.
    pub fn rho_quarter(&self) -> &HSOperator {
        &self.rho_quarter
    }

    /// ϱ^(1/2), the distinguished vector of the natural cone.
    pub fn rho_half(&self) -> &HSOperator {
        &self.rho_half
    }

    /// The faithfulness floor this form was built with.
    pub fn floor(&self) -> f64 {
        self.floor
    }
}

/// The standard form of a composite system, with the product reference
/// state ϱ₁⊗ϱ₂ and distinguished vector ϱ₁^(1/2) ⊗ ϱ₂^(1/2).
#[derive(Debug, Clone)]
pub struct CompositeForm {
    left: StandardForm,
    right: StandardForm,
    dim: usize,
    rho_half: HSOperator,
}

impl CompositeForm {
    pub fn left(&self) -> &StandardForm {
        &self.left
    }

    pub fn right(&self) -> &StandardForm {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho_half(&self) -> &HSOperator {
        &self.rho_half
    }

    /// The product reference density ϱ₁⊗ϱ₂.
    pub fn rho(&self) -> DensityMatrix {
        DensityMatrix::project(&kron(self.left.rho().matrix(), self.right.rho().matrix()))
            .expect("product of densities is a density")
    }
}

/// Assembles the quadruple for a faithful reference state.  Faithfulness is
/// quantitative: the minimal eigenvalue must clear `floor`, which also keeps
/// the inverse quarter powers used in cone-surjectivity arguments
/// well-conditioned.  Pass [`tol::FAITHFULNESS_FLOOR`] unless a test demands
/// otherwise.
pub fn make_standard_form(rho: DensityMatrix, floor: f64) -> Result<StandardForm> {
    let (values, _) = hermitian_eig(rho.matrix())?;
    if values[0] < floor {
        return Err(Error::NotFaithful {
            min_eigenvalue: values[0],
            floor,
        });
    }
    let rho_quarter = mat_power(rho.matrix(), Power::Quarter)?;
    let rho_half = mat_power(rho.matrix(), Power::Half)?;
    Ok(StandardForm {
        dim: rho.dim(),
        rho,
        rho_quarter,
        rho_half,
        floor,
    })
}

/// Gibbs state exp(-βH)/Z of a Hermitian Hamiltonian.  Eigenvalues are
/// shifted by the ground energy before exponentiating, so Z never overflows;
/// every output eigenvalue is strictly positive as long as β·(spectral
/// spread) stays within the range of the exponential.
pub fn gibbs_state(hamiltonian: &HSOperator, beta: f64) -> Result<DensityMatrix> {
    require_hermitian(hamiltonian, tol::OPERATOR_PRECHECK)?;
    if beta.is_nan() || beta < 0.0 {
        return Err(Error::NegativeBeta { beta });
    }
    let (values, vectors) = hermitian_eig(hamiltonian)?;
    let ground = values[0];
    let weights: Vec<f64> = values
        .iter()
        .map(|&e| (-beta * (e - ground)).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    let diag = HSOperator::from_diagonal(&nalgebra::DVector::from_iterator(
        weights.len(),
        weights.iter().map(|&w| Complex64::new(w / z, 0.0)),
    ));
    let m = &vectors * diag * vectors.adjoint();
    DensityMatrix::new((&m + m.adjoint()) * Complex64::new(0.5, 0.0))
}

/// The natural-cone map a ↦ ϱ^(1/4) a ϱ^(1/4) for PSD a.  With a faithful
/// reference the image over all PSD a is the whole PSD cone of K.
pub fn cone_map(sf: &StandardForm, a: &HSOperator) -> Result<HSOperator> {
    hs::require_psd(a, tol::OPERATOR_PRECHECK)?;
    if a.nrows() != sf.dim {
        return Err(Error::ShapeMismatch {
            left_rows: sf.dim,
            left_cols: sf.dim,
            right_rows: a.nrows(),
            right_cols: a.ncols(),
        });
    }
    Ok(sf.rho_quarter() * a * sf.rho_quarter())
}

/// The unique natural-cone vector representing a state as a vector state:
/// the PSD square root of its density matrix.  For every Hermitian A,
/// (v, A·v) = Tr(A d) with v = representative_vector(d).
pub fn representative_vector(d: &DensityMatrix) -> HSOperator {
    mat_power(d.matrix(), Power::Half).expect("density matrices are PSD")
}

/// The algebra element a acting on the K vector v by left multiplication.
pub fn left_multiply(a: &HSOperator, v: &HSOperator) -> Result<HSOperator> {
    if a.ncols() != v.nrows() {
        return Err(Error::ShapeMismatch {
            left_rows: a.nrows(),
            left_cols: a.ncols(),
            right_rows: v.nrows(),
            right_cols: v.ncols(),
        });
    }
    Ok(a * v)
}

/// The composite standard form of two factors.  Its distinguished vector is
/// the Kronecker product of the factors' distinguished vectors, and agrees
/// with building a standard form from ϱ₁⊗ϱ₂ directly.
pub fn make_composite(sf1: StandardForm, sf2: StandardForm) -> CompositeForm {
    let rho_half = kron(sf1.rho_half(), sf2.rho_half());
    let dim = sf1.dim() * sf2.dim();
    CompositeForm {
        left: sf1,
        right: sf2,
        dim,
        rho_half,
    }
}
