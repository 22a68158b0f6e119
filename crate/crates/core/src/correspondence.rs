//! The separable-decomposition ↔ cone-vector correspondence.
//!
//! A separable state is a convex combination Σ λᵢ ωᵢ of product states; in
//! cone language each product state is carried by a simple tensor xᵢ⊗yᵢ of
//! positive operators.  This module moves between the three pictures of
//! such a state — the decomposition itself, the density matrix on H₁⊗H₂ it
//! synthesizes, and the density operator ϱ₀ = Σ λᵢ |xᵢ⊗yᵢ⟩⟨xᵢ⊗yᵢ| on the
//! doubled space K — and verifies that product expectations agree across
//! all three.  It also implements the strict-positivity pairings and the
//! rescaling that renormalizes a raw cone-vector sum Σ λ⁰ᵢ xᵢ⊗yᵢ into the
//! form Σ λᵢ (xᵢ⊗yᵢ, v) xᵢ⊗yᵢ, and runs the square-root membership
//! experiment: given a separable density, is its unique cone representative
//! (the PSD square root) itself in the separable cone?  That last question
//! is *recorded*, never asserted — the experiment is the deliverable.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cones::{in_sep_cone, ConeParams, ConeVerdict, Verdict, WitnessCertificate};
use crate::error::{Error, Result};
use crate::hs::{
    self, check_bipartite, hs_inner, hs_norm, kron, rank_one_hs, require_hermitian, DensityMatrix,
    HSOperator,
};
use crate::json::MatrixJson;
use crate::sample;
use crate::standard_form::representative_vector;
use crate::tol;

/// One term (λ, x, y) of a decomposition: a positive weight and a pair of
/// nonzero PSD operators on the two factors.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionTerm {
    lambda: f64,
    #[serde(with = "crate::json::matrix_fmt")]
    x: HSOperator,
    #[serde(with = "crate::json::matrix_fmt")]
    y: HSOperator,
}

impl DecompositionTerm {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn x(&self) -> &HSOperator {
        &self.x
    }

    pub fn y(&self) -> &HSOperator {
        &self.y
    }

    /// The simple tensor x⊗y this term contributes to the cone vector.
    pub fn simple_tensor(&self) -> HSOperator {
        kron(&self.x, &self.y)
    }
}

/// A validated separable decomposition.  `normalized` distinguishes the
/// state form (weights sum to one, every x and y of unit Hilbert-Schmidt
/// norm) from a raw cone-vector sum with free positive weights.
#[derive(Debug, Clone, Serialize)]
pub struct SeparableDecomposition {
    normalized: bool,
    terms: Vec<DecompositionTerm>,
}

impl SeparableDecomposition {
    pub fn new(terms: Vec<(f64, HSOperator, HSOperator)>, normalized: bool) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::NoTermsRequested);
        }
        let d1 = terms[0].1.nrows();
        let d2 = terms[0].2.nrows();
        let mut weight_sum = 0.0;
        let mut built = Vec::with_capacity(terms.len());
        for (index, (lambda, x, y)) in terms.into_iter().enumerate() {
            if !(lambda.is_finite() && lambda > 0.0) {
                return Err(Error::NonPositiveWeight {
                    index,
                    weight: lambda,
                });
            }
            if x.nrows() != d1 || y.nrows() != d2 {
                return Err(Error::ShapeMismatch {
                    left_rows: d1,
                    left_cols: d2,
                    right_rows: x.nrows(),
                    right_cols: y.nrows(),
                });
            }
            hs::require_psd(&x, tol::OPERATOR_PRECHECK)?;
            hs::require_psd(&y, tol::OPERATOR_PRECHECK)?;
            let (nx, ny) = (hs_norm(&x), hs_norm(&y));
            if nx <= tol::STRICT_POSITIVITY_FLOOR || ny <= tol::STRICT_POSITIVITY_FLOOR {
                return Err(Error::ZeroTerm { index });
            }
            if normalized {
                if (nx - 1.0).abs() > tol::DENSITY_INVARIANT {
                    return Err(Error::NonUnitTerm { index, norm: nx });
                }
                if (ny - 1.0).abs() > tol::DENSITY_INVARIANT {
                    return Err(Error::NonUnitTerm { index, norm: ny });
                }
            }
            weight_sum += lambda;
            built.push(DecompositionTerm { lambda, x, y });
        }
        if normalized && (weight_sum - 1.0).abs() > tol::DENSITY_INVARIANT {
            return Err(Error::UnnormalizedDecomposition { weight_sum });
        }
        Ok(Self {
            normalized,
            terms: built,
        })
    }

    pub fn normalized(&self) -> bool {
        self.normalized
    }

    pub fn terms(&self) -> &[DecompositionTerm] {
        &self.terms
    }

    /// Factor dimensions (d1, d2).
    pub fn dims(&self) -> (usize, usize) {
        (self.terms[0].x.nrows(), self.terms[0].y.nrows())
    }

    /// The cone vector Σ λᵢ xᵢ⊗yᵢ the terms sum to.
    pub fn cone_vector(&self) -> HSOperator {
        let (d1, d2) = self.dims();
        let mut v = HSOperator::zeros(d1 * d2, d1 * d2);
        for t in &self.terms {
            v += t.simple_tensor() * Complex64::new(t.lambda, 0.0);
        }
        v
    }
}

/// A density operator on the doubled space K, assembled from non-orthogonal
/// rank-one dyads — a convex decomposition, not a spectral one.
#[derive(Debug, Clone)]
pub struct KDensity {
    dims: (usize, usize),
    entries: HSOperator,
}

impl KDensity {
    /// Dimension of K = HS(H₁⊗H₂), i.e. (d1·d2)².
    pub fn dim_k(&self) -> usize {
        self.entries.nrows()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn matrix(&self) -> &HSOperator {
        &self.entries
    }
}

/// The density matrix on H₁⊗H₂ synthesized by a normalized decomposition:
/// Σ λᵢ (xᵢxᵢ†)⊗(yᵢyᵢ†).  Each unit-norm PSD xᵢ carries the state with
/// density xᵢxᵢ†, so the output is separable by construction.
pub fn state_from_decomposition(dec: &SeparableDecomposition) -> Result<DensityMatrix> {
    if !dec.normalized() {
        let weight_sum = dec.terms().iter().map(|t| t.lambda()).sum();
        return Err(Error::UnnormalizedDecomposition { weight_sum });
    }
    let (d1, d2) = dec.dims();
    let n = d1 * d2;
    let mut m = HSOperator::zeros(n, n);
    for t in dec.terms() {
        let dx = t.x() * t.x().adjoint();
        let dy = t.y() * t.y().adjoint();
        m += kron(&dx, &dy) * Complex64::new(t.lambda(), 0.0);
    }
    DensityMatrix::project(&m)
}

/// The K-level density ϱ₀ = Σ λᵢ |xᵢ⊗yᵢ⟩⟨xᵢ⊗yᵢ| of a normalized
/// decomposition.  The dyads need not be orthogonal, so the λᵢ are *not*
/// eigenvalues of the result in general.
pub fn k_density_from_decomposition(dec: &SeparableDecomposition) -> Result<KDensity> {
    if !dec.normalized() {
        let weight_sum = dec.terms().iter().map(|t| t.lambda()).sum();
        return Err(Error::UnnormalizedDecomposition { weight_sum });
    }
    let (d1, d2) = dec.dims();
    let nk = (d1 * d2) * (d1 * d2);
    let mut entries = HSOperator::zeros(nk, nk);
    for t in dec.terms() {
        let w = t.simple_tensor();
        entries += rank_one_hs(&w, &w)? * Complex64::new(t.lambda(), 0.0);
    }
    let trace = entries.trace();
    if (trace.re - 1.0).abs() > tol::DENSITY_INVARIANT || trace.im.abs() > tol::DENSITY_INVARIANT {
        return Err(Error::TraceNotOne { trace: trace.re });
    }
    Ok(KDensity {
        dims: (d1, d2),
        entries,
    })
}

/// Product expectation straight from the decomposition:
/// Σᵢ λᵢ (xᵢ, A xᵢ)(yᵢ, B yᵢ).
pub fn expectation_via_decomposition(
    dec: &SeparableDecomposition,
    a: &HSOperator,
    b: &HSOperator,
) -> Result<f64> {
    require_hermitian(a, tol::OPERATOR_PRECHECK)?;
    require_hermitian(b, tol::OPERATOR_PRECHECK)?;
    let (d1, d2) = dec.dims();
    if a.nrows() != d1 || b.nrows() != d2 {
        return Err(Error::ShapeMismatch {
            left_rows: d1,
            left_cols: d2,
            right_rows: a.nrows(),
            right_cols: b.nrows(),
        });
    }
    let mut total = Complex64::new(0.0, 0.0);
    for t in dec.terms() {
        let ax = hs_inner(t.x(), &(a * t.x()))?;
        let by = hs_inner(t.y(), &(b * t.y()))?;
        total += ax * by * Complex64::new(t.lambda(), 0.0);
    }
    Ok(total.re)
}

/// The matrix of the map μ ↦ m·μ on K in the row-major flattening.  This is
/// the concrete form of an algebra element acting on the doubled space.
pub fn left_multiplication_superoperator(m: &HSOperator) -> Result<HSOperator> {
    let n = hs::require_square(m)?;
    Ok(kron(m, &HSOperator::identity(n, n)))
}

/// Product expectation through the K-level density: Tr_K(ϱ₀ · L_{A⊗B}),
/// the trace taken over the doubled space against the explicit
/// left-multiplication superoperator.
pub fn expectation_via_k_density(rho0: &KDensity, a: &HSOperator, b: &HSOperator) -> Result<f64> {
    require_hermitian(a, tol::OPERATOR_PRECHECK)?;
    require_hermitian(b, tol::OPERATOR_PRECHECK)?;
    let (d1, d2) = rho0.dims();
    if a.nrows() != d1 || b.nrows() != d2 {
        return Err(Error::ShapeMismatch {
            left_rows: d1,
            left_cols: d2,
            right_rows: a.nrows(),
            right_cols: b.nrows(),
        });
    }
    let l = left_multiplication_superoperator(&kron(a, b))?;
    Ok((rho0.matrix() * l).trace().re)
}

/// The pairings (v, xᵢ⊗yᵢ) of a cone vector against each simple tensor of
/// the decomposition.  For v assembled from the decomposition itself every
/// pairing is strictly positive — a zero would force the corresponding term
/// to vanish.
pub fn strict_positivity_check(dec: &SeparableDecomposition, v: &HSOperator) -> Result<Vec<f64>> {
    let (d1, d2) = dec.dims();
    check_bipartite(v, (d1, d2))?;
    let mut pairings = Vec::with_capacity(dec.terms().len());
    for t in dec.terms() {
        pairings.push(hs_inner(&t.simple_tensor(), v)?.re);
    }
    Ok(pairings)
}

/// A raw cone-vector sum v = Σ λ⁰ᵢ xᵢ⊗yᵢ rewritten in the rescaled form
/// v = Σ λᵢ (xᵢ⊗yᵢ, v) xᵢ⊗yᵢ with λᵢ = λ⁰ᵢ / (xᵢ⊗yᵢ, v).
#[derive(Debug, Clone, Serialize)]
pub struct RescaledDecomposition {
    /// The rescaled weights λᵢ.
    pub weights: Vec<f64>,
    /// The strictly positive pairings (xᵢ⊗yᵢ, v).
    pub pairings: Vec<f64>,
    /// The raw terms (λ⁰ᵢ, xᵢ, yᵢ) the vector was assembled from.
    pub terms: Vec<DecompositionTerm>,
    /// The cone vector v itself.
    #[serde(with = "crate::json::matrix_fmt")]
    pub cone_vector: HSOperator,
}

impl RescaledDecomposition {
    /// Σ λᵢ (xᵢ⊗yᵢ, v) xᵢ⊗yᵢ — reproduces the cone vector exactly, since
    /// λᵢ·(xᵢ⊗yᵢ, v) = λ⁰ᵢ by construction.
    pub fn resynthesize(&self) -> HSOperator {
        let n = self.cone_vector.nrows();
        let mut v = HSOperator::zeros(n, n);
        for (i, t) in self.terms.iter().enumerate() {
            v += t.simple_tensor() * Complex64::new(self.weights[i] * self.pairings[i], 0.0);
        }
        v
    }
}

/// Performs the rescaling on raw terms (λ⁰ᵢ, xᵢ, yᵢ).  A nonpositive
/// pairing would contradict strict positivity and is reported as an error.
pub fn rescale_decomposition(
    raw_terms: &[(f64, HSOperator, HSOperator)],
) -> Result<RescaledDecomposition> {
    let dec = SeparableDecomposition::new(raw_terms.to_vec(), false)?;
    let v = dec.cone_vector();
    let pairings = strict_positivity_check(&dec, &v)?;
    let mut weights = Vec::with_capacity(pairings.len());
    for (index, (&p, t)) in pairings.iter().zip(dec.terms()).enumerate() {
        if p <= 0.0 {
            return Err(Error::PairingNotPositive { index, value: p });
        }
        weights.push(t.lambda() / p);
    }
    Ok(RescaledDecomposition {
        weights,
        pairings,
        terms: dec.terms().to_vec(),
        cone_vector: v,
    })
}

/// One line of the square-root membership experiment report.
#[derive(Debug, Clone, Serialize)]
pub struct SqrtMembershipRecord {
    /// Truncated SHA-256 of the input density in the matrix wire format.
    pub input_hash: String,
    pub dims: (usize, usize),
    /// Margin of the separability certification of the *input*.
    pub input_margin: f64,
    /// Verdict for the PSD square root of the input.
    pub verdict: Verdict,
    pub margin: f64,
    pub certificate: WitnessCertificate,
}

/// Hash used to key experiment records to their inputs.
pub fn matrix_digest(m: &HSOperator) -> String {
    let text = serde_json::to_string(&MatrixJson::from_matrix(m)).expect("serialization");
    let digest = Sha256::digest(text.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// The membership experiment: certify the input separable, take its unique
/// cone representative (the PSD square root on H₁⊗H₂), and test *that* for
/// separable-cone membership.  The verdict is recorded whichever way it
/// falls; rejecting uncertified input is the only failure mode.
pub fn experiment_sqrt_membership(
    d: &DensityMatrix,
    dims: (usize, usize),
    params: &ConeParams,
) -> Result<SqrtMembershipRecord> {
    check_bipartite(d.matrix(), dims)?;
    let input_verdict: ConeVerdict = in_sep_cone(d.matrix(), dims, params)?;
    if input_verdict.verdict != Verdict::Member {
        return Err(Error::InputNotSeparable {
            margin: input_verdict.margin,
        });
    }
    let root = representative_vector(d);
    let sqrt_verdict = in_sep_cone(&root, dims, params)?;
    Ok(SqrtMembershipRecord {
        input_hash: matrix_digest(d.matrix()),
        dims,
        input_margin: input_verdict.margin,
        verdict: sqrt_verdict.verdict,
        margin: sqrt_verdict.margin,
        certificate: sqrt_verdict.certificate,
    })
}

/// Seeded random normalized decomposition: unit-norm PSD factors and
/// exponential weights normalized to the simplex.
pub fn random_decomposition(
    dims: (usize, usize),
    terms: usize,
    seed: u64,
) -> Result<SeparableDecomposition> {
    if terms == 0 {
        return Err(Error::NoTermsRequested);
    }
    let (d1, d2) = dims;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw_weights = Vec::with_capacity(terms);
    for _ in 0..terms {
        let u: f64 = rng.random();
        raw_weights.push(-(1.0 - u).ln());
    }
    let total: f64 = raw_weights.iter().sum();
    let mut tuples = Vec::with_capacity(terms);
    for (i, w) in raw_weights.into_iter().enumerate() {
        let x = unit_psd(d1, sample::subseed(seed, 2 * i as u64 + 1))?;
        let y = unit_psd(d2, sample::subseed(seed, 2 * i as u64 + 2))?;
        tuples.push((w / total, x, y));
    }
    SeparableDecomposition::new(tuples, true)
}

fn unit_psd(dim: usize, seed: u64) -> Result<HSOperator> {
    let m = sample::random_psd(dim, seed)?;
    let norm = hs_norm(&m);
    Ok(m / Complex64::new(norm, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::ppt_min_eigenvalue;
    use crate::fixtures;
    use crate::hs::{
        flatten, hermitian_eig, max_abs_diff, partial_transpose, PureVector, Subsystem,
    };

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn projector_term(dim: usize, index: usize) -> HSOperator {
        PureVector::basis_state(dim, index).unwrap().projector()
    }

    #[test]
    fn single_term_state_is_the_product() {
        let x = projector_term(2, 0);
        let y = projector_term(2, 1);
        let dec = SeparableDecomposition::new(vec![(1.0, x.clone(), y.clone())], true).unwrap();
        let d = state_from_decomposition(&dec).unwrap();
        assert!(max_abs_diff(d.matrix(), &kron(&x, &y)) < 1e-14);
    }

    #[test]
    fn two_orthogonal_terms_average() {
        let t0 = (0.5, projector_term(2, 0), projector_term(2, 0));
        let t1 = (0.5, projector_term(2, 1), projector_term(2, 1));
        let dec = SeparableDecomposition::new(vec![t0.clone(), t1.clone()], true).unwrap();
        let d = state_from_decomposition(&dec).unwrap();
        let expect = (kron(&t0.1, &t0.2) + kron(&t1.1, &t1.2)) * c(0.5);
        assert!(max_abs_diff(d.matrix(), &expect) < 1e-14);
    }

    #[test]
    fn random_states_pass_the_decisive_oracle() {
        for case in 0..10 {
            let dec = random_decomposition((2, 2), 4, 900 + case).unwrap();
            let d = state_from_decomposition(&dec).unwrap();
            let m = ppt_min_eigenvalue(d.matrix(), (2, 2)).unwrap();
            assert!(m > -1e-10, "case {case}: PPT min {m:e}");
        }
    }

    #[test]
    fn unnormalized_input_is_rejected_where_required() {
        let dec = SeparableDecomposition::new(
            vec![(2.0, projector_term(2, 0), projector_term(2, 0))],
            false,
        )
        .unwrap();
        assert!(matches!(
            state_from_decomposition(&dec),
            Err(Error::UnnormalizedDecomposition { .. })
        ));
        assert!(matches!(
            k_density_from_decomposition(&dec),
            Err(Error::UnnormalizedDecomposition { .. })
        ));
    }

    #[test]
    fn k_density_of_single_term_is_a_projector() {
        let dec = SeparableDecomposition::new(
            vec![(1.0, projector_term(2, 0), projector_term(2, 1))],
            true,
        )
        .unwrap();
        let rho0 = k_density_from_decomposition(&dec).unwrap();
        assert_eq!(rho0.dim_k(), 16);
        let m = rho0.matrix();
        assert!(max_abs_diff(&(m * m), m) < 1e-12);
        assert!((m.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn k_density_orthogonal_terms_have_weight_eigenvalues() {
        let t0 = (0.5, projector_term(2, 0), projector_term(2, 0));
        let t1 = (0.5, projector_term(2, 1), projector_term(2, 1));
        let dec = SeparableDecomposition::new(vec![t0, t1], true).unwrap();
        let rho0 = k_density_from_decomposition(&dec).unwrap();
        let (values, _) = hermitian_eig(rho0.matrix()).unwrap();
        assert!((values[15] - 0.5).abs() < 1e-12);
        assert!((values[14] - 0.5).abs() < 1e-12);
        assert!(values[13].abs() < 1e-12);
    }

    #[test]
    fn k_density_non_orthogonal_terms_break_weight_spectrum() {
        // Overlapping dyads: the convex weights (1/2, 1/2) are not the
        // spectrum — the block-diagonal form is a convex resolution, not a
        // spectral one.
        let plus = PureVector::normalized(crate::hs::CVector::from_vec(vec![c(1.0), c(1.0)]))
            .unwrap()
            .projector();
        let t0 = (0.5, projector_term(2, 0), projector_term(2, 0));
        let t1 = (0.5, plus.clone(), plus);
        let dec = SeparableDecomposition::new(vec![t0, t1], true).unwrap();
        let rho0 = k_density_from_decomposition(&dec).unwrap();
        let (values, _) = hermitian_eig(rho0.matrix()).unwrap();
        let top_two = [values[15], values[14]];
        assert!((top_two[0] - 0.5).abs() > 1e-3, "spectrum {top_two:?}");
        assert!((top_two[0] + top_two[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expectations_agree_three_ways() {
        for case in 0..10 {
            let seed = 1700 + case;
            let dec = random_decomposition((2, 3), 4, seed).unwrap();
            let a = sample::random_hermitian(2, seed ^ 0x51);
            let b = sample::random_hermitian(3, seed ^ 0x52);
            let via_dec = expectation_via_decomposition(&dec, &a, &b).unwrap();
            let rho0 = k_density_from_decomposition(&dec).unwrap();
            let via_k = expectation_via_k_density(&rho0, &a, &b).unwrap();
            let d = state_from_decomposition(&dec).unwrap();
            let via_trace = (d.matrix() * kron(&a, &b)).trace().re;
            let scale = 1.0 + via_trace.abs();
            assert!((via_dec - via_k).abs() < 1e-10 * scale, "case {case}");
            assert!((via_dec - via_trace).abs() < 1e-10 * scale, "case {case}");
        }
    }

    #[test]
    fn identity_expectation_is_one() {
        let dec = random_decomposition((2, 2), 5, 31).unwrap();
        let id2 = HSOperator::identity(2, 2);
        let e = expectation_via_decomposition(&dec, &id2, &id2).unwrap();
        assert!((e - 1.0).abs() < 1e-12);
        let rho0 = k_density_from_decomposition(&dec).unwrap();
        let ek = expectation_via_k_density(&rho0, &id2, &id2).unwrap();
        assert!((ek - 1.0).abs() < 1e-10);
    }

    #[test]
    fn superoperator_realizes_left_multiplication() {
        let m = sample::random_hermitian(4, 8);
        let v = sample::random_psd(4, 9).unwrap();
        let l = left_multiplication_superoperator(&m).unwrap();
        let lhs = &l * flatten(&v);
        let rhs = flatten(&(&m * &v));
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn strict_positivity_single_term() {
        let x = projector_term(2, 0);
        let y = projector_term(2, 1);
        let dec = SeparableDecomposition::new(vec![(1.0, x, y)], false).unwrap();
        let v = dec.cone_vector();
        let pairings = strict_positivity_check(&dec, &v).unwrap();
        assert_eq!(pairings.len(), 1);
        assert!((pairings[0] - 1.0).abs() < 1e-12); // ‖x⊗y‖² for unit terms
    }

    #[test]
    fn strict_positivity_random_decompositions() {
        for case in 0..20 {
            let dec = random_decomposition((2, 2), 6, 2500 + case).unwrap();
            let v = dec.cone_vector();
            for (i, p) in strict_positivity_check(&dec, &v)
                .unwrap()
                .into_iter()
                .enumerate()
            {
                assert!(
                    p > tol::STRICT_POSITIVITY_FLOOR,
                    "case {case} term {i}: {p:e}"
                );
            }
        }
    }

    #[test]
    fn rescaling_resynthesizes_exactly() {
        for case in 0..10 {
            let mut raw = Vec::new();
            let mut rng = ChaCha8Rng::seed_from_u64(3100 + case);
            for i in 0..4 {
                let lambda0 = 0.1 + rng.random::<f64>();
                let x = sample::random_psd(2, sample::subseed(3100 + case, 10 + i)).unwrap();
                let y = sample::random_psd(2, sample::subseed(3100 + case, 20 + i)).unwrap();
                raw.push((lambda0, x, y));
            }
            let rescaled = rescale_decomposition(&raw).unwrap();
            let back = rescaled.resynthesize();
            assert!(
                max_abs_diff(&back, &rescaled.cone_vector)
                    < tol::RESYNTHESIS * (1.0 + hs_norm(&rescaled.cone_vector)),
                "case {case}"
            );
            for (&w, &p) in rescaled.weights.iter().zip(&rescaled.pairings) {
                assert!(p > 0.0 && w > 0.0);
            }
        }
    }

    #[test]
    fn rescaling_two_orthogonal_terms() {
        let raw = vec![
            (0.7, projector_term(2, 0), projector_term(2, 0)),
            (0.3, projector_term(2, 1), projector_term(2, 1)),
        ];
        let rescaled = rescale_decomposition(&raw).unwrap();
        // Orthogonal simple tensors: pairing_i = λ⁰ᵢ‖xᵢ⊗yᵢ‖² = λ⁰ᵢ.
        assert!((rescaled.pairings[0] - 0.7).abs() < 1e-14);
        assert!((rescaled.pairings[1] - 0.3).abs() < 1e-14);
        assert!((rescaled.weights[0] - 1.0).abs() < 1e-14);
        assert!((rescaled.weights[1] - 1.0).abs() < 1e-14);
        let back = rescaled.resynthesize();
        assert!(max_abs_diff(&back, &rescaled.cone_vector) < 1e-15);
    }

    #[test]
    fn rescaling_rejects_nonpositive_weight() {
        let raw = vec![(0.0, projector_term(2, 0), projector_term(2, 0))];
        assert!(matches!(
            rescale_decomposition(&raw),
            Err(Error::NonPositiveWeight { .. })
        ));
    }

    #[test]
    fn sqrt_experiment_on_product_state() {
        let dec = SeparableDecomposition::new(
            vec![(1.0, projector_term(2, 0), projector_term(2, 1))],
            true,
        )
        .unwrap();
        let d = state_from_decomposition(&dec).unwrap();
        let record = experiment_sqrt_membership(&d, (2, 2), &ConeParams::default()).unwrap();
        assert_eq!(record.verdict, Verdict::Member);
        assert_eq!(record.input_hash.len(), 16);
    }

    #[test]
    fn sqrt_experiment_verdict_matches_ppt_of_root() {
        // ½(P₀⊗P₀ + P₊⊗P₊): at decisive dims the verdict on √d must agree
        // with the sign of the PPT minimum of √d.
        let plus = PureVector::normalized(crate::hs::CVector::from_vec(vec![c(1.0), c(1.0)]))
            .unwrap()
            .projector();
        let dec = SeparableDecomposition::new(
            vec![
                (0.5, projector_term(2, 0), projector_term(2, 0)),
                (0.5, plus.clone(), plus),
            ],
            true,
        )
        .unwrap();
        let d = state_from_decomposition(&dec).unwrap();
        let record = experiment_sqrt_membership(&d, (2, 2), &ConeParams::default()).unwrap();

        let root = representative_vector(&d);
        let normalized = &root * c(1.0 / root.trace().re);
        let pt = partial_transpose(&normalized, (2, 2), Subsystem::Second).unwrap();
        let (values, _) = hermitian_eig(&pt).unwrap();
        let expect = if values[0] >= -1e-9 {
            Verdict::Member
        } else {
            Verdict::NonMember
        };
        assert_eq!(record.verdict, expect);
    }

    #[test]
    fn sqrt_experiment_rejects_entangled_input() {
        let max_entangled = DensityMatrix::new(fixtures::frozen_theta() * c(0.5)).unwrap();
        assert!(matches!(
            experiment_sqrt_membership(&max_entangled, (2, 2), &ConeParams::default()),
            Err(Error::InputNotSeparable { .. })
        ));
    }

    #[test]
    fn digest_is_stable_and_input_sensitive() {
        let a = fixtures::frozen_sigma();
        let b = fixtures::frozen_theta();
        assert_eq!(matrix_digest(&a), matrix_digest(&a));
        assert_ne!(matrix_digest(&a), matrix_digest(&b));
    }
}
