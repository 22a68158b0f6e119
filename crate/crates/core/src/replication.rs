//! The named 2⊗2 objects behind the non-self-duality result, built from
//! first principles, and the runner that re-checks every sign claim.
//!
//! The cast: σ, an entanglement-witness candidate that pairs nonnegatively
//! with every product vector yet is not positive semidefinite; θ, the dyad
//! on the unnormalized maximally entangled vector, which is PSD but not
//! separable; η, the prototype entangled pure state λ₁x⊗y + λ₂y⊗x; and
//! classical-quantum states, where an abelian first factor makes every
//! state separable.  Together they certify that the separable cone, unlike
//! the natural cone, fails to be self-dual: ⟨σ,θ⟩ = −2 < 0.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::cones::{self, ConeParams, Verdict};
use crate::error::{Error, Result};
use crate::hs::{hs_inner, kron, outer, CVector, DensityMatrix, HSOperator, PureVector};
use crate::sample;

/// Every number the replication run certifies, in one flat record.
#[derive(Debug, Clone, Serialize)]
pub struct ReplicationReport {
    /// Minimal eigenvalue of σ (−1: σ is not in the natural cone).
    pub sigma_min_eig: f64,
    /// ⟨σ, θ⟩ (−2: the pairing that breaks self-duality).
    pub sigma_theta_pairing: f64,
    /// Minimum of ⟨u⊗v|σ|u⊗v⟩ found by see-saw plus grid (0: σ is in the
    /// dual of the separable cone).
    pub seesaw_min: f64,
    /// PPT minimum of P_η at λ₁ = λ₂ = 1/√2 (−1/2: entangled).
    pub eta_ppt_min: f64,
    /// Separability margin of the unnormalized θ (−1: entangled).
    pub theta_ppt_min: f64,
    /// Fraction of seeded classical-quantum states found separable (1.0).
    pub classical_suite_pass_rate: f64,
}

fn basis(d: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(d);
    v[i] = Complex64::new(1.0, 0.0);
    v
}

/// The witness candidate σ = |f⟩⟨f|⊗|g⟩⟨g| + |g⟩⟨g|⊗|f⟩⟨f| −
/// |f⟩⟨g|⊗|f⟩⟨g| − |g⟩⟨f|⊗|g⟩⟨f| on H₀⊗H₀ with dim H₀ = d0, using the
/// fixed orthonormal pair f = e₁, g = e₂.  For d0 > 2 the construction is
/// padded with zeros outside span{f, g}.
pub fn build_sigma(d0: usize) -> Result<HSOperator> {
    if d0 < 2 {
        return Err(Error::DimensionTooSmall { min: 2, got: d0 });
    }
    let f = basis(d0, 0);
    let g = basis(d0, 1);
    let pf = outer(&f, &f);
    let pg = outer(&g, &g);
    let fg = outer(&f, &g);
    let gf = outer(&g, &f);
    Ok(kron(&pf, &pg) + kron(&pg, &pf) - kron(&fg, &fg) - kron(&gf, &gf))
}

/// The positive counterexample θ = Σ_{a,b ∈ {f,g}} |a⟩⟨b| ⊗ |a⟩⟨b|, which
/// equals the rank-one dyad on the unnormalized entangled vector
/// Ω = f⊗f + g⊗g.  PSD with spectrum {2, 0, …}, yet not separable.
pub fn build_theta(d0: usize) -> Result<HSOperator> {
    if d0 < 2 {
        return Err(Error::DimensionTooSmall { min: 2, got: d0 });
    }
    let f = basis(d0, 0);
    let g = basis(d0, 1);
    let mut theta = HSOperator::zeros(d0 * d0, d0 * d0);
    for a in [&f, &g] {
        for b in [&f, &g] {
            let dyad = outer(a, b);
            theta += kron(&dyad, &dyad);
        }
    }
    Ok(theta)
}

/// The prototype entangled pure state η = λ₁ x⊗y + λ₂ y⊗x (x = e₁,
/// y = e₂), normalized.  Its projector leaves the separable cone as soon
/// as both amplitudes are nonzero, with PPT minimum −|λ₁λ₂|.
pub fn build_eta(
    lambda1: Complex64,
    lambda2: Complex64,
    d1: usize,
    d2: usize,
) -> Result<PureVector> {
    if d1 < 2 || d2 < 2 {
        return Err(Error::DimensionTooSmall {
            min: 2,
            got: d1.min(d2),
        });
    }
    let mut eta = CVector::zeros(d1 * d2);
    // x⊗y occupies index 0·d2 + 1, y⊗x occupies 1·d2 + 0.
    eta[1] = lambda1;
    eta[d2] = lambda2;
    PureVector::normalized(eta)
}

/// Σᵢ pᵢ |i⟩⟨i| ⊗ blockᵢ — the generic state when the first factor is
/// classical (its algebra abelian, i.e. diagonal).
pub fn classical_quantum_state(
    probs: &[f64],
    blocks: &[DensityMatrix],
    dims: (usize, usize),
) -> Result<DensityMatrix> {
    if probs.len() != dims.0 || blocks.len() != probs.len() {
        return Err(Error::InvalidSimplex {
            reason: format!(
                "{} probabilities and {} blocks for a classical factor of dimension {}",
                probs.len(),
                blocks.len(),
                dims.0
            ),
        });
    }
    let mut total = 0.0;
    for &p in probs {
        if p.is_nan() || p < 0.0 {
            return Err(Error::InvalidSimplex {
                reason: format!("negative probability {p}"),
            });
        }
        total += p;
    }
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidSimplex {
            reason: format!("probabilities sum to {total}"),
        });
    }
    let mut m = HSOperator::zeros(dims.0 * dims.1, dims.0 * dims.1);
    for (i, (&p, block)) in probs.iter().zip(blocks).enumerate() {
        if block.dim() != dims.1 {
            return Err(Error::ShapeMismatch {
                left_rows: dims.1,
                left_cols: dims.1,
                right_rows: block.dim(),
                right_cols: block.dim(),
            });
        }
        let label = basis(dims.0, i);
        m += kron(&outer(&label, &label), block.matrix()) * Complex64::new(p, 0.0);
    }
    DensityMatrix::new(m)
}

/// A seeded random classical-quantum state: probabilities uniform on the
/// simplex, blocks from the Ginibre ensemble.
pub fn random_classical_quantum(dims: (usize, usize), seed: u64) -> Result<DensityMatrix> {
    let mut rng = sample::rng_for(sample::subseed(seed, 0));
    let mut probs: Vec<f64> = (0..dims.0)
        .map(|_| -(1.0 - rand::Rng::random::<f64>(&mut rng)).ln())
        .collect();
    let total: f64 = probs.iter().sum();
    for p in &mut probs {
        *p /= total;
    }
    let blocks: Vec<DensityMatrix> = (0..dims.0)
        .map(|i| sample::random_density(dims.1, sample::subseed(seed, 1 + i as u64)))
        .collect::<Result<Vec<_>>>()?;
    classical_quantum_state(&probs, &blocks, dims)
}

/// Runs `cases` seeded classical-quantum states through the separability
/// test, alternating between 2⊗2 and 2⊗3 (both PPT-decisive, so no
/// verdict can come back inconclusive).  Returns the member fraction.
pub fn classical_pass_rate(cases: usize, params: &ConeParams) -> Result<f64> {
    if cases == 0 {
        return Ok(1.0);
    }
    // The verdict at decisive dimensions never depends on the
    // certificate-upgrade search, so cap its budget for throughput.
    let quick = ConeParams {
        dec_iters: params.dec_iters.min(60),
        ..*params
    };
    let members: Vec<bool> = (0..cases)
        .into_par_iter()
        .map(|i| -> Result<bool> {
            let dims = if i % 2 == 0 { (2, 2) } else { (2, 3) };
            let state =
                random_classical_quantum(dims, sample::subseed(params.seed, 0xC1A0 + i as u64))?;
            let verdict = cones::in_sep_cone(state.matrix(), dims, &quick)?;
            Ok(verdict.verdict == Verdict::Member)
        })
        .collect::<Result<Vec<_>>>()?;
    let passes = members.iter().filter(|&&m| m).count();
    Ok(passes as f64 / cases as f64)
}

fn claim(name: &str, ok: bool, value: f64) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::ReplicationFailure {
            claim: name.to_string(),
            value,
        })
    }
}

/// Builds σ, θ, and η on a d0-dimensional single factor, re-derives every
/// sign claim through the cones module, and returns the certified numbers.
/// Any violated claim aborts with the offending value.
pub fn run_replication(d0: usize, params: &ConeParams) -> Result<ReplicationReport> {
    let sigma = build_sigma(d0)?;
    let theta = build_theta(d0)?;
    let dims = (d0, d0);

    let natural = cones::in_natural_cone(&sigma, params.tol)?;
    claim(
        "sigma lies outside the natural cone",
        natural.verdict == Verdict::NonMember,
        natural.margin,
    )?;
    let sigma_min_eig = natural.margin;

    let pairing = hs_inner(&sigma, &theta)?;
    claim(
        "sigma/theta pairing is real",
        pairing.im.abs() <= 1e-12,
        pairing.im,
    )?;
    claim(
        "sigma pairs negatively with theta",
        pairing.re < 0.0,
        pairing.re,
    )?;
    let sigma_theta_pairing = pairing.re;

    let dual = cones::in_dual_sep_cone(&sigma, dims, params)?;
    claim(
        "sigma lies in the dual of the separable cone",
        dual.verdict != Verdict::NonMember && dual.margin >= -params.tol,
        dual.margin,
    )?;
    let seesaw_min = dual.margin;

    let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let eta = build_eta(amp, amp, d0, d0)?;
    let eta_verdict = cones::in_sep_cone(&eta.projector(), dims, params)?;
    claim(
        "the balanced eta projector is entangled",
        eta_verdict.verdict == Verdict::NonMember,
        eta_verdict.margin,
    )?;
    let eta_ppt_min = eta_verdict.margin;

    let theta_verdict = cones::in_sep_cone(&theta, dims, params)?;
    claim(
        "theta is entangled",
        theta_verdict.verdict == Verdict::NonMember,
        theta_verdict.margin,
    )?;
    let theta_ppt_min = theta_verdict.margin;

    let classical_suite_pass_rate = classical_pass_rate(200, params)?;
    claim(
        "every classical-quantum state is separable",
        classical_suite_pass_rate == 1.0,
        classical_suite_pass_rate,
    )?;

    Ok(ReplicationReport {
        sigma_min_eig,
        sigma_theta_pairing,
        seesaw_min,
        eta_ppt_min,
        theta_ppt_min,
        classical_suite_pass_rate,
    })
}
