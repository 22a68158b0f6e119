//! Seeded random ensembles: Ginibre densities, Haar-ish pure vectors and
//! unitaries, Hermitian test operators.
//!
//! Every generator takes an explicit 64-bit seed and is deterministic for a
//! fixed seed, so stochastic tests and suites replay exactly.  Derived
//! streams (per-case seeds inside a suite) come from [`subseed`], which
//! scrambles (seed, stream index) into a fresh seed.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::hs::{CVector, DensityMatrix, HSOperator, PureVector};

pub(crate) fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// A square matrix of independent standard complex Gaussians.
pub fn ginibre(dim: usize, seed: u64) -> Result<HSOperator> {
    if dim == 0 {
        return Err(Error::DimensionTooSmall { min: 1, got: 0 });
    }
    let mut rng = rng_for(seed);
    // Row-major fill so the stream order matches the external data layout.
    let mut m = HSOperator::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = gaussian(&mut rng);
        }
    }
    Ok(m)
}

/// Ginibre density: G G† normalized to unit trace.  Full rank with
/// probability one, so outputs are almost surely faithful.
pub fn random_density(dim: usize, seed: u64) -> Result<DensityMatrix> {
    let g = ginibre(dim, seed)?;
    let m = &g * g.adjoint();
    let m = symmetrize(&m);
    let trace = m.trace().re;
    DensityMatrix::new(m / Complex64::new(trace, 0.0))
}

/// Unnormalized random PSD operator G G†.
pub fn random_psd(dim: usize, seed: u64) -> Result<HSOperator> {
    let g = ginibre(dim, seed)?;
    Ok(symmetrize(&(&g * g.adjoint())))
}

/// Random Hermitian operator (G + G†)/2.
pub fn random_hermitian(dim: usize, seed: u64) -> HSOperator {
    let g = ginibre(dim, seed).expect("dim validated by caller");
    symmetrize(&g)
}

/// Haar-distributed unit vector: normalized complex Gaussian.
pub fn random_pure(dim: usize, seed: u64) -> Result<PureVector> {
    if dim == 0 {
        return Err(Error::DimensionTooSmall { min: 1, got: 0 });
    }
    let mut rng = rng_for(seed);
    let v = CVector::from_fn(dim, |_, _| gaussian(&mut rng));
    PureVector::normalized(v)
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal's
/// phases absorbed into Q.
pub fn random_unitary(dim: usize, seed: u64) -> Result<HSOperator> {
    let g = ginibre(dim, seed)?;
    let qr = g.qr();
    let r = qr.r();
    let phases = DVector::from_fn(dim, |i, _| {
        let d = r[(i, i)];
        let m = d.norm();
        if m > 0.0 {
            d / Complex64::new(m, 0.0)
        } else {
            Complex64::new(1.0, 0.0)
        }
    });
    Ok(qr.q() * HSOperator::from_diagonal(&phases))
}

/// Scrambles a base seed and a stream index into an independent-looking
/// derived seed (splitmix64 finalizer).
pub fn subseed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn symmetrize(m: &HSOperator) -> HSOperator {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}
