//! Hand-expanded 2⊗2 matrices frozen as independent oracles for unit tests.
//!
//! These are written out entry by entry, on purpose: construction code
//! elsewhere in the crate is checked *against* these literals, so they must
//! not be produced by that same code.  Basis order is the product basis
//! {ff, fg, gf, gg} with f = e₁, g = e₂.

use num_complex::Complex64;

use crate::hs::HSOperator;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The dual-cone witness: |f⟩⟨f|⊗|g⟩⟨g| + |g⟩⟨g|⊗|f⟩⟨f| − |f⟩⟨g|⊗|f⟩⟨g|
/// − |g⟩⟨f|⊗|g⟩⟨f|, expanded by hand to +1 at (fg,fg), (gf,gf) and −1 at
/// (ff,gg), (gg,ff).  Spectrum (−1, 1, 1, 1), trace 2.
pub(crate) fn frozen_sigma() -> HSOperator {
    let mut m = HSOperator::zeros(4, 4);
    m[(1, 1)] = c(1.0);
    m[(2, 2)] = c(1.0);
    m[(0, 3)] = c(-1.0);
    m[(3, 0)] = c(-1.0);
    m
}

/// The natural-cone element outside the separable sub-cone: |Ω⟩⟨Ω| with
/// Ω = ff + gg (unnormalized).  Spectrum (2, 0, 0, 0), trace 2.
pub(crate) fn frozen_theta() -> HSOperator {
    let mut m = HSOperator::zeros(4, 4);
    m[(0, 0)] = c(1.0);
    m[(0, 3)] = c(1.0);
    m[(3, 0)] = c(1.0);
    m[(3, 3)] = c(1.0);
    m
}

/// The singlet projector |ψ⁻⟩⟨ψ⁻|, ψ⁻ = (fg − gf)/√2.
pub(crate) fn singlet_projector() -> HSOperator {
    let mut m = HSOperator::zeros(4, 4);
    m[(1, 1)] = c(0.5);
    m[(2, 2)] = c(0.5);
    m[(1, 2)] = c(-0.5);
    m[(2, 1)] = c(-0.5);
    m
}
