//! Centralized numerical tolerances.
//!
//! Every threshold used by the crate lives here so verdicts are reproducible
//! and the tolerance story is auditable in one place.  The values are chosen
//! for double precision on problems up to a few hundred Hilbert-Schmidt
//! dimensions; eigensolver backward error is ~1e-15 * n * ||A||, so the gaps
//! between these levels leave two to three orders of headroom each.

/// Structural invariants of density matrices (trace one, Hermiticity of
/// freshly constructed states).
pub const DENSITY_INVARIANT: f64 = 1e-12;

/// Pre-checks on operator inputs: Hermiticity defect and PSD floor before an
/// operation that assumes them.
pub const OPERATOR_PRECHECK: f64 = 1e-10;

/// Eigendecomposition acceptance: ||A - V diag(w) V*|| over a unit-scale
/// operator.
pub const EIG_RECONSTRUCTION: f64 = 1e-10;

/// Fractional-power round trips such as (A^(1/2))^2 = A.
pub const POWER_ROUNDTRIP: f64 = 1e-9;

/// Smallest eigenvalue a reference state may have and still count as
/// faithful for standard-form constructions.
pub const FAITHFULNESS_FLOOR: f64 = 1e-9;

/// Default decision tolerance for cone membership verdicts (PPT minima,
/// see-saw minima, dual pairings).
pub const VERDICT: f64 = 1e-9;

/// Residual ||rho - sum_i lambda_i P_i|| below which a separable
/// decomposition search declares success.
pub const DECOMPOSITION_RESIDUAL: f64 = 1e-6;

/// Re-verification of certificates returned by membership tests (pairings,
/// eigenvalues, decomposition residuals recomputed from the certificate).
pub const CERTIFICATE_CHECK: f64 = 1e-8;

/// Below this, an eigenvalue of a purportedly strictly positive operator is
/// treated as a failure of strict positivity.
pub const STRICT_POSITIVITY_FLOOR: f64 = 1e-14;

/// Agreement between a state and its re-synthesis from an exact separable
/// decomposition.
pub const RESYNTHESIS: f64 = 1e-12;
