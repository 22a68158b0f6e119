//! A finite-dimensional numerical laboratory for the cone-theoretic view of
//! quantum separability.
//!
//! The objects: the Hilbert-Schmidt space K of operators on a
//! finite-dimensional Hilbert space, the standard form (K, M, P, ϱ^(1/2))
//! built from a faithful reference state, the natural cone P (concretely:
//! the PSD operators viewed as vectors in K), and the separable sub-cone
//! P₁⊗P₂ spanned by simple tensors of positive operators.  The crate tests
//! membership in these cones, searches for explicit separable
//! decompositions and witness certificates, evaluates product-state
//! expectations both through decompositions and through a density operator
//! on the doubled space K, and reconstructs a concrete 2⊗2 witness pair
//! showing that P₁⊗P₂, unlike P, is not self-dual.
//!
//! Everything is dense, double-precision, and deterministically seeded.

pub mod cones;
pub mod correspondence;
pub mod error;
pub mod hs;
pub mod json;
pub mod replication;
pub mod sample;
pub mod standard_form;
pub mod suite;
pub mod tol;

#[cfg(test)]
pub(crate) mod fixtures;

pub use cones::{ConeParams, ConeVerdict, SearchOutcome, Verdict, WitnessCertificate};
pub use correspondence::{KDensity, RescaledDecomposition, SeparableDecomposition};
pub use error::{Error, Result};
pub use hs::{CVector, DensityMatrix, HSOperator, Power, PureVector, Subsystem};
pub use replication::ReplicationReport;
pub use standard_form::{CompositeForm, StandardForm};
pub use suite::{SuiteOutcome, SuiteReport};
