//! Randomized property suites behind the `suite` command: seeded, tallied,
//! and deterministic for a fixed seed regardless of thread count.
//!
//! Each suite replays one of the laboratory's structural guarantees over
//! `cases` random instances — Hilbert-Schmidt identities, representative
//! round trips, the two equivalent expectation formulas, strict positivity
//! with rescaling, classical-state separability, and dual-cone pairings.
//! The classical suite needs a PPT-decisive dimension pair to promise a
//! perfect pass rate, so at other dimensions it falls back to alternating
//! 2⊗2 and 2⊗3 instances.

use rayon::prelude::*;
use serde::Serialize;

use crate::cones::{self, ConeParams, Verdict};
use crate::correspondence::{
    expectation_via_decomposition, expectation_via_k_density, k_density_from_decomposition,
    random_decomposition, rescale_decomposition, state_from_decomposition, strict_positivity_check,
};
use crate::error::Result;
use crate::hs::{
    hs_inner, hs_norm, kron, max_abs_diff, partial_trace, partial_transpose, Subsystem,
};
use crate::replication;
use crate::sample::{self, subseed};
use crate::standard_form::representative_vector;

/// Tally for one property suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub cases: usize,
    pub passes: usize,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.passes == self.cases
    }
}

/// All tallies of one run, plus the verdict the exit code is read from.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub dims: (usize, usize),
    pub seed: u64,
    pub cases: usize,
    pub suites: Vec<SuiteOutcome>,
    pub all_passed: bool,
}

fn tally<F>(name: &str, cases: usize, check: F) -> Result<SuiteOutcome>
where
    F: Fn(usize) -> Result<bool> + Sync,
{
    let outcomes: Vec<bool> = (0..cases)
        .into_par_iter()
        .map(&check)
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteOutcome {
        name: name.to_string(),
        cases,
        passes: outcomes.iter().filter(|&&ok| ok).count(),
    })
}

/// Runs every suite with per-case seeds derived from `params.seed` and
/// returns the tallies.
pub fn run_suite(dims: (usize, usize), cases: usize, params: &ConeParams) -> Result<SuiteReport> {
    let (d1, d2) = dims;
    let n = d1 * d2;
    let seed = params.seed;
    let mut suites = Vec::new();

    suites.push(tally("hs_identities", cases, |i| {
        let s = subseed(seed, 0x100 + i as u64);
        let a = sample::ginibre(n, subseed(s, 0))?;
        let b = sample::ginibre(n, subseed(s, 1))?;
        let symmetric =
            (hs_inner(&a, &b)? - hs_inner(&b, &a)?.conj()).norm() <= 1e-12 * (1.0 + hs_norm(&a));
        let involution = max_abs_diff(
            &partial_transpose(
                &partial_transpose(&a, dims, Subsystem::Second)?,
                dims,
                Subsystem::Second,
            )?,
            &a,
        ) == 0.0;
        let x = sample::random_psd(d1, subseed(s, 2))?;
        let y = sample::random_psd(d2, subseed(s, 3))?;
        let reduced = partial_trace(&kron(&x, &y), dims, Subsystem::First)?;
        let marginal = max_abs_diff(&reduced, &(&x * y.trace())) <= 1e-12 * (1.0 + hs_norm(&x));
        Ok(symmetric && involution && marginal)
    })?);

    suites.push(tally("representative_round_trip", cases, |i| {
        let s = subseed(seed, 0x200 + i as u64);
        let d = sample::random_density(n, subseed(s, 0))?;
        let v = representative_vector(&d);
        let round_trip = hs_norm(&(&v * &v - d.matrix())) <= 1e-9;
        let a = sample::random_hermitian(n, subseed(s, 1));
        let vector_side = hs_inner(&v, &(&a * &v))?.re;
        let trace_side = (d.matrix() * &a).trace().re;
        Ok(round_trip && (vector_side - trace_side).abs() <= 1e-10)
    })?);

    suites.push(tally("correspondence_agreement", cases, |i| {
        let s = subseed(seed, 0x300 + i as u64);
        let dec = random_decomposition(dims, 4, subseed(s, 0))?;
        let a = sample::random_hermitian(d1, subseed(s, 1));
        let b = sample::random_hermitian(d2, subseed(s, 2));
        let via_terms = expectation_via_decomposition(&dec, &a, &b)?;
        let via_k = expectation_via_k_density(&k_density_from_decomposition(&dec)?, &a, &b)?;
        let state = state_from_decomposition(&dec)?;
        let via_trace = (state.matrix() * kron(&a, &b)).trace().re;
        Ok((via_terms - via_k).abs() <= 1e-10 && (via_terms - via_trace).abs() <= 1e-10)
    })?);

    suites.push(tally("strict_positivity_rescaling", cases, |i| {
        let s = subseed(seed, 0x400 + i as u64);
        let dec = random_decomposition(dims, 4, subseed(s, 0))?;
        let v = dec.cone_vector();
        let pairings = strict_positivity_check(&dec, &v)?;
        let strictly_positive = pairings.iter().all(|&p| p > 1e-14);
        let tuples: Vec<_> = dec
            .terms()
            .iter()
            .map(|t| (t.lambda(), t.x().clone(), t.y().clone()))
            .collect();
        let rescaled = rescale_decomposition(&tuples)?;
        let resynthesis = hs_norm(&(rescaled.resynthesize() - &v)) <= 1e-12;
        Ok(strictly_positive && resynthesis)
    })?);

    suites.push(tally("classical_separability", cases, |i| {
        let case_dims = if cones::ppt_is_decisive(dims) {
            dims
        } else if i % 2 == 0 {
            (2, 2)
        } else {
            (2, 3)
        };
        let quick = ConeParams {
            dec_iters: params.dec_iters.min(60),
            ..*params
        };
        let state =
            replication::random_classical_quantum(case_dims, subseed(seed, 0x500 + i as u64))?;
        let verdict = cones::in_sep_cone(state.matrix(), case_dims, &quick)?;
        Ok(verdict.verdict == Verdict::Member)
    })?);

    suites.push(tally("dual_pairing", cases, |i| {
        let s = subseed(seed, 0x600 + i as u64);
        let member = random_decomposition(dims, 3, subseed(s, 0))?.cone_vector();
        let witness = if d1 == d2 && d1 >= 2 {
            replication::build_sigma(d1)?
        } else {
            sample::random_psd(n, subseed(s, 1))?
        };
        Ok(hs_inner(&member, &witness)?.re >= -1e-9)
    })?);

    let all_passed = suites.iter().all(SuiteOutcome::passed);
    Ok(SuiteReport {
        dims,
        seed,
        cases,
        suites,
        all_passed,
    })
}
