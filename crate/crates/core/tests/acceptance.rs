//! Acceptance gate: the eleven claims the laboratory certifies, each
//! printed as a single PASS/FAIL line with the measured value.  The
//! process exits nonzero if any criterion fails, so `cargo test` treats
//! this target like any other.

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use num_complex::Complex64;

use conelab_core::cones::{
    in_dual_sep_cone, in_natural_cone, in_sep_cone, ppt_min_eigenvalue, werner_state, ConeParams,
    Verdict,
};
use conelab_core::correspondence::{
    expectation_via_decomposition, expectation_via_k_density, experiment_sqrt_membership,
    k_density_from_decomposition, random_decomposition, rescale_decomposition,
    state_from_decomposition, strict_positivity_check,
};
use conelab_core::hs::{hs_inner, hs_norm, kron};
use conelab_core::replication::{build_eta, build_sigma, build_theta, classical_pass_rate};
use conelab_core::sample;
use conelab_core::standard_form::representative_vector;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("01 non-self-duality pairing", c01_pairing),
        ("02 dual-cone membership of sigma", c02_dual_membership),
        ("03 sigma outside the natural cone", c03_sigma_spectrum),
        ("04 proper inclusion via theta", c04_theta_gap),
        ("05 pure-entanglement family", c05_eta_family),
        ("06 classical-subsystem collapse", c06_classical),
        ("07 expectation-formula agreement", c07_correspondence),
        ("08 strict positivity and rescaling", c08_rescaling),
        ("09 representative round-trip", c09_round_trip),
        ("10 Werner oracle sanity", c10_werner),
        ("11 square-root membership experiment", c11_sqrt_experiment),
    ];
    let mut failures = 0usize;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}  [{detail}]"),
            Err(why) => {
                println!("FAIL  {name}  [{why}]");
                failures += 1;
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}

fn c01_pairing() -> Check {
    let sigma = build_sigma(2).map_err(|e| e.to_string())?;
    let theta = build_theta(2).map_err(|e| e.to_string())?;
    let pairing = hs_inner(&sigma, &theta).map_err(|e| e.to_string())?;
    if (pairing.re + 2.0).abs() <= 1e-10 && pairing.im.abs() <= 1e-12 {
        Ok(format!("(sigma, theta) = {:.12e}", pairing.re))
    } else {
        Err(format!("(sigma, theta) = {pairing} instead of -2"))
    }
}

fn c02_dual_membership() -> Check {
    let sigma = build_sigma(2).map_err(|e| e.to_string())?;
    let verdict =
        in_dual_sep_cone(&sigma, (2, 2), &ConeParams::default()).map_err(|e| e.to_string())?;
    if verdict.verdict == Verdict::Member && verdict.margin.abs() <= 1e-8 {
        Ok(format!(
            "min over product vectors = {:.3e} with 64 restarts plus grid",
            verdict.margin
        ))
    } else {
        Err(format!(
            "verdict {:?} with margin {:.3e}",
            verdict.verdict, verdict.margin
        ))
    }
}

fn c03_sigma_spectrum() -> Check {
    let sigma = build_sigma(2).map_err(|e| e.to_string())?;
    let verdict = in_natural_cone(&sigma, 1e-9).map_err(|e| e.to_string())?;
    if verdict.verdict == Verdict::NonMember && (verdict.margin + 1.0).abs() <= 1e-10 {
        Ok(format!("min eigenvalue = {:.12e}", verdict.margin))
    } else {
        Err(format!(
            "verdict {:?} with min eigenvalue {:.12e}",
            verdict.verdict, verdict.margin
        ))
    }
}

fn c04_theta_gap() -> Check {
    let theta = build_theta(2).map_err(|e| e.to_string())?;
    let natural = in_natural_cone(&theta, 1e-9).map_err(|e| e.to_string())?;
    if natural.verdict != Verdict::Member || natural.margin.abs() > 1e-10 {
        return Err(format!(
            "theta should sit on the natural-cone boundary, margin {:.3e}",
            natural.margin
        ));
    }
    let separable =
        in_sep_cone(&theta, (2, 2), &ConeParams::default()).map_err(|e| e.to_string())?;
    if separable.verdict == Verdict::NonMember && (separable.margin + 1.0).abs() <= 1e-10 {
        Ok(format!(
            "theta in P with margin {:.1e}, outside the separable cone with margin {:.12e}",
            natural.margin, separable.margin
        ))
    } else {
        Err(format!(
            "separable-cone verdict {:?} with margin {:.12e}",
            separable.verdict, separable.margin
        ))
    }
}

fn c05_eta_family() -> Check {
    let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let balanced = build_eta(amp, amp, 2, 2).map_err(|e| e.to_string())?;
    let ppt = ppt_min_eigenvalue(&balanced.projector(), (2, 2)).map_err(|e| e.to_string())?;
    if (ppt + 0.5).abs() > 1e-10 {
        return Err(format!("balanced PPT minimum {ppt:.12e} instead of -1/2"));
    }
    let verdict = in_sep_cone(&balanced.projector(), (2, 2), &ConeParams::default())
        .map_err(|e| e.to_string())?;
    if verdict.verdict != Verdict::NonMember {
        return Err(format!("balanced eta verdict {:?}", verdict.verdict));
    }
    let mut worst = 0.0f64;
    for step in 0..20 {
        let t = (step as f64 + 0.5) / 20.0 * std::f64::consts::FRAC_PI_2;
        let (l1, l2) = (t.cos(), t.sin());
        let eta = build_eta(Complex64::new(l1, 0.0), Complex64::new(l2, 0.0), 2, 2)
            .map_err(|e| e.to_string())?;
        let m = ppt_min_eigenvalue(&eta.projector(), (2, 2)).map_err(|e| e.to_string())?;
        worst = worst.max((m + (l1 * l2).abs()).abs());
    }
    if worst <= 1e-9 {
        Ok(format!(
            "balanced PPT minimum {ppt:.12e}; 20-point sweep deviates from -|l1 l2| by at most {worst:.3e}"
        ))
    } else {
        Err(format!("sweep deviation {worst:.3e} exceeds 1e-9"))
    }
}

fn c06_classical() -> Check {
    let rate = classical_pass_rate(200, &ConeParams::default()).map_err(|e| e.to_string())?;
    if rate == 1.0 {
        Ok("200 classical-quantum states on 2x2 and 2x3, pass rate exactly 1.0".to_string())
    } else {
        Err(format!("pass rate {rate}"))
    }
}

fn c07_correspondence() -> Check {
    let mut worst = 0.0f64;
    for (pair_index, dims) in [(2, 2), (2, 3), (3, 2), (3, 3)].into_iter().enumerate() {
        for case in 0..100u64 {
            let seed = sample::subseed(0x0707, (pair_index as u64) << 32 | case);
            let dec = random_decomposition(dims, 4, seed).map_err(|e| e.to_string())?;
            let a = sample::random_hermitian(dims.0, sample::subseed(seed, 1));
            let b = sample::random_hermitian(dims.1, sample::subseed(seed, 2));
            let via_terms =
                expectation_via_decomposition(&dec, &a, &b).map_err(|e| e.to_string())?;
            let k = k_density_from_decomposition(&dec).map_err(|e| e.to_string())?;
            let via_k = expectation_via_k_density(&k, &a, &b).map_err(|e| e.to_string())?;
            let state = state_from_decomposition(&dec).map_err(|e| e.to_string())?;
            let via_trace = (state.matrix() * kron(&a, &b)).trace().re;
            worst = worst
                .max((via_terms - via_k).abs())
                .max((via_terms - via_trace).abs());
        }
    }
    if worst <= 1e-10 {
        Ok(format!(
            "100 triples per dimension pair; worst disagreement {worst:.3e}"
        ))
    } else {
        Err(format!("worst disagreement {worst:.3e} exceeds 1e-10"))
    }
}

fn c08_rescaling() -> Check {
    let mut min_pairing = f64::INFINITY;
    let mut worst_residual = 0.0f64;
    for case in 0..100u64 {
        let dec = random_decomposition((2, 2), 4, sample::subseed(0x0808, case))
            .map_err(|e| e.to_string())?;
        let v = dec.cone_vector();
        let pairings = strict_positivity_check(&dec, &v).map_err(|e| e.to_string())?;
        for p in pairings {
            min_pairing = min_pairing.min(p);
        }
        let tuples: Vec<_> = dec
            .terms()
            .iter()
            .map(|t| (t.lambda(), t.x().clone(), t.y().clone()))
            .collect();
        let rescaled = rescale_decomposition(&tuples).map_err(|e| e.to_string())?;
        worst_residual = worst_residual.max(hs_norm(&(rescaled.resynthesize() - &v)));
    }
    if min_pairing > 1e-14 && worst_residual <= 1e-12 {
        Ok(format!(
            "minimal pairing {min_pairing:.3e}, worst resynthesis residual {worst_residual:.3e}"
        ))
    } else {
        Err(format!(
            "minimal pairing {min_pairing:.3e}, worst resynthesis residual {worst_residual:.3e}"
        ))
    }
}

fn c09_round_trip() -> Check {
    let mut worst_square = 0.0f64;
    let mut worst_expectation = 0.0f64;
    for dim in [2usize, 3, 4] {
        for case in 0..100u64 {
            let seed = sample::subseed(0x0909, (dim as u64) << 32 | case);
            let d = sample::random_density(dim, seed).map_err(|e| e.to_string())?;
            let v = representative_vector(&d);
            worst_square = worst_square.max(hs_norm(&(&v * &v - d.matrix())));
            let a = sample::random_hermitian(dim, sample::subseed(seed, 1));
            let vector_side = hs_inner(&v, &(&a * &v)).map_err(|e| e.to_string())?.re;
            let trace_side = (d.matrix() * &a).trace().re;
            worst_expectation = worst_expectation.max((vector_side - trace_side).abs());
        }
    }
    if worst_square <= 1e-9 && worst_expectation <= 1e-10 {
        Ok(format!(
            "100 densities per dimension in {{2,3,4}}; worst square defect {worst_square:.3e}, worst expectation gap {worst_expectation:.3e}"
        ))
    } else {
        Err(format!(
            "square defect {worst_square:.3e}, expectation gap {worst_expectation:.3e}"
        ))
    }
}

fn c10_werner() -> Check {
    let inside = werner_state(0.25).map_err(|e| e.to_string())?;
    let member =
        in_sep_cone(inside.matrix(), (2, 2), &ConeParams::default()).map_err(|e| e.to_string())?;
    if member.verdict != Verdict::Member {
        return Err(format!("Werner p=1/4 verdict {:?}", member.verdict));
    }
    let outside = werner_state(0.5).map_err(|e| e.to_string())?;
    let non_member =
        in_sep_cone(outside.matrix(), (2, 2), &ConeParams::default()).map_err(|e| e.to_string())?;
    if non_member.verdict == Verdict::NonMember && (non_member.margin + 0.125).abs() <= 1e-10 {
        Ok(format!(
            "p=1/4 member; p=1/2 non-member with margin {:.12e}",
            non_member.margin
        ))
    } else {
        Err(format!(
            "Werner p=1/2 verdict {:?} with margin {:.12e}",
            non_member.verdict, non_member.margin
        ))
    }
}

fn c11_sqrt_experiment() -> Check {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("sqrt_membership.jsonl");
    let mut file = File::create(&path).map_err(|e| e.to_string())?;
    let params = ConeParams::default();
    let mut members = 0usize;
    let mut non_members = 0usize;
    for case in 0..50u64 {
        let dec = random_decomposition((2, 2), 4, sample::subseed(0x1111, case))
            .map_err(|e| e.to_string())?;
        let state = state_from_decomposition(&dec).map_err(|e| e.to_string())?;
        let record =
            experiment_sqrt_membership(&state, (2, 2), &params).map_err(|e| e.to_string())?;
        match record.verdict {
            Verdict::Member => members += 1,
            Verdict::NonMember => non_members += 1,
            Verdict::Inconclusive => {
                return Err(format!("case {case} came back inconclusive"));
            }
        }
        let line = serde_json::to_string(&record).map_err(|e| e.to_string())?;
        writeln!(file, "{line}").map_err(|e| e.to_string())?;
    }
    Ok(format!(
        "50 records at {}: {members} member, {non_members} non-member, 0 inconclusive",
        path.display()
    ))
}
