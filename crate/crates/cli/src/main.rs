//! conelab — command-line access to the cone laboratory.
//!
//! Subcommands: `replicate` rebuilds the named witness pair and re-checks
//! every sign claim; `separability` and `witness` test a single operator
//! read from a file or standard input; `correspondence` verifies a
//! separable decomposition and runs the square-root membership experiment;
//! `suite` runs the randomized property suites.
//!
//! Exit codes: 0 success/member, 1 non-member or failed checks, 2
//! inconclusive (and clap usage errors, distinguishable by the absence of
//! JSON on standard output), 3 violated replication claim, 64 malformed
//! JSON input, 65 input that parses but fails validation.  All reports are
//! UTF-8 JSON; for a fixed seed and configuration the bytes are identical
//! across runs and thread counts.  CONELAB_THREADS caps the worker pool
//! (0 means sequential).

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use conelab_core::cones::{in_dual_sep_cone, in_sep_cone, ConeParams, Verdict};
use conelab_core::correspondence::{
    expectation_via_decomposition, expectation_via_k_density, experiment_sqrt_membership,
    k_density_from_decomposition, rescale_decomposition, strict_positivity_check,
    SeparableDecomposition, SqrtMembershipRecord,
};
use conelab_core::hs::{hs_norm, DensityMatrix, HSOperator};
use conelab_core::json::{DecompositionJson, MatrixJson};
use conelab_core::replication::run_replication;
use conelab_core::sample;
use conelab_core::suite::run_suite;
use conelab_core::Error;

#[derive(Parser)]
#[command(
    name = "conelab",
    version,
    about = "Cone-membership laboratory for separability"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rebuild sigma, theta, and eta and re-certify every sign claim.
    Replicate(ReplicateArgs),
    /// Test a density matrix for separable-cone membership.
    Separability(SeparabilityArgs),
    /// Test a Hermitian operator for dual-cone (witness) membership.
    Witness(WitnessArgs),
    /// Verify a separable decomposition and run the square-root experiment.
    Correspondence(CorrespondenceArgs),
    /// Run the seeded property suites and report tallies.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct ReplicateArgs {
    /// Dimension of each single factor carrying the construction.
    #[arg(long, default_value_t = 2)]
    d0: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Decision tolerance on margins.
    #[arg(long, default_value_t = 1e-9, value_parser = parse_tol)]
    tol: f64,
    /// Random restarts of the see-saw minimization.
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    /// Sweeps per see-saw restart.
    #[arg(long, default_value_t = 200)]
    iters: usize,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SeparabilityArgs {
    /// Matrix JSON file; omit or use "-" for standard input.
    input: Option<PathBuf>,
    /// Bipartite dimensions, as in 2x3.
    #[arg(long, default_value = "2x2", value_parser = parse_dims)]
    dims: (usize, usize),
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9, value_parser = parse_tol)]
    tol: f64,
    /// Rounds of the decomposition search.
    #[arg(long, default_value_t = 2000)]
    iters: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    /// Matrix JSON file; omit or use "-" for standard input.
    input: Option<PathBuf>,
    /// Bipartite dimensions, as in 2x3.
    #[arg(long, default_value = "2x2", value_parser = parse_dims)]
    dims: (usize, usize),
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9, value_parser = parse_tol)]
    tol: f64,
    /// Random restarts of the see-saw minimization.
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    /// Sweeps per see-saw restart.
    #[arg(long, default_value_t = 200)]
    iters: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CorrespondenceArgs {
    /// Decomposition JSON file; omit or use "-" for standard input.
    input: Option<PathBuf>,
    /// Expected bipartite dimensions; checked against the input if given.
    #[arg(long, value_parser = parse_dims)]
    dims: Option<(usize, usize)>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9, value_parser = parse_tol)]
    tol: f64,
    /// Rounds of the decomposition search inside the experiment.
    #[arg(long, default_value_t = 2000)]
    iters: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SuiteArgs {
    /// Bipartite dimensions, as in 2x3.
    #[arg(long, default_value = "2x2", value_parser = parse_dims)]
    dims: (usize, usize),
    /// Cases per suite.
    #[arg(long, default_value_t = 200)]
    cases: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9, value_parser = parse_tol)]
    tol: f64,
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    #[arg(long, default_value_t = 2000)]
    iters: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_dims(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected AxB, got {text:?}"))?;
    let d1: usize = a
        .trim()
        .parse()
        .map_err(|_| format!("bad dimension {a:?}"))?;
    let d2: usize = b
        .trim()
        .parse()
        .map_err(|_| format!("bad dimension {b:?}"))?;
    if d1 == 0 || d2 == 0 {
        return Err("dimensions must be at least 1".to_string());
    }
    Ok((d1, d2))
}

fn parse_tol(text: &str) -> Result<f64, String> {
    let tol: f64 = text
        .parse()
        .map_err(|_| format!("bad tolerance {text:?}"))?;
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err("tolerance must be positive and finite".to_string())
    }
}

/// Failures after argument parsing, each tied to one exit code.
enum Failure {
    /// Input that is not even JSON (exit 64).
    Malformed(String),
    /// Input that parses but violates a domain invariant (exit 65).
    Invalid(String),
    /// A replication sign claim failed (exit 3).
    Claim(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Malformed(_) => 64,
            Failure::Invalid(_) => 65,
            Failure::Claim(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Malformed(m) | Failure::Invalid(m) | Failure::Claim(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ReplicationFailure { .. } => Failure::Claim(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

fn configure_threads() {
    if let Ok(text) = std::env::var("CONELAB_THREADS") {
        if let Ok(n) = text.trim().parse::<usize>() {
            let threads = if n == 0 { 1 } else { n };
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| Failure::Invalid(format!("{}: {e}", p.display()))),
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Invalid(format!("standard input: {e}")))?;
            Ok(text)
        }
    }
}

fn read_matrix(path: &Option<PathBuf>) -> Result<HSOperator, Failure> {
    let text = read_input(path)?;
    let dto: MatrixJson =
        serde_json::from_str(&text).map_err(|e| Failure::Malformed(e.to_string()))?;
    dto.to_matrix().map_err(|e| Failure::Invalid(e.to_string()))
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, format!("{text}\n"))
            .map_err(|e| Failure::Invalid(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Member => 0,
        Verdict::NonMember => 1,
        Verdict::Inconclusive => 2,
    }
}

fn cmd_replicate(args: &ReplicateArgs) -> Result<u8, Failure> {
    let params = ConeParams {
        tol: args.tol,
        restarts: args.restarts,
        max_iters: args.iters,
        seed: args.seed,
        ..ConeParams::default()
    };
    let report = run_replication(args.d0, &params)?;
    let text = serde_json::to_string_pretty(&report).expect("report serialization");
    emit(&text, &args.output)?;
    Ok(0)
}

fn cmd_separability(args: &SeparabilityArgs) -> Result<u8, Failure> {
    let m = read_matrix(&args.input)?;
    let params = ConeParams {
        tol: args.tol,
        dec_iters: args.iters,
        seed: args.seed,
        ..ConeParams::default()
    };
    let verdict = in_sep_cone(&m, args.dims, &params)?;
    let text = serde_json::to_string_pretty(&verdict).expect("verdict serialization");
    emit(&text, &args.output)?;
    Ok(verdict_code(verdict.verdict))
}

fn cmd_witness(args: &WitnessArgs) -> Result<u8, Failure> {
    let m = read_matrix(&args.input)?;
    let params = ConeParams {
        tol: args.tol,
        restarts: args.restarts,
        max_iters: args.iters,
        seed: args.seed,
        ..ConeParams::default()
    };
    let verdict = in_dual_sep_cone(&m, args.dims, &params)?;
    let text = serde_json::to_string_pretty(&verdict).expect("verdict serialization");
    emit(&text, &args.output)?;
    Ok(verdict_code(verdict.verdict))
}

/// One line of the correspondence report.
#[derive(Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
enum CorrespondenceLine {
    ExpectationAgreement {
        pass: bool,
        probes: usize,
        worst_disagreement: f64,
    },
    StrictPositivity {
        pass: bool,
        min_pairing: f64,
    },
    Rescaling {
        pass: bool,
        resynthesis_residual: f64,
    },
    SqrtMembership {
        pass: bool,
        record: SqrtMembershipRecord,
    },
}

fn cmd_correspondence(args: &CorrespondenceArgs) -> Result<u8, Failure> {
    let text = read_input(&args.input)?;
    let dto: DecompositionJson =
        serde_json::from_str(&text).map_err(|e| Failure::Malformed(e.to_string()))?;
    let dec: SeparableDecomposition = dto
        .to_decomposition()
        .map_err(|e| Failure::Invalid(e.to_string()))?;
    if let Some(dims) = args.dims {
        if dec.dims() != dims {
            return Err(Failure::Invalid(format!(
                "decomposition dims {:?} do not match --dims {:?}",
                dec.dims(),
                dims
            )));
        }
    }
    let dims = dec.dims();
    let params = ConeParams {
        tol: args.tol,
        dec_iters: args.iters,
        seed: args.seed,
        ..ConeParams::default()
    };

    let mut lines = Vec::new();
    let mut all_pass = true;

    // Both expectation formulas against seeded random observable pairs.
    let probes = 20usize;
    let k = k_density_from_decomposition(&dec)?;
    let mut worst = 0.0f64;
    for i in 0..probes {
        let s = sample::subseed(args.seed, i as u64);
        let a = sample::random_hermitian(dims.0, sample::subseed(s, 1));
        let b = sample::random_hermitian(dims.1, sample::subseed(s, 2));
        let via_terms = expectation_via_decomposition(&dec, &a, &b)?;
        let via_k = expectation_via_k_density(&k, &a, &b)?;
        worst = worst.max((via_terms - via_k).abs());
    }
    let agreement_pass = worst <= 1e-10;
    all_pass &= agreement_pass;
    lines.push(CorrespondenceLine::ExpectationAgreement {
        pass: agreement_pass,
        probes,
        worst_disagreement: worst,
    });

    let v = dec.cone_vector();
    let pairings = strict_positivity_check(&dec, &v)?;
    let min_pairing = pairings.iter().copied().fold(f64::INFINITY, f64::min);
    let positivity_pass = min_pairing > 1e-14;
    all_pass &= positivity_pass;
    lines.push(CorrespondenceLine::StrictPositivity {
        pass: positivity_pass,
        min_pairing,
    });

    let tuples: Vec<_> = dec
        .terms()
        .iter()
        .map(|t| (t.lambda(), t.x().clone(), t.y().clone()))
        .collect();
    let rescaled = rescale_decomposition(&tuples)?;
    let residual = hs_norm(&(rescaled.resynthesize() - &v));
    let rescaling_pass = residual <= 1e-12;
    all_pass &= rescaling_pass;
    lines.push(CorrespondenceLine::Rescaling {
        pass: rescaling_pass,
        resynthesis_residual: residual,
    });

    let state = DensityMatrix::project(&v)?;
    let record = experiment_sqrt_membership(&state, dims, &params)?;
    let sqrt_pass = record.verdict != Verdict::Inconclusive;
    all_pass &= sqrt_pass;
    lines.push(CorrespondenceLine::SqrtMembership {
        pass: sqrt_pass,
        record,
    });

    let report = lines
        .iter()
        .map(|line| serde_json::to_string(line).expect("line serialization"))
        .collect::<Vec<_>>()
        .join("\n");
    emit(&report, &args.output)?;
    Ok(if all_pass { 0 } else { 1 })
}

fn cmd_suite(args: &SuiteArgs) -> Result<u8, Failure> {
    let params = ConeParams {
        tol: args.tol,
        restarts: args.restarts,
        dec_iters: args.iters,
        seed: args.seed,
        ..ConeParams::default()
    };
    let report = run_suite(args.dims, args.cases, &params)?;
    let text = serde_json::to_string_pretty(&report).expect("report serialization");
    emit(&text, &args.output)?;
    Ok(if report.all_passed { 0 } else { 1 })
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Replicate(args) => cmd_replicate(args),
        Command::Separability(args) => cmd_separability(args),
        Command::Witness(args) => cmd_witness(args),
        Command::Correspondence(args) => cmd_correspondence(args),
        Command::Suite(args) => cmd_suite(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
