//! Command-line front end: `eval`, `verify`, `expand`.
//!
//! Exit-code contract: 0 success/all-pass, 1 tolerance or numeric failure,
//! 2 parameter error, 3 pole error. All machine output is JSON (or CSV where
//! requested) on stdout; reports stream as JSON lines. Output is
//! byte-deterministic for fixed flags and seed once `--no-timestamp` is set.

use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result, C64};
use crate::construction::r_from_construction;
use crate::elliptic::{EvaluationPoint, SolutionParams};
use crate::fixtures;
use crate::laurent::{laurent_expand, LaurentExpansion};
use crate::serialize::{laurent_csv, two_tensor_csv, LaurentDoc, SCHEMA_VERSION};
use crate::tensor::TwoTensor;
use crate::theta::ModularParameter;
use crate::verify::{
    theorem_main_check, tolerances, verify_aybe, verify_cybe, verify_qybe, verify_skew,
    ResidualReport, SampleScheme, QYBE_BASE_POINT,
};

/// Evaluates and verifies elliptic solutions of the associative
/// Yang-Baxter equation.
#[derive(Debug, Parser)]
#[command(name = "aybe", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the solution tensor at one point.
    Eval(EvalArgs),
    /// Run identity verification sweeps and emit JSON-line reports.
    Verify(VerifyArgs),
    /// Extract the Laurent coefficients around v = 0.
    Expand(ExpandArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Matrix size n of the solution type (n, d).
    #[arg(long)]
    pub n: usize,
    /// Degree d of the solution type (n, d), coprime to n.
    #[arg(long)]
    pub d: usize,
    /// Modular parameter as "re,im" with im > 0.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub tau: C64,
    /// Drop the timestamp field for byte-reproducible output.
    #[arg(long, default_value_t = false)]
    pub no_timestamp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    /// Closed-form theta-series evaluation.
    Closed,
    /// Residue/evaluation geometric construction.
    Construction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Normalization {
    /// Tensor as defined (residue of the pole at v = 0 is (1/n) 1 (x) 1).
    Raw,
    /// Rescale by the measured residue constant so the residue is 1 (x) 1.
    UnitResidue,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Spectral parameter v as "re,im".
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub v: C64,
    /// First curve point as "re,im".
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub x1: C64,
    /// Second curve point as "re,im".
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub x2: C64,
    #[arg(long, value_enum, default_value_t = Route::Closed)]
    pub route: Route,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[arg(long, value_enum, default_value_t = Normalization::Raw)]
    pub normalization: Normalization,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WhichIdentity {
    Aybe,
    Skew,
    Cybe,
    Qybe,
    TheoremMain,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value_t = WhichIdentity::All)]
    pub which: WhichIdentity,
    /// Sample count per identity.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Overrides the per-identity default tolerances.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Base point for the quantum identity, as "re,im".
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub u0: Option<C64>,
    /// Pole guard distance for sampling.
    #[arg(long, default_value_t = 0.05)]
    pub min_pole_distance: f64,
    /// Golden fixture file to re-verify before the sweeps.
    #[arg(long)]
    pub fixtures: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub x1: C64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub x2: C64,
    /// Circle radius (default: 0.05 x the distance to the nearest
    /// non-origin pole).
    #[arg(long)]
    pub radius: Option<f64>,
    /// Base circle resolution; the run uses this and its double.
    #[arg(long, default_value_t = 32)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[arg(long, value_enum, default_value_t = Normalization::Raw)]
    pub normalization: Normalization,
}

/// Parses "re,im" into a complex number.
pub fn parse_complex(s: &str) -> std::result::Result<C64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected re,im got {s}"));
    }
    let re: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| format!("bad real part in {s}"))?;
    let im: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| format!("bad imaginary part in {s}"))?;
    Ok(C64::new(re, im))
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parameter(_) => 2,
        Error::Pole { .. } => 3,
        _ => 1,
    }
}

fn timestamp(common: &CommonArgs) -> Option<f64> {
    if common.no_timestamp {
        None
    } else {
        Some(
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs_f64())
                .unwrap_or(0.0),
        )
    }
}

fn build_params(common: &CommonArgs) -> Result<SolutionParams> {
    SolutionParams::new(common.n, common.d, ModularParameter::new(common.tau)?)
}

#[derive(Debug, Serialize)]
struct EvalDoc {
    schema: u32,
    kind: String,
    n: usize,
    d: usize,
    tau: [f64; 2],
    v: [f64; 2],
    x1: [f64; 2],
    x2: [f64; 2],
    route: String,
    normalization: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    applied_scale: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<f64>,
    /// Row-major over `[a, b, c, d]`, complex as `[re, im]`.
    entries: Vec<[f64; 2]>,
}

fn measured_unit_residue_scale(params: &SolutionParams, x1: C64, x2: C64) -> Result<C64> {
    let e = laurent_expand(params, x1, x2, None, 16)?;
    let (c, _) = e.residue_constant()?;
    Ok(c.inv())
}

fn run_eval(args: &EvalArgs, out: &mut impl std::io::Write) -> Result<()> {
    let params = build_params(&args.common)?;
    let mut tensor = match args.route {
        Route::Closed => params.r_elliptic(&EvaluationPoint::new(args.v, args.x1, args.x2))?,
        Route::Construction => r_from_construction(&params, args.v, args.x1, args.x2)?,
    };
    let mut applied_scale = None;
    if args.normalization == Normalization::UnitResidue {
        let s = measured_unit_residue_scale(&params, args.x1, args.x2)?;
        tensor = tensor.scale(s);
        applied_scale = Some([s.re, s.im]);
    }
    match args.format {
        OutputFormat::Json => {
            let doc = EvalDoc {
                schema: SCHEMA_VERSION,
                kind: "r_matrix_evaluation".to_string(),
                n: params.n(),
                d: params.d(),
                tau: [args.common.tau.re, args.common.tau.im],
                v: [args.v.re, args.v.im],
                x1: [args.x1.re, args.x1.im],
                x2: [args.x2.re, args.x2.im],
                route: format!("{:?}", args.route).to_lowercase(),
                normalization: match args.normalization {
                    Normalization::Raw => "raw".to_string(),
                    Normalization::UnitResidue => "unit-residue".to_string(),
                },
                applied_scale,
                timestamp: timestamp(&args.common),
                entries: tensor.entries().iter().map(|z| [z.re, z.im]).collect(),
            };
            writeln!(out, "{}", serde_json::to_string(&doc).unwrap())
                .map_err(|e| Error::Numeric(e.to_string()))?;
        }
        OutputFormat::Csv => {
            write!(out, "{}", two_tensor_csv(&tensor)).map_err(|e| Error::Numeric(e.to_string()))?;
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct ExpandDoc {
    #[serde(flatten)]
    inner: LaurentDoc,
    /// Projection of the order -1 coefficient onto 1 (x) 1.
    measured_residue_constant: [f64; 2],
    /// Relative mass of the order -1 coefficient away from 1 (x) 1.
    off_identity_mass: f64,
    /// Which of the candidate normalizations (1 or 1/n) the measured
    /// constant matches, if either.
    residue_matches: String,
    normalization: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    applied_scale: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<f64>,
}

fn run_expand(args: &ExpandArgs, out: &mut impl std::io::Write) -> Result<()> {
    let params = build_params(&args.common)?;
    let mut expansion = laurent_expand(&params, args.x1, args.x2, args.radius, args.samples)?;
    let (c, off) = expansion.residue_constant()?;
    let mut applied_scale = None;
    if args.normalization == Normalization::UnitResidue {
        let s = c.inv();
        for t in expansion.coefficients.values_mut() {
            *t = t.scale(s);
        }
        applied_scale = Some([s.re, s.im]);
    }
    match args.format {
        OutputFormat::Json => {
            let one = C64::new(1.0, 0.0);
            let inv_n = C64::new(1.0 / params.n() as f64, 0.0);
            let matches = if (c - one).norm() < 1e-6 {
                "1"
            } else if (c - inv_n).norm() < 1e-6 {
                "1/n"
            } else {
                "neither"
            };
            let doc = ExpandDoc {
                inner: LaurentDoc::from_expansion(params.n(), &expansion),
                measured_residue_constant: [c.re, c.im],
                off_identity_mass: off,
                residue_matches: matches.to_string(),
                normalization: match args.normalization {
                    Normalization::Raw => "raw".to_string(),
                    Normalization::UnitResidue => "unit-residue".to_string(),
                },
                applied_scale,
                timestamp: timestamp(&args.common),
            };
            writeln!(out, "{}", serde_json::to_string(&doc).unwrap())
                .map_err(|e| Error::Numeric(e.to_string()))?;
        }
        OutputFormat::Csv => {
            write!(out, "{}", laurent_csv(&expansion))
                .map_err(|e| Error::Numeric(e.to_string()))?;
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct FixtureDoc {
    schema: u32,
    kind: String,
    verdict: String,
    #[serde(flatten)]
    inner: fixtures::FixtureVerification,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<f64>,
}

fn run_verify(args: &VerifyArgs, out: &mut impl std::io::Write) -> Result<bool> {
    let params = build_params(&args.common)?;
    let scheme = SampleScheme {
        seed: args.seed,
        count: args.samples,
        min_pole_distance: args.min_pole_distance,
        ..SampleScheme::default()
    };
    let u0 = args.u0.unwrap_or(QYBE_BASE_POINT);
    let mut all_pass = true;
    fn emit(
        out: &mut impl std::io::Write,
        ts: Option<f64>,
        report: &ResidualReport,
    ) -> Result<()> {
        let mut report = report.clone();
        report.timestamp = ts;
        writeln!(out, "{}", serde_json::to_string(&report).unwrap())
            .map_err(|e| Error::Numeric(e.to_string()))?;
        Ok(())
    }
    let ts = timestamp(&args.common);

    if let Some(path) = &args.fixtures {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::parameter(format!("cannot read fixtures {path:?}: {e}")))?;
        let records = fixtures::parse(&text)?;
        let inner = fixtures::verify_records(&records)?;
        let pass = inner.unknown == 0 && inner.max_rel_error < 1e-10;
        all_pass &= pass;
        let doc = FixtureDoc {
            schema: SCHEMA_VERSION,
            kind: "fixture_verification".to_string(),
            verdict: if pass { "pass" } else { "fail" }.to_string(),
            inner,
            timestamp: timestamp(&args.common),
        };
        writeln!(out, "{}", serde_json::to_string(&doc).unwrap())
            .map_err(|e| Error::Numeric(e.to_string()))?;
    }

    let which = args.which;
    let want = |w: WhichIdentity| which == w || which == WhichIdentity::All;
    if want(WhichIdentity::Aybe) {
        let report = verify_aybe(&params, &params, &scheme, args.tol.unwrap_or(tolerances::AYBE))?;
        all_pass &= report.passed();
        emit(out, ts, &report)?;
    }
    if want(WhichIdentity::Skew) {
        let report = verify_skew(&params, &params, &scheme, args.tol.unwrap_or(tolerances::SKEW))?;
        all_pass &= report.passed();
        emit(out, ts, &report)?;
    }
    if want(WhichIdentity::Cybe) {
        let report = verify_cybe(&params, &scheme, args.tol.unwrap_or(tolerances::CYBE))?;
        all_pass &= report.passed();
        emit(out, ts, &report)?;
    }
    if want(WhichIdentity::Qybe) {
        let report = verify_qybe(
            &params,
            &params,
            &scheme,
            args.tol.unwrap_or(tolerances::QYBE),
            u0,
        )?;
        all_pass &= report.passed();
        emit(out, ts, &report)?;
    }
    if want(WhichIdentity::TheoremMain) {
        let report = theorem_main_check(
            &params,
            &scheme,
            args.tol.unwrap_or(tolerances::THEOREM_MAIN),
        )?;
        all_pass &= report.passed();
        emit(out, ts, &report)?;
    }
    Ok(all_pass)
}

/// Runs a parsed CLI invocation, returning the process exit code.
pub fn run(cli: &Cli, out: &mut impl std::io::Write) -> i32 {
    let result: Result<i32> = match &cli.command {
        Command::Eval(args) => run_eval(args, out).map(|_| 0),
        Command::Expand(args) => run_expand(args, out).map(|_| 0),
        Command::Verify(args) => run_verify(args, out).map(|ok| if ok { 0 } else { 1 }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

/// Re-export for tests that want the parsed-but-not-run expansion shape.
pub fn expand_for_tests(args: &ExpandArgs) -> Result<LaurentExpansion> {
    let params = build_params(&args.common)?;
    laurent_expand(&params, args.x1, args.x2, args.radius, args.samples)
}

/// Re-export used by the CLI round-trip test.
pub fn eval_tensor(args: &EvalArgs) -> Result<TwoTensor> {
    let params = build_params(&args.common)?;
    match args.route {
        Route::Closed => params.r_elliptic(&EvaluationPoint::new(args.v, args.x1, args.x2)),
        Route::Construction => r_from_construction(&params, args.v, args.x1, args.x2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    #[test]
    fn complex_flag_parsing() {
        assert_eq!(parse_complex("0.1,-0.2").unwrap(), C64::new(0.1, -0.2));
        assert!(parse_complex("0.1").is_err());
        assert!(parse_complex("a,b").is_err());
    }

    #[test]
    fn eval_runs_and_is_parseable() {
        let cli = Cli::parse_from([
            "aybe", "eval", "--n", "2", "--d", "1", "--tau", "0,0.8", "--v", "0.13,0.07",
            "--x1", "0.1,0", "--x2", "0.32,0", "--no-timestamp",
        ]);
        let mut buf = Vec::new();
        assert_eq!(run(&cli, &mut buf), 0);
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["entries"].as_array().unwrap().len(), 16);
    }

    #[test]
    fn exit_codes_map_errors() {
        // gcd(4, 2) != 1 -> parameter error -> 2
        let cli = Cli::parse_from([
            "aybe", "eval", "--n", "4", "--d", "2", "--tau", "0,1", "--v", "0.1,0", "--x1",
            "0,0", "--x2", "0.3,0",
        ]);
        let mut buf = Vec::new();
        assert_eq!(run(&cli, &mut buf), 2);
        // v exactly on the pole set -> 3
        let cli = Cli::parse_from([
            "aybe", "eval", "--n", "2", "--d", "1", "--tau", "0,1", "--v", "-0.5,-0.5",
            "--x1", "0,0", "--x2", "0.3,0",
        ]);
        let mut buf = Vec::new();
        assert_eq!(run(&cli, &mut buf), 3);
    }

    #[test]
    fn verify_unattainable_tolerance_fails() {
        let cli = Cli::parse_from([
            "aybe", "verify", "--n", "2", "--d", "1", "--tau", "0,0.8", "--which", "aybe",
            "--samples", "10", "--tol", "1e-15", "--no-timestamp",
        ]);
        let mut buf = Vec::new();
        assert_eq!(run(&cli, &mut buf), 1);
        let line = String::from_utf8(buf).unwrap();
        let v: serde_json::Value = serde_json::from_str(line.lines().next().unwrap()).unwrap();
        assert_eq!(v["verdict"], "fail");
    }
}
