//! Extended-precision golden fixtures.
//!
//! The fixture file carries one record per line: a name, the inputs, and the
//! reference value as two trailing decimal fields (17+ significant digits,
//! generated offline at 40-digit precision by `tools/golden.py`). Tests look
//! values up through [`lookup_c`]; the CLI can re-verify a fixture file at
//! runtime via [`verify_records`].

use crate::error::{Error, Result, C64};
use crate::theta::{ModularParameter, PrecisionPolicy};

#[derive(Debug, Clone, PartialEq)]
pub struct FixtureRecord {
    pub name: String,
    /// All numeric fields except the trailing value pair.
    pub inputs: Vec<f64>,
    pub value: C64,
}

/// Parses fixture text; `#`-prefixed lines and blank lines are skipped.
pub fn parse(text: &str) -> Result<Vec<FixtureRecord>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let name = fields
            .next()
            .ok_or_else(|| Error::parameter(format!("fixture line {}: empty", lineno + 1)))?
            .to_string();
        let nums: Vec<f64> = fields
            .map(|f| {
                f.parse::<f64>().map_err(|_| {
                    Error::parameter(format!("fixture line {}: bad number {f}", lineno + 1))
                })
            })
            .collect::<Result<_>>()?;
        if nums.len() < 2 {
            return Err(Error::parameter(format!(
                "fixture line {}: need inputs plus a value pair",
                lineno + 1
            )));
        }
        let (inputs, value) = nums.split_at(nums.len() - 2);
        out.push(FixtureRecord {
            name,
            inputs: inputs.to_vec(),
            value: C64::new(value[0], value[1]),
        });
    }
    Ok(out)
}

/// The fixtures shipped with the crate.
pub fn builtin() -> Vec<FixtureRecord> {
    parse(include_str!("../tests/fixtures/golden.txt")).expect("bundled fixtures parse")
}

fn inputs_match(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-12)
}

/// Test helper: the bundled golden value for `name` at `inputs`.
///
/// Panics when absent, which in a test is the right failure mode.
pub fn lookup_c(name: &str, inputs: &[f64]) -> C64 {
    builtin()
        .iter()
        .find(|r| r.name == name && inputs_match(&r.inputs, inputs))
        .unwrap_or_else(|| panic!("no fixture {name} {inputs:?}"))
        .value
}

/// Result of re-verifying fixture records against the library.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FixtureVerification {
    pub checked: usize,
    pub unknown: usize,
    pub max_rel_error: f64,
    pub worst_record: String,
}

/// Recomputes every known record with the library at default precision and
/// reports the worst relative disagreement.
pub fn verify_records(records: &[FixtureRecord]) -> Result<FixtureVerification> {
    let policy = PrecisionPolicy::default();
    let mut checked = 0usize;
    let mut unknown = 0usize;
    let mut max_rel = 0.0f64;
    let mut worst = String::new();
    for rec in records {
        let got = match recompute(rec, &policy)? {
            Some(v) => v,
            None => {
                unknown += 1;
                continue;
            }
        };
        checked += 1;
        let rel = (got - rec.value).norm() / rec.value.norm().max(1.0);
        if rel > max_rel {
            max_rel = rel;
            worst = format!("{} {:?}", rec.name, rec.inputs);
        }
    }
    Ok(FixtureVerification {
        checked,
        unknown,
        max_rel_error: max_rel,
        worst_record: worst,
    })
}

fn recompute(rec: &FixtureRecord, policy: &PrecisionPolicy) -> Result<Option<C64>> {
    use crate::construction;
    use crate::elliptic::{EvaluationPoint, SolutionParams};
    use crate::kronecker::kronecker_sigma;
    use crate::theta;

    let f = &rec.inputs;
    let c = |i: usize| C64::new(f[i], f[i + 1]);
    let val = match (rec.name.as_str(), f.len()) {
        ("nome", 2) => theta::nome(c(0))?,
        ("theta1", 4) => theta::theta1(c(0), &ModularParameter::new(c(2))?, policy)?,
        ("theta3", 4) => theta::theta3(c(0), &ModularParameter::new(c(2))?, policy)?,
        ("theta1_d0", 2) => theta::theta1_deriv_zero(&ModularParameter::new(c(0))?, policy)?,
        ("theta_shifted", 6) => {
            theta::theta_shifted(c(0), c(2), &ModularParameter::new(c(4))?, policy)?
        }
        ("sigma", 6) => kronecker_sigma(c(0), c(2), &ModularParameter::new(c(4))?, policy)?,
        ("phi_factor", 6) => construction::phi_factor(c(0), c(2), c(4)),
        ("theta1_reduce_mult", 4) => {
            let m = ModularParameter::new(c(2))?;
            theta::reduce_argument(c(0), &m, theta::ThetaKind::Theta1).multiplier
        }
        ("r_elliptic", 14) => {
            let params = SolutionParams::new(f[0] as usize, f[1] as usize,
                ModularParameter::new(c(2))?)?;
            let t = params.r_elliptic(&EvaluationPoint::new(c(4), c(6), c(8)))?;
            t.get(f[10] as usize, f[11] as usize, f[12] as usize, f[13] as usize)
        }
        ("res_map", 12) => {
            let params = SolutionParams::new(f[0] as usize, f[1] as usize,
                ModularParameter::new(c(2))?)?;
            let elem = construction::SolSpaceElement::unit(
                params, c(4), c(6), f[8] as usize, f[9] as usize)?;
            construction::res_map(&elem)?[(f[10] as usize, f[11] as usize)]
        }
        ("ev_map", 14) => {
            let params = SolutionParams::new(f[0] as usize, f[1] as usize,
                ModularParameter::new(c(2))?)?;
            let elem = construction::SolSpaceElement::unit(
                params, c(4), c(6), f[10] as usize, f[11] as usize)?;
            construction::ev_map(&elem, c(8))?[(f[12] as usize, f[13] as usize)]
        }
        ("alpha_endo", 12) => {
            let params = SolutionParams::new(f[0] as usize, f[1] as usize,
                ModularParameter::new(c(2))?)?;
            let alpha = construction::alpha_endo(&params, c(4), c(6), c(8))?;
            alpha.matrix()[(f[10] as usize, f[11] as usize)]
        }
        _ => return Ok(None),
    };
    Ok(Some(val))
}
