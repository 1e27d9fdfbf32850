//! Jacobi theta functions with lattice-aware argument reduction.
//!
//! Conventions: the lattice is `Lambda = Z + tau*Z` with `Im(tau) > 0`, the
//! nome is `q = exp(pi*i*tau)`, and the two series are
//!
//! ```text
//! theta1(z|tau) = 2 q^(1/4) sum_{n>=0} (-1)^n q^(n(n+1)) sin((2n+1) pi z)
//! theta3(z|tau) = 1 + 2 sum_{n>=1} q^(n^2) cos(2 pi n z)
//! ```
//!
//! Arguments are always reduced into the fundamental strip
//! `|Re z| <= 1/2, |Im z| <= Im(tau)/2` before summation; the accumulated
//! quasi-periodicity multiplier is applied afterwards. This keeps the series
//! terms uniformly decaying like `|q|^(n^2)`.

use crate::error::{Error, Result, C64};

/// The modular parameter `tau` together with its derived nome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModularParameter {
    tau: C64,
    q: C64,
}

impl ModularParameter {
    /// Validates `Im(tau) > 0` and precomputes the nome.
    pub fn new(tau: C64) -> Result<Self> {
        Ok(ModularParameter {
            tau,
            q: nome(tau)?,
        })
    }

    pub fn tau(&self) -> C64 {
        self.tau
    }

    /// The nome `q = exp(pi*i*tau)`, with `|q| < 1`.
    pub fn q(&self) -> C64 {
        self.q
    }

    pub fn im_tau(&self) -> f64 {
        self.tau.im
    }

    /// The half period `(1 + tau)/2`, the unique zero of `theta3` mod the lattice.
    pub fn half_period_sum(&self) -> C64 {
        (C64::new(1.0, 0.0) + self.tau) / 2.0
    }
}

/// The nome `q = exp(pi*i*tau)`. Fails unless `Im(tau) > 0`.
pub fn nome(tau: C64) -> Result<C64> {
    if !(tau.im > 0.0) || !tau.is_finite() {
        return Err(Error::parameter(format!(
            "modular parameter must have Im(tau) > 0, got tau = {tau}"
        )));
    }
    Ok((C64::i() * std::f64::consts::PI * tau).exp())
}

/// Truncation control for the theta series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionPolicy {
    /// Relative term size (against the running maximum term) below which the
    /// series is considered converged.
    pub target_abs_error: f64,
    /// Hard cap on the number of summed terms.
    pub max_series_terms: usize,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            target_abs_error: 1e-14,
            max_series_terms: 64,
        }
    }
}

impl PrecisionPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_abs_error > 0.0) {
            return Err(Error::parameter("target_abs_error must be positive"));
        }
        if self.max_series_terms < 8 {
            return Err(Error::parameter("max_series_terms must be at least 8"));
        }
        Ok(())
    }
}

/// Which theta function a reduction is for (they carry different multipliers).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaKind {
    Theta1,
    Theta3,
}

/// Outcome of quasi-periodic argument reduction: `z = z0 + m + k*tau` and
/// `theta(z) = multiplier * theta(z0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedArgument {
    pub z0: C64,
    pub m: i64,
    pub k: i64,
    pub multiplier: C64,
}

/// Reduces `z` into the fundamental strip of `Lambda = Z + tau*Z`.
///
/// The multipliers come from the standard shift laws
/// `theta3(z + k*tau) = q^(-k^2) exp(-2 pi i k z) theta3(z)` and
/// `theta1(z + m + k*tau) = (-1)^(m+k) q^(-k^2) exp(-2 pi i k z) theta1(z)`.
pub fn reduce_argument(z: C64, modular: &ModularParameter, which: ThetaKind) -> ReducedArgument {
    let tau = modular.tau();
    let k = (z.im / tau.im).round();
    let z1 = z - tau * k;
    let m = z1.re.round();
    let z0 = z1 - m;

    let pi = std::f64::consts::PI;
    // q^(-k^2) * exp(-2 pi i k z0), computed in one exponential
    let mut multiplier = (C64::i() * (-pi * k * k * tau - 2.0 * pi * k * z0)).exp();
    if which == ThetaKind::Theta1 && ((m + k) as i64) % 2 != 0 {
        multiplier = -multiplier;
    }
    ReducedArgument {
        z0,
        m: m as i64,
        k: k as i64,
        multiplier,
    }
}

/// Nearest lattice point of `Lambda = Z + tau*Z` to `z`, with its distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticePoint {
    pub m: i64,
    pub k: i64,
    pub distance: f64,
}

/// Locates the nearest lattice point `m + k*tau` to `z`.
pub fn nearest_lattice(z: C64, modular: &ModularParameter) -> LatticePoint {
    let tau = modular.tau();
    let k = (z.im / tau.im).round();
    let m = (z - tau * k).re.round();
    LatticePoint {
        m: m as i64,
        k: k as i64,
        distance: (z - m - tau * k).norm(),
    }
}

/// Sums a term stream under the truncation policy.
///
/// Convergence requires two consecutive terms below the relative threshold,
/// which guards against accidental zeros of the trigonometric factors.
fn sum_series(
    mut term: impl FnMut(usize) -> C64,
    leading_scale: f64,
    policy: &PrecisionPolicy,
    context: &str,
) -> Result<C64> {
    let mut sum = C64::new(0.0, 0.0);
    let mut running_max = leading_scale;
    let mut small_streak = 0usize;
    for j in 0..policy.max_series_terms {
        let t = term(j);
        sum += t;
        let mag = t.norm();
        running_max = running_max.max(mag);
        if mag <= policy.target_abs_error * running_max {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::Precision {
        max_terms: policy.max_series_terms,
        context: context.to_string(),
    })
}

fn theta1_strip(z0: C64, modular: &ModularParameter, policy: &PrecisionPolicy) -> Result<C64> {
    let pi = std::f64::consts::PI;
    let tau = modular.tau();
    // term_j = 2 (-1)^j exp(i pi tau (j + 1/2)^2) sin((2j+1) pi z)
    sum_series(
        |j| {
            let half = j as f64 + 0.5;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            2.0 * sign
                * (C64::i() * pi * tau * half * half).exp()
                * ((2 * j + 1) as f64 * pi * z0).sin()
        },
        0.0,
        policy,
        "theta1",
    )
}

fn theta3_strip(z0: C64, modular: &ModularParameter, policy: &PrecisionPolicy) -> Result<C64> {
    let pi = std::f64::consts::PI;
    let tau = modular.tau();
    let tail = sum_series(
        |j| {
            let n = (j + 1) as f64;
            2.0 * (C64::i() * pi * tau * n * n).exp() * (2.0 * n * pi * z0).cos()
        },
        1.0,
        policy,
        "theta3",
    )?;
    Ok(C64::new(1.0, 0.0) + tail)
}

/// `theta1(z|tau)`, reduced then summed.
pub fn theta1(z: C64, modular: &ModularParameter, policy: &PrecisionPolicy) -> Result<C64> {
    policy.validate()?;
    let red = reduce_argument(z, modular, ThetaKind::Theta1);
    Ok(red.multiplier * theta1_strip(red.z0, modular, policy)?)
}

/// `theta3(z|tau)`, reduced then summed.
pub fn theta3(z: C64, modular: &ModularParameter, policy: &PrecisionPolicy) -> Result<C64> {
    policy.validate()?;
    let red = reduce_argument(z, modular, ThetaKind::Theta3);
    Ok(red.multiplier * theta3_strip(red.z0, modular, policy)?)
}

/// `theta1` summed directly at `z`, skipping argument reduction.
///
/// Only useful to test that reduction is transparent; the series may fail to
/// converge for `|Im z| >> Im(tau)`.
pub fn theta1_unreduced(z: C64, modular: &ModularParameter, policy: &PrecisionPolicy) -> Result<C64> {
    policy.validate()?;
    theta1_strip(z, modular, policy)
}

/// `theta3` summed directly at `z`, skipping argument reduction.
pub fn theta3_unreduced(z: C64, modular: &ModularParameter, policy: &PrecisionPolicy) -> Result<C64> {
    policy.validate()?;
    theta3_strip(z, modular, policy)
}

/// `theta1'(0|tau)` by term-wise differentiation of the sine series.
pub fn theta1_deriv_zero(modular: &ModularParameter, policy: &PrecisionPolicy) -> Result<C64> {
    policy.validate()?;
    let pi = std::f64::consts::PI;
    let tau = modular.tau();
    sum_series(
        |j| {
            let half = j as f64 + 0.5;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            2.0 * pi * (2 * j + 1) as f64 * sign * (C64::i() * pi * tau * half * half).exp()
        },
        0.0,
        policy,
        "theta1_deriv_zero",
    )
}

/// `theta3'((1+tau)/2)`, computed through `i exp(-pi i tau/4) theta1'(0)`
/// rather than by numerical differentiation.
pub fn theta3_deriv_half_period(
    modular: &ModularParameter,
    policy: &PrecisionPolicy,
) -> Result<C64> {
    let pi = std::f64::consts::PI;
    let factor = C64::i() * (-C64::i() * pi * modular.tau() / 4.0).exp();
    Ok(factor * theta1_deriv_zero(modular, policy)?)
}

/// The shifted theta `theta_x(w) = theta3(w + (1+tau)/2 - x)`, which vanishes
/// exactly at `w = x` mod the lattice.
pub fn theta_shifted(
    x: C64,
    w: C64,
    modular: &ModularParameter,
    policy: &PrecisionPolicy,
) -> Result<C64> {
    theta3(w + modular.half_period_sum() - x, modular, policy)
}

/// `theta2(0|tau)`; only needed for the `theta1'(0) = pi theta2 theta3 theta4`
/// cross-check.
pub fn theta2_zero(modular: &ModularParameter, policy: &PrecisionPolicy) -> Result<C64> {
    policy.validate()?;
    let pi = std::f64::consts::PI;
    let tau = modular.tau();
    sum_series(
        |j| {
            let half = j as f64 + 0.5;
            2.0 * (C64::i() * pi * tau * half * half).exp()
        },
        0.0,
        policy,
        "theta2_zero",
    )
}

/// `theta4(0|tau)`; companion of [`theta2_zero`] for the same cross-check.
pub fn theta4_zero(modular: &ModularParameter, policy: &PrecisionPolicy) -> Result<C64> {
    policy.validate()?;
    let pi = std::f64::consts::PI;
    let tau = modular.tau();
    let tail = sum_series(
        |j| {
            let n = (j + 1) as f64;
            let sign = if (j + 1) % 2 == 0 { 1.0 } else { -1.0 };
            2.0 * sign * (C64::i() * pi * tau * n * n).exp()
        },
        1.0,
        policy,
        "theta4_zero",
    )?;
    Ok(C64::new(1.0, 0.0) + tail)
}

/// Complex helper: returns true when `a` and `b` agree to `tol` relative to
/// the larger magnitude (absolute near zero).
#[cfg(test)]
pub(crate) fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn mp(re: f64, im: f64) -> ModularParameter {
        ModularParameter::new(C64::new(re, im)).unwrap()
    }

    fn pol() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn nome_examples() {
        let q = nome(C64::new(0.0, 1.0)).unwrap();
        assert!((q - fixtures::lookup_c("nome", &[0.0, 1.0])).norm() < 1e-15);
        let q = nome(C64::new(0.5, 2.0)).unwrap();
        assert!((q - fixtures::lookup_c("nome", &[0.5, 2.0])).norm() < 1e-15);
        assert!(q.norm() < 1.0);
        assert!(matches!(
            nome(C64::new(0.0, -1.0)),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn reduction_examples() {
        let m = mp(0.0, 1.0);
        let r = reduce_argument(C64::new(0.1, 0.0), &m, ThetaKind::Theta3);
        assert_eq!((r.m, r.k), (0, 0));
        assert!((r.z0 - C64::new(0.1, 0.0)).norm() < 1e-15);
        assert!((r.multiplier - C64::new(1.0, 0.0)).norm() < 1e-15);

        let r = reduce_argument(C64::new(1.1, 0.0), &m, ThetaKind::Theta3);
        assert_eq!((r.m, r.k), (1, 0));
        assert!((r.z0 - C64::new(0.1, 0.0)).norm() < 1e-15);
        assert!((r.multiplier - C64::new(1.0, 0.0)).norm() < 1e-15);

        let r = reduce_argument(C64::new(0.1, 1.0), &m, ThetaKind::Theta1);
        assert_eq!((r.m, r.k), (0, 1));
        let frozen = fixtures::lookup_c("theta1_reduce_mult", &[0.1, 1.0, 0.0, 1.0]);
        assert!(close(r.multiplier, frozen, 1e-14));
        // the multiplier is exactly what makes theta1(z) = mult * theta1(z0)
        let lhs = theta1(C64::new(0.1, 1.0), &m, &pol()).unwrap();
        let rhs = r.multiplier * theta1_unreduced(r.z0, &m, &pol()).unwrap();
        assert!(close(lhs, rhs, 1e-13));
    }

    #[test]
    fn theta1_basics() {
        let m = mp(0.0, 1.0);
        assert_eq!(theta1(C64::new(0.0, 0.0), &m, &pol()).unwrap().norm(), 0.0);
        let plus = theta1(C64::new(0.3, 0.0), &m, &pol()).unwrap();
        let minus = theta1(C64::new(-0.3, 0.0), &m, &pol()).unwrap();
        assert!((plus + minus).norm() < 1e-14 * plus.norm());
        let frozen = fixtures::lookup_c("theta1", &[0.3, 0.0, 0.0, 1.0]);
        assert!(close(plus, frozen, 1e-14));
        let frozen = fixtures::lookup_c("theta1", &[0.21, 0.13, 0.3, 0.9]);
        let got = theta1(C64::new(0.21, 0.13), &mp(0.3, 0.9), &pol()).unwrap();
        assert!(close(got, frozen, 1e-14));
    }

    #[test]
    fn theta3_basics() {
        let m = mp(0.0, 1.0);
        let v0 = theta3(C64::new(0.0, 0.0), &m, &pol()).unwrap();
        assert!(close(v0, fixtures::lookup_c("theta3", &[0.0, 0.0, 0.0, 1.0]), 1e-14));
        let m8 = mp(0.0, 0.8);
        let z = C64::new(0.2, 0.1);
        let a = theta3(z, &m8, &pol()).unwrap();
        assert!(close(a, fixtures::lookup_c("theta3", &[0.2, 0.1, 0.0, 0.8]), 1e-14));
        // period 1 (reduction makes this an identical sum)
        let b = theta3(z + 1.0, &m8, &pol()).unwrap();
        assert!((a - b).norm() <= 1e-15 * a.norm());
        // evenness
        let c = theta3(-z, &m8, &pol()).unwrap();
        assert!((a - c).norm() < 1e-14 * a.norm());
    }

    #[test]
    fn deriv_zero_golden_and_identities() {
        let m = mp(0.0, 1.0);
        let d0 = theta1_deriv_zero(&m, &pol()).unwrap();
        assert!(close(d0, fixtures::lookup_c("theta1_d0", &[0.0, 1.0]), 1e-14));
        // theta1'(0) = pi * theta2(0) theta3(0) theta4(0)
        let prod = std::f64::consts::PI
            * theta2_zero(&m, &pol()).unwrap()
            * theta3(C64::new(0.0, 0.0), &m, &pol()).unwrap()
            * theta4_zero(&m, &pol()).unwrap();
        assert!(close(d0, prod, 1e-12));
        // finite, nonzero for tau = 2i
        let d2 = theta1_deriv_zero(&mp(0.0, 2.0), &pol()).unwrap();
        assert!(d2.is_finite() && d2.norm() > 0.0);
        assert!(close(d2, fixtures::lookup_c("theta1_d0", &[0.0, 2.0]), 1e-14));
    }

    #[test]
    fn deriv_half_period_identity() {
        // theta3'((1+tau)/2) = i exp(-pi i tau/4) theta1'(0), checked against a
        // central difference of theta3 itself.
        let m = mp(0.3, 0.9);
        let lhs = theta3_deriv_half_period(&m, &pol()).unwrap();
        let h = 1e-6;
        let z = m.half_period_sum();
        let num = (theta3(z + h, &m, &pol()).unwrap() - theta3(z - h, &m, &pol()).unwrap())
            / (2.0 * h);
        assert!(close(lhs, num, 1e-8));
    }

    #[test]
    fn theta_shifted_examples() {
        let m = mp(0.0, 1.0);
        let z = theta_shifted(C64::new(0.2, 0.0), C64::new(0.2, 0.0), &m, &pol()).unwrap();
        assert!(z.norm() < 1e-12);
        let m8 = mp(0.0, 0.8);
        let a = theta_shifted(C64::new(0.0, 0.0), C64::new(0.4, 0.0), &m8, &pol()).unwrap();
        let b = theta3(C64::new(0.4, 0.0) + m8.half_period_sum(), &m8, &pol()).unwrap();
        assert!((a - b).norm() < 1e-15 * a.norm());
        let frozen = fixtures::lookup_c("theta_shifted", &[0.1, 0.0, 0.4, 0.0, 0.0, 0.8]);
        let got = theta_shifted(C64::new(0.1, 0.0), C64::new(0.4, 0.0), &m8, &pol()).unwrap();
        assert!(close(got, frozen, 1e-14));
    }

    #[test]
    fn precision_budget_error() {
        // |q| is close to 1 for shallow tau; 8 terms cannot converge
        let m = mp(0.0, 0.05);
        let tight = PrecisionPolicy {
            target_abs_error: 1e-14,
            max_series_terms: 8,
        };
        assert!(matches!(
            theta3(C64::new(0.2, 0.0), &m, &tight),
            Err(Error::Precision { .. })
        ));
    }

    #[test]
    fn zero_structure() {
        let m = mp(0.0, 1.0);
        let scale = theta1_deriv_zero(&m, &pol()).unwrap().norm();
        for mm in -1i64..=1 {
            for kk in -1i64..=1 {
                let z = C64::new(mm as f64, 0.0) + m.tau() * kk as f64;
                let v = theta1(z, &m, &pol()).unwrap();
                assert!(v.norm() < 1e-10 * scale, "theta1({mm}+{kk}tau) = {v}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn quasi_periodicity(zr in -1.5f64..1.5, zi in -1.5f64..1.5,
                             tr in -0.4f64..0.4, ti in 0.5f64..2.0) {
            let m = mp(tr, ti);
            let z = C64::new(zr, zi);
            let p = pol();
            let t3 = theta3(z, &m, &p).unwrap();
            let t3s = theta3(z + 1.0, &m, &p).unwrap();
            prop_assert!((t3 - t3s).norm() <= 1e-12 * t3.norm().max(1.0));
            let t1 = theta1(z, &m, &p).unwrap();
            let t1s = theta1(z + 1.0, &m, &p).unwrap();
            prop_assert!((t1 + t1s).norm() <= 1e-12 * t1.norm().max(1.0));
            // tau shifts: theta1(z+tau) = -exp(-i pi (tau + 2z)) theta1(z),
            // theta3 picks up the same factor without the sign
            let lam = -(-C64::i() * std::f64::consts::PI * (m.tau() + 2.0 * z)).exp();
            let t1t = theta1(z + m.tau(), &m, &p).unwrap();
            prop_assert!((t1t - lam * t1).norm() <= 1e-12 * t1t.norm().max(lam.norm() * t1.norm()).max(1.0));
            let t3t = theta3(z + m.tau(), &m, &p).unwrap();
            prop_assert!((t3t + lam * t3).norm() <= 1e-12 * t3t.norm().max(lam.norm() * t3.norm()).max(1.0));
        }

        #[test]
        fn parity(zr in -1.0f64..1.0, zi in -0.9f64..0.9,
                  tr in -0.4f64..0.4, ti in 0.5f64..2.0) {
            let m = mp(tr, ti);
            let z = C64::new(zr, zi);
            let p = pol();
            let t1p = theta1(z, &m, &p).unwrap();
            let t1m = theta1(-z, &m, &p).unwrap();
            prop_assert!((t1p + t1m).norm() <= 1e-14 * t1p.norm().max(1.0));
            let t3p = theta3(z, &m, &p).unwrap();
            let t3m = theta3(-z, &m, &p).unwrap();
            prop_assert!((t3p - t3m).norm() <= 1e-14 * t3p.norm().max(1.0));
        }

        #[test]
        fn reduction_consistency(zr in -0.5f64..0.5, zi in -0.8f64..0.8,
                                 ti in 0.8f64..1.5) {
            let m = mp(0.0, ti);
            let z = C64::new(zr, zi);
            let p = pol();
            // the unreduced series converges in this box; both paths must agree
            let a = theta3(z, &m, &p).unwrap();
            let b = theta3_unreduced(z, &m, &p).unwrap();
            prop_assert!((a - b).norm() <= 1e-10 * a.norm().max(1.0));
            let a = theta1(z, &m, &p).unwrap();
            let b = theta1_unreduced(z, &m, &p).unwrap();
            prop_assert!((a - b).norm() <= 1e-10 * a.norm().max(1.0));
        }
    }
}
