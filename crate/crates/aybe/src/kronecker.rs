//! The Kronecker elliptic function `sigma(u, z)`.
//!
//! The canonical definition used everywhere in this crate is the theta ratio
//!
//! ```text
//! sigma(u, z) = theta1'(0) * theta1(u + z) / (theta1(u) * theta1(z)),
//! ```
//!
//! symmetric in `(u, z)`, with simple poles on the lattice in each variable
//! and residue 1 at `z = 0`. A q-series form is provided as an optional
//! cross-check only; see [`kronecker_sigma_series`].

use crate::error::{Error, Result, C64};
use crate::theta::{
    nearest_lattice, theta1, theta1_deriv_zero, ModularParameter, PrecisionPolicy,
};

/// Distance to the lattice below which evaluation refuses to proceed and
/// reports a pole instead of returning a huge value.
pub const POLE_PROXIMITY: f64 = 1e-6;

/// Errors with a pole report if `w` is within [`POLE_PROXIMITY`] of the lattice.
pub fn check_pole(w: C64, modular: &ModularParameter, context: &str) -> Result<()> {
    let near = nearest_lattice(w, modular);
    if near.distance < POLE_PROXIMITY {
        return Err(Error::pole(near.m, near.k, near.distance, context.to_string()));
    }
    Ok(())
}

/// `sigma(u, z)` in the theta-ratio form.
pub fn kronecker_sigma(
    u: C64,
    z: C64,
    modular: &ModularParameter,
    policy: &PrecisionPolicy,
) -> Result<C64> {
    check_pole(u, modular, "sigma: u on the lattice")?;
    check_pole(z, modular, "sigma: z on the lattice")?;
    let d0 = theta1_deriv_zero(modular, policy)?;
    Ok(d0 * theta1(u + z, modular, policy)? / (theta1(u, modular, policy)? * theta1(z, modular, policy)?))
}

/// Which transcription of the q-series to evaluate.
///
/// Two forms of the denominator exponent circulate: `a - n*tau` and
/// `a - 2*pi*i*n*tau`. Only the first reproduces the theta-ratio function
/// (the second blows up with `n`); both are kept so the mismatch is
/// documented by an executable check rather than prose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaSeriesForm {
    /// `2 pi i * sum_n exp(-2 pi i n z) / (1 - exp(-2 pi i (a - n tau)))`
    LatticeShift,
    /// Same with `a - 2 pi i n tau` inside the exponent; does not converge
    /// to the function and is retained only for the documentation test.
    TwoPiLatticeShift,
}

/// Direct q-series evaluation of `sigma(a, z)`.
///
/// The [`SigmaSeriesForm::LatticeShift`] series converges only in the strip
/// `-Im(tau) < Im(z) < 0`; outside it a parameter error is returned. This is
/// a cross-check tool, not the production path.
pub fn kronecker_sigma_series(
    a: C64,
    z: C64,
    modular: &ModularParameter,
    form: SigmaSeriesForm,
    terms: usize,
) -> Result<C64> {
    if !(z.im < 0.0 && z.im > -modular.im_tau()) {
        return Err(Error::parameter(format!(
            "series form converges only for -Im(tau) < Im(z) < 0, got Im(z) = {}",
            z.im
        )));
    }
    check_pole(a, modular, "sigma series: a on the lattice")?;
    let tau = modular.tau();
    let two_pi_i = C64::i() * std::f64::consts::TAU;
    let mut sum = C64::new(0.0, 0.0);
    for n in -(terms as i64)..=(terms as i64) {
        let nf = n as f64;
        let inner = match form {
            SigmaSeriesForm::LatticeShift => a - nf * tau,
            SigmaSeriesForm::TwoPiLatticeShift => a - two_pi_i * nf * tau,
        };
        let den = C64::new(1.0, 0.0) - (-two_pi_i * inner).exp();
        if den.norm() == 0.0 || !den.is_finite() {
            return Err(Error::Numeric(format!(
                "series denominator degenerate at n = {n}"
            )));
        }
        sum += (-two_pi_i * nf * z).exp() / den;
    }
    Ok(two_pi_i * sum)
}
