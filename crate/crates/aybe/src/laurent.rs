//! Laurent coefficients of the solution around `v = 0`.
//!
//! The solution has a simple pole at `v = 0` and admits
//!
//! ```text
//! r(v; x1, x2) = c * (1 (x) 1) / v + r0(x1, x2) + v r1(x1, x2) + v^2 r2(x1, x2) + ...
//! ```
//!
//! Coefficients are extracted by discrete Fourier inversion over equispaced
//! points on a circle that encloses no other pole; the error estimate comes
//! from comparing against a run with twice the samples.

use std::collections::BTreeMap;

use crate::error::{Error, Result, C64};
use crate::elliptic::{EvaluationPoint, SolutionParams};
use crate::tensor::TwoTensor;

/// Orders extracted by [`laurent_expand`].
pub const ORDERS: [i32; 4] = [-1, 0, 1, 2];

#[derive(Debug, Clone)]
pub struct LaurentExpansion {
    pub x1: C64,
    pub x2: C64,
    pub coefficients: BTreeMap<i32, TwoTensor>,
    pub circle_radius: f64,
    pub sample_count: usize,
    pub est_error: f64,
}

fn dft_coefficients(
    params: &SolutionParams,
    x1: C64,
    x2: C64,
    radius: f64,
    samples: usize,
) -> Result<BTreeMap<i32, TwoTensor>> {
    let n = params.n();
    let mut out: BTreeMap<i32, TwoTensor> = ORDERS
        .iter()
        .map(|&m| (m, TwoTensor::zeros(n)))
        .collect();
    for j in 0..samples {
        let angle = std::f64::consts::TAU * j as f64 / samples as f64;
        let v = C64::from_polar(radius, angle);
        let t = params.r_elliptic(&EvaluationPoint::new(v, x1, x2))?;
        for (&m, acc) in out.iter_mut() {
            let w = v.powi(-m) / samples as f64;
            acc.axpy(w, &t);
        }
    }
    Ok(out)
}

/// Extracts the coefficients of orders -1..2 at `(x1, x2)`.
///
/// `radius` defaults to `0.05 *` the distance from `v = 0` to the nearest
/// other pole; passing a radius that reaches another pole is a parameter
/// error. `samples` is the base circle resolution (the returned coefficients
/// use `2 * samples`, and `est_error` is the disagreement between the runs).
pub fn laurent_expand(
    params: &SolutionParams,
    x1: C64,
    x2: C64,
    radius: Option<f64>,
    samples: usize,
) -> Result<LaurentExpansion> {
    if samples < 8 {
        return Err(Error::parameter("need at least 8 circle samples"));
    }
    let clearance = params.min_nonzero_pole_distance();
    let radius = radius.unwrap_or(0.05 * clearance);
    if !(radius > 0.0) {
        return Err(Error::parameter("radius must be positive"));
    }
    if radius >= clearance {
        return Err(Error::parameter(format!(
            "circle radius {radius} reaches a pole other than v = 0 (nearest at {clearance:.6})"
        )));
    }
    let coarse = dft_coefficients(params, x1, x2, radius, samples)?;
    let fine = dft_coefficients(params, x1, x2, radius, 2 * samples)?;
    let mut est_error = 0.0f64;
    for &m in ORDERS.iter() {
        let diff = fine[&m].sub(&coarse[&m])?.frobenius_norm();
        let scale = fine[&m].frobenius_norm().max(1.0);
        est_error = est_error.max(diff / scale);
    }
    Ok(LaurentExpansion {
        x1,
        x2,
        coefficients: fine,
        circle_radius: radius,
        sample_count: 2 * samples,
        est_error,
    })
}

impl LaurentExpansion {
    pub fn coefficient(&self, order: i32) -> Result<&TwoTensor> {
        self.coefficients
            .get(&order)
            .ok_or_else(|| Error::parameter(format!("order {order} not extracted")))
    }

    /// Projects the order -1 coefficient onto `1 (x) 1`: returns the scalar
    /// `c` and the relative mass of the components orthogonal to the
    /// identity tensor.
    pub fn residue_constant(&self) -> Result<(C64, f64)> {
        let t = self.coefficient(-1)?;
        let n = t.n();
        let id = TwoTensor::identity(n);
        let mut num = C64::new(0.0, 0.0);
        let mut den = 0.0f64;
        for (a, b) in id.entries().iter().zip(t.entries()) {
            num += a.conj() * b;
            den += a.norm_sqr();
        }
        let c = num / den;
        let off = t.sub(&id.scale(c))?.frobenius_norm() / c.norm().max(f64::MIN_POSITIVE);
        Ok((c, off))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::ModularParameter;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn params(n: usize, d: usize, tau: C64) -> SolutionParams {
        SolutionParams::new(n, d, ModularParameter::new(tau).unwrap()).unwrap()
    }

    #[test]
    fn residue_is_scaled_identity() {
        let p = params(2, 1, c(0.0, 1.0));
        let exp = laurent_expand(&p, c(0.1, 0.0), c(0.31, 0.07), None, 32).unwrap();
        let (cval, off) = exp.residue_constant().unwrap();
        assert!(off < 1e-8, "off-identity mass {off}");
        // measured residue constant: 1/n
        assert!((cval - c(0.5, 0.0)).norm() < 1e-10, "residue constant {cval}");
        assert!(exp.est_error < 1e-10);
    }

    #[test]
    fn r0_inherits_skew_symmetry() {
        let p = params(2, 1, c(0.0, 1.0));
        let (x1, x2) = (c(0.1, 0.0), c(0.31, 0.07));
        let a = laurent_expand(&p, x1, x2, None, 32).unwrap();
        let b = laurent_expand(&p, x2, x1, None, 32).unwrap();
        let r0 = a.coefficient(0).unwrap();
        let want = b.coefficient(0).unwrap().swap_legs().scale(c(-1.0, 0.0));
        let rel = r0.sub(&want).unwrap().frobenius_norm() / r0.frobenius_norm();
        assert!(rel < 1e-8, "r0 skew residual {rel}");
    }

    #[test]
    fn est_error_drops_with_samples() {
        // nearest nonzero pole for (5,2), tau = 0.8i sits at distance 0.16,
        // so a radius-0.05 circle leaves the 16-sample run visibly unconverged
        let p = params(5, 2, c(0.0, 0.8));
        assert!((p.min_nonzero_pole_distance() - 0.16).abs() < 1e-12);
        let coarse = laurent_expand(&p, c(0.1, 0.0), c(0.29, 0.05), Some(0.05), 16).unwrap();
        let fine = laurent_expand(&p, c(0.1, 0.0), c(0.29, 0.05), Some(0.05), 32).unwrap();
        assert!(
            fine.est_error < coarse.est_error,
            "est_error did not drop: {} vs {}",
            coarse.est_error,
            fine.est_error
        );
        assert!(coarse.est_error > 1e-12, "coarse run unexpectedly converged");
    }

    #[test]
    fn foreign_pole_is_rejected() {
        let p = params(2, 1, c(0.0, 1.0));
        // nearest nonzero pole at distance 0.5
        let err = laurent_expand(&p, c(0.1, 0.0), c(0.3, 0.0), Some(0.6), 16);
        assert!(matches!(err, Err(Error::Parameter(_))));
        let err = laurent_expand(&p, c(0.1, 0.0), c(0.3, 0.0), None, 4);
        assert!(matches!(err, Err(Error::Parameter(_))));
    }
}
