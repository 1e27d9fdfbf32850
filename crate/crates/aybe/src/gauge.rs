//! Gauge transformations acting on solution evaluators.
//!
//! Changing the trivialization of the underlying algebra bundle conjugates
//! the solution by `phi(x1) (x) phi(x2)` for a pointwise-invertible matrix
//! family `phi`; changing the line-bundle trivialization multiplies it by
//! `exp(v (beta(x1) - beta(x2)))` for a scalar function `beta`. Both leave
//! the defining identity intact, which the verifier measures rather than
//! assumes. A one-sided single-point variant (left multiplication by
//! `phi(x1) (x) phi(x1)`) is provided for comparison; it does not generally
//! preserve the identity.

use crate::error::{Error, Result, C64};
use crate::matrix::SquareMatrix;
use crate::tensor::TwoTensor;
use crate::elliptic::REvaluator;

/// How the matrix family acts on the two legs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjugationMode {
    /// `(phi(x1) (x) phi(x2)) r (phi(x1) (x) phi(x2))^(-1)`.
    TwoPoint,
    /// Left multiplication by `phi(x1) (x) phi(x1)` only.
    OnePointLeft,
}

/// Evaluator conjugated by a matrix-valued function of the curve parameter.
pub struct GaugeConjugate<E, F> {
    inner: E,
    phi: F,
    mode: ConjugationMode,
}

/// Wraps `inner` with the conjugation gauge transform.
pub fn gauge_conjugate<E, F>(inner: E, phi: F, mode: ConjugationMode) -> GaugeConjugate<E, F>
where
    E: REvaluator,
    F: Fn(C64) -> SquareMatrix,
{
    GaugeConjugate { inner, phi, mode }
}

impl<E, F> REvaluator for GaugeConjugate<E, F>
where
    E: REvaluator,
    F: Fn(C64) -> SquareMatrix,
{
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn eval(&self, v: C64, x1: C64, x2: C64) -> Result<TwoTensor> {
        let r = self.inner.eval(v, x1, x2)?;
        let p1 = (self.phi)(x1);
        if p1.n() != self.inner.n() {
            return Err(Error::parameter("phi returned a wrong-sized matrix"));
        }
        match self.mode {
            ConjugationMode::TwoPoint => {
                let p2 = (self.phi)(x2);
                let left = TwoTensor::simple(&p1, &p2)?;
                let right = TwoTensor::simple(
                    &p1.inverse()
                        .map_err(|_| Error::Numeric(format!("phi({x1}) is singular")))?,
                    &p2.inverse()
                        .map_err(|_| Error::Numeric(format!("phi({x2}) is singular")))?,
                )?;
                left.two_mul(&r)?.two_mul(&right)
            }
            ConjugationMode::OnePointLeft => TwoTensor::simple(&p1, &p1)?.two_mul(&r),
        }
    }

    fn pole_distance(&self, v: C64, x1: C64, x2: C64) -> f64 {
        self.inner.pole_distance(v, x1, x2)
    }
}

/// Evaluator rescaled by `exp(v (beta(x1) - beta(x2)))`.
pub struct GaugeScalar<E, F> {
    inner: E,
    beta: F,
}

/// Wraps `inner` with the scalar gauge transform.
pub fn gauge_scalar<E, F>(inner: E, beta: F) -> GaugeScalar<E, F>
where
    E: REvaluator,
    F: Fn(C64) -> C64,
{
    GaugeScalar { inner, beta }
}

impl<E, F> REvaluator for GaugeScalar<E, F>
where
    E: REvaluator,
    F: Fn(C64) -> C64,
{
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn eval(&self, v: C64, x1: C64, x2: C64) -> Result<TwoTensor> {
        let r = self.inner.eval(v, x1, x2)?;
        let factor = (v * ((self.beta)(x1) - (self.beta)(x2))).exp();
        Ok(r.scale(factor))
    }

    fn pole_distance(&self, v: C64, x1: C64, x2: C64) -> f64 {
        self.inner.pole_distance(v, x1, x2)
    }
}
