//! The elliptic solution of the associative Yang-Baxter equation.
//!
//! For a coprime type `(n, d)` and modular parameter `tau`, the solution is
//!
//! ```text
//! r(v; x1, x2) = sum_{(k,l) in I} exp(2 pi i d k x / n)
//!                * sigma(v + (d/n)(k tau + l), x)
//!                * Zdual_(k,l) (x) Z_(k,l),          x = x2 - x1,
//! ```
//!
//! skew-symmetric, periodic in `v` with period 1, and quasi-periodic under
//! `v -> v + tau` with multiplier `exp(-2 pi i x)`. Its poles in `v` sit on
//! the finite set `{-(d/n)(k tau + l)} mod Lambda`, tabulated at
//! construction time so evaluation can refuse near-pole points with an exact
//! diagnostic.

use crate::error::{Error, Result, C64};
use crate::heisenberg::{heisenberg_pair, HeisenbergPair};
use crate::kronecker::{kronecker_sigma, POLE_PROXIMITY};
use crate::tensor::TwoTensor;
use crate::theta::{
    nearest_lattice, theta1, theta1_deriv_zero, theta3, theta3_deriv_half_period,
    ModularParameter, PrecisionPolicy,
};

/// The discrete datum `(n, d)` with its modular parameter; owns the
/// precomputed basis tensors and the pole table.
#[derive(Debug, Clone)]
pub struct SolutionParams {
    n: usize,
    d: usize,
    modular: ModularParameter,
    policy: PrecisionPolicy,
    pair: HeisenbergPair,
    /// `Zdual_(k,l) (x) Z_(k,l)` for `(k,l)` in row-major order over `I`.
    basis_tensors: Vec<TwoTensor>,
    /// The offsets `(d/n)(k tau + l)` in the same order.
    offsets: Vec<C64>,
    /// Distance from `v = 0` to the nearest pole other than `v = 0` itself.
    min_nonzero_pole_distance: f64,
}

/// A point `(v; x1, x2)` at which the solution is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationPoint {
    pub v: C64,
    pub x1: C64,
    pub x2: C64,
}

impl EvaluationPoint {
    pub fn new(v: C64, x1: C64, x2: C64) -> Self {
        EvaluationPoint { v, x1, x2 }
    }
}

impl SolutionParams {
    pub fn new(n: usize, d: usize, modular: ModularParameter) -> Result<Self> {
        Self::with_policy(n, d, modular, PrecisionPolicy::default())
    }

    pub fn with_policy(
        n: usize,
        d: usize,
        modular: ModularParameter,
        policy: PrecisionPolicy,
    ) -> Result<Self> {
        policy.validate()?;
        let pair = heisenberg_pair(n, d)?;
        let tau = modular.tau();
        let mut basis_tensors = Vec::with_capacity(n * n);
        let mut offsets = Vec::with_capacity(n * n);
        let mut min_dist = f64::INFINITY;
        for (k, l) in pair.index_set() {
            basis_tensors.push(TwoTensor::simple(&pair.z_dual(k, l)?, &pair.z_basis(k, l)?)?);
            let off = (tau * k as f64 + l as f64) * (d as f64 / n as f64);
            // pole at v = -off mod Lambda; the (n,n) slot contributes v = 0
            let dist = nearest_lattice(off, &modular).distance;
            if (k, l) != (n, n) && dist > POLE_PROXIMITY {
                min_dist = min_dist.min(dist);
            }
            offsets.push(off);
        }
        Ok(SolutionParams {
            n,
            d,
            modular,
            policy,
            pair,
            basis_tensors,
            offsets,
            min_nonzero_pole_distance: min_dist,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn modular(&self) -> &ModularParameter {
        &self.modular
    }

    pub fn policy(&self) -> &PrecisionPolicy {
        &self.policy
    }

    pub fn pair(&self) -> &HeisenbergPair {
        &self.pair
    }

    /// Distance from the origin to the nearest `v`-pole other than `v = 0`.
    pub fn min_nonzero_pole_distance(&self) -> f64 {
        self.min_nonzero_pole_distance
    }

    fn slot(&self, k: usize, l: usize) -> usize {
        (k - 1) * self.n + (l - 1)
    }

    /// Minimum over the pole constraints at `(v; x1, x2)`: the distance of
    /// `x2 - x1` to the lattice and of `v` to each tabulated pole.
    pub fn pole_distance(&self, pt: &EvaluationPoint) -> f64 {
        let x = pt.x2 - pt.x1;
        let mut dist = nearest_lattice(x, &self.modular).distance;
        for off in &self.offsets {
            dist = dist.min(nearest_lattice(pt.v + off, &self.modular).distance);
        }
        dist
    }

    fn check_poles(&self, pt: &EvaluationPoint) -> Result<()> {
        let x = pt.x2 - pt.x1;
        let near = nearest_lattice(x, &self.modular);
        if near.distance < POLE_PROXIMITY {
            return Err(Error::pole(
                near.m,
                near.k,
                near.distance,
                "x2 - x1 on the lattice",
            ));
        }
        for (idx, off) in self.offsets.iter().enumerate() {
            let near = nearest_lattice(pt.v + off, &self.modular);
            if near.distance < POLE_PROXIMITY {
                let (k, l) = (idx / self.n + 1, idx % self.n + 1);
                return Err(Error::pole(
                    near.m,
                    near.k,
                    near.distance,
                    format!("v hits the pole of slot ({k}, {l})"),
                ));
            }
        }
        Ok(())
    }

    /// Evaluates the closed-form solution at `pt`.
    pub fn r_elliptic(&self, pt: &EvaluationPoint) -> Result<TwoTensor> {
        self.check_poles(pt)?;
        let n = self.n;
        let x = pt.x2 - pt.x1;
        let d0 = theta1_deriv_zero(&self.modular, &self.policy)?;
        let th_x = theta1(x, &self.modular, &self.policy)?;
        // sigma(u, x) = c0 * theta1(u + x) / theta1(u)
        let c0 = d0 / th_x;
        let mut out = TwoTensor::zeros(n);
        let two_pi_i = C64::i() * std::f64::consts::TAU;
        for (idx, off) in self.offsets.iter().enumerate() {
            let k = idx / n + 1;
            let u = pt.v + off;
            let sigma = c0 * theta1(u + x, &self.modular, &self.policy)?
                / theta1(u, &self.modular, &self.policy)?;
            let coeff = (two_pi_i * (self.d as f64) * (k as f64) * x / n as f64).exp() * sigma;
            out.axpy(coeff, &self.basis_tensors[idx]);
        }
        Ok(out)
    }

    /// The theta-quotient coefficient of slot `(k, l)` from the residue and
    /// evaluation construction:
    ///
    /// ```text
    /// r_(k,l)(v; z) = exp(-2 pi i d k z / n)
    ///   * theta3'((1+tau)/2) theta3(z + v + (1+tau)/2 - (d/n)(k tau - l))
    ///   / (theta3(v + (1+tau)/2 - (d/n)(k tau - l)) theta3(z + (1+tau)/2))
    /// ```
    ///
    /// equal to `exp(-2 pi i d k z / n) sigma(v - (d/n)(k tau - l), z)`.
    pub fn r_coeff_theta(&self, k: usize, l: usize, v: C64, z: C64) -> Result<C64> {
        if k == 0 || k > self.n || l == 0 || l > self.n {
            return Err(Error::parameter(format!(
                "slot ({k}, {l}) outside the index set"
            )));
        }
        let tau = self.modular.tau();
        let shift = (tau * k as f64 - l as f64) * (self.d as f64 / self.n as f64);
        // denominator theta3(v + (1+tau)/2 - shift) vanishes iff v = shift mod Lambda
        let near = nearest_lattice(v - shift, &self.modular);
        if near.distance < POLE_PROXIMITY {
            return Err(Error::pole(
                near.m,
                near.k,
                near.distance,
                format!("v hits the theta zero of slot ({k}, {l})"),
            ));
        }
        let near = nearest_lattice(z, &self.modular);
        if near.distance < POLE_PROXIMITY {
            return Err(Error::pole(near.m, near.k, near.distance, "z on the lattice"));
        }
        let half = self.modular.half_period_sum();
        let two_pi_i = C64::i() * std::f64::consts::TAU;
        let pre = (-two_pi_i * (self.d as f64) * (k as f64) * z / self.n as f64).exp();
        let num = theta3_deriv_half_period(&self.modular, &self.policy)?
            * theta3(z + v + half - shift, &self.modular, &self.policy)?;
        let den = theta3(v + half - shift, &self.modular, &self.policy)?
            * theta3(z + half, &self.modular, &self.policy)?;
        Ok(pre * num / den)
    }

    /// The tabulated `Zdual_(k,l) (x) Z_(k,l)` tensor for a slot.
    pub fn basis_tensor(&self, k: usize, l: usize) -> Result<&TwoTensor> {
        if k == 0 || k > self.n || l == 0 || l > self.n {
            return Err(Error::parameter("slot outside the index set"));
        }
        Ok(&self.basis_tensors[self.slot(k, l)])
    }

    /// `sigma(u, z)` with this parameter set's modular data.
    pub fn sigma(&self, u: C64, z: C64) -> Result<C64> {
        kronecker_sigma(u, z, &self.modular, &self.policy)
    }
}

/// Anything that evaluates an `A (x) A`-valued function of `(v; x1, x2)`.
///
/// Implementations must be pure: identical arguments yield identical
/// tensors, which the verifier relies on for reproducible reports.
pub trait REvaluator {
    fn n(&self) -> usize;
    fn eval(&self, v: C64, x1: C64, x2: C64) -> Result<TwoTensor>;
    /// Distance to the nearest singularity, used to pre-screen sample
    /// points; the default accepts everything.
    fn pole_distance(&self, _v: C64, _x1: C64, _x2: C64) -> f64 {
        f64::INFINITY
    }
}

impl REvaluator for SolutionParams {
    fn n(&self) -> usize {
        self.n
    }

    fn eval(&self, v: C64, x1: C64, x2: C64) -> Result<TwoTensor> {
        self.r_elliptic(&EvaluationPoint::new(v, x1, x2))
    }

    fn pole_distance(&self, v: C64, x1: C64, x2: C64) -> f64 {
        SolutionParams::pole_distance(self, &EvaluationPoint::new(v, x1, x2))
    }
}

/// Wraps a closure as an [`REvaluator`]; used for fault-injected and
/// constant evaluators in tests and negative controls.
pub struct FnEvaluator<F> {
    pub n: usize,
    pub f: F,
}

impl<F> REvaluator for FnEvaluator<F>
where
    F: Fn(C64, C64, C64) -> Result<TwoTensor>,
{
    fn n(&self) -> usize {
        self.n
    }

    fn eval(&self, v: C64, x1: C64, x2: C64) -> Result<TwoTensor> {
        (self.f)(v, x1, x2)
    }
}
