//! The residue/evaluation construction of the solution.
//!
//! For fixed `(v, x)` the space of holomorphic matrix functions with
//!
//! ```text
//! F(w + 1)   = Ad_X(F(w))
//! F(w + tau) = phi_{x-v}(w) Ad_Y(F(w)),   phi_x(w) = -exp(-2 pi i (w + tau - x)),
//! ```
//!
//! has dimension `n^2`. Expanding `F = sum f_(k,l) Z_(k,l)`, each coefficient
//! lives in a one-dimensional space generated by
//!
//! ```text
//! f_(k,l)(w) = exp(-2 pi i d k w / n)
//!            * theta3(w + (1+tau)/2 + v - x - (d/n)(k tau - l)),
//! ```
//!
//! which satisfies `f(w+1) = eps^(-k) f(w)` and
//! `f(w+tau) = eps^(-l) phi_{x-v}(w) f(w)`, matching the conjugation
//! eigenvalues of the printed clock-and-shift pair. The residue map
//! `F -> F(x)/theta3'((1+tau)/2)` and evaluation map
//! `F -> F(y)/theta3(y - x + (1+tau)/2)` are both diagonal on these lines,
//! so the composite `alpha = ev o res^(-1)` is assembled from scalar ratios;
//! a dense solve is kept as a cross-check.

use crate::error::{Error, Result, C64};
use crate::heisenberg::ad;
use crate::kronecker::POLE_PROXIMITY;
use crate::matrix::SquareMatrix;
use crate::tensor::{can_inv, LinearEndo, TwoTensor};
use crate::theta::{nearest_lattice, theta3, theta3_deriv_half_period, theta_shifted};
use crate::elliptic::{REvaluator, SolutionParams};

/// `phi_x(w) = -exp(-2 pi i (w + tau - x))`, the automorphy factor of the
/// degree-one twist.
pub fn phi_factor(x: C64, w: C64, tau: C64) -> C64 {
    -(-C64::i() * std::f64::consts::TAU * (w + tau - x)).exp()
}

/// The generator of the `(k, l)` coefficient line, evaluated at `w`.
pub fn sol_basis_eval(
    params: &SolutionParams,
    v: C64,
    x: C64,
    k: usize,
    l: usize,
    w: C64,
) -> Result<C64> {
    let n = params.n();
    if k == 0 || k > n || l == 0 || l > n {
        return Err(Error::parameter(format!(
            "slot ({k}, {l}) outside the index set"
        )));
    }
    let d = params.d() as f64;
    let tau = params.modular().tau();
    let shift = (tau * k as f64 - l as f64) * (d / n as f64);
    let exp_part = (-C64::i() * std::f64::consts::TAU * d * (k as f64) * w / n as f64).exp();
    Ok(exp_part * theta_shifted(x - v + shift, w, params.modular(), params.policy())?)
}

/// An element of the section space: coordinates with respect to the
/// `f_(k,l)` basis at a fixed `(v, x)`.
#[derive(Debug, Clone)]
pub struct SolSpaceElement {
    params: SolutionParams,
    v: C64,
    x: C64,
    coeffs: Vec<C64>,
}

impl SolSpaceElement {
    pub fn new(params: SolutionParams, v: C64, x: C64, coeffs: Vec<C64>) -> Result<Self> {
        let n = params.n();
        if coeffs.len() != n * n {
            return Err(Error::parameter(format!(
                "expected {} coefficients, got {}",
                n * n,
                coeffs.len()
            )));
        }
        Ok(SolSpaceElement { params, v, x, coeffs })
    }

    /// The element with a single unit coefficient on slot `(k, l)`.
    pub fn unit(params: SolutionParams, v: C64, x: C64, k: usize, l: usize) -> Result<Self> {
        let n = params.n();
        if k == 0 || k > n || l == 0 || l > n {
            return Err(Error::parameter("slot outside the index set"));
        }
        let mut coeffs = vec![C64::new(0.0, 0.0); n * n];
        coeffs[(k - 1) * n + (l - 1)] = C64::new(1.0, 0.0);
        SolSpaceElement::new(params, v, x, coeffs)
    }

    pub fn params(&self) -> &SolutionParams {
        &self.params
    }

    pub fn v(&self) -> C64 {
        self.v
    }

    pub fn x(&self) -> C64 {
        self.x
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }
}

/// `F(w) = sum coeffs_(k,l) f_(k,l)(w) Z_(k,l)`.
pub fn sol_element_eval(elem: &SolSpaceElement, w: C64) -> Result<SquareMatrix> {
    let params = &elem.params;
    let n = params.n();
    let mut out = SquareMatrix::zeros(n);
    for (k, l) in params.pair().index_set() {
        let c = elem.coeffs[(k - 1) * n + (l - 1)];
        if c.norm_sqr() == 0.0 {
            continue;
        }
        let f = sol_basis_eval(params, elem.v, elem.x, k, l, w)?;
        let z = params.pair().z_basis(k, l)?;
        out = out.add(&z.scale(c * f))?;
    }
    Ok(out)
}

/// Residue map: `F(x) / theta3'((1+tau)/2)`.
pub fn res_map(elem: &SolSpaceElement) -> Result<SquareMatrix> {
    let scale = theta3_deriv_half_period(elem.params.modular(), elem.params.policy())?;
    Ok(sol_element_eval(elem, elem.x)?.scale(scale.inv()))
}

/// Evaluation map: `F(y) / theta3(y - x + (1+tau)/2)`. The denominator
/// vanishes exactly when `y = x` mod the lattice.
pub fn ev_map(elem: &SolSpaceElement, y: C64) -> Result<SquareMatrix> {
    let modular = elem.params.modular();
    let near = nearest_lattice(y - elem.x, modular);
    if near.distance < POLE_PROXIMITY {
        return Err(Error::pole(
            near.m,
            near.k,
            near.distance,
            "evaluation point coincides with the residue point",
        ));
    }
    let den = theta3(y - elem.x + modular.half_period_sum(), modular, elem.params.policy())?;
    Ok(sol_element_eval(elem, y)?.scale(den.inv()))
}

/// Per-slot scalars of `alpha = ev o res^(-1)`; shared by both assembly routes.
fn alpha_scalars(params: &SolutionParams, v: C64, x: C64, y: C64) -> Result<Vec<C64>> {
    let n = params.n();
    let modular = params.modular();
    let tau = modular.tau();
    let z = y - x;
    let near = nearest_lattice(z, modular);
    if near.distance < POLE_PROXIMITY {
        return Err(Error::pole(
            near.m,
            near.k,
            near.distance,
            "y - x on the lattice",
        ));
    }
    let dhalf = theta3_deriv_half_period(modular, params.policy())?;
    let ev_den = theta3(z + modular.half_period_sum(), modular, params.policy())?;
    let mut rho = Vec::with_capacity(n * n);
    for (k, l) in params.pair().index_set() {
        // f_(k,l)(x) vanishes exactly at v = (d/n)(k tau - l) mod Lambda,
        // the finite bad set where the residue map degenerates
        let shift = (tau * k as f64 - l as f64) * (params.d() as f64 / n as f64);
        let bad = nearest_lattice(v - shift, modular);
        if bad.distance < POLE_PROXIMITY {
            return Err(Error::Degenerate {
                condition: 1.0 / bad.distance.max(f64::MIN_POSITIVE),
                context: format!(
                    "residue map degenerates at v = {v} (slot ({k}, {l}))"
                ),
            });
        }
        let fx = sol_basis_eval(params, v, x, k, l, x)?;
        let fy = sol_basis_eval(params, v, x, k, l, y)?;
        rho.push(dhalf * fy / (fx * ev_den));
    }
    Ok(rho)
}

/// The unique endomorphism with `alpha o res = ev`, assembled per eigenline.
pub fn alpha_endo(params: &SolutionParams, v: C64, x: C64, y: C64) -> Result<LinearEndo> {
    let n = params.n();
    let rho = alpha_scalars(params, v, x, y)?;
    let mut t = TwoTensor::zeros(n);
    for (idx, (k, l)) in params.pair().index_set().enumerate() {
        t.axpy(rho[idx], params.basis_tensor(k, l)?);
    }
    Ok(t.can())
}

/// Dense cross-check for [`alpha_endo`]: assembles the residue and
/// evaluation matrices in the `f`-basis and solves.
pub fn alpha_endo_dense(params: &SolutionParams, v: C64, x: C64, y: C64) -> Result<LinearEndo> {
    let n = params.n();
    let m = n * n;
    let mut res_mat = SquareMatrix::zeros(m);
    let mut ev_mat = SquareMatrix::zeros(m);
    for (idx, (k, l)) in params.pair().index_set().enumerate() {
        let elem = SolSpaceElement::unit(params.clone(), v, x, k, l)?;
        let r = res_map(&elem)?;
        let e = ev_map(&elem, y)?;
        for col in 0..n {
            for row in 0..n {
                res_mat[(col * n + row, idx)] = r[(row, col)];
                ev_mat[(col * n + row, idx)] = e[(row, col)];
            }
        }
    }
    let cond = res_mat.condition_estimate();
    if !cond.is_finite() || cond > 1e10 {
        return Err(Error::Degenerate {
            condition: cond,
            context: format!("residue matrix ill-conditioned at v = {v}"),
        });
    }
    let alpha = ev_mat.mul(&res_mat.inverse()?)?;
    LinearEndo::from_matrix(n, alpha)
}

/// Condition number of the residue map in the `f`-basis at `(v, x)`;
/// finite at generic `v`, blowing up on the finite bad set.
pub fn res_condition(params: &SolutionParams, v: C64, x: C64) -> Result<f64> {
    let n = params.n();
    let m = n * n;
    let mut res_mat = SquareMatrix::zeros(m);
    for (idx, (k, l)) in params.pair().index_set().enumerate() {
        let elem = SolSpaceElement::unit(params.clone(), v, x, k, l)?;
        let r = res_map(&elem)?;
        for col in 0..n {
            for row in 0..n {
                res_mat[(col * n + row, idx)] = r[(row, col)];
            }
        }
    }
    Ok(res_mat.condition_estimate())
}

/// The solution tensor recovered from the construction.
///
/// `can_inv(alpha)` carries the slot scalars on the lines `Zdual (x) Z`; the
/// coefficient of slot `(n-k, l)` here equals the closed-form coefficient of
/// slot `(k, l)`, so a leg-wise transpose (whose ordering phases cancel)
/// expresses the result in the same basis convention as
/// [`SolutionParams::r_elliptic`]. That identification is frozen by the
/// agreement test, which fits the remaining constant as 1.
pub fn r_from_construction(params: &SolutionParams, v: C64, x: C64, y: C64) -> Result<TwoTensor> {
    Ok(can_inv(&alpha_endo(params, v, x, y)?).transpose_legs())
}

/// Closed-form-compatible evaluator backed by the construction.
pub struct ConstructionEvaluator {
    pub params: SolutionParams,
}

impl REvaluator for ConstructionEvaluator {
    fn n(&self) -> usize {
        self.params.n()
    }

    fn eval(&self, v: C64, x1: C64, x2: C64) -> Result<TwoTensor> {
        r_from_construction(&self.params, v, x1, x2)
    }

    fn pole_distance(&self, v: C64, x1: C64, x2: C64) -> f64 {
        // same pole structure as the closed form
        REvaluator::pole_distance(&self.params, v, x1, x2)
    }
}

/// Residuals of the two defining functional equations on sampled points.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FunctionalEqReport {
    pub residual_period_1: f64,
    pub residual_period_tau: f64,
    pub sample_points: Vec<[f64; 2]>,
}

impl FunctionalEqReport {
    /// The report in the shared JSON record shape.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": 1,
            "kind": "functional_eq_report",
            "residual_period_1": self.residual_period_1,
            "residual_period_tau": self.residual_period_tau,
            "sample_points": self.sample_points,
        })
    }
}

/// Measures how well `F` satisfies the section-space laws at the given points.
pub fn functional_eq_report(elem: &SolSpaceElement, points: &[C64]) -> Result<FunctionalEqReport> {
    let params = &elem.params;
    let x_mat = params.pair().x_matrix();
    let y_mat = params.pair().y_matrix();
    let tau = params.modular().tau();
    let mut r1 = 0.0f64;
    let mut rt = 0.0f64;
    for &w in points {
        let f = sol_element_eval(elem, w)?;
        let f1 = sol_element_eval(elem, w + 1.0)?;
        let want1 = ad(&x_mat, &f)?;
        let scale = f1.frobenius_norm().max(want1.frobenius_norm()).max(1e-300);
        r1 = r1.max(f1.sub(&want1)?.frobenius_norm() / scale);
        let ft = sol_element_eval(elem, w + tau)?;
        let phi = phi_factor(elem.x - elem.v, w, tau);
        let want_t = ad(&y_mat, &f)?.scale(phi);
        let scale = ft.frobenius_norm().max(want_t.frobenius_norm()).max(1e-300);
        rt = rt.max(ft.sub(&want_t)?.frobenius_norm() / scale);
    }
    Ok(FunctionalEqReport {
        residual_period_1: r1,
        residual_period_tau: rt,
        sample_points: points.iter().map(|p| [p.re, p.im]).collect(),
    })
}
