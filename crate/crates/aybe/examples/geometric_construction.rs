//! The residue/evaluation route: the section space, its functional
//! equations, the diagonal endomorphism alpha, and agreement with the
//! closed form.

use aybe::construction::{
    alpha_endo, ev_map, functional_eq_report, r_from_construction, res_map, sol_basis_eval,
    SolSpaceElement,
};
use aybe::elliptic::{EvaluationPoint, SolutionParams};
use aybe::theta::ModularParameter;
use aybe::C64;

fn main() -> aybe::Result<()> {
    let params = SolutionParams::new(3, 1, ModularParameter::new(C64::new(0.1, 0.9))?)?;
    let v = C64::new(0.13, 0.07);
    let x = C64::new(0.1, 0.0);
    let y = C64::new(0.32, 0.04);

    // the basis functions satisfy the two quasi-periodicity laws
    let w = C64::new(0.21, -0.13);
    let f = sol_basis_eval(&params, v, x, 2, 1, w)?;
    let f1 = sol_basis_eval(&params, v, x, 2, 1, w + 1.0)?;
    println!(
        "f_(2,1)(w+1)/f_(2,1)(w) = {} (eps^-2 = {})",
        f1 / f,
        params.pair().eps_pow(-2)
    );

    // a full element stays inside the section space
    let elem = SolSpaceElement::new(
        params.clone(),
        v,
        x,
        (0..9).map(|i| C64::new(0.4 + 0.1 * i as f64, -0.1)).collect(),
    )?;
    let report = functional_eq_report(&elem, &[w, C64::new(-0.05, 0.31)])?;
    println!(
        "membership residuals: period 1 = {:.3e}, period tau = {:.3e}",
        report.residual_period_1, report.residual_period_tau
    );

    // residue and evaluation maps on a unit element
    let unit = SolSpaceElement::unit(params.clone(), v, x, 1, 2)?;
    println!("res(F) row 0: {:?}", {
        let r = res_map(&unit)?;
        (0..3).map(|j| r[(0, j)]).collect::<Vec<_>>()
    });
    println!("ev_y(F) row 0: {:?}", {
        let e = ev_map(&unit, y)?;
        (0..3).map(|j| e[(0, j)]).collect::<Vec<_>>()
    });

    // alpha is diagonal on the basis lines; its tensor matches the closed form
    let alpha = alpha_endo(&params, v, x, y)?;
    let z = params.pair().z_basis(1, 1)?;
    let image = alpha.apply(&z)?;
    println!("alpha on Z_(1,1): scalar = {}", image[(0, 1)] / z[(0, 1)]);

    let constructed = r_from_construction(&params, v, x, y)?;
    let closed = params.r_elliptic(&EvaluationPoint::new(v, x, y))?;
    let dev = constructed.sub(&closed)?.frobenius_norm() / closed.frobenius_norm();
    println!("construction vs closed form (no fitted constant): {dev:.3e}");
    Ok(())
}
