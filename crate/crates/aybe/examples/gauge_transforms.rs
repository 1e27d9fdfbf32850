//! Gauge transformations: conjugation by a matrix family and scalar
//! exponential rescaling, with the identity re-verified afterwards.

use aybe::elliptic::{REvaluator, SolutionParams};
use aybe::gauge::{gauge_conjugate, gauge_scalar, ConjugationMode};
use aybe::matrix::SquareMatrix;
use aybe::theta::ModularParameter;
use aybe::verify::{tolerances, verify_aybe, SampleScheme};
use aybe::C64;

fn main() -> aybe::Result<()> {
    let params = SolutionParams::new(2, 1, ModularParameter::new(C64::new(0.0, 0.8))?)?;
    let scheme = SampleScheme::default().with_count(60).with_seed(19);

    // phi(x) = I + x E_01 is invertible for every x (det = 1)
    let conjugated = gauge_conjugate(
        params.clone(),
        |x: C64| {
            let mut m = SquareMatrix::identity(2);
            m[(0, 1)] = x;
            m
        },
        ConjugationMode::TwoPoint,
    );
    let rep = verify_aybe(&conjugated, &params, &scheme, tolerances::AYBE)?;
    println!(
        "two-point conjugation gauge: {} (max rel {:.3e})",
        rep.verdict, rep.max_rel
    );

    // the one-sided single-point variant is kept for comparison; measure it
    let one_point = gauge_conjugate(
        params.clone(),
        |x: C64| {
            let mut m = SquareMatrix::identity(2);
            m[(0, 1)] = x;
            m
        },
        ConjugationMode::OnePointLeft,
    );
    let rep = verify_aybe(&one_point, &params, &scheme, tolerances::AYBE)?;
    println!(
        "one-point left variant:      {} (max rel {:.3e}) - does not preserve the identity",
        rep.verdict, rep.max_rel
    );

    let scaled = gauge_scalar(params.clone(), |x: C64| C64::i() * std::f64::consts::TAU * x);
    let rep = verify_aybe(&scaled, &params, &scheme, tolerances::AYBE)?;
    println!(
        "scalar gauge exp(v(b(x1)-b(x2))): {} (max rel {:.3e})",
        rep.verdict, rep.max_rel
    );

    // a constant beta changes nothing
    let trivial = gauge_scalar(params.clone(), |_| C64::new(0.37, -0.2));
    let a = params.eval(C64::new(0.13, 0.07), C64::new(0.1, 0.0), C64::new(0.32, 0.0))?;
    let b = trivial.eval(C64::new(0.13, 0.07), C64::new(0.1, 0.0), C64::new(0.32, 0.0))?;
    println!("constant beta deviation: {:.3e}", a.sub(&b)?.max_abs());
    Ok(())
}
