//! Evaluating the Jacobi theta functions: series, argument reduction, and
//! the derivative identities used elsewhere in the crate.

use aybe::theta::{
    reduce_argument, theta1, theta1_deriv_zero, theta3, theta3_deriv_half_period,
    ModularParameter, PrecisionPolicy, ThetaKind,
};
use aybe::C64;

fn main() -> aybe::Result<()> {
    let modular = ModularParameter::new(C64::new(0.0, 1.0))?;
    let policy = PrecisionPolicy::default();
    println!("tau = {}, nome q = {}", modular.tau(), modular.q());

    for z in [C64::new(0.3, 0.0), C64::new(0.21, 0.13), C64::new(-1.7, 2.4)] {
        println!(
            "theta1({z}) = {}\ntheta3({z}) = {}",
            theta1(z, &modular, &policy)?,
            theta3(z, &modular, &policy)?
        );
    }

    // arguments far outside the fundamental strip are reduced automatically
    let z = C64::new(0.1, 3.0);
    let red = reduce_argument(z, &modular, ThetaKind::Theta1);
    println!(
        "reduce {z}: z0 = {}, m = {}, k = {}, multiplier = {}",
        red.z0, red.m, red.k, red.multiplier
    );

    let d0 = theta1_deriv_zero(&modular, &policy)?;
    println!("theta1'(0)           = {d0}");
    println!(
        "theta3'((1+tau)/2)   = {} (via i exp(-pi i tau/4) theta1'(0))",
        theta3_deriv_half_period(&modular, &policy)?
    );

    // theta3 vanishes at the half period
    let half = modular.half_period_sum();
    println!(
        "|theta3((1+tau)/2)|  = {:.3e} (the zero of theta3)",
        theta3(half, &modular, &policy)?.norm()
    );
    Ok(())
}
