//! The Kronecker elliptic function sigma(u, z): values, quasi-periodicity,
//! pole reporting, and the q-series cross-check.

use aybe::kronecker::{kronecker_sigma, kronecker_sigma_series, SigmaSeriesForm};
use aybe::theta::{ModularParameter, PrecisionPolicy};
use aybe::{C64, Error};

fn main() -> aybe::Result<()> {
    let modular = ModularParameter::new(C64::new(0.0, 1.0))?;
    let policy = PrecisionPolicy::default();
    let u = C64::new(0.2, 0.1);
    let z = C64::new(0.35, 0.0);

    let s = kronecker_sigma(u, z, &modular, &policy)?;
    println!("sigma({u}, {z}) = {s}");
    println!("sigma({z}, {u}) = {} (symmetric)", kronecker_sigma(z, u, &modular, &policy)?);

    // quasi-periodicity in the first slot
    let tau = modular.tau();
    let shifted = kronecker_sigma(u + tau, z, &modular, &policy)?;
    let mult = (-C64::i() * std::f64::consts::TAU * z).exp();
    println!(
        "sigma(u+tau, z) / (exp(-2 pi i z) sigma(u, z)) = {}",
        shifted / (mult * s)
    );

    // simple pole with residue 1 at z = 0
    let h = C64::new(1e-5, 0.0);
    println!(
        "z * sigma(u, z) at z = 1e-5: {}",
        h * kronecker_sigma(u, h, &modular, &policy)?
    );

    // near-lattice arguments are refused with a diagnostic
    match kronecker_sigma(C64::new(1.0, 1e-9), z, &modular, &policy) {
        Err(Error::Pole { m, k, distance, .. }) => {
            println!("pole guard: nearest lattice point {m} + {k} tau at distance {distance:.1e}")
        }
        other => println!("unexpected: {other:?}"),
    }

    // the q-series form agrees inside its convergence strip
    let zs = C64::new(0.3, -0.4);
    let by_ratio = kronecker_sigma(u, zs, &modular, &policy)?;
    let by_series = kronecker_sigma_series(u, zs, &modular, SigmaSeriesForm::LatticeShift, 48)?;
    println!(
        "series cross-check at {zs}: |ratio - series| = {:.3e}",
        (by_ratio - by_series).norm()
    );
    Ok(())
}
