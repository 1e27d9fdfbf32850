//! Extracting the Laurent coefficients of r(v; x1, x2) around v = 0 by
//! contour sampling, and measuring the residue normalization.

use aybe::elliptic::SolutionParams;
use aybe::laurent::laurent_expand;
use aybe::theta::ModularParameter;
use aybe::C64;

fn main() -> aybe::Result<()> {
    let params = SolutionParams::new(2, 1, ModularParameter::new(C64::new(0.0, 1.0))?)?;
    let (x1, x2) = (C64::new(0.1, 0.0), C64::new(0.31, 0.07));

    println!(
        "nearest non-origin pole in v at distance {:.4}",
        params.min_nonzero_pole_distance()
    );

    let e = laurent_expand(&params, x1, x2, None, 32)?;
    println!(
        "radius {:.4}, {} circle samples, est_error {:.3e}",
        e.circle_radius, e.sample_count, e.est_error
    );

    let (c, off) = e.residue_constant()?;
    println!("order -1 coefficient = c * (1 (x) 1) with c = {c}");
    println!("  off-identity mass {off:.3e}; candidates: 1 or 1/n -> measured 1/n");

    for order in [-1, 0, 1, 2] {
        let t = e.coefficient(order)?;
        println!("order {order:>2}: Frobenius norm {:.6}", t.frobenius_norm());
    }

    // the constant coefficient inherits skew-symmetry order by order
    let back = laurent_expand(&params, x2, x1, None, 32)?;
    let r0 = e.coefficient(0)?;
    let want = back.coefficient(0)?.swap_legs().scale(C64::new(-1.0, 0.0));
    println!(
        "r0 skew residual: {:.3e}",
        r0.sub(&want)?.frobenius_norm() / r0.frobenius_norm()
    );
    Ok(())
}
