//! Evaluating the closed-form solution tensor at a point, checking its
//! symmetries, and serializing it.

use aybe::elliptic::{EvaluationPoint, SolutionParams};
use aybe::serialize::{two_tensor_csv, TwoTensorDoc};
use aybe::theta::ModularParameter;
use aybe::verify::nondegeneracy;
use aybe::{C64, Error};

fn main() -> aybe::Result<()> {
    let params = SolutionParams::new(2, 1, ModularParameter::new(C64::new(0.0, 0.8))?)?;
    let pt = EvaluationPoint::new(C64::new(0.13, 0.07), C64::new(0.1, 0.0), C64::new(0.32, 0.0));
    let r = params.r_elliptic(&pt)?;

    println!("r(v; x1, x2) at v = {}, x = x2 - x1 = {}:", pt.v, pt.x2 - pt.x1);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    let z = r.get(a, b, c, d);
                    if z.norm() > 1e-14 {
                        println!("  [{a}{b}|{c}{d}] {z}");
                    }
                }
            }
        }
    }

    // skew-symmetry: r(v; x1, x2) = -swap(r(-v; x2, x1))
    let swapped = params
        .r_elliptic(&EvaluationPoint::new(-pt.v, pt.x2, pt.x1))?
        .swap_legs();
    let skew = r.add(&swapped)?.frobenius_norm() / r.frobenius_norm();
    println!("skew-symmetry residual: {skew:.3e}");

    // non-degeneracy of the associated endomorphism
    let nd = nondegeneracy(&r);
    println!(
        "can(r): condition number {:.3}, |det| = {:.6}",
        nd.condition_number, nd.det_modulus
    );

    // the pole set in v is tabulated and reported exactly
    let bad = -(params.modular().tau() + 1.0) * 0.5;
    match params.r_elliptic(&EvaluationPoint::new(bad, pt.x1, pt.x2)) {
        Err(Error::Pole { context, .. }) => println!("pole guard: {context}"),
        other => println!("unexpected: {other:?}"),
    }

    // JSON and CSV wire formats
    let doc = TwoTensorDoc::from_tensor(&r);
    println!("json: {}...", &serde_json::to_string(&doc).unwrap()[..72]);
    println!("csv head: {}", two_tensor_csv(&r).lines().take(2).collect::<Vec<_>>().join(" | "));
    Ok(())
}
