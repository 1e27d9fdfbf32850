//! The clock-and-shift basis of Mat_n(C): duality under the trace pairing
//! and the conjugation eigenvalues that organize everything else.

use aybe::heisenberg::{ad, heisenberg_pair, trace_pairing};

fn main() -> aybe::Result<()> {
    let pair = heisenberg_pair(3, 1)?;
    println!("(n, d) = (3, 1), eps = {}", pair.eps());

    let x = pair.x_matrix();
    let y = pair.y_matrix();
    println!("X diag: {:?}", (0..3).map(|j| x[(j, j)]).collect::<Vec<_>>());
    println!("Y row 0: {:?}", (0..3).map(|j| y[(0, j)]).collect::<Vec<_>>());

    // commutation: X Y = eps^(-1) Y X
    let lhs = x.mul(&y)?;
    let rhs = y.mul(&x)?.scale(pair.eps_pow(-1));
    println!("|XY - eps^-1 YX| = {:.3e}", lhs.sub(&rhs)?.max_abs());

    // duality: tr(Zdual_(k,l) Z_(k',l')) = delta
    let mut max_off = 0.0f64;
    for (k, l) in pair.index_set() {
        for (kp, lp) in pair.index_set() {
            let tr = trace_pairing(&pair.z_dual(k, l)?, &pair.z_basis(kp, lp)?)?;
            let expect = if (k, l) == (kp, lp) { 1.0 } else { 0.0 };
            max_off = max_off.max((tr.re - expect).abs().max(tr.im.abs()));
        }
    }
    println!("duality defect over all of I x I: {max_off:.3e}");

    // conjugation eigenvalues (as the printed matrices give them):
    // Ad_X(Z_(k,l)) = eps^(-k) Z_(k,l), Ad_Y(Z_(k,l)) = eps^(-l) Z_(k,l)
    for (k, l) in [(1usize, 2usize), (2, 3)] {
        let z = pair.z_basis(k, l)?;
        let got = ad(&x, &z)?;
        let want = z.scale(pair.eps_pow(-(k as i64)));
        println!(
            "Ad_X(Z_({k},{l})) - eps^(-{k}) Z_({k},{l}): {:.3e}",
            got.sub(&want)?.max_abs()
        );
        let got = ad(&y, &z)?;
        let want = z.scale(pair.eps_pow(-(l as i64)));
        println!(
            "Ad_Y(Z_({k},{l})) - eps^(-{l}) Z_({k},{l}): {:.3e}",
            got.sub(&want)?.max_abs()
        );
    }
    Ok(())
}
