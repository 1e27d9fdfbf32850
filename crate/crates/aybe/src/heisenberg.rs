//! The clock-and-shift basis of `Mat_n(C)`.
//!
//! `X = diag(1, eps, ..., eps^(n-1))` with `eps = exp(2 pi i d/n)`, and `Y`
//! is the cyclic shift with ones above the diagonal and in the lower-left
//! corner. For `(k, l)` in `I = {1..n} x {1..n}`,
//!
//! ```text
//! Z_(k,l)      = Y^k X^(-l)
//! Z^dual_(k,l) = (1/n) X^l Y^(-k)
//! ```
//!
//! give dual bases under the trace pairing. Direct multiplication fixes the
//! commutation `X Y = eps^(-1) Y X`, hence `Ad_X(Z_(k,l)) = eps^(-k) Z_(k,l)`
//! and `Ad_Y(Z_(k,l)) = eps^(-l) Z_(k,l)` (the duals pick up the conjugate
//! factors). These signs are pinned by tests, not assumed.

use crate::error::{Error, Result, C64};
use crate::matrix::SquareMatrix;

/// The pair `(X, Y)` for a coprime type `(n, d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisenbergPair {
    n: usize,
    d: usize,
    eps: C64,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Builds the pair, enforcing `0 < d < n` and `gcd(n, d) = 1`.
pub fn heisenberg_pair(n: usize, d: usize) -> Result<HeisenbergPair> {
    if n < 2 {
        return Err(Error::parameter(format!("n must be at least 2, got {n}")));
    }
    if d == 0 || d >= n {
        return Err(Error::parameter(format!(
            "d must satisfy 0 < d < n, got (n, d) = ({n}, {d})"
        )));
    }
    if gcd(n, d) != 1 {
        return Err(Error::parameter(format!(
            "n and d must be coprime, got gcd({n}, {d}) = {}",
            gcd(n, d)
        )));
    }
    Ok(HeisenbergPair {
        n,
        d,
        eps: eps_power(n, d, 1),
    })
}

/// `eps^t` computed through modular reduction of the angle, so that
/// `eps^n == 1` holds exactly.
fn eps_power(n: usize, d: usize, t: i64) -> C64 {
    let r = (t * d as i64).rem_euclid(n as i64) as f64;
    C64::from_polar(1.0, std::f64::consts::TAU * r / n as f64)
}

impl HeisenbergPair {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `eps = exp(2 pi i d / n)`.
    pub fn eps(&self) -> C64 {
        self.eps
    }

    /// `eps^t` for any integer `t` (exact root of unity).
    pub fn eps_pow(&self, t: i64) -> C64 {
        eps_power(self.n, self.d, t)
    }

    /// The clock matrix `X = diag(1, eps, ..., eps^(n-1))`.
    pub fn x_matrix(&self) -> SquareMatrix {
        let mut m = SquareMatrix::zeros(self.n);
        for j in 0..self.n {
            m[(j, j)] = self.eps_pow(j as i64);
        }
        m
    }

    /// The shift matrix `Y` (ones above the diagonal, one in the corner).
    pub fn y_matrix(&self) -> SquareMatrix {
        let mut m = SquareMatrix::zeros(self.n);
        for i in 0..self.n {
            m[(i, (i + 1) % self.n)] = C64::new(1.0, 0.0);
        }
        m
    }

    fn check_index(&self, k: usize, l: usize) -> Result<()> {
        if k == 0 || k > self.n || l == 0 || l > self.n {
            return Err(Error::parameter(format!(
                "basis index ({k}, {l}) outside I = {{1..{0}}} x {{1..{0}}}",
                self.n
            )));
        }
        Ok(())
    }

    /// `Z_(k,l) = Y^k X^(-l)` for `(k, l)` in `I`.
    pub fn z_basis(&self, k: usize, l: usize) -> Result<SquareMatrix> {
        self.check_index(k, l)?;
        let n = self.n;
        let mut m = SquareMatrix::zeros(n);
        for i in 0..n {
            let j = (i + k) % n;
            m[(i, j)] = self.eps_pow(-(l as i64) * j as i64);
        }
        Ok(m)
    }

    /// `Z^dual_(k,l) = (1/n) X^l Y^(-k)` for `(k, l)` in `I`.
    pub fn z_dual(&self, k: usize, l: usize) -> Result<SquareMatrix> {
        self.check_index(k, l)?;
        let n = self.n;
        let scale = 1.0 / n as f64;
        let mut m = SquareMatrix::zeros(n);
        for i in 0..n {
            let j = (i + n - k % n) % n;
            m[(i, j)] = self.eps_pow(l as i64 * i as i64) * scale;
        }
        Ok(m)
    }

    /// Iterator over the index set `I` in row-major order.
    pub fn index_set(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (1..=n).flat_map(move |k| (1..=n).map(move |l| (k, l)))
    }
}

/// `Ad_T(Z) = T Z T^(-1)`.
pub fn ad(t: &SquareMatrix, z: &SquareMatrix) -> Result<SquareMatrix> {
    let inv = t
        .inverse()
        .map_err(|_| Error::Numeric("conjugation by a singular matrix".into()))?;
    t.mul(z)?.mul(&inv)
}

/// Trace pairing `tr(A B)`, evaluated without forming the product.
pub fn trace_pairing(a: &SquareMatrix, b: &SquareMatrix) -> Result<C64> {
    if a.n() != b.n() {
        return Err(Error::parameter("trace pairing: dimension mismatch"));
    }
    let n = a.n();
    let mut s = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            s += a[(i, j)] * b[(j, i)];
        }
    }
    Ok(s)
}
