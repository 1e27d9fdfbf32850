//! Dense complex square matrices, sized for this crate's desk-scale needs
//! (n <= 16 for the algebra, n^2 x n^2 for endomorphisms).
//!
//! Includes partial-pivot LU for det/solve/inverse and a power-iteration
//! 2-norm condition estimate; no external linear-algebra backend.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    a: Vec<C64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            a: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[C64] {
        &self.a
    }

    pub fn mul(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        if self.n != other.n {
            return Err(Error::parameter("matrix dimension mismatch"));
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let s = self.a[i * n + k];
                if s.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.a[i * n + j] += s * other.a[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        if self.n != other.n {
            return Err(Error::parameter("matrix dimension mismatch"));
        }
        let mut out = self.clone();
        for (o, b) in out.a.iter_mut().zip(&other.a) {
            *o += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        if self.n != other.n {
            return Err(Error::parameter("matrix dimension mismatch"));
        }
        let mut out = self.clone();
        for (o, b) in out.a.iter_mut().zip(&other.a) {
            *o -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, s: C64) -> SquareMatrix {
        let mut out = self.clone();
        for o in out.a.iter_mut() {
            *o *= s;
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self.a[i * self.n + i]).sum()
    }

    pub fn transpose(&self) -> SquareMatrix {
        Self::from_fn(self.n, |i, j| self.a[j * self.n + i])
    }

    pub fn conj_transpose(&self) -> SquareMatrix {
        Self::from_fn(self.n, |i, j| self.a[j * self.n + i].conj())
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        let n = self.n;
        let mut out = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for j in 0..n {
                s += self.a[i * n + j] * v[j];
            }
            out[i] = s;
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.a.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Determinant via LU; exact zero pivots yield 0 rather than an error.
    pub fn det(&self) -> C64 {
        let lu = LuFactors::new(self);
        lu.det()
    }

    pub fn inverse(&self) -> Result<SquareMatrix> {
        let lu = LuFactors::new(self);
        lu.ensure_invertible()?;
        let n = self.n;
        let mut out = Self::zeros(n);
        let mut e = vec![C64::new(0.0, 0.0); n];
        for j in 0..n {
            e.fill(C64::new(0.0, 0.0));
            e[j] = C64::new(1.0, 0.0);
            let col = lu.solve(&e);
            for i in 0..n {
                out[(i, j)] = col[i];
            }
        }
        Ok(out)
    }

    pub fn solve(&self, rhs: &[C64]) -> Result<Vec<C64>> {
        if rhs.len() != self.n {
            return Err(Error::parameter("rhs length mismatch"));
        }
        let lu = LuFactors::new(self);
        lu.ensure_invertible()?;
        Ok(lu.solve(rhs))
    }

    /// 2-norm condition number estimate (power iteration on M^H M and its
    /// inverse through the LU factors). Returns `f64::INFINITY` when the
    /// matrix is numerically singular.
    pub fn condition_estimate(&self) -> f64 {
        let n = self.n;
        if n == 0 {
            return 1.0;
        }
        let mh = self.conj_transpose();
        // largest singular value
        let mut v: Vec<C64> = (0..n)
            .map(|i| C64::new(1.0 + 0.01 * i as f64, 0.02 * (i % 3) as f64))
            .collect();
        normalize(&mut v);
        let mut smax2 = 0.0f64;
        for _ in 0..200 {
            // for unit v, |M^H M v| estimates the top eigenvalue of M^H M
            let w = mh.mul_vec(&self.mul_vec(&v));
            let lam = norm2(&w).sqrt();
            if lam == 0.0 {
                return f64::INFINITY;
            }
            v = w;
            normalize(&mut v);
            if (lam - smax2).abs() <= 1e-12 * lam {
                smax2 = lam;
                break;
            }
            smax2 = lam;
        }
        // smallest singular value via inverse iteration
        let lu = LuFactors::new(self);
        if lu.ensure_invertible().is_err() {
            return f64::INFINITY;
        }
        let luh = LuFactors::new(&mh);
        if luh.ensure_invertible().is_err() {
            return f64::INFINITY;
        }
        let mut u: Vec<C64> = (0..n)
            .map(|i| C64::new(1.0 - 0.013 * i as f64, 0.017 * (i % 5) as f64))
            .collect();
        normalize(&mut u);
        let mut inv2 = 0.0f64;
        for _ in 0..200 {
            let w = lu.solve(&luh.solve(&u));
            let lam = norm2(&w).sqrt();
            if lam == 0.0 {
                return f64::INFINITY;
            }
            u = w;
            normalize(&mut u);
            if (lam - inv2).abs() <= 1e-12 * lam {
                inv2 = lam;
                break;
            }
            inv2 = lam;
        }
        if inv2 == 0.0 {
            return f64::INFINITY;
        }
        (smax2 * inv2).sqrt()
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.a[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for SquareMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.a[i * self.n + j]
    }
}

fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

fn normalize(v: &mut [C64]) {
    let s = norm2(v).sqrt();
    if s > 0.0 {
        for z in v.iter_mut() {
            *z /= s;
        }
    }
}

/// Partial-pivot LU factorization of a copy of the input.
pub struct LuFactors {
    n: usize,
    lu: Vec<C64>,
    piv: Vec<usize>,
    parity: f64,
    min_pivot: f64,
    max_pivot: f64,
}

impl LuFactors {
    pub fn new(m: &SquareMatrix) -> Self {
        let n = m.n;
        let mut lu = m.a.clone();
        let mut piv: Vec<usize> = (0..n).collect();
        let mut parity = 1.0;
        let mut min_pivot = f64::INFINITY;
        let mut max_pivot = 0.0f64;
        for col in 0..n {
            let mut best = col;
            let mut best_mag = lu[col * n + col].norm();
            for r in (col + 1)..n {
                let mag = lu[r * n + col].norm();
                if mag > best_mag {
                    best = r;
                    best_mag = mag;
                }
            }
            if best != col {
                for j in 0..n {
                    lu.swap(col * n + j, best * n + j);
                }
                piv.swap(col, best);
                parity = -parity;
            }
            min_pivot = min_pivot.min(best_mag);
            max_pivot = max_pivot.max(best_mag);
            if best_mag == 0.0 {
                continue;
            }
            let p = lu[col * n + col];
            for r in (col + 1)..n {
                let f = lu[r * n + col] / p;
                lu[r * n + col] = f;
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for j in (col + 1)..n {
                    let sub = f * lu[col * n + j];
                    lu[r * n + j] -= sub;
                }
            }
        }
        LuFactors {
            n,
            lu,
            piv,
            parity,
            min_pivot,
            max_pivot,
        }
    }

    pub fn det(&self) -> C64 {
        let mut d = C64::new(self.parity, 0.0);
        for i in 0..self.n {
            d *= self.lu[i * self.n + i];
        }
        d
    }

    pub fn ensure_invertible(&self) -> Result<()> {
        let floor = self.max_pivot * (self.n as f64) * 1e-15;
        if self.min_pivot <= floor.max(f64::MIN_POSITIVE) {
            return Err(Error::Numeric(format!(
                "singular matrix (pivot ratio {:.3e})",
                self.min_pivot / self.max_pivot.max(f64::MIN_POSITIVE)
            )));
        }
        Ok(())
    }

    /// Solves `A x = b` using the stored factors (call `ensure_invertible` first).
    pub fn solve(&self, b: &[C64]) -> Vec<C64> {
        let n = self.n;
        let mut x: Vec<C64> = (0..n).map(|i| b[self.piv[i]]).collect();
        for i in 1..n {
            for j in 0..i {
                let sub = self.lu[i * n + j] * x[j];
                x[i] -= sub;
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                let sub = self.lu[i * n + j] * x[j];
                x[i] -= sub;
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }
}
