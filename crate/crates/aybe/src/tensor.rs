//! Tensor-leg machinery over `A = Mat_n(C)`: elements of `A (x) A` and
//! `A (x) A (x) A`, leg embeddings, leg-wise products, and the trace-duality
//! isomorphism `can: A (x) A -> End(A)`.
//!
//! Index conventions, used verbatim by the serialization layer:
//! a `TwoTensor` stores the coefficient of `E_ab (x) E_cd` at `[a,b,c,d]`
//! (row-major, 0-based); a `ThreeTensor` extends this to `[a,b,c,d,e,f]`.
//! Endomorphisms act on the column-major vectorization of the matrix, so
//! `vec(Z)[j*n + i] = Z[i,j]`.

use crate::error::{Error, Result, C64};
use crate::matrix::SquareMatrix;

#[inline]
fn idx4(n: usize, a: usize, b: usize, c: usize, d: usize) -> usize {
    ((a * n + b) * n + c) * n + d
}

#[inline]
fn idx6(n: usize, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> usize {
    ((((a * n + b) * n + c) * n + d) * n + e) * n + f
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoTensor {
    n: usize,
    a: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThreeTensor {
    n: usize,
    a: Vec<C64>,
}

/// A linear map on `A`, stored as an `n^2 x n^2` matrix over the column-major
/// vectorization.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearEndo {
    n: usize,
    mat: SquareMatrix,
}

/// Tensor-leg slots for embedding `A (x) A` into the triple product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    S12,
    S13,
    S23,
}

impl Slot {
    /// Accepts the numeric tags 12, 13, 23.
    pub fn from_tag(tag: u32) -> Result<Slot> {
        match tag {
            12 => Ok(Slot::S12),
            13 => Ok(Slot::S13),
            23 => Ok(Slot::S23),
            other => Err(Error::parameter(format!("invalid slot tag {other}"))),
        }
    }
}

impl TwoTensor {
    pub fn zeros(n: usize) -> Self {
        TwoTensor {
            n,
            a: vec![C64::new(0.0, 0.0); n.pow(4)],
        }
    }

    /// `x (x) y` for matrices `x`, `y`.
    pub fn simple(x: &SquareMatrix, y: &SquareMatrix) -> Result<Self> {
        if x.n() != y.n() {
            return Err(Error::parameter("simple tensor: leg dimension mismatch"));
        }
        let n = x.n();
        let mut t = Self::zeros(n);
        for a in 0..n {
            for b in 0..n {
                let xv = x[(a, b)];
                if xv.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..n {
                    for d in 0..n {
                        t.a[idx4(n, a, b, c, d)] = xv * y[(c, d)];
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn identity(n: usize) -> Self {
        Self::simple(&SquareMatrix::identity(n), &SquareMatrix::identity(n)).unwrap()
    }

    #[inline]
    fn idx(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        idx4(self.n, a, b, c, d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> C64 {
        self.a[self.idx(a, b, c, d)]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, d: usize, v: C64) {
        let i = self.idx(a, b, c, d);
        self.a[i] = v;
    }

    pub fn entries(&self) -> &[C64] {
        &self.a
    }

    pub fn entries_mut(&mut self) -> &mut [C64] {
        &mut self.a
    }

    pub fn from_entries(n: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != n.pow(4) {
            return Err(Error::parameter("entry count must be n^4"));
        }
        Ok(TwoTensor { n, a: entries })
    }

    pub fn axpy(&mut self, s: C64, other: &TwoTensor) {
        for (o, v) in self.a.iter_mut().zip(&other.a) {
            *o += s * v;
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        TwoTensor {
            n: self.n,
            a: self.a.iter().map(|v| v * s).collect(),
        }
    }

    pub fn sub(&self, other: &TwoTensor) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::parameter("tensor dimension mismatch"));
        }
        Ok(TwoTensor {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x - y).collect(),
        })
    }

    pub fn add(&self, other: &TwoTensor) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::parameter("tensor dimension mismatch"));
        }
        Ok(TwoTensor {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.a.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Exchanges the two legs: the coefficient of `E_ab (x) E_cd` moves to
    /// `E_cd (x) E_ab`.
    pub fn swap_legs(&self) -> Self {
        let n = self.n;
        let mut t = Self::zeros(n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        t.a[idx4(n, c, d, a, b)] = self.a[self.idx(a, b, c, d)];
                    }
                }
            }
        }
        t
    }

    /// Transposes each leg in place: `x (x) y -> x^T (x) y^T`.
    pub fn transpose_legs(&self) -> Self {
        let n = self.n;
        let mut t = Self::zeros(n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        t.a[idx4(n, b, a, d, c)] = self.a[self.idx(a, b, c, d)];
                    }
                }
            }
        }
        t
    }

    /// Leg-wise product: `(x (x) y)(x' (x) y') = x x' (x) y y'`, extended
    /// bilinearly.
    pub fn two_mul(&self, other: &TwoTensor) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::parameter("tensor dimension mismatch"));
        }
        let n = self.n;
        let mut t = Self::zeros(n);
        for a in 0..n {
            for c in 0..n {
                for p in 0..n {
                    for q in 0..n {
                        let s = self.a[self.idx(a, p, c, q)];
                        if s.norm_sqr() == 0.0 {
                            continue;
                        }
                        for b in 0..n {
                            for d in 0..n {
                                t.a[idx4(n, a, b, c, d)] += s * other.a[other.idx(p, b, q, d)];
                            }
                        }
                    }
                }
            }
        }
        Ok(t)
    }

    /// Partial trace over the first leg: returns `sum_a t[a,a,.,.]`.
    pub fn partial_trace_leg1(&self) -> SquareMatrix {
        let n = self.n;
        SquareMatrix::from_fn(n, |c, d| (0..n).map(|a| self.a[self.idx(a, a, c, d)]).sum())
    }

    /// Partial trace over the second leg.
    pub fn partial_trace_leg2(&self) -> SquareMatrix {
        let n = self.n;
        SquareMatrix::from_fn(n, |a, b| (0..n).map(|c| self.a[self.idx(a, b, c, c)]).sum())
    }

    /// Applies the trace-free projection `Z -> Z - tr(Z)/n * I` to both legs.
    pub fn sl_project(&self) -> Self {
        let n = self.n;
        let nf = n as f64;
        let tr1 = self.partial_trace_leg1();
        let tr2 = self.partial_trace_leg2();
        let tr12: C64 = (0..n)
            .map(|a| (0..n).map(|c| self.a[self.idx(a, a, c, c)]).sum::<C64>())
            .sum();
        let mut t = self.clone();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let mut v = t.a[self.idx(a, b, c, d)];
                        if a == b {
                            v -= tr1[(c, d)] / nf;
                        }
                        if c == d {
                            v -= tr2[(a, b)] / nf;
                        }
                        if a == b && c == d {
                            v += tr12 / (nf * nf);
                        }
                        t.a[self.idx(a, b, c, d)] = v;
                    }
                }
            }
        }
        t
    }

    /// Embeds into the triple tensor product with the identity in the
    /// omitted leg.
    pub fn embed(&self, slot: Slot) -> ThreeTensor {
        let n = self.n;
        let mut t = ThreeTensor::zeros(n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let v = self.a[self.idx(a, b, c, d)];
                        if v.norm_sqr() == 0.0 {
                            continue;
                        }
                        for e in 0..n {
                            match slot {
                                Slot::S12 => t.a[idx6(n, a, b, c, d, e, e)] += v,
                                Slot::S13 => t.a[idx6(n, a, b, e, e, c, d)] += v,
                                Slot::S23 => t.a[idx6(n, e, e, a, b, c, d)] += v,
                            }
                        }
                    }
                }
            }
        }
        t
    }

    /// The canonical isomorphism onto `End(A)`: a simple tensor `Z' (x) Z''`
    /// maps `Z` to `tr(Z' Z) Z''`.
    pub fn can(&self) -> LinearEndo {
        let n = self.n;
        let mut mat = SquareMatrix::zeros(n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        mat[(d * n + c, a * n + b)] = self.a[self.idx(a, b, c, d)];
                    }
                }
            }
        }
        LinearEndo { n, mat }
    }
}

/// Inverse of [`TwoTensor::can`]; `can` is an entry reshuffle, so this is exact.
pub fn can_inv(endo: &LinearEndo) -> TwoTensor {
    let n = endo.n;
    let mut t = TwoTensor::zeros(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let v = endo.mat[(d * n + c, a * n + b)];
                    t.a[idx4(n, a, b, c, d)] = v;
                }
            }
        }
    }
    t
}

impl LinearEndo {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn from_matrix(n: usize, mat: SquareMatrix) -> Result<Self> {
        if mat.n() != n * n {
            return Err(Error::parameter("endomorphism matrix must be n^2 x n^2"));
        }
        Ok(LinearEndo { n, mat })
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.mat
    }

    pub fn identity(n: usize) -> Self {
        LinearEndo {
            n,
            mat: SquareMatrix::identity(n * n),
        }
    }

    /// Applies the endomorphism to a matrix.
    pub fn apply(&self, z: &SquareMatrix) -> Result<SquareMatrix> {
        if z.n() != self.n {
            return Err(Error::parameter("endomorphism applied to wrong dimension"));
        }
        let n = self.n;
        let mut v = vec![C64::new(0.0, 0.0); n * n];
        for j in 0..n {
            for i in 0..n {
                v[j * n + i] = z[(i, j)];
            }
        }
        let w = self.mat.mul_vec(&v);
        Ok(SquareMatrix::from_fn(n, |i, j| w[j * n + i]))
    }

    pub fn sub(&self, other: &LinearEndo) -> Result<LinearEndo> {
        Ok(LinearEndo {
            n: self.n,
            mat: self.mat.sub(&other.mat)?,
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.frobenius_norm()
    }
}

impl ThreeTensor {
    pub fn zeros(n: usize) -> Self {
        ThreeTensor {
            n,
            a: vec![C64::new(0.0, 0.0); n.pow(6)],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut t = Self::zeros(n);
        for a in 0..n {
            for c in 0..n {
                for e in 0..n {
                    let i = t.idx(a, a, c, c, e, e);
                    t.a[i] = C64::new(1.0, 0.0);
                }
            }
        }
        t
    }

    #[inline]
    fn idx(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> usize {
        idx6(self.n, a, b, c, d, e, f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> C64 {
        self.a[self.idx(a, b, c, d, e, f)]
    }

    pub fn entries(&self) -> &[C64] {
        &self.a
    }

    pub fn sub(&self, other: &ThreeTensor) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::parameter("tensor dimension mismatch"));
        }
        Ok(ThreeTensor {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x - y).collect(),
        })
    }

    pub fn add(&self, other: &ThreeTensor) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::parameter("tensor dimension mismatch"));
        }
        Ok(ThreeTensor {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Leg-wise associative product. Internally runs as an `n^3 x n^3`
    /// matrix product over the grouped row/column multi-indices.
    pub fn three_mul(&self, other: &ThreeTensor) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::parameter("tensor dimension mismatch"));
        }
        let n = self.n;
        let m = n * n * n;
        // lay out as M[(a,c,e),(b,d,f)]
        let mut ms = vec![C64::new(0.0, 0.0); m * m];
        let mut mt = vec![C64::new(0.0, 0.0); m * m];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        for e in 0..n {
                            for f in 0..n {
                                let row = (a * n + c) * n + e;
                                let col = (b * n + d) * n + f;
                                ms[row * m + col] = self.a[self.idx(a, b, c, d, e, f)];
                                mt[row * m + col] = other.a[other.idx(a, b, c, d, e, f)];
                            }
                        }
                    }
                }
            }
        }
        let mut mo = vec![C64::new(0.0, 0.0); m * m];
        for i in 0..m {
            for k in 0..m {
                let s = ms[i * m + k];
                if s.norm_sqr() == 0.0 {
                    continue;
                }
                let row = &mt[k * m..(k + 1) * m];
                let out = &mut mo[i * m..(i + 1) * m];
                for (o, v) in out.iter_mut().zip(row) {
                    *o += s * v;
                }
            }
        }
        let mut t = Self::zeros(n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        for e in 0..n {
                            for f in 0..n {
                                let row = (a * n + c) * n + e;
                                let col = (b * n + d) * n + f;
                                t.a[idx6(n, a, b, c, d, e, f)] = mo[row * m + col];
                            }
                        }
                    }
                }
            }
        }
        Ok(t)
    }

    /// Partial trace over one leg (1-based), returning the remaining two legs
    /// in order.
    pub fn partial_trace(&self, leg: usize) -> Result<TwoTensor> {
        let n = self.n;
        let mut t = TwoTensor::zeros(n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let mut s = C64::new(0.0, 0.0);
                        for e in 0..n {
                            s += match leg {
                                1 => self.a[self.idx(e, e, a, b, c, d)],
                                2 => self.a[self.idx(a, b, e, e, c, d)],
                                3 => self.a[self.idx(a, b, c, d, e, e)],
                                _ => return Err(Error::parameter("leg must be 1, 2, or 3")),
                            };
                        }
                        let i = t.idx(a, b, c, d);
                        t.entries_mut()[i] = s;
                    }
                }
            }
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::heisenberg_pair;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn unit(n: usize, i: usize, j: usize) -> SquareMatrix {
        let mut m = SquareMatrix::zeros(n);
        m[(i, j)] = c(1.0, 0.0);
        m
    }

    fn random_two(n: usize, seed: u64) -> TwoTensor {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t = TwoTensor::zeros(n);
        for v in t.entries_mut() {
            *v = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        t
    }

    fn random_three(n: usize, seed: u64) -> ThreeTensor {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t = ThreeTensor::zeros(n);
        let m = t.a.len();
        for i in 0..m {
            t.a[i] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        t
    }

    #[test]
    fn embed_examples() {
        let n = 2;
        let t = TwoTensor::simple(&unit(n, 0, 1), &unit(n, 1, 0)).unwrap();
        let e = t.embed(Slot::S13);
        // E_01 (x) I (x) E_10
        for mid in 0..n {
            assert!((e.get(0, 1, mid, mid, 1, 0) - c(1.0, 0.0)).norm() < 1e-15);
        }
        assert_eq!(e.get(0, 1, 0, 1, 1, 0).norm(), 0.0);
        // embed(t, 12) = t (x) I
        let t2 = random_two(2, 5);
        let e = t2.embed(Slot::S12);
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    for d in 0..n {
                        for ee in 0..n {
                            for f in 0..n {
                                let want = if ee == f { t2.get(a, b, cc, d) } else { c(0.0, 0.0) };
                                assert!((e.get(a, b, cc, d, ee, f) - want).norm() < 1e-15);
                            }
                        }
                    }
                }
            }
        }
        // partial trace over the identity leg returns n*t
        let e = t2.embed(Slot::S13);
        let back = e.partial_trace(2).unwrap();
        let err = back.sub(&t2.scale(c(n as f64, 0.0))).unwrap().max_abs();
        assert!(err < 1e-14);
        assert!(matches!(Slot::from_tag(21), Err(crate::error::Error::Parameter(_))));
    }

    #[test]
    fn three_mul_properties() {
        let n = 2;
        let id = ThreeTensor::identity(n);
        let t = random_three(n, 1);
        let left = id.three_mul(&t).unwrap();
        assert!(left.sub(&t).unwrap().frobenius_norm() < 1e-14);
        // (a(x)b)^12 (c(x)d)^23 = a (x) bc (x) d on simple tensors
        let a = unit(n, 0, 1);
        let b = SquareMatrix::from_fn(n, |i, j| c((i + 2 * j) as f64, 1.0));
        let cm = SquareMatrix::from_fn(n, |i, j| c(1.0, (i * j) as f64));
        let d = unit(n, 1, 1);
        let lhs = TwoTensor::simple(&a, &b)
            .unwrap()
            .embed(Slot::S12)
            .three_mul(&TwoTensor::simple(&cm, &d).unwrap().embed(Slot::S23))
            .unwrap();
        let bc = b.mul(&cm).unwrap();
        let mut rhs = ThreeTensor::zeros(n);
        for ai in 0..n {
            for bi in 0..n {
                for ci in 0..n {
                    for di in 0..n {
                        for ei in 0..n {
                            for fi in 0..n {
                                let i = rhs.idx(ai, bi, ci, di, ei, fi);
                                rhs.a[i] = a[(ai, bi)] * bc[(ci, di)] * d[(ei, fi)];
                            }
                        }
                    }
                }
            }
        }
        assert!(lhs.sub(&rhs).unwrap().frobenius_norm() < 1e-12);
        // associativity on random triples
        let (s, t, u) = (random_three(2, 7), random_three(2, 8), random_three(2, 9));
        let l = s.three_mul(&t).unwrap().three_mul(&u).unwrap();
        let r = s.three_mul(&t.three_mul(&u).unwrap()).unwrap();
        let err = l.sub(&r).unwrap().frobenius_norm() / l.frobenius_norm();
        assert!(err < 1e-12);
    }

    #[test]
    fn swap_and_transpose() {
        let n = 2;
        let x = SquareMatrix::from_fn(n, |i, j| c((1 + i + 3 * j) as f64, -1.0));
        let y = SquareMatrix::from_fn(n, |i, j| c(0.5, (i + j) as f64));
        let t = TwoTensor::simple(&x, &y).unwrap();
        let sw = t.swap_legs();
        let yx = TwoTensor::simple(&y, &x).unwrap();
        assert!(sw.sub(&yx).unwrap().max_abs() < 1e-15);
        // involution
        assert!(sw.swap_legs().sub(&t).unwrap().max_abs() < 1e-15);
        // swap of sum Zdual (x) Z equals sum Z (x) Zdual, entrywise
        let p = heisenberg_pair(2, 1).unwrap();
        let mut lhs = TwoTensor::zeros(2);
        let mut rhs = TwoTensor::zeros(2);
        for (k, l) in p.index_set() {
            lhs.axpy(
                c(1.0, 0.0),
                &TwoTensor::simple(&p.z_dual(k, l).unwrap(), &p.z_basis(k, l).unwrap()).unwrap(),
            );
            rhs.axpy(
                c(1.0, 0.0),
                &TwoTensor::simple(&p.z_basis(k, l).unwrap(), &p.z_dual(k, l).unwrap()).unwrap(),
            );
        }
        assert!(lhs.swap_legs().sub(&rhs).unwrap().max_abs() < 1e-14);
        // legwise transpose on simple tensors
        let tt = t.transpose_legs();
        let want = TwoTensor::simple(&x.transpose(), &y.transpose()).unwrap();
        assert!(tt.sub(&want).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn sl_project_examples() {
        let n = 2;
        let id2 = TwoTensor::identity(n);
        assert!(id2.sl_project().max_abs() < 1e-15);
        let t = TwoTensor::simple(&unit(n, 0, 1), &unit(n, 1, 0)).unwrap();
        assert!(t.sl_project().sub(&t).unwrap().max_abs() < 1e-15);
        let t = random_two(3, 11);
        let p = t.sl_project();
        assert!(p.partial_trace_leg1().max_abs() < 1e-13);
        assert!(p.partial_trace_leg2().max_abs() < 1e-13);
    }

    #[test]
    fn can_examples() {
        let p = heisenberg_pair(3, 1).unwrap();
        // can(Zdual (x) Z) projects onto the Z line
        let t = TwoTensor::simple(&p.z_dual(1, 2).unwrap(), &p.z_basis(1, 2).unwrap()).unwrap();
        let endo = t.can();
        for (k, l) in p.index_set() {
            let z = p.z_basis(k, l).unwrap();
            let out = endo.apply(&z).unwrap();
            if (k, l) == (1, 2) {
                assert!(out.sub(&z).unwrap().max_abs() < 1e-13);
            } else {
                assert!(out.max_abs() < 1e-13, "can failed to kill ({k},{l})");
            }
        }
        // can(0) = 0
        assert!(TwoTensor::zeros(3).can().frobenius_norm() == 0.0);
        // can(sum Zdual (x) Z) = identity endomorphism (n = 2)
        let p2 = heisenberg_pair(2, 1).unwrap();
        let mut t = TwoTensor::zeros(2);
        for (k, l) in p2.index_set() {
            t.axpy(
                c(1.0, 0.0),
                &TwoTensor::simple(&p2.z_dual(k, l).unwrap(), &p2.z_basis(k, l).unwrap()).unwrap(),
            );
        }
        let endo = t.can();
        let diff = endo.sub(&LinearEndo::identity(2)).unwrap().frobenius_norm();
        assert!(diff < 1e-14);
        // can_inv round trips
        let back = can_inv(&endo);
        assert!(back.sub(&t).unwrap().max_abs() < 1e-14);
        let rt = random_two(3, 3);
        let err = can_inv(&rt.can()).sub(&rt).unwrap().max_abs();
        assert!(err < 1e-12);
        assert!(can_inv(&LinearEndo {
            n: 2,
            mat: SquareMatrix::zeros(4)
        })
        .max_abs()
            == 0.0);
    }

    #[test]
    fn two_mul_is_legwise() {
        let n = 2;
        let x = random_two(n, 21);
        let a = unit(n, 0, 0);
        let b = unit(n, 1, 1);
        let s = TwoTensor::simple(&a, &b).unwrap();
        let prod = s.two_mul(&x).unwrap();
        for ai in 0..n {
            for bi in 0..n {
                for ci in 0..n {
                    for di in 0..n {
                        let want = if ai == 0 && ci == 1 {
                            x.get(0, bi, 1, di)
                        } else {
                            c(0.0, 0.0)
                        };
                        assert!((prod.get(ai, bi, ci, di) - want).norm() < 1e-15);
                    }
                }
            }
        }
    }
}
