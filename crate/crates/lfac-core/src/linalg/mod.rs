//! Small dense complex matrices.
//!
//! The cable chain works on 3x3 .. 12x12 complex matrices, so everything here
//! is a straightforward row-major dense implementation.

mod eig;
mod lu;

pub use eig::{eigendecompose, Eigen};
pub use lu::{checked_inverse, condition_1, CLu};

use num_complex::Complex;

use crate::scalar::{Cplx, Real};

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat<T> {
    rows: usize,
    cols: usize,
    data: Vec<Cplx<T>>,
}

impl<T: Real> CMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![Cplx::new(T::zero(), T::zero()); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cplx::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cplx<T>) -> Self {
        let mut m = CMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMat::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + other[(i, j)])
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMat::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - other[(i, j)])
    }

    pub fn scale(&self, k: Cplx<T>) -> Self {
        CMat::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * k)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)] + a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Cplx<T>]) -> Vec<Cplx<T>> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Cplx::new(T::zero(), T::zero());
                for j in 0..self.cols {
                    acc = acc + self[(i, j)] * v[j];
                }
                acc
            })
            .collect()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> T {
        let mut best = T::zero();
        for i in 0..self.rows {
            let mut s = T::zero();
            for j in 0..self.cols {
                s = s + self[(i, j)].norm();
            }
            if s > best {
                best = s;
            }
        }
        best
    }

    /// Maximum absolute column sum.
    pub fn norm_1(&self) -> T {
        self.transpose().norm_inf()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    /// Largest relative deviation from transpose symmetry.
    pub fn asymmetry(&self) -> T {
        let scale = self.max_abs().max(T::min_positive_value());
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let d = (self[(i, j)] - self[(j, i)]).norm() / scale;
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// Copy the `br`-th by `bc`-th 3x3 block of a matrix partitioned in 3x3 blocks.
    pub fn block3(&self, br: usize, bc: usize) -> CMat<T> {
        CMat::from_fn(3, 3, |i, j| self[(3 * br + i, 3 * bc + j)])
    }

    pub fn set_block3(&mut self, br: usize, bc: usize, b: &CMat<T>) {
        for i in 0..3 {
            for j in 0..3 {
                self[(3 * br + i, 3 * bc + j)] = b[(i, j)];
            }
        }
    }

    pub fn map(&self, f: impl Fn(Cplx<T>) -> Cplx<T>) -> Self {
        CMat::from_fn(self.rows, self.cols, |i, j| f(self[(i, j)]))
    }
}

impl<T: Real> std::ops::Index<(usize, usize)> for CMat<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> std::ops::IndexMut<(usize, usize)> for CMat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Cplx<f64> {
        Cplx::new(re, im)
    }

    #[test]
    fn matmul_against_hand_computed() {
        let a = CMat::from_fn(2, 2, |i, j| c((i + 1) as f64, j as f64));
        let b = CMat::from_fn(2, 2, |i, j| c(1.0, (i * 2 + j) as f64));
        let p = a.matmul(&b);
        // row 0: [1, 1+i] * [[1, 1+i], [1+2i, 1+3i]]
        let expect00 = c(1.0, 0.0) * c(1.0, 0.0) + c(1.0, 1.0) * c(1.0, 2.0);
        assert_relative_eq!(p[(0, 0)].re, expect00.re);
        assert_relative_eq!(p[(0, 0)].im, expect00.im);
    }

    #[test]
    fn block_roundtrip() {
        let m = CMat::from_fn(6, 6, |i, j| c(i as f64, j as f64));
        let b = m.block3(1, 0);
        assert_eq!(b[(0, 0)], c(3.0, 0.0));
        let mut m2 = CMat::zeros(6, 6);
        m2.set_block3(1, 0, &b);
        assert_eq!(m2[(3, 0)], c(3.0, 0.0));
        assert_eq!(m2[(0, 0)], c(0.0, 0.0));
    }
}
