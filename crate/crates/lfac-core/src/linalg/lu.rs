use num_complex::Complex;

use super::CMat;
use crate::error::{Error, Result};
use crate::scalar::{Cplx, Real};

/// LU factorization with partial pivoting of a square complex matrix.
pub struct CLu<T> {
    lu: CMat<T>,
    pivots: Vec<usize>,
    n: usize,
}

impl<T: Real> CLu<T> {
    pub fn factor(a: &CMat<T>) -> Result<CLu<T>> {
        assert_eq!(a.rows(), a.cols(), "LU requires a square matrix");
        let n = a.rows();
        let mut lu = a.clone();
        let mut pivots = vec![0usize; n];

        for k in 0..n {
            let mut p = k;
            let mut best = lu[(k, k)].norm();
            for i in (k + 1)..n {
                let v = lu[(i, k)].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if !(best > T::zero()) || !best.is_finite() {
                return Err(Error::SingularMatrix {
                    context: "LU factorization".into(),
                    cond: f64::INFINITY,
                });
            }
            pivots[k] = p;
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
            }
            let piv = lu[(k, k)];
            for i in (k + 1)..n {
                let m = lu[(i, k)] / piv;
                lu[(i, k)] = m;
                for j in (k + 1)..n {
                    let s = lu[(k, j)];
                    lu[(i, j)] = lu[(i, j)] - m * s;
                }
            }
        }
        Ok(CLu { lu, pivots, n })
    }

    pub fn solve_vec(&self, b: &[Cplx<T>]) -> Vec<Cplx<T>> {
        assert_eq!(b.len(), self.n);
        let mut x = b.to_vec();
        // Rows were swapped in full during factorization, so the whole
        // permutation applies before the triangular solves.
        for k in 0..self.n {
            x.swap(k, self.pivots[k]);
        }
        for k in 0..self.n {
            let xk = x[k];
            for i in (k + 1)..self.n {
                let l = self.lu[(i, k)];
                x[i] = x[i] - l * xk;
            }
        }
        for k in (0..self.n).rev() {
            let mut acc = x[k];
            for j in (k + 1)..self.n {
                acc = acc - self.lu[(k, j)] * x[j];
            }
            x[k] = acc / self.lu[(k, k)];
        }
        x
    }

    /// Solve A X = B column by column.
    pub fn solve_mat(&self, b: &CMat<T>) -> CMat<T> {
        assert_eq!(b.rows(), self.n);
        let mut out = CMat::zeros(self.n, b.cols());
        for j in 0..b.cols() {
            let col: Vec<Complex<T>> = (0..self.n).map(|i| b[(i, j)]).collect();
            let x = self.solve_vec(&col);
            for i in 0..self.n {
                out[(i, j)] = x[i];
            }
        }
        out
    }

    pub fn inverse(&self) -> CMat<T> {
        self.solve_mat(&CMat::identity(self.n))
    }
}

/// 1-norm condition estimate via the explicit inverse; fine at these sizes.
pub fn condition_1<T: Real>(a: &CMat<T>) -> Result<T> {
    let lu = CLu::factor(a)?;
    Ok(a.norm_1() * lu.inverse().norm_1())
}

/// Invert after checking the condition estimate against `limit`.
pub fn checked_inverse<T: Real>(a: &CMat<T>, limit: T, context: &str) -> Result<CMat<T>> {
    let lu = CLu::factor(a).map_err(|_| Error::SingularMatrix {
        context: context.into(),
        cond: f64::INFINITY,
    })?;
    let inv = lu.inverse();
    let cond = a.norm_1() * inv.norm_1();
    if !cond.is_finite() || cond > limit {
        return Err(Error::SingularMatrix {
            context: context.into(),
            cond: cond.to_f64().unwrap_or(f64::INFINITY),
        });
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Cplx<f64> {
        Cplx::new(re, im)
    }

    #[test]
    fn solve_reproduces_rhs() {
        let a = CMat::from_fn(4, 4, |i, j| {
            c(
                ((i * 7 + j * 3) % 5) as f64 + if i == j { 6.0 } else { 0.0 },
                ((i + 2 * j) % 3) as f64,
            )
        });
        let x_true: Vec<_> = (0..4).map(|i| c(i as f64 + 0.5, -(i as f64))).collect();
        let b = a.matvec(&x_true);
        let lu = CLu::factor(&a).unwrap();
        let x = lu.solve_vec(&b);
        for i in 0..4 {
            assert!((x[i] - x_true[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let a = CMat::from_fn(5, 5, |i, j| {
            c(
                1.0 / (1.0 + (i + j) as f64),
                if i == j { 2.0 } else { 0.1 },
            )
        });
        let inv = CLu::factor(&a).unwrap().inverse();
        let prod = a.matmul(&inv);
        let eye = CMat::identity(5);
        assert!(prod.sub(&eye).max_abs() < 1e-12);
    }

    #[test]
    fn singular_matrix_reported() {
        let mut a = CMat::<f64>::zeros(3, 3);
        a[(0, 0)] = c(1.0, 0.0);
        a[(1, 1)] = c(1.0, 0.0);
        // row 2 left zero
        assert!(CLu::factor(&a).is_err());
    }
}
