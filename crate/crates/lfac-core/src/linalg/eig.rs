//! Eigendecomposition of general complex matrices via the QR algorithm.
//!
//! Hessenberg reduction with Householder reflectors, explicit single-shift QR
//! sweeps with Wilkinson shifts, then eigenvectors by back substitution on the
//! triangular Schur factor. Intended for the small matrices of the cable
//! chain, not for large-scale work.

use super::lu::CLu;
use super::CMat;
use crate::error::{Error, Result};
use crate::scalar::{Cplx, Real};

/// Eigendecomposition A = V diag(values) V^-1.
pub struct Eigen<T> {
    pub values: Vec<Cplx<T>>,
    pub vectors: CMat<T>,
    vectors_inv: CMat<T>,
    /// 1-norm condition estimate of the eigenvector matrix.
    pub cond: T,
}

impl<T: Real> Eigen<T> {
    /// Evaluate a matrix function f(A) = V diag(f(lambda)) V^-1.
    pub fn apply_fn(&self, f: impl Fn(Cplx<T>) -> Cplx<T>) -> CMat<T> {
        let n = self.values.len();
        let mut scaled = CMat::zeros(n, n);
        for j in 0..n {
            let fj = f(self.values[j]);
            for i in 0..n {
                scaled[(i, j)] = self.vectors[(i, j)] * fj;
            }
        }
        scaled.matmul(&self.vectors_inv)
    }
}

/// Rotation with `c` real such that
/// `[c, s; -conj(s), c] * [a; b] = [r; 0]`.
fn givens<T: Real>(a: Cplx<T>, b: Cplx<T>) -> (T, Cplx<T>) {
    let an = a.norm();
    let bn = b.norm();
    if bn == T::zero() {
        return (T::one(), Cplx::new(T::zero(), T::zero()));
    }
    if an == T::zero() {
        return (T::zero(), b.conj() / bn);
    }
    let r = (an * an + bn * bn).sqrt();
    let c = an / r;
    let s = (a / an) * b.conj() / r;
    (c, s)
}

struct Schur<T> {
    t: CMat<T>,
    q: CMat<T>,
}

fn hessenberg<T: Real>(a: &CMat<T>) -> Schur<T> {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = CMat::identity(n);
    for k in 0..n.saturating_sub(2) {
        // Householder vector for column k below the subdiagonal.
        let mut norm2 = T::zero();
        for i in (k + 1)..n {
            norm2 = norm2 + h[(i, k)].norm_sqr();
        }
        let alpha = h[(k + 1, k)];
        let col_norm = norm2.sqrt();
        if col_norm == T::zero() {
            continue;
        }
        let phase = if alpha.norm() > T::zero() {
            alpha / alpha.norm()
        } else {
            Cplx::new(T::one(), T::zero())
        };
        let beta = -phase * col_norm;
        let mut v: Vec<Cplx<T>> = vec![Cplx::new(T::zero(), T::zero()); n];
        for i in (k + 1)..n {
            v[i] = h[(i, k)];
        }
        v[k + 1] = v[k + 1] - beta;
        let mut vnorm2 = T::zero();
        for item in v.iter().skip(k + 1) {
            vnorm2 = vnorm2 + item.norm_sqr();
        }
        if vnorm2 == T::zero() {
            continue;
        }
        let two = T::of(2.0);
        // H <- P H P with P = I - 2 v v^H / (v^H v)
        for j in 0..n {
            let mut dot = Cplx::new(T::zero(), T::zero());
            for i in (k + 1)..n {
                dot = dot + v[i].conj() * h[(i, j)];
            }
            let f = dot * (two / vnorm2);
            for i in (k + 1)..n {
                let vi = v[i];
                h[(i, j)] = h[(i, j)] - vi * f;
            }
        }
        for i in 0..n {
            let mut dot = Cplx::new(T::zero(), T::zero());
            for j in (k + 1)..n {
                dot = dot + h[(i, j)] * v[j];
            }
            let f = dot * (two / vnorm2);
            for j in (k + 1)..n {
                h[(i, j)] = h[(i, j)] - f * v[j].conj();
            }
        }
        for i in 0..n {
            let mut dot = Cplx::new(T::zero(), T::zero());
            for j in (k + 1)..n {
                dot = dot + q[(i, j)] * v[j];
            }
            let f = dot * (two / vnorm2);
            for j in (k + 1)..n {
                q[(i, j)] = q[(i, j)] - f * v[j].conj();
            }
        }
    }
    Schur { t: h, q }
}

fn wilkinson_shift<T: Real>(h: &CMat<T>, hi: usize) -> Cplx<T> {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let half = T::of(0.5);
    let tr2 = (a + d) * half;
    let det = a * d - b * c;
    let disc = (tr2 * tr2 - det).sqrt();
    let l1 = tr2 + disc;
    let l2 = tr2 - disc;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Reduce to upper triangular Schur form, T = Q^H A Q.
fn schur<T: Real>(a: &CMat<T>) -> Result<Schur<T>> {
    let n = a.rows();
    let Schur { mut t, mut q } = hessenberg(a);
    let eps = T::epsilon();
    let scale = t.max_abs().max(T::min_positive_value());
    let mut hi = n.saturating_sub(1);
    let mut iter_on_block = 0usize;
    let mut total = 0usize;
    let max_total = 60 * n.max(1);

    while hi > 0 {
        // Zero every negligible subdiagonal so block boundaries stay exact.
        for i in 1..=hi {
            let base = t[(i - 1, i - 1)].norm() + t[(i, i)].norm();
            let base = if base > T::zero() { base } else { scale };
            if t[(i, i - 1)].norm() <= eps * base {
                t[(i, i - 1)] = Cplx::new(T::zero(), T::zero());
            }
        }
        if t[(hi, hi - 1)].norm() == T::zero() {
            hi -= 1;
            iter_on_block = 0;
            continue;
        }
        // Active block [lo..=hi].
        let mut lo = hi;
        while lo > 0 && t[(lo, lo - 1)].norm() > T::zero() {
            lo -= 1;
        }

        total += 1;
        iter_on_block += 1;
        if total > max_total {
            return Err(Error::Numerics(
                "QR eigenvalue iteration did not converge".into(),
            ));
        }
        let sigma = if iter_on_block % 12 == 0 {
            // Exceptional shift to break rare cycles.
            let m = t[(hi, hi - 1)].norm() + if hi > 1 { t[(hi - 1, hi - 2)].norm() } else { T::zero() };
            t[(hi, hi)] + Cplx::new(m, T::zero())
        } else {
            wilkinson_shift(&t, hi)
        };

        for i in lo..=hi {
            t[(i, i)] = t[(i, i)] - sigma;
        }
        // QR factor by Givens on the subdiagonal, then multiply back RQ.
        let mut rots: Vec<(T, Cplx<T>)> = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(t[(k, k)], t[(k + 1, k)]);
            for j in k..n {
                let x = t[(k, j)];
                let y = t[(k + 1, j)];
                t[(k, j)] = x * c + y * s;
                t[(k + 1, j)] = -(s.conj() * x) + y * c;
            }
            rots.push((c, s));
        }
        for (k, (c, s)) in rots.iter().enumerate() {
            let k = lo + k;
            let rmax = (k + 2).min(hi + 1);
            for i in 0..rmax {
                let x = t[(i, k)];
                let y = t[(i, k + 1)];
                t[(i, k)] = x * *c + y * s.conj();
                t[(i, k + 1)] = -(x * *s) + y * *c;
            }
            for i in 0..n {
                let x = q[(i, k)];
                let y = q[(i, k + 1)];
                q[(i, k)] = x * *c + y * s.conj();
                q[(i, k + 1)] = -(x * *s) + y * *c;
            }
        }
        for i in lo..=hi {
            t[(i, i)] = t[(i, i)] + sigma;
        }
    }
    // Zero out the strict lower triangle (converged noise).
    for i in 0..n {
        for j in 0..i {
            t[(i, j)] = Cplx::new(T::zero(), T::zero());
        }
    }
    Ok(Schur { t, q })
}

/// Full eigendecomposition with an eigenvector condition check.
pub fn eigendecompose<T: Real>(a: &CMat<T>, cond_limit: T) -> Result<Eigen<T>> {
    assert_eq!(a.rows(), a.cols());
    let n = a.rows();
    if n == 0 {
        return Err(Error::Numerics("empty matrix".into()));
    }
    // Work on a normalized copy so deflation thresholds are scale-free.
    let scale = a.max_abs();
    let scale = if scale > T::zero() { scale } else { T::one() };
    let an = a.map(|z| z / scale);

    let Schur { t, q } = schur(&an)?;
    let tnorm = t.max_abs().max(T::min_positive_value());
    let eps = T::epsilon();

    let mut vectors = CMat::zeros(n, n);
    for k in 0..n {
        let lambda = t[(k, k)];
        let mut y = vec![Cplx::new(T::zero(), T::zero()); n];
        y[k] = Cplx::new(T::one(), T::zero());
        for i in (0..k).rev() {
            let mut acc = Cplx::new(T::zero(), T::zero());
            for j in (i + 1)..=k {
                acc = acc + t[(i, j)] * y[j];
            }
            let mut den = t[(i, i)] - lambda;
            if den.norm() < eps * tnorm {
                den = Cplx::new(eps * tnorm, T::zero());
            }
            y[i] = -acc / den;
        }
        let v = q.matvec(&y);
        let mut nrm = T::zero();
        for vi in &v {
            nrm = nrm + vi.norm_sqr();
        }
        let nrm = nrm.sqrt();
        for i in 0..n {
            vectors[(i, k)] = v[i] / nrm;
        }
    }

    let lu = CLu::factor(&vectors).map_err(|_| Error::IllConditionedEigenbasis {
        cond: f64::INFINITY,
        limit: cond_limit.to_f64().unwrap_or(f64::INFINITY),
    })?;
    let vectors_inv = lu.inverse();
    let cond = vectors.norm_1() * vectors_inv.norm_1();
    if !cond.is_finite() || cond > cond_limit {
        return Err(Error::IllConditionedEigenbasis {
            cond: cond.to_f64().unwrap_or(f64::INFINITY),
            limit: cond_limit.to_f64().unwrap_or(f64::INFINITY),
        });
    }

    let values = (0..n).map(|i| t[(i, i)] * scale).collect();
    Ok(Eigen {
        values,
        vectors,
        vectors_inv,
        cond,
    })
}
