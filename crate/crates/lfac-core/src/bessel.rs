//! Modified Bessel functions of complex argument.
//!
//! Skin-effect impedances need I0, I1, K0, K1 at arguments m*r with
//! arg(m) = pi/4 and magnitudes from ~1e-6 up to a few tens. Power series
//! cover the small and mid range; Hankel asymptotic expansions take over
//! where the K series would cancel catastrophically. The I0/I1 ratio that
//! appears in the solid-conductor impedance is evaluated ratio-wise with a
//! continued fraction so it never overflows.

use crate::error::{Error, Result};
use crate::scalar::{Cplx, Real};

/// Euler-Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const MAX_SERIES_TERMS: usize = 220;

fn series_limit_i<T: Real>() -> T {
    T::of(25.0)
}

/// The K series cancels like exp(2 Re z); cap Re z so at most ~7 digits are
/// lost before the asymptotic expansion takes over.
fn k_series_ok<T: Real>(z: Cplx<T>) -> bool {
    z.re.abs() <= T::of(8.0) && z.norm() <= T::of(30.0)
}

fn overflow_limit<T: Real>() -> T {
    // exp(|z|) must stay representable with headroom.
    T::of(600.0)
}

fn check_arg<T: Real>(z: Cplx<T>) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Numerics("non-finite Bessel argument".into()));
    }
    if z.norm() > overflow_limit() {
        return Err(Error::Numerics(format!(
            "Bessel argument magnitude {:.3e} exceeds supported range",
            z.norm().to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(())
}

/// I0 by power series: sum (z^2/4)^k / (k!)^2.
fn i0_series<T: Real>(z: Cplx<T>) -> Result<Cplx<T>> {
    let q = z * z * Cplx::new(T::of(0.25), T::zero());
    let mut term = Cplx::new(T::one(), T::zero());
    let mut sum = term;
    for k in 1..MAX_SERIES_TERMS {
        let kk = T::of(k as f64);
        term = term * q / Cplx::new(kk * kk, T::zero());
        sum = sum + term;
        if term.norm() <= sum.norm() * T::epsilon() {
            return Ok(sum);
        }
    }
    Err(Error::Numerics("I0 series did not converge".into()))
}

/// I1 by power series: (z/2) * sum (z^2/4)^k / (k! (k+1)!).
fn i1_series<T: Real>(z: Cplx<T>) -> Result<Cplx<T>> {
    let q = z * z * Cplx::new(T::of(0.25), T::zero());
    let mut term = Cplx::new(T::one(), T::zero());
    let mut sum = term;
    for k in 1..MAX_SERIES_TERMS {
        let kk = T::of(k as f64);
        term = term * q / Cplx::new(kk * (kk + T::one()), T::zero());
        sum = sum + term;
        if term.norm() <= sum.norm() * T::epsilon() {
            return Ok(sum * z * Cplx::new(T::of(0.5), T::zero()));
        }
    }
    Err(Error::Numerics("I1 series did not converge".into()))
}

fn k0_series<T: Real>(z: Cplx<T>) -> Result<Cplx<T>> {
    let q = z * z * Cplx::new(T::of(0.25), T::zero());
    let half_z = z * Cplx::new(T::of(0.5), T::zero());
    let lead = -(half_z.ln() + Cplx::new(T::of(EULER_GAMMA), T::zero())) * i0_series(z)?;
    let mut term = Cplx::new(T::one(), T::zero());
    let mut harmonic = T::zero();
    let mut sum = Cplx::new(T::zero(), T::zero());
    for k in 1..MAX_SERIES_TERMS {
        let kk = T::of(k as f64);
        term = term * q / Cplx::new(kk * kk, T::zero());
        harmonic += T::one() / kk;
        let contrib = term * Cplx::new(harmonic, T::zero());
        sum = sum + contrib;
        if contrib.norm() <= (sum.norm() + lead.norm()) * T::epsilon() {
            return Ok(lead + sum);
        }
    }
    Err(Error::Numerics("K0 series did not converge".into()))
}

fn k1_series<T: Real>(z: Cplx<T>) -> Result<Cplx<T>> {
    let q = z * z * Cplx::new(T::of(0.25), T::zero());
    let half_z = z * Cplx::new(T::of(0.5), T::zero());
    let lead = Cplx::new(T::one(), T::zero()) / z + half_z.ln() * i1_series(z)?;
    // sum over k of (psi(k+1) + psi(k+2)) q^k / (k! (k+1)!)
    let gamma2 = T::of(2.0 * EULER_GAMMA);
    let mut term = Cplx::new(T::one(), T::zero());
    let mut h_k = T::zero();
    let mut h_k1 = T::one();
    let mut sum = term * Cplx::new(h_k + h_k1 - gamma2, T::zero());
    for k in 1..MAX_SERIES_TERMS {
        let kk = T::of(k as f64);
        term = term * q / Cplx::new(kk * (kk + T::one()), T::zero());
        h_k += T::one() / kk;
        h_k1 += T::one() / (kk + T::one());
        let contrib = term * Cplx::new(h_k + h_k1 - gamma2, T::zero());
        sum = sum + contrib;
        if contrib.norm() <= (sum.norm() + lead.norm()) * T::epsilon() {
            let quarter_z = z * Cplx::new(T::of(0.25), T::zero());
            return Ok(lead - quarter_z * sum);
        }
    }
    Err(Error::Numerics("K1 series did not converge".into()))
}

/// Hankel asymptotic tail: sum_k coeff_k(nu) / (±8z)^k, truncated at the
/// smallest term.
fn hankel_tail<T: Real>(nu: u32, z: Cplx<T>, alternating: bool) -> Cplx<T> {
    let mu = T::of((4 * nu * nu) as f64);
    let mut sum = Cplx::new(T::one(), T::zero());
    let mut term = Cplx::new(T::one(), T::zero());
    let mut last_norm = T::infinity();
    let eight_z = z * Cplx::new(T::of(8.0), T::zero());
    for k in 0..40u32 {
        let odd = T::of((2 * k + 1) as f64);
        let factor = (mu - odd * odd) / (T::of((k + 1) as f64));
        term = term * Cplx::new(factor, T::zero()) / eight_z;
        if alternating {
            term = -term;
        }
        let tn = term.norm();
        if tn >= last_norm || tn <= sum.norm() * T::epsilon() {
            break;
        }
        sum = sum + term;
        last_norm = tn;
    }
    sum
}

fn i_asymptotic<T: Real>(nu: u32, z: Cplx<T>) -> Cplx<T> {
    let two_pi = T::of(2.0) * T::PI();
    let pref = z.exp() / (z * Cplx::new(two_pi, T::zero())).sqrt();
    pref * hankel_tail(nu, z, true)
}

fn k_asymptotic<T: Real>(nu: u32, z: Cplx<T>) -> Cplx<T> {
    let pref = (-z).exp() * (Cplx::new(T::PI(), T::zero()) / (z * Cplx::new(T::of(2.0), T::zero()))).sqrt();
    pref * hankel_tail(nu, z, false)
}

pub fn bessel_i0<T: Real>(z: Cplx<T>) -> Result<Cplx<T>> {
    check_arg(z)?;
    if z.norm() <= series_limit_i() {
        i0_series(z)
    } else {
        Ok(i_asymptotic(0, z))
    }
}

pub fn bessel_i1<T: Real>(z: Cplx<T>) -> Result<Cplx<T>> {
    check_arg(z)?;
    if z.norm() <= series_limit_i() {
        i1_series(z)
    } else {
        Ok(i_asymptotic(1, z))
    }
}

pub fn bessel_k0<T: Real>(z: Cplx<T>) -> Result<Cplx<T>> {
    check_arg(z)?;
    if k_series_ok(z) {
        k0_series(z)
    } else {
        Ok(k_asymptotic(0, z))
    }
}

pub fn bessel_k1<T: Real>(z: Cplx<T>) -> Result<Cplx<T>> {
    check_arg(z)?;
    if k_series_ok(z) {
        k1_series(z)
    } else {
        Ok(k_asymptotic(1, z))
    }
}

/// I0(z)/I1(z) evaluated ratio-wise.
///
/// Uses the Gauss continued fraction for I1/I0 with the modified Lentz
/// algorithm, so the ratio stays finite where I0 and I1 individually
/// overflow. Diverges like 2/z for small arguments; callers handle the
/// exact DC limit separately.
pub fn i0_over_i1<T: Real>(z: Cplx<T>) -> Result<Cplx<T>> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Numerics("non-finite Bessel argument".into()));
    }
    if z.norm() == T::zero() {
        return Err(Error::Numerics("I0/I1 undefined at zero argument".into()));
    }
    // I1/I0 = (z/2) / (1 + q/(2 + q/(3 + ...))), q = z^2/4.
    let q = z * z * Cplx::new(T::of(0.25), T::zero());
    let tiny = Cplx::new(T::min_positive_value() / T::epsilon(), T::zero());
    let mut f = Cplx::new(T::one(), T::zero()); // b0 = 1
    if f.norm() == T::zero() {
        f = tiny;
    }
    let mut c_prev = f;
    let mut d_prev = Cplx::new(T::zero(), T::zero());
    for k in 2..MAX_SERIES_TERMS {
        let b = Cplx::new(T::of(k as f64), T::zero());
        let mut d = b + q * d_prev;
        if d.norm() == T::zero() {
            d = tiny;
        }
        let mut c = b + q / c_prev;
        if c.norm() == T::zero() {
            c = tiny;
        }
        d = Cplx::new(T::one(), T::zero()) / d;
        let delta = c * d;
        f = f * delta;
        c_prev = c;
        d_prev = d;
        if (delta - Cplx::new(T::one(), T::zero())).norm() < T::epsilon() {
            let ratio_i1_i0 = z * Cplx::new(T::of(0.5), T::zero()) / f;
            return Ok(Cplx::new(T::one(), T::zero()) / ratio_i1_i0);
        }
    }
    Err(Error::Numerics(
        "continued fraction for I0/I1 did not converge".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    type C = Cplx<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    // Real-argument reference values (Abramowitz & Stegun tables).
    #[test]
    fn real_axis_reference_values() {
        assert_relative_eq!(bessel_i0(c(1.0, 0.0)).unwrap().re, 1.266_065_877_752_008, max_relative = 1e-14);
        assert_relative_eq!(bessel_i1(c(1.0, 0.0)).unwrap().re, 0.565_159_103_992_485, max_relative = 1e-14);
        assert_relative_eq!(bessel_k0(c(1.0, 0.0)).unwrap().re, 0.421_024_438_240_708, max_relative = 1e-13);
        assert_relative_eq!(bessel_k1(c(1.0, 0.0)).unwrap().re, 0.601_907_230_197_235, max_relative = 1e-13);
        assert_relative_eq!(bessel_i0(c(10.0, 0.0)).unwrap().re, 2_815.716_628_466_254, max_relative = 1e-12);
        assert_relative_eq!(bessel_k1(c(10.0, 0.0)).unwrap().re, 1.864_877_345_382_558e-5, max_relative = 1e-9);
    }

    #[test]
    fn wronskian_identity_across_ranges() {
        // I0(z) K1(z) + I1(z) K0(z) = 1/z, a strong cross-check of all four.
        for &mag in &[1e-3, 0.1, 1.0, 3.0, 6.0, 9.5, 12.0, 20.0, 40.0] {
            let z = C::from_polar(mag, std::f64::consts::FRAC_PI_4);
            let lhs = bessel_i0(z).unwrap() * bessel_k1(z).unwrap()
                + bessel_i1(z).unwrap() * bessel_k0(z).unwrap();
            let rhs = c(1.0, 0.0) / z;
            assert!(
                (lhs - rhs).norm() / rhs.norm() < 2e-10,
                "wronskian off at |z|={mag}: rel {:e}",
                (lhs - rhs).norm() / rhs.norm()
            );
        }
    }

    #[test]
    fn ratio_matches_direct_quotient() {
        for &mag in &[1e-4, 0.3, 2.0, 5.0, 15.0, 24.0] {
            let z = C::from_polar(mag, std::f64::consts::FRAC_PI_4);
            let direct = bessel_i0(z).unwrap() / bessel_i1(z).unwrap();
            let ratio = i0_over_i1(z).unwrap();
            assert!(
                (direct - ratio).norm() / direct.norm() < 1e-12,
                "ratio mismatch at |z|={mag}"
            );
        }
    }

    #[test]
    fn ratio_survives_arguments_that_overflow_i0() {
        // exp(400/sqrt(2)) overflows nothing, exp(500) would; the ratio itself
        // must stay near 1 for large arguments.
        let z = C::from_polar(560.0, std::f64::consts::FRAC_PI_4);
        let r = i0_over_i1(z).unwrap();
        assert!((r.norm() - 1.0).abs() < 0.01);
    }

    #[test]
    fn small_argument_ratio_diverges_like_2_over_z() {
        let z = c(1e-6, 1e-6);
        let r = i0_over_i1(z).unwrap();
        let expect = c(2.0, 0.0) / z;
        assert!((r - expect).norm() / expect.norm() < 1e-6);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(bessel_i0(c(f64::NAN, 0.0)).is_err());
        assert!(bessel_k0(c(1e9, 0.0)).is_err());
    }

    mod exact_series_oracle {
        //! Arbitrary-precision rational evaluation of the I0 and I1 power
        //! series, independent of the continued-fraction production path.
        use num_bigint::BigInt;
        use num_rational::BigRational;

        #[derive(Clone)]
        pub struct RatComplex {
            pub re: BigRational,
            pub im: BigRational,
        }

        impl RatComplex {
            pub fn from_f64(re: f64, im: f64) -> Self {
                RatComplex {
                    re: BigRational::from_float(re).unwrap(),
                    im: BigRational::from_float(im).unwrap(),
                }
            }
            pub fn mul(&self, o: &Self) -> Self {
                RatComplex {
                    re: &self.re * &o.re - &self.im * &o.im,
                    im: &self.re * &o.im + &self.im * &o.re,
                }
            }
            pub fn add(&self, o: &Self) -> Self {
                RatComplex {
                    re: &self.re + &o.re,
                    im: &self.im + &o.im,
                }
            }
            pub fn div_int(&self, k: &BigInt) -> Self {
                RatComplex {
                    re: &self.re / k,
                    im: &self.im / k,
                }
            }
            pub fn div(&self, o: &Self) -> Self {
                let den = &o.re * &o.re + &o.im * &o.im;
                let num = self.mul(&RatComplex {
                    re: o.re.clone(),
                    im: -o.im.clone(),
                });
                RatComplex {
                    re: &num.re / &den,
                    im: &num.im / &den,
                }
            }
            pub fn to_f64(&self) -> (f64, f64) {
                let f = |r: &BigRational| {
                    let n = r.numer();
                    let d = r.denom();
                    // Scale into f64 range before converting.
                    let bits = n.bits().max(d.bits());
                    if bits > 900 {
                        let shift = (bits - 900) as u64;
                        let n2 = n >> shift;
                        let d2 = d >> shift;
                        nf(&n2) / nf(&d2)
                    } else {
                        nf(n) / nf(d)
                    }
                };
                fn nf(b: &BigInt) -> f64 {
                    let (sign, digits) = b.to_radix_be(16);
                    let mut v = 0.0f64;
                    for d in digits {
                        v = v * 16.0 + d as f64;
                    }
                    if sign == num_bigint::Sign::Minus {
                        -v
                    } else {
                        v
                    }
                }
                (f(&self.re), f(&self.im))
            }
        }

        /// Exact-rational truncated series for I0 and I1, 90 terms.
        pub fn i0_i1_exact(re: f64, im: f64) -> ((f64, f64), (f64, f64)) {
            let z = RatComplex::from_f64(re, im);
            let q = z.mul(&z).div_int(&BigInt::from(4));
            let mut term = RatComplex::from_f64(1.0, 0.0);
            let mut i0 = term.clone();
            let mut i1_sum = term.clone();
            let mut term1 = RatComplex::from_f64(1.0, 0.0);
            for k in 1..90u32 {
                let kk = BigInt::from(k);
                term = term.mul(&q).div_int(&(&kk * &kk));
                i0 = i0.add(&term);
                term1 = term1.mul(&q).div_int(&(&kk * (&kk + 1)));
                i1_sum = i1_sum.add(&term1);
            }
            let half_z = RatComplex {
                re: z.re / BigInt::from(2),
                im: z.im / BigInt::from(2),
            };
            let i1 = i1_sum.mul(&half_z);
            (i0.to_f64(), i1.to_f64())
        }

        /// I0/I1 computed wholly in rational arithmetic, rounded at the end.
        pub fn ratio_exact(re: f64, im: f64) -> (f64, f64) {
            let z = RatComplex::from_f64(re, im);
            let q = z.mul(&z).div_int(&BigInt::from(4));
            let mut term = RatComplex::from_f64(1.0, 0.0);
            let mut i0 = term.clone();
            let mut i1_sum = term.clone();
            let mut term1 = RatComplex::from_f64(1.0, 0.0);
            for k in 1..90u32 {
                let kk = BigInt::from(k);
                term = term.mul(&q).div_int(&(&kk * &kk));
                i0 = i0.add(&term);
                term1 = term1.mul(&q).div_int(&(&kk * (&kk + 1)));
                i1_sum = i1_sum.add(&term1);
            }
            let half_z = RatComplex {
                re: z.re / BigInt::from(2),
                im: z.im / BigInt::from(2),
            };
            i0.div(&i1_sum.mul(&half_z)).to_f64()
        }
    }

    #[test]
    fn series_agrees_with_exact_rational_oracle() {
        for &(re, im) in &[(0.5, 0.5), (2.0, 2.0), (4.3, 4.3), (1.0, -2.0)] {
            let ((i0re, i0im), (i1re, i1im)) = exact_series_oracle::i0_i1_exact(re, im);
            let i0 = bessel_i0(c(re, im)).unwrap();
            let i1 = bessel_i1(c(re, im)).unwrap();
            assert!((i0 - c(i0re, i0im)).norm() / i0.norm() < 1e-13);
            assert!((i1 - c(i1re, i1im)).norm() / i1.norm() < 1e-13);
        }
    }

    #[test]
    fn ratio_agrees_with_exact_rational_oracle() {
        for &(re, im) in &[(0.7, 0.7), (2.4, 2.4), (4.3, 4.3)] {
            let (rr, ri) = exact_series_oracle::ratio_exact(re, im);
            let r = i0_over_i1(c(re, im)).unwrap();
            assert!(
                (r - c(rr, ri)).norm() / r.norm() < 1e-12,
                "ratio vs exact oracle at ({re},{im})"
            );
        }
    }
}
