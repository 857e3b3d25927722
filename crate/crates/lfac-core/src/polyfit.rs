//! Polynomial frequency models for cable series impedance and shunt
//! admittance, fitted to exact Pi samples by least squares.
//!
//! The series resistance uses a quadratic, reactance and shunt susceptance
//! use quadratics constrained to zero at DC, and the shunt conductance uses
//! a quartic. Fits are unweighted over a uniform frequency grid.

use serde::{Deserialize, Serialize};

use crate::cable::CableDesign;
use crate::error::{Error, Result};
use crate::scalar::{Cplx, Real};
use crate::sequence::{exact_pi, SequenceOptions};

/// One exact sample of the positive-sequence Pi parameters.
///
/// `y_shunt` is the full charging admittance of the cable (both Pi legs).
#[derive(Debug, Clone, Copy)]
pub struct SamplePoint<T> {
    pub omega: T,
    pub z_series: Cplx<T>,
    pub y_shunt: Cplx<T>,
}

/// Fitted polynomial coefficients, highest power first.
///
/// Units are ohms and siemens for the full cable length; frequency enters in
/// rad/s. The shunt polynomials model the total charging admittance, of
/// which half sits at each Pi terminal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyCableModel<T> {
    /// Series resistance quadratic [r2, r1, r0].
    pub r: [T; 3],
    /// Series reactance quadratic with zero constant term [x2, x1].
    pub x: [T; 2],
    /// Shunt susceptance quadratic with zero constant term [b2, b1].
    pub b: [T; 2],
    /// Shunt conductance quartic [g4, g3, g2, g1, g0].
    pub g: [T; 5],
    pub omega_min: T,
    pub omega_max: T,
    pub n_samples: usize,
}

impl<T: Real> PolyCableModel<T> {
    pub fn r_tilde(&self, omega: T) -> T {
        (self.r[0] * omega + self.r[1]) * omega + self.r[2]
    }

    pub fn x_tilde(&self, omega: T) -> T {
        (self.x[0] * omega + self.x[1]) * omega
    }

    pub fn b_tilde(&self, omega: T) -> T {
        (self.b[0] * omega + self.b[1]) * omega
    }

    pub fn g_tilde(&self, omega: T) -> T {
        (((self.g[0] * omega + self.g[1]) * omega + self.g[2]) * omega + self.g[3]) * omega
            + self.g[4]
    }

    pub fn r_tilde_d1(&self, omega: T) -> T {
        T::of(2.0) * self.r[0] * omega + self.r[1]
    }

    pub fn x_tilde_d1(&self, omega: T) -> T {
        T::of(2.0) * self.x[0] * omega + self.x[1]
    }

    pub fn b_tilde_d1(&self, omega: T) -> T {
        T::of(2.0) * self.b[0] * omega + self.b[1]
    }

    pub fn g_tilde_d1(&self, omega: T) -> T {
        ((T::of(4.0) * self.g[0] * omega + T::of(3.0) * self.g[1]) * omega
            + T::of(2.0) * self.g[2])
            * omega
            + self.g[3]
    }

    pub fn r_tilde_d2(&self, _omega: T) -> T {
        T::of(2.0) * self.r[0]
    }

    pub fn x_tilde_d2(&self, _omega: T) -> T {
        T::of(2.0) * self.x[0]
    }

    pub fn b_tilde_d2(&self, _omega: T) -> T {
        T::of(2.0) * self.b[0]
    }

    pub fn g_tilde_d2(&self, omega: T) -> T {
        (T::of(12.0) * self.g[0] * omega + T::of(6.0) * self.g[1]) * omega + T::of(2.0) * self.g[2]
    }

    /// DC series resistance (the quadratic's constant term).
    pub fn r_dc(&self) -> T {
        self.r[2]
    }

    /// DC shunt conductance (the quartic's constant term).
    pub fn g_dc(&self) -> T {
        self.g[4]
    }

    pub fn contains_omega(&self, omega: T) -> bool {
        let tol = T::of(1e-9) * (T::one() + self.omega_max.abs());
        omega >= self.omega_min - tol && omega <= self.omega_max + tol
    }
}

/// Default sample count for fitting.
pub const DEFAULT_N_SAMPLES: usize = 500;
/// Default lower end of the fitting grid, rad/s.
pub const DEFAULT_OMEGA_MIN: f64 = 1e-3;
/// Default upper end of the fitting grid, rad/s (60 Hz).
pub const DEFAULT_OMEGA_MAX: f64 = 120.0 * std::f64::consts::PI;

/// Evaluate the exact Pi on a uniform grid of `n` frequencies.
pub fn sample_reference<T: Real>(
    design: &CableDesign<T>,
    omega_min: T,
    omega_max: T,
    n: usize,
    opts: &SequenceOptions<T>,
) -> Result<Vec<SamplePoint<T>>> {
    if n < 5 {
        return Err(Error::InvalidFit(format!(
            "need at least 5 samples for the quartic conductance model, got {n}"
        )));
    }
    if !(omega_min > T::zero()) {
        return Err(Error::InvalidFit("omega_min must be positive".into()));
    }
    if !(omega_max > omega_min) {
        return Err(Error::InvalidFit("omega_max must exceed omega_min".into()));
    }
    let step = (omega_max - omega_min) / T::of((n - 1) as f64);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let omega = if i + 1 == n {
            omega_max
        } else {
            omega_min + step * T::of(i as f64)
        };
        let pi = exact_pi(design, design.length, omega, opts).map_err(|e| {
            Error::Numerics(format!(
                "reduction failed at omega = {:.6e} rad/s: {e}",
                omega.to_f64().unwrap_or(f64::NAN)
            ))
        })?;
        out.push(SamplePoint {
            omega,
            z_series: pi.z_series,
            y_shunt: pi.y_shunt_total(),
        });
    }
    Ok(out)
}

/// Least squares via Householder QR with column max-abs equilibration.
fn lstsq<T: Real>(columns: &[Vec<T>], rhs: &[T]) -> Result<Vec<T>> {
    let ncols = columns.len();
    let nrows = rhs.len();
    assert!(columns.iter().all(|c| c.len() == nrows));
    if nrows < ncols {
        return Err(Error::InvalidFit(
            "fewer samples than coefficients".into(),
        ));
    }
    // Scale columns to unit max magnitude; omega^4 columns otherwise swamp
    // the constant column.
    let mut scales = Vec::with_capacity(ncols);
    let mut a = vec![T::zero(); nrows * ncols];
    for (j, col) in columns.iter().enumerate() {
        let s = col.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        if s == T::zero() {
            return Err(Error::InvalidFit(format!(
                "design matrix column {j} is identically zero (degenerate grid)"
            )));
        }
        scales.push(s);
        for i in 0..nrows {
            a[i * ncols + j] = col[i] / s;
        }
    }
    let mut b = rhs.to_vec();

    for k in 0..ncols {
        let mut norm2 = T::zero();
        for i in k..nrows {
            norm2 = norm2 + a[i * ncols + k] * a[i * ncols + k];
        }
        let norm = norm2.sqrt();
        if norm <= T::epsilon() * T::of(nrows as f64) {
            return Err(Error::InvalidFit(
                "rank-deficient normal equations (degenerate grid)".into(),
            ));
        }
        let akk = a[k * ncols + k];
        let alpha = if akk >= T::zero() { -norm } else { norm };
        let mut v = vec![T::zero(); nrows];
        for i in k..nrows {
            v[i] = a[i * ncols + k];
        }
        v[k] = v[k] - alpha;
        let mut vtv = T::zero();
        for item in v.iter().skip(k) {
            vtv = vtv + *item * *item;
        }
        if vtv == T::zero() {
            continue;
        }
        let two = T::of(2.0);
        for j in k..ncols {
            let mut dot = T::zero();
            for i in k..nrows {
                dot = dot + v[i] * a[i * ncols + j];
            }
            let f = two * dot / vtv;
            for i in k..nrows {
                a[i * ncols + j] = a[i * ncols + j] - f * v[i];
            }
        }
        let mut dot = T::zero();
        for i in k..nrows {
            dot = dot + v[i] * b[i];
        }
        let f = two * dot / vtv;
        for i in k..nrows {
            b[i] = b[i] - f * v[i];
        }
    }
    // Back substitution on the triangular factor.
    let mut coeffs = vec![T::zero(); ncols];
    for k in (0..ncols).rev() {
        let mut acc = b[k];
        for j in (k + 1)..ncols {
            acc = acc - a[k * ncols + j] * coeffs[j];
        }
        coeffs[k] = acc / a[k * ncols + k];
    }
    for (c, s) in coeffs.iter_mut().zip(&scales) {
        *c = *c / *s;
    }
    Ok(coeffs)
}

/// Fit the four polynomial parameter curves to exact samples.
pub fn fit<T: Real>(samples: &[SamplePoint<T>]) -> Result<PolyCableModel<T>> {
    if samples.len() < 5 {
        return Err(Error::InvalidFit(format!(
            "need at least 5 samples for the quartic conductance model, got {}",
            samples.len()
        )));
    }
    let n = samples.len();
    let omega: Vec<T> = samples.iter().map(|s| s.omega).collect();
    let w2: Vec<T> = omega.iter().map(|&w| w * w).collect();
    let w3: Vec<T> = omega.iter().map(|&w| w * w * w).collect();
    let w4: Vec<T> = w2.iter().map(|&w| w * w).collect();
    let ones = vec![T::one(); n];

    let re_z: Vec<T> = samples.iter().map(|s| s.z_series.re).collect();
    let im_z: Vec<T> = samples.iter().map(|s| s.z_series.im).collect();
    let re_y: Vec<T> = samples.iter().map(|s| s.y_shunt.re).collect();
    let im_y: Vec<T> = samples.iter().map(|s| s.y_shunt.im).collect();

    let r = lstsq(&[w2.clone(), omega.clone(), ones.clone()], &re_z)?;
    let x = lstsq(&[w2.clone(), omega.clone()], &im_z)?;
    let b = lstsq(&[w2.clone(), omega.clone()], &im_y)?;
    let g = lstsq(&[w4, w3, w2, omega.clone(), ones], &re_y)?;

    let omega_min = omega.iter().cloned().fold(T::infinity(), T::min);
    let omega_max = omega.iter().cloned().fold(T::neg_infinity(), T::max);
    Ok(PolyCableModel {
        r: [r[0], r[1], r[2]],
        x: [x[0], x[1]],
        b: [b[0], b[1]],
        g: [g[0], g[1], g[2], g[3], g[4]],
        omega_min,
        omega_max,
        n_samples: n,
    })
}

/// Which fitted parameter a report row describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FitParam {
    R,
    X,
    G,
    B,
}

impl FitParam {
    pub fn label(self) -> &'static str {
        match self {
            FitParam::R => "R",
            FitParam::X => "X",
            FitParam::G => "G",
            FitParam::B => "B",
        }
    }
}

/// Fit-error metrics for one parameter curve.
///
/// Errors are approximate minus detailed; relative values are percentages of
/// the largest detailed magnitude over the grid.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FitReportRow<T> {
    pub param: FitParam,
    /// Signed error with the largest magnitude, in ohms or siemens.
    pub largest_error: T,
    /// Largest signed relative error, percent.
    pub largest_rel_error_pct: T,
    /// Frequency of the largest error, Hz.
    pub freq_of_largest_hz: T,
    /// RMS of all errors relative to the same normalizer, percent.
    pub rms_rel_error_pct: T,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitReport<T> {
    pub rows: [FitReportRow<T>; 4],
}

impl<T: Real> FitReport<T> {
    pub fn row(&self, param: FitParam) -> &FitReportRow<T> {
        self.rows.iter().find(|r| r.param == param).unwrap()
    }
}

fn report_row<T: Real>(
    param: FitParam,
    detailed: &[T],
    approx: &[T],
    omegas: &[T],
) -> FitReportRow<T> {
    let n = detailed.len();
    let norm = detailed
        .iter()
        .fold(T::zero(), |m, v| m.max(v.abs()))
        .max(T::min_positive_value());
    let mut worst = T::zero();
    let mut worst_idx = 0usize;
    let mut sq_sum = T::zero();
    for i in 0..n {
        let err = approx[i] - detailed[i];
        sq_sum = sq_sum + err * err;
        if err.abs() > worst.abs() {
            worst = err;
            worst_idx = i;
        }
    }
    let rms = (sq_sum / T::of(n as f64)).sqrt();
    let hundred = T::of(100.0);
    let two_pi = T::of(2.0) * T::PI();
    FitReportRow {
        param,
        largest_error: worst,
        largest_rel_error_pct: worst / norm * hundred,
        freq_of_largest_hz: omegas[worst_idx] / two_pi,
        rms_rel_error_pct: rms / norm * hundred,
    }
}

/// Compare a fitted model against exact samples.
pub fn fit_report<T: Real>(model: &PolyCableModel<T>, samples: &[SamplePoint<T>]) -> FitReport<T> {
    let omegas: Vec<T> = samples.iter().map(|s| s.omega).collect();
    let detail_r: Vec<T> = samples.iter().map(|s| s.z_series.re).collect();
    let detail_x: Vec<T> = samples.iter().map(|s| s.z_series.im).collect();
    let detail_g: Vec<T> = samples.iter().map(|s| s.y_shunt.re).collect();
    let detail_b: Vec<T> = samples.iter().map(|s| s.y_shunt.im).collect();
    let approx_r: Vec<T> = omegas.iter().map(|&w| model.r_tilde(w)).collect();
    let approx_x: Vec<T> = omegas.iter().map(|&w| model.x_tilde(w)).collect();
    let approx_g: Vec<T> = omegas.iter().map(|&w| model.g_tilde(w)).collect();
    let approx_b: Vec<T> = omegas.iter().map(|&w| model.b_tilde(w)).collect();
    FitReport {
        rows: [
            report_row(FitParam::R, &detail_r, &approx_r, &omegas),
            report_row(FitParam::X, &detail_x, &approx_x, &omegas),
            report_row(FitParam::G, &detail_g, &approx_g, &omegas),
            report_row(FitParam::B, &detail_b, &approx_b, &omegas),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn synthetic_samples(n: usize) -> Vec<SamplePoint<f64>> {
        // Exact model-class data: quadratic R, X, B; quartic G.
        let (r2, r1, r0) = (2e-6, 3e-4, 1.5);
        let (x2, x1) = (-4e-6, 8e-2);
        let (b2, b1) = (1e-8, 3e-5);
        let (g4, g3, g2, g1, g0) = (1e-12, -2e-10, 4e-8, 1e-7, 5e-6);
        (0..n)
            .map(|i| {
                let w = 1e-3 + (377.0 - 1e-3) * i as f64 / (n - 1) as f64;
                SamplePoint {
                    omega: w,
                    z_series: Cplx::new(r2 * w * w + r1 * w + r0, x2 * w * w + x1 * w),
                    y_shunt: Cplx::new(
                        g4 * w.powi(4) + g3 * w.powi(3) + g2 * w * w + g1 * w + g0,
                        b2 * w * w + b1 * w,
                    ),
                }
            })
            .collect()
    }

    #[test]
    fn recovers_model_class_data_exactly() {
        let samples = synthetic_samples(200);
        let model = fit(&samples).unwrap();
        assert_relative_eq!(model.r[0], 2e-6, max_relative = 1e-10);
        assert_relative_eq!(model.r[1], 3e-4, max_relative = 1e-10);
        assert_relative_eq!(model.r[2], 1.5, max_relative = 1e-10);
        assert_relative_eq!(model.x[0], -4e-6, max_relative = 1e-10);
        assert_relative_eq!(model.x[1], 8e-2, max_relative = 1e-10);
        assert_relative_eq!(model.b[0], 1e-8, max_relative = 1e-8);
        assert_relative_eq!(model.b[1], 3e-5, max_relative = 1e-10);
        assert_relative_eq!(model.g[2], 4e-8, max_relative = 1e-6);
        assert_relative_eq!(model.g[4], 5e-6, max_relative = 1e-8);

        // Zero-error report on its own training data.
        let report = fit_report(&model, &samples);
        for row in &report.rows {
            assert!(row.largest_rel_error_pct.abs() < 1e-7);
            assert!(row.rms_rel_error_pct <= row.largest_rel_error_pct.abs() + 1e-12);
        }
    }

    #[test]
    fn adding_samples_from_fitted_polynomial_keeps_coefficients() {
        let samples = synthetic_samples(100);
        let model = fit(&samples).unwrap();
        let mut extended = samples.clone();
        for i in 0..50 {
            let w = 5.0 + 7.0 * i as f64;
            extended.push(SamplePoint {
                omega: w,
                z_series: Cplx::new(model.r_tilde(w), model.x_tilde(w)),
                y_shunt: Cplx::new(model.g_tilde(w), model.b_tilde(w)),
            });
        }
        let refit = fit(&extended).unwrap();
        for k in 0..3 {
            assert_relative_eq!(refit.r[k], model.r[k], max_relative = 1e-9);
        }
        for k in 0..5 {
            let denom = model.g[k].abs().max(1e-18);
            assert!((refit.g[k] - model.g[k]).abs() / denom < 1e-6);
        }
    }

    #[test]
    fn residual_orthogonal_to_design_columns() {
        let samples = synthetic_samples(120);
        // Perturb the R data so the fit has nonzero residuals.
        let mut noisy = samples.clone();
        for (i, s) in noisy.iter_mut().enumerate() {
            let bump = ((i * 2654435761) % 1000) as f64 / 1000.0 - 0.5;
            s.z_series = Cplx::new(s.z_series.re * (1.0 + 0.01 * bump), s.z_series.im);
        }
        let model = fit(&noisy).unwrap();
        let omega: Vec<f64> = noisy.iter().map(|s| s.omega).collect();
        let resid: Vec<f64> = noisy
            .iter()
            .map(|s| model.r_tilde(s.omega) - s.z_series.re)
            .collect();
        for col in [
            omega.iter().map(|w| w * w).collect::<Vec<_>>(),
            omega.clone(),
            vec![1.0; omega.len()],
        ] {
            let dot: f64 = col.iter().zip(&resid).map(|(a, b)| a * b).sum();
            let col_norm: f64 = col.iter().map(|v| v * v).sum::<f64>().sqrt();
            let r_norm: f64 = resid.iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!(
                dot.abs() <= 1e-8 * col_norm * r_norm.max(1e-30),
                "residual not orthogonal: {dot:e}"
            );
        }
    }

    #[test]
    fn underdetermined_rejected() {
        let samples = synthetic_samples(200);
        assert!(fit(&samples[..2]).is_err());
        assert!(fit(&samples[..4]).is_err());
        assert!(fit(&samples[..5]).is_ok());
    }

    #[test]
    fn x_and_b_have_no_constant_term() {
        let samples = synthetic_samples(80);
        let model = fit(&samples).unwrap();
        assert_eq!(model.x_tilde(0.0), 0.0);
        assert_eq!(model.b_tilde(0.0), 0.0);
    }
}
