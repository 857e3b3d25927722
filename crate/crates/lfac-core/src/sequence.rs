//! Exact terminal solution of the six-conductor cable, sheath elimination
//! under single-point bonding, and positive-sequence Pi extraction.

use num_complex::Complex;

use crate::cable::{CableDesign, DistributedMatrices};
use crate::error::{Error, Result};
use crate::linalg::{checked_inverse, eigendecompose, CLu, CMat};
use crate::scalar::{Cplx, Real};

/// Numerical guards for the reduction chain.
#[derive(Debug, Clone, Copy)]
pub struct SequenceOptions<T> {
    /// Condition limit for the eigenvector basis of Z*Y.
    pub max_eigvec_cond: T,
    /// Condition limit for inverting the sheath voltage block alpha_22.
    pub max_alpha22_cond: T,
    /// Below this |c| the cable is electrically too short to extract a Pi.
    pub min_c_magnitude: T,
    /// Allowed residual of the two-port identity a*d - b*c = 1.
    pub two_port_det_tol: T,
}

impl<T: Real> Default for SequenceOptions<T> {
    fn default() -> Self {
        SequenceOptions {
            max_eigvec_cond: T::of(1e12),
            max_alpha22_cond: T::of(1e12),
            min_c_magnitude: T::of(1e-14),
            two_port_det_tol: T::of(1e-6),
        }
    }
}

/// The 12x12 terminal map of a cable of a given length: origin voltages and
/// currents in terms of destination ones, partitioned in 3x3 blocks ordered
/// core voltages, sheath voltages, core currents, sheath currents.
#[derive(Debug, Clone)]
pub struct TerminalMatrix<T> {
    pub omega: T,
    pub length: T,
    matrix: CMat<T>,
}

impl<T: Real> TerminalMatrix<T> {
    /// Block alpha_{rc} with 1-based block indices as in the partitioning.
    pub fn alpha(&self, row: usize, col: usize) -> CMat<T> {
        assert!((1..=4).contains(&row) && (1..=4).contains(&col));
        self.matrix.block3(row - 1, col - 1)
    }

    pub fn assembled(&self) -> &CMat<T> {
        &self.matrix
    }
}

fn sinhc<T: Real>(z: Cplx<T>) -> Cplx<T> {
    if z.norm() < T::of(1e-4) {
        let z2 = z * z;
        let one = Cplx::new(T::one(), T::zero());
        one + z2 / Cplx::new(T::of(6.0), T::zero())
            + z2 * z2 / Cplx::new(T::of(120.0), T::zero())
    } else {
        z.sinh() / z
    }
}

/// Solve the six-conductor terminal problem for a cable of `length` meters.
///
/// Matrix functions of Z*Y are evaluated through its eigendecomposition with
/// the principal square root of each eigenvalue. Eigenvalues on the negative
/// real axis are refused as a branch ambiguity.
pub fn terminal_solution<T: Real>(
    z: &CMat<T>,
    y: &CMat<T>,
    length: T,
    omega: T,
    opts: &SequenceOptions<T>,
) -> Result<TerminalMatrix<T>> {
    assert_eq!(z.rows(), 6);
    assert_eq!(y.rows(), 6);
    if length < T::zero() {
        return Err(Error::InvalidDesign("length must be nonnegative".into()));
    }
    let zy = z.matmul(y);
    let eig = eigendecompose(&zy, opts.max_eigvec_cond)?;
    let scale = zy.max_abs().max(T::min_positive_value());
    for lam in &eig.values {
        if lam.re < T::zero() && lam.im.abs() <= T::of(1e-12) * scale.max(lam.norm()) {
            return Err(Error::NegativeRealEigenvalue {
                re: lam.re.to_f64().unwrap_or(f64::NAN),
                im: lam.im.to_f64().unwrap_or(f64::NAN),
            });
        }
    }

    let l = Cplx::new(length, T::zero());
    // B = cosh(l sqrt(ZY)), applied per eigenvalue.
    let b = eig.apply_fn(|lam| (l * lam.sqrt()).cosh());
    // C (ZY)^{-1/2} = V diag(l sinhc(l gamma)) V^{-1}
    let c_zy_minus_half = eig.apply_fn(|lam| l * sinhc(l * lam.sqrt()));
    // (ZY)^{1/2} C = V diag(gamma sinh(l gamma)) V^{-1}
    let zy_half_c = eig.apply_fn(|lam| {
        let g = lam.sqrt();
        g * (l * g).sinh()
    });

    let b12 = c_zy_minus_half.matmul(z);
    let z_lu = CLu::factor(z).map_err(|_| Error::SingularMatrix {
        context: "series impedance matrix".into(),
        cond: f64::INFINITY,
    })?;
    let b21 = z_lu.solve_mat(&zy_half_c);
    let b22 = z_lu.solve_mat(&b.matmul(z));

    let mut m = CMat::zeros(12, 12);
    for i in 0..6 {
        for j in 0..6 {
            m[(i, j)] = b[(i, j)];
            m[(i, j + 6)] = b12[(i, j)];
            m[(i + 6, j)] = b21[(i, j)];
            m[(i + 6, j + 6)] = b22[(i, j)];
        }
    }
    Ok(TerminalMatrix {
        omega,
        length,
        matrix: m,
    })
}

/// Eliminate sheath variables under single-point bonding: sheaths grounded
/// at the origin (V_o^s = 0) and open at the destination (I_d^s = 0).
///
/// Returns the 6x6 map [V_o; I_o] = R [V_d; I_d] for the core conductors,
/// as the four 3x3 blocks
/// `[a11 - a12 a22^-1 a21, a13 - a12 a22^-1 a23; a31 - a32 a22^-1 a21, a33 - a32 a22^-1 a23]`.
pub fn eliminate_sheaths<T: Real>(
    tm: &TerminalMatrix<T>,
    opts: &SequenceOptions<T>,
) -> Result<CMat<T>> {
    let a11 = tm.alpha(1, 1);
    let a12 = tm.alpha(1, 2);
    let a13 = tm.alpha(1, 3);
    let a21 = tm.alpha(2, 1);
    let a22 = tm.alpha(2, 2);
    let a23 = tm.alpha(2, 3);
    let a31 = tm.alpha(3, 1);
    let a32 = tm.alpha(3, 2);
    let a33 = tm.alpha(3, 3);

    let a22_inv = checked_inverse(&a22, opts.max_alpha22_cond, "sheath block alpha_22")?;

    let m12 = a12.matmul(&a22_inv);
    let m32 = a32.matmul(&a22_inv);

    let r11 = a11.sub(&m12.matmul(&a21));
    let r12 = a13.sub(&m12.matmul(&a23));
    let r21 = a31.sub(&m32.matmul(&a21));
    let r22 = a33.sub(&m32.matmul(&a23));

    let mut reduced = CMat::zeros(6, 6);
    reduced.set_block3(0, 0, &r11);
    reduced.set_block3(0, 1, &r12);
    reduced.set_block3(1, 0, &r21);
    reduced.set_block3(1, 1, &r22);
    Ok(reduced)
}

/// Positive-sequence lumped Pi parameters at one frequency.
///
/// `z_series` is the total series impedance of the cable in ohms and
/// `y_shunt_half` the admittance of one shunt leg in siemens; the full
/// charging admittance of the cable is `2 * y_shunt_half`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiModel<T> {
    pub omega: T,
    pub z_series: Cplx<T>,
    pub y_shunt_half: Cplx<T>,
}

impl<T: Real> PiModel<T> {
    /// Total shunt admittance of the Pi (both legs).
    pub fn y_shunt_total(&self) -> Cplx<T> {
        self.y_shunt_half * Cplx::new(T::of(2.0), T::zero())
    }

    pub fn series_resistance(&self) -> T {
        self.z_series.re
    }

    pub fn series_reactance(&self) -> T {
        self.z_series.im
    }

    pub fn shunt_conductance_total(&self) -> T {
        self.y_shunt_total().re
    }

    pub fn shunt_susceptance_total(&self) -> T {
        self.y_shunt_total().im
    }
}

fn phase_rotation<T: Real>(negative: bool) -> Cplx<T> {
    let angle = T::of(2.0) * T::PI() / T::of(3.0);
    Complex::from_polar(T::one(), if negative { -angle } else { angle })
}

/// Positive-sequence scalar of a 3x3 block: A_s1 * M * A_s2 with
/// A_s1 = (1/3)[1, e^{j2pi/3}, e^{-j2pi/3}] and A_s2 = [1, e^{-j2pi/3}, e^{j2pi/3}]^T.
fn positive_sequence_scalar<T: Real>(m: &CMat<T>) -> Cplx<T> {
    let a = phase_rotation::<T>(false);
    let a_conj = phase_rotation::<T>(true);
    let one = Cplx::new(T::one(), T::zero());
    let s1 = [one, a, a_conj];
    let s2 = [one, a_conj, a];
    let mut acc = Cplx::new(T::zero(), T::zero());
    for i in 0..3 {
        for j in 0..3 {
            acc = acc + s1[i] * m[(i, j)] * s2[j];
        }
    }
    acc / Cplx::new(T::of(3.0), T::zero())
}

/// Average a 3x3 block over the three cyclic phase permutations,
/// implementing a balanced, uniformly transposed system.
fn phase_average<T: Real>(m: &CMat<T>) -> CMat<T> {
    let perm = [1usize, 2, 0];
    let mut acc = m.clone();
    let mut cur: [usize; 3] = [0, 1, 2];
    for _ in 0..2 {
        cur = [perm[cur[0]], perm[cur[1]], perm[cur[2]]];
        let shifted = CMat::from_fn(3, 3, |i, j| m[(cur[i], cur[j])]);
        acc = acc.add(&shifted);
    }
    acc.scale(Cplx::new(T::one() / T::of(3.0), T::zero()))
}

/// Extract the positive-sequence Pi model from the sheath-reduced 6x6 map.
pub fn positive_sequence_pi<T: Real>(
    reduced: &CMat<T>,
    omega: T,
    opts: &SequenceOptions<T>,
) -> Result<PiModel<T>> {
    assert_eq!(reduced.rows(), 6);
    let a = positive_sequence_scalar(&phase_average(&reduced.block3(0, 0)));
    let b = positive_sequence_scalar(&phase_average(&reduced.block3(0, 1)));
    let c = positive_sequence_scalar(&phase_average(&reduced.block3(1, 0)));
    let d = positive_sequence_scalar(&phase_average(&reduced.block3(1, 1)));

    if c.norm() < opts.min_c_magnitude {
        return Err(Error::TooShortForPi {
            c_abs: c.norm().to_f64().unwrap_or(0.0),
        });
    }
    let one = Cplx::new(T::one(), T::zero());
    let det_residual = (a * d - b * c - one).norm();
    if det_residual > opts.two_port_det_tol {
        return Err(Error::TwoPortCheck {
            residual: det_residual.to_f64().unwrap_or(f64::NAN),
        });
    }

    let z_series = (d - one) * (d + one) / c;
    let y_shunt_half = c / (d + one);
    Ok(PiModel {
        omega,
        z_series,
        y_shunt_half,
    })
}

/// Full chain: distributed matrices, terminal solution for `length`,
/// sheath elimination, positive-sequence extraction.
pub fn exact_pi<T: Real>(
    design: &CableDesign<T>,
    length: T,
    omega: T,
    opts: &SequenceOptions<T>,
) -> Result<PiModel<T>> {
    if !(length > T::zero()) {
        return Err(Error::InvalidDesign(
            "Pi extraction needs a positive length".into(),
        ));
    }
    let dm = DistributedMatrices::build(design, omega)?;
    let tm = terminal_solution(&dm.z, &dm.y, length, omega, opts)?;
    let reduced = eliminate_sheaths(&tm, opts)?;
    positive_sequence_pi(&reduced, omega, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    type C = Cplx<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    /// Decoupled 6x6 system: every conductor is an independent scalar line.
    fn decoupled_zy(z_c: C, y_c: C, z_s: C, y_s: C) -> (CMat<f64>, CMat<f64>) {
        let mut z = CMat::zeros(6, 6);
        let mut y = CMat::zeros(6, 6);
        for p in 0..3 {
            z[(p, p)] = z_c;
            y[(p, p)] = y_c;
            z[(p + 3, p + 3)] = z_s;
            y[(p + 3, p + 3)] = y_s;
        }
        (z, y)
    }

    #[test]
    fn zero_length_terminal_matrix_is_identity() {
        let (z, y) = decoupled_zy(
            c(1e-4, 5e-4),
            c(1e-9, 5e-8),
            c(2e-4, 4e-4),
            c(1e-9, 8e-8),
        );
        let tm = terminal_solution(&z, &y, 0.0, 314.0, &SequenceOptions::default()).unwrap();
        let eye = CMat::identity(12);
        assert!(tm.assembled().sub(&eye).max_abs() < 1e-12);
        for blk in 1..=4 {
            let a = tm.alpha(blk, blk);
            assert!(a.sub(&CMat::identity(3)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn short_line_expands_to_first_order() {
        // For small l the terminal map is I + l [0 Z; Y 0] + O(l^2);
        // halving l must shrink the residual ~4x.
        let (z, y) = decoupled_zy(
            c(1e-4, 5e-4),
            c(1e-9, 5e-8),
            c(2e-4, 4e-4),
            c(1e-9, 8e-8),
        );
        let opts = SequenceOptions::default();
        let residual = |l: f64| {
            let tm = terminal_solution(&z, &y, l, 314.0, &opts).unwrap();
            let mut first = CMat::identity(12);
            for i in 0..6 {
                for j in 0..6 {
                    first[(i, j + 6)] = z[(i, j)] * c(l, 0.0);
                    first[(i + 6, j)] = y[(i, j)] * c(l, 0.0);
                }
            }
            tm.assembled().sub(&first).max_abs()
        };
        let r1 = residual(1000.0);
        let r2 = residual(500.0);
        assert!(r1 > 0.0);
        let ratio = r1 / r2;
        assert!((3.0..5.0).contains(&ratio), "O(l^2) ratio was {ratio}");
    }

    #[test]
    fn elimination_is_identity_without_sheath_coupling() {
        // alpha_12 = alpha_32 = 0 for a fully decoupled system, so the
        // reduction must return the core blocks unchanged.
        let (z, y) = decoupled_zy(
            c(1e-4, 5e-4),
            c(1e-9, 5e-8),
            c(2e-4, 4e-4),
            c(1e-9, 8e-8),
        );
        let opts = SequenceOptions::default();
        let tm = terminal_solution(&z, &y, 30e3, 314.0, &opts).unwrap();
        assert!(tm.alpha(1, 2).max_abs() < 1e-18);
        assert!(tm.alpha(3, 2).max_abs() < 1e-18);
        let reduced = eliminate_sheaths(&tm, &opts).unwrap();
        assert!(reduced.block3(0, 0).sub(&tm.alpha(1, 1)).max_abs() < 1e-15);
        assert!(reduced.block3(0, 1).sub(&tm.alpha(1, 3)).max_abs() < 1e-15);
        assert!(reduced.block3(1, 0).sub(&tm.alpha(3, 1)).max_abs() < 1e-15);
        assert!(reduced.block3(1, 1).sub(&tm.alpha(3, 3)).max_abs() < 1e-15);
    }

    #[test]
    fn matches_scalar_long_line_formulas() {
        // Decoupled, slightly lossy symmetric system: the positive-sequence
        // Pi must equal the classical single-phase long-line values
        // Zser = Zc sinh(g l), Ysh/2 = tanh(g l / 2) / Zc.
        let z_per_m = c(2e-5, 4e-4);
        let y_per_m = c(3e-11, 6e-8);
        let (zm, ym) = decoupled_zy(z_per_m, y_per_m, c(3e-5, 3e-4), c(1e-11, 5e-8));
        let opts = SequenceOptions::default();
        let length = 135e3;
        let tm = terminal_solution(&zm, &ym, length, 314.159, &opts).unwrap();
        let reduced = eliminate_sheaths(&tm, &opts).unwrap();
        let pi = positive_sequence_pi(&reduced, 314.159, &opts).unwrap();

        let gamma = (z_per_m * y_per_m).sqrt();
        let zc = (z_per_m / y_per_m).sqrt();
        let gl = gamma * c(length, 0.0);
        let z_expect = zc * gl.sinh();
        let y_half_expect = (gl / c(2.0, 0.0)).tanh() / zc;
        assert_relative_eq!(pi.z_series.re, z_expect.re, max_relative = 1e-9);
        assert_relative_eq!(pi.z_series.im, z_expect.im, max_relative = 1e-9);
        assert_relative_eq!(pi.y_shunt_half.re, y_half_expect.re, max_relative = 1e-9);
        assert_relative_eq!(pi.y_shunt_half.im, y_half_expect.im, max_relative = 1e-9);
    }

    #[test]
    fn zero_length_pi_rejected() {
        let (z, y) = decoupled_zy(
            c(1e-4, 5e-4),
            c(1e-9, 5e-8),
            c(2e-4, 4e-4),
            c(1e-9, 8e-8),
        );
        let opts = SequenceOptions::default();
        let tm = terminal_solution(&z, &y, 0.0, 314.0, &opts).unwrap();
        let reduced = eliminate_sheaths(&tm, &opts).unwrap();
        assert!(matches!(
            positive_sequence_pi(&reduced, 314.0, &opts),
            Err(Error::TooShortForPi { .. })
        ));
    }

    #[test]
    fn phase_average_commutes_with_positive_sequence() {
        // The positive-sequence scalar is invariant under cyclic averaging,
        // so averaging before or after extraction must agree.
        let m = CMat::from_fn(3, 3, |i, j| c((i * 3 + j) as f64, (i as f64) - (j as f64)));
        let direct = positive_sequence_scalar(&m);
        let averaged = positive_sequence_scalar(&phase_average(&m));
        assert!((direct - averaged).norm() < 1e-12 * direct.norm().max(1.0));
    }
}
