//! Distributed series impedance and shunt admittance of a buried three-phase
//! cable system in flat configuration.
//!
//! Each single-core cable is a solid central conductor, inner insulation,
//! metallic sheath and outer insulation. The 6x6 matrices cover the three
//! cores and three sheaths, with earth-return coupling between cables. All
//! quantities are per meter of cable.

use serde::{Deserialize, Serialize};

use crate::bessel::{bessel_i0, bessel_i1, bessel_k0, bessel_k1, i0_over_i1};
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::scalar::{epsilon_0, mu_0, Cplx, Real};

/// exp(gamma), gamma the Euler-Mascheroni constant; appears in the
/// earth-return logarithm.
const EXP_EULER_GAMMA: f64 = 1.781_072_417_990_198;

/// Bulk material constants at 20 C plus the linear temperature coefficient
/// of resistivity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaterialProperties<T> {
    /// Electrical resistivity at 20 C, ohm * m.
    pub resistivity_20c: T,
    /// Linear temperature coefficient of resistivity, 1/K.
    pub temp_coefficient: T,
    /// Magnetic permeability, H/m.
    pub permeability: T,
    /// Relative dielectric permittivity.
    pub permittivity_rel: T,
}

impl<T: Real> MaterialProperties<T> {
    /// Resistivity adjusted to `temp_c` by the linear law.
    pub fn resistivity_at(&self, temp_c: T) -> T {
        self.resistivity_20c * (T::one() + self.temp_coefficient * (temp_c - T::of(20.0)))
    }
}

/// Built-in material table. Conductor metals carry their usual resistivity
/// temperature coefficients; dielectrics and soil are treated as
/// temperature-independent.
pub fn material<T: Real>(name: &str) -> Option<MaterialProperties<T>> {
    let m = match name.to_ascii_lowercase().as_str() {
        "copper" => MaterialProperties {
            resistivity_20c: T::of(1.68e-8),
            temp_coefficient: T::of(3.93e-3),
            permeability: T::of(1.25663e-6),
            permittivity_rel: T::one(),
        },
        "aluminum" | "aluminium" => MaterialProperties {
            resistivity_20c: T::of(2.65e-8),
            temp_coefficient: T::of(4.03e-3),
            permeability: T::of(1.25667e-6),
            permittivity_rel: T::one(),
        },
        "xlpe" => MaterialProperties {
            resistivity_20c: T::of(2.0e11),
            temp_coefficient: T::zero(),
            permeability: mu_0::<T>(),
            permittivity_rel: T::of(2.3),
        },
        "soil" => MaterialProperties {
            resistivity_20c: T::of(100.0),
            temp_coefficient: T::zero(),
            permeability: mu_0::<T>(),
            permittivity_rel: T::one(),
        },
        _ => return None,
    };
    Some(m)
}

/// Geometry, materials and ratings of one three-phase cable system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CableDesign<T> {
    /// Conductor radius, m.
    pub r1: T,
    /// Outer radius of the inner insulation, m.
    pub r2: T,
    /// Outer radius of the sheath, m.
    pub r3: T,
    /// Outer radius of the cable, m.
    pub r4: T,
    /// Center-to-center spacing of adjacent cables, m.
    pub spacing: T,
    /// Burial depth, m.
    pub depth: T,
    pub conductor: MaterialProperties<T>,
    pub sheath: MaterialProperties<T>,
    pub insulation: MaterialProperties<T>,
    /// Soil resistivity, ohm * m.
    pub soil_resistivity: T,
    /// Conductor operating temperature, C.
    pub operating_temp: T,
    /// Line-to-line voltage rating, V rms.
    pub voltage_rating: T,
    /// Apparent power rating of the three-phase system, VA.
    pub thermal_rating: T,
    /// Cable length, m.
    pub length: T,
}

impl<T: Real> CableDesign<T> {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidDesign(msg.into()));
        if !(self.r1 > T::zero() && self.r1 < self.r2 && self.r2 < self.r3 && self.r3 < self.r4) {
            return bad("radii must satisfy 0 < R1 < R2 < R3 < R4");
        }
        if !(self.r4 < self.spacing) {
            return bad("cable spacing must exceed the outer radius");
        }
        if !(self.depth > self.r4) {
            return bad("burial depth must exceed the outer radius");
        }
        if !(self.length > T::zero()) {
            return bad("length must be positive");
        }
        if !(self.soil_resistivity > T::zero()) {
            return bad("soil resistivity must be positive");
        }
        if !(self.conductor.resistivity_20c > T::zero() && self.sheath.resistivity_20c > T::zero())
        {
            return bad("conductor and sheath resistivity must be positive");
        }
        if !(self.insulation.resistivity_20c > T::zero()) {
            return bad("insulation resistivity must be positive");
        }
        if !(self.conductor.permeability > T::zero()
            && self.sheath.permeability > T::zero()
            && self.insulation.permeability > T::zero())
        {
            return bad("permeabilities must be positive");
        }
        if self.insulation.permittivity_rel < T::one() {
            return bad("insulation relative permittivity must be >= 1");
        }
        if !(self.thermal_rating > T::zero() && self.voltage_rating > T::zero()) {
            return bad("ratings must be positive");
        }
        Ok(())
    }

    fn conductor_resistivity(&self) -> T {
        self.conductor.resistivity_at(self.operating_temp)
    }

    fn sheath_resistivity(&self) -> T {
        self.sheath.resistivity_at(self.operating_temp)
    }
}

/// Per-unit-length Z(omega) and Y(omega) for one frequency.
#[derive(Debug, Clone)]
pub struct DistributedMatrices<T> {
    pub omega: T,
    /// 6x6 series impedance, ohm/m. Conductor order: cores a,b,c then
    /// sheaths a,b,c.
    pub z: CMat<T>,
    /// 6x6 shunt admittance, S/m.
    pub y: CMat<T>,
}

impl<T: Real> DistributedMatrices<T> {
    pub fn build(design: &CableDesign<T>, omega: T) -> Result<Self> {
        Ok(DistributedMatrices {
            omega,
            z: build_z_matrix(design, omega)?,
            y: build_y_matrix(design, omega)?,
        })
    }
}

/// The per-unit-length impedance building blocks of one cable, plus the
/// earth-return mutual to each neighbor distance.
#[derive(Debug, Clone, Copy)]
pub struct ImpedanceComponents<T> {
    /// Conductor internal impedance.
    pub z1: Cplx<T>,
    /// Inner insulation magnetic-field impedance.
    pub z2: Cplx<T>,
    /// Sheath internal impedance seen from the inner surface.
    pub z3: Cplx<T>,
    /// Sheath transfer (mutual) impedance between its surfaces.
    pub z4: Cplx<T>,
    /// Sheath internal impedance seen from the outer surface.
    pub z5: Cplx<T>,
    /// Outer insulation magnetic-field impedance.
    pub z6: Cplx<T>,
    /// Earth-return self impedance.
    pub z7: Cplx<T>,
}

fn jomega<T: Real>(omega: T) -> Cplx<T> {
    Cplx::new(T::zero(), omega)
}

/// Complex skin-effect wavenumber m = sqrt(j omega mu / rho).
fn wavenumber<T: Real>(omega: T, mu: T, rho: T) -> Cplx<T> {
    (jomega(omega) * Cplx::new(mu / rho, T::zero())).sqrt()
}

/// Internal impedance of the solid conductor.
fn conductor_internal<T: Real>(rho: T, mu: T, r1: T, omega: T) -> Result<Cplx<T>> {
    if omega == T::zero() {
        // DC resistance of a solid rod.
        return Ok(Cplx::new(rho / (T::PI() * r1 * r1), T::zero()));
    }
    let m = wavenumber(omega, mu, rho);
    let ratio = i0_over_i1(m * Cplx::new(r1, T::zero()))?;
    let two_pi = T::of(2.0) * T::PI();
    Ok(m * Cplx::new(rho / (two_pi * r1), T::zero()) * ratio)
}

/// Tubular sheath internal and transfer impedances (inner surface, transfer,
/// outer surface).
fn sheath_internal<T: Real>(
    rho: T,
    mu: T,
    r2: T,
    r3: T,
    omega: T,
) -> Result<(Cplx<T>, Cplx<T>, Cplx<T>)> {
    let two_pi = T::of(2.0) * T::PI();
    if omega == T::zero() {
        // All three collapse to the tube's DC resistance.
        let rdc = rho / (T::PI() * (r3 * r3 - r2 * r2));
        let r = Cplx::new(rdc, T::zero());
        return Ok((r, r, r));
    }
    let m = wavenumber(omega, mu, rho);
    let a = m * Cplx::new(r2, T::zero());
    let b = m * Cplx::new(r3, T::zero());
    let i1a = bessel_i1(a)?;
    let i1b = bessel_i1(b)?;
    let k1a = bessel_k1(a)?;
    let k1b = bessel_k1(b)?;
    let i0a = bessel_i0(a)?;
    let i0b = bessel_i0(b)?;
    let k0a = bessel_k0(a)?;
    let k0b = bessel_k0(b)?;
    let denom = i1b * k1a - i1a * k1b;
    if denom.norm() == T::zero() {
        return Err(Error::Numerics("degenerate sheath Bessel denominator".into()));
    }
    let z3 = Cplx::new(rho / (two_pi * r2), T::zero()) * m * (i0a * k1b + k0a * i1b) / denom;
    let z5 = Cplx::new(rho / (two_pi * r3), T::zero()) * m * (i0b * k1a + k0b * i1a) / denom;
    let z4 = Cplx::new(rho / (two_pi * r2 * r3), T::zero()) / denom;
    Ok((z3, z4, z5))
}

/// Magnetic-field impedance of an insulation annulus.
fn insulation_impedance<T: Real>(mu: T, r_in: T, r_out: T, omega: T) -> Cplx<T> {
    let two_pi = T::of(2.0) * T::PI();
    jomega(omega) * Cplx::new(mu / two_pi * (r_out / r_in).ln(), T::zero())
}

/// Earth-return impedance of a buried conductor, log approximation.
///
/// `distance` is the conductor outer radius for the self term and the
/// separation between cable axes for mutual terms; `depth_sum` is twice the
/// burial depth for equal-depth cables.
fn earth_return<T: Real>(omega: T, rho_earth: T, distance: T, depth_sum: T) -> Cplx<T> {
    if omega == T::zero() {
        return Cplx::new(T::zero(), T::zero());
    }
    let mu = mu_0::<T>();
    let two_pi = T::of(2.0) * T::PI();
    let m = wavenumber(omega, mu, rho_earth);
    let arg = m * Cplx::new(T::of(EXP_EULER_GAMMA) * distance / T::of(2.0), T::zero());
    let bracket = -arg.ln() + Cplx::new(T::of(0.5), T::zero())
        - m * Cplx::new(T::of(2.0 / 3.0) * depth_sum / T::of(2.0), T::zero());
    jomega(omega) * Cplx::new(mu / two_pi, T::zero()) * bracket
}

/// Evaluate z1..z7 for one cable of the design at `omega`.
pub fn impedance_components<T: Real>(
    design: &CableDesign<T>,
    omega: T,
) -> Result<ImpedanceComponents<T>> {
    design.validate()?;
    if omega < T::zero() {
        return Err(Error::InvalidDesign("omega must be nonnegative".into()));
    }
    let rho_c = design.conductor_resistivity();
    let rho_s = design.sheath_resistivity();
    let z1 = conductor_internal(rho_c, design.conductor.permeability, design.r1, omega)?;
    let z2 = insulation_impedance(design.insulation.permeability, design.r1, design.r2, omega);
    let (z3, z4, z5) = sheath_internal(rho_s, design.sheath.permeability, design.r2, design.r3, omega)?;
    let z6 = insulation_impedance(design.insulation.permeability, design.r3, design.r4, omega);
    let z7 = earth_return(
        omega,
        design.soil_resistivity,
        design.r4,
        T::of(2.0) * design.depth,
    );
    Ok(ImpedanceComponents {
        z1,
        z2,
        z3,
        z4,
        z5,
        z6,
        z7,
    })
}

/// Earth-return mutual impedance between two cables `distance` apart.
pub fn earth_mutual<T: Real>(design: &CableDesign<T>, omega: T, distance: T) -> Cplx<T> {
    earth_return(
        omega,
        design.soil_resistivity,
        distance,
        T::of(2.0) * design.depth,
    )
}

/// Assemble the 6x6 series impedance matrix, ohm/m.
///
/// Conductor ordering is cores a,b,c then sheaths a,b,c, with the cables laid
/// flat at spacing d, so inter-cable distances are d for adjacent pairs and
/// 2d for the outer pair.
pub fn build_z_matrix<T: Real>(design: &CableDesign<T>, omega: T) -> Result<CMat<T>> {
    let comps = impedance_components(design, omega)?;
    let outer = comps.z5 + comps.z6 + comps.z7;
    let z_cc = comps.z1 + comps.z2 + comps.z3 - comps.z4 - comps.z4 + outer;
    let z_cs = outer - comps.z4;
    let z_ss = outer;

    let mut z = CMat::zeros(6, 6);
    for phase in 0..3 {
        z[(phase, phase)] = z_cc;
        z[(phase + 3, phase + 3)] = z_ss;
        z[(phase, phase + 3)] = z_cs;
        z[(phase + 3, phase)] = z_cs;
    }
    for i in 0..3usize {
        for j in 0..3usize {
            if i == j {
                continue;
            }
            let sep = T::of(i.abs_diff(j) as f64) * design.spacing;
            let zm = earth_mutual(design, omega, sep);
            z[(i, j)] = zm;
            z[(i + 3, j + 3)] = zm;
            z[(i, j + 3)] = zm;
            z[(i + 3, j)] = zm;
        }
    }
    Ok(z)
}

/// Coaxial leakage admittance of an insulation annulus: conductance from the
/// bulk resistivity plus the capacitive susceptance.
fn annulus_admittance<T: Real>(ins: &MaterialProperties<T>, r_in: T, r_out: T, omega: T) -> Cplx<T> {
    let two_pi = T::of(2.0) * T::PI();
    let log_ratio = (r_out / r_in).ln();
    let g = two_pi / (ins.resistivity_20c * log_ratio);
    let c = two_pi * ins.permittivity_rel * epsilon_0::<T>() / log_ratio;
    Cplx::new(g, omega * c)
}

/// Assemble the 6x6 shunt admittance matrix, S/m.
///
/// Electrostatic coupling between separate cables is neglected, so the
/// inter-cable blocks are exactly zero.
pub fn build_y_matrix<T: Real>(design: &CableDesign<T>, omega: T) -> Result<CMat<T>> {
    design.validate()?;
    if omega < T::zero() {
        return Err(Error::InvalidDesign("omega must be nonnegative".into()));
    }
    let y1 = annulus_admittance(&design.insulation, design.r1, design.r2, omega);
    let y2 = annulus_admittance(&design.insulation, design.r3, design.r4, omega);
    let mut y = CMat::zeros(6, 6);
    for phase in 0..3 {
        y[(phase, phase)] = y1;
        y[(phase, phase + 3)] = -y1;
        y[(phase + 3, phase)] = -y1;
        y[(phase + 3, phase + 3)] = y1 + y2;
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn design_230kv() -> CableDesign<f64> {
        CableDesign {
            r1: 0.0248,
            r2: 0.0479,
            r3: 0.0512,
            r4: 0.0565,
            spacing: 0.226,
            depth: 1.0,
            conductor: material("copper").unwrap(),
            sheath: material("aluminum").unwrap(),
            insulation: material("xlpe").unwrap(),
            soil_resistivity: 100.0,
            operating_temp: 90.0,
            voltage_rating: 245e3,
            thermal_rating: 525e6,
            length: 135e3,
        }
    }

    fn design_138kv() -> CableDesign<f64> {
        CableDesign {
            r1: 0.01515,
            r2: 0.03545,
            r3: 0.03835,
            r4: 0.043,
            spacing: 0.172,
            depth: 1.0,
            conductor: material("copper").unwrap(),
            sheath: material("aluminum").unwrap(),
            insulation: material("xlpe").unwrap(),
            soil_resistivity: 100.0,
            operating_temp: 90.0,
            voltage_rating: 170e3,
            thermal_rating: 190e6,
            length: 22e3,
        }
    }

    #[test]
    fn inner_insulation_impedance_vanishes_at_dc() {
        let comps = impedance_components(&design_230kv(), 0.0).unwrap();
        assert_eq!(comps.z2, Cplx::new(0.0, 0.0));
        assert_eq!(comps.z6, Cplx::new(0.0, 0.0));
        assert_eq!(comps.z7, Cplx::new(0.0, 0.0));
    }

    #[test]
    fn dc_conductor_resistance_is_solid_rod_value() {
        for d in [design_230kv(), design_138kv()] {
            let comps = impedance_components(&d, 0.0).unwrap();
            let rho = d.conductor.resistivity_at(90.0);
            let expect = rho / (std::f64::consts::PI * d.r1 * d.r1);
            assert_relative_eq!(comps.z1.re, expect, max_relative = 1e-9);
            assert_eq!(comps.z1.im, 0.0);
        }
    }

    #[test]
    fn dc_sheath_components_collapse_to_tube_resistance() {
        let d = design_230kv();
        let comps = impedance_components(&d, 0.0).unwrap();
        let rho = d.sheath.resistivity_at(90.0);
        let rdc = rho / (std::f64::consts::PI * (d.r3 * d.r3 - d.r2 * d.r2));
        assert_relative_eq!(comps.z3.re, rdc, max_relative = 1e-12);
        assert_relative_eq!(comps.z4.re, rdc, max_relative = 1e-12);
        assert_relative_eq!(comps.z5.re, rdc, max_relative = 1e-12);
        // Continuity: tiny omega approaches the analytic DC limit.
        let near = impedance_components(&d, 1e-4).unwrap();
        assert_relative_eq!(near.z3.re, rdc, max_relative = 1e-6);
        assert_relative_eq!(near.z4.re, rdc, max_relative = 1e-6);
    }

    #[test]
    fn z_matrix_symmetric_and_passive() {
        let d = design_230kv();
        for omega in [0.0, 0.1, 1.0, 2.0 * std::f64::consts::PI * 16.7, 100.0 * std::f64::consts::PI, 120.0 * std::f64::consts::PI] {
            let z = build_z_matrix(&d, omega).unwrap();
            assert!(z.asymmetry() < 1e-12, "asymmetry at {omega}");
            if omega > 0.0 {
                for i in 0..6 {
                    assert!(z[(i, i)].re > 0.0, "diag re at {omega}");
                }
            }
        }
    }

    #[test]
    fn y_matrix_block_structure() {
        let d = design_138kv();
        let omega = 120.0 * std::f64::consts::PI;
        let y = build_y_matrix(&d, omega).unwrap();
        assert!(y.asymmetry() < 1e-12);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    // Inter-cable entries exactly zero.
                    assert_eq!(y[(i, j)], Cplx::new(0.0, 0.0));
                    assert_eq!(y[(i + 3, j + 3)], Cplx::new(0.0, 0.0));
                    assert_eq!(y[(i, j + 3)], Cplx::new(0.0, 0.0));
                }
            }
        }
        for i in 0..6 {
            assert!(y[(i, i)].re >= 0.0);
        }
    }

    #[test]
    fn y_dc_is_pure_leakage() {
        let d = design_230kv();
        let y = build_y_matrix(&d, 0.0).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(y[(i, j)].im, 0.0);
            }
        }
        let log_ratio = (d.r2 / d.r1).ln();
        let g1 = 2.0 * std::f64::consts::PI / (2.0e11 * log_ratio);
        assert_relative_eq!(y[(0, 0)].re, g1, max_relative = 1e-12);
    }

    #[test]
    fn susceptance_scales_linearly_with_omega() {
        let d = design_230kv();
        let y1 = build_y_matrix(&d, 100.0).unwrap();
        let y2 = build_y_matrix(&d, 200.0).unwrap();
        assert_relative_eq!(y2[(0, 0)].im, 2.0 * y1[(0, 0)].im, max_relative = 1e-12);
        assert_relative_eq!(y2[(0, 0)].re, y1[(0, 0)].re, max_relative = 1e-12);
    }

    #[test]
    fn y_matches_closed_form_coaxial_values() {
        // Independent recomputation of C = 2 pi eps / ln(R2/R1) and
        // G = 2 pi / (rho ln(R2/R1)) for the inner annulus.
        let d = design_230kv();
        let omega = 120.0 * std::f64::consts::PI;
        let y = build_y_matrix(&d, omega).unwrap();
        let eps = 2.3 * 8.854_187_812_8e-12;
        let c1 = 2.0 * std::f64::consts::PI * eps / (d.r2 / d.r1).ln();
        let g1 = 2.0 * std::f64::consts::PI / (2.0e11 * (d.r2 / d.r1).ln());
        assert_relative_eq!(y[(0, 0)].im, omega * c1, max_relative = 1e-12);
        assert_relative_eq!(y[(0, 0)].re, g1, max_relative = 1e-12);
        assert_relative_eq!(y[(0, 3)].im, -omega * c1, max_relative = 1e-12);
    }

    #[test]
    fn skin_effect_resistance_nondecreasing() {
        for d in [design_230kv(), design_138kv()] {
            let mut last = 0.0;
            for k in 0..=60 {
                let omega = 2.0 * std::f64::consts::PI * k as f64;
                let comps = impedance_components(&d, omega).unwrap();
                assert!(
                    comps.z1.re >= last - 1e-15,
                    "Re(z1) decreased at {omega}"
                );
                last = comps.z1.re;
            }
        }
    }

    #[test]
    fn mutual_blocks_depend_only_on_distance() {
        let d = design_230kv();
        let z = build_z_matrix(&d, 100.0 * std::f64::consts::PI).unwrap();
        // Same self blocks for all three cables.
        assert_eq!(z[(0, 0)], z[(1, 1)]);
        assert_eq!(z[(1, 1)], z[(2, 2)]);
        // Adjacent pairs share the spacing-d mutual; the outer pair sees 2d.
        assert_eq!(z[(0, 1)], z[(1, 2)]);
        assert_ne!(z[(0, 1)], z[(0, 2)]);
    }

    #[test]
    fn geometry_violations_rejected() {
        let mut d = design_230kv();
        d.r2 = d.r1;
        assert!(build_z_matrix(&d, 1.0).is_err());
        let mut d = design_230kv();
        d.depth = 0.01;
        assert!(build_z_matrix(&d, 1.0).is_err());
        let mut d = design_230kv();
        d.spacing = 0.05;
        assert!(build_y_matrix(&d, 1.0).is_err());
    }
}
