use lfac_core::cable::{material, impedance_components, earth_mutual, CableDesign, DistributedMatrices};
use num_complex::Complex;

fn base230() -> CableDesign<f64> {
    CableDesign {
        r1: 0.0248, r2: 0.0479, r3: 0.0512, r4: 0.0565,
        spacing: 0.226, depth: 1.0,
        conductor: material("copper").unwrap(),
        sheath: material("aluminum").unwrap(),
        insulation: material("xlpe").unwrap(),
        soil_resistivity: 100.0, operating_temp: 90.0,
        voltage_rating: 245e3, thermal_rating: 525e6, length: 135e3,
    }
}

fn main() {
    let d = base230();
    let w = 120.0 * std::f64::consts::PI;
    let comps = impedance_components(&d, w).unwrap();
    println!("z1 = {:?} ohm/m", comps.z1);
    println!("z2 = {:?}", comps.z2);
    println!("z3 = {:?}", comps.z3);
    println!("z4 = {:?}", comps.z4);
    println!("z5 = {:?}", comps.z5);
    println!("z6 = {:?}", comps.z6);
    println!("z7 = {:?}", comps.z7);
    let zm_d = earth_mutual(&d, w, d.spacing);
    let zm_2d = earth_mutual(&d, w, 2.0 * d.spacing);
    println!("zm(d)  = {zm_d:?}");
    println!("zm(2d) = {zm_2d:?}");

    let dm = DistributedMatrices::build(&d, w).unwrap();
    // positive-sequence of core block assuming zero sheath current:
    // circulant average mutual
    let z_cc = dm.z[(0, 0)];
    let zmut = (zm_d * 2.0 + zm_2d) / 3.0;
    let z_pos_per_m = z_cc - zmut;
    println!("core-only z_pos = {:?} ohm/m -> per km {:?}", z_pos_per_m, z_pos_per_m * 1000.0);
    println!("x per km estimate = {:.4}", z_pos_per_m.im * 1000.0);
    // what ln-equivalent is that
    let mu_ln = w * 2.0e-7;
    println!("ln-equivalent total = {:.3}", z_pos_per_m.im / mu_ln);
    // earth self bracket value
    let m = (Complex::new(0.0, w) * 4.0e-7 * std::f64::consts::PI / 100.0).sqrt();
    println!("m_e = {m:?}, |m R4| = {:.3e}, |m 2d| = {:.3e}", (m * d.r4).norm(), (m * 2.0 * d.spacing).norm());
}
