use lfac_core::cable::{material, CableDesign, DistributedMatrices};
use lfac_core::linalg::CMat;
use lfac_core::sequence::{eliminate_sheaths, positive_sequence_pi, terminal_solution, SequenceOptions};

fn d230() -> CableDesign<f64> {
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

// average 6x6 over cyclic permutation of BOTH core and sheath phases
fn balance6(m: &CMat<f64>) -> CMat<f64> {
    let perm = [1usize, 2, 0];
    let ext = |p: &[usize; 3], i: usize| if i < 3 { p[i] } else { 3 + p[i - 3] };
    let mut acc = m.clone();
    let mut cur = [0usize, 1, 2];
    for _ in 0..2 {
        cur = [perm[cur[0]], perm[cur[1]], perm[cur[2]]];
        let shifted = CMat::from_fn(6, 6, |i, j| m[(ext(&cur, i), ext(&cur, j))]);
        acc = acc.add(&shifted);
    }
    acc.scale(num_complex::Complex::new(1.0 / 3.0, 0.0))
}

fn main() {
    let mut opts = SequenceOptions::default();
    opts.two_port_det_tol = 1.0; // disable for probing
    let d = d230();
    for hz in [10.0, 30.0, 50.0, 60.0] {
        let w = 2.0 * std::f64::consts::PI * hz;
        let dm = DistributedMatrices::build(&d, w).unwrap();
        // route 1: unbalanced chain (equivalent to block-averaging after)
        let tm = terminal_solution(&dm.z, &dm.y, 135e3, w, &opts).unwrap();
        let red = eliminate_sheaths(&tm, &opts).unwrap();
        let pi1 = positive_sequence_pi(&red, w, &opts).unwrap();
        // route 2: balance Z,Y first (continuous transposition)
        let zb = balance6(&dm.z);
        let yb = balance6(&dm.y);
        let tmb = terminal_solution(&zb, &yb, 135e3, w, &opts).unwrap();
        let redb = eliminate_sheaths(&tmb, &opts).unwrap();
        let pi2 = positive_sequence_pi(&redb, w, &opts).unwrap();
        println!("{hz:>5} Hz  route1: R={:.5} X={:.5} G={:.5e} B={:.5e}", pi1.z_series.re, pi1.z_series.im, pi1.y_shunt_total().re, pi1.y_shunt_total().im);
        println!("        route2: R={:.5} X={:.5} G={:.5e} B={:.5e}", pi2.z_series.re, pi2.z_series.im, pi2.y_shunt_total().re, pi2.y_shunt_total().im);
        // det residuals
        println!("        relative diff R: {:.2e}", ((pi1.z_series.re - pi2.z_series.re)/pi2.z_series.re).abs());
    }
}
