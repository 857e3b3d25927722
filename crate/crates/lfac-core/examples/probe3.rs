use lfac_core::cable::{material, CableDesign, DistributedMatrices};
use lfac_core::linalg::CMat;
use lfac_core::polyfit::{fit, fit_report, SamplePoint};
use lfac_core::sequence::{eliminate_sheaths, positive_sequence_pi, terminal_solution, SequenceOptions};

fn designs() -> Vec<(&'static str, CableDesign<f64>, f64)> {
    let c230 = CableDesign {
        r1: 0.0248, r2: 0.0479, r3: 0.0512, r4: 0.0565,
        spacing: 0.226, depth: 1.0,
        conductor: material("copper").unwrap(),
        sheath: material("aluminum").unwrap(),
        insulation: material("xlpe").unwrap(),
        soil_resistivity: 100.0, operating_temp: 90.0,
        voltage_rating: 245e3, thermal_rating: 525e6, length: 135e3,
    };
    let c138 = CableDesign {
        r1: 0.01515, r2: 0.03545, r3: 0.03835, r4: 0.043,
        spacing: 0.172, depth: 1.0,
        conductor: material("copper").unwrap(),
        sheath: material("aluminum").unwrap(),
        insulation: material("xlpe").unwrap(),
        soil_resistivity: 100.0, operating_temp: 90.0,
        voltage_rating: 170e3, thermal_rating: 190e6, length: 22e3,
    };
    vec![("135km 230kV", c230, 135e3), ("22km 138kV", c138, 22e3)]
}

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
    opts.two_port_det_tol = 1.0;
    let n = 500;
    let (wmin, wmax) = (1e-3, 120.0 * std::f64::consts::PI);
    for (name, d, len) in designs() {
        for balanced in [false, true] {
            let mut samples = Vec::with_capacity(n);
            let mut max_det_resid: f64 = 0.0;
            for i in 0..n {
                let w = wmin + (wmax - wmin) * i as f64 / (n - 1) as f64;
                let dm = DistributedMatrices::build(&d, w).unwrap();
                let (z, y) = if balanced { (balance6(&dm.z), balance6(&dm.y)) } else { (dm.z.clone(), dm.y.clone()) };
                let tm = terminal_solution(&z, &y, len, w, &opts).unwrap();
                let red = eliminate_sheaths(&tm, &opts).unwrap();
                let pi = positive_sequence_pi(&red, w, &opts).unwrap();
                samples.push(SamplePoint { omega: w, z_series: pi.z_series, y_shunt: pi.y_shunt_total() });
                // recompute det residual by hand? skip, measured before
                let _ = &mut max_det_resid;
            }
            let model = fit(&samples).unwrap();
            let rep = fit_report(&model, &samples);
            println!("== {name} balanced={balanced}");
            for row in &rep.rows {
                println!("  {}: largest rel {:+.3}% at {:.1} Hz, RMS {:.3}%  (abs {:.3e})",
                    row.param.label(), row.largest_rel_error_pct, row.freq_of_largest_hz,
                    row.rms_rel_error_pct, row.largest_error);
            }
        }
    }
    println!("Table IV targets: 135km: R -5.9@60 rms2.2 | X -2.5@60 rms0.80 | G -7.1@60 rms1.4 | B -4.2@60 rms1.1");
    println!("                  22km:  R +0.25@60 rms0.091 | X -5.3e-3@60 | G -8.7e-4@0 | B -1.8e-2@60");
}
