use lfac_core::cable::{material, CableDesign, DistributedMatrices};
use lfac_core::linalg::CMat;
use lfac_core::polyfit::{fit, fit_report, SamplePoint};
use lfac_core::sequence::{eliminate_sheaths, positive_sequence_pi, terminal_solution, SequenceOptions};
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
    acc.scale(Complex::new(1.0 / 3.0, 0.0))
}

fn run(tag: &str, c2_scale: f64) {
    let d = base230();
    let mut opts = SequenceOptions::default();
    opts.two_port_det_tol = 1.0;
    let n = 500;
    let (wmin, wmax) = (1e-3, 120.0 * std::f64::consts::PI);
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let w = wmin + (wmax - wmin) * i as f64 / (n - 1) as f64;
        let dm = DistributedMatrices::build(&d, w).unwrap();
        let mut y = dm.y.clone();
        for p in 0..3 {
            let y1 = -y[(p, p + 3)];
            let y2 = y[(p + 3, p + 3)] - y1;
            let y2s = Complex::new(y2.re, y2.im * c2_scale);
            y[(p + 3, p + 3)] = y1 + y2s;
        }
        let (z, y) = (balance6(&dm.z), balance6(&y));
        let tm = terminal_solution(&z, &y, 135e3, w, &opts).unwrap();
        let red = eliminate_sheaths(&tm, &opts).unwrap();
        let pi = positive_sequence_pi(&red, w, &opts).unwrap();
        samples.push(SamplePoint { omega: w, z_series: pi.z_series, y_shunt: pi.y_shunt_total() });
    }
    let model = fit(&samples).unwrap();
    let rep = fit_report(&model, &samples);
    let last = samples.last().unwrap();
    print!("{tag}: R60={:.3} X60={:.2} B60={:.4e} | ", last.z_series.re, last.z_series.im, last.y_shunt.im);
    for row in &rep.rows {
        print!("{} {:+.2}/{:.2} ", row.param.label(), row.largest_rel_error_pct, row.rms_rel_error_pct);
    }
    println!();
}

fn main() {
    run("c2 x1.0", 1.0);
    run("c2 x1.5", 1.5);
    run("c2 x2.0", 2.0);
    run("c2 x3.0", 3.0);
    println!("targets: R -5.9/2.2  X -2.5/0.80  G -7.1/1.4  B -4.2/1.1 ; maxes R 6.63 X 79.2 B 12.45e-3");
}
