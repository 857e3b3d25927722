use lfac_core::cable::{material, CableDesign, DistributedMatrices};
use lfac_core::linalg::{checked_inverse, CMat};
use lfac_core::polyfit::{fit, fit_report, SamplePoint};
use lfac_core::sequence::{positive_sequence_pi, terminal_solution, SequenceOptions, TerminalMatrix};
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

#[derive(Clone, Copy, PartialEq)]
enum Bonding { SinglePoint, Solid, Open }

fn reduce(tm: &TerminalMatrix<f64>, bonding: Bonding) -> CMat<f64> {
    let a11 = tm.alpha(1, 1); let a12 = tm.alpha(1, 2); let a13 = tm.alpha(1, 3); let a14 = tm.alpha(1, 4);
    let a21 = tm.alpha(2, 1); let a22 = tm.alpha(2, 2); let a23 = tm.alpha(2, 3); let a24 = tm.alpha(2, 4);
    let a31 = tm.alpha(3, 1); let a32 = tm.alpha(3, 2); let a33 = tm.alpha(3, 3); let a34 = tm.alpha(3, 4);
    let a41 = tm.alpha(4, 1); let a42 = tm.alpha(4, 2); let a43 = tm.alpha(4, 3); let _a44 = tm.alpha(4, 4);
    let (r11, r12, r21, r22) = match bonding {
        Bonding::SinglePoint => {
            let inv = checked_inverse(&a22, 1e14, "a22").unwrap();
            let m12 = a12.matmul(&inv); let m32 = a32.matmul(&inv);
            (a11.sub(&m12.matmul(&a21)), a13.sub(&m12.matmul(&a23)),
             a31.sub(&m32.matmul(&a21)), a33.sub(&m32.matmul(&a23)))
        }
        Bonding::Solid => {
            // V_d^s = 0 given; V_o^s = 0 -> I_d^s = -a24^-1 (a21 Vd + a23 Id)
            let inv = checked_inverse(&a24, 1e14, "a24").unwrap();
            let m14 = a14.matmul(&inv); let m34 = a34.matmul(&inv);
            (a11.sub(&m14.matmul(&a21)), a13.sub(&m14.matmul(&a23)),
             a31.sub(&m34.matmul(&a21)), a33.sub(&m34.matmul(&a23)))
        }
        Bonding::Open => {
            // I_d^s = 0; I_o^s = 0 -> V_d^s = -a42^-1 (a41 Vd + a43 Id)
            let inv = checked_inverse(&a42, 1e14, "a42").unwrap();
            let m12 = a12.matmul(&inv); let m32 = a32.matmul(&inv);
            (a11.sub(&m12.matmul(&a41)), a13.sub(&m12.matmul(&a43)),
             a31.sub(&m32.matmul(&a41)), a33.sub(&m32.matmul(&a43)))
        }
    };
    let mut reduced = CMat::zeros(6, 6);
    reduced.set_block3(0, 0, &r11);
    reduced.set_block3(0, 1, &r12);
    reduced.set_block3(1, 0, &r21);
    reduced.set_block3(1, 1, &r22);
    reduced
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

fn run(tag: &str, bonding: Bonding, balanced: bool, y2_scale: f64) {
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
        if y2_scale != 1.0 {
            // y2 sits in the sheath diagonal: y[(s,s)] = y1 + y2
            for p in 0..3 {
                let y1 = -y[(p, p + 3)];
                let y2 = y[(p + 3, p + 3)] - y1;
                y[(p + 3, p + 3)] = y1 + y2 * Complex::new(y2_scale, 0.0);
            }
        }
        let (z, y) = if balanced { (balance6(&dm.z), balance6(&y)) } else { (dm.z.clone(), y) };
        let tm = terminal_solution(&z, &y, 135e3, w, &opts).unwrap();
        let red = reduce(&tm, bonding);
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
    run("single unbal y2=1", Bonding::SinglePoint, false, 1.0);
    run("solid  unbal y2=1", Bonding::Solid, false, 1.0);
    run("open   unbal y2=1", Bonding::Open, false, 1.0);
    run("single bal   y2=1", Bonding::SinglePoint, true, 1.0);
    run("solid  bal   y2=1", Bonding::Solid, true, 1.0);
    run("open   bal   y2=1", Bonding::Open, true, 1.0);
    run("single unbal y2=0.1", Bonding::SinglePoint, false, 0.1);
    run("single bal   y2=0.1", Bonding::SinglePoint, true, 0.1);
    println!("targets: R -5.9/2.2  X -2.5/0.80  G -7.1/1.4  B -4.2/1.1 ; maxes R 6.63 X 79.2 B 12.45e-3");
}
