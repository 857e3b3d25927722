use lfac_core::cable::{material, CableDesign};
use lfac_core::polyfit::{fit, fit_report, sample_reference};
use lfac_core::sequence::{exact_pi, SequenceOptions};

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

fn d138() -> CableDesign<f64> {
    CableDesign {
        r1: 0.01515, r2: 0.03545, r3: 0.03835, r4: 0.043,
        spacing: 0.172, depth: 1.0,
        conductor: material("copper").unwrap(),
        sheath: material("aluminum").unwrap(),
        insulation: material("xlpe").unwrap(),
        soil_resistivity: 100.0, operating_temp: 90.0,
        voltage_rating: 170e3, thermal_rating: 190e6, length: 22e3,
    }
}

fn main() {
    let opts = SequenceOptions::default();
    let w50 = 100.0 * std::f64::consts::PI;

    for (name, d) in [("230kV", d230()), ("138kV", d138())] {
        let pi = exact_pi(&d, 1000.0, w50, &opts).unwrap();
        println!("{name}: 1 km @50Hz 90C  R = {:.6} ohm/km  X = {:.6}  Ysh = {:.3e}{:+.3e}i S",
            pi.z_series.re, pi.z_series.im, pi.y_shunt_total().re, pi.y_shunt_total().im);
    }

    // exact curve values at a few freqs for the 135 km cable
    let d = d230();
    for hz in [0.001/(2.0*std::f64::consts::PI), 10.0, 30.0, 50.0, 60.0] {
        let w = 2.0 * std::f64::consts::PI * hz;
        let pi = exact_pi(&d, 135e3, w.max(0.001), &opts).unwrap();
        println!("135km @{hz:.3} Hz: R={:.4} X={:.4} G={:.6e} B={:.6e}",
            pi.z_series.re, pi.z_series.im, pi.y_shunt_total().re, pi.y_shunt_total().im);
    }

    let t0 = std::time::Instant::now();
    let samples = sample_reference(&d, 1e-3, 120.0*std::f64::consts::PI, 500, &opts).unwrap();
    println!("sampling took {:?}", t0.elapsed());
    let model = fit(&samples).unwrap();
    let report = fit_report(&model, &samples);
    println!("== 135 km, 230 kV fit report (expect R -5.9@60 rms 2.2 | X -2.5 rms 0.8 | G -7.1 rms 1.4 | B -4.2 rms 1.1):");
    for row in &report.rows {
        println!("  {}: largest {:.4e} ({:+.2}%) at {:.1} Hz, RMS {:.3}%",
            row.param.label(), row.largest_error, row.largest_rel_error_pct,
            row.freq_of_largest_hz, row.rms_rel_error_pct);
    }

    let d1 = d138();
    let samples = sample_reference(&d1, 1e-3, 120.0*std::f64::consts::PI, 500, &opts).unwrap();
    let model = fit(&samples).unwrap();
    let report = fit_report(&model, &samples);
    println!("== 22 km, 138 kV fit report (expect R 0.25 rms 0.091 | X -5.3e-3 | G -8.7e-4@0Hz | B -1.8e-2):");
    for row in &report.rows {
        println!("  {}: largest {:.4e} ({:+.3e}%) at {:.1} Hz, RMS {:.3e}%",
            row.param.label(), row.largest_error, row.largest_rel_error_pct,
            row.freq_of_largest_hz, row.rms_rel_error_pct);
    }
}
