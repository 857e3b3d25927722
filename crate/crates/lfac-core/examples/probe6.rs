use lfac_core::cable::{material, CableDesign, DistributedMatrices};
use lfac_core::linalg::{CLu, CMat};
use lfac_core::sequence::{eliminate_sheaths, positive_sequence_pi, terminal_solution, SequenceOptions};
use num_complex::Complex;

type C = Complex<f64>;

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

// integrate d/dx [V;I] = [Z I; Y V] from destination over length l (RK4)
fn rk4_map(z: &CMat<f64>, y: &CMat<f64>, l: f64, v0: &[C], i0: &[C], steps: usize) -> (Vec<C>, Vec<C>) {
    let h = l / steps as f64;
    let mut v: Vec<C> = v0.to_vec();
    let mut i: Vec<C> = i0.to_vec();
    let f = |v: &[C], i: &[C]| -> (Vec<C>, Vec<C>) {
        (z.matvec(i), y.matvec(v))
    };
    for _ in 0..steps {
        let (k1v, k1i) = f(&v, &i);
        let add = |a: &[C], b: &[C], s: f64| -> Vec<C> {
            a.iter().zip(b).map(|(x, y)| x + y * C::new(s, 0.0)).collect()
        };
        let (k2v, k2i) = f(&add(&v, &k1v, h / 2.0), &add(&i, &k1i, h / 2.0));
        let (k3v, k3i) = f(&add(&v, &k2v, h / 2.0), &add(&i, &k2i, h / 2.0));
        let (k4v, k4i) = f(&add(&v, &k3v, h), &add(&i, &k3i, h));
        for p in 0..6 {
            v[p] = v[p] + (k1v[p] + k2v[p] * C::new(2.0, 0.0) + k3v[p] * C::new(2.0, 0.0) + k4v[p]) * C::new(h / 6.0, 0.0);
            i[p] = i[p] + (k1i[p] + k2i[p] * C::new(2.0, 0.0) + k3i[p] * C::new(2.0, 0.0) + k4i[p]) * C::new(h / 6.0, 0.0);
        }
    }
    (v, i)
}

fn main() {
    let d = base230();
    let w = 120.0 * std::f64::consts::PI;
    let dm = DistributedMatrices::build(&d, w).unwrap();
    let mut opts = SequenceOptions::default();
    opts.two_port_det_tol = 1.0;
    let tm = terminal_solution(&dm.z, &dm.y, 135e3, w, &opts).unwrap();

    // oracle 1: RK4 vs terminal matrix on a random excitation
    let vd: Vec<C> = (0..6).map(|k| C::new(1.0 + 0.1 * k as f64, -0.05 * k as f64)).collect();
    let id: Vec<C> = (0..6).map(|k| C::new(0.01 * (6 - k) as f64, 0.02 * k as f64)).collect();
    let (vo_ode, io_ode) = rk4_map(&dm.z, &dm.y, 135e3, &vd, &id, 10000);
    let full: Vec<C> = vd.iter().chain(id.iter()).cloned().collect();
    let out = tm.assembled().matvec(&full);
    let mut err: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for k in 0..6 {
        err = err.max((out[k] - vo_ode[k]).norm());
        err = err.max((out[k + 6] - io_ode[k]).norm());
        scale = scale.max(vo_ode[k].norm()).max(io_ode[k].norm());
    }
    println!("ODE oracle rel err = {:.3e}", err / scale);

    // oracle 2: explicit 12-var constrained solve vs eliminate_sheaths
    let reduced = eliminate_sheaths(&tm, &opts).unwrap();
    let vd3 = [C::new(1.0, 0.0), C::new(-0.5, 0.866), C::new(-0.5, -0.866)];
    let id3 = [C::new(0.2, 0.1), C::new(-0.25, 0.05), C::new(0.05, -0.15)];
    // unknowns u = [V_d^s(3), V_o^abc(3), I_o^abc(3), I_o^s(3)]
    let a = tm.assembled();
    let mut lhs = CMat::<f64>::zeros(12, 12);
    let mut rhs = vec![C::new(0.0, 0.0); 12];
    // input vec x = [V_d^abc, V_d^s, I_d^abc, I_d^s]; I_d^s = 0
    // rows: a.x = [V_o^abc, V_o^s(=0), I_o^abc, I_o^s]
    for r in 0..12 {
        // move unknown V_d^s terms (cols 3..6) to LHS
        for c in 0..3 {
            lhs[(r, c)] = a[(r, 3 + c)];
        }
        // known contributions to RHS (negated later)
        let mut known = C::new(0.0, 0.0);
        for c in 0..3 {
            known = known + a[(r, c)] * vd3[c] + a[(r, 6 + c)] * id3[c];
        }
        rhs[r] = -known;
    }
    // outputs: V_o^abc unknown -> cols 3..6 of u, subtract identity
    for r in 0..3 {
        lhs[(r, 3 + r)] = lhs[(r, 3 + r)] - C::new(1.0, 0.0);
    }
    // V_o^s rows (3..6): output is 0, nothing to add
    for r in 6..9 {
        lhs[(r, 6 + (r - 6))] = lhs[(r, 6 + (r - 6))] - C::new(1.0, 0.0);
    }
    for r in 9..12 {
        lhs[(r, 9 + (r - 9))] = lhs[(r, 9 + (r - 9))] - C::new(1.0, 0.0);
    }
    let lu = CLu::factor(&lhs).unwrap();
    let u = lu.solve_vec(&rhs);
    // reduced map prediction
    let mut arg = vec![C::new(0.0, 0.0); 6];
    arg[..3].copy_from_slice(&vd3);
    arg[3..].copy_from_slice(&id3);
    let pred = reduced.matvec(&arg);
    let mut err2: f64 = 0.0;
    let mut scale2: f64 = 0.0;
    for k in 0..3 {
        err2 = err2.max((pred[k] - u[3 + k]).norm()).max((pred[3 + k] - u[6 + k]).norm());
        scale2 = scale2.max(u[3 + k].norm()).max(u[6 + k].norm());
    }
    println!("constrained-solve oracle rel err = {:.3e}", err2 / scale2);

    let pi = positive_sequence_pi(&reduced, w, &opts).unwrap();
    println!("single-point pi: R={:.4} X={:.4}", pi.z_series.re, pi.z_series.im);
}
