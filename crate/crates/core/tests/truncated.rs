mod common;

use common::*;
use deltaprime::resonance::d0_compact;
use deltaprime::*;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn k11() -> WaveNumber {
    WaveNumber::new(1.0, 1.0).unwrap()
}

#[test]
fn nonresonant_coefficients_blow_up_like_d0() {
    // eps f~_+'(-x_eps + 0) -> -D(0), so with the 1/(2ik) of the matching
    // formulas eps a+ -> -D(0)/(2ik) and eps b+ -> D(0)/(2ik)
    let p = square(1.0);
    let d0 = d0_compact(&p, &JostConfig::default()).unwrap();
    let lim = d0 / (2.0 * I * k11().value());
    let mut last = f64::INFINITY;
    for eps in [0.1, 0.01, 0.001] {
        let (_, _, a, b) = truncated_scaled_jost(&p, eps, k11(), 1e-10).unwrap();
        let err = (eps * a + lim).norm().max((eps * b - lim).norm());
        assert!(err < last, "eps = {eps}: {err}");
        last = err;
    }
    assert!(last < 1e-3 * lim.norm(), "{last}");
}

#[test]
fn resonant_coefficients_converge() {
    // theta = -1: a -> (theta + 1/theta)/2 = -1, b -> 0
    let p = square(-(PI / 2.0).powi(2));
    let mut last = f64::INFINITY;
    for eps in [0.1, 0.01, 0.001] {
        let (_, _, a, b) = truncated_scaled_jost(&p, eps, k11(), 1e-10).unwrap();
        let err = (a + 1.0).norm().max(b.norm());
        assert!(err < last, "eps = {eps}: {err}");
        last = err;
    }
    assert!(last < 1e-2, "{last}");
}

#[test]
fn free_scattering_exact_for_every_eps() {
    for eps in [0.9, 0.3, 0.01] {
        let s = truncated_scaled_scattering(&Potential::zero(), eps, WaveNumber::real(1.0), 1e-10).unwrap();
        assert!(s.r.norm() < 1e-14 && (s.t - 1.0).norm() < 1e-14);
    }
}

#[test]
fn compact_truncation_is_exact_scaling() {
    // once xi_eps covers the support, the truncated operator is S_eps itself
    let p = square(-2.0);
    for eps in [0.2, 0.05] {
        let t = truncated_scaled_scattering(&p, eps, WaveNumber::real(1.5), 1e-10).unwrap();
        let s = scattering(&p.scale(eps).unwrap(), WaveNumber::real(1.5), 1e-10).unwrap();
        assert!((t.r - s.r).norm() < 1e-9 && (t.t - s.t).norm() < 1e-9, "eps = {eps}");
    }
}

#[test]
fn wronskian_in_every_region() {
    let k = k11();
    for p in [square(1.0), square(-(PI / 2.0).powi(2)), Potential::exp_decay(-1.0, 1.0).unwrap()] {
        let t = TruncatedJost::new(&p, 0.05, k, &JostConfig::default()).unwrap();
        let xe = t.scale.x_eps;
        let xs = [-3.0 * xe, -1.5 * xe, -0.5 * xe, 0.0, 0.7 * xe, 2.0 * xe, 4.0];
        let (fp, fm) = t.states(&xs).unwrap();
        let w = -2.0 * I * k.value() * t.a_plus;
        for i in 0..xs.len() {
            let wi = fp[i][0] * fm[i][1] - fp[i][1] * fm[i][0];
            assert!((wi - w).norm() < 1e-9 * w.norm(), "x = {}: {wi} vs {w}", xs[i]);
        }
        assert!(t.wronskian_gap() < 1e-9);
    }
}

#[test]
fn kernel_solves_the_equation() {
    // -G'' + (chi_eps V_eps - k^2) G = 0 off the diagonal, checked in the
    // fast variable u = x/eps inside the window
    let p = square(-1.3);
    let eps = 0.05;
    let k = k11();
    let g = TruncatedKernel::new(&p, eps, k, &JostConfig::default()).unwrap();
    let xe = g.jost.scale.x_eps;
    let y = 0.3;
    let k2 = k.value() * k.value();
    for x in [-1.0, -0.5 * xe, -0.02, 0.01, 0.6 * xe, 1.0, 2.0] {
        let inside = x.abs() < xe;
        let h = if inside { 1e-3 * eps } else { 1e-3 };
        let v = |s: f64| g.value(s, y).unwrap();
        let d2 = (v(x + h) - 2.0 * v(x) + v(x - h)) / (h * h);
        let pot = if inside { p.scale(eps).unwrap().eval(x) } else { 0.0 };
        let mut res = -d2 + (pot - k2) * v(x);
        if inside {
            res *= eps * eps;
        }
        assert!(res.norm() < 1e-5, "x = {x}: {res}");
    }
}

#[test]
fn kernel_continuous_across_diagonal() {
    let g = TruncatedKernel::new(&square(1.0), 0.1, k11(), &JostConfig::default()).unwrap();
    for x in [-0.5, 0.0, 0.02, 1.0] {
        let a = g.value(x, x + 1e-9).unwrap();
        let b = g.value(x, x - 1e-9).unwrap();
        assert!((a - b).norm() < 1e-7);
    }
}

#[test]
fn free_truncated_kernel() {
    let k = WaveNumber::new(0.0, 1.0).unwrap();
    for (x, y) in [(0.0, 1.0), (-2.0, 0.5), (0.01, -0.01)] {
        let s = truncated_green_kernel(&Potential::zero(), 0.1, k, x, y, 1e-10).unwrap();
        let exact = Complex64::new(0.5 * (-(x - y).abs()).exp(), 0.0);
        assert!((s.value - exact).norm() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn kernel_is_symmetric(x in -2.0f64..2.0, y in -2.0f64..2.0, eps in 0.02f64..0.5, i in 0usize..6) {
        let p = corpus().swap_remove(i).1;
        let g = TruncatedKernel::new(&p, eps, k11(), &JostConfig::default()).unwrap();
        let (a, b) = (g.value(x, y).unwrap(), g.value(y, x).unwrap());
        prop_assert!((a - b).norm() < 1e-10);
    }
}
