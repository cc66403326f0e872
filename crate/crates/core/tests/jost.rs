mod common;

use common::*;
use deltaprime::jost::{jost_wronskian, scattering_report, uniform_grid};
use deltaprime::transfer;
use deltaprime::*;
use proptest::prelude::*;
use std::f64::consts::PI;

#[test]
fn square_well_zero_energy_matches_matching() {
    let cc = PI / 2.0;
    let p = square(-cc * cc);
    let grid = uniform_grid(-3.0, 3.0, 121);
    let f = jost_right(&p, WaveNumber::real(0.0), &grid, 1e-10).unwrap();
    for (i, x) in grid.iter().enumerate() {
        let (v, d) = well_zero_energy(cc, *x);
        assert!((f.values[i].re - v).abs() < 1e-10 && f.values[i].im == 0.0, "x = {x}");
        assert!((f.derivatives[i].re - d).abs() < 1e-10, "x = {x}");
    }
}

#[test]
fn zero_energy_wronskian() {
    let cfg = JostConfig::default();
    let zero = num_complex::Complex64::new(0.0, 0.0);
    let d = jost_wronskian(&square(-(PI / 2.0).powi(2)), zero, &cfg).unwrap();
    assert!(d.norm() < 1e-8);
    // barrier: f_+ = cosh(x - 1) inside, D(0) = sinh 2
    let d = jost_wronskian(&square(1.0), zero, &cfg).unwrap();
    assert!((d.re - 2f64.sinh()).abs() < 1e-9);
}

#[test]
fn barrier_transmission_textbook() {
    for k in [c(1.0, 0.0), c(0.5, 0.0), c(3.0, 0.0), c(1.0, 1.0)] {
        let s = scattering(&square(1.0), WaveNumber::from_complex(k).unwrap(), 1e-10).unwrap();
        let t = square_transmission(1.0, 1.0, k);
        assert!((s.t - t).norm() < 1e-9, "k = {k}: {} vs {t}", s.t);
    }
    let s = scattering(&square(-7.0), WaveNumber::real(2.0), 1e-10).unwrap();
    assert!((s.t - square_transmission(-7.0, 1.0, c(2.0, 0.0))).norm() < 1e-9);
}

#[test]
fn wronskian_consistency_gap() {
    for (name, p) in corpus() {
        let r = scattering_report(&p, WaveNumber::new(1.0, 0.5).unwrap(), &JostConfig::default()).unwrap();
        assert!(r.consistency_gap < 1e-9, "{name}: {}", r.consistency_gap);
    }
}

#[test]
fn even_potential_mirror() {
    for p in [square(-3.0), Potential::exp_decay(2.0, 1.5).unwrap()] {
        let k = WaveNumber::new(0.7, 0.3).unwrap();
        let grid = uniform_grid(-4.0, 4.0, 81);
        let fp = jost_right(&p, k, &grid, 1e-10).unwrap();
        let fm = jost_left(&p, k, &grid, 1e-10).unwrap();
        let n = grid.len();
        for i in 0..n {
            let (a, b) = (fm.values[i], fp.values[n - 1 - i]);
            assert!((a - b).norm() < 1e-9 * (1.0 + b.norm()), "x = {}", grid[i]);
        }
    }
}

#[test]
fn anchor_data_are_exact() {
    let p = Potential::exp_decay(1.0, 1.0).unwrap();
    let k = WaveNumber::new(1.0, 0.2).unwrap();
    let probe = jost_left(&p, k, &[0.0], 1e-10).unwrap();
    let a = probe.anchor;
    let f = jost_left(&p, k, &[a, 0.0], 1e-10).unwrap();
    let e = (-I * k.value() * a).exp();
    assert_eq!(f.values[0], e);
    assert_eq!(f.derivatives[0], -I * k.value() * e);
}

#[test]
fn anchor_robustness() {
    // doubling the anchor distance moves f_+(0) by less than 10 error bounds
    for p in [Potential::exp_decay(1.0, 1.0).unwrap(), Potential::exp_decay(-2.0, 0.7).unwrap()] {
        let k = WaveNumber::new(1.0, 0.5).unwrap();
        let f = jost_right(&p, k, &[0.0], 1e-10).unwrap();
        let far = deltaprime::jost::solve_from(&p, Side::Right, k, 2.0 * f.anchor, &[0.0]).unwrap()[0];
        assert!((far[0] - f.values[0]).norm() < 10.0 * f.error_bound, "{} vs {}", far[0], f.values[0]);
    }
}

#[test]
fn jost_estimate_shape_compact_barrier() {
    // |f_+(x, 2i) - e^{-2x}| <= C tau_+(x) e^{-2x}: report the finite sup
    let p = square(1.0);
    let k = WaveNumber::new(0.0, 2.0).unwrap();
    let grid = uniform_grid(-1.0, 1.0, 201);
    let f = jost_right(&p, k, &grid, 1e-10).unwrap();
    let mut sup: f64 = 0.0;
    for (i, x) in grid.iter().enumerate().take(grid.len() - 1) {
        let e = (-2.0 * x).exp();
        let tau = p.tails(*x, 1e-13).unwrap().tau_plus;
        sup = sup.max((f.values[i] - e).norm() / (e * tau));
    }
    assert!(sup.is_finite() && sup < 10.0, "{sup}");
}

#[test]
fn exact_transfer_agrees_on_corpus() {
    for (name, p) in corpus() {
        if p.constant_segments().is_none() {
            continue;
        }
        for k in [0.5, 1.0, 2.0, 5.0] {
            let a = scattering(&p, WaveNumber::real(k), 1e-10).unwrap();
            let b = transfer::scattering_exact(&p, WaveNumber::real(k)).unwrap();
            assert!((a.r - b.r).norm() < 1e-9 && (a.t - b.t).norm() < 1e-9, "{name} k = {k}");
        }
    }
}

#[test]
fn scaled_identity_examples() {
    let p = square(-2.0);
    let (a, b) = scaled_scattering_identity(&p, 1.0, WaveNumber::real(1.3), 1e-10).unwrap();
    assert_eq!(a, b);
    let (a, b) = scaled_scattering_identity(&p, 0.5, WaveNumber::real(2.0), 1e-10).unwrap();
    assert!((a.r - b.r).norm() < 1e-8 && (a.t - b.t).norm() < 1e-8);
    let (a, b) = scaled_scattering_identity(&Potential::zero(), 0.3, WaveNumber::real(2.0), 1e-10).unwrap();
    assert!(a.r.norm() < 1e-15 && b.r.norm() < 1e-15);
}

fn corpus_potential() -> impl Strategy<Value = Potential> {
    (0..corpus().len()).prop_map(|i| corpus().swap_remove(i).1)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn wronskian_is_constant(p in corpus_potential(), re in -3.0f64..3.0, im in 0.0f64..2.0) {
        prop_assume!(re.abs() + im > 0.1);
        let k = WaveNumber::new(re, im).unwrap();
        let grid = uniform_grid(-3.0, 3.0, 61);
        let fp = jost_right(&p, k, &grid, 1e-10).unwrap();
        let fm = jost_left(&p, k, &grid, 1e-10).unwrap();
        let w = wronskian(&fp, &fm).unwrap();
        prop_assert!(w.max_rel_variation < 1e-7, "{}", w.max_rel_variation);
    }

    #[test]
    fn unitarity(p in corpus_potential(), k in 0.3f64..6.0) {
        let s = scattering(&p, WaveNumber::real(k), 1e-10).unwrap();
        prop_assert!(s.unitarity_defect().abs() < 1e-8);
    }

    #[test]
    fn dilation_covariance(p in corpus_potential(), eps in 0.05f64..2.0, k in 0.3f64..3.0) {
        let (a, b) = scaled_scattering_identity(&p, eps, WaveNumber::real(k), 1e-10).unwrap();
        prop_assert!((a.r - b.r).norm() < 1e-8 && (a.t - b.t).norm() < 1e-8);
    }

    #[test]
    fn free_solutions_are_plane_waves(re in -3.0f64..3.0, im in 0.0f64..1.5, x in -5.0f64..5.0) {
        let k = WaveNumber::new(re, im).unwrap();
        let f = jost_right(&Potential::zero(), k, &[x], 1e-10).unwrap();
        let e = (I * k.value() * x).exp();
        prop_assert!((f.values[0] - e).norm() <= 1e-10 * e.norm());
    }
}
