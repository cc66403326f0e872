mod common;

use common::*;
use deltaprime::*;
use rand::{rngs::StdRng, Rng, SeedableRng};
use std::f64::consts::PI;

fn k11() -> WaveNumber {
    WaveNumber::new(1.0, 1.0).unwrap()
}

fn fd_check(theta: f64, k: WaveNumber, pairs: usize, seed: u64) -> f64 {
    let fd = InterfaceFd { h: 1e-3, l: 20.0, theta, k: k.value() };
    let g = LimitKernel::new(LimitOperator::interface(theta).unwrap(), k).unwrap();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..pairs {
        // grid points in [-3, 3] away from the interface node
        let pick = |rng: &mut StdRng| loop {
            let x = rng.gen_range(-3000i32..=3000) as f64 * 1e-3;
            if x.abs() > 5e-3 {
                return x;
            }
        };
        let (x, y) = (pick(&mut rng), pick(&mut rng));
        let u = fd.solve(fd.node(y));
        let err = (fd.kernel(&u, x) - g.value(x, y).unwrap()).norm();
        worst = worst.max(err);
    }
    worst
}

#[test]
fn interface_kernel_matches_finite_differences() {
    assert!(fd_check(-1.0, WaveNumber::new(0.0, 1.0).unwrap(), 10, 7) < 1e-4);
    assert!(fd_check(2.0, k11(), 6, 11) < 1e-4);
    assert!(fd_check(-0.4, WaveNumber::new(0.3, 0.8).unwrap(), 6, 13) < 1e-4);
}

#[test]
fn interface_kernel_at_the_interface() {
    let fd = InterfaceFd { h: 1e-3, l: 20.0, theta: -1.0, k: I };
    let u = fd.solve(fd.node(1.0));
    let g = LimitKernel::new(LimitOperator::interface(-1.0).unwrap(), WaveNumber::new(0.0, 1.0).unwrap()).unwrap();
    assert!((fd.kernel(&u, 0.0) - g.value(0.0, 1.0).unwrap()).norm() < 1e-4);
    assert!((fd.kernel(&u, -0.0 - 1e-12) - g.value(-1e-12, 1.0).unwrap()).norm() < 1e-4);
}

#[test]
fn classification_examples() {
    assert_eq!(classify_limit(&square(1.0), None).unwrap(), LimitOperator::Dirichlet);
    match classify_limit(&square(-(PI / 2.0).powi(2)), None).unwrap() {
        LimitOperator::Interface { theta } => assert!((theta + 1.0).abs() < 1e-8),
        other => panic!("{other:?}"),
    }
    assert_eq!(
        classify_limit(&Potential::zero(), None).unwrap(),
        LimitOperator::Interface { theta: 1.0 }
    );
}

#[test]
fn limit_data_unitary() {
    for theta in [-3.0, -1.0, -0.2, 0.5, 1.0, 7.0] {
        let s = limit_scattering(LimitOperator::interface(theta).unwrap(), k11());
        assert!(s.unitarity_defect().abs() < 1e-12);
    }
    assert!(limit_scattering(LimitOperator::Dirichlet, k11()).unitarity_defect().abs() < 1e-12);
}

#[test]
fn dirichlet_kernel_vanishes_on_the_axes() {
    let g = LimitKernel::new(LimitOperator::Dirichlet, k11()).unwrap();
    for y in [-2.0, -0.1, 0.3, 4.0] {
        assert!(g.value(0.0, y).unwrap().norm() < 1e-12);
        assert!(g.value(y, 0.0).unwrap().norm() < 1e-12);
    }
}

#[test]
fn transmission_trend_over_halvings() {
    let eps = [0.2, 0.1, 0.05, 0.025, 0.0125];
    for (name, p) in corpus() {
        let lim = limit_scattering(classify_limit(&p, None).unwrap(), k11());
        let errs: Vec<f64> = eps
            .iter()
            .map(|e| (truncated_scaled_scattering(&p, *e, k11(), 1e-10).unwrap().t - lim.t).norm())
            .collect();
        for w in errs.windows(2) {
            assert!(w[1] <= 1.1 * w[0], "{name}: {errs:?}");
        }
    }
}

#[test]
fn convergence_table_examples() {
    let rows = convergence_table(&square(-(PI / 2.0).powi(2)), k11(), &[0.05, 0.2, 0.1], 10.0, 100, Exec::default())
        .unwrap();
    assert_eq!(rows.iter().map(|r| r.eps).collect::<Vec<_>>(), vec![0.2, 0.1, 0.05]);
    for w in rows.windows(2) {
        assert!((w[1].t_eps + 1.0).norm() < (w[0].t_eps + 1.0).norm());
        assert!(w[1].kernel_distance < w[0].kernel_distance);
    }
    let rows = convergence_table(&square(1.0), k11(), &[0.2, 0.1, 0.05], 10.0, 100, Exec::default()).unwrap();
    assert!(rows.iter().all(|r| r.limit == LimitOperator::Dirichlet));
    for w in rows.windows(2) {
        assert!(w[1].t_eps.norm() < w[0].t_eps.norm());
        assert!((w[1].r_eps + 1.0).norm() < (w[0].r_eps + 1.0).norm());
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let p = square(-1.0);
    let g = TruncatedKernel::new(&p, 0.1, k11(), &JostConfig::default()).unwrap();
    let lk = LimitKernel::new(LimitOperator::Dirichlet, k11()).unwrap();
    let a = kernel_distance(&g, &lk, 5.0, 60, Exec::Sequential).unwrap();
    let b = kernel_distance(&g, &lk, 5.0, 60, Exec::Parallel).unwrap();
    assert_eq!(a, b);
}
