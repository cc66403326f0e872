//! Independent oracles: closed-form matching for piecewise-constant
//! potentials, a Bessel series, and a finite-difference resolvent.
#![allow(dead_code)]

use deltaprime::{Potential, Segment};
use num_complex::Complex64;
use std::f64::consts::PI;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn square(h: f64) -> Potential {
    Potential::square(-1.0, 1.0, h).unwrap()
}

/// Barrier, three wells, two-step piecewise, tabulated.
pub fn corpus() -> Vec<(&'static str, Potential)> {
    vec![
        ("barrier", square(1.0)),
        ("well-shallow", square(-0.5)),
        ("well-resonant", square(-(PI / 2.0).powi(2))),
        ("well-deep", square(-7.0)),
        (
            "two-step",
            Potential::piecewise(vec![
                Segment { left: -1.0, right: 0.0, height: 2.0 },
                Segment { left: 0.0, right: 1.5, height: -3.0 },
            ])
            .unwrap(),
        ),
        (
            "table",
            Potential::table(vec![-2.0, -0.5, 0.0, 1.0, 2.0], vec![0.0, -1.0, 0.5, -2.0, 0.0]).unwrap(),
        ),
    ]
}

/// `f_+(x, 0)` of `-c^2` on `[-1, 1]`.
pub fn well_zero_energy(cc: f64, x: f64) -> (f64, f64) {
    if x >= 1.0 {
        (1.0, 0.0)
    } else if x >= -1.0 {
        ((cc * (x - 1.0)).cos(), -cc * (cc * (x - 1.0)).sin())
    } else {
        let (v, d) = ((2.0 * cc).cos(), cc * (2.0 * cc).sin());
        (v + d * (x + 1.0), d)
    }
}

/// Transmission amplitude of `h` on `[-a, a]` from the textbook matching,
/// valid for complex `q = sqrt(k^2 - h)` (even in `q`).
pub fn square_transmission(h: f64, a: f64, k: Complex64) -> Complex64 {
    let q = (k * k - h).sqrt();
    // sin(2qa)/q, with its limit 2a at q = 0 (k^2 = h)
    let sinc = if q.norm() < 1e-12 { c(2.0 * a, 0.0) } else { (2.0 * q * a).sin() / q };
    let denom = (2.0 * q * a).cos() - I * (q * q + k * k) / (2.0 * k) * sinc;
    (-2.0 * I * k * a).exp() / denom
}

/// `J_0` by its power series (fine for `|z| < 10`).
pub fn bessel_j0(z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..60 {
        term *= -(z * z / 4.0) / (m as f64 * m as f64);
        sum += term;
    }
    sum
}

pub const J0_FIRST_ZERO: f64 = 2.404_825_557_695_773;

/// Finite-difference resolvent of `-u'' - k^2 u` on `[-l, l]` (Dirichlet
/// ends) with the interface `u(0+) = theta u(0-)`, `theta u'(0+) = u'(0-)`
/// at a duplicated node. Returns the solution for a discrete delta at
/// node `j` (`x_j = -l + j h`, `j` not the interface node).
pub struct InterfaceFd {
    pub h: f64,
    pub l: f64,
    pub theta: f64,
    pub k: Complex64,
}

impl InterfaceFd {
    pub fn n(&self) -> usize {
        (2.0 * self.l / self.h).round() as usize + 1
    }

    pub fn node(&self, x: f64) -> usize {
        ((x + self.l) / self.h).round() as usize
    }

    pub fn zero(&self) -> usize {
        self.node(0.0)
    }

    /// `u_i` for node `i`, with `u` at the interface node read as the
    /// left-hand value `u(0-)`.
    pub fn solve(&self, j: usize) -> Vec<Complex64> {
        let n = self.n();
        let z = self.zero();
        assert!(j != z && j > 0 && j < n - 1);
        let (h, t, k2) = (self.h, self.theta, self.k * self.k);
        let mut lower = vec![c(0.0, 0.0); n];
        let mut diag = vec![c(0.0, 0.0); n];
        let mut upper = vec![c(0.0, 0.0); n];
        let mut rhs = vec![c(0.0, 0.0); n];
        let ih2 = 1.0 / (h * h);
        for i in 0..n {
            if i == 0 || i == n - 1 {
                diag[i] = c(1.0, 0.0);
            } else if i == z {
                lower[i] = c(1.0 / h, 0.0);
                diag[i] = -t * t / h + h / 2.0 * k2 * t * t - 1.0 / h + h / 2.0 * k2;
                upper[i] = c(t / h, 0.0);
            } else {
                lower[i] = c(-ih2, 0.0);
                diag[i] = 2.0 * ih2 - k2;
                upper[i] = c(-ih2, 0.0);
                if i == z + 1 {
                    lower[i] = c(-t * ih2, 0.0);
                }
            }
        }
        rhs[j] = c(1.0 / h, 0.0);
        thomas(&lower, &diag, &upper, &rhs)
    }

    /// `G(x, y)` from the discrete solution; `x = 0` reads the right value.
    pub fn kernel(&self, u: &[Complex64], x: f64) -> Complex64 {
        let i = self.node(x);
        if i == self.zero() && x >= 0.0 {
            u[i] * self.theta
        } else {
            u[i]
        }
    }
}

pub fn thomas(a: &[Complex64], b: &[Complex64], cu: &[Complex64], d: &[Complex64]) -> Vec<Complex64> {
    let n = b.len();
    let mut cp = vec![c(0.0, 0.0); n];
    let mut dp = vec![c(0.0, 0.0); n];
    cp[0] = cu[0] / b[0];
    dp[0] = d[0] / b[0];
    for i in 1..n {
        let m = b[i] - a[i] * cp[i - 1];
        cp[i] = cu[i] / m;
        dp[i] = (d[i] - a[i] * dp[i - 1]) / m;
    }
    let mut x = vec![c(0.0, 0.0); n];
    x[n - 1] = dp[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = dp[i] - cp[i] * x[i + 1];
    }
    x
}
