//! Exact transfer-matrix path for piecewise-constant potentials.
//!
//! On every constant piece `y'' = (h - k^2) y` is solved in closed form, so
//! these results carry only rounding error. The adaptive solver is checked
//! against them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jost::{plane_wave, plane_wave_coefficients, ScatteringData, Side, WaveNumber};
use crate::ode::{propagate_constant, State};
use crate::potential::{Potential, Segment};

fn segments(p: &Potential) -> Result<Vec<Segment>> {
    p.constant_segments()
        .ok_or_else(|| Error::InvalidArgument("transfer matrices need a piecewise-constant potential".into()))
}

/// Carries `y` from `x0` to `x1` across the constant pieces.
fn carry(segs: &[Segment], k2: Complex64, x0: f64, y: State, x1: f64) -> State {
    let (lo, hi) = (x0.min(x1), x0.max(x1));
    let mut cuts: Vec<f64> = segs
        .iter()
        .flat_map(|s| [s.left, s.right])
        .filter(|c| *c > lo && *c < hi)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    if x1 < x0 {
        cuts.reverse();
    }
    cuts.push(x1);
    let height = |a: f64, b: f64| {
        let m = 0.5 * (a + b);
        segs.iter().find(|s| s.left <= m && m <= s.right).map_or(0.0, |s| s.height)
    };
    let mut x = x0;
    let mut y = y;
    for c in cuts {
        y = propagate_constant(Complex64::new(height(x, c), 0.0) - k2, y, c - x);
        x = c;
    }
    y
}

/// `(f_+, f_+')` at each point.
pub fn jost_right_exact(p: &Potential, k: WaveNumber, points: &[f64]) -> Result<Vec<State>> {
    let segs = segments(p)?;
    let edge = segs.iter().map(|s| s.right).fold(0.0, f64::max);
    let k = k.value();
    let start = plane_wave(Side::Right, k, edge);
    Ok(points.iter().map(|&x| carry(&segs, k * k, edge, start, x)).collect())
}

/// `(f_-, f_-')` at each point.
pub fn jost_left_exact(p: &Potential, k: WaveNumber, points: &[f64]) -> Result<Vec<State>> {
    let segs = segments(p)?;
    let edge = segs.iter().map(|s| s.left).fold(0.0, f64::min);
    let k = k.value();
    let start = plane_wave(Side::Left, k, edge);
    Ok(points.iter().map(|&x| carry(&segs, k * k, edge, start, x)).collect())
}

/// `D(k) = W{f_+, f_-}`; `k = 0` is allowed.
pub fn wronskian_exact(p: &Potential, k: WaveNumber) -> Result<Complex64> {
    let segs = segments(p)?;
    let left = segs.iter().map(|s| s.left).fold(0.0, f64::min);
    let fp = jost_right_exact(p, k, &[left])?[0];
    let fm = plane_wave(Side::Left, k.value(), left);
    Ok(fp[0] * fm[1] - fp[1] * fm[0])
}

pub fn scattering_exact(p: &Potential, k: WaveNumber) -> Result<ScatteringData> {
    if k.is_zero() {
        return Err(Error::InvalidArgument("k = 0 is not allowed here".into()));
    }
    let segs = segments(p)?;
    let left = segs.iter().map(|s| s.left).fold(0.0, f64::min);
    let fp = jost_right_exact(p, k, &[left])?[0];
    let (a, b) = plane_wave_coefficients(k.value(), left, fp);
    if a.norm() < 1e-14 {
        return Err(Error::ExceptionalPoint {
            re: k.value().re,
            im: k.value().im,
        });
    }
    Ok(ScatteringData::from_ab(k, a, b))
}
