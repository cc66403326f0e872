//! Jost solutions of `-y'' + V y = k^2 y`, their Wronskian and the full-line
//! scattering coefficients.
//!
//! `f_+(x, k) ~ e^{ikx}` as `x -> +inf` and `f_-(x, k) ~ e^{-ikx}` as
//! `x -> -inf`. Both are obtained by imposing the plane wave at an anchor
//! beyond which the potential is negligible (the support edge for compact
//! support) and integrating the equation with an adaptive Dormand–Prince
//! scheme. Regions where the potential vanishes identically are crossed
//! with the exact free propagator.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ode::{propagate_constant, Integrator, State};
use crate::potential::{Potential, DEFAULT_ALPHA_WEIGHT};

pub(crate) const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Complex spectral parameter with `Im k >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveNumber(Complex64);

impl WaveNumber {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        Self::from_complex(Complex64::new(re, im))
    }

    pub fn from_complex(k: Complex64) -> Result<Self> {
        if !(k.re.is_finite() && k.im.is_finite()) {
            return Err(Error::InvalidArgument(format!("wavenumber must be finite, got {k}")));
        }
        if k.im < 0.0 {
            return Err(Error::InvalidArgument(format!("wavenumber needs Im k >= 0, got {k}")));
        }
        Ok(Self(k))
    }

    pub fn real(k: f64) -> Self {
        Self(Complex64::new(k, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == Complex64::new(0.0, 0.0)
    }

    pub fn scaled(self, eps: f64) -> Self {
        Self(self.0 * eps)
    }

    fn nonzero(self) -> Result<Complex64> {
        if self.is_zero() {
            Err(Error::InvalidArgument("k = 0 is not allowed here".into()))
        } else {
            Ok(self.0)
        }
    }
}

impl From<f64> for WaveNumber {
    fn from(k: f64) -> Self {
        Self::real(k)
    }
}

/// `Right` is `f_+`, normalised at `+inf`; `Left` is `f_-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    fn sign(self) -> f64 {
        match self {
            Side::Right => 1.0,
            Side::Left => -1.0,
        }
    }
}

/// Numerical settings shared by the Jost solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostConfig {
    /// Anchor rule: the neglected tail `tau_+(x_max)` (or `tau_-(x_min)`) must
    /// be below this.
    pub tail_tol: f64,
    /// Relative tolerance of the ODE integrator.
    pub rtol: f64,
    /// Exponent of the splitting weight for non-compact potentials.
    pub alpha_weight: f64,
}

pub const DEFAULT_TAIL_TOL: f64 = 1e-10;
pub const DEFAULT_RTOL: f64 = 1e-12;

impl Default for JostConfig {
    fn default() -> Self {
        Self {
            tail_tol: DEFAULT_TAIL_TOL,
            rtol: DEFAULT_RTOL,
            alpha_weight: DEFAULT_ALPHA_WEIGHT,
        }
    }
}

impl JostConfig {
    pub fn with_tail_tol(tol: f64) -> Self {
        Self {
            tail_tol: tol,
            ..Self::default()
        }
    }
}

/// One-sided Jost solution sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct JostSolution {
    pub side: Side,
    pub k: WaveNumber,
    pub grid: Vec<f64>,
    pub values: Vec<Complex64>,
    pub derivatives: Vec<Complex64>,
    /// Point where the plane-wave data were imposed.
    pub anchor: f64,
    /// Neglected tail beyond the anchor plus the integrator tolerance; bounds
    /// `|f - f_exact| / |e^{+-ikx}|` up to a potential-independent constant.
    pub error_bound: f64,
}

/// Plane wave `e^{+-ikx}` and its derivative.
pub(crate) fn plane_wave(side: Side, k: Complex64, x: f64) -> State {
    let ik = I * k * side.sign();
    let e = (ik * x).exp();
    [e, ik * e]
}

/// Anchor for `f_+` (right) or `f_-` (left).
pub(crate) fn anchor(p: &Potential, side: Side, tail_tol: f64) -> Result<f64> {
    let Some((lo, hi)) = p.support() else {
        return Ok(0.0);
    };
    match side {
        Side::Right if hi.is_finite() => return Ok(hi),
        Side::Left if lo.is_finite() => return Ok(lo),
        _ => {}
    }
    let s = side.sign();
    let tail = |x: f64| match side {
        Side::Right => p.tau_plus(x),
        Side::Left => p.tau_minus(x),
    };
    let bps = p.breakpoints();
    let start = match side {
        Side::Right => bps.last().copied().unwrap_or(0.0).max(0.0) + 1.0,
        Side::Left => -(bps.first().copied().unwrap_or(0.0).min(0.0) - 1.0),
    };
    // Doubling search in |x|, then bisection down to 1% of the bracket.
    let mut inner = 0.0;
    let mut outer = start;
    let mut t = tail(s * outer)?;
    while t >= tail_tol {
        inner = outer;
        outer *= 2.0;
        if outer > 1e8 {
            return Err(Error::AnchorSearch {
                achieved: t,
                tol: tail_tol,
            });
        }
        t = tail(s * outer)?;
    }
    while outer - inner > 1e-2 * outer {
        let mid = 0.5 * (inner + outer);
        if tail(s * mid)? < tail_tol {
            outer = mid;
        } else {
            inner = mid;
        }
    }
    Ok(s * outer)
}

/// Carries `(y, y')` across the line for a fixed potential and `k`, splitting
/// at breakpoints and using the exact free propagator off the support.
pub(crate) struct Propagator<'a> {
    p: &'a Potential,
    k2: Complex64,
    support: Option<(f64, f64)>,
    breakpoints: Vec<f64>,
    integ: Integrator,
}

impl<'a> Propagator<'a> {
    pub(crate) fn new(p: &'a Potential, k: Complex64, rtol: f64) -> Self {
        Self {
            p,
            k2: k * k,
            support: p.support(),
            breakpoints: p.breakpoints(),
            integ: Integrator::new(rtol, 0.0),
        }
    }

    pub(crate) fn advance(&mut self, x0: f64, y: State, x1: f64) -> Result<State> {
        if x0 == x1 {
            return Ok(y);
        }
        let (lo, hi) = (x0.min(x1), x0.max(x1));
        let mut nodes: Vec<f64> = self.breakpoints.iter().copied().filter(|b| *b > lo && *b < hi).collect();
        if x1 < x0 {
            nodes.reverse();
        }
        nodes.push(x1);
        let mut x = x0;
        let mut y = y;
        for next in nodes {
            y = self.piece(x, y, next)?;
            x = next;
        }
        Ok(y)
    }

    fn piece(&mut self, a: f64, y: State, b: f64) -> Result<State> {
        let (lo, hi) = (a.min(b), a.max(b));
        let free = match self.support {
            None => true,
            Some((slo, shi)) => hi <= slo || lo >= shi,
        };
        if free {
            return Ok(propagate_constant(-self.k2, y, b - a));
        }
        // Evaluate V strictly inside the piece so jumps at the ends are
        // taken from the correct side.
        let nudge = (hi - lo) * 1e-12;
        let p = self.p;
        let k2 = self.k2;
        let q = move |x: f64| Complex64::new(p.eval(x.clamp(lo + nudge, hi - nudge)), 0.0) - k2;
        self.integ.advance(&q, a, y, b)
    }
}

/// Values of one Jost solution at arbitrary points (any order), starting
/// from the given anchor.
pub(crate) fn solve_at(
    p: &Potential,
    side: Side,
    k: Complex64,
    anchor: f64,
    points: &[f64],
    rtol: f64,
) -> Result<Vec<State>> {
    let start = plane_wave(side, k, anchor);
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| points[i].total_cmp(&points[j]));
    let mut out = vec![[Complex64::new(0.0, 0.0); 2]; points.len()];

    // outward leg (beyond the anchor), ascending distance from the anchor
    let (inward, outward): (Vec<usize>, Vec<usize>) = order
        .iter()
        .partition(|&&i| (points[i] - anchor) * side.sign() <= 0.0);
    for (legs, rev) in [(inward, side == Side::Right), (outward, side == Side::Left)] {
        let mut prop = Propagator::new(p, k, rtol);
        let mut x = anchor;
        let mut y = start;
        let iter: Box<dyn Iterator<Item = &usize>> = if rev {
            Box::new(legs.iter().rev())
        } else {
            Box::new(legs.iter())
        };
        for &i in iter {
            y = prop.advance(x, y, points[i])?;
            x = points[i];
            out[i] = y;
        }
    }
    Ok(out)
}

/// `(f, f')` with the plane-wave data imposed at a caller-chosen anchor
/// instead of the tail-tolerance point.
pub fn solve_from(p: &Potential, side: Side, k: WaveNumber, anchor: f64, points: &[f64]) -> Result<Vec<State>> {
    solve_at(p, side, k.value(), anchor, points, DEFAULT_RTOL)
}

fn jost(p: &Potential, side: Side, k: WaveNumber, grid: &[f64], tol: f64) -> Result<JostSolution> {
    if k.is_zero() && !p.is_compact() {
        return Err(Error::InvalidArgument(
            "k = 0 is only supported for compactly supported potentials; use k = i*delta".into(),
        ));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("grid must be strictly increasing".into()));
    }
    let cfg = JostConfig::with_tail_tol(tol);
    let a = anchor(p, side, cfg.tail_tol)?;
    let tail = match side {
        Side::Right => p.tau_plus(a)?,
        Side::Left => p.tau_minus(a)?,
    };
    let states = solve_at(p, side, k.value(), a, grid, cfg.rtol)?;
    Ok(JostSolution {
        side,
        k,
        grid: grid.to_vec(),
        values: states.iter().map(|s| s[0]).collect(),
        derivatives: states.iter().map(|s| s[1]).collect(),
        anchor: a,
        error_bound: tail + 10.0 * cfg.rtol,
    })
}

/// Right Jost solution `f_+(x, k)` on `grid` (strictly increasing).
pub fn jost_right(p: &Potential, k: WaveNumber, grid: &[f64], tol: f64) -> Result<JostSolution> {
    jost(p, Side::Right, k, grid, tol)
}

/// Left Jost solution `f_-(x, k)` on `grid` (strictly increasing).
pub fn jost_left(p: &Potential, k: WaveNumber, grid: &[f64], tol: f64) -> Result<JostSolution> {
    jost(p, Side::Left, k, grid, tol)
}

/// Uniform 2001-point grid on `[-L, L]`, `L = max(5, 2 * max|anchor|)`.
pub fn default_grid(p: &Potential, tol: f64) -> Result<Vec<f64>> {
    let r = anchor(p, Side::Right, tol)?.abs();
    let l = anchor(p, Side::Left, tol)?.abs();
    let half = 5f64.max(2.0 * r.max(l));
    Ok(uniform_grid(-half, half, 2001))
}

pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let h = (b - a) / (n - 1) as f64;
    (0..n).map(|i| if i == n - 1 { b } else { a + h * i as f64 }).collect()
}

/// `D = f_+ f_-' - f_+' f_-` at a common interior point, with the largest
/// relative deviation from that value over all common grid points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WronskianReport {
    pub value: Complex64,
    pub at: f64,
    pub max_rel_variation: f64,
}

pub fn wronskian(fp: &JostSolution, fm: &JostSolution) -> Result<WronskianReport> {
    if fp.k != fm.k {
        return Err(Error::InvalidArgument("Jost solutions belong to different k".into()));
    }
    let mut samples = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < fp.grid.len() && j < fm.grid.len() {
        let (a, b) = (fp.grid[i], fm.grid[j]);
        if a == b {
            let w = fp.values[i] * fm.derivatives[j] - fp.derivatives[i] * fm.values[j];
            samples.push((a, w));
            i += 1;
            j += 1;
        } else if a < b {
            i += 1;
        } else {
            j += 1;
        }
    }
    if samples.is_empty() {
        return Err(Error::NoCommonPoint);
    }
    let (at, value) = samples[samples.len() / 2];
    let scale = value.norm().max(f64::MIN_POSITIVE);
    let max_rel_variation = samples.iter().map(|(_, w)| (w - value).norm() / scale).fold(0.0, f64::max);
    Ok(WronskianReport {
        value,
        at,
        max_rel_variation,
    })
}

/// Coefficients of `f_+ = a e^{ikx} + b e^{-ikx}` to the left of the
/// potential, and `r = b/a`, `t = 1/a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringData {
    pub k: WaveNumber,
    pub a: Complex64,
    pub b: Complex64,
    pub r: Complex64,
    pub t: Complex64,
}

impl ScatteringData {
    pub fn from_ab(k: WaveNumber, a: Complex64, b: Complex64) -> Self {
        Self {
            k,
            a,
            b,
            r: b / a,
            t: a.inv(),
        }
    }

    /// `|r|^2 + |t|^2 - 1`.
    pub fn unitarity_defect(&self) -> f64 {
        self.r.norm_sqr() + self.t.norm_sqr() - 1.0
    }
}

/// Plane-wave decomposition `(A, B)` of a state `s` at `x` on a free region:
/// `y = A e^{ikx} + B e^{-ikx}`.
pub(crate) fn plane_wave_coefficients(k: Complex64, x: f64, s: State) -> (Complex64, Complex64) {
    let ik = I * k;
    let a = (ik * s[0] + s[1]) * (-ik * x).exp() / (2.0 * ik);
    let b = (ik * s[0] - s[1]) * (ik * x).exp() / (2.0 * ik);
    (a, b)
}

/// Scattering coefficients together with the independent Wronskian check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringReport {
    pub data: ScatteringData,
    /// `D(k)` from `f_-` integrated across the potential and matched to `f_+`
    /// on the right.
    pub wronskian: Complex64,
    /// `|a - D/(-2ik)| / |a|`.
    pub consistency_gap: f64,
}

pub fn scattering(p: &Potential, k: WaveNumber, tol: f64) -> Result<ScatteringData> {
    Ok(scattering_report(p, k, &JostConfig::with_tail_tol(tol))?.data)
}

pub fn scattering_report(p: &Potential, k: WaveNumber, cfg: &JostConfig) -> Result<ScatteringReport> {
    let kv = k.nonzero()?;
    let x_right = anchor(p, Side::Right, cfg.tail_tol)?;
    let x_left = anchor(p, Side::Left, cfg.tail_tol)?;
    let fp = solve_at(p, Side::Right, kv, x_right, &[x_left], cfg.rtol)?[0];
    let (a, b) = plane_wave_coefficients(kv, x_left, fp);

    let fm = solve_at(p, Side::Left, kv, x_left, &[x_right], cfg.rtol)?[0];
    let e = plane_wave(Side::Right, kv, x_right);
    let d = e[0] * fm[1] - e[1] * fm[0];
    let a_check = d / (-2.0 * I * kv);

    let scale = 1.0 + a.norm();
    if a.norm() < 1e-12 * scale || !a.is_finite() {
        return Err(Error::ExceptionalPoint { re: kv.re, im: kv.im });
    }
    Ok(ScatteringReport {
        data: ScatteringData::from_ab(k, a, b),
        wronskian: d,
        consistency_gap: (a - a_check).norm() / a.norm(),
    })
}

/// `D(k) = W{f_+, f_-}` evaluated at the left anchor.
pub fn jost_wronskian(p: &Potential, k: Complex64, cfg: &JostConfig) -> Result<Complex64> {
    if k == Complex64::new(0.0, 0.0) && !p.is_compact() {
        return Err(Error::InvalidArgument("D(0) needs compact support; use k = i*delta".into()));
    }
    let x_right = anchor(p, Side::Right, cfg.tail_tol)?;
    let x_left = anchor(p, Side::Left, cfg.tail_tol)?;
    let fp = solve_at(p, Side::Right, k, x_right, &[x_left], cfg.rtol)?[0];
    let fm = plane_wave(Side::Left, k, x_left);
    Ok(fp[0] * fm[1] - fp[1] * fm[0])
}

/// `(scattering(V_eps, k), scattering(V, eps k))`; the two agree exactly in
/// `(r, t)` by dilation covariance.
pub fn scaled_scattering_identity(
    p: &Potential,
    eps: f64,
    k: WaveNumber,
    tol: f64,
) -> Result<(ScatteringData, ScatteringData)> {
    let scaled = scattering(&p.scale(eps)?, k, tol)?;
    let unit = scattering(p, k.scaled(eps), tol)?;
    Ok((scaled, unit))
}
