//! Jost solutions of the truncated scaled operator
//! `-d²/dx² + chi_eps(x) eps^-2 V(x/eps)`, `chi_eps` the indicator of
//! `|x| < x_eps`.
//!
//! The line splits into three regions. Outside `[-x_eps, x_eps]` the equation
//! is free; inside, solutions are combinations of the unit-scale Jost
//! solutions `f_±(x/eps, eps k)`. Matching value and slope at `±x_eps` gives
//! the coefficients in closed form, so only `f_±` at `±xi_eps` (and at
//! interior points when kernels are sampled) need to be integrated.
//!
//! ```text
//!   f~_+ :  a+ e^{ikx} + b+ e^{-ikx}  |  c+ f_+ + c- f_-  |  e^{ikx}
//!   f~_- :  e^{-ikx}                  |  d+ f_+ + d- f_-  |  a- e^{-ikx} + b- e^{ikx}
//!                                 -x_eps               x_eps
//! ```

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::jost::{anchor, solve_at, JostConfig, ScatteringData, Side, WaveNumber, I};
use crate::ode::State;
use crate::potential::{Potential, SplittingScale};

/// Coefficients of the three-region construction at one `(eps, k)`.
#[derive(Debug, Clone)]
pub struct TruncatedJost {
    pub k: WaveNumber,
    pub scale: SplittingScale,
    /// `D(eps k)` of the unit-scale potential.
    pub d_unit: Complex64,
    pub c_plus: Complex64,
    pub c_minus: Complex64,
    pub a_plus: Complex64,
    pub b_plus: Complex64,
    pub d_plus: Complex64,
    pub d_minus: Complex64,
    pub a_minus: Complex64,
    pub b_minus: Complex64,
    unit: Potential,
    anchors: (f64, f64),
    cfg: JostConfig,
}

/// Solves `c+ f_+ + c- f_- = g`, `c+ f_+' + c- f_-' = g'` at one point.
fn match_at(fp: State, fm: State, g: State) -> Result<(Complex64, Complex64, Complex64)> {
    let d = fp[0] * fm[1] - fp[1] * fm[0];
    let cp = (g[0] * fm[1] - g[1] * fm[0]) / d;
    let cm = (fp[0] * g[1] - fp[1] * g[0]) / d;
    Ok((cp, cm, d))
}

impl TruncatedJost {
    pub fn new(p: &Potential, eps: f64, k: WaveNumber, cfg: &JostConfig) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::InvalidArgument("k = 0 is not allowed here".into()));
        }
        let scale = p.splitting_scale(eps, cfg.alpha_weight)?;
        let xi = scale.xi_eps;
        let xe = scale.x_eps;
        let kv = k.value();
        let ek = kv * eps;
        let anchors = (anchor(p, Side::Left, cfg.tail_tol)?, anchor(p, Side::Right, cfg.tail_tol)?);
        let fp = solve_at(p, Side::Right, ek, anchors.1, &[-xi, xi], cfg.rtol)?;
        let fm = solve_at(p, Side::Left, ek, anchors.0, &[-xi, xi], cfg.rtol)?;

        // f~_+ : e^{ikx} on the right, matched at u = xi (slopes in u).
        let e = (I * kv * xe).exp();
        let (c_plus, c_minus, d_unit) = match_at(fp[1], fm[1], [e, I * ek * e])?;
        if !(d_unit.norm() > 0.0) || !d_unit.is_finite() {
            return Err(Error::DegenerateWronskian { re: ek.re, im: ek.im });
        }
        let f = c_plus * fp[0][0] + c_minus * fm[0][0];
        let fd = (c_plus * fp[0][1] + c_minus * fm[0][1]) / eps;
        let two_ik = 2.0 * I * kv;
        let a_plus = e * (I * kv * f + fd) / two_ik;
        let b_plus = (I * kv * f - fd) / (e * two_ik);

        // f~_- : e^{-ikx} on the left, matched at u = -xi.
        let (d_plus, d_minus, _) = match_at(fp[0], fm[0], [e, -I * ek * e])?;
        let g = d_plus * fp[1][0] + d_minus * fm[1][0];
        let gd = (d_plus * fp[1][1] + d_minus * fm[1][1]) / eps;
        let a_minus = e * (I * kv * g - gd) / two_ik;
        let b_minus = (I * kv * g + gd) / (e * two_ik);

        Ok(Self {
            k,
            scale,
            d_unit,
            c_plus,
            c_minus,
            a_plus,
            b_plus,
            d_plus,
            d_minus,
            a_minus,
            b_minus,
            unit: p.clone(),
            anchors,
            cfg: *cfg,
        })
    }

    /// `D~_eps(k) = -2ik a+`.
    pub fn wronskian(&self) -> Complex64 {
        -2.0 * I * self.k.value() * self.a_plus
    }

    /// Largest relative disagreement between the three ways of reading off
    /// `D~`: `-2ik a+`, `-2ik a-`, and the region-2 Wronskian
    /// `(c+ d- - c- d+) D(eps k) / eps`.
    pub fn wronskian_gap(&self) -> f64 {
        let w = self.wronskian();
        let ik2 = -2.0 * I * self.k.value();
        let inner = (self.c_plus * self.d_minus - self.c_minus * self.d_plus) * self.d_unit / self.scale.epsilon;
        ((ik2 * self.a_minus - w).norm()).max((inner - w).norm()) / w.norm()
    }

    pub fn scattering(&self) -> ScatteringData {
        ScatteringData::from_ab(self.k, self.a_plus, self.b_plus)
    }

    /// `(f~_+, f~_+')` and `(f~_-, f~_-')` at each point.
    pub fn states(&self, xs: &[f64]) -> Result<(Vec<State>, Vec<State>)> {
        let eps = self.scale.epsilon;
        let xe = self.scale.x_eps;
        let k = self.k.value();
        let ik = I * k;
        let inside: Vec<usize> = (0..xs.len()).filter(|&i| xs[i].abs() < xe).collect();
        let us: Vec<f64> = inside.iter().map(|&i| xs[i] / eps).collect();
        let ek = k * eps;
        let fp = solve_at(&self.unit, Side::Right, ek, self.anchors.1, &us, self.cfg.rtol)?;
        let fm = solve_at(&self.unit, Side::Left, ek, self.anchors.0, &us, self.cfg.rtol)?;

        let wave = |c: Complex64, s: f64, x: f64| -> State {
            let e = (ik * s * x).exp();
            [c * e, c * ik * s * e]
        };
        let add = |p: State, q: State| -> State { [p[0] + q[0], p[1] + q[1]] };
        let mut plus = Vec::with_capacity(xs.len());
        let mut minus = Vec::with_capacity(xs.len());
        let mut j = 0;
        for (i, &x) in xs.iter().enumerate() {
            if j < inside.len() && inside[j] == i {
                let (p, m) = (fp[j], fm[j]);
                let comb = |a: Complex64, b: Complex64| -> State { [a * p[0] + b * m[0], (a * p[1] + b * m[1]) / eps] };
                plus.push(comb(self.c_plus, self.c_minus));
                minus.push(comb(self.d_plus, self.d_minus));
                j += 1;
            } else if x >= xe {
                plus.push(wave(Complex64::new(1.0, 0.0), 1.0, x));
                minus.push(add(wave(self.a_minus, -1.0, x), wave(self.b_minus, 1.0, x)));
            } else {
                plus.push(add(wave(self.a_plus, 1.0, x), wave(self.b_plus, -1.0, x)));
                minus.push(wave(Complex64::new(1.0, 0.0), -1.0, x));
            }
        }
        Ok((plus, minus))
    }
}

/// `(c+, c-, a+, b+)` for the truncated scaled operator.
pub fn truncated_scaled_jost(
    p: &Potential,
    eps: f64,
    k: WaveNumber,
    tol: f64,
) -> Result<(Complex64, Complex64, Complex64, Complex64)> {
    let t = TruncatedJost::new(p, eps, k, &JostConfig::with_tail_tol(tol))?;
    Ok((t.c_plus, t.c_minus, t.a_plus, t.b_plus))
}

/// `r~ = b+/a+`, `t~ = 1/a+`.
pub fn truncated_scaled_scattering(p: &Potential, eps: f64, k: WaveNumber, tol: f64) -> Result<ScatteringData> {
    Ok(TruncatedJost::new(p, eps, k, &JostConfig::with_tail_tol(tol))?.scattering())
}

/// One value of a Green kernel.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GreenKernelSample {
    pub k: WaveNumber,
    pub x: f64,
    pub y: f64,
    pub value: Complex64,
}

/// Resolvent kernel of an operator at a fixed `k`, `Im k > 0`.
pub trait GreenKernel: Sync {
    fn k(&self) -> WaveNumber;

    fn value(&self, x: f64, y: f64) -> Result<Complex64>;

    /// `G(x_i, y_j)` row by row.
    fn matrix(&self, pts: &[f64], exec: Exec) -> Result<Vec<Vec<Complex64>>> {
        exec.map(pts, |&x| pts.iter().map(|&y| self.value(x, y)).collect::<Result<Vec<_>>>())
            .into_iter()
            .collect()
    }

    fn sample(&self, x: f64, y: f64) -> Result<GreenKernelSample> {
        Ok(GreenKernelSample {
            k: self.k(),
            x,
            y,
            value: self.value(x, y)?,
        })
    }
}

pub(crate) fn require_upper_half_plane(k: WaveNumber) -> Result<()> {
    if k.value().im > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "Green kernels need Im k > 0, got k = {}",
            k.value()
        )))
    }
}

/// `G~_eps(x, y) = f~_+(max) f~_-(min) / D~_eps`.
#[derive(Debug, Clone)]
pub struct TruncatedKernel {
    pub jost: TruncatedJost,
}

impl TruncatedKernel {
    pub fn new(p: &Potential, eps: f64, k: WaveNumber, cfg: &JostConfig) -> Result<Self> {
        require_upper_half_plane(k)?;
        Ok(Self {
            jost: TruncatedJost::new(p, eps, k, cfg)?,
        })
    }
}

impl GreenKernel for TruncatedKernel {
    fn k(&self) -> WaveNumber {
        self.jost.k
    }

    fn value(&self, x: f64, y: f64) -> Result<Complex64> {
        let (hi, lo) = (x.max(y), x.min(y));
        let (p, m) = self.jost.states(&[hi, lo])?;
        Ok(p[0][0] * m[1][0] / self.jost.wronskian())
    }

    fn matrix(&self, pts: &[f64], exec: Exec) -> Result<Vec<Vec<Complex64>>> {
        // Separable: one pass over the points gives both factors.
        let (p, m) = self.jost.states(pts)?;
        let w = self.jost.wronskian();
        let n = pts.len();
        Ok(exec.map_range(n, |i| {
            (0..n)
                .map(|j| {
                    let (hi, lo) = if pts[i] >= pts[j] { (i, j) } else { (j, i) };
                    p[hi][0] * m[lo][0] / w
                })
                .collect()
        }))
    }
}

pub fn truncated_green_kernel(
    p: &Potential,
    eps: f64,
    k: WaveNumber,
    x: f64,
    y: f64,
    tol: f64,
) -> Result<GreenKernelSample> {
    TruncatedKernel::new(p, eps, k, &JostConfig::with_tail_tol(tol))?.sample(x, y)
}
