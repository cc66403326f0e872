//! Zero-energy resonance: `D(0)`, the ratio `theta = f_-(·,0) / f_+(·,0)`,
//! `Ḋ(0)`, and sweeps over the coupling constant.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::jost::{anchor, jost_wronskian, solve_at, uniform_grid, JostConfig, Side, I};
use crate::potential::{Potential, DEFAULT_QUAD_TOL};

/// Imaginary wavenumbers used to reach `k = 0` for non-compact potentials.
pub const EXTRAPOLATION_DELTAS: [f64; 3] = [1e-4, 1e-5, 1e-6];
pub const DEFAULT_ROOT_TOL: f64 = 1e-9;
pub const DEFAULT_DDOT_DELTA: f64 = 1e-3;
const RATIO_TOL: f64 = 1e-6;
const SAMPLES: usize = 401;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonanceReport {
    pub d0: f64,
    pub is_resonant: bool,
    /// `f_- / f_+` averaged where `f_+` is not small; present iff resonant.
    pub theta: Option<f64>,
    /// `y(+inf) / y(-inf)` read off the half-bound state `y = f_+(·, 0)`.
    pub theta_far_field: Option<f64>,
    /// `(x, f_+(x, 0))` across the support when resonant.
    pub halfbound_samples: Option<Vec<(f64, f64)>>,
    pub threshold: f64,
    /// Zero-energy data came from `k = i delta`, `delta -> 0`.
    pub extrapolated: bool,
}

/// `1e-8 (1 + ||V||_FM)`.
pub fn default_threshold(p: &Potential) -> Result<f64> {
    Ok(1e-8 * (1.0 + p.fm_norm(DEFAULT_QUAD_TOL)?))
}

/// Real parts of `f_+(x, k)` and `f_-(x, k)` on `xs`, and `D(k)`, for real
/// potential and `k` zero or on the imaginary axis (where both are real).
struct ZeroEnergy {
    fp: Vec<f64>,
    fm: Vec<f64>,
    d: f64,
}

fn zero_energy(p: &Potential, kappa: f64, xs: &[f64], left: f64, right: f64, cfg: &JostConfig) -> Result<ZeroEnergy> {
    let k = I * kappa;
    let fp = solve_at(p, Side::Right, k, right, xs, cfg.rtol)?;
    let fm = solve_at(p, Side::Left, k, left, xs, cfg.rtol)?;
    // D at the left anchor, where f_- is the exact exponential.
    let at_left = solve_at(p, Side::Right, k, right, &[left], cfg.rtol)?[0];
    let e = (kappa * left).exp();
    let d = at_left[0].re * (-kappa * e) - at_left[1].re * e;
    Ok(ZeroEnergy {
        fp: fp.iter().map(|s| s[0].re).collect(),
        fm: fm.iter().map(|s| s[0].re).collect(),
        d,
    })
}

/// `D(0; p)` for a compactly supported potential: `-f_+'(x_L, 0)`.
pub fn d0_compact(p: &Potential, cfg: &JostConfig) -> Result<f64> {
    let Some((lo, hi)) = p.support() else {
        return Ok(0.0);
    };
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidArgument("D(0) by direct matching needs compact support".into()));
    }
    let s = solve_at(p, Side::Right, Complex64::new(0.0, 0.0), hi, &[lo], cfg.rtol)?[0];
    Ok(-s[1].re)
}

pub fn resonance_report(p: &Potential, threshold: Option<f64>) -> Result<ResonanceReport> {
    resonance_report_with(p, threshold, &JostConfig::default())
}

pub fn resonance_report_with(p: &Potential, threshold: Option<f64>, cfg: &JostConfig) -> Result<ResonanceReport> {
    let threshold = match threshold {
        Some(t) if t > 0.0 => t,
        Some(t) => return Err(Error::InvalidArgument(format!("threshold must be positive, got {t}"))),
        None => default_threshold(p)?,
    };
    let left = anchor(p, Side::Left, cfg.tail_tol)?;
    let right = anchor(p, Side::Right, cfg.tail_tol)?;
    let (lo, hi) = if right > left { (left, right) } else { (-1.0, 1.0) };
    let xs = uniform_grid(lo, hi, SAMPLES);
    let extrapolated = !p.is_compact();

    let z = if extrapolated {
        let runs = EXTRAPOLATION_DELTAS
            .iter()
            .map(|&d| zero_energy(p, d, &xs, left, right, cfg))
            .collect::<Result<Vec<_>>>()?;
        // First-order Richardson on the two smallest deltas (ratio 10).
        let rich = |a: f64, b: f64| (10.0 * b - a) / 9.0;
        let (a, b) = (&runs[1], &runs[2]);
        ZeroEnergy {
            fp: a.fp.iter().zip(&b.fp).map(|(u, v)| rich(*u, *v)).collect(),
            fm: a.fm.iter().zip(&b.fm).map(|(u, v)| rich(*u, *v)).collect(),
            d: rich(a.d, b.d),
        }
    } else {
        zero_energy(p, 0.0, &xs, left, right, cfg)?
    };

    let d0 = z.d;
    let is_resonant = d0.abs() < threshold;
    if !is_resonant {
        return Ok(ResonanceReport {
            d0,
            is_resonant,
            theta: None,
            theta_far_field: None,
            halfbound_samples: None,
            threshold,
            extrapolated,
        });
    }

    let peak = z.fp.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let ratios: Vec<f64> = z
        .fp
        .iter()
        .zip(&z.fm)
        .filter(|(p, _)| p.abs() > 0.1 * peak)
        .map(|(p, m)| m / p)
        .collect();
    let theta = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let spread = ratios.iter().map(|r| (r - theta).abs()).fold(0.0, f64::max) / theta.abs();
    if !(spread <= RATIO_TOL) || theta == 0.0 {
        return Err(Error::Inconsistent(format!(
            "|D(0)| = {:e} is below the threshold but f_-/f_+ varies by {spread:e} relative",
            d0.abs()
        )));
    }
    // f_+ -> 1 at +inf; at -inf it tends to f_+(x_L, 0).
    let theta_far_field = 1.0 / z.fp[0];
    Ok(ResonanceReport {
        d0,
        is_resonant,
        theta: Some(theta),
        theta_far_field: Some(theta_far_field),
        halfbound_samples: Some(xs.iter().copied().zip(z.fp.iter().copied()).collect()),
        threshold,
        extrapolated,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DDotZero {
    pub estimate: Complex64,
    /// `-i (theta + 1/theta)`.
    pub expected: Complex64,
    pub gap: f64,
    pub theta: f64,
}

/// Difference-quotient estimate of `Ḋ(0)` along `k = i delta` and
/// `k = delta e^{i pi/4}`, Richardson-extrapolated, compared with
/// `-i (theta + 1/theta)`.
pub fn d_dot_zero(p: &Potential, delta: f64) -> Result<DDotZero> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidArgument(format!("delta must be positive, got {delta}")));
    }
    let cfg = JostConfig::default();
    let report = resonance_report_with(p, None, &cfg)?;
    let Some(theta) = report.theta else {
        return Err(Error::NotResonant {
            d0: report.d0,
            threshold: report.threshold,
        });
    };
    let d0 = Complex64::new(report.d0, 0.0);
    let mut estimates = Vec::new();
    for dir in [I, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)] {
        let q = |h: f64| -> Result<Complex64> {
            let k = dir * h;
            Ok((jost_wronskian(p, k, &cfg)? - d0) / k)
        };
        // Two Richardson levels on h, h/2, h/4: q(h) = Ḋ + c1 h + c2 h^2 + ...
        let (q1, q2, q4) = (q(delta)?, q(delta / 2.0)?, q(delta / 4.0)?);
        let r1 = 2.0 * q2 - q1;
        let r2 = 2.0 * q4 - q2;
        estimates.push((4.0 * r2 - r1) / 3.0);
    }
    let estimate = (estimates[0] + estimates[1]) / 2.0;
    let expected = -I * (theta + 1.0 / theta);
    Ok(DDotZero {
        estimate,
        expected,
        gap: (estimate - expected).norm(),
        theta,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingRoot {
    pub alpha: f64,
    pub bracket: (f64, f64),
    pub residual: f64,
    /// `alpha = 0`: the zero potential, resonant with `theta = 1`.
    pub trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingSweep {
    pub alphas: Vec<f64>,
    pub d0: Vec<f64>,
    pub roots: Vec<CouplingRoot>,
    pub warnings: Vec<String>,
}

impl CouplingSweep {
    pub fn nontrivial_roots(&self) -> impl Iterator<Item = &CouplingRoot> {
        self.roots.iter().filter(|r| !r.trivial)
    }
}

/// Locates `alpha` in `[alpha_min, alpha_max]` with `alpha * base` resonant:
/// sign changes of `D(0; alpha)` on a uniform grid, refined by bisection.
pub fn resonant_couplings(
    base: &Potential,
    alpha_min: f64,
    alpha_max: f64,
    grid_n: usize,
    root_tol: f64,
    exec: Exec,
) -> Result<CouplingSweep> {
    if !base.is_compact() {
        return Err(Error::InvalidArgument("coupling sweeps need a compactly supported base".into()));
    }
    if !(alpha_min.is_finite() && alpha_max.is_finite() && alpha_min < alpha_max) {
        return Err(Error::InvalidArgument(format!("bad coupling range [{alpha_min}, {alpha_max}]")));
    }
    if grid_n < 2 {
        return Err(Error::InvalidArgument("coupling grid needs at least 2 points".into()));
    }
    if !(root_tol > 0.0) {
        return Err(Error::InvalidArgument(format!("root_tol must be positive, got {root_tol}")));
    }
    let cfg = JostConfig::default();
    let d_at = |a: f64| d0_compact(&base.times(a), &cfg);
    let alphas = uniform_grid(alpha_min, alpha_max, grid_n);
    let d0 = exec.map(&alphas, |&a| d_at(a)).into_iter().collect::<Result<Vec<f64>>>()?;

    let mut brackets = Vec::new();
    let mut exact = Vec::new();
    for i in 0..grid_n {
        if d0[i] == 0.0 {
            exact.push(i);
        } else if i + 1 < grid_n && d0[i + 1] != 0.0 && d0[i].signum() != d0[i + 1].signum() {
            brackets.push((alphas[i], alphas[i + 1], d0[i]));
        }
    }
    let refined = exec
        .map(&brackets, |&(lo, hi, dlo)| bisect(&d_at, lo, hi, dlo, root_tol))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let mut roots: Vec<CouplingRoot> = exact
        .into_iter()
        .map(|i| CouplingRoot {
            alpha: alphas[i],
            bracket: (alphas[i], alphas[i]),
            residual: 0.0,
            trivial: alphas[i] == 0.0,
        })
        .chain(refined)
        .collect();
    if alpha_min < 0.0 && alpha_max > 0.0 && !roots.iter().any(|r| r.alpha == 0.0) {
        roots.push(CouplingRoot {
            alpha: 0.0,
            bracket: (0.0, 0.0),
            residual: 0.0,
            trivial: true,
        });
    }
    roots.sort_by(|a, b| a.alpha.total_cmp(&b.alpha));

    Ok(CouplingSweep {
        warnings: coarse_grid_warnings(&alphas, &d0),
        alphas,
        d0,
        roots,
    })
}

fn bisect<F: Fn(f64) -> Result<f64>>(f: &F, lo: f64, hi: f64, flo: f64, tol: f64) -> Result<CouplingRoot> {
    let bracket = (lo, hi);
    let (mut lo, mut hi) = (lo, hi);
    let mut mid = 0.5 * (lo + hi);
    let mut fmid = f(mid)?;
    while hi - lo > tol || fmid.abs() >= tol {
        if fmid == 0.0 {
            break;
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
        let next = 0.5 * (lo + hi);
        if next <= lo || next >= hi {
            break;
        }
        mid = next;
        fmid = f(mid)?;
    }
    Ok(CouplingRoot {
        alpha: mid,
        bracket,
        residual: fmid.abs(),
        trivial: false,
    })
}

/// Flags spots where a parabola through three samples of one sign dips
/// through zero between them: two nearby roots the grid cannot separate.
fn coarse_grid_warnings(alphas: &[f64], d: &[f64]) -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..d.len().saturating_sub(1) {
        let (y0, y1, y2) = (d[i - 1], d[i], d[i + 1]);
        if y0 == 0.0 || y1 == 0.0 || y2 == 0.0 {
            continue;
        }
        if y0.signum() != y1.signum() || y1.signum() != y2.signum() {
            continue;
        }
        let curv = y0 - 2.0 * y1 + y2;
        if curv == 0.0 || curv.signum() != y1.signum() {
            continue;
        }
        // vertex of the parabola in units of the grid step from alpha_i
        let s = (y0 - y2) / (2.0 * curv);
        if s.abs() > 1.0 {
            continue;
        }
        let extremum = y1 - curv * s * s / 2.0;
        if extremum.signum() != y1.signum() {
            out.push(format!(
                "D(0; alpha) may cross zero twice between alpha = {} and {}; refine the grid",
                alphas[i - 1],
                alphas[i + 1]
            ));
        }
    }
    out
}
