//! Limits of `-d²/dx² + eps^-2 V(x/eps)` as `eps -> 0`: the Dirichlet-
//! decoupled pair of half-lines when `V` has no zero-energy resonance, and
//! the interface operator `S(theta)` (`y(0+) = theta y(0-)`,
//! `theta y'(0+) = y'(0-)`) when it does. Closed-form scattering data and
//! resolvent kernels, plus a sampled kernel distance for convergence runs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::jost::{JostConfig, ScatteringData, WaveNumber, I};
use crate::potential::Potential;
use crate::resonance::resonance_report_with;
use crate::truncated::{require_upper_half_plane, GreenKernel, GreenKernelSample, TruncatedKernel};

pub const DEFAULT_BOX: f64 = 10.0;
pub const DEFAULT_LATTICE: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LimitOperator {
    Dirichlet,
    Interface { theta: f64 },
}

impl LimitOperator {
    pub fn interface(theta: f64) -> Result<Self> {
        if theta == 0.0 || !theta.is_finite() {
            return Err(Error::InvalidArgument(format!("interface needs finite nonzero theta, got {theta}")));
        }
        Ok(Self::Interface { theta })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Dirichlet => "dirichlet",
            Self::Interface { .. } => "interface",
        }
    }
}

pub fn classify_limit(p: &Potential, threshold: Option<f64>) -> Result<LimitOperator> {
    let report = resonance_report_with(p, threshold, &JostConfig::default())?;
    match report.theta {
        Some(theta) => LimitOperator::interface(theta),
        None => Ok(LimitOperator::Dirichlet),
    }
}

/// Scattering data of the limit operator. For the Dirichlet pair nothing is
/// transmitted: `a` and `b` are infinite (`eps a -> -D(0)`,
/// `eps b -> D(0)`), `r = -1`, `t = 0`.
pub fn limit_scattering(op: LimitOperator, k: WaveNumber) -> ScatteringData {
    match op {
        LimitOperator::Dirichlet => ScatteringData {
            k,
            a: Complex64::new(f64::INFINITY, 0.0),
            b: Complex64::new(f64::NEG_INFINITY, 0.0),
            r: Complex64::new(-1.0, 0.0),
            t: Complex64::new(0.0, 0.0),
        },
        LimitOperator::Interface { theta } => {
            let s = 1.0 + theta * theta;
            ScatteringData {
                k,
                a: Complex64::new((theta + 1.0 / theta) / 2.0, 0.0),
                b: Complex64::new((1.0 / theta - theta) / 2.0, 0.0),
                r: Complex64::new((1.0 - theta * theta) / s, 0.0),
                t: Complex64::new(2.0 * theta / s, 0.0),
            }
        }
    }
}

/// Closed-form resolvent kernel of a limit operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitKernel {
    pub op: LimitOperator,
    pub k: WaveNumber,
}

impl LimitKernel {
    pub fn new(op: LimitOperator, k: WaveNumber) -> Result<Self> {
        require_upper_half_plane(k)?;
        if let LimitOperator::Interface { theta } = op {
            LimitOperator::interface(theta)?;
        }
        Ok(Self { op, k })
    }
}

/// Solutions of `S(theta)`: `phi_+ = e^{ikx}` for `x > 0` and
/// `phi_- = e^{-ikx}` for `x < 0`, continued through the interface.
fn interface_solutions(theta: f64, k: Complex64, x: f64) -> (Complex64, Complex64) {
    let ik = I * k;
    let (e, einv) = ((ik * x).exp(), (-ik * x).exp());
    let (sum, diff) = ((theta + 1.0 / theta) / 2.0, (theta - 1.0 / theta) / 2.0);
    if x >= 0.0 {
        (e, diff * e + sum * einv)
    } else {
        (sum * e - diff * einv, einv)
    }
}

impl GreenKernel for LimitKernel {
    fn k(&self) -> WaveNumber {
        self.k
    }

    fn value(&self, x: f64, y: f64) -> Result<Complex64> {
        let k = self.k.value();
        let ik = I * k;
        Ok(match self.op {
            LimitOperator::Dirichlet => {
                if x * y <= 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    ((ik * (x - y).abs()).exp() - (ik * (x.abs() + y.abs())).exp()) / (-2.0 * ik)
                }
            }
            LimitOperator::Interface { theta } => {
                let w = -ik * (theta + 1.0 / theta);
                let (hi, lo) = (x.max(y), x.min(y));
                interface_solutions(theta, k, hi).0 * interface_solutions(theta, k, lo).1 / w
            }
        })
    }
}

pub fn limit_green_kernel(op: LimitOperator, k: WaveNumber, x: f64, y: f64) -> Result<GreenKernelSample> {
    LimitKernel::new(op, k)?.sample(x, y)
}

/// Free-line kernel `e^{ik|x-y|} / (-2ik)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeKernel(pub WaveNumber);

impl GreenKernel for FreeKernel {
    fn k(&self) -> WaveNumber {
        self.0
    }

    fn value(&self, x: f64, y: f64) -> Result<Complex64> {
        let ik = I * self.0.value();
        Ok((ik * (x - y).abs()).exp() / (-2.0 * ik))
    }
}

/// Sampled Hilbert–Schmidt surrogate `(box^2/n^2 sum |G_A - G_B|^2)^{1/2}`
/// over the cell midpoints of an `n x n` lattice on `[-box, box]^2`.
///
/// A trend indicator for the resolvent distance, not the operator norm.
pub fn kernel_distance(a: &dyn GreenKernel, b: &dyn GreenKernel, bx: f64, n: usize, exec: Exec) -> Result<f64> {
    if a.k() != b.k() {
        return Err(Error::InvalidArgument("kernels belong to different k".into()));
    }
    require_upper_half_plane(a.k())?;
    if n < 2 || !(bx > 0.0 && bx.is_finite()) {
        return Err(Error::InvalidArgument(format!("need box > 0 and n >= 2, got box = {bx}, n = {n}")));
    }
    let h = 2.0 * bx / n as f64;
    let pts: Vec<f64> = (0..n).map(|i| -bx + (i as f64 + 0.5) * h).collect();
    let (ga, gb) = (a.matrix(&pts, exec)?, b.matrix(&pts, exec)?);
    let sum: f64 = ga
        .iter()
        .zip(&gb)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(u, v)| (u - v).norm_sqr()).sum::<f64>())
        .sum();
    Ok((bx * bx / (n * n) as f64 * sum).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub eps: f64,
    pub r_eps: Complex64,
    pub t_eps: Complex64,
    pub kernel_distance: f64,
    pub limit_r: Complex64,
    pub limit_t: Complex64,
    pub limit: LimitOperator,
}

/// Positive, finite, sorted descending, no duplicates.
pub fn normalize_eps_list(eps: &[f64]) -> Result<Vec<f64>> {
    if eps.is_empty() {
        return Err(Error::InvalidArgument("empty eps list".into()));
    }
    if let Some(bad) = eps.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
        return Err(Error::InvalidArgument(format!("eps values must be positive, got {bad}")));
    }
    let mut out = eps.to_vec();
    out.sort_by(|a, b| b.total_cmp(a));
    out.dedup();
    Ok(out)
}

/// `(r~_eps, t~_eps)`, the kernel distance to the classified limit, and the
/// limit `(r, t)`, for each eps (descending).
pub fn convergence_table(
    p: &Potential,
    k: WaveNumber,
    eps_list: &[f64],
    bx: f64,
    n: usize,
    exec: Exec,
) -> Result<Vec<ConvergenceRecord>> {
    let eps_list = normalize_eps_list(eps_list)?;
    let cfg = JostConfig::default();
    let limit = classify_limit(p, None)?;
    let lim = limit_scattering(limit, k);
    let lk = LimitKernel::new(limit, k)?;
    eps_list
        .iter()
        .map(|&eps| {
            let g = TruncatedKernel::new(p, eps, k, &cfg)?;
            let s = g.jost.scattering();
            Ok(ConvergenceRecord {
                eps,
                r_eps: s.r,
                t_eps: s.t,
                kernel_distance: kernel_distance(&g, &lk, bx, n, exec)?,
                limit_r: lim.r,
                limit_t: lim.t,
                limit,
            })
        })
        .collect()
}
