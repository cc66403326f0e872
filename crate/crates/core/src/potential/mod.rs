//! Real potentials on the line, their Faddeev–Marchenko tail diagnostics and
//! the transforms `V -> eps^-2 V(x/eps)` (scaling) and `V -> chi V` (truncation
//! to a symmetric window).

mod spec;

pub use spec::PotentialSpec;

use crate::error::{Error, Result};
use crate::quad::{self, Estimate};

/// Default exponent in the weight `rho(x) = (1 + |x|) / tau(x)^alpha`.
pub const DEFAULT_ALPHA_WEIGHT: f64 = 0.5;

/// Default absolute tolerance for potential quadratures.
pub const DEFAULT_QUAD_TOL: f64 = 1e-12;

const TAIL_REL_TOL: f64 = 1e-13;

/// A constant piece `height` on `[left, right]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub left: f64,
    pub right: f64,
    pub height: f64,
}

/// Base shape of a potential, in unit (unscaled) coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Zero,
    Square { left: f64, right: f64, height: f64 },
    /// Nonoverlapping constant pieces sorted by `left`.
    Piecewise(Vec<Segment>),
    /// Linear interpolation of samples on a strictly increasing grid; zero
    /// outside the grid hull.
    Table { x: Vec<f64>, v: Vec<f64> },
    /// `amplitude * exp(-rate |x|)`.
    ExpDecay { amplitude: f64, rate: f64 },
    /// `sum_i coeffs[i] x^i` on `[left, right]`.
    Polynomial { left: f64, right: f64, coeffs: Vec<f64> },
}

impl Shape {
    fn eval(&self, u: f64) -> f64 {
        match self {
            Shape::Zero => 0.0,
            Shape::Square { left, right, height } => {
                if u >= *left && u <= *right {
                    *height
                } else {
                    0.0
                }
            }
            Shape::Piecewise(segs) => segs
                .iter()
                .find(|s| u >= s.left && u <= s.right)
                .map_or(0.0, |s| s.height),
            Shape::Table { x, v } => {
                let n = x.len();
                if u < x[0] || u > x[n - 1] {
                    return 0.0;
                }
                let i = x.partition_point(|&t| t <= u).clamp(1, n - 1);
                let (x0, x1) = (x[i - 1], x[i]);
                let w = (u - x0) / (x1 - x0);
                v[i - 1] + w * (v[i] - v[i - 1])
            }
            Shape::ExpDecay { amplitude, rate } => amplitude * (-rate * u.abs()).exp(),
            Shape::Polynomial { left, right, coeffs } => {
                if u < *left || u > *right {
                    return 0.0;
                }
                coeffs.iter().rev().fold(0.0, |acc, c| acc * u + c)
            }
        }
    }

    fn support(&self) -> Option<(f64, f64)> {
        match self {
            Shape::Zero => None,
            Shape::Square { left, right, .. } | Shape::Polynomial { left, right, .. } => Some((*left, *right)),
            Shape::Piecewise(segs) => {
                if segs.is_empty() {
                    None
                } else {
                    Some((segs[0].left, segs[segs.len() - 1].right))
                }
            }
            Shape::Table { x, .. } => Some((x[0], x[x.len() - 1])),
            Shape::ExpDecay { .. } => Some((f64::NEG_INFINITY, f64::INFINITY)),
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        match self {
            Shape::Zero => vec![],
            Shape::Square { left, right, .. } | Shape::Polynomial { left, right, .. } => vec![*left, *right],
            Shape::Piecewise(segs) => segs.iter().flat_map(|s| [s.left, s.right]).collect(),
            Shape::Table { x, .. } => x.clone(),
            Shape::ExpDecay { .. } => vec![0.0],
        }
    }
}

/// The four Faddeev–Marchenko tail integrals at a point `x`:
/// `sigma_-(x) = int_{-inf}^x |V|`, `tau_-(x) = int_{-inf}^x (1+|t|)|V|` and
/// their right-hand counterparts over `[x, inf)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailData {
    pub sigma_minus: f64,
    pub sigma_plus: f64,
    pub tau_minus: f64,
    pub tau_plus: f64,
}

/// Half-widths of the window kept by the truncated scaled operator, in the
/// fast variable (`xi_eps`) and the physical variable (`x_eps = eps xi_eps`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplittingScale {
    pub epsilon: f64,
    pub xi_eps: f64,
    pub x_eps: f64,
}

/// A real potential `coupling * scale^-2 * shape(x / scale)`, optionally cut
/// to the window `|x| <= window`.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    shape: Shape,
    coupling: f64,
    scale: f64,
    window: Option<f64>,
}

impl Potential {
    fn from_shape(shape: Shape) -> Self {
        Self {
            shape,
            coupling: 1.0,
            scale: 1.0,
            window: None,
        }
    }

    pub fn zero() -> Self {
        Self::from_shape(Shape::Zero)
    }

    pub fn square(left: f64, right: f64, height: f64) -> Result<Self> {
        check_interval(left, right)?;
        check_finite("height", height)?;
        Ok(Self::from_shape(Shape::Square { left, right, height }))
    }

    pub fn piecewise(mut segments: Vec<Segment>) -> Result<Self> {
        for s in &segments {
            check_interval(s.left, s.right)?;
            check_finite("height", s.height)?;
        }
        segments.sort_by(|a, b| a.left.total_cmp(&b.left));
        for w in segments.windows(2) {
            if w[1].left < w[0].right {
                return Err(Error::InvalidPotential(format!(
                    "overlapping pieces [{}, {}] and [{}, {}]",
                    w[0].left, w[0].right, w[1].left, w[1].right
                )));
            }
        }
        Ok(Self::from_shape(Shape::Piecewise(segments)))
    }

    pub fn table(x: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if x.len() != v.len() {
            return Err(Error::InvalidPotential(format!(
                "table has {} abscissae but {} values",
                x.len(),
                v.len()
            )));
        }
        if x.len() < 2 {
            return Err(Error::InvalidPotential("table needs at least two samples".into()));
        }
        if x.iter().chain(v.iter()).any(|t| !t.is_finite()) {
            return Err(Error::InvalidPotential("table contains non-finite entries".into()));
        }
        if x.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidPotential("table grid must be strictly increasing".into()));
        }
        Ok(Self::from_shape(Shape::Table { x, v }))
    }

    pub fn exp_decay(amplitude: f64, rate: f64) -> Result<Self> {
        check_finite("amplitude", amplitude)?;
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(Error::InvalidPotential(format!("decay rate must be positive, got {rate}")));
        }
        Ok(Self::from_shape(Shape::ExpDecay { amplitude, rate }))
    }

    pub fn polynomial(left: f64, right: f64, coeffs: Vec<f64>) -> Result<Self> {
        check_interval(left, right)?;
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidPotential("non-finite polynomial coefficient".into()));
        }
        Ok(Self::from_shape(Shape::Polynomial { left, right, coeffs }))
    }

    /// Replaces the coupling constant.
    pub fn with_coupling(mut self, alpha: f64) -> Self {
        self.coupling = alpha;
        self
    }

    /// Multiplies the potential by `alpha`.
    pub fn times(&self, alpha: f64) -> Self {
        let mut p = self.clone();
        p.coupling *= alpha;
        p
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// Accumulated dilation factor (1 for an unscaled potential).
    pub fn scale_factor(&self) -> f64 {
        self.scale
    }

    pub fn window(&self) -> Option<f64> {
        self.window
    }

    pub fn eval(&self, x: f64) -> f64 {
        if let Some(w) = self.window {
            if x.abs() > w {
                return 0.0;
            }
        }
        let s = self.scale;
        self.coupling / (s * s) * self.shape.eval(x / s)
    }

    /// Smallest closed interval outside which the potential vanishes
    /// identically; `None` for the zero potential. Ends may be infinite.
    pub fn support(&self) -> Option<(f64, f64)> {
        if self.coupling == 0.0 {
            return None;
        }
        let (a, b) = self.shape.support()?;
        let (mut lo, mut hi) = (a * self.scale, b * self.scale);
        if let Some(w) = self.window {
            lo = lo.max(-w);
            hi = hi.min(w);
        }
        (lo < hi).then_some((lo, hi))
    }

    pub fn is_compact(&self) -> bool {
        self.support().is_none_or(|(lo, hi)| lo.is_finite() && hi.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.support().is_none()
    }

    /// Points where the potential or its derivative may jump, sorted, within
    /// the support (finite support ends included).
    pub fn breakpoints(&self) -> Vec<f64> {
        let Some((lo, hi)) = self.support() else {
            return vec![];
        };
        let mut pts: Vec<f64> = self
            .shape
            .breakpoints()
            .into_iter()
            .map(|b| b * self.scale)
            .filter(|b| *b >= lo && *b <= hi)
            .collect();
        if lo.is_finite() {
            pts.push(lo);
        }
        if hi.is_finite() {
            pts.push(hi);
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// Constant pieces in physical coordinates when the potential is
    /// piecewise constant; `None` otherwise.
    pub fn constant_segments(&self) -> Option<Vec<Segment>> {
        let s = self.scale;
        let f = self.coupling / (s * s);
        let raw: Vec<Segment> = match &self.shape {
            Shape::Zero => vec![],
            Shape::Square { left, right, height } => vec![Segment {
                left: *left,
                right: *right,
                height: *height,
            }],
            Shape::Piecewise(segs) => segs.clone(),
            _ => return None,
        };
        let w = self.window.unwrap_or(f64::INFINITY);
        Some(
            raw.into_iter()
                .map(|g| Segment {
                    left: (g.left * s).max(-w),
                    right: (g.right * s).min(w),
                    height: g.height * f,
                })
                .filter(|g| g.left < g.right && g.height != 0.0)
                .collect(),
        )
    }

    /// `V_eps(x) = eps^-2 V(x / eps)`.
    pub fn scale(&self, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidArgument(format!("scale factor must be positive, got {eps}")));
        }
        let mut p = self.clone();
        p.scale *= eps;
        p.window = p.window.map(|w| w * eps);
        Ok(p)
    }

    /// Restriction to `[-half_width, half_width]`.
    pub fn truncate(&self, half_width: f64) -> Result<Self> {
        if !(half_width > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "truncation half-width must be positive, got {half_width}"
            )));
        }
        let mut p = self.clone();
        p.window = Some(p.window.map_or(half_width, |w| w.min(half_width)));
        Ok(p)
    }

    /// `int_lo^hi g(x, V(x)) dx`, split at breakpoints; either limit may be
    /// infinite. Pieces outside the support contribute nothing.
    pub fn integrate<G>(&self, lo: f64, hi: f64, g: G, abs_tol: f64, rel_tol: f64) -> Result<Estimate>
    where
        G: Fn(f64, f64) -> f64,
    {
        let zero = Estimate { value: 0.0, error: 0.0 };
        let Some((slo, shi)) = self.support() else {
            return Ok(zero);
        };
        let a = lo.max(slo);
        let b = hi.min(shi);
        if a >= b {
            return Ok(zero);
        }
        let f = |x: f64| g(x, self.eval(x));
        let bps = self.breakpoints();
        let mut knots: Vec<f64> = bps.iter().copied().filter(|t| *t > a && *t < b).collect();
        // Infinite ends: finite knots must exist to hang the tails on.
        let left_inf = a.is_infinite();
        let right_inf = b.is_infinite();
        let first = if left_inf {
            knots.first().copied().unwrap_or(if right_inf { 0.0 } else { b })
        } else {
            a
        };
        let last = if right_inf {
            knots.last().copied().unwrap_or(if left_inf { 0.0 } else { a })
        } else {
            b
        };
        knots.retain(|t| *t > first && *t < last);
        let mut nodes = vec![first];
        nodes.extend(knots);
        nodes.push(last);
        nodes.dedup();

        let mut total = zero;
        for w in nodes.windows(2) {
            if w[1] > w[0] {
                let e = quad::integrate(f, w[0], w[1], abs_tol, rel_tol)?;
                total.value += e.value;
                total.error += e.error;
            }
        }
        if left_inf {
            let e = quad::integrate_tail(f, first, -1.0, abs_tol, rel_tol)?;
            total.value += e.value;
            total.error += e.error;
        }
        if right_inf {
            let e = quad::integrate_tail(f, last, 1.0, abs_tol, rel_tol)?;
            total.value += e.value;
            total.error += e.error;
        }
        Ok(total)
    }

    /// `(int V, int x V)` over the line.
    pub fn moments(&self, quad_tol: f64) -> Result<(f64, f64)> {
        let inf = f64::INFINITY;
        let m0 = self.integrate(-inf, inf, |_, v| v, quad_tol, 0.0)?;
        let m1 = self.integrate(-inf, inf, |x, v| x * v, quad_tol, 0.0)?;
        Ok((m0.value, m1.value))
    }

    /// Faddeev–Marchenko norm `int (1+|x|)|V(x)| dx`; `+inf` when a tail
    /// quadrature fails to settle below `quad_tol`.
    pub fn fm_norm(&self, quad_tol: f64) -> Result<f64> {
        let inf = f64::INFINITY;
        match self.integrate(-inf, inf, |x, v| (1.0 + x.abs()) * v.abs(), quad_tol, 0.0) {
            Ok(e) => Ok(e.value),
            Err(Error::Quadrature { lo, hi, .. }) if lo.is_infinite() || hi.is_infinite() => Ok(inf),
            Err(e) => Err(e),
        }
    }

    pub fn tails(&self, x: f64, quad_tol: f64) -> Result<TailData> {
        self.tails_with(x, quad_tol, 0.0)
    }

    fn tails_with(&self, x: f64, abs_tol: f64, rel_tol: f64) -> Result<TailData> {
        let inf = f64::INFINITY;
        let sig = |_: f64, v: f64| v.abs();
        let tau = |x: f64, v: f64| (1.0 + x.abs()) * v.abs();
        Ok(TailData {
            sigma_minus: self.integrate(-inf, x, sig, abs_tol, rel_tol)?.value,
            sigma_plus: self.integrate(x, inf, sig, abs_tol, rel_tol)?.value,
            tau_minus: self.integrate(-inf, x, tau, abs_tol, rel_tol)?.value,
            tau_plus: self.integrate(x, inf, tau, abs_tol, rel_tol)?.value,
        })
    }

    /// `tau_+(x)` with relative accuracy, for anchor searches and weights.
    pub(crate) fn tau_plus(&self, x: f64) -> Result<f64> {
        let tau = |t: f64, v: f64| (1.0 + t.abs()) * v.abs();
        Ok(self.integrate(x, f64::INFINITY, tau, 0.0, TAIL_REL_TOL)?.value)
    }

    pub(crate) fn tau_minus(&self, x: f64) -> Result<f64> {
        let tau = |t: f64, v: f64| (1.0 + t.abs()) * v.abs();
        Ok(self.integrate(f64::NEG_INFINITY, x, tau, 0.0, TAIL_REL_TOL)?.value)
    }

    /// The even weight `rho_V`: `1 + x^2` for compact support, otherwise
    /// `(1 + |x|) / tau(x)^alpha` with `tau(x) = tau_+(|x|) + tau_-(-|x|)`.
    pub fn rho(&self, x: f64, alpha_weight: f64) -> Result<f64> {
        if self.is_compact() {
            return Ok(1.0 + x * x);
        }
        let a = x.abs();
        let tau = self.tau_plus(a)? + self.tau_minus(-a)?;
        Ok((1.0 + a) / tau.powf(alpha_weight))
    }

    /// Solves `rho_V(xi) = 1/eps` for `xi > 0` by bisection.
    pub fn splitting_scale(&self, eps: f64, alpha_weight: f64) -> Result<SplittingScale> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
        }
        if !(alpha_weight > 0.0 && alpha_weight < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "alpha_weight must lie in (0, 1), got {alpha_weight}"
            )));
        }
        let target = 1.0 / eps;
        let rho0 = self.rho(0.0, alpha_weight)?;
        if rho0 >= target {
            return Err(Error::EpsilonTooLarge { eps, eps0: 1.0 / rho0 });
        }
        let mut lo = 0.0;
        let mut hi = 1.0;
        while self.rho(hi, alpha_weight)? <= target {
            lo = hi;
            hi *= 2.0;
            if hi > 1e300 {
                return Err(Error::EpsilonTooLarge { eps, eps0: 1.0 / rho0 });
            }
        }
        while hi - lo > 1e-13 * hi {
            let mid = 0.5 * (lo + hi);
            if self.rho(mid, alpha_weight)? <= target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let xi_eps = 0.5 * (lo + hi);
        Ok(SplittingScale {
            epsilon: eps,
            xi_eps,
            x_eps: eps * xi_eps,
        })
    }

    /// `eps^-1 int_{|s| > xi_eps} |V(s)| ds`: the squared L2 norm of the
    /// part of the scaled potential left outside the truncation window.
    pub fn tail_weight_norm(&self, eps: f64) -> Result<f64> {
        self.tail_weight_norm_with(eps, DEFAULT_ALPHA_WEIGHT, DEFAULT_QUAD_TOL)
    }

    pub fn tail_weight_norm_with(&self, eps: f64, alpha_weight: f64, quad_tol: f64) -> Result<f64> {
        let sc = self.splitting_scale(eps, alpha_weight)?;
        let t = self.tails_with(sc.xi_eps, quad_tol, TAIL_REL_TOL)?;
        let left = self.tails_with(-sc.xi_eps, quad_tol, TAIL_REL_TOL)?;
        Ok((t.sigma_plus + left.sigma_minus) / eps)
    }
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidPotential(format!("{name} must be finite, got {v}")))
    }
}

fn check_interval(left: f64, right: f64) -> Result<()> {
    if left.is_finite() && right.is_finite() && left < right {
        Ok(())
    } else {
        Err(Error::InvalidPotential(format!("invalid interval [{left}, {right}]")))
    }
}
