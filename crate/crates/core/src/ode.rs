//! Embedded Dormand–Prince 5(4) integrator for `y'' = (V(x) - k^2) y` written
//! as the first-order complex system `(y, y')`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `(y, y')` at a point.
pub type State = [Complex64; 2];

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const MAX_STEPS: usize = 2_000_000;

/// Adaptive integrator state. The accepted step size carries over between
/// calls to [`Integrator::advance`] so consecutive output segments reuse it.
#[derive(Debug, Clone)]
pub struct Integrator {
    pub rtol: f64,
    pub atol: f64,
    h: Option<f64>,
    pub steps: usize,
    pub rejected: usize,
}

impl Integrator {
    pub fn new(rtol: f64, atol: f64) -> Self {
        Self {
            rtol,
            atol,
            h: None,
            steps: 0,
            rejected: 0,
        }
    }

    /// Carries `y` at `x0` to `x1`. `q(x) = V(x) - k^2` must be smooth on the
    /// open interval; callers split at potential breakpoints.
    pub fn advance<Q>(&mut self, q: &Q, x0: f64, y: State, x1: f64) -> Result<State>
    where
        Q: Fn(f64) -> Complex64,
    {
        if x0 == x1 {
            return Ok(y);
        }
        let dir = (x1 - x0).signum();
        let span = (x1 - x0).abs();
        let mut h = self
            .h
            .map(f64::abs)
            .unwrap_or_else(|| 0.05 / (1.0 + q(x0).norm().sqrt()))
            .min(span);
        let rhs = |x: f64, s: &State| -> State { [s[1], q(x) * s[0]] };

        let mut x = x0;
        let mut y = y;
        let mut k1 = rhs(x, &y);
        let mut n = 0;
        loop {
            n += 1;
            if n > MAX_STEPS {
                return Err(Error::StepUnderflow { x });
            }
            let remaining = (x1 - x).abs();
            let last = h >= remaining;
            let hs = if last { remaining } else { h } * dir;

            let comb = |cs: &[(f64, &State)]| -> State {
                let mut out = y;
                for (c, k) in cs {
                    out[0] += k[0] * (hs * c);
                    out[1] += k[1] * (hs * c);
                }
                out
            };
            let k2 = rhs(x + C2 * hs, &comb(&[(A21, &k1)]));
            let k3 = rhs(x + C3 * hs, &comb(&[(A31, &k1), (A32, &k2)]));
            let k4 = rhs(x + C4 * hs, &comb(&[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = rhs(
                x + C5 * hs,
                &comb(&[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            );
            let x_new = if last { x1 } else { x + hs };
            let k6 = rhs(
                x_new,
                &comb(&[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
            );
            let y_new = comb(&[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
            let k7 = rhs(x_new, &y_new);

            // One scale for both components: y and y' pass through zero at
            // different points for oscillatory solutions.
            let size = |s: &State| s[0].norm().max(s[1].norm());
            let sc = self.atol + self.rtol * size(&y).max(size(&y_new));
            let mut err: f64 = 0.0;
            for i in 0..2 {
                let e = (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7) * hs;
                err = err.max(e.norm() / sc);
            }

            if err <= 1.0 {
                self.steps += 1;
                x = x_new;
                y = y_new;
                k1 = k7;
                let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                if !last {
                    h *= grow;
                }
                self.h = Some(h);
                if last {
                    return Ok(y);
                }
            } else {
                self.rejected += 1;
                let shrink = if err.is_finite() { (0.9 * err.powf(-0.2)).clamp(0.1, 0.9) } else { 0.1 };
                h = hs.abs() * shrink;
                if h < 1e-15 * x.abs().max(1.0) {
                    return Err(Error::StepUnderflow { x });
                }
            }
        }
    }
}

/// Exact propagation through a region where `V - k^2` equals the constant
/// `q`: `y'' = q y`.
pub fn propagate_constant(q: Complex64, y: State, h: f64) -> State {
    let (c, s) = cos_sinc(q, h);
    // y(x+h) = c y + s y', y'(x+h) = q s y + c y'
    [y[0] * c + y[1] * s, y[0] * q * s + y[1] * c]
}

/// `cosh(sqrt(q) h)` and `sinh(sqrt(q) h)/sqrt(q)`, regular at `q = 0`.
fn cos_sinc(q: Complex64, h: f64) -> (Complex64, Complex64) {
    let z = q * h * h;
    if z.norm() < 1e-3 {
        // Taylor series in z; truncation error below 1e-19 relative.
        let mut c = Complex64::new(1.0, 0.0);
        let mut s = Complex64::new(1.0, 0.0);
        let mut tc = Complex64::new(1.0, 0.0);
        let mut ts = Complex64::new(1.0, 0.0);
        for n in 1..8 {
            let n = n as f64;
            tc = tc * z / ((2.0 * n - 1.0) * (2.0 * n));
            ts = ts * z / ((2.0 * n) * (2.0 * n + 1.0));
            c += tc;
            s += ts;
        }
        (c, s * h)
    } else {
        let r = q.sqrt();
        let rh = r * h;
        (rh.cosh(), rh.sinh() / r)
    }
}
