//! Adaptive Gauss–Kronrod (G10/K21) quadrature with a semi-infinite tail driver.

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_352,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_5,
    0.149_445_554_002_916_9,
];

const MAX_INTERVALS: usize = 4000;
const MAX_TAIL_CHUNKS: usize = 80;

/// Integral value with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs: f64,
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut abs = fc.abs() * WGK[10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let abs = abs * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if error > 0.0 {
        // QUADPACK rescaling: the raw |K - G| difference overestimates the
        // error of the Kronrod result for smooth integrands.
        let mean = kronrod * 0.5;
        let mut asc = (fc - mean).abs() * WGK[10];
        for j in 0..10 {
            let dx = half * XGK[j];
            asc += WGK[j] * ((f(center - dx) - mean).abs() + (f(center + dx) - mean).abs());
        }
        let asc = asc * half.abs();
        if asc > 0.0 {
            let scale = (200.0 * error / asc).powf(1.5);
            error = if scale < 1.0 { asc * scale } else { error.min(asc) };
        }
    }
    Panel {
        a,
        b,
        value,
        error,
        abs,
    }
}

/// Integrates `f` over the finite interval `[a, b]`.
///
/// Converges when the summed error estimate is below
/// `max(abs_tol, rel_tol * |I|)` or at the floating-point roundoff floor.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut panels = vec![gk21(&f, lo, hi)];
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let abs: f64 = panels.iter().map(|p| p.abs).sum();
        let floor = 100.0 * f64::EPSILON * abs;
        let target = abs_tol.max(rel_tol * value.abs()).max(floor);
        if error <= target {
            return Ok(Estimate {
                value: sign * value,
                error,
            });
        }
        let (idx, worst) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, p)| (i, *p))
            .expect("at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if panels.len() >= MAX_INTERVALS || mid <= worst.a || mid >= worst.b {
            return Err(Error::Quadrature {
                lo,
                hi,
                achieved: error,
                requested: target,
            });
        }
        panels[idx] = gk21(&f, worst.a, mid);
        panels.push(gk21(&f, mid, worst.b));
    }
}

/// Integrates `f` over `[a, +inf)` when `direction > 0` or `(-inf, a]` when
/// `direction < 0`.
///
/// The half-line is cut into chunks of doubling length; integration stops
/// once two consecutive chunks contribute less than
/// `max(abs_tol, rel_tol * |I|) / 100`. Fails if that never happens.
pub fn integrate_tail<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    direction: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Estimate> {
    let dir = if direction < 0.0 { -1.0 } else { 1.0 };
    let mut total = Estimate { value: 0.0, error: 0.0 };
    let mut start = a;
    let mut len = 1.0;
    let mut small_in_a_row = 0;
    let mut last_chunk = f64::INFINITY;
    for _ in 0..MAX_TAIL_CHUNKS {
        let end = start + dir * len;
        let chunk = integrate(&f, start.min(end), start.max(end), abs_tol * 1e-2, rel_tol)?;
        total.value += chunk.value;
        total.error += chunk.error;
        last_chunk = chunk.value.abs();
        let cutoff = 1e-2 * abs_tol.max(rel_tol * total.value.abs());
        if last_chunk <= cutoff {
            small_in_a_row += 1;
            if small_in_a_row >= 2 {
                total.error += last_chunk;
                return Ok(total);
            }
        } else {
            small_in_a_row = 0;
        }
        start = end;
        len *= 2.0;
        if !start.is_finite() {
            break;
        }
    }
    Err(Error::Quadrature {
        lo: if dir > 0.0 { a } else { f64::NEG_INFINITY },
        hi: if dir > 0.0 { f64::INFINITY } else { a },
        achieved: last_chunk,
        requested: abs_tol,
    })
}
