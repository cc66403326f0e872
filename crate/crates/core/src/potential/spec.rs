//! JSON potential specification files.
//!
//! ```json
//! {"kind": "square", "params": {"left": -1, "right": 1, "height": -2.4674}, "coupling": 1}
//! {"kind": "piecewise", "params": [{"left": -1, "right": 0, "height": 2}, {"left": 0, "right": 1, "height": -3}]}
//! {"kind": "table", "params": {"x": [0, 1], "v": [0, 2]}}
//! {"kind": "exp_decay", "params": {"amplitude": 1, "rate": 1}}
//! {"kind": "polynomial", "params": {"left": -1, "right": 1, "coeffs": [0, -1.5]}}
//! {"kind": "zero"}
//! ```

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Potential, Segment, Shape};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub kind: String,
    #[serde(default)]
    pub params: Value,
    #[serde(default = "one")]
    pub coupling: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IntervalParams {
    left: f64,
    right: f64,
    height: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableParams {
    x: Vec<f64>,
    v: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpParams {
    #[serde(default = "one")]
    amplitude: f64,
    #[serde(default = "one")]
    rate: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyParams {
    left: f64,
    right: f64,
    coeffs: Vec<f64>,
}

fn params<T: for<'de> Deserialize<'de>>(kind: &str, v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::InvalidPotential(format!("{kind} params: {e}")))
}

impl PotentialSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidPotential(format!("malformed spec: {e}")))
    }

    pub fn to_potential(&self) -> Result<Potential> {
        if !self.coupling.is_finite() {
            return Err(Error::InvalidPotential("coupling must be finite".into()));
        }
        let p = match self.kind.as_str() {
            "zero" => Potential::zero(),
            "square" => {
                let q: IntervalParams = params("square", &self.params)?;
                Potential::square(q.left, q.right, q.height)?
            }
            "piecewise" => {
                let qs: Vec<IntervalParams> = params("piecewise", &self.params)?;
                Potential::piecewise(
                    qs.into_iter()
                        .map(|q| Segment {
                            left: q.left,
                            right: q.right,
                            height: q.height,
                        })
                        .collect(),
                )?
            }
            "table" => {
                let q: TableParams = params("table", &self.params)?;
                Potential::table(q.x, q.v)?
            }
            "exp_decay" => {
                let q: ExpParams = if self.params.is_null() {
                    ExpParams { amplitude: 1.0, rate: 1.0 }
                } else {
                    params("exp_decay", &self.params)?
                };
                Potential::exp_decay(q.amplitude, q.rate)?
            }
            "polynomial" => {
                let q: PolyParams = params("polynomial", &self.params)?;
                Potential::polynomial(q.left, q.right, q.coeffs)?
            }
            other => return Err(Error::InvalidPotential(format!("unknown potential kind '{other}'"))),
        };
        Ok(p.with_coupling(self.coupling))
    }

    /// Spec of an unscaled, untruncated potential.
    pub fn from_potential(p: &Potential) -> Result<Self> {
        if p.scale_factor() != 1.0 || p.window().is_some() {
            return Err(Error::InvalidArgument(
                "only unscaled, untruncated potentials have a file representation".into(),
            ));
        }
        let (kind, params) = match p.shape() {
            Shape::Zero => ("zero", Value::Null),
            Shape::Square { left, right, height } => {
                ("square", serde_json::json!({"left": left, "right": right, "height": height}))
            }
            Shape::Piecewise(segs) => (
                "piecewise",
                Value::Array(
                    segs.iter()
                        .map(|s| serde_json::json!({"left": s.left, "right": s.right, "height": s.height}))
                        .collect(),
                ),
            ),
            Shape::Table { x, v } => ("table", serde_json::json!({"x": x, "v": v})),
            Shape::ExpDecay { amplitude, rate } => ("exp_decay", serde_json::json!({"amplitude": amplitude, "rate": rate})),
            Shape::Polynomial { left, right, coeffs } => {
                ("polynomial", serde_json::json!({"left": left, "right": right, "coeffs": coeffs}))
            }
        };
        Ok(Self {
            kind: kind.to_string(),
            params,
            coupling: p.coupling(),
        })
    }
}

impl std::str::FromStr for Potential {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PotentialSpec::from_json(s)?.to_potential()
    }
}
