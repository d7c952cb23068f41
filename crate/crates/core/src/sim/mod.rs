//! Double-precision iteration: trajectories, period detection, bifurcation
//! diagrams and basins of attraction.

mod basins;
mod bifurcation;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::{IterMap, Model};

pub use basins::{basins, Attractor, BasinClass, BasinInterval, BasinReport};
pub use bifurcation::{bifurcation_1d, bifurcation_2d, Axis, Bif1d, Bif1dRow, BifGrid, PALETTE};

/// Iteration defaults.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SimConfig {
    pub burn_in: usize,
    /// Samples kept after the burn-in; period detection looks at these.
    pub window: usize,
    /// Relative tolerance of the period test.
    pub tol: f64,
    /// `|x|` above this aborts the trajectory as divergent.
    pub divergence: f64,
    /// Periods `1..max_period` are reported; anything else is the
    /// `max_period+` marker.
    pub max_period: u32,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            burn_in: 10_000,
            window: 256,
            tol: 1e-6,
            divergence: 1e6,
            max_period: 24,
        }
    }
}

/// A model instance with floating-point parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FloatMap {
    model: Model,
    params: BTreeMap<String, f64>,
    /// `F` coefficients, low degree first.
    coeffs: [f64; 4],
}

impl FloatMap {
    pub fn new(model: Model, params: BTreeMap<String, f64>) -> Result<Self> {
        for k in params.keys() {
            if !model.param_names().contains(&k.as_str()) {
                return Err(Error::Domain(format!("{model} has no parameter {k}")));
            }
        }
        let get = |n: &str| -> Result<f64> {
            match params.get(n) {
                None => Err(Error::Domain(format!("{model} needs parameter {n}"))),
                Some(v) if !v.is_finite() => {
                    Err(Error::Domain(format!("parameter {n} = {v} is not finite")))
                }
                Some(v) => Ok(*v),
            }
        };
        let coeffs = match model {
            Model::Model1 => {
                let (e, f) = (get("e")?, get("f")?);
                [f * e, 1.0, 0.0, -f]
            }
            Model::Model2 => {
                let (a, b, c, d, k) = (get("a")?, get("b")?, get("c")?, get("d")?, get("K")?);
                [k * a, 1.0 - 2.0 * k * b, 3.0 * k * c, -4.0 * k * d]
            }
        };
        Ok(FloatMap {
            model,
            params,
            coeffs,
        })
    }

    pub fn model1(e: f64, f: f64) -> Result<Self> {
        FloatMap::new(
            Model::Model1,
            [("e", e), ("f", f)]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        )
    }

    pub fn model2(a: f64, b: f64, c: f64, d: f64, k: f64) -> Result<Self> {
        let params = [("a", a), ("b", b), ("c", c), ("d", d), ("K", k)];
        FloatMap::new(
            Model::Model2,
            params
                .into_iter()
                .map(|(n, v)| (n.to_string(), v))
                .collect(),
        )
    }

    /// Model 2 with `(a, b, c, d) = (3.6, 2.4, 0.6, 0.05)`.
    pub fn model2_standard(k: f64) -> Result<Self> {
        FloatMap::model2(3.6, 2.4, 0.6, 0.05, k)
    }

    /// Same parameters rounded to double precision.
    pub fn from_exact(map: &IterMap) -> Self {
        let params = map
            .params()
            .iter()
            .map(|(k, v)| (k.clone(), v.to_f64()))
            .collect();
        FloatMap::new(map.model(), params).expect("exact maps have every parameter")
    }

    pub fn with_param(&self, name: &str, value: f64) -> Result<Self> {
        let mut p = self.params.clone();
        p.insert(name.to_string(), value);
        FloatMap::new(self.model, p)
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.get(name).copied()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let [c0, c1, c2, c3] = self.coeffs;
        ((c3 * x + c2) * x + c1) * x + c0
    }
}

impl fmt::Display for FloatMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, "{} ({})", self.model, ps.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Outcome {
    /// Points in cyclic order starting from the smallest.
    Periodic {
        order: u32,
        points: Vec<f64>,
    },
    Aperiodic,
    /// `|x|` crossed the divergence bound at this step.
    Divergent {
        step: usize,
    },
    /// Too few samples to run period detection.
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub x0: f64,
    pub burn_in: usize,
    pub samples: Vec<f64>,
    pub outcome: Outcome,
}

/// Detected period, or the marker for periods at or above the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Period {
    Order(u32),
    Complex,
}

/// Per-cell or per-parameter classification used by diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Cell {
    Period(u32),
    Complex,
    Divergent,
}

impl Cell {
    /// Palette index: the period itself, or 24 for the complex and divergent
    /// markers.
    pub fn palette_index(self) -> usize {
        match self {
            Cell::Period(p) if (p as usize) < PALETTE.len() - 1 => p as usize,
            _ => PALETTE.len() - 1,
        }
    }

    pub fn label(self, max_period: u32) -> String {
        match self {
            Cell::Period(p) => p.to_string(),
            Cell::Complex => format!("{max_period}+"),
            Cell::Divergent => "escape".to_string(),
        }
    }
}

/// Iterate `burn_in` steps, then record `cfg.window` samples.
pub fn simulate_with(map: &FloatMap, x0: f64, cfg: &SimConfig) -> Result<Trajectory> {
    if cfg.burn_in == 0 || cfg.window == 0 {
        return Err(Error::Domain("burn_in and steps must be at least 1".into()));
    }
    if !x0.is_finite() {
        return Err(Error::Domain(format!("initial state {x0} is not finite")));
    }
    let diverged = |x: f64| !x.is_finite() || x.abs() > cfg.divergence;
    let mut x = x0;
    for step in 0..cfg.burn_in {
        x = map.eval(x);
        if diverged(x) {
            return Ok(Trajectory {
                x0,
                burn_in: cfg.burn_in,
                samples: Vec::new(),
                outcome: Outcome::Divergent { step },
            });
        }
    }
    let mut samples = Vec::with_capacity(cfg.window);
    for i in 0..cfg.window {
        x = map.eval(x);
        if diverged(x) {
            let outcome = Outcome::Divergent {
                step: cfg.burn_in + i,
            };
            return Ok(Trajectory {
                x0,
                burn_in: cfg.burn_in,
                samples,
                outcome,
            });
        }
        samples.push(x);
    }
    let mut t = Trajectory {
        x0,
        burn_in: cfg.burn_in,
        samples,
        outcome: Outcome::Unclassified,
    };
    t.outcome = match detect_period(&t, cfg.max_period, cfg.tol) {
        Ok(Period::Order(p)) => Outcome::Periodic {
            order: p,
            points: cycle_points(&t.samples, p),
        },
        Ok(Period::Complex) => Outcome::Aperiodic,
        Err(Error::InsufficientData(_)) => Outcome::Unclassified,
        Err(e) => return Err(e),
    };
    Ok(t)
}

/// [`simulate_with`] using the default tolerances.
pub fn simulate(map: &FloatMap, x0: f64, burn_in: usize, steps: usize) -> Result<Trajectory> {
    simulate_with(
        map,
        x0,
        &SimConfig {
            burn_in,
            window: steps,
            ..SimConfig::default()
        },
    )
}

/// The last `p` samples, rotated to start at the smallest.
fn cycle_points(samples: &[f64], p: u32) -> Vec<f64> {
    let tail = &samples[samples.len() - p as usize..];
    let start = (0..tail.len())
        .min_by(|&i, &j| tail[i].total_cmp(&tail[j]))
        .unwrap_or(0);
    (0..tail.len())
        .map(|k| tail[(start + k) % tail.len()])
        .collect()
}

/// Smallest `p < max_period` with `|x_{k+p} - x_k| < tol * max(1, |x_k|)`
/// for every `k` in the sample window.
pub fn detect_period(t: &Trajectory, max_period: u32, tol: f64) -> Result<Period> {
    if matches!(t.outcome, Outcome::Divergent { .. }) {
        return Err(Error::Domain(format!("trajectory from {} diverged", t.x0)));
    }
    let xs = &t.samples;
    if xs.len() < 2 * max_period as usize {
        return Err(Error::InsufficientData(format!(
            "{} samples, period detection up to {max_period} needs {}",
            xs.len(),
            2 * max_period
        )));
    }
    for p in 1..max_period as usize {
        if (0..xs.len() - p).all(|k| (xs[k + p] - xs[k]).abs() < tol * xs[k].abs().max(1.0)) {
            return Ok(Period::Order(p as u32));
        }
    }
    Ok(Period::Complex)
}

/// Cell classification of the trajectory from `x0`.
pub fn classify(map: &FloatMap, x0: f64, cfg: &SimConfig) -> Result<Cell> {
    let t = simulate_with(map, x0, cfg)?;
    Ok(match t.outcome {
        Outcome::Divergent { .. } => Cell::Divergent,
        Outcome::Periodic { order, .. } => Cell::Period(order),
        Outcome::Aperiodic => Cell::Complex,
        Outcome::Unclassified => {
            return Err(Error::InsufficientData(format!(
                "window {} too short to classify",
                cfg.window
            )))
        }
    })
}
