use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::{simulate_with, Axis, FloatMap, Outcome, SimConfig};
use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::models::IterMap;
use crate::orbits::{Stability, REFINE_BUDGET};
use crate::realroots::{interval_eval, isolate_positive_roots, RatInterval, SqfPoly};

/// Absolute distance within which a limit is matched to an equilibrium.
pub const MATCH_TOL: f64 = 1e-3;

/// Bisection steps per basin boundary.
pub const BOUNDARY_STEPS: u32 = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Attractor {
    pub label: String,
    pub value: f64,
    /// Isolating interval of the equilibrium.
    pub enclosure: RatInterval,
    pub stability: Stability,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BasinClass {
    /// Index into [`BasinReport::attractors`].
    Attractor(usize),
    /// Converged to something else; `None` when no period was detected.
    Other {
        period: Option<u32>,
    },
    Escape,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasinInterval {
    pub lo: f64,
    pub hi: f64,
    pub class: BasinClass,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasinReport {
    pub map: String,
    pub attractors: Vec<Attractor>,
    /// Consecutive intervals covering the scanned range.
    pub intervals: Vec<BasinInterval>,
}

impl BasinReport {
    pub fn class_label(&self, c: BasinClass) -> String {
        match c {
            BasinClass::Attractor(i) => self.attractors[i].label.clone(),
            BasinClass::Other { period: Some(p) } => format!("other-period-{p}"),
            BasinClass::Other { period: None } => "other-aperiodic".to_string(),
            BasinClass::Escape => "escape".to_string(),
        }
    }

    /// Intervals of one class, in order.
    pub fn of_class(&self, c: BasinClass) -> Vec<(f64, f64)> {
        self.intervals
            .iter()
            .filter(|b| b.class == c)
            .map(|b| (b.lo, b.hi))
            .collect()
    }

    /// Basin of the attractor nearest to `value`.
    pub fn basin_near(&self, value: f64) -> Option<Vec<(f64, f64)>> {
        let i = self
            .attractors
            .iter()
            .enumerate()
            .min_by(|a, b| {
                (a.1.value - value)
                    .abs()
                    .total_cmp(&(b.1.value - value).abs())
            })?
            .0;
        Some(self.of_class(BasinClass::Attractor(i)))
    }

    /// Columns `x0_lo,x0_hi,class`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x0_lo,x0_hi,class\n");
        for b in &self.intervals {
            let _ = writeln!(out, "{},{},{}", b.lo, b.hi, self.class_label(b.class));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("basin report serializes")
    }
}

/// Positive equilibria that are stable or nonhyperbolic, with exact
/// enclosures. A repeated root of `F(x) - x` has `F' = 1` and is kept as
/// nonhyperbolic.
fn equilibria(map: &IterMap) -> Result<Vec<Attractor>> {
    let c1 = map.cycle_poly(1)?;
    let roots = isolate_positive_roots(&c1)?;
    let sp = SqfPoly::new(&c1)?;
    let fp = map.derivative();
    let one = Rational::one();
    let neg = -&one;
    let mut out = Vec::new();
    for (iv, mult) in roots.iter() {
        let mut r = iv.clone();
        let stability = if mult > 1 {
            Stability::Nonhyperbolic
        } else {
            let mut s = Stability::Nonhyperbolic;
            for _ in 0..=REFINE_BUDGET {
                let m = interval_eval(&fp, &r);
                if m.lo > neg && m.hi < one {
                    s = Stability::Stable;
                    break;
                }
                if m.lo > one || m.hi < neg {
                    s = Stability::Unstable;
                    break;
                }
                if r.is_point() {
                    break;
                }
                r = sp.refine_isolated(&r, &(r.width() * Rational::new(1, 2)));
            }
            s
        };
        if stability == Stability::Unstable {
            continue;
        }
        let r = sp.refine_isolated(&r, &Rational::new(1i64, 1_000_000_000_000i64));
        out.push(Attractor {
            label: String::new(),
            value: r.mid_f64(),
            enclosure: r,
            stability,
        });
    }
    for (i, a) in out.iter_mut().enumerate() {
        a.label = format!("E{}", i + 1);
    }
    Ok(out)
}

fn classify_start(
    map: &FloatMap,
    attractors: &[Attractor],
    x0: f64,
    cfg: &SimConfig,
) -> Result<BasinClass> {
    let t = simulate_with(map, x0, cfg)?;
    Ok(match t.outcome {
        Outcome::Divergent { .. } => BasinClass::Escape,
        Outcome::Periodic { order: 1, points } => {
            let x = points[0];
            attractors
                .iter()
                .enumerate()
                .map(|(i, a)| (i, (a.value - x).abs()))
                .filter(|(_, d)| *d < MATCH_TOL)
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .map(|(i, _)| BasinClass::Attractor(i))
                .unwrap_or(BasinClass::Other { period: Some(1) })
        }
        Outcome::Periodic { order, .. } => BasinClass::Other {
            period: Some(order),
        },
        Outcome::Aperiodic => BasinClass::Other { period: None },
        Outcome::Unclassified => {
            return Err(Error::InsufficientData(format!(
                "window {} too short to classify",
                cfg.window
            )))
        }
    })
}

/// Classify `res` initial states evenly spaced over `[lo, hi]`, merge equal
/// neighbors into intervals and bisect each boundary [`BOUNDARY_STEPS`]
/// times.
pub fn basins(map: &IterMap, lo: f64, hi: f64, res: usize, cfg: &SimConfig) -> Result<BasinReport> {
    let attractors = equilibria(map)?;
    if !attractors.iter().any(|a| a.stability == Stability::Stable) {
        return Err(Error::Domain(format!(
            "{map} has no stable positive equilibrium"
        )));
    }
    let fmap = FloatMap::from_exact(map);
    let axis = Axis::new("x0", lo, hi, res)?;
    let xs = axis.points();
    let classes: Vec<BasinClass> = xs
        .par_iter()
        .map(|&x| classify_start(&fmap, &attractors, x, cfg))
        .collect::<Result<_>>()?;

    let cuts: Vec<usize> = (1..xs.len())
        .filter(|&i| classes[i] != classes[i - 1])
        .collect();
    let bounds: Vec<f64> = cuts
        .par_iter()
        .map(|&i| {
            let (mut a, mut b) = (xs[i - 1], xs[i]);
            let left = classes[i - 1];
            for _ in 0..BOUNDARY_STEPS {
                let m = 0.5 * (a + b);
                if classify_start(&fmap, &attractors, m, cfg)? == left {
                    a = m;
                } else {
                    b = m;
                }
            }
            Ok(0.5 * (a + b))
        })
        .collect::<Result<_>>()?;

    let mut intervals = Vec::with_capacity(cuts.len() + 1);
    let mut start = lo;
    let mut class = classes[0];
    for (&i, &x) in cuts.iter().zip(&bounds) {
        intervals.push(BasinInterval {
            lo: start,
            hi: x,
            class,
        });
        start = x;
        class = classes[i];
    }
    intervals.push(BasinInterval {
        lo: start,
        hi,
        class,
    });
    Ok(BasinReport {
        map: map.to_string(),
        attractors,
        intervals,
    })
}
