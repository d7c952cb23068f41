use std::fmt;

use log::{debug, info};
use rayon::prelude::*;
use serde::Serialize;

use super::{cycle_counts, CycleCounts};
use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::models::IterMap;
use crate::realroots::RatInterval;

/// One change point of `(orbit count, stable count)` in the swept
/// parameter, with the counts on either side.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdBracket {
    pub bracket: RatInterval,
    pub below: (usize, usize),
    pub above: (usize, usize),
}

impl ThresholdBracket {
    pub fn midpoint_f64(&self) -> f64 {
        self.bracket.mid_f64()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub order: u32,
    pub param: String,
    pub search: RatInterval,
    pub tol: Rational,
    pub brackets: Vec<ThresholdBracket>,
    /// Counts at the first and last probe.
    pub initial: (usize, usize),
    pub last: (usize, usize),
    pub probes: usize,
    /// Probes that landed on a bifurcation and were moved.
    pub retries: Vec<String>,
}

impl ThresholdReport {
    /// Line-oriented text form.
    pub fn to_lines(&self, digits: u32) -> Vec<String> {
        let mut out = vec![format!(
            "thresholds n={} param={} search=[{}, {}] tol={} probes={}",
            self.order,
            self.param,
            self.search.lo.to_decimal(digits),
            self.search.hi.to_decimal(digits),
            self.tol,
            self.probes
        )];
        for (i, b) in self.brackets.iter().enumerate() {
            out.push(format!(
                "m{} bracket=[{}, {}] counts=({},{})->({},{})",
                i + 1,
                b.bracket.lo.to_decimal(digits),
                b.bracket.hi.to_decimal(digits),
                b.below.0,
                b.below.1,
                b.above.0,
                b.above.1
            ));
        }
        for r in &self.retries {
            out.push(format!("retry {r}"));
        }
        out
    }
}

impl fmt::Display for ThresholdReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.to_lines(10) {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ThresholdOptions {
    /// Number of equal cells in the initial probe grid.
    pub grid: usize,
    /// Perturbed retries allowed per probe.
    pub max_retries: u32,
}

impl Default for ThresholdOptions {
    fn default() -> Self {
        ThresholdOptions {
            grid: 16,
            max_retries: 6,
        }
    }
}

struct Probe {
    at: Rational,
    counts: CycleCounts,
    retries: Vec<String>,
}

/// Simplest rational within `frac` of the cell width around `t`.
fn near(t: &Rational, width: &Rational, frac: Rational) -> Rational {
    let r = width * &frac;
    Rational::simplest_between(&(t - &r), &(t + &r))
}

fn probe(
    base: &IterMap,
    param: &str,
    n: u32,
    at: Rational,
    step: &Rational,
    max_retries: u32,
) -> Result<Probe> {
    let mut retries = Vec::new();
    let mut k = at;
    for attempt in 0..=max_retries {
        let map = base.with_param(param, k.clone())?;
        match cycle_counts(&map, n) {
            Ok(counts) => {
                return Ok(Probe {
                    at: k,
                    counts,
                    retries,
                })
            }
            Err(e @ (Error::Nonhyperbolic(_) | Error::Budget(_))) if attempt < max_retries => {
                // Alternate sides so that a probe near an endpoint stays inside.
                let sign = if attempt % 2 == 0 { 1 } else { -1 };
                let moved = &k + &(step * &Rational::from(sign * (attempt as i64 + 1)));
                let msg = format!("{param}={k}: {e}; retried at {param}={moved}");
                info!("{msg}");
                retries.push(msg);
                k = moved;
            }
            Err(e) => return Err(e),
        }
    }
    unreachable!("loop returns on the last attempt")
}

/// Bisect in `param` over `search` for every change of the
/// `(orbit count, stable count)` pair of `n`-cycles, down to brackets of
/// width at most `tol`.
pub fn find_thresholds_with(
    base: &IterMap,
    param: &str,
    n: u32,
    search: &RatInterval,
    tol: &Rational,
    opts: &ThresholdOptions,
) -> Result<ThresholdReport> {
    if tol.signum() <= 0 {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if search.width().signum() <= 0 || opts.grid == 0 {
        return Err(Error::Domain(format!("empty search interval {search}")));
    }
    let step = tol * &Rational::new(1, 10);
    let cell = search.width() * Rational::new(1, opts.grid as i64);
    let grid: Vec<Rational> = (0..=opts.grid)
        .map(|i| {
            let t = &search.lo + &(&cell * &Rational::from(i as i64));
            if i == 0 || i == opts.grid {
                // Keep the endpoints but step inside when the search is open.
                let inward = if i == 0 {
                    search.includes_lo()
                } else {
                    search.includes_hi()
                };
                if inward {
                    t
                } else {
                    let dir = if i == 0 {
                        Rational::new(1, 64)
                    } else {
                        Rational::new(-1, 64)
                    };
                    &t + &(&cell * &dir)
                }
            } else {
                near(&t, &cell, Rational::new(1, 8))
            }
        })
        .collect();
    let mut probes: Vec<Probe> = grid
        .into_par_iter()
        .map(|t| probe(base, param, n, t, &step, opts.max_retries))
        .collect::<Result<_>>()?;
    let mut count = probes.len();

    loop {
        let pending: Vec<usize> = (0..probes.len() - 1)
            .filter(|&i| {
                probes[i].counts.pair() != probes[i + 1].counts.pair()
                    && &probes[i + 1].at - &probes[i].at > *tol
            })
            .collect();
        if pending.is_empty() {
            break;
        }
        debug!("{} brackets pending for n={n}", pending.len());
        let mids: Vec<Rational> = pending
            .iter()
            .map(|&i| {
                let w = &probes[i + 1].at - &probes[i].at;
                near(
                    &Rational::midpoint(&probes[i].at, &probes[i + 1].at),
                    &w,
                    Rational::new(1, 20),
                )
            })
            .collect();
        let fresh: Vec<Probe> = mids
            .into_par_iter()
            .map(|t| probe(base, param, n, t, &step, opts.max_retries))
            .collect::<Result<_>>()?;
        count += fresh.len();
        probes.extend(fresh);
        probes.sort_by(|a, b| a.at.cmp(&b.at));
    }

    let brackets = probes
        .windows(2)
        .filter(|w| w[0].counts.pair() != w[1].counts.pair())
        .map(|w| ThresholdBracket {
            bracket: RatInterval::closed(w[0].at.clone(), w[1].at.clone()),
            below: w[0].counts.pair(),
            above: w[1].counts.pair(),
        })
        .collect();
    Ok(ThresholdReport {
        order: n,
        param: param.to_string(),
        search: search.clone(),
        tol: tol.clone(),
        brackets,
        initial: probes[0].counts.pair(),
        last: probes[probes.len() - 1].counts.pair(),
        probes: count,
        retries: probes
            .iter()
            .flat_map(|p| p.retries.iter().cloned())
            .collect(),
    })
}

/// [`find_thresholds_with`] over `K` with default options.
pub fn find_thresholds(
    base: &IterMap,
    n: u32,
    search: &RatInterval,
    tol: &Rational,
) -> Result<ThresholdReport> {
    find_thresholds_with(base, "K", n, search, tol, &ThresholdOptions::default())
}
