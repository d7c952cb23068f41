//! Certified enumeration of periodic orbits at fixed parameters, stability
//! classification, magnitude measures, and threshold search by bisection.

mod thresholds;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::intpoly::{certainly_coprime, derivative};
use crate::exactalg::{squarefree_decomposition, ParamPoly, Rational, UniPoly};
use crate::models::{
    model1_two_cycle_magnitude, model2_four_cycle_magnitude, model2_standard_abcd,
    model2_three_cycle_magnitude, model2_two_cycle_magnitudes, IterMap, Model,
};
use crate::realroots::{interval_eval, RatInterval, SqfPoly};

pub use thresholds::{
    find_thresholds, find_thresholds_with, ThresholdBracket, ThresholdOptions, ThresholdReport,
};

/// Largest supported period; `3^6 = 729` is the degree guard.
pub const MAX_ORDER: u32 = 6;

/// Halvings allowed when refining an interval for grouping or stability.
pub const REFINE_BUDGET: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Stable,
    Unstable,
    Nonhyperbolic,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Stable => "stable",
            Stability::Unstable => "unstable",
            Stability::Nonhyperbolic => "nonhyperbolic",
        })
    }
}

/// A certified periodic orbit. `points[i]` isolates one root of the cycle
/// polynomial and `F` maps it into `points[i + 1]` (cyclically).
#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    pub order: u32,
    pub points: Vec<RatInterval>,
    pub multiplier: RatInterval,
    pub stability: Stability,
    #[serde(skip)]
    poly: Arc<SqfPoly>,
}

impl PartialEq for Orbit {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.points == other.points
            && self.multiplier == other.multiplier
            && self.stability == other.stability
    }
}

impl Orbit {
    /// The squarefree cycle polynomial whose roots the points isolate.
    pub fn cycle_poly(&self) -> &SqfPoly {
        &self.poly
    }

    /// Shrink `points[i]` to width at most `width`.
    pub fn refine_point(&self, i: usize, width: &Rational) -> RatInterval {
        self.poly.refine_isolated(&self.points[i], width)
    }

    pub fn midpoints_f64(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.mid_f64()).collect()
    }

    /// One-line record: order, point midpoints to `digits` decimals after
    /// refining each point to width `10^-digits`, multiplier enclosure and
    /// stability tag.
    pub fn to_record(&self, digits: u32) -> String {
        let w = Rational::new(1, 10i64.pow(digits.min(18)));
        let pts: Vec<String> = (0..self.points.len())
            .map(|i| self.refine_point(i, &w).midpoint().to_decimal(digits))
            .collect();
        format!(
            "orbit n={} points={} multiplier=[{}, {}] stability={}",
            self.order,
            pts.join(","),
            self.multiplier.lo.to_decimal(digits),
            self.multiplier.hi.to_decimal(digits),
            self.stability
        )
    }
}

/// Orbit and root counts at one parameter point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCounts {
    pub order: u32,
    /// Distinct real roots of `C_n`.
    pub real_roots: usize,
    /// Distinct positive roots of `C_n`, the raw solution count.
    pub positive_roots: usize,
    pub orbits: usize,
    pub stable: usize,
}

impl CycleCounts {
    pub fn pair(&self) -> (usize, usize) {
        (self.orbits, self.stable)
    }
}

/// Full enumeration result, including roots that belong to orbits leaving
/// the positive half-line.
#[derive(Clone, Debug)]
pub struct CycleSet {
    pub order: u32,
    pub poly: Arc<SqfPoly>,
    pub real_roots: usize,
    pub orbits: Vec<Orbit>,
}

impl CycleSet {
    pub fn counts(&self) -> CycleCounts {
        CycleCounts {
            order: self.order,
            real_roots: self.real_roots,
            positive_roots: self.orbits.len() * self.order as usize,
            orbits: self.orbits.len(),
            stable: self
                .orbits
                .iter()
                .filter(|o| o.stability == Stability::Stable)
                .count(),
        }
    }
}

fn check_order(n: u32) -> Result<()> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::Domain(format!(
            "cycle order {n} outside 1..={MAX_ORDER}"
        )));
    }
    Ok(())
}

/// `C_n` as a squarefree integer polynomial, or a nonhyperbolic-parameter
/// error describing the repeated factor.
fn squarefree_cycle_poly(map: &IterMap, n: u32) -> Result<SqfPoly> {
    let c = map.cycle_poly(n)?;
    let sp = SqfPoly::assume_squarefree(&c)?;
    if certainly_coprime(sp.coeffs(), &derivative(sp.coeffs())) == Some(true) {
        return Ok(sp);
    }
    let parts = squarefree_decomposition(&c)?;
    let defect: Vec<String> = parts
        .iter()
        .filter(|(_, m)| *m > 1)
        .map(|(g, m)| {
            format!(
                "factor of degree {} with multiplicity {m}",
                g.degree().unwrap_or(0)
            )
        })
        .collect();
    if defect.is_empty() {
        return Ok(sp);
    }
    Err(Error::Nonhyperbolic(format!(
        "C_{n} at {map} is not squarefree: {}",
        defect.join(", ")
    )))
}

/// Split an interval straddling 0 so that every root interval has a
/// definite sign. 0 itself is a root only if the interval is the point 0.
fn sign_definite(sp: &SqfPoly, i: RatInterval) -> RatInterval {
    let zero = Rational::zero();
    if i.is_point() || !(i.lo < zero && zero < i.hi) {
        return i;
    }
    if sp.sign_at(&zero) == 0 {
        return RatInterval::point(zero);
    }
    let left = RatInterval::open(i.lo.clone(), zero.clone());
    if sp.count_in(&left) == 1 {
        left
    } else {
        RatInterval::open(zero, i.hi)
    }
}

fn is_positive(i: &RatInterval) -> bool {
    i.lo.is_positive() || (i.lo.is_zero() && !i.includes_lo() && !i.is_point())
}

/// Indices of sorted disjoint intervals whose closures meet `j`.
fn meeting(roots: &[RatInterval], j: &RatInterval) -> Vec<usize> {
    let start = roots.partition_point(|r| r.hi < j.lo);
    roots[start..]
        .iter()
        .enumerate()
        .take_while(|(_, r)| r.lo <= j.hi)
        .filter(|(_, r)| r.closures_meet(j))
        .map(|(k, _)| start + k)
        .collect()
}

/// Index of the root interval receiving the root in `roots[i]` under `F`.
fn successor(map: &IterMap, sp: &SqfPoly, roots: &[RatInterval], i: usize) -> Result<usize> {
    let mut src = roots[i].clone();
    for _ in 0..=REFINE_BUDGET {
        let img = interval_eval(map.update(), &src);
        let mut hits = meeting(roots, &img);
        if img.is_point() {
            hits.retain(|&k| roots[k].contains(&img.lo));
        }
        if let [k] = hits[..] {
            if img.subset_of(&roots[k]) {
                return Ok(k);
            }
        }
        if hits.is_empty() {
            return Err(Error::Internal(format!(
                "image {img} of root interval {src} meets no root of C_n"
            )));
        }
        src = sp.refine_isolated(&src, &(src.width() * Rational::new(1, 2)));
    }
    Err(Error::Budget(format!(
        "could not separate the image of root interval {} after {REFINE_BUDGET} halvings",
        roots[i]
    )))
}

/// Enclosure of the product of `F'` over the points.
fn multiplier_enclosure(map: &IterMap, points: &[RatInterval]) -> RatInterval {
    let fp = map.derivative();
    points
        .iter()
        .fold(RatInterval::point(Rational::one()), |acc, p| {
            acc.mul(&interval_eval(&fp, p))
        })
}

fn decide(m: &RatInterval) -> Option<Stability> {
    let one = Rational::one();
    let neg = -one.clone();
    if m.lo > neg && m.hi < one {
        Some(Stability::Stable)
    } else if m.lo > one || m.hi < neg {
        Some(Stability::Unstable)
    } else {
        None
    }
}

/// Refine all points together until the multiplier enclosure decides
/// stability, or the budget runs out.
fn certify_multiplier(
    map: &IterMap,
    sp: &SqfPoly,
    points: &mut [RatInterval],
) -> (RatInterval, Stability) {
    for _ in 0..=REFINE_BUDGET {
        let m = multiplier_enclosure(map, points);
        if let Some(s) = decide(&m) {
            return (m, s);
        }
        if points.iter().all(|p| p.is_point()) {
            return (m, Stability::Nonhyperbolic);
        }
        for p in points.iter_mut() {
            let w = p.width() * Rational::new(1, 2);
            *p = sp.refine_isolated(p, &w);
        }
    }
    (multiplier_enclosure(map, points), Stability::Nonhyperbolic)
}

/// All real roots of `C_n` grouped into orbits; orbits with a nonpositive
/// point are dropped.
pub fn enumerate_cycle_set(map: &IterMap, n: u32) -> Result<CycleSet> {
    check_order(n)?;
    let sp = squarefree_cycle_poly(map, n)?;
    let roots: Vec<RatInterval> = sp
        .isolate()
        .into_iter()
        .map(|i| sign_definite(&sp, i))
        .collect();
    if roots.len() % n as usize != 0 {
        return Err(Error::Internal(format!(
            "{} real roots of C_{n} do not split into orbits",
            roots.len()
        )));
    }
    let succ: Vec<usize> = (0..roots.len())
        .map(|i| successor(map, &sp, &roots, i))
        .collect::<Result<_>>()?;
    let mut seen = vec![false; roots.len()];
    for &k in &succ {
        if std::mem::replace(&mut seen[k], true) {
            return Err(Error::Internal(format!(
                "two roots of C_{n} map into root interval {}",
                roots[k]
            )));
        }
    }

    let sp = Arc::new(sp);
    let mut visited = vec![false; roots.len()];
    let mut orbits = Vec::new();
    for start in 0..roots.len() {
        if visited[start] {
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut k = succ[start];
        while k != start {
            visited[k] = true;
            cycle.push(k);
            k = succ[k];
        }
        if cycle.len() != n as usize {
            return Err(Error::Nonhyperbolic(format!(
                "root of C_{n} near {} has period {} at {map}",
                roots[start],
                cycle.len()
            )));
        }
        // `start` is the smallest index in its cycle, hence the smallest point.
        let mut points: Vec<RatInterval> = cycle.iter().map(|&k| roots[k].clone()).collect();
        if !points.iter().all(is_positive) {
            continue;
        }
        let (multiplier, stability) = certify_multiplier(map, &sp, &mut points);
        orbits.push(Orbit {
            order: n,
            points,
            multiplier,
            stability,
            poly: Arc::clone(&sp),
        });
    }
    Ok(CycleSet {
        order: n,
        poly: sp,
        real_roots: roots.len(),
        orbits,
    })
}

/// All distinct positive `n`-cycles, each starting at its smallest point,
/// sorted by that point.
pub fn enumerate_cycles(map: &IterMap, n: u32) -> Result<Vec<Orbit>> {
    Ok(enumerate_cycle_set(map, n)?.orbits)
}

/// Orbit and stable-orbit counts; any nonhyperbolic orbit is an error.
pub fn cycle_counts(map: &IterMap, n: u32) -> Result<CycleCounts> {
    let set = enumerate_cycle_set(map, n)?;
    if let Some(o) = set
        .orbits
        .iter()
        .find(|o| o.stability == Stability::Nonhyperbolic)
    {
        return Err(Error::Nonhyperbolic(format!(
            "multiplier enclosure {} of the {n}-cycle through {} straddles ±1 at {map}",
            o.multiplier, o.points[0]
        )));
    }
    Ok(set.counts())
}

/// Re-run the stability refinement for `orbit`.
pub fn classify_stability(map: &IterMap, orbit: &Orbit) -> Result<Stability> {
    let mut points = orbit.points.clone();
    let (m, s) = certify_multiplier(map, &orbit.poly, &mut points);
    if s == Stability::Nonhyperbolic {
        return Err(Error::Nonhyperbolic(format!(
            "multiplier enclosure {m} straddles ±1 after {REFINE_BUDGET} halvings"
        )));
    }
    Ok(s)
}

fn magnitude_enclosure(points: &[RatInterval]) -> RatInterval {
    let n = points.len();
    if n == 1 {
        return RatInterval::point(Rational::zero());
    }
    (0..n).fold(RatInterval::point(Rational::zero()), |acc, i| {
        acc.add(&points[(i + 1) % n].sub(&points[i]).square())
    })
}

fn is_model2_standard(map: &IterMap) -> bool {
    map.model() == Model::Model2
        && ["a", "b", "c", "d"]
            .iter()
            .zip(model2_standard_abcd())
            .all(|(k, v)| map.param(k) == Some(&v))
}

/// Known magnitude relations for this map and order, as univariate
/// polynomials in `d`.
fn magnitude_oracles(map: &IterMap, n: u32) -> Vec<UniPoly<Rational>> {
    let in_d = |p: ParamPoly, vals: &[(&str, &Rational)]| -> Option<UniPoly<Rational>> {
        let pt: BTreeMap<String, Rational> = vals
            .iter()
            .map(|(k, v)| (k.to_string(), (*v).clone()))
            .collect();
        p.substitute(&pt).to_rational_univariate("d").ok()
    };
    match (map.model(), n) {
        (Model::Model1, 2) => {
            let (e, f) = (map.param("e").unwrap(), map.param("f").unwrap());
            in_d(model1_two_cycle_magnitude(), &[("e", e), ("f", f)])
                .into_iter()
                .collect()
        }
        (Model::Model2, 2..=4) if is_model2_standard(map) => {
            let k = map.param("K").unwrap();
            let polys: Vec<ParamPoly> = match n {
                2 => model2_two_cycle_magnitudes().to_vec(),
                3 => vec![model2_three_cycle_magnitude()],
                _ => model2_four_cycle_magnitude().to_vec(),
            };
            polys
                .into_iter()
                .filter_map(|p| in_d(p, &[("K", k)]))
                .collect()
        }
        _ => Vec::new(),
    }
}

/// Enclosure of width at most `width` of the magnitude
/// `d = sum (x_{i+1} - x_i)^2`. Where a closed-form magnitude relation is
/// known, the enclosure is also checked to contain one of its roots.
pub fn magnitude(map: &IterMap, orbit: &Orbit, width: &Rational) -> Result<RatInterval> {
    if width.signum() <= 0 {
        return Err(Error::Domain(format!(
            "magnitude width must be positive, got {width}"
        )));
    }
    let mut points = orbit.points.clone();
    let mut enc = magnitude_enclosure(&points);
    let mut rounds = 0;
    while enc.width() > *width {
        if rounds == REFINE_BUDGET * 2 {
            return Err(Error::Budget(format!(
                "magnitude enclosure {enc} did not reach width {width}"
            )));
        }
        rounds += 1;
        for p in points.iter_mut() {
            let w = p.width() * Rational::new(1, 2);
            *p = orbit.poly.refine_isolated(p, &w);
        }
        enc = magnitude_enclosure(&points);
    }
    let oracles = magnitude_oracles(map, orbit.order);
    if !oracles.is_empty() {
        let hit = oracles.iter().any(|g| {
            !g.is_constant()
                && SqfPoly::new(g)
                    .map(|s| s.count_in(&enc.closure()) > 0)
                    .unwrap_or(false)
        });
        if !hit {
            return Err(Error::SelfTest(format!(
                "magnitude enclosure {enc} of the {}-cycle at {map} brackets no root of the closed-form relations",
                orbit.order
            )));
        }
    }
    Ok(enc)
}
