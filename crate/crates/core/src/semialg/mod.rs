//! Real solution counting for univariate semi-algebraic systems at fixed
//! parameters, and border polynomials of parametric systems.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{
    discriminant, gcd, resultant, squarefree, Coeff, ParamPoly, Rational, UniPoly,
};
use crate::realroots::{RatInterval, SqfPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    /// `Q > 0`
    Gt,
    /// `Q != 0`
    Ne,
}

impl Relation {
    pub fn holds(self, sign: i32) -> bool {
        match self {
            Relation::Gt => sign > 0,
            Relation::Ne => sign != 0,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Gt => "> 0",
            Relation::Ne => "!= 0",
        })
    }
}

/// `{P = 0, Q_i rel_i 0, [x > 0]}` in one main variable.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiSystem<C: Coeff = Rational> {
    pub equation: UniPoly<C>,
    pub constraints: Vec<(UniPoly<C>, Relation)>,
    pub positive: bool,
}

impl<C: Coeff> SemiSystem<C> {
    pub fn new(equation: UniPoly<C>) -> Self {
        SemiSystem {
            equation,
            constraints: Vec::new(),
            positive: false,
        }
    }

    pub fn gt(mut self, q: UniPoly<C>) -> Self {
        self.constraints.push((q, Relation::Gt));
        self
    }

    /// `q < 0`, stored as `-q > 0`.
    pub fn lt(mut self, q: UniPoly<C>) -> Self {
        self.constraints.push((-&q, Relation::Gt));
        self
    }

    pub fn ne(mut self, q: UniPoly<C>) -> Self {
        self.constraints.push((q, Relation::Ne));
        self
    }

    pub fn positive(mut self) -> Self {
        self.positive = true;
        self
    }

    /// Constraints including `x > 0` when the positivity flag is set.
    pub fn all_constraints(&self) -> Vec<(UniPoly<C>, Relation)> {
        let mut out = self.constraints.clone();
        if self.positive {
            out.push((UniPoly::identity(self.equation.var()), Relation::Gt));
        }
        out
    }
}

impl SemiSystem<ParamPoly> {
    /// Parse `equation` and `(constraint, relation)` pairs in main variable `var`.
    pub fn parse(
        var: &str,
        equation: &str,
        constraints: &[(&str, Relation)],
        positive: bool,
    ) -> Result<Self> {
        let p = |s: &str| -> Result<UniPoly<ParamPoly>> {
            Ok(s.parse::<ParamPoly>()?.to_univariate(var))
        };
        Ok(SemiSystem {
            equation: p(equation)?,
            constraints: constraints
                .iter()
                .map(|(s, r)| Ok((p(s)?, *r)))
                .collect::<Result<_>>()?,
            positive,
        })
    }

    /// Substitute values for every parameter.
    pub fn at(&self, point: &BTreeMap<String, Rational>) -> Result<SemiSystem<Rational>> {
        let sub = |u: &UniPoly<ParamPoly>| -> Result<UniPoly<Rational>> {
            let cs = u
                .coeffs()
                .iter()
                .map(|c| c.eval(point))
                .collect::<Result<Vec<_>>>()?;
            Ok(UniPoly::new(cs, u.var()))
        };
        Ok(SemiSystem {
            equation: sub(&self.equation)?,
            constraints: self
                .constraints
                .iter()
                .map(|(q, r)| Ok((sub(q)?, *r)))
                .collect::<Result<_>>()?,
            positive: self.positive,
        })
    }
}

/// Power of two at least `1 + max |a_i / a_n|`, which bounds every root.
fn cauchy_bound(p: &UniPoly<Rational>) -> Rational {
    let lc = p.leading_coeff().abs();
    let m = p
        .coeffs()
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rational::zero);
    let b = m + Rational::one();
    let mut t = Rational::one();
    while t < b {
        t = t.mul_pow2(1);
    }
    t
}

/// Squarefree part of the equation with constraint roots removed, plus the
/// open gaps between constraint roots on which every constraint holds.
fn prepare(s: &SemiSystem<Rational>) -> Result<Option<Prepared>> {
    if s.equation.is_zero() {
        return Err(Error::Domain("equation polynomial is zero".into()));
    }
    if s.equation.is_constant() {
        return Ok(None);
    }
    let constraints = s.all_constraints();
    // A zero constraint can hold nowhere.
    if constraints.iter().any(|(q, _)| q.is_zero()) {
        return Ok(None);
    }
    // Roots shared with a constraint make it vanish there, so both
    // relations exclude them.
    let mut p = squarefree(&s.equation)?;
    for (q, _) in &constraints {
        let g = gcd(&p, q)?;
        if g.degree().unwrap_or(0) > 0 {
            p = p.exact_div(&g)?;
        }
    }
    if p.is_constant() {
        return Ok(None);
    }
    let sp = SqfPoly::assume_squarefree(&p)?;

    let mut qprod = UniPoly::constant(Rational::one(), p.var());
    for (q, _) in &constraints {
        if !q.is_constant() {
            qprod = &qprod * q;
        }
    }
    // Isolating intervals of the constraint roots, shrunk until P has no
    // root on their closures.
    let mut walls: Vec<RatInterval> = Vec::new();
    if !qprod.is_constant() {
        let qsp = SqfPoly::new(&qprod)?;
        walls = qsp.isolate();
        for w in walls.iter_mut() {
            while sp.count_in(&w.closure()) > 0 {
                *w = qsp.refine_isolated(w, &(w.width() * Rational::new(1, 2)));
            }
        }
    }

    // Open gaps between walls, each with a rational sample point.
    let one = Rational::one();
    let bound = cauchy_bound(&p);
    let mut gaps: Vec<(Rational, Rational, Rational)> = Vec::new();
    let mut prev: Option<Rational> = None;
    for w in &walls {
        match &prev {
            None => {
                let sample = &w.lo - &one;
                let lo = std::cmp::min(-bound.clone(), &sample - &one);
                gaps.push((lo, w.lo.clone(), sample));
            }
            Some(h) if *h < w.lo => {
                gaps.push((h.clone(), w.lo.clone(), Rational::midpoint(h, &w.lo)))
            }
            Some(_) => {}
        }
        prev = Some(w.hi.clone());
    }
    match prev {
        None => gaps.push((-bound.clone(), bound, Rational::zero())),
        Some(h) => {
            let sample = &h + &one;
            let hi = std::cmp::max(bound, &sample + &one);
            gaps.push((h, hi, sample));
        }
    }

    let ok: Vec<(Rational, Rational)> = gaps
        .into_iter()
        .filter(|(_, _, sample)| {
            constraints
                .iter()
                .all(|(q, r)| r.holds(q.eval(sample).signum()))
        })
        .map(|(lo, hi, _)| (lo, hi))
        .collect();
    Ok(Some(Prepared { sp, gaps: ok }))
}

struct Prepared {
    sp: SqfPoly,
    /// Open gaps on which every constraint holds.
    gaps: Vec<(Rational, Rational)>,
}

/// Exact number of distinct real solutions, by sign tabulation of the
/// constraints on the gaps between their roots.
pub fn count_solutions(s: &SemiSystem<Rational>) -> Result<usize> {
    let Some(pre) = prepare(s)? else { return Ok(0) };
    Ok(pre
        .gaps
        .into_iter()
        .map(|(lo, hi)| pre.sp.count_in(&RatInterval::open(lo, hi)))
        .sum())
}

/// Isolated real solutions of a system.
#[derive(Clone, Debug)]
pub struct Solutions {
    /// Sorted, each inside a gap where every constraint holds.
    pub intervals: Vec<RatInterval>,
    /// Squarefree polynomial the intervals isolate roots of, for further
    /// refinement. `None` when there is nothing to isolate.
    pub poly: Option<SqfPoly>,
}

pub fn isolate_solutions(s: &SemiSystem<Rational>) -> Result<Solutions> {
    let Some(pre) = prepare(s)? else {
        return Ok(Solutions {
            intervals: Vec::new(),
            poly: None,
        });
    };
    let gaps: Vec<RatInterval> = pre
        .gaps
        .iter()
        .map(|(lo, hi)| RatInterval::open(lo.clone(), hi.clone()))
        .collect();
    let mut out = Vec::new();
    // Roots of P never sit on a wall, so refinement eventually places each
    // one inside a qualifying gap or away from all of them.
    for mut r in pre.sp.isolate() {
        loop {
            if gaps.iter().any(|g| r.subset_of(g)) {
                out.push(r);
                break;
            }
            if !gaps.iter().any(|g| r.closures_meet(g)) {
                break;
            }
            r = pre
                .sp
                .refine_isolated(&r, &(r.width() * Rational::new(1, 2)));
        }
    }
    Ok(Solutions {
        intervals: out,
        poly: Some(pre.sp),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BorderSource {
    LeadingCoeff,
    Discriminant,
    /// Resultant with the `i`-th constraint.
    Resultant(usize),
    /// Resultant with `x` from the positivity flag.
    Positivity,
}

impl fmt::Display for BorderSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BorderSource::LeadingCoeff => f.write_str("leading coefficient"),
            BorderSource::Discriminant => f.write_str("discriminant"),
            BorderSource::Resultant(i) => write!(f, "resultant with Q{}", i + 1),
            BorderSource::Positivity => f.write_str("resultant with x"),
        }
    }
}

/// Factors of the border polynomial, unexpanded.
#[derive(Clone, Debug, PartialEq)]
pub struct BorderPoly {
    pub factors: Vec<(BorderSource, ParamPoly)>,
}

impl BorderPoly {
    pub fn product(&self) -> ParamPoly {
        self.factors
            .iter()
            .fold(ParamPoly::constant(Rational::one()), |acc, (_, f)| &acc * f)
    }

    pub fn factor(&self, src: &BorderSource) -> Option<&ParamPoly> {
        self.factors.iter().find(|(s, _)| s == src).map(|(_, f)| f)
    }

    /// True when some factor vanishes at `point`.
    pub fn vanishes_at(&self, point: &BTreeMap<String, Rational>) -> Result<bool> {
        for (_, f) in &self.factors {
            if f.eval(point)?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Leading coefficient times discriminant times one resultant per
/// constraint.
pub fn border_polynomial(s: &SemiSystem<ParamPoly>) -> Result<BorderPoly> {
    if s.equation.degree().unwrap_or(0) < 1 {
        return Err(Error::Domain(
            "border polynomial needs an equation of degree at least 1".into(),
        ));
    }
    let mut factors = vec![
        (BorderSource::LeadingCoeff, s.equation.leading_coeff()),
        (BorderSource::Discriminant, discriminant(&s.equation)?),
    ];
    for (i, (q, _)) in s.constraints.iter().enumerate() {
        factors.push((BorderSource::Resultant(i), resultant(&s.equation, q)?));
    }
    if s.positive {
        factors.push((
            BorderSource::Positivity,
            resultant(&s.equation, &UniPoly::identity(s.equation.var()))?,
        ));
    }
    Ok(BorderPoly { factors })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignRow {
    pub probe: Vec<Rational>,
    pub count: usize,
    pub signs: Vec<i32>,
}

/// Solution counts and tracked signs at a list of probes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignReport {
    pub params: Vec<String>,
    pub tracked: Vec<String>,
    pub rows: Vec<SignRow>,
}

fn sign_char(s: i32) -> &'static str {
    match s {
        1 => "+",
        -1 => "-",
        _ => "0",
    }
}

impl SignReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let mut head: Vec<&str> = self.params.iter().map(String::as_str).collect();
        head.push("count");
        head.extend(self.tracked.iter().map(String::as_str));
        out.push_str(&head.join(","));
        out.push('\n');
        for r in &self.rows {
            let mut cells: Vec<String> = r.probe.iter().map(|v| v.to_string()).collect();
            cells.push(r.count.to_string());
            cells.extend(r.signs.iter().map(|&s| sign_char(s).to_string()));
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Count solutions and evaluate the tracked polynomials at each probe.
/// A probe on the border polynomial's zero set is rejected.
pub fn sign_conditions_report(
    s: &SemiSystem<ParamPoly>,
    probes: &[BTreeMap<String, Rational>],
    tracked: &[(String, ParamPoly)],
) -> Result<SignReport> {
    let border = border_polynomial(s)?;
    let params: Vec<String> = probes
        .first()
        .map(|p| p.keys().cloned().collect())
        .unwrap_or_default();
    let rows = probes
        .par_iter()
        .map(|pt| {
            for (src, f) in &border.factors {
                if f.eval(pt)?.is_zero() {
                    return Err(Error::DegenerateProbe(format!(
                        "border factor ({src}) {f} vanishes at {}",
                        fmt_point(pt)
                    )));
                }
            }
            let count = count_solutions(&s.at(pt)?)?;
            let signs = tracked
                .iter()
                .map(|(_, t)| Ok(t.eval(pt)?.signum()))
                .collect::<Result<_>>()?;
            Ok(SignRow {
                probe: params.iter().map(|k| pt[k].clone()).collect(),
                count,
                signs,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SignReport {
        params,
        tracked: tracked.iter().map(|(n, _)| n.clone()).collect(),
        rows,
    })
}

fn fmt_point(pt: &BTreeMap<String, Rational>) -> String {
    let parts: Vec<String> = pt.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("({})", parts.join(", "))
}

/// Model 1 equilibrium stability system: `x^3 - e = 0`, `2 - 3 f x^2 > 0`,
/// `x > 0`.
pub fn model1_equilibrium_system() -> SemiSystem<ParamPoly> {
    SemiSystem::parse("x", "e - x^3", &[("2 - 3*f*x^2", Relation::Gt)], true)
        .expect("built-in system parses")
}

/// Model 2 equilibrium stability system: `P = 0`, `K P' < 0`,
/// `2 + K P' > 0`, `x > 0`, with `P = K(a - 2bx + 3cx^2 - 4dx^3)`.
pub fn model2_equilibrium_system() -> SemiSystem<ParamPoly> {
    let p = |s: &str| {
        s.parse::<ParamPoly>()
            .expect("built-in polynomial parses")
            .to_univariate("x")
    };
    SemiSystem::new(p("K*(a - 2*b*x + 3*c*x^2 - 4*d*x^3)"))
        .lt(p("K*(-2*b + 6*c*x - 12*d*x^2)"))
        .gt(p("2 + K*(-2*b + 6*c*x - 12*d*x^2)"))
        .positive()
}

#[cfg(test)]
mod tests;
