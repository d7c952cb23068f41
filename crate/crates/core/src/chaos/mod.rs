//! Li-Yorke chaos certificates: a 3-cycle (period three implies chaos) and,
//! for Model 1, a snapback repeller in the one-dimensional Marotto-Li-Chen
//! form.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{gcd, resultant, ParamPoly, Rational, UniPoly};
use crate::models::{IterMap, Model};
use crate::orbits::{enumerate_cycles, Orbit, REFINE_BUDGET};
use crate::realroots::{interval_eval, RatInterval, SqfPoly};
use crate::semialg::{isolate_solutions, Relation, SemiSystem};

/// Largest snapback step count accepted. The preimage polynomial has degree
/// `3^(m+1)`.
pub const MAX_SNAPBACK_STEPS: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChaosMethod {
    Period3,
    Snapback,
}

impl fmt::Display for ChaosMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChaosMethod::Period3 => "period3",
            ChaosMethod::Snapback => "snapback",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum Witness {
    Cycle(Orbit),
    /// Repelling equilibrium `x` and a point `y != x` with `F^m(y) = x`.
    Snapback {
        equilibrium: RatInterval,
        preimage: RatInterval,
        m: u32,
    },
}

/// A strict condition together with the enclosure that certifies it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifiedCondition {
    pub statement: String,
    pub enclosure: RatInterval,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChaosCertificate {
    pub method: ChaosMethod,
    pub witness: Witness,
    pub verified_conditions: Vec<VerifiedCondition>,
}

fn fmt_interval(i: &RatInterval, digits: u32) -> String {
    format!("[{}, {}]", i.lo.to_decimal(digits), i.hi.to_decimal(digits))
}

impl ChaosCertificate {
    /// Text report: a header, the witness, then one line per verified
    /// condition with its enclosure.
    pub fn to_report(&self, digits: u32) -> String {
        let mut out = format!("certificate method={}\n", self.method);
        match &self.witness {
            Witness::Cycle(o) => {
                let pts: Vec<String> = o.points.iter().map(|p| fmt_interval(p, digits)).collect();
                out.push_str(&format!(
                    "witness cycle n={} points={}\n",
                    o.order,
                    pts.join(",")
                ));
            }
            Witness::Snapback {
                equilibrium,
                preimage,
                m,
            } => {
                out.push_str(&format!(
                    "witness snapback m={m} equilibrium={} preimage={}\n",
                    fmt_interval(equilibrium, digits),
                    fmt_interval(preimage, digits)
                ));
            }
        }
        for c in &self.verified_conditions {
            out.push_str(&format!(
                "verified {} enclosure={}\n",
                c.statement,
                fmt_interval(&c.enclosure, digits)
            ));
        }
        out
    }
}

impl fmt::Display for ChaosCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_report(12))
    }
}

/// The enclosure clears zero by at least its own width.
fn clears(e: &RatInterval, rel: Relation) -> bool {
    let w = e.width();
    let above = e.lo.is_positive() && e.lo >= w;
    let below = e.hi.is_negative() && -e.hi.clone() >= w;
    match rel {
        Relation::Gt => above,
        Relation::Ne => above || below,
    }
}

fn halve(sp: &SqfPoly, r: &RatInterval) -> RatInterval {
    sp.refine_isolated(r, &(r.width() * Rational::new(1, 2)))
}

/// Refine `root` until `g` over it clears zero under `rel`.
fn certify_at(
    sp: &SqfPoly,
    root: &mut RatInterval,
    g: &UniPoly<Rational>,
    rel: Relation,
    statement: &str,
) -> Result<VerifiedCondition> {
    for _ in 0..=2 * REFINE_BUDGET {
        let e = interval_eval(g, root);
        if clears(&e, rel) {
            return Ok(VerifiedCondition {
                statement: format!("{statement} {rel}"),
                enclosure: e,
            });
        }
        if root.is_point() {
            break;
        }
        *root = halve(sp, root);
    }
    Err(Error::Budget(format!(
        "could not certify {statement} {rel} near {root}"
    )))
}

/// Sign of `g` at the root isolated by `root`, known to be nonzero.
fn sign_at_root(sp: &SqfPoly, root: &mut RatInterval, g: &UniPoly<Rational>) -> Result<i32> {
    for _ in 0..=2 * REFINE_BUDGET {
        let e = interval_eval(g, root);
        if e.lo.is_positive() {
            return Ok(1);
        }
        if e.hi.is_negative() {
            return Ok(-1);
        }
        if root.is_point() {
            break;
        }
        *root = halve(sp, root);
    }
    Err(Error::Budget(format!("sign of {g} undecided near {root}")))
}

/// A 3-cycle witness, or `None` when there are no positive 3-cycles.
pub fn certify_period3(map: &IterMap) -> Result<Option<ChaosCertificate>> {
    let orbits = enumerate_cycles(map, 3)?;
    let Some(orbit) = orbits.into_iter().next() else {
        return Ok(None);
    };
    let x = UniPoly::identity("x");
    let sp = orbit.cycle_poly().clone();
    let mut points = orbit.points.clone();
    let mut conds = Vec::new();
    for i in 0..3 {
        conds.push(certify_at(
            &sp,
            &mut points[i],
            &x,
            Relation::Gt,
            &format!("x{i}"),
        )?);
    }
    for i in 0..3 {
        let j = (i + 1) % 3;
        let mut src = points[i].clone();
        let mut done = false;
        for _ in 0..=2 * REFINE_BUDGET {
            let img = interval_eval(map.update(), &src);
            if img.subset_of(&points[j]) {
                conds.push(VerifiedCondition {
                    statement: format!("F(x{i}) in {}", fmt_interval(&points[j], 12)),
                    enclosure: img,
                });
                done = true;
                break;
            }
            if src.is_point() {
                break;
            }
            src = halve(&sp, &src);
        }
        if !done {
            return Err(Error::Budget(format!(
                "image of 3-cycle point {} not separated",
                points[i]
            )));
        }
    }
    Ok(Some(ChaosCertificate {
        method: ChaosMethod::Period3,
        witness: Witness::Cycle(orbit),
        verified_conditions: conds,
    }))
}

/// An isolating interval for `sp` around `r` that is not a single point.
fn open_isolator(sp: &SqfPoly, r: RatInterval) -> RatInterval {
    if !r.is_point() {
        return r;
    }
    let mut h = Rational::new(1, 1 << 20);
    loop {
        let i = RatInterval::open(&r.lo - &h, &r.lo + &h);
        if sp.count_in(&i) == 1 {
            return i;
        }
        h = h * Rational::new(1, 2);
    }
}

/// Snapback-repeller certificate for Model 1 with `m` steps from the
/// preimage to the equilibrium.
///
/// The equilibrium coordinate is eliminated with `res_x(x^3 - e, F^m(y) - x)`
/// and the preimage is counted on
/// `{R(y) = 0, F'(y)^2 - 1 > 0, F'(F^k(y)) != 0 (1 <= k < m), y^3 - e != 0, y > 0}`.
/// For `y > 0` the squared condition is `y > sqrt(2/(3f))`, the same
/// half-line that holds the repelling equilibrium, so a closed interval
/// containing both with `|F'| > 1` on it exists.
///
/// Parameters where the equilibrium has `|F'(x)| = 1`, or where a preimage
/// condition degenerates (a border factor of the `y` system vanishes), are
/// [`Error::Undetermined`].
pub fn certify_snapback(map: &IterMap, m: u32) -> Result<Option<ChaosCertificate>> {
    if map.model() != Model::Model1 {
        return Err(Error::Domain(format!(
            "snapback certification is implemented for Model 1, got {map}"
        )));
    }
    if !(2..=MAX_SNAPBACK_STEPS).contains(&m) {
        return Err(Error::Domain(format!(
            "snapback steps m = {m} outside 2..={MAX_SNAPBACK_STEPS}"
        )));
    }
    let e = map.param("e").expect("Model 1 has e").clone();
    let f = map.param("f").expect("Model 1 has f").clone();
    let fp = map.derivative().with_var("y");
    // 3 f t^2 - 2, positive exactly where |F'(t)| > 1 for t > 0.
    let rep = |v: &str| {
        UniPoly::new(
            vec![
                Rational::from(-2),
                Rational::zero(),
                &f * &Rational::from(3),
            ],
            v,
        )
    };
    let cube = |v: &str| {
        UniPoly::new(
            vec![
                -e.clone(),
                Rational::zero(),
                Rational::zero(),
                Rational::one(),
            ],
            v,
        )
    };

    // Repelling equilibrium.
    let eq_poly = cube("x");
    if !gcd(&eq_poly, &rep("x"))?.is_constant() {
        return Err(Error::Undetermined(format!(
            "equilibrium of {map} has |F'| = 1"
        )));
    }
    let eq_sp = SqfPoly::new(&eq_poly)?;
    let mut xs = eq_sp.isolate_positive();
    let Some(x0) = xs.pop() else {
        return Err(Error::Internal(format!("x^3 - {e} has no positive root")));
    };
    let mut x_int = x0;
    let id_x = UniPoly::identity("x");
    let x_pos = certify_at(&eq_sp, &mut x_int, &id_x, Relation::Gt, "x")?;
    if sign_at_root(&eq_sp, &mut x_int, &rep("x"))? < 0 {
        return Ok(None);
    }
    let x_rep = certify_at(&eq_sp, &mut x_int, &rep("x"), Relation::Gt, "3*f*x^2 - 2")?;

    // Eliminate x.
    let g = map.power(m).with_var("y");
    let gx = UniPoly::new(
        vec![
            ParamPoly::from_univariate(&g),
            ParamPoly::constant(-Rational::one()),
        ],
        "x",
    );
    let ex = eq_poly.map_coeffs(|c| ParamPoly::constant(c.clone()));
    let r = resultant(&ex, &gx)?.to_rational_univariate("y")?;
    if r.is_zero() {
        return Err(Error::Internal(format!(
            "elimination of x for {map} gave a zero resultant"
        )));
    }

    let sq_minus_one = { &(&fp * &fp) - &UniPoly::constant(Rational::one(), "y") };
    let nonzero: Vec<UniPoly<Rational>> = (1..m)
        .map(|k| fp.compose(&map.power(k).with_var("y")))
        .collect::<Result<_>>()?;
    let mut sys = SemiSystem::new(r.clone()).gt(sq_minus_one.clone());
    for nk in &nonzero {
        sys = sys.ne(nk.clone());
    }
    sys = sys.ne(cube("y")).positive();

    // Border factors that signal a degenerate preimage.
    let degenerate = |q: &UniPoly<Rational>| -> Result<bool> { Ok(!gcd(&r, q)?.is_constant()) };
    if degenerate(&rep("y"))?
        || nonzero
            .iter()
            .map(degenerate)
            .collect::<Result<Vec<_>>>()?
            .contains(&true)
    {
        return Err(Error::Undetermined(format!(
            "a snapback condition degenerates at {map}"
        )));
    }
    if !gcd(&r, &r.derivative())?.is_constant() {
        return Err(Error::Undetermined(format!(
            "preimage polynomial has a repeated root at {map}"
        )));
    }

    let sol = isolate_solutions(&sys)?;
    let (Some(y0), Some(ysp)) = (sol.intervals.first().cloned(), sol.poly) else {
        return Ok(None);
    };
    let mut y = y0;
    let id_y = UniPoly::identity("y");
    let mut conds = vec![x_pos, x_rep];
    conds.push(certify_at(&ysp, &mut y, &id_y, Relation::Gt, "y")?);
    conds.push(certify_at(
        &ysp,
        &mut y,
        &rep("y"),
        Relation::Gt,
        "3*f*y^2 - 2",
    )?);
    for (k, nk) in nonzero.iter().enumerate() {
        conds.push(certify_at(
            &ysp,
            &mut y,
            nk,
            Relation::Ne,
            &format!("F'(F^{}(y))", k + 1),
        )?);
    }
    conds.push(certify_at(
        &ysp,
        &mut y,
        &cube("y"),
        Relation::Ne,
        "y^3 - e",
    )?);
    // Refinement may have snapped a rational equilibrium to a point.
    let x_int = open_isolator(&eq_sp, x_int);
    let gy = map.power(m);
    let mut landed = None;
    for _ in 0..=2 * REFINE_BUDGET {
        let img = interval_eval(&gy, &y);
        if img.subset_of(&x_int) {
            landed = Some(img);
            break;
        }
        if y.is_point() {
            break;
        }
        y = halve(&ysp, &y);
    }
    let Some(img) = landed else {
        return Err(Error::Budget(format!(
            "F^{m} of preimage {y} not inside equilibrium interval {x_int}"
        )));
    };
    conds.push(VerifiedCondition {
        statement: format!("F^{m}(y) in {}", fmt_interval(&x_int, 12)),
        enclosure: img,
    });
    Ok(Some(ChaosCertificate {
        method: ChaosMethod::Snapback,
        witness: Witness::Snapback {
            equilibrium: x_int,
            preimage: y,
            m,
        },
        verified_conditions: conds,
    }))
}

#[cfg(test)]
mod tests;
