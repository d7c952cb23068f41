use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactalg::{discriminant, resultant, ParamPoly, Rational, UniPoly};

const R1: &str = "108*a^2*d^2 - 108*a*b*c*d + 27*a*c^3 + 32*b^3*d - 9*b^2*c^2";
const R2: &str = "108*K^3*a^2*d^2 - 108*K^3*a*b*c*d + 27*K^3*a*c^3 + 32*K^3*b^3*d \
                  - 9*K^3*b^2*c^2 - 24*K*b*d + 9*K*c^2 - 8*d";
const R3: &str = "8*K*b*d - 3*K*c^2 + 8*d";
// The b^3 term is taken with d^2.
const R4: &str = "432*K^2*a^2*d^3 - 432*K^2*a*b*c*d^2 + 108*K^2*a*c^3*d + 128*K^2*b^3*d^2 \
                  - 36*K^2*b^2*c^2*d + 192*K*b^2*d^2 - 144*K*b*c^2*d + 27*K*c^4 + 64*b*d^2 - 24*c^2*d";
const R5: &str = "(6*a*d*K - b*c*K + c)*(8*K*b*d - 3*K*c^2 + 4*d)";
const R5_EXPANDED: &str = "48*K^2*a*b*d^2 - 18*K^2*a*c^2*d - 8*K^2*b^2*c*d + 3*K^2*b*c^3 \
                           + 24*K*a*d^2 + 4*K*b*c*d - 3*K*c^3 + 4*c*d";
const R6: &str = "48*a*b*d^2 - 18*a*c^2*d - 8*b^2*c*d + 3*b*c^3";

/// Polynomials `R1..R6` in `(a, b, c, d, K)` governing the number and
/// stability of Model 2 equilibria.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityConditionSet {
    pub r: [ParamPoly; 6],
}

impl StabilityConditionSet {
    pub fn r(&self, i: usize) -> &ParamPoly {
        &self.r[i - 1]
    }

    /// Signs of `R1..R6` at a full parameter point.
    pub fn signs(&self, point: &BTreeMap<String, Rational>) -> Result<[i32; 6]> {
        let mut out = [0; 6];
        for (o, r) in out.iter_mut().zip(&self.r) {
            *o = r.eval(point)?.signum();
        }
        Ok(out)
    }

    /// Number of stable equilibria implied by the sign conditions: one when
    /// `R1 R2 < 0`, two when `R1 < 0, R2 < 0, R3 > 0, R4 < 0`, zero otherwise.
    /// `None` on the zero set of `R1 R2`.
    pub fn stable_equilibria(&self, point: &BTreeMap<String, Rational>) -> Result<Option<u32>> {
        let s = self.signs(point)?;
        Ok(match (s[0], s[1]) {
            (0, _) | (_, 0) => None,
            (a, b) if a != b => Some(1),
            (-1, -1) if s[2] > 0 && s[3] < 0 => Some(2),
            _ => Some(0),
        })
    }
}

fn parse(s: &str) -> ParamPoly {
    s.parse().expect("built-in polynomial parses")
}

fn ux(s: &str) -> UniPoly<ParamPoly> {
    parse(s).to_univariate("x")
}

/// Regenerate `R1`, `R2` by elimination, check them against the closed
/// forms, and return all six polynomials.
pub fn model2_condition_polys() -> Result<StabilityConditionSet> {
    let p = ux("K*(a - 2*b*x + 3*c*x^2 - 4*d*x^3)");
    let q1 = ux("K*(-2*b + 6*c*x - 12*d*x^2)");
    let q2 = ux("2 + K*(-2*b + 6*c*x - 12*d*x^2)");
    let r1 = parse(R1);
    let r2 = parse(R2);

    let disc = discriminant(&p)?;
    let res1 = resultant(&p, &q1)?;
    let res2 = resultant(&p, &q2)?;
    let k5d = parse("-16*K^5*d");
    let k2d = parse("-16*K^2*d");
    let check =
        |name: &str, got: &ParamPoly, factor: &ParamPoly, expected: &ParamPoly| -> Result<()> {
            let reduced = got.div_exact(factor).ok_or_else(|| {
                Error::SelfTest(format!("{name}: {factor} does not divide {got}"))
            })?;
            if reduced.equal_up_to_constant(expected) {
                Ok(())
            } else {
                Err(Error::SelfTest(format!(
                    "{name}: regenerated {reduced} differs from {expected}"
                )))
            }
        };
    check("discr(P)", &disc, &k5d, &r1)?;
    check("res(P, Q1)", &res1, &k5d, &r1)?;
    check("res(P, Q2)", &res2, &k2d, &r2)?;

    let r5 = parse(R5);
    if r5 != parse(R5_EXPANDED) {
        return Err(Error::SelfTest("factored and expanded R5 disagree".into()));
    }
    Ok(StabilityConditionSet {
        r: [r1, r2, parse(R3), parse(R4), r5, parse(R6)],
    })
}
