//! Certified real-root isolation, counting and refinement over the
//! rationals, plus rational interval arithmetic.

mod descartes;
mod interval;
mod sturm;

use rug::Integer;

pub use interval::{IntervalKind, RatInterval};

use crate::error::{Error, Result};
use crate::exactalg::intpoly::{self, primitive_part};
use crate::exactalg::{squarefree_decomposition, Rational, UniPoly};
use descartes::{
    affine_to_unit, count_unit, isolate_unit, reflect, root_bound_log2, scale_pow2, UnitRoot,
};

/// Degree above which counting switches from Sturm sequences to Descartes
/// bisection.
const STURM_MAX_DEGREE: usize = 48;

/// Isolated real roots of a polynomial, sorted increasingly.
#[derive(Clone, Debug, PartialEq)]
pub struct RootList {
    pub polynomial: UniPoly<Rational>,
    pub intervals: Vec<RatInterval>,
    pub multiplicities: Vec<u32>,
}

impl RootList {
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RatInterval, u32)> {
        self.intervals
            .iter()
            .zip(self.multiplicities.iter().copied())
    }

    /// Number of roots counted with multiplicity.
    pub fn total_multiplicity(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    pub fn all_simple(&self) -> bool {
        self.multiplicities.iter().all(|&m| m == 1)
    }
}

/// A squarefree polynomial with coprime integer coefficients, the working
/// form for sign evaluation and bisection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqfPoly {
    coeffs: Vec<Integer>,
}

impl SqfPoly {
    /// Squarefree part of `f`.
    pub fn new(f: &UniPoly<Rational>) -> Result<Self> {
        let s = crate::exactalg::squarefree(f)?;
        Ok(SqfPoly {
            coeffs: primitive_part(&s),
        })
    }

    /// Wrap `f` as is; the caller guarantees that `f` is squarefree.
    pub fn assume_squarefree(f: &UniPoly<Rational>) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::Domain("zero polynomial".into()));
        }
        Ok(SqfPoly {
            coeffs: primitive_part(f),
        })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn to_poly(&self, var: &str) -> UniPoly<Rational> {
        intpoly::to_rational_poly(&self.coeffs, var)
    }

    pub fn sign_at(&self, t: &Rational) -> i32 {
        intpoly::sign_at(&self.coeffs, t)
    }

    /// Isolating intervals for every real root, sorted.
    pub fn isolate(&self) -> Vec<RatInterval> {
        self.isolate_filtered(false)
    }

    /// Isolating intervals for the strictly positive roots, sorted.
    pub fn isolate_positive(&self) -> Vec<RatInterval> {
        self.isolate_filtered(true)
    }

    fn isolate_filtered(&self, positive_only: bool) -> Vec<RatInterval> {
        let mut p = self.coeffs.clone();
        let mut zero_root = false;
        if p.len() > 1 && p[0] == 0 {
            zero_root = true;
            p.remove(0);
        }
        let mut out = Vec::new();
        if p.len() < 2 {
            if zero_root && !positive_only {
                out.push(RatInterval::point(Rational::zero()));
            }
            return out;
        }
        let k = root_bound_log2(&p);
        if !positive_only {
            let neg = isolate_unit(&scale_pow2(&reflect(&p), k));
            out.extend(neg.iter().rev().map(|r| unit_to_x(r, k).negate()));
            if zero_root {
                out.push(RatInterval::point(Rational::zero()));
            }
        }
        let pos = isolate_unit(&scale_pow2(&p, k));
        out.extend(pos.iter().map(|r| unit_to_x(r, k)));
        out
    }

    /// Number of distinct roots in `i`, honoring its endpoint kind.
    pub fn count_in(&self, i: &RatInterval) -> usize {
        let mut n = 0;
        if i.is_point() {
            return usize::from(i.includes_lo() && self.sign_at(&i.lo) == 0);
        }
        if i.includes_lo() && self.sign_at(&i.lo) == 0 {
            n += 1;
        }
        if i.includes_hi() && self.sign_at(&i.hi) == 0 {
            n += 1;
        }
        if self.degree() == 0 {
            return n;
        }
        if self.degree() <= STURM_MAX_DEGREE {
            let seq = sturm::sturm_sequence(&self.coeffs);
            // (lo, hi] minus a root sitting at hi gives (lo, hi).
            let mut inner = sturm::count_half_open(&seq, &i.lo, &i.hi);
            if self.sign_at(&i.hi) == 0 {
                inner -= 1;
            }
            n + inner
        } else {
            n + count_unit(&affine_to_unit(&self.coeffs, &i.lo, &i.hi))
        }
    }

    /// Bisect an interval known to isolate one root until its width is at
    /// most `width`. Does not re-check the isolation hypothesis.
    pub fn refine_isolated(&self, i: &RatInterval, width: &Rational) -> RatInterval {
        if i.is_point() {
            return i.clone();
        }
        if i.includes_lo() && self.sign_at(&i.lo) == 0 {
            return RatInterval::point(i.lo.clone());
        }
        if i.includes_hi() && self.sign_at(&i.hi) == 0 {
            return RatInterval::point(i.hi.clone());
        }
        let mut lo = i.lo.clone();
        let mut hi = i.hi.clone();
        let mut s_lo = self.sign_at(&lo);
        let mut s_hi = self.sign_at(&hi);
        while (&hi - &lo) > *width {
            let m = Rational::midpoint(&lo, &hi);
            let s_m = self.sign_at(&m);
            if s_m == 0 {
                return RatInterval::point(m);
            }
            // The root is simple, so the sign flips across it and nowhere
            // else inside the interval.
            let go_left = if s_hi != 0 {
                s_m == s_hi
            } else if s_lo != 0 {
                s_m != s_lo
            } else {
                self.count_in(&RatInterval::open(lo.clone(), m.clone())) == 1
            };
            if go_left {
                hi = m;
                s_hi = s_m;
            } else {
                lo = m;
                s_lo = s_m;
            }
        }
        // Endpoints carried over from the input are nonroots or excluded.
        RatInterval::open(lo, hi)
    }

    /// Refine after certifying that `i` isolates exactly one root.
    pub fn refine(&self, i: &RatInterval, width: &Rational) -> Result<RatInterval> {
        if width.signum() <= 0 {
            return Err(Error::Domain(format!(
                "refinement width must be positive, got {width}"
            )));
        }
        let c = self.count_in(i);
        if c != 1 {
            return Err(Error::Certification(format!(
                "interval {i} holds {c} roots, expected exactly one"
            )));
        }
        Ok(self.refine_isolated(i, width))
    }
}

fn unit_to_x(r: &UnitRoot, k: u32) -> RatInterval {
    let at = |c: &Integer, j: u32| Rational::from_integer(c.clone()).mul_pow2(k as i32 - j as i32);
    match r {
        UnitRoot::Exact { c, j } => RatInterval::point(at(c, *j)),
        UnitRoot::Open { c, j } => RatInterval::open(at(c, *j), at(&Integer::from(c + 1u32), *j)),
    }
}

fn nonzero(f: &UniPoly<Rational>) -> Result<()> {
    if f.is_zero() {
        Err(Error::Domain("zero polynomial".into()))
    } else {
        Ok(())
    }
}

/// Exact number of distinct real roots of `f` in `i`.
pub fn sturm_count(f: &UniPoly<Rational>, i: &RatInterval) -> Result<usize> {
    nonzero(f)?;
    Ok(SqfPoly::new(f)?.count_in(i))
}

fn isolate_with(f: &UniPoly<Rational>, positive_only: bool) -> Result<RootList> {
    nonzero(f)?;
    let factors = squarefree_decomposition(f)?;
    let mut sqf = UniPoly::constant(Rational::one(), f.var());
    for (g, _) in &factors {
        sqf = &sqf * g;
    }
    let sp = SqfPoly::assume_squarefree(&sqf)?;
    let intervals = sp.isolate_filtered(positive_only);
    let multiplicities = if factors.len() == 1 {
        vec![factors[0].1; intervals.len()]
    } else {
        let parts: Vec<(SqfPoly, u32)> = factors
            .iter()
            .map(|(g, m)| Ok((SqfPoly::assume_squarefree(g)?, *m)))
            .collect::<Result<_>>()?;
        intervals
            .iter()
            .map(|iv| {
                parts
                    .iter()
                    .find(|(g, _)| g.count_in(iv) == 1)
                    .map(|(_, m)| *m)
                    .ok_or_else(|| Error::Internal(format!("no factor owns the root in {iv}")))
            })
            .collect::<Result<_>>()?
    };
    Ok(RootList {
        polynomial: f.clone(),
        intervals,
        multiplicities,
    })
}

/// Isolating intervals and multiplicities for every distinct real root.
pub fn isolate_roots(f: &UniPoly<Rational>) -> Result<RootList> {
    isolate_with(f, false)
}

/// As [`isolate_roots`], keeping only strictly positive roots.
pub fn isolate_positive_roots(f: &UniPoly<Rational>) -> Result<RootList> {
    isolate_with(f, true)
}

/// Shrink an isolating interval of `f` to width at most `width`.
pub fn refine(f: &UniPoly<Rational>, i: &RatInterval, width: &Rational) -> Result<RatInterval> {
    nonzero(f)?;
    SqfPoly::new(f)?.refine(i, width)
}

/// Horner evaluation in closed interval arithmetic.
fn horner_enclosure(f: &UniPoly<Rational>, i: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(Rational::zero());
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(i).add_scalar(c);
    }
    acc
}

/// Enclosure of `{f(t) : t in i}`. Exact when the derivative provably keeps
/// one sign on `i`, Horner interval arithmetic otherwise.
pub fn interval_eval(f: &UniPoly<Rational>, i: &RatInterval) -> RatInterval {
    if i.is_point() {
        return RatInterval::point(f.eval(&i.lo));
    }
    let d = horner_enclosure(&f.derivative(), i);
    if d.lo.signum() > 0 || d.hi.signum() < 0 || f.degree().unwrap_or(0) <= 1 {
        return RatInterval::hull(f.eval(&i.lo), f.eval(&i.hi));
    }
    horner_enclosure(f, i)
}

#[cfg(test)]
mod tests;
