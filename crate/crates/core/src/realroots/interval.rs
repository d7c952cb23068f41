use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactalg::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IntervalKind {
    /// `(lo, hi)`
    Open,
    /// `[lo, hi]`
    Closed,
    /// `(lo, hi]`
    OpenClosed,
    /// `[lo, hi)`
    ClosedOpen,
}

/// Interval with rational endpoints, `lo <= hi`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub kind: IntervalKind,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational, kind: IntervalKind) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo} > {hi}");
        RatInterval { lo, hi, kind }
    }

    pub fn open(lo: Rational, hi: Rational) -> Self {
        RatInterval::new(lo, hi, IntervalKind::Open)
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        RatInterval::new(lo, hi, IntervalKind::Closed)
    }

    pub fn point(x: Rational) -> Self {
        RatInterval::new(x.clone(), x, IntervalKind::Closed)
    }

    /// Closed hull of two values in either order.
    pub fn hull(a: Rational, b: Rational) -> Self {
        if a <= b {
            RatInterval::closed(a, b)
        } else {
            RatInterval::closed(b, a)
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        Rational::midpoint(&self.lo, &self.hi)
    }

    pub fn includes_lo(&self) -> bool {
        matches!(self.kind, IntervalKind::Closed | IntervalKind::ClosedOpen)
    }

    pub fn includes_hi(&self) -> bool {
        matches!(self.kind, IntervalKind::Closed | IntervalKind::OpenClosed)
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi && !(self.includes_lo() && self.includes_hi())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.includes_lo() {
            *x >= self.lo
        } else {
            *x > self.lo
        };
        let below = if self.includes_hi() {
            *x <= self.hi
        } else {
            *x < self.hi
        };
        above && below
    }

    /// Closure of `self` lies strictly inside `other`'s interior, or equal
    /// closed sets when `other` is closed.
    pub fn subset_of(&self, other: &RatInterval) -> bool {
        let lo_ok = if other.includes_lo() || !self.includes_lo() {
            self.lo >= other.lo
        } else {
            self.lo > other.lo
        };
        let hi_ok = if other.includes_hi() || !self.includes_hi() {
            self.hi <= other.hi
        } else {
            self.hi < other.hi
        };
        lo_ok && hi_ok
    }

    /// Whether the closures of the two intervals meet.
    pub fn closures_meet(&self, other: &RatInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn closure(&self) -> RatInterval {
        RatInterval::closed(self.lo.clone(), self.hi.clone())
    }

    /// Closed interval strictly above `t` (`lo > t`).
    pub fn strictly_above(&self, t: &Rational) -> bool {
        self.lo > *t
    }

    pub fn strictly_below(&self, t: &Rational) -> bool {
        self.hi < *t
    }

    /// Interval of all values of `-x`.
    pub fn negate(&self) -> RatInterval {
        let kind = match self.kind {
            IntervalKind::OpenClosed => IntervalKind::ClosedOpen,
            IntervalKind::ClosedOpen => IntervalKind::OpenClosed,
            k => k,
        };
        RatInterval::new(-&self.hi, -&self.lo, kind)
    }

    pub fn mid_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }

    // Closed-interval arithmetic (result always closed).

    pub fn add(&self, o: &RatInterval) -> RatInterval {
        RatInterval::closed(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &RatInterval) -> RatInterval {
        RatInterval::closed(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn mul(&self, o: &RatInterval) -> RatInterval {
        if self.is_point() && o.is_point() {
            return RatInterval::point(&self.lo * &o.lo);
        }
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RatInterval::closed(lo, hi)
    }

    pub fn scale(&self, c: &Rational) -> RatInterval {
        RatInterval::hull(&self.lo * c, &self.hi * c)
    }

    pub fn add_scalar(&self, c: &Rational) -> RatInterval {
        RatInterval::closed(&self.lo + c, &self.hi + c)
    }

    /// Tight enclosure of `{t^2 : t in self}`.
    pub fn square(&self) -> RatInterval {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if self.lo.signum() <= 0 && self.hi.signum() >= 0 {
            RatInterval::closed(Rational::zero(), a.max(b))
        } else {
            RatInterval::hull(a, b)
        }
    }

    /// Does the closed interval contain `t`?
    pub fn closure_contains(&self, t: &Rational) -> bool {
        self.lo <= *t && *t <= self.hi
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.includes_lo() { '[' } else { '(' };
        let r = if self.includes_hi() { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

impl fmt::Debug for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn membership_respects_kind() {
        let i = RatInterval::new(q("0"), q("1"), IntervalKind::OpenClosed);
        assert!(!i.contains(&q("0")));
        assert!(i.contains(&q("1")));
        assert!(i.contains(&q("1/2")));
        assert!(RatInterval::point(q("2")).contains(&q("2")));
        assert!(RatInterval::open(q("2"), q("2")).is_empty());
    }

    #[test]
    fn arithmetic_encloses() {
        let a = RatInterval::closed(q("-1"), q("2"));
        assert_eq!(a.square(), RatInterval::closed(q("0"), q("4")));
        assert_eq!(a.mul(&a), RatInterval::closed(q("-2"), q("4")));
        assert_eq!(a.sub(&a), RatInterval::closed(q("-3"), q("3")));
        assert_eq!(a.scale(&q("-2")), RatInterval::closed(q("-4"), q("2")));
    }

    #[test]
    fn subset_open_vs_closed() {
        let open = RatInterval::open(q("0"), q("1"));
        let closed = RatInterval::closed(q("0"), q("1"));
        assert!(open.subset_of(&closed));
        assert!(!closed.subset_of(&open));
        assert!(RatInterval::closed(q("1/4"), q("3/4")).subset_of(&open));
    }
}
