use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Coeff, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

/// Dense univariate polynomial; `coeffs[i]` multiplies `var^i`. The last
/// stored coefficient is nonzero (the zero polynomial stores nothing).
#[derive(Clone, PartialEq)]
pub struct UniPoly<C: Coeff> {
    coeffs: Vec<C>,
    var: String,
}

impl<C: Coeff> UniPoly<C> {
    pub fn new(mut coeffs: Vec<C>, var: &str) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            coeffs,
            var: var.to_string(),
        }
    }

    pub fn zero(var: &str) -> Self {
        UniPoly {
            coeffs: Vec::new(),
            var: var.to_string(),
        }
    }

    pub fn constant(c: C, var: &str) -> Self {
        UniPoly::new(vec![c], var)
    }

    /// The identity polynomial `var`.
    pub fn identity(var: &str) -> Self {
        UniPoly::new(vec![C::zero(), C::one()], var)
    }

    /// `c * var^k`.
    pub fn monomial(c: C, k: usize, var: &str) -> Self {
        let mut v = vec![C::zero(); k + 1];
        v[k] = c;
        UniPoly::new(v, var)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn with_var(mut self, var: &str) -> Self {
        self.var = var.to_string();
        self
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var && !self.is_constant() && !other.is_constant() {
            return Err(Error::Domain(format!(
                "main variable mismatch: {} vs {}",
                self.var, other.var
            )));
        }
        Ok(())
    }

    fn result_var<'a>(&'a self, other: &'a Self) -> &'a str {
        if self.is_constant() && !other.is_constant() {
            &other.var
        } else {
            &self.var
        }
    }

    pub fn arith(&self, other: &Self, kind: ArithKind) -> Result<Self> {
        self.check_var(other)?;
        let var = self.result_var(other).to_string();
        let out = match kind {
            ArithKind::Add | ArithKind::Sub => {
                let n = self.coeffs.len().max(other.coeffs.len());
                let v = (0..n)
                    .map(|i| {
                        let a = self.coeffs.get(i);
                        let b = other.coeffs.get(i);
                        match (a, b, kind) {
                            (Some(a), Some(b), ArithKind::Add) => a.add(b),
                            (Some(a), Some(b), _) => a.sub(b),
                            (Some(a), None, _) => a.clone(),
                            (None, Some(b), ArithKind::Add) => b.clone(),
                            (None, Some(b), _) => b.neg(),
                            (None, None, _) => C::zero(),
                        }
                    })
                    .collect();
                UniPoly::new(v, &var)
            }
            ArithKind::Mul => {
                if self.is_zero() || other.is_zero() {
                    return Ok(UniPoly::zero(&var));
                }
                let mut v = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
                for (i, a) in self.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in other.coeffs.iter().enumerate() {
                        if !b.is_zero() {
                            v[i + j] = v[i + j].add(&a.mul(b));
                        }
                    }
                }
                UniPoly::new(v, &var)
            }
        };
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect(), &self.var)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> UniPoly<D> {
        UniPoly::new(self.coeffs.iter().map(f).collect(), &self.var)
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc.mul(t).add(c))
    }

    /// Formal derivative in the main variable.
    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&C::from_i64(i as i64)))
            .collect();
        UniPoly::new(v, &self.var)
    }

    /// `self ∘ inner`, i.e. `self(inner(x))`, by Horner's scheme.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_var(inner)?;
        let var = self.result_var(inner).to_string();
        let mut acc = UniPoly::zero(&var);
        for c in self.coeffs.iter().rev() {
            acc = acc.arith(inner, ArithKind::Mul)?;
            acc = acc.arith(&UniPoly::constant(c.clone(), &var), ArithKind::Add)?;
        }
        Ok(acc.with_var(&var))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = UniPoly::constant(C::one(), &self.var);
        for _ in 0..e {
            result = &result * self;
        }
        result
    }

    /// Exact quotient `Q` with `Q * divisor == self`. Every leading-term
    /// step must divide exactly in the coefficient ring.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check_var(divisor)?;
        let Some(dd) = divisor.degree() else {
            return Err(Error::Domain("division by the zero polynomial".into()));
        };
        let var = self.result_var(divisor).to_string();
        let Some(nd) = self.degree() else {
            return Ok(UniPoly::zero(&var));
        };
        if nd < dd {
            return Err(Error::NotDivisible(format!(
                "degree {nd} polynomial is not divisible by a degree {dd} one"
            )));
        }
        let lc = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![C::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let q = top.exact_div(&lc).ok_or_else(|| {
                Error::NotDivisible(format!("leading coefficient {lc} does not divide {top}"))
            })?;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] = rem[k + j].sub(&q.mul(d));
                }
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible("nonzero remainder".into()));
        }
        Ok(UniPoly::new(quot, &var))
    }
}

impl UniPoly<Rational> {
    pub fn from_ints(coeffs: &[i64], var: &str) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Rational::from(c)).collect(), var)
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::Domain("division by the zero polynomial".into()));
        };
        let var = self.var.clone();
        let nd = match self.degree() {
            Some(n) if n >= dd => n,
            _ => return Ok((UniPoly::zero(&var), self.clone())),
        };
        let inv = divisor.leading_coeff().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            if rem[k + dd].is_zero() {
                continue;
            }
            let q = &rem[k + dd] * &inv;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] -= &(&q * d);
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((UniPoly::new(quot, &var), UniPoly::new(rem, &var)))
    }

    /// Leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading_coeff().recip();
        self.scale(&inv)
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(Rational::to_f64).collect()
    }
}

impl<C: Coeff> Add<&UniPoly<C>> for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn add(self, rhs: &UniPoly<C>) -> UniPoly<C> {
        self.arith(rhs, ArithKind::Add)
            .expect("main variables agree")
    }
}

impl<C: Coeff> Sub<&UniPoly<C>> for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn sub(self, rhs: &UniPoly<C>) -> UniPoly<C> {
        self.arith(rhs, ArithKind::Sub)
            .expect("main variables agree")
    }
}

impl<C: Coeff> Mul<&UniPoly<C>> for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn mul(self, rhs: &UniPoly<C>) -> UniPoly<C> {
        self.arith(rhs, ArithKind::Mul)
            .expect("main variables agree")
    }
}

impl<C: Coeff> Neg for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn neg(self) -> UniPoly<C> {
        UniPoly::new(self.coeffs.iter().map(Coeff::neg).collect(), &self.var)
    }
}

/// Polynomials in one variable are themselves a coefficient ring; used for
/// eliminating one variable from a bivariate system.
impl Coeff for UniPoly<Rational> {
    fn zero() -> Self {
        UniPoly::zero("y")
    }
    fn one() -> Self {
        UniPoly::constant(Rational::one(), "y")
    }
    fn from_rational(r: Rational) -> Self {
        UniPoly::constant(r, "y")
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        UniPoly::exact_div(self, rhs).ok()
    }
}

impl<C: Coeff> fmt::Display for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let compound = s[1..].contains(['+', '-']) || s.contains(' ');
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = if compound { format!("({s})") } else { s };
            match i {
                0 => write!(f, "{cs}")?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{cs}*")?;
                    }
                    if i == 1 {
                        write!(f, "{}", self.var)?;
                    } else {
                        write!(f, "{}^{i}", self.var)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly[{}]({self})", self.var)
    }
}
