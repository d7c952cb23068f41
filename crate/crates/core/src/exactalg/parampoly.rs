use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use rug::Integer;

use super::{Coeff, Rational, UniPoly};
use crate::error::{Error, Result};

/// Exponent vector ordered graded-lexicographically: total degree first,
/// then the first differing exponent.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients over named
/// parameters. Variables are kept sorted and only variables that actually
/// occur are stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ParamPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        ParamPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), Rational::one());
        ParamPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// Build from `(coefficient, [(variable, exponent), ...])` pairs.
    pub fn from_terms<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Vec<(&'a str, u32)>)>,
    {
        terms
            .into_iter()
            .map(|(c, pows)| {
                pows.into_iter()
                    .fold(ParamPoly::constant(c), |acc, (v, e)| {
                        acc * ParamPoly::var(v).pow(e)
                    })
            })
            .fold(ParamPoly::zero(), |a, b| a + b)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(
                self.terms
                    .values()
                    .next()
                    .cloned()
                    .unwrap_or_else(Rational::zero),
            )
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn from_parts(vars: Vec<String>, terms: BTreeMap<Monomial, Rational>) -> Self {
        let mut p = ParamPoly { vars, terms };
        p.prune_vars();
        p
    }

    /// Drop variables whose exponent is zero in every term.
    fn prune_vars(&mut self) {
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return;
        }
        let vars = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(m, c)| {
                let e =
                    m.0.iter()
                        .zip(&used)
                        .filter(|(_, &u)| u)
                        .map(|(e, _)| *e)
                        .collect();
                (Monomial(e), c)
            })
            .collect();
        self.vars = vars;
        self.terms = terms;
    }

    fn merged_vars(&self, other: &ParamPoly) -> Vec<String> {
        if self.vars == other.vars {
            return self.vars.clone();
        }
        let mut v: Vec<String> = self.vars.iter().chain(&other.vars).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    /// Re-express the exponent vectors over a superset of variables.
    fn embed(&self, vars: &[String]) -> BTreeMap<Monomial, Rational> {
        if self.vars == vars {
            return self.terms.clone();
        }
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("superset"))
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; vars.len()];
                for (k, &i) in idx.iter().enumerate() {
                    e[i] = m.0[k];
                }
                (Monomial(e), c.clone())
            })
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> ParamPoly {
        let mut result = ParamPoly::constant(Rational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Evaluate at a full assignment of the occurring variables.
    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        let vals: Vec<&Rational> = self
            .vars
            .iter()
            .map(|v| {
                point
                    .get(v)
                    .ok_or_else(|| Error::Domain(format!("no value for parameter {v}")))
            })
            .collect::<Result<_>>()?;
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                m.0.iter().zip(&vals).fold(
                    c.clone(),
                    |acc, (&e, v)| if e == 0 { acc } else { acc * v.pow(e) },
                )
            })
            .sum())
    }

    /// Substitute the variables present in `point`, leaving the others.
    pub fn substitute(&self, point: &BTreeMap<String, Rational>) -> ParamPoly {
        let mut out = BTreeMap::<Monomial, Rational>::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut e = m.0.clone();
            for (i, v) in self.vars.iter().enumerate() {
                if let Some(val) = point.get(v) {
                    if e[i] > 0 {
                        coeff *= val.pow(e[i]);
                    }
                    e[i] = 0;
                }
            }
            if coeff.is_zero() {
                continue;
            }
            let slot = out.entry(Monomial(e)).or_insert_with(Rational::zero);
            *slot += coeff;
        }
        out.retain(|_, c| !c.is_zero());
        ParamPoly::from_parts(self.vars.clone(), out)
    }

    /// View as a univariate polynomial in `var` with coefficients in the
    /// remaining variables.
    pub fn to_univariate(&self, var: &str) -> UniPoly<ParamPoly> {
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return UniPoly::constant(self.clone(), var);
        };
        let deg = self.degree_in(var) as usize;
        let mut parts: Vec<BTreeMap<Monomial, Rational>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i] as usize;
            e[i] = 0;
            parts[k].insert(Monomial(e), c.clone());
        }
        let coeffs = parts
            .into_iter()
            .map(|t| ParamPoly::from_parts(self.vars.clone(), t))
            .collect();
        UniPoly::new(coeffs, var)
    }

    /// Inverse of [`ParamPoly::to_rational_univariate`].
    pub fn from_univariate(p: &UniPoly<Rational>) -> ParamPoly {
        let v = p.var().to_string();
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (Monomial(vec![k as u32]), c.clone()))
            .collect();
        ParamPoly::from_parts(vec![v], terms)
    }

    /// Univariate polynomial with rational coefficients, if `var` is the
    /// only variable present.
    pub fn to_rational_univariate(&self, var: &str) -> Result<UniPoly<Rational>> {
        if self.vars.iter().any(|v| v != var) {
            return Err(Error::Domain(format!(
                "polynomial {self} has parameters other than {var}"
            )));
        }
        let u = self.to_univariate(var);
        let coeffs = u
            .coeffs()
            .iter()
            .map(|c| c.as_constant().expect("no other variables"))
            .collect();
        Ok(UniPoly::new(coeffs, var))
    }

    /// Integer content times sign: `self == content * primitive`, where the
    /// primitive part has coprime integer coefficients and a positive
    /// leading term.
    pub fn content(&self) -> Rational {
        let Some((_, lc)) = self.leading_term() else {
            return Rational::zero();
        };
        let mut num = Integer::new();
        let mut den = Integer::from(1);
        for c in self.terms.values() {
            num.gcd_mut(c.numer());
            den.lcm_mut(c.denom());
        }
        let c = Rational::new(num, den);
        if lc.is_negative() {
            -c
        } else {
            c
        }
    }

    /// Primitive integer form with positive leading term.
    pub fn normalize(&self) -> ParamPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content().recip();
        self.scale(&c)
    }

    /// True iff `self = λ · other` for some nonzero rational λ.
    pub fn equal_up_to_constant(&self, other: &ParamPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.normalize() == other.normalize()
    }

    /// Exact multivariate division; `None` if `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &ParamPoly) -> Option<ParamPoly> {
        if rhs.is_zero() {
            return None;
        }
        if let Some(c) = rhs.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let vars = self.merged_vars(rhs);
        let mut rem = self.embed(&vars);
        let div = rhs.embed(&vars);
        let (lm_d, lc_d) = div
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))?;
        let mut quot = BTreeMap::new();
        while let Some((lm_r, lc_r)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm_d.divides(&lm_r) {
                return None;
            }
            let qm = Monomial(lm_r.0.iter().zip(&lm_d.0).map(|(a, b)| a - b).collect());
            let qc = lc_r / &lc_d;
            for (m, c) in &div {
                let pm = Monomial(m.0.iter().zip(&qm.0).map(|(a, b)| a + b).collect());
                let slot = rem.entry(pm.clone()).or_insert_with(Rational::zero);
                *slot -= &(c * &qc);
                if slot.is_zero() {
                    rem.remove(&pm);
                }
            }
            quot.insert(qm, qc);
        }
        Some(ParamPoly::from_parts(vars, quot))
    }

    fn combine(&self, rhs: &ParamPoly, sign: i32) -> ParamPoly {
        let vars = self.merged_vars(rhs);
        let mut terms = self.embed(&vars);
        for (m, c) in rhs.embed(&vars) {
            let slot = terms.entry(m.clone()).or_insert_with(Rational::zero);
            if sign > 0 {
                *slot += c;
            } else {
                *slot -= c;
            }
            if slot.is_zero() {
                terms.remove(&m);
            }
        }
        ParamPoly::from_parts(vars, terms)
    }

    fn product(&self, rhs: &ParamPoly) -> ParamPoly {
        if self.is_zero() || rhs.is_zero() {
            return ParamPoly::zero();
        }
        let vars = self.merged_vars(rhs);
        let a = self.embed(&vars);
        let b = rhs.embed(&vars);
        let mut terms = BTreeMap::<Monomial, Rational>::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let m = Monomial(ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect());
                let slot = terms.entry(m).or_insert_with(Rational::zero);
                *slot += &(ca * cb);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        ParamPoly::from_parts(vars, terms)
    }
}

impl From<Rational> for ParamPoly {
    fn from(c: Rational) -> Self {
        ParamPoly::constant(c)
    }
}

impl From<i64> for ParamPoly {
    fn from(c: i64) -> Self {
        ParamPoly::constant(Rational::from(c))
    }
}

impl Add<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        self.combine(rhs, 1)
    }
}

impl Sub<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        self.combine(rhs, -1)
    }
}

impl Mul<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        self.product(rhs)
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: ParamPoly) -> ParamPoly {
        &self + &rhs
    }
}

impl Sub for ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: ParamPoly) -> ParamPoly {
        &self - &rhs
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: ParamPoly) -> ParamPoly {
        &self * &rhs
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        self.scale(&Rational::from(-1))
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

impl Coeff for ParamPoly {
    fn zero() -> Self {
        ParamPoly::zero()
    }
    fn one() -> Self {
        ParamPoly::constant(Rational::one())
    }
    fn from_rational(r: Rational) -> Self {
        ParamPoly::constant(r)
    }
    fn is_zero(&self) -> bool {
        ParamPoly::is_zero(self)
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
        self.div_exact(rhs)
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if m.degree() == 0 || a != Rational::one() {
                factors.push(a.to_string());
            }
            for (v, &e) in self.vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}

impl FromStr for ParamPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_poly(s)
    }
}
