//! The two monopoly maps, their iterates, cycle and multiplier polynomials,
//! and the equilibrium condition polynomials of Model 2.

mod closed_forms;
mod conditions;
mod intcompose;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{primitive, ParamPoly, Rational, UniPoly};

pub use closed_forms::{
    model1_two_cycle_magnitude, model1_two_cycle_poly, model2_four_cycle_magnitude,
    model2_three_cycle_magnitude, model2_three_cycle_sp, model2_two_cycle_magnitudes,
};
pub use conditions::{model2_condition_polys, StabilityConditionSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    Model1,
    Model2,
}

impl Model {
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Model::Model1 => &["e", "f"],
            Model::Model2 => &["a", "b", "c", "d", "K"],
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Model::Model1 => 1,
            Model::Model2 => 2,
        }
    }

    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Model::Model1),
            2 => Ok(Model::Model2),
            _ => Err(Error::Domain(format!("unknown model {n}; expected 1 or 2"))),
        }
    }

    /// The update rule with symbolic parameters.
    pub fn symbolic_update(self) -> UniPoly<ParamPoly> {
        let src = match self {
            Model::Model1 => "x + f*(e - x^3)",
            Model::Model2 => "x + K*(a - 2*b*x + 3*c*x^2 - 4*d*x^3)",
        };
        src.parse::<ParamPoly>()
            .expect("built-in map parses")
            .to_univariate("x")
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Model {}", self.number())
    }
}

/// Standard Model 2 demand and cost coefficients `(a, b, c, d)`.
pub fn model2_standard_abcd() -> [Rational; 4] {
    [
        Rational::new(18, 5),
        Rational::new(12, 5),
        Rational::new(3, 5),
        Rational::new(1, 20),
    ]
}

/// One member of a model family with rational parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct IterMap {
    model: Model,
    params: BTreeMap<String, Rational>,
    update: UniPoly<Rational>,
}

/// Construct the map for `model` at `params`; every parameter of the model
/// must be given and strictly positive.
pub fn build_map(model: Model, params: &BTreeMap<String, Rational>) -> Result<IterMap> {
    IterMap::new(model, params.clone())
}

impl IterMap {
    pub fn new(model: Model, params: BTreeMap<String, Rational>) -> Result<Self> {
        for k in params.keys() {
            if !model.param_names().contains(&k.as_str()) {
                return Err(Error::Domain(format!("{model} has no parameter {k}")));
            }
        }
        for name in model.param_names() {
            match params.get(*name) {
                None => return Err(Error::Domain(format!("{model} needs parameter {name}"))),
                Some(v) if !v.is_positive() => {
                    return Err(Error::Domain(format!(
                        "parameter {name} = {v} must be positive"
                    )))
                }
                _ => {}
            }
        }
        let update = model
            .symbolic_update()
            .map_coeffs(|c| c.eval(&params).expect("all parameters supplied"));
        Ok(IterMap {
            model,
            params,
            update,
        })
    }

    pub fn model1(e: Rational, f: Rational) -> Result<Self> {
        let params = [("e", e), ("f", f)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        IterMap::new(Model::Model1, params)
    }

    pub fn model2(a: Rational, b: Rational, c: Rational, d: Rational, k: Rational) -> Result<Self> {
        let params = [("a", a), ("b", b), ("c", c), ("d", d), ("K", k)]
            .into_iter()
            .map(|(n, v)| (n.to_string(), v))
            .collect();
        IterMap::new(Model::Model2, params)
    }

    /// Model 2 with `(a, b, c, d) = (18/5, 12/5, 3/5, 1/20)`.
    pub fn model2_standard(k: Rational) -> Result<Self> {
        let [a, b, c, d] = model2_standard_abcd();
        IterMap::model2(a, b, c, d, k)
    }

    /// Same model with one parameter replaced.
    pub fn with_param(&self, name: &str, value: Rational) -> Result<Self> {
        let mut p = self.params.clone();
        p.insert(name.to_string(), value);
        IterMap::new(self.model, p)
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn params(&self) -> &BTreeMap<String, Rational> {
        &self.params
    }

    pub fn param(&self, name: &str) -> Option<&Rational> {
        self.params.get(name)
    }

    /// The update polynomial `F`.
    pub fn update(&self) -> &UniPoly<Rational> {
        &self.update
    }

    pub fn derivative(&self) -> UniPoly<Rational> {
        self.update.derivative()
    }

    /// Coefficients of `F` in double precision, low degree first.
    pub fn float_coeffs(&self) -> [f64; 4] {
        let c = self.update.to_f64_coeffs();
        [0, 1, 2, 3].map(|i| c.get(i).copied().unwrap_or(0.0))
    }

    /// `F^n`, with `F^0 = x`.
    pub fn power(&self, n: u32) -> UniPoly<Rational> {
        if n == 0 {
            return UniPoly::identity("x");
        }
        intcompose::iterate(&self.update, n)
    }

    /// `C_n = (F^n - x) / prod_{d | n, d < n} C_d`, primitive with integer
    /// coefficients.
    pub fn cycle_poly(&self, n: u32) -> Result<UniPoly<Rational>> {
        if n == 0 {
            return Err(Error::Domain("cycle order must be at least 1".into()));
        }
        let mut cache: BTreeMap<u32, UniPoly<Rational>> = BTreeMap::new();
        self.cycle_poly_cached(n, &mut cache)
    }

    fn cycle_poly_cached(
        &self,
        n: u32,
        cache: &mut BTreeMap<u32, UniPoly<Rational>>,
    ) -> Result<UniPoly<Rational>> {
        if let Some(c) = cache.get(&n) {
            return Ok(c.clone());
        }
        let mut p = &self.power(n) - &UniPoly::identity("x");
        for d in (1..n).filter(|d| n % d == 0) {
            let cd = self.cycle_poly_cached(d, cache)?;
            if cd.is_zero() {
                return Err(Error::Domain(format!("C_{d} vanishes identically")));
            }
            p = p.exact_div(&cd).map_err(|e| match e {
                Error::NotDivisible(m) => {
                    Error::Internal(format!("C_{d} does not divide F^{n}(x) - x: {m}"))
                }
                other => other,
            })?;
        }
        let p = primitive(&p);
        cache.insert(n, p.clone());
        Ok(p)
    }

    /// `(F^n)'`; at a period-n point this is the orbit multiplier.
    pub fn multiplier_poly(&self, n: u32) -> UniPoly<Rational> {
        self.power(n).derivative()
    }

    /// `F(x)` in double precision.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let [c0, c1, c2, c3] = self.float_coeffs();
        ((c3 * x + c2) * x + c1) * x + c0
    }
}

impl fmt::Display for IterMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, "{} ({})", self.model, ps.join(", "))
    }
}

#[cfg(test)]
mod tests;
