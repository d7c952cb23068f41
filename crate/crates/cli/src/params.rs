use std::collections::BTreeMap;

use clap::Args;
use mondyn::models::{model2_standard_abcd, IterMap, Model};
use mondyn::sim::FloatMap;
use mondyn::{Error, Rational, Result};

/// Model selection and parameter values. Values are exact: `0.05`, `1/20`
/// and `5e-2` all parse to the same rational.
#[derive(Args, Clone, Debug, Default)]
pub struct ModelArgs {
    /// Model number, 1 or 2.
    #[arg(long, default_value_t = 2)]
    pub model: u8,
    #[arg(long)]
    pub e: Option<String>,
    #[arg(long)]
    pub f: Option<String>,
    /// Model 2 only; defaults to 3.6.
    #[arg(long)]
    pub a: Option<String>,
    /// Model 2 only; defaults to 2.4.
    #[arg(long)]
    pub b: Option<String>,
    /// Model 2 only; defaults to 0.6.
    #[arg(long)]
    pub c: Option<String>,
    /// Model 2 only; defaults to 0.05.
    #[arg(long)]
    pub d: Option<String>,
    #[arg(long = "K")]
    pub k: Option<String>,
    /// Parse parameters as doubles and skip the exact layer (simulation
    /// commands only).
    #[arg(long)]
    pub float_only: bool,
}

impl ModelArgs {
    pub fn model(&self) -> Result<Model> {
        Model::from_number(self.model)
    }

    fn given(&self) -> [(&'static str, Option<&String>); 7] {
        [
            ("e", self.e.as_ref()),
            ("f", self.f.as_ref()),
            ("a", self.a.as_ref()),
            ("b", self.b.as_ref()),
            ("c", self.c.as_ref()),
            ("d", self.d.as_ref()),
            ("K", self.k.as_ref()),
        ]
    }

    /// Raw parameter strings, with Model 2 defaults filled in and `free`
    /// set to `fill` when absent.
    fn raw(&self, free: &[&str], fill: &str) -> Result<BTreeMap<String, String>> {
        let model = self.model()?;
        let names = model.param_names();
        let mut out = BTreeMap::new();
        for (name, v) in self.given() {
            match v {
                Some(v) if !names.contains(&name) => {
                    return Err(Error::Domain(format!(
                        "{model} has no parameter {name} (got {v})"
                    )))
                }
                Some(v) => {
                    out.insert(name.to_string(), v.clone());
                }
                None => {}
            }
        }
        if model == Model::Model2 {
            for (name, v) in ["a", "b", "c", "d"].iter().zip(model2_standard_abcd()) {
                out.entry(name.to_string()).or_insert_with(|| v.to_string());
            }
        }
        for name in free {
            out.entry(name.to_string())
                .or_insert_with(|| fill.to_string());
        }
        for name in names {
            if !out.contains_key(*name) {
                return Err(Error::Domain(format!("{model} needs --{name}")));
            }
        }
        Ok(out)
    }

    pub fn point(&self) -> Result<BTreeMap<String, Rational>> {
        self.raw(&[], "1")?
            .into_iter()
            .map(|(k, v)| Ok((k, v.parse::<Rational>()?)))
            .collect()
    }

    pub fn exact(&self) -> Result<IterMap> {
        if self.float_only {
            return Err(Error::Domain(
                "--float-only applies to bif1d and bif2d only".into(),
            ));
        }
        IterMap::new(self.model()?, self.point()?)
    }

    /// Exact map with the parameters in `free` allowed to be absent.
    pub fn exact_with_free(&self, free: &[&str]) -> Result<IterMap> {
        let point = self
            .raw(free, "1")?
            .into_iter()
            .map(|(k, v)| Ok((k, v.parse::<Rational>()?)))
            .collect::<Result<_>>()?;
        IterMap::new(self.model()?, point)
    }

    /// Double-precision family; parameters in `free` are swept and may be
    /// absent.
    pub fn float(&self, free: &[&str]) -> Result<FloatMap> {
        let raw = self.raw(free, "1")?;
        let params = raw
            .into_iter()
            .map(|(k, v)| {
                let x = if self.float_only {
                    v.parse::<f64>()
                        .map_err(|_| Error::Parse(format!("not a number: {v:?}")))?
                } else {
                    v.parse::<Rational>()?.to_f64()
                };
                Ok((k, x))
            })
            .collect::<Result<_>>()?;
        FloatMap::new(self.model()?, params)
    }
}

/// `lo:hi` with exact endpoints.
pub fn exact_range(s: &str) -> Result<(Rational, Rational)> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("range {s:?} is not lo:hi")))?;
    let (lo, hi): (Rational, Rational) = (lo.parse()?, hi.parse()?);
    if lo >= hi {
        return Err(Error::Domain(format!("range {s} is empty")));
    }
    Ok((lo, hi))
}

/// `lo:hi` as doubles.
pub fn float_range(s: &str) -> Result<(f64, f64)> {
    let (lo, hi) = exact_range(s)?;
    Ok((lo.to_f64(), hi.to_f64()))
}

pub fn exact(s: &str) -> Result<Rational> {
    s.parse()
}
