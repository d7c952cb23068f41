//! Iterated composition on integer polynomials over a common denominator,
//! which avoids a gcd per coefficient operation at high degree.

use rug::{Assign, Integer};

use crate::exactalg::{Rational, UniPoly};

/// `num(x) / den` with `den > 0`.
struct Scaled {
    num: Vec<Integer>,
    den: Integer,
}

impl Scaled {
    fn from_poly(p: &UniPoly<Rational>) -> Scaled {
        let mut den = Integer::from(1);
        for c in p.coeffs() {
            den.lcm_mut(c.denom());
        }
        let num = p
            .coeffs()
            .iter()
            .map(|c| Integer::from(c.numer() * Integer::from(&den / c.denom())))
            .collect();
        Scaled { num, den }
    }

    fn to_poly(&self) -> UniPoly<Rational> {
        let den = Rational::from_integer(self.den.clone());
        let coeffs = self
            .num
            .iter()
            .map(|c| Rational::from_integer(c.clone()) / &den)
            .collect();
        UniPoly::new(coeffs, "x")
    }

    fn reduce(&mut self) {
        let mut g = self.den.clone();
        for c in &self.num {
            if g == 1 {
                return;
            }
            g.gcd_mut(c);
        }
        if g > 1 {
            for c in self.num.iter_mut() {
                c.div_exact_mut(&g);
            }
            self.den.div_exact_mut(&g);
        }
    }
}

pub(crate) fn mul(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Integer::new(); a.len() + b.len() - 1];
    let mut t = Integer::new();
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            t.assign(x * y);
            out[i + j] += &t;
        }
    }
    out
}

/// `f(g)` for scaled polynomials `f` and `g`.
fn compose(f: &Scaled, g: &Scaled) -> Scaled {
    let m = f.num.len() - 1;
    // f(h/D) = sum f_i h^i D^(m-i) / (s D^m)
    let mut dpows = vec![Integer::from(1)];
    for i in 1..=m {
        let next = Integer::from(&dpows[i - 1] * &g.den);
        dpows.push(next);
    }
    let mut acc: Vec<Integer> = Vec::new();
    let mut hpow: Vec<Integer> = vec![Integer::from(1)];
    for (i, fi) in f.num.iter().enumerate() {
        if i > 0 {
            hpow = mul(&hpow, &g.num);
        }
        if *fi == 0 {
            continue;
        }
        let scale = Integer::from(fi * &dpows[m - i]);
        if acc.len() < hpow.len() {
            acc.resize(hpow.len(), Integer::new());
        }
        for (a, h) in acc.iter_mut().zip(&hpow) {
            *a += Integer::from(h * &scale);
        }
    }
    while acc.last().is_some_and(|c| *c == 0) {
        acc.pop();
    }
    let mut out = Scaled {
        num: acc,
        den: Integer::from(&f.den * &dpows[m]),
    };
    out.reduce();
    out
}

/// `F^n` for `n >= 1`.
pub(crate) fn iterate(f: &UniPoly<Rational>, n: u32) -> UniPoly<Rational> {
    let fs = Scaled::from_poly(f);
    let mut g = Scaled::from_poly(f);
    for _ in 1..n {
        g = compose(&fs, &g);
    }
    g.to_poly()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_rational_composition() {
        let f = UniPoly::new(
            vec![
                Rational::new(18, 5),
                Rational::new(-7, 3),
                Rational::new(9, 5),
                Rational::new(-1, 5),
            ],
            "x",
        );
        let ff = f.compose(&f).unwrap();
        assert_eq!(iterate(&f, 2), ff);
        assert_eq!(iterate(&f, 3), f.compose(&ff).unwrap());
        assert_eq!(iterate(&f, 1), f);
    }
}
