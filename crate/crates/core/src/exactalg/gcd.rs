use super::intpoly::{certainly_coprime, primitive_part, to_rational_poly};
use super::{Rational, UniPoly};
use crate::error::{Error, Result};

/// Monic gcd over the rationals.
pub fn gcd(a: &UniPoly<Rational>, b: &UniPoly<Rational>) -> Result<UniPoly<Rational>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Domain("gcd of two zero polynomials".into()));
    }
    let var = if a.is_zero() { b.var() } else { a.var() }.to_string();
    if a.is_zero() {
        return Ok(b.monic().with_var(&var));
    }
    if b.is_zero() {
        return Ok(a.monic());
    }
    if certainly_coprime(&primitive_part(a), &primitive_part(b)) == Some(true) {
        return Ok(UniPoly::constant(Rational::one(), &var));
    }
    let (mut r0, mut r1) = if a.degree() >= b.degree() {
        (a.monic(), b.monic())
    } else {
        (b.monic(), a.monic())
    };
    while !r1.is_zero() {
        let (_, r) = r0.div_rem(&r1)?;
        r0 = r1;
        r1 = r.monic();
    }
    Ok(r0.with_var(&var))
}

/// Primitive integer-coefficient form of `p` (positive leading coefficient).
pub fn primitive(p: &UniPoly<Rational>) -> UniPoly<Rational> {
    to_rational_poly(&primitive_part(p), p.var())
}

/// Squarefree part: product of the distinct irreducible factors, with
/// coprime integer coefficients.
pub fn squarefree(p: &UniPoly<Rational>) -> Result<UniPoly<Rational>> {
    if p.is_zero() {
        return Err(Error::Domain(
            "squarefree part of the zero polynomial".into(),
        ));
    }
    if p.is_constant() {
        return Ok(UniPoly::constant(Rational::one(), p.var()));
    }
    let g = gcd(p, &p.derivative())?;
    if g.is_constant() {
        return Ok(primitive(p));
    }
    Ok(primitive(&p.exact_div(&g)?))
}

/// The combined operation: monic gcd when `other` is given, squarefree
/// part otherwise.
pub fn gcd_squarefree(
    p: &UniPoly<Rational>,
    other: Option<&UniPoly<Rational>>,
) -> Result<UniPoly<Rational>> {
    match other {
        Some(q) => gcd(p, q),
        None => squarefree(p),
    }
}

/// Yun's squarefree decomposition `p = c · ∏ f_i^i`; returns the nonconstant
/// `(f_i, i)` pairs with primitive `f_i`.
pub fn squarefree_decomposition(p: &UniPoly<Rational>) -> Result<Vec<(UniPoly<Rational>, u32)>> {
    if p.is_zero() {
        return Err(Error::Domain("decomposition of the zero polynomial".into()));
    }
    let mut out = Vec::new();
    if p.is_constant() {
        return Ok(out);
    }
    let dp = p.derivative();
    let a0 = gcd(p, &dp)?;
    if a0.is_constant() {
        out.push((primitive(p), 1));
        return Ok(out);
    }
    let mut b = p.exact_div(&a0)?;
    let mut c = dp.exact_div(&a0)?;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    loop {
        let a = gcd(&b, &d)?;
        if !a.is_constant() {
            out.push((primitive(&a), i));
        }
        b = b.exact_div(&a)?;
        if b.is_constant() {
            break;
        }
        c = d.exact_div(&a)?;
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}
