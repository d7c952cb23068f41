use super::{Coeff, UniPoly};
use crate::error::{Error, Result};

/// Sylvester matrix of `f` (degree m) and `g` (degree l): l shifted rows of
/// f's coefficients, highest degree first, followed by m shifted rows of g.
pub fn sylvester_matrix<C: Coeff>(f: &UniPoly<C>, g: &UniPoly<C>) -> Result<Vec<Vec<C>>> {
    let (Some(m), Some(l)) = (f.degree(), g.degree()) else {
        return Err(Error::Domain("resultant of a zero polynomial".into()));
    };
    let n = m + l;
    let mut rows = Vec::with_capacity(n);
    for (src, deg, count) in [(f, m, l), (g, l, m)] {
        for shift in 0..count {
            let mut row = vec![C::zero(); n];
            for k in 0..=deg {
                row[shift + k] = src.coeff(deg - k);
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Fraction-free (Bareiss) determinant. Every division is exact in the
/// coefficient ring.
pub fn determinant<C: Coeff>(mut a: Vec<Vec<C>>) -> Result<C> {
    let n = a.len();
    if n == 0 {
        return Ok(C::one());
    }
    let mut negate = false;
    let mut prev = C::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(C::zero()),
            }
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&pivot).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.exact_div(&prev).ok_or_else(|| {
                    Error::Internal("inexact division in fraction-free elimination".into())
                })?;
            }
            a[i][k] = C::zero();
        }
        prev = pivot;
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Sylvester resultant, `f`'s rows first.
pub fn resultant<C: Coeff>(f: &UniPoly<C>, g: &UniPoly<C>) -> Result<C> {
    if f.var() != g.var() && !f.is_constant() && !g.is_constant() {
        return Err(Error::Domain(format!(
            "resultant with different main variables {} and {}",
            f.var(),
            g.var()
        )));
    }
    determinant(sylvester_matrix(f, g)?)
}

/// `res(f, f')` with no leading-coefficient normalization.
pub fn discriminant<C: Coeff>(f: &UniPoly<C>) -> Result<C> {
    match f.degree() {
        Some(d) if d >= 1 => {}
        _ => {
            return Err(Error::Domain(
                "discriminant of a constant polynomial".into(),
            ))
        }
    }
    let df = f.derivative();
    if df.degree() == Some(0) {
        // Linear input: the Sylvester matrix of (f, c) is the 1x1 matrix [c].
        return Ok(df.leading_coeff());
    }
    resultant(f, &df)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{ParamPoly, Rational};

    fn pp(s: &str) -> ParamPoly {
        s.parse().unwrap()
    }

    fn ux(s: &str) -> UniPoly<ParamPoly> {
        pp(s).to_univariate("x")
    }

    #[test]
    fn model1_goldens() {
        assert_eq!(
            resultant(&ux("x^3 - e"), &ux("2 - 3*f*x^2")).unwrap(),
            pp("-27*e^2*f^3 + 8")
        );
        assert_eq!(resultant(&ux("x^3 - e"), &ux("x")).unwrap(), pp("e"));
        assert_eq!(discriminant(&ux("x^3 - e")).unwrap(), pp("27*e^2"));
    }

    #[test]
    fn model2_constant_term_resultant_sign() {
        let f = ux("K*(a - 2*b*x + 3*c*x^2 - 4*d*x^3)");
        assert_eq!(resultant(&f, &ux("x")).unwrap(), pp("-K*a"));
    }

    #[test]
    fn double_root_kills_discriminant() {
        let f = UniPoly::from_ints(&[1, -2, 1], "x");
        assert!(discriminant(&f).unwrap().is_zero());
        assert!(discriminant(&UniPoly::from_ints(&[5], "x")).is_err());
    }

    #[test]
    fn determinant_with_pivoting() {
        let m: Vec<Vec<Rational>> = [[0, 2, 1], [1, 1, 1], [2, 0, 3]]
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
            .collect();
        // 0*(3-0) - 2*(3-2) + 1*(0-2) = -4
        assert_eq!(determinant(m).unwrap(), Rational::from(-4));
    }
}
