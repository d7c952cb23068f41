//! Integer-coefficient helpers: primitive parts, exact sign evaluation, and
//! a modular coprimality test that short-circuits most gcd computations.

use rug::Integer;

use super::{Rational, UniPoly};

/// Primitive integer multiple of `p` with positive leading coefficient,
/// coefficients low to high. Zero maps to an empty vector.
pub fn primitive_part(p: &UniPoly<Rational>) -> Vec<Integer> {
    if p.is_zero() {
        return Vec::new();
    }
    let mut den = Integer::from(1);
    for c in p.coeffs() {
        den.lcm_mut(c.denom());
    }
    let mut v: Vec<Integer> = p
        .coeffs()
        .iter()
        .map(|c| Integer::from(c.numer() * (Integer::from(&den / c.denom()))))
        .collect();
    make_primitive(&mut v);
    v
}

/// Divide out the content and make the leading coefficient positive.
pub fn make_primitive(v: &mut Vec<Integer>) {
    while v.last().is_some_and(|c| *c == 0) {
        v.pop();
    }
    let Some(last) = v.last() else { return };
    let neg = *last < 0;
    let mut g = Integer::new();
    for c in v.iter() {
        g.gcd_mut(c);
        if g == 1 {
            break;
        }
    }
    if g != 1 || neg {
        if neg {
            g = -g;
        }
        for c in v.iter_mut() {
            c.div_exact_mut(&g);
        }
    }
}

pub fn to_rational_poly(v: &[Integer], var: &str) -> UniPoly<Rational> {
    UniPoly::new(v.iter().cloned().map(Rational::from_integer).collect(), var)
}

/// Sign of `p(t)` computed exactly.
pub fn sign_at(p: &[Integer], t: &Rational) -> i32 {
    if p.is_empty() {
        return 0;
    }
    let n = t.numer();
    let d = t.denom();
    let deg = p.len() - 1;
    // p(n/d) d^deg = sum a_i n^i d^(deg - i)
    let mut acc = p[deg].clone();
    if *d == 1 {
        for a in p[..deg].iter().rev() {
            acc *= n;
            acc += a;
        }
    } else if d.is_power_of_two() {
        let k = d.significant_bits() - 1;
        for (steps, a) in p[..deg].iter().rev().enumerate() {
            acc *= n;
            acc += Integer::from(a << (k * (steps as u32 + 1)));
        }
    } else {
        let mut dp = Integer::from(1);
        for a in p[..deg].iter().rev() {
            dp *= d;
            acc *= n;
            acc += Integer::from(a * &dp);
        }
    }
    acc.cmp0() as i32
}

/// Exact value `p(t)`.
pub fn eval_rational(p: &[Integer], t: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for a in p.iter().rev() {
        acc = acc * t + Rational::from_integer(a.clone());
    }
    acc
}

pub fn derivative(p: &[Integer]) -> Vec<Integer> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| Integer::from(c * i as u32))
        .collect()
}

const PRIMES: [u64; 4] = [
    2_305_843_009_213_693_951,
    4_611_686_018_427_387_847,
    4_611_686_018_427_387_817,
    4_611_686_018_427_387_787,
];

fn reduce(p: &[Integer], m: u64) -> Vec<u64> {
    let mut v: Vec<u64> = p
        .iter()
        .map(|c| {
            let mut t = Integer::from(c % m);
            if t < 0 {
                t += m;
            }
            t.to_u64().expect("reduced residue fits in u64")
        })
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, m: u64) -> usize {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let inv = powmod(*b.last().unwrap(), m - 2, m);
        while a.len() >= b.len() {
            let q = mulmod(*a.last().unwrap(), inv, m);
            let shift = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                let t = mulmod(q, *bj, m);
                a[shift + j] = (a[shift + j] + m - t) % m;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// `Some(true)` certifies that `a` and `b` share no complex root. Uses a
/// prime that divides neither leading coefficient; a gcd of degree 0 modulo
/// such a prime forces a constant gcd over the rationals. `None` means no
/// prime was conclusive.
pub fn certainly_coprime(a: &[Integer], b: &[Integer]) -> Option<bool> {
    if a.is_empty() || b.is_empty() {
        return None;
    }
    if a.len() == 1 || b.len() == 1 {
        return Some(true);
    }
    for &m in &PRIMES {
        let ra = reduce(a, m);
        let rb = reduce(b, m);
        if ra.len() != a.len() || rb.len() != b.len() {
            continue;
        }
        if gcd_degree_mod(ra, rb, m) == 0 {
            return Some(true);
        }
    }
    None
}
