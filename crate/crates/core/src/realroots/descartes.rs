//! Descartes-rule bisection (Vincent–Collins–Akritas) on squarefree integer
//! polynomials. All work happens on the unit interval after an affine change
//! of variable; children are produced by `2^n q(y/2)` and its Taylor shift.

use rug::Integer;

use crate::exactalg::Rational;

/// Root found on the unit interval in the scaled variable: either exactly
/// at `c / 2^j` or alone in the open interval `(c/2^j, (c+1)/2^j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum UnitRoot {
    Exact { c: Integer, j: u32 },
    Open { c: Integer, j: u32 },
}

impl UnitRoot {
    fn key(&self) -> Rational {
        match self {
            UnitRoot::Exact { c, j } => Rational::from_integer(c.clone()).mul_pow2(-(*j as i32)),
            UnitRoot::Open { c, j } => {
                Rational::from_integer(Integer::from(c * 2u32) + 1).mul_pow2(-(*j as i32) - 1)
            }
        }
    }
}

/// In-place `p(x) -> p(x + 1)`.
pub(crate) fn taylor_shift_one(a: &mut [Integer]) {
    let n = a.len();
    if n < 2 {
        return;
    }
    for i in 0..n - 1 {
        for j in (i..n - 1).rev() {
            let (lo, hi) = a.split_at_mut(j + 1);
            lo[j] += &hi[0];
        }
    }
}

fn sign_variations<'a>(it: impl Iterator<Item = &'a Integer>) -> usize {
    let mut last = 0;
    let mut v = 0;
    for c in it {
        let s = c.cmp0() as i32;
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

/// Upper bound on the number of roots of `q` in `(0, 1)`, exact when 0 or 1.
pub(crate) fn descartes_bound(q: &[Integer]) -> usize {
    let mut t: Vec<Integer> = q.iter().rev().cloned().collect();
    // Cheap exit: no variations before shifting means none after.
    if sign_variations(t.iter()) == 0 {
        return 0;
    }
    taylor_shift_one(&mut t);
    sign_variations(t.iter())
}

fn strip_low_zeros(q: &mut Vec<Integer>) -> usize {
    let k = q.iter().take_while(|c| **c == 0).count();
    if k > 0 {
        q.drain(..k);
    }
    k
}

/// Divide out the largest common power of two.
fn remove_pow2(q: &mut [Integer]) {
    let shift = q
        .iter()
        .filter(|c| **c != 0)
        .map(|c| c.find_one(0).unwrap_or(0))
        .min()
        .unwrap_or(0);
    if shift > 0 {
        for c in q.iter_mut() {
            *c >>= shift;
        }
    }
}

/// `2^n q(y/2)`, normalized by a power of two.
fn left_half(q: &[Integer]) -> Vec<Integer> {
    let n = q.len() - 1;
    let mut out: Vec<Integer> = q
        .iter()
        .enumerate()
        .map(|(i, c)| Integer::from(c << (n - i) as u32))
        .collect();
    remove_pow2(&mut out);
    out
}

/// Isolate the roots of `q` in the open unit interval. `q` must be
/// squarefree and must not vanish at 0 or 1 (callers test the endpoints).
/// Roots that land on dyadic midpoints are reported exactly.
pub(crate) fn isolate_unit(q: &[Integer]) -> Vec<UnitRoot> {
    let mut out = Vec::new();
    let mut start = q.to_vec();
    strip_low_zeros(&mut start);
    if start.len() < 2 {
        return out;
    }
    let mut stack: Vec<(Vec<Integer>, Integer, u32)> = vec![(start, Integer::new(), 0)];
    while let Some((p, c, j)) = stack.pop() {
        if p.len() < 2 {
            continue;
        }
        match descartes_bound(&p) {
            0 => continue,
            1 => {
                out.push(UnitRoot::Open { c, j });
                continue;
            }
            _ => {}
        }
        let left = left_half(&p);
        let mut right = left.clone();
        taylor_shift_one(&mut right);
        let c2 = Integer::from(&c * 2u32);
        if strip_low_zeros(&mut right) > 0 {
            out.push(UnitRoot::Exact {
                c: Integer::from(&c2 + 1u32),
                j: j + 1,
            });
        }
        remove_pow2(&mut right);
        stack.push((right, Integer::from(&c2 + 1u32), j + 1));
        stack.push((left, c2, j + 1));
    }
    out.sort_by_key(|r| r.key());
    out
}

/// Number of roots of `q` in the open unit interval, without recording them.
pub(crate) fn count_unit(q: &[Integer]) -> usize {
    isolate_unit(q).len()
}

/// `p(2^k y)` for integer `k >= 0`.
pub(crate) fn scale_pow2(p: &[Integer], k: u32) -> Vec<Integer> {
    p.iter()
        .enumerate()
        .map(|(i, c)| Integer::from(c << (k * i as u32)))
        .collect()
}

/// `p(-x)`.
pub(crate) fn reflect(p: &[Integer]) -> Vec<Integer> {
    p.iter()
        .enumerate()
        .map(|(i, c)| {
            if i % 2 == 1 {
                Integer::from(-c)
            } else {
                c.clone()
            }
        })
        .collect()
}

/// Integer multiple of `p(lo + (hi - lo) y)`, a positive multiple so signs
/// are preserved.
pub(crate) fn affine_to_unit(p: &[Integer], lo: &Rational, hi: &Rational) -> Vec<Integer> {
    // With lo = a0/D and hi - lo = b0/D on a common denominator D:
    // D^n p((a0 + b0 y)/D) via Horner on integer polynomials.
    let w = hi - lo;
    let mut den = Integer::from(lo.denom());
    den.lcm_mut(w.denom());
    let a0 = Integer::from(lo.numer() * Integer::from(&den / lo.denom()));
    let b0 = Integer::from(w.numer() * Integer::from(&den / w.denom()));
    let n = p.len() - 1;
    let mut acc: Vec<Integer> = vec![p[n].clone()];
    let mut dpow = Integer::from(1);
    for k in (0..n).rev() {
        dpow *= &den;
        // acc = acc * (a0 + b0 y) + p[k] * D^(n-k)
        let mut next = vec![Integer::new(); acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i] += Integer::from(c * &a0);
            next[i + 1] += Integer::from(c * &b0);
        }
        next[0] += Integer::from(&p[k] * &dpow);
        acc = next;
    }
    acc
}

/// `ceil(log2)` of a Fujiwara-style bound on the absolute value of every
/// complex root of `p` (degree >= 1).
pub(crate) fn root_bound_log2(p: &[Integer]) -> u32 {
    let n = p.len() - 1;
    let bn = p[n].significant_bits() as i64;
    let mut best: i64 = 0;
    for i in 1..=n {
        let c = &p[n - i];
        if *c == 0 {
            continue;
        }
        // |c / a_n| < 2^(bits(c) - bits(a_n) + 1)
        let e = c.significant_bits() as i64 - bn + 1;
        let e = if i == n { e - 1 } else { e };
        let r = e.div_euclid(i as i64) + i64::from(e.rem_euclid(i as i64) != 0);
        best = best.max(r);
    }
    (best + 1).max(0) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&c| Integer::from(c)).collect()
    }

    #[test]
    fn shift_matches_binomial_expansion() {
        // x^3 -> (x+1)^3
        let mut a = iv(&[0, 0, 0, 1]);
        taylor_shift_one(&mut a);
        assert_eq!(a, iv(&[1, 3, 3, 1]));
    }

    #[test]
    fn unit_isolation_finds_midpoint_root() {
        // (2y - 1)(4y - 1)(4y - 3)
        let a = iv(&[-1, 2]);
        let b = iv(&[-1, 4]);
        let c = iv(&[-3, 4]);
        let mul = |x: &[Integer], y: &[Integer]| {
            let mut o = vec![Integer::new(); x.len() + y.len() - 1];
            for (i, p) in x.iter().enumerate() {
                for (j, q) in y.iter().enumerate() {
                    o[i + j] += Integer::from(p * q);
                }
            }
            o
        };
        let q = mul(&mul(&a, &b), &c);
        let roots = isolate_unit(&q);
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&UnitRoot::Exact {
            c: Integer::from(1),
            j: 1
        }));
    }

    #[test]
    fn affine_map_preserves_roots() {
        // x^2 - 2 on (1, 2): y in (0,1) with (1 + y)^2 - 2
        let q = affine_to_unit(&iv(&[-2, 0, 1]), &Rational::one(), &Rational::from(2));
        assert_eq!(q, iv(&[-1, 2, 1]));
        assert_eq!(count_unit(&q), 1);
    }

    #[test]
    fn bound_covers_roots() {
        // roots 100 and -3
        let p = iv(&[-300, -97, 1]);
        assert!(1u64 << root_bound_log2(&p) >= 100);
    }
}
