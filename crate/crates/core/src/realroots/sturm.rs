use rug::Integer;

use crate::exactalg::intpoly::sign_at;
use crate::exactalg::Rational;

/// Divide by the positive content, keeping every sign.
fn scale_down(v: &mut Vec<Integer>) {
    while v.last().is_some_and(|c| *c == 0) {
        v.pop();
    }
    let mut g = Integer::new();
    for c in v.iter() {
        g.gcd_mut(c);
        if g == 1 {
            return;
        }
    }
    if g > 1 {
        for c in v.iter_mut() {
            c.div_exact_mut(&g);
        }
    }
}

/// Remainder of `lc(b)^k a` by `b`, with the number `k` of scalings used.
fn prem(a: &[Integer], b: &[Integer]) -> (Vec<Integer>, u32) {
    let mut r = a.to_vec();
    let mut k = 0;
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= Integer::from(&lr * bj);
        }
        r.pop();
        k += 1;
        while r.last().is_some_and(|c| *c == 0) {
            r.pop();
        }
    }
    (r, k)
}

/// Sturm sequence of a squarefree integer polynomial, each element scaled by
/// a positive constant.
pub(crate) fn sturm_sequence(p: &[Integer]) -> Vec<Vec<Integer>> {
    let mut seq = vec![p.to_vec()];
    let d: Vec<Integer> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| Integer::from(c * i as u32))
        .collect();
    if d.is_empty() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.len() < 2 {
            break;
        }
        let (mut r, delta) = prem(a, b);
        if r.is_empty() {
            break;
        }
        // prem scales by lc(b)^delta; the Sturm step wants -rem.
        let flip = !(b[b.len() - 1] < 0 && delta % 2 == 1);
        if flip {
            for c in r.iter_mut() {
                *c = Integer::from(-&*c);
            }
        }
        scale_down(&mut r);
        seq.push(r);
    }
    seq
}

fn variations_at(seq: &[Vec<Integer>], t: &Rational) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in seq {
        let sg = sign_at(s, t);
        if sg != 0 {
            if last != 0 && sg != last {
                v += 1;
            }
            last = sg;
        }
    }
    v
}

/// Number of roots of squarefree `p` in the half-open interval `(a, b]`.
pub(crate) fn count_half_open(seq: &[Vec<Integer>], a: &Rational, b: &Rational) -> usize {
    variations_at(seq, a).saturating_sub(variations_at(seq, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::UniPoly;

    fn sequence_of(p: &UniPoly<Rational>) -> Vec<Vec<Integer>> {
        sturm_sequence(&crate::exactalg::intpoly::primitive_part(p))
    }

    #[test]
    fn counts_roots_of_cubic() {
        let seq = sequence_of(&UniPoly::from_ints(&[0, -1, 0, 1], "x"));
        let q = |s: &str| s.parse::<Rational>().unwrap();
        assert_eq!(count_half_open(&seq, &q("-2"), &q("2")), 3);
        assert_eq!(count_half_open(&seq, &q("-1"), &q("1")), 2);
        assert_eq!(count_half_open(&seq, &q("1/2"), &q("3/2")), 1);
    }
}
