use proptest::prelude::*;

use super::*;

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn x(coeffs: &[i64]) -> UniPoly<Rational> {
    UniPoly::from_ints(coeffs, "x")
}

fn linear_product(roots: &[Rational]) -> UniPoly<Rational> {
    let mut p = UniPoly::constant(Rational::one(), "x");
    for r in roots {
        p = &p * &UniPoly::new(vec![-r.clone(), Rational::one()], "x");
    }
    p
}

/// Model 1 map `x + f(e - x^3)` at numeric parameters.
fn model1(e: &str, f: &str) -> UniPoly<Rational> {
    let (e, f) = (q(e), q(f));
    UniPoly::new(vec![&f * &e, Rational::one(), Rational::zero(), -f], "x")
}

#[test]
fn sturm_count_examples() {
    let p = x(&[-1, 0, 0, 1]);
    assert_eq!(
        sturm_count(&p, &RatInterval::open(q("1/10"), q("11/10"))).unwrap(),
        1
    );
    assert_eq!(
        sturm_count(&p, &RatInterval::open(q("-11/10"), q("-1/10"))).unwrap(),
        0
    );
    assert_eq!(
        sturm_count(&x(&[1, 0, 1]), &RatInterval::open(q("-10"), q("10"))).unwrap(),
        0
    );
    assert!(sturm_count(&x(&[]), &RatInterval::open(q("0"), q("1"))).is_err());
}

#[test]
fn sturm_count_honors_endpoints() {
    let p = x(&[-1, 0, 0, 1]);
    assert_eq!(
        sturm_count(&p, &RatInterval::open(q("0"), q("1"))).unwrap(),
        0
    );
    assert_eq!(
        sturm_count(
            &p,
            &RatInterval::new(q("0"), q("1"), IntervalKind::OpenClosed)
        )
        .unwrap(),
        1
    );
    assert_eq!(
        sturm_count(
            &p,
            &RatInterval::new(q("1"), q("2"), IntervalKind::ClosedOpen)
        )
        .unwrap(),
        1
    );
    assert_eq!(sturm_count(&p, &RatInterval::point(q("1"))).unwrap(), 1);
}

#[test]
fn isolate_examples() {
    let r = isolate_roots(&x(&[-1, 0, 0, 1])).unwrap();
    assert_eq!(r.len(), 1);
    assert!(r.intervals[0].contains(&q("1")));
    assert_eq!(r.multiplicities, vec![1]);

    let r = isolate_roots(&x(&[1, -2, 1])).unwrap();
    assert_eq!(r.len(), 1);
    assert!(r.intervals[0].contains(&q("1")));
    assert_eq!(r.multiplicities, vec![2]);
    assert!(isolate_roots(&x(&[])).is_err());
}

#[test]
fn model1_two_cycle_points() {
    let f = model1("1", "1");
    let id = UniPoly::identity("x");
    let fixed = &f - &id;
    let c2 = (&f.compose(&f).unwrap() - &id).exact_div(&fixed).unwrap();
    let all = isolate_roots(&c2).unwrap();
    assert_eq!(all.len(), 4);
    assert!(all.all_simple());
    // Three positive roots; two of them are swapped by the map, the third
    // pairs with the negative root.
    let r = isolate_positive_roots(&c2).unwrap();
    assert_eq!(r.len(), 3);
    let sp = SqfPoly::new(&c2).unwrap();
    let pts: Vec<RatInterval> = r
        .intervals
        .iter()
        .map(|i| sp.refine_isolated(i, &q("1/1000000")))
        .collect();
    let image_lands = |i: &RatInterval| {
        let img = interval_eval(&f, i);
        pts.iter().filter(|j| img.closures_meet(j)).count() == 1
            && pts.iter().any(|j| img.closures_meet(j) && *j != *i)
    };
    let paired: Vec<&RatInterval> = pts.iter().filter(|i| image_lands(i)).collect();
    assert_eq!(paired.len(), 2);
    assert!((paired[0].mid_f64() - 0.276628).abs() < 1e-5);
    assert!((paired[1].mid_f64() - 1.255460).abs() < 1e-5);
}

#[test]
fn refine_examples() {
    let cube = x(&[-1, 0, 0, 1]);
    let i = refine(
        &cube,
        &RatInterval::open(q("1/10"), q("11/10")),
        &q("1/1000"),
    )
    .unwrap();
    assert!(i.width() <= q("1/1000"));
    assert!(i.contains(&q("1")));

    let w = q("1/1000000");
    let i = refine(&x(&[-2, 0, 1]), &RatInterval::open(q("1"), q("2")), &w).unwrap();
    let s = 2f64.sqrt();
    assert!(i.width() <= w);
    assert!(i.lo.to_f64() <= s + 1e-15 && s - 1e-15 <= i.hi.to_f64());
    assert!((i.mid_f64() - 1.414213).abs() < 2e-6);

    // Newton oracle for 2^(1/3).
    let mut t = 1.0f64;
    for _ in 0..60 {
        t -= (t * t * t - 2.0) / (3.0 * t * t);
    }
    let root = refine(&x(&[-2, 0, 0, 1]), &RatInterval::open(q("1"), q("2")), &w).unwrap();
    assert!(root.width() <= w);
    assert!((root.mid_f64() - t).abs() <= 1e-6);
}

#[test]
fn refine_rejects_non_isolating() {
    let p = x(&[0, -1, 0, 1]);
    let err = refine(&p, &RatInterval::open(q("-2"), q("2")), &q("1/10")).unwrap_err();
    assert!(matches!(err, Error::Certification(_)));
    assert!(refine(&p, &RatInterval::open(q("2"), q("3")), &q("1/10")).is_err());
}

#[test]
fn refine_with_excluded_root_endpoint() {
    // Roots -1, 0, 1; (0, 2) isolates 1 while 0 is an excluded endpoint.
    let p = x(&[0, -1, 0, 1]);
    let i = refine(&p, &RatInterval::open(q("0"), q("2")), &q("1/100")).unwrap();
    assert!(i.contains(&q("1")) || i == RatInterval::point(q("1")));
}

#[test]
fn interval_eval_examples() {
    let sq = x(&[0, 0, 1]);
    let e = interval_eval(&sq, &RatInterval::closed(q("-1"), q("2")));
    assert!(e.lo <= q("0") && e.hi >= q("4"));
    let m = x(&[1, 0, -3]);
    assert_eq!(
        interval_eval(&m, &RatInterval::point(q("1"))),
        RatInterval::point(q("-2"))
    );
}

#[test]
fn model1_two_cycle_multiplier_is_decided() {
    let f = model1("1", "1");
    let id = UniPoly::identity("x");
    let c2 = (&f.compose(&f).unwrap() - &id)
        .exact_div(&(&f - &id))
        .unwrap();
    let roots = isolate_positive_roots(&c2).unwrap();
    let sp = SqfPoly::new(&c2).unwrap();
    let mut roots = roots;
    // Keep the all-positive orbit {0.2766.., 1.2554..}.
    roots.intervals = roots
        .intervals
        .iter()
        .map(|i| sp.refine_isolated(i, &q("1/100")))
        .filter(|i| i.hi.to_f64() < 1.4)
        .collect();
    assert_eq!(roots.intervals.len(), 2);
    let fp = f.derivative();
    let mut width = q("1/4");
    let verdict = loop {
        let pts: Vec<RatInterval> = roots
            .intervals
            .iter()
            .map(|i| sp.refine_isolated(i, &width))
            .collect();
        let mut prod = RatInterval::point(Rational::one());
        for p in &pts {
            prod = prod.mul(&interval_eval(&fp, p));
        }
        let one = Rational::one();
        if prod.hi < -one.clone() || prod.lo > one {
            break "unstable";
        }
        if prod.lo > -one.clone() && prod.hi < one {
            break "stable";
        }
        width = width.mul_pow2(-1);
        assert!(width > q("1/1000000000000"));
    };
    // Float oracle: iterate the map and form the product of derivatives.
    let fl = |t: f64| t + 1.0 - t * t * t;
    let dfl = |t: f64| 1.0 - 3.0 * t * t;
    let mut lo = sp
        .refine_isolated(&roots.intervals[0], &q("1/1000000"))
        .mid_f64();
    for _ in 0..200 {
        // Newton on F(F(t)) - t near the isolated root.
        let g = fl(fl(lo)) - lo;
        let dg = dfl(fl(lo)) * dfl(lo) - 1.0;
        lo -= g / dg;
    }
    let mult = dfl(lo) * dfl(fl(lo));
    let expected = if mult.abs() < 1.0 {
        "stable"
    } else {
        "unstable"
    };
    assert_eq!(verdict, expected);
}

#[test]
fn descartes_and_sturm_counts_agree_at_high_degree() {
    let roots: Vec<Rational> = (1..=60).map(|k| Rational::new(k, 7)).collect();
    let p = linear_product(&roots);
    let sp = SqfPoly::assume_squarefree(&p).unwrap();
    assert!(sp.degree() > STURM_MAX_DEGREE);
    assert_eq!(sp.count_in(&RatInterval::open(q("0"), q("30/7"))), 29);
    assert_eq!(sp.count_in(&RatInterval::closed(q("0"), q("30/7"))), 30);
    assert_eq!(
        sp.count_in(&RatInterval::new(
            q("1/7"),
            q("2"),
            IntervalKind::OpenClosed
        )),
        13
    );
    let iso = isolate_roots(&p).unwrap();
    assert_eq!(iso.len(), 60);
    for (iv, r) in iso.intervals.iter().zip(&roots) {
        assert!(iv.contains(r), "{iv} misses {r}");
    }
}

#[test]
fn close_roots_are_separated() {
    let roots = vec![q("1"), q("1000000001/1000000000"), q("-3/2"), q("0")];
    let r = isolate_roots(&linear_product(&roots)).unwrap();
    assert_eq!(r.len(), 4);
    let pos = isolate_positive_roots(&linear_product(&roots)).unwrap();
    assert_eq!(pos.len(), 2);
}

/// Count roots in `i` by refining every isolating interval until it sits
/// inside or outside `i`.
fn oracle_count(f: &UniPoly<Rational>, i: &RatInterval) -> usize {
    let list = isolate_roots(f).unwrap();
    let sp = SqfPoly::new(f).unwrap();
    let mut n = 0;
    for j in &list.intervals {
        let mut j = j.clone();
        loop {
            if j.is_point() {
                n += usize::from(i.contains(&j.lo));
                break;
            }
            let hit = [&i.lo, &i.hi]
                .into_iter()
                .find(|t| j.contains(t) && sp.sign_at(t) == 0)
                .cloned();
            if let Some(t) = hit {
                n += usize::from(i.contains(&t));
                break;
            }
            if j.hi <= i.lo || j.lo >= i.hi {
                break;
            }
            if j.lo >= i.lo && j.hi <= i.hi {
                n += 1;
                break;
            }
            j = sp.refine_isolated(&j, &j.width().mul_pow2(-1));
        }
    }
    n
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

fn random_poly() -> impl Strategy<Value = UniPoly<Rational>> {
    (
        proptest::collection::vec(small_rational(), 0..6),
        proptest::collection::vec((-5i64..=5, 1i64..=5), 0..3),
        0usize..3,
    )
        .prop_map(|(roots, quads, repeat)| {
            let mut rs = roots.clone();
            for r in roots.iter().take(repeat) {
                rs.push(r.clone());
            }
            let mut p = linear_product(&rs);
            for (b, c) in quads {
                p = &p * &x(&[c, b, 1]);
            }
            if p.is_constant() {
                p = x(&[-3, 0, 1]);
            }
            p
        })
}

fn random_interval() -> impl Strategy<Value = RatInterval> {
    (small_rational(), small_rational(), 0u8..4).prop_map(|(a, b, k)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let kind = [
            IntervalKind::Open,
            IntervalKind::Closed,
            IntervalKind::OpenClosed,
            IntervalKind::ClosedOpen,
        ][k as usize];
        RatInterval::new(lo, hi, kind)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sturm_count_matches_isolation(f in random_poly(), i in random_interval()) {
        prop_assert_eq!(sturm_count(&f, &i).unwrap(), oracle_count(&f, &i));
    }

    #[test]
    fn multiplicities_bounded_by_degree(f in random_poly()) {
        let r = isolate_roots(&f).unwrap();
        prop_assert!(r.total_multiplicity() as usize <= f.degree().unwrap());
    }

    #[test]
    fn distinct_linear_factors_fill_the_degree(
        roots in proptest::collection::btree_set((-60i64..=60, 1i64..=9), 1..12)
    ) {
        let rs: std::collections::BTreeSet<Rational> =
            roots.into_iter().map(|(n, d)| Rational::new(n, d)).collect();
        let rs: Vec<Rational> = rs.into_iter().collect();
        let p = linear_product(&rs);
        let r = isolate_roots(&p).unwrap();
        prop_assert_eq!(r.total_multiplicity() as usize, rs.len());
        for (iv, root) in r.intervals.iter().zip(&rs) {
            prop_assert!(iv.contains(root));
        }
    }

    #[test]
    fn refine_nests_and_keeps_sign_change(f in random_poly(), w in 1i64..1000) {
        let list = isolate_roots(&f).unwrap();
        let sp = SqfPoly::new(&f).unwrap();
        let width = Rational::new(1, w);
        for j in &list.intervals {
            let r = refine(&f, j, &width).unwrap();
            prop_assert!(r.subset_of(j));
            prop_assert!(r.width() <= width || r.is_point());
            if r.is_point() {
                prop_assert_eq!(sp.sign_at(&r.lo), 0);
            } else {
                prop_assert_eq!(sp.count_in(&r), 1);
                prop_assert!(sp.sign_at(&r.lo) * sp.sign_at(&r.hi) <= 0);
            }
        }
    }

    #[test]
    fn interval_eval_is_inclusion_monotone(
        f in random_poly(),
        a in small_rational(), b in small_rational(), c in small_rational(), d in small_rational()
    ) {
        let mut v = [a, b, c, d];
        v.sort();
        let [a, b, c, d] = v;
        let outer = RatInterval::closed(a, d);
        let inner = RatInterval::closed(b, c);
        let ei = interval_eval(&f, &inner);
        let eo = interval_eval(&f, &outer);
        prop_assert!(ei.subset_of(&eo), "{} not within {}", ei, eo);
        // Every sampled value lies in the enclosure.
        for t in [&inner.lo, &inner.hi, &inner.midpoint()] {
            prop_assert!(ei.closure_contains(&f.eval(t)));
        }
    }
}
