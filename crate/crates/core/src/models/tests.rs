use proptest::prelude::*;

use super::*;

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn m1(e: &str, f: &str) -> IterMap {
    IterMap::model1(q(e), q(f)).unwrap()
}

fn point(pairs: &[(&str, &Rational)]) -> BTreeMap<String, Rational> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), (*v).clone()))
        .collect()
}

#[test]
fn build_map_examples() {
    assert_eq!(
        m1("1", "1").update(),
        &UniPoly::from_ints(&[1, 1, 0, -1], "x")
    );
    let m = IterMap::model2_standard(q("1")).unwrap();
    let expected = UniPoly::new(
        vec![q("18/5"), q("1") - q("24/5"), q("9/5"), q("-1/5")],
        "x",
    );
    assert_eq!(m.update(), &expected);
    assert!(matches!(
        IterMap::model1(q("0"), q("1")),
        Err(Error::Domain(_))
    ));
    let mut p = BTreeMap::new();
    p.insert("e".to_string(), q("1"));
    assert!(build_map(Model::Model1, &p).is_err());
    p.insert("f".to_string(), q("1"));
    p.insert("g".to_string(), q("1"));
    assert!(build_map(Model::Model1, &p).is_err());
}

#[test]
fn power_degrees_and_spot_checks() {
    let m = m1("3/2", "2/3");
    assert_eq!(m.power(0), UniPoly::identity("x"));
    assert_eq!(&m.power(1), m.update());
    let p2 = m.power(2);
    assert_eq!(p2.degree(), Some(9));
    for t in ["1/3", "-2", "5/7", "11/4", "0"] {
        let t = q(t);
        assert_eq!(p2.eval(&t), m.update().eval(&m.update().eval(&t)));
    }
    let m2 = IterMap::model2_standard(q("3303/1000")).unwrap();
    assert_eq!(m2.power(5).degree(), Some(243));
}

#[test]
fn cycle_poly_model1_goldens() {
    let (e, f) = (q("3/2"), q("2/3"));
    let m = IterMap::model1(e.clone(), f.clone()).unwrap();
    let c1 = m.cycle_poly(1).unwrap();
    let expected = UniPoly::new(vec![-e.clone(), q("0"), q("0"), q("1")], "x");
    assert_eq!(c1, crate::exactalg::primitive(&expected));
    let c2 = m.cycle_poly(2).unwrap();
    let t12 = model1_two_cycle_poly()
        .substitute(&point(&[("e", &e), ("f", &f)]))
        .to_rational_univariate("x")
        .unwrap();
    assert_eq!(c2, crate::exactalg::primitive(&t12));
}

#[test]
fn cycle_poly_symbolic_matches_closed_form() {
    let f = Model::Model1.symbolic_update();
    let id = UniPoly::identity("x");
    let c1 = &f - &id;
    let c2 = (&f.compose(&f).unwrap() - &id).exact_div(&c1).unwrap();
    assert_eq!(c2.degree(), Some(6));
    let lc = c2.leading_coeff();
    let expected = model1_two_cycle_poly();
    // Compare coefficientwise up to the common constant -f^3/f^3 scaling.
    let t12 = expected.to_univariate("x");
    for k in 0..=6 {
        let a = c2.coeff(k);
        let b = t12.coeff(k);
        assert_eq!(&a * &t12.leading_coeff(), &b * &lc, "coefficient {k}");
    }
}

#[test]
fn cycle_poly_degree_law_at_six() {
    let m = m1("1", "1");
    assert_eq!(m.cycle_poly(6).unwrap().degree(), Some(729 - 27 - 9 + 3));
    assert!(matches!(m.cycle_poly(0), Err(Error::Domain(_))));
}

#[test]
fn multiplier_examples() {
    let m = m1("2", "5/3");
    assert_eq!(
        m.multiplier_poly(1),
        UniPoly::new(vec![q("1"), q("0"), q("-5")], "x")
    );
    let m2 = IterMap::model2_standard(q("7/4")).unwrap();
    // 1 - K(4.8 - 3.6x + 0.6x^2)
    let k = q("7/4");
    let expected = UniPoly::new(
        vec![q("1") - &k * &q("24/5"), &k * &q("18/5"), -(&k * &q("3/5"))],
        "x",
    );
    assert_eq!(m2.multiplier_poly(1), expected);
    let fp = m.derivative();
    let chain = &fp.compose(m.update()).unwrap() * &fp;
    assert_eq!(m.multiplier_poly(2), chain);
}

#[test]
fn condition_polys_signs() {
    let set = model2_condition_polys().unwrap();
    let p = |k: &str| {
        [
            ("a", "1"),
            ("b", "1"),
            ("c", "1/4"),
            ("d", "1/64"),
            ("K", k),
        ]
        .iter()
        .map(|(n, v)| (n.to_string(), q(v)))
        .collect::<BTreeMap<_, _>>()
    };
    assert!(set.r(1).eval(&p("1")).unwrap().is_negative());
    assert!(set.r(2).eval(&p("1")).unwrap().is_positive());
}

#[test]
fn model1_threshold_in_normalized_variables() {
    // e = (a-c)/(4b), f = 4bK gives e^2 f^3 = 4b(a-c)^2 K^3.
    for (a, b, c, k) in [
        ("3", "1", "1", "1/2"),
        ("18/5", "12/5", "3/5", "7/3"),
        ("5", "2", "1/7", "1/9"),
    ] {
        let (a, b, c, k) = (q(a), q(b), q(c), q(k));
        let e = (&a - &c) / &(&q("4") * &b);
        let f = &q("4") * &b * &k;
        let lhs = e.pow(2) * f.pow(3);
        let rhs = &q("4") * &b * (&a - &c).pow(2) * k.pow(3);
        assert_eq!(lhs, rhs);
    }
}

fn pos_rational() -> impl Strategy<Value = Rational> {
    (1i64..40, 1i64..20).prop_map(|(n, d)| Rational::new(n, d))
}

fn any_map() -> impl Strategy<Value = IterMap> {
    prop_oneof![
        (pos_rational(), pos_rational()).prop_map(|(e, f)| IterMap::model1(e, f).unwrap()),
        (
            pos_rational(),
            pos_rational(),
            pos_rational(),
            pos_rational(),
            pos_rational()
        )
            .prop_map(|(a, b, c, d, k)| IterMap::model2(a, b, c, d, k).unwrap()),
    ]
}

fn small_maps() -> impl Strategy<Value = IterMap> {
    prop_oneof![
        (1i64..4, 1i64..4).prop_map(|(e, f)| IterMap::model1(
            Rational::new(e, 2),
            Rational::new(f, 2)
        )
        .unwrap()),
        (1i64..7).prop_map(|k| IterMap::model2_standard(Rational::new(k, 2)).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn power_is_composition(m in small_maps(), a in 1u32..4, b in 1u32..4) {
        prop_assume!(a + b <= 6);
        let lhs = m.power(a + b);
        let rhs = m.power(a).compose(&m.power(b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lower_iterates_divide(m in small_maps(), n in 2u32..=6) {
        let id = UniPoly::identity("x");
        let top = &m.power(n) - &id;
        for d in (1..n).filter(|d| n % d == 0) {
            let low = &m.power(d) - &id;
            let (_, r) = top.div_rem(&low).unwrap();
            prop_assert!(r.is_zero());
        }
    }

    #[test]
    fn cycle_polys_multiply_back(m in small_maps(), n in 1u32..=6) {
        let id = UniPoly::identity("x");
        let top = &m.power(n) - &id;
        let mut prod = UniPoly::constant(Rational::one(), "x");
        for d in (1..=n).filter(|d| n % d == 0) {
            prod = &prod * &m.cycle_poly(d).unwrap();
        }
        let c = top.leading_coeff() / &prod.leading_coeff();
        prop_assert_eq!(prod.scale(&c), top);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplier_is_chain_rule(m in any_map(), n in 1u32..=5,
                                ts in proptest::collection::vec((-30i64..30, 1i64..9), 10)) {
        let mp = m.multiplier_poly(n);
        let fp = m.derivative();
        for (num, den) in ts {
            let t = Rational::new(num, den);
            let mut y = t.clone();
            let mut prod = Rational::one();
            for _ in 0..n {
                prod = prod * fp.eval(&y);
                y = m.update().eval(&y);
            }
            prop_assert_eq!(mp.eval(&t), prod);
        }
    }
}
