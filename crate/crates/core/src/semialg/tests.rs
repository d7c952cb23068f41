use proptest::prelude::*;

use super::*;
use crate::models::model2_condition_polys;
use crate::realroots::interval_eval;

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn pt(pairs: &[(&str, &str)]) -> BTreeMap<String, Rational> {
    pairs.iter().map(|(k, v)| (k.to_string(), q(v))).collect()
}

fn abcdk(v: [&str; 5]) -> BTreeMap<String, Rational> {
    pt(&[
        ("a", v[0]),
        ("b", v[1]),
        ("c", v[2]),
        ("d", v[3]),
        ("K", v[4]),
    ])
}

fn pp(s: &str) -> ParamPoly {
    s.parse().unwrap()
}

fn ux(s: &str) -> UniPoly<Rational> {
    pp(s).to_rational_univariate("x").unwrap()
}

#[test]
fn model1_stability_system_counts() {
    let s = model1_equilibrium_system();
    assert_eq!(
        count_solutions(&s.at(&pt(&[("e", "1"), ("f", "1/2")])).unwrap()).unwrap(),
        1
    );
    assert_eq!(
        count_solutions(&s.at(&pt(&[("e", "1"), ("f", "1")])).unwrap()).unwrap(),
        0
    );
}

#[test]
fn model2_stability_system_first_row() {
    let s = model2_equilibrium_system();
    assert_eq!(
        count_solutions(&s.at(&abcdk(["1", "1", "1/4", "1/64", "1/2"])).unwrap()).unwrap(),
        2
    );
}

#[test]
fn zero_equation_is_rejected() {
    let s = SemiSystem::new(UniPoly::<Rational>::zero("x"));
    assert!(matches!(count_solutions(&s), Err(Error::Domain(_))));
}

#[test]
fn common_factors_are_excluded() {
    // (x - 1)(x - 2) with x - 1 != 0 leaves x = 2.
    let s = SemiSystem::new(ux("(x - 1)*(x - 2)")).ne(ux("x - 1"));
    assert_eq!(count_solutions(&s).unwrap(), 1);
    let s = SemiSystem::new(ux("(x - 1)^2*(x + 3)")).gt(ux("x - 1"));
    assert_eq!(count_solutions(&s).unwrap(), 0);
    let s = SemiSystem::new(ux("(x - 1)^2*(x + 3)")).positive();
    assert_eq!(count_solutions(&s).unwrap(), 1);
}

#[test]
fn model1_border_polynomial() {
    let b = border_polynomial(&model1_equilibrium_system()).unwrap();
    let got: Vec<ParamPoly> = b.factors.iter().map(|(_, f)| f.clone()).collect();
    assert!(got[0].equal_up_to_constant(&pp("1")));
    assert!(got[1].equal_up_to_constant(&pp("27*e^2")));
    assert!(got[2].equal_up_to_constant(&pp("-27*e^2*f^3 + 8")));
    assert!(got[3].equal_up_to_constant(&pp("e")));
    assert!(b
        .product()
        .equal_up_to_constant(&pp("27*e^3*(-27*e^2*f^3 + 8)")));
    assert_eq!(b.factors[3].0, BorderSource::Positivity);
}

#[test]
fn model2_border_polynomial() {
    let b = border_polynomial(&model2_equilibrium_system()).unwrap();
    let set = model2_condition_polys().unwrap();
    let expected = &(&pp("-16384*d^4*K^14*a") * &set.r(1).pow(2)) * set.r(2);
    assert!(b.product().equal_up_to_constant(&expected));
    // The less-than constraint is stored negated, which flips one sign.
    assert_eq!(b.product(), -&expected);
}

#[test]
fn linear_border_polynomial() {
    let s = SemiSystem::parse("x", "x - u", &[], true).unwrap();
    let b = border_polynomial(&s).unwrap();
    let f: Vec<ParamPoly> = b.factors.iter().map(|(_, f)| f.clone()).collect();
    assert_eq!(f.len(), 3);
    assert!(f[0].equal_up_to_constant(&pp("1")));
    assert!(f[1].equal_up_to_constant(&pp("1")));
    assert!(f[2].equal_up_to_constant(&pp("u")));
}

/// Table 1: probe, count, sign of R1, sign of R2.
pub(crate) const TABLE1: [([&str; 5], usize, i32, i32); 30] = [
    (["1", "1", "1/4", "1/64", "1/2"], 2, -1, -1),
    (["1", "1", "1/4", "1/64", "1"], 1, -1, 1),
    (["1", "1", "1/4", "1/64", "2"], 0, -1, -1),
    (["1", "1", "1/4", "19/1024", "1"], 2, -1, -1),
    (["1", "1", "1/4", "19/1024", "2"], 1, -1, 1),
    (["1", "1", "1/4", "19/1024", "3"], 0, -1, -1),
    (["1", "1", "1/4", "1/16", "1"], 1, 1, -1),
    (["1", "1", "1/4", "1/16", "2"], 0, 1, 1),
    (["1", "1", "1/4", "1", "1/2"], 1, 1, -1),
    (["1", "1", "1/4", "1", "1"], 0, 1, 1),
    (["1", "1", "3/8", "1/64", "1/8"], 1, 1, -1),
    (["1", "1", "3/8", "1/64", "1"], 0, 1, 1),
    (["1", "1", "3/8", "1/32", "1/4"], 2, -1, -1),
    (["1", "1", "3/8", "1/32", "1"], 1, -1, 1),
    (["1", "1", "3/8", "1/32", "17"], 0, -1, -1),
    (["1", "1", "3/8", "49/1024", "1"], 2, -1, -1),
    (["1", "1", "3/8", "49/1024", "4"], 1, -1, 1),
    (["1", "1", "3/8", "49/1024", "8"], 0, -1, -1),
    (["1", "1", "3/8", "1/16", "1"], 1, -1, 1),
    (["1", "1", "3/8", "1/16", "3"], 0, -1, -1),
    (["1", "1", "3/8", "1", "1/2"], 1, 1, -1),
    (["1", "1", "3/8", "1", "1"], 0, 1, 1),
    (["1", "1", "15/32", "1/16", "1/2"], 1, 1, -1),
    (["1", "1", "15/32", "1/16", "1"], 0, 1, 1),
    (["1", "1", "15/32", "3/32", "1"], 1, 1, -1),
    (["1", "1", "15/32", "3/32", "8"], 0, 1, 1),
    (["1", "1", "15/32", "1", "1/2"], 1, 1, -1),
    (["1", "1", "15/32", "1", "1"], 0, 1, 1),
    (["1", "1", "1", "1", "1/2"], 1, 1, -1),
    (["1", "1", "1", "1", "1"], 0, 1, 1),
];

fn table1_report() -> SignReport {
    let set = model2_condition_polys().unwrap();
    let tracked = vec![
        ("R1".to_string(), set.r(1).clone()),
        ("R2".to_string(), set.r(2).clone()),
    ];
    let probes: Vec<_> = TABLE1.iter().map(|(p, ..)| abcdk(*p)).collect();
    sign_conditions_report(&model2_equilibrium_system(), &probes, &tracked).unwrap()
}

/// R1 and R2 as printed, in double precision.
fn float_r1_r2(v: [&str; 5]) -> (f64, f64) {
    let [a, b, c, d, k] = v.map(|s| q(s).to_f64());
    let r1 =
        108.0 * a * a * d * d - 108.0 * a * b * c * d + 27.0 * a * c.powi(3) + 32.0 * b.powi(3) * d
            - 9.0 * b * b * c * c;
    let r2 = k.powi(3) * r1 - 24.0 * k * b * d + 9.0 * k * c * c - 8.0 * d;
    (r1, r2)
}

#[test]
fn table1_counts_and_signs() {
    let report = table1_report();
    for (row, (p, n, ..)) in report.rows.iter().zip(TABLE1.iter()) {
        assert_eq!(row.count, *n, "count at {p:?}");
        let (r1, r2) = float_r1_r2(*p);
        assert!(r1.abs() > 1e-9 && r2.abs() > 1e-9);
        assert_eq!(
            (row.signs[0], row.signs[1]),
            (r1.signum() as i32, r2.signum() as i32),
            "signs at {p:?}"
        );
    }
    let csv = report.to_csv();
    assert!(csv.starts_with("K,a,b,c,d,count,R1,R2\n"));
    assert_eq!(csv.lines().count(), 31);
    assert!(csv.lines().nth(2).unwrap().ends_with(",1,-,+"));
}

/// The rows at (1, 1, 3/8, 1/16, K) print R1 < 0, but R1 does not depend
/// on K and is 25/512 there.
#[test]
fn table1_printed_signs_differ_on_two_rows() {
    let report = table1_report();
    let bad: Vec<[&str; 5]> = report
        .rows
        .iter()
        .zip(TABLE1.iter())
        .filter(|(row, (_, _, r1, r2))| (row.signs[0], row.signs[1]) != (*r1, *r2))
        .map(|(_, (p, ..))| *p)
        .collect();
    assert_eq!(
        bad,
        vec![
            ["1", "1", "3/8", "1/16", "1"],
            ["1", "1", "3/8", "1/16", "3"]
        ]
    );
    let set = model2_condition_polys().unwrap();
    assert_eq!(set.r(1).eval(&abcdk(bad[0])).unwrap(), q("25/512"));
}

#[test]
fn degenerate_probe_is_rejected() {
    let s = model2_equilibrium_system();
    let tracked = vec![];
    let set = model2_condition_polys().unwrap();
    // R1(1, 3, 3, d) = 108 d^2 - 108 d vanishes at d = 1.
    let p = abcdk(["1", "3", "3", "1", "1"]);
    assert!(set.r(1).eval(&p).unwrap().is_zero());
    assert!(matches!(
        sign_conditions_report(&s, &[p], &tracked),
        Err(Error::DegenerateProbe(_))
    ));
}

/// Independent count: refine each root of P until every constraint sign is
/// decided on its interval.
fn oracle_count(s: &SemiSystem<Rational>) -> usize {
    let sp = SqfPoly::new(&s.equation).unwrap();
    let mut n = 0;
    'roots: for r in sp.isolate() {
        for (qc, rel) in s.all_constraints() {
            let sign = if qc.is_constant() {
                qc.leading_coeff().signum()
            } else {
                let g = gcd(&s.equation, &qc).unwrap();
                if !g.is_constant() && SqfPoly::new(&g).unwrap().count_in(&r) == 1 {
                    0
                } else {
                    let mut i = r.clone();
                    loop {
                        let e = interval_eval(&qc, &i);
                        if e.lo.is_positive() {
                            break 1;
                        }
                        if e.hi.is_negative() {
                            break -1;
                        }
                        if i.is_point() {
                            break qc.eval(&i.lo).signum();
                        }
                        i = sp.refine_isolated(&i, &(i.width() * Rational::new(1, 2)));
                    }
                }
            };
            if !rel.holds(sign) {
                continue 'roots;
            }
        }
        n += 1;
    }
    n
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = UniPoly<Rational>> {
    // Products of small linear and quadratic factors give shared and
    // repeated roots often enough to matter.
    let factor = prop_oneof![
        (-6i64..=6, 1i64..=3).prop_map(|(a, b)| vec![Rational::new(-a, 1), Rational::new(b, 1)]),
        (-6i64..=6, -6i64..=6).prop_map(|(a, b)| vec![
            Rational::from(a),
            Rational::from(b),
            Rational::one()
        ]),
    ];
    proptest::collection::vec(factor, 1..=4).prop_map(move |fs| {
        let mut p = UniPoly::constant(Rational::one(), "x");
        for f in fs {
            let g = UniPoly::new(f, "x");
            if p.degree().unwrap_or(0) + g.degree().unwrap_or(0) <= max_deg {
                p = &p * &g;
            }
        }
        p
    })
}

fn system() -> impl Strategy<Value = SemiSystem<Rational>> {
    (
        small_poly(8),
        proptest::collection::vec((small_poly(4), prop::bool::ANY), 0..=3),
        prop::bool::ANY,
    )
        .prop_map(|(p, cs, positive)| SemiSystem {
            equation: p,
            constraints: cs
                .into_iter()
                .map(|(q, gt)| (q, if gt { Relation::Gt } else { Relation::Ne }))
                .collect(),
            positive,
        })
}

/// Restrict `f` to the segment `p0 + t (p1 - p0)`.
fn on_segment(
    f: &ParamPoly,
    p0: &BTreeMap<String, Rational>,
    p1: &BTreeMap<String, Rational>,
) -> UniPoly<Rational> {
    let mut out = UniPoly::zero("t");
    for (mono, c) in f.terms() {
        let mut term = UniPoly::constant(c.clone(), "t");
        for (v, &e) in f.vars().iter().zip(&mono.0) {
            let lin = UniPoly::new(vec![p0[v].clone(), &p1[v] - &p0[v]], "t");
            term = &term * &lin.pow(e);
        }
        out = &out + &term;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn count_matches_brute_force(s in system()) {
        let n = count_solutions(&s).unwrap();
        prop_assert_eq!(n, oracle_count(&s));
        let sol = isolate_solutions(&s).unwrap();
        prop_assert_eq!(sol.intervals.len(), n);
        for w in sol.intervals.windows(2) {
            prop_assert!(w[0].hi <= w[1].lo);
        }
        for r in &sol.intervals {
            let sp = SqfPoly::new(&s.equation).unwrap();
            prop_assert_eq!(sp.count_in(r), 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn counts_constant_off_the_border(
        a in (1i64..40, 1i64..40, 1i64..40, 1i64..40, 1i64..40),
        b in (1i64..40, 1i64..40, 1i64..40, 1i64..40, 1i64..40),
    ) {
        let mk = |v: (i64, i64, i64, i64, i64)| -> BTreeMap<String, Rational> {
            [("a", v.0, 10), ("b", v.1, 10), ("c", v.2, 40), ("d", v.3, 400), ("K", v.4, 10)]
                .iter()
                .map(|(k, n, d)| (k.to_string(), Rational::new(*n, *d)))
                .collect()
        };
        let (p0, p1) = (mk(a), mk(b));
        let sys = model2_equilibrium_system();
        let border = border_polynomial(&sys).unwrap();
        let clear = border.factors.iter().all(|(_, f)| {
            let g = on_segment(f, &p0, &p1);
            g.is_constant() && !g.is_zero()
                || !g.is_zero() && SqfPoly::new(&g).unwrap().count_in(&RatInterval::closed(Rational::zero(), Rational::one())) == 0
        });
        prop_assume!(clear);
        prop_assert_eq!(
            count_solutions(&sys.at(&p0).unwrap()).unwrap(),
            count_solutions(&sys.at(&p1).unwrap()).unwrap()
        );
    }
}
