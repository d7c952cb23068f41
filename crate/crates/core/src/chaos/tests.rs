use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::orbits::find_thresholds;

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn m1(e: &str, f: &str) -> IterMap {
    IterMap::model1(q(e), q(f)).unwrap()
}

fn m2(k: &str) -> IterMap {
    IterMap::model2_standard(q(k)).unwrap()
}

#[test]
fn period_three_above_first_threshold() {
    let cert = certify_period3(&m2("242/100"))
        .unwrap()
        .expect("3-cycle at K = 2.42");
    assert_eq!(cert.method, ChaosMethod::Period3);
    let Witness::Cycle(o) = &cert.witness else {
        panic!("expected a cycle witness")
    };
    assert_eq!(o.order, 3);
    assert_eq!(cert.verified_conditions.len(), 6);
}

#[test]
fn no_period_three_below_threshold() {
    assert!(certify_period3(&m2("2")).unwrap().is_none());
    assert!(certify_period3(&m1("1", "1")).unwrap().is_none());
}

#[test]
fn snapback_examples() {
    assert!(certify_snapback(&m1("1", "1"), 2).unwrap().is_some());
    assert!(certify_snapback(&m1("1", "1/2"), 2).unwrap().is_none());
    assert!(certify_snapback(&m1("1", "2"), 2).unwrap().is_none());
}

#[test]
fn snapback_boundaries_are_undetermined() {
    // e^2 f^3 = 8/27 and 64/27 at e = 1.
    for f in ["2/3", "4/3"] {
        let r = certify_snapback(&m1("1", f), 2);
        assert!(matches!(r, Err(Error::Undetermined(_))), "f = {f}: {r:?}");
    }
}

#[test]
fn snapback_rejects_bad_input() {
    assert!(matches!(
        certify_snapback(&m2("1"), 2),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        certify_snapback(&m1("1", "1"), 1),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        certify_snapback(&m1("1", "1"), 9),
        Err(Error::Domain(_))
    ));
}

/// Re-derive `F^m(y) = x` and `|F'| > 1` for the witness without the
/// resultant: `y` must isolate a root of `F^m(y)^3 - e`.
fn recheck_snapback(map: &IterMap, cert: &ChaosCertificate) {
    let Witness::Snapback {
        equilibrium,
        preimage,
        m,
    } = &cert.witness
    else {
        panic!("expected snapback")
    };
    let e = map.param("e").unwrap().clone();
    let f = map.param("f").unwrap().clone();
    let g = map.power(*m);
    let r = &(&(&g * &g) * &g) - &UniPoly::constant(e.clone(), "x");
    let sp = SqfPoly::new(&r).unwrap();
    let mut y = sp.refine(preimage, &preimage.width()).unwrap();
    let mut landed = false;
    for _ in 0..200 {
        if interval_eval(&g, &y).subset_of(equilibrium) {
            landed = true;
            break;
        }
        y = sp.refine(&y, &(y.width() * Rational::new(1, 2))).unwrap();
    }
    assert!(landed, "F^m(y) never lands in the equilibrium interval");
    // x^3 = e inside the equilibrium interval, and x, y^2 > 2/(3f).
    let cube = |t: &Rational| t.pow(3) - e.clone();
    assert!(equilibrium.closure_contains(&equilibrium.lo));
    assert!(cube(&equilibrium.lo).signum() * cube(&equilibrium.hi).signum() <= 0);
    let bound = Rational::from(2) / (Rational::from(3) * f.clone());
    assert!(equilibrium.lo.is_positive() && equilibrium.lo.pow(2) > bound);
    assert!(y.lo.is_positive() && y.lo.pow(2) > bound);
    assert!(!y.closure_contains(&equilibrium.lo) || !y.closure_contains(&equilibrium.hi));
}

#[test]
fn snapback_witness_rechecks() {
    let map = m1("1", "1");
    let cert = certify_snapback(&map, 2).unwrap().unwrap();
    recheck_snapback(&map, &cert);
    let report = cert.to_report(10);
    assert!(report.starts_with("certificate method=snapback\nwitness snapback m=2 "));
    assert!(report.contains("verified 3*f*y^2 - 2 > 0 enclosure="));
    assert!(report.contains("verified F'(F^1(y)) != 0 enclosure="));
    assert!(report.contains("verified y^3 - e != 0 enclosure="));
}

#[test]
fn snapback_three_steps_at_center() {
    let map = m1("1", "1");
    let cert = certify_snapback(&map, 3)
        .unwrap()
        .expect("a 3-step preimage exists at e = f = 1");
    recheck_snapback(&map, &cert);
}

fn s_of(e: &Rational, f: &Rational) -> Rational {
    e.pow(2) * f.pow(3)
}

/// Random rational `(e, f)` with `e^2 f^3` inside `(8/27, 64/27)` or outside
/// `[8/27, 64/27]`, at least `1/1000` from both ends.
fn region_probes(inside: bool, count: usize, seed: u64) -> Vec<(Rational, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = (q("8/27"), q("64/27"));
    let gap = q("1/1000");
    let mut out = Vec::new();
    while out.len() < count {
        let e = Rational::new(rng.gen_range(20..=300), 100);
        let f = Rational::new(rng.gen_range(20..=300), 100);
        let s = s_of(&e, &f);
        let clear = (&s - &lo).abs() >= gap && (&s - &hi).abs() >= gap;
        let within = s > lo && s < hi;
        if clear && within == inside && s < q("40") {
            out.push((e, f));
        }
    }
    out
}

#[test]
fn snapback_region_sweep() {
    for (e, f) in region_probes(true, 10, 11) {
        let map = IterMap::model1(e.clone(), f.clone()).unwrap();
        let cert = certify_snapback(&map, 2).unwrap();
        assert!(cert.is_some(), "no certificate at e={e} f={f}");
        recheck_snapback(&map, cert.as_ref().unwrap());
    }
    for (e, f) in region_probes(false, 10, 12) {
        let map = IterMap::model1(e.clone(), f.clone()).unwrap();
        assert!(
            certify_snapback(&map, 2).unwrap().is_none(),
            "certificate at e={e} f={f}"
        );
    }
}

#[test]
fn period_three_matches_threshold_counts() {
    let report = find_thresholds(
        &m2("1"),
        3,
        &RatInterval::open(q("2"), q("5/2")),
        &q("1/10000"),
    )
    .unwrap();
    assert!(!report.brackets.is_empty());
    for b in &report.brackets {
        for (k, counts) in [(&b.bracket.lo, b.below), (&b.bracket.hi, b.above)] {
            let cert = certify_period3(&IterMap::model2_standard(k.clone()).unwrap()).unwrap();
            assert_eq!(cert.is_some(), counts.0 > 0, "K = {k}");
        }
    }
}
