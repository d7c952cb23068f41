//! Canonical configurations, their reference values and golden-file
//! comparison.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use mondyn::models::{
    model2_condition_polys, model2_three_cycle_magnitude, model2_three_cycle_sp, IterMap,
};
use mondyn::orbits::{cycle_counts, enumerate_cycle_set, find_thresholds, magnitude, Stability};
use mondyn::realroots::{sturm_count, RatInterval};
use mondyn::semialg::{
    border_polynomial, count_solutions, model1_equilibrium_system, model2_equilibrium_system,
    sign_conditions_report,
};
use mondyn::sim::{
    basins, bifurcation_1d, bifurcation_2d, Axis, Bif1d, BifGrid, Cell, FloatMap, SimConfig,
};
use mondyn::{ParamPoly, Rational, Result, UniPoly};

use crate::{emit, say, Failure, Outcome};

/// Golden files shipped with the crate.
pub fn default_golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

/// Computed records plus any disagreement with the reference values.
#[derive(Default)]
struct Report {
    lines: Vec<String>,
    failures: Vec<String>,
}

impl Report {
    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }
}

type Target = (&'static str, &'static str, fn() -> Result<Report>);

const TARGETS: &[Target] = &[
    (
        "table1",
        "Model 2 equilibrium counts and R1, R2 signs at 30 sample points",
        table1,
    ),
    (
        "table3",
        "Model 2 three-cycle counts per interval and thresholds",
        table3,
    ),
    (
        "table4",
        "Model 2 four-cycle counts per interval and thresholds",
        table4,
    ),
    (
        "table5",
        "Model 2 five-cycle counts per interval and thresholds",
        table5,
    ),
    (
        "model1-border",
        "Model 1 border polynomial and sample-point counts",
        model1_border,
    ),
    (
        "model2-stability-plane",
        "stable equilibrium counts over the (a, K) plane",
        model2_stability_plane,
    ),
    (
        "model1-four-cycle",
        "the stable Model 1 four-cycle at e = 0.6, f = 1.2",
        model1_four_cycle,
    ),
    (
        "model1-cycle-plane",
        "stable 1-, 2- and 4-cycle regions of the Model 1 (e, f) plane",
        model1_cycle_plane,
    ),
    (
        "model1-bif2d",
        "Model 1 period map over (e, f) in [0.6, 1.6]^2",
        model1_bif2d,
    ),
    (
        "model1-bif1d",
        "Model 1 period along f with e = 1",
        model1_bif1d,
    ),
    (
        "model2-three-cycle-magnitude",
        "three-cycle magnitudes against the quartic in d",
        model2_three_cycle_magnitude_target,
    ),
    (
        "model2-three-cycles",
        "all three-cycles at K = 3.303",
        model2_three_cycles,
    ),
    (
        "model2-four-cycles",
        "all four-cycles at K = 3.319885",
        model2_four_cycles,
    ),
    (
        "model2-five-cycles",
        "all five-cycles at K = 3.33296183",
        model2_five_cycles,
    ),
    (
        "model2-bif2d",
        "Model 2 period map over (a, K) in [2.5, 5] x [0, 3]",
        model2_bif2d,
    ),
    (
        "model2-bif1d-K",
        "Model 2 period along K with a = 3.3, from x0 = 1 and x0 = 4",
        model2_bif1d_k,
    ),
    (
        "model2-bif1d-a",
        "Model 2 period along a with K = 2.2, from x0 = 1 and x0 = 4",
        model2_bif1d_a,
    ),
    (
        "model2-basins",
        "basins of the coexisting Model 2 equilibria",
        model2_basins,
    ),
];

pub fn run(target: &str, golden_dir: &Path, bless: bool, out: &Option<PathBuf>) -> Outcome {
    if target == "list" {
        for (name, about, _) in TARGETS {
            say!("{name:30} {about}");
        }
        return Ok(());
    }
    let Some((name, _, f)) = TARGETS.iter().find(|t| t.0 == target) else {
        let names: Vec<&str> = TARGETS.iter().map(|t| t.0).collect();
        return Err(Failure::Error(format!(
            "unknown target {target}; one of {}",
            names.join(", ")
        )));
    };
    let report = f()?;
    let text = report.lines.join("\n") + "\n";
    std::io::stdout().lock().write_all(text.as_bytes())?;
    if out.is_some() {
        emit(out, &format!("{name}.txt"), text.as_bytes())?;
    }
    let golden = golden_dir.join(format!("{name}.txt"));
    if bless {
        fs::create_dir_all(golden_dir)?;
        fs::write(&golden, &text)?;
        eprintln!("wrote {}", golden.display());
    } else {
        let want = fs::read_to_string(&golden).map_err(|e| {
            Failure::Error(format!("cannot read golden file {}: {e}", golden.display()))
        })?;
        let want: Vec<&str> = want.lines().collect();
        let n = want.len().max(report.lines.len());
        if let Some(i) =
            (0..n).find(|&i| want.get(i).copied() != report.lines.get(i).map(String::as_str))
        {
            return Err(Failure::Check(format!(
                "{name} record {} differs from {}\n  golden:   {}\n  computed: {}",
                i + 1,
                golden.display(),
                want.get(i).copied().unwrap_or("<missing>"),
                report
                    .lines
                    .get(i)
                    .map(String::as_str)
                    .unwrap_or("<missing>")
            )));
        }
    }
    for f in &report.failures {
        eprintln!("reference mismatch: {f}");
    }
    if let Some(first) = report.failures.first() {
        return Err(Failure::Check(format!(
            "{name}: {} reference mismatches, first: {first}",
            report.failures.len()
        )));
    }
    eprintln!("{name}: {} records match", report.lines.len());
    Ok(())
}

fn q(s: &str) -> Rational {
    s.parse().expect("reference value parses")
}

fn point(pairs: &[(&str, &Rational)]) -> BTreeMap<String, Rational> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), (*v).clone()))
        .collect()
}

fn sign(s: i32) -> char {
    match s {
        1 => '+',
        -1 => '-',
        _ => '0',
    }
}

/// `(a, b, c, d, K)`, equilibrium count, signs of R1 and R2.
const TABLE1: [([&str; 5], usize, i32, i32); 30] = [
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

fn table1() -> Result<Report> {
    let set = model2_condition_polys()?;
    let tracked = vec![
        ("R1".to_string(), set.r(1).clone()),
        ("R2".to_string(), set.r(2).clone()),
    ];
    let probes: Vec<BTreeMap<String, Rational>> = TABLE1
        .iter()
        .map(|(v, ..)| {
            let v: Vec<Rational> = v.iter().map(|s| q(s)).collect();
            point(&[
                ("a", &v[0]),
                ("b", &v[1]),
                ("c", &v[2]),
                ("d", &v[3]),
                ("K", &v[4]),
            ])
        })
        .collect();
    let sr = sign_conditions_report(&model2_equilibrium_system(), &probes, &tracked)?;
    let mut r = Report::default();
    let mut matching = 0;
    for (i, (row, (v, count, r1, r2))) in sr.rows.iter().zip(TABLE1.iter()).enumerate() {
        let (s1, s2) = (row.signs[0], row.signs[1]);
        r.line(format!(
            "a={} b={} c={} d={} K={} count={} R1={} R2={}",
            v[0],
            v[1],
            v[2],
            v[3],
            v[4],
            row.count,
            sign(s1),
            sign(s2)
        ));
        let ok = row.count == *count && s1 == *r1 && s2 == *r2;
        matching += ok as usize;
        r.check(ok, || {
            format!(
                "row {} (a,b,c,d,K)=({}) reference count={count} R1={} R2={}, computed count={} R1={} R2={}",
                i + 1,
                v.join(","),
                sign(*r1),
                sign(*r2),
                row.count,
                sign(s1),
                sign(s2)
            )
        });
    }
    r.line(format!("rows matching reference {matching}/30"));
    Ok(r)
}

/// Reference thresholds and per-interval `(cycles, stable)` pairs.
struct CycleTable {
    n: u32,
    m: &'static [&'static str],
    pairs: &'static [(usize, usize)],
}

const TABLE3: CycleTable = CycleTable {
    n: 3,
    m: &["2.417401607", "2.434714456", "3.302953127", "3.303122765"],
    pairs: &[(0, 0), (4, 2), (4, 0), (8, 2), (8, 0)],
};

const TABLE4: CycleTable = CycleTable {
    n: 4,
    m: &[
        "2.060113296",
        "2.146719591",
        "2.579725065",
        "2.581385365",
        "3.062775154",
        "3.070194019",
        "3.279225134",
        "3.279260335",
        "3.319881360",
        "3.319889702",
    ],
    pairs: &[
        (0, 0),
        (2, 2),
        (2, 0),
        (6, 2),
        (6, 0),
        (10, 2),
        (10, 0),
        (14, 2),
        (14, 0),
        (18, 2),
        (18, 0),
    ],
};

const TABLE5: CycleTable = CycleTable {
    n: 5,
    m: &[
        "2.323208379",
        "2.326320457",
        "2.509741151",
        "2.510528490",
        "2.632885028",
        "2.633089005",
        "2.997641294",
        "2.997736262",
        "3.113029799",
        "3.113069634",
        "3.197332995",
        "3.197354147",
        "3.219425160",
        "3.219440784",
        "3.269613400",
        "3.269618202",
        "3.288059620",
        "3.288062995",
        "3.314977518",
        "3.314978815",
        "3.324008184",
        "3.324008826",
        "3.332961824",
        "3.332961850",
    ],
    pairs: &[
        (0, 0),
        (4, 2),
        (4, 0),
        (8, 2),
        (8, 0),
        (12, 2),
        (12, 0),
        (16, 2),
        (16, 0),
        (20, 2),
        (20, 0),
        (24, 2),
        (24, 0),
        (28, 2),
        (28, 0),
        (32, 2),
        (32, 0),
        (36, 2),
        (36, 0),
        (40, 2),
        (40, 0),
        (44, 2),
        (44, 0),
        (48, 2),
        (48, 0),
    ],
};

/// Simplest rational strictly inside each reference interval, keeping
/// `10^-9` clear of the rounded endpoints.
fn interval_probes(m: &[Rational]) -> Vec<Rational> {
    let gap = Rational::new(1, 1_000_000_000);
    let mut ends = vec![Rational::zero()];
    ends.extend(m.iter().cloned());
    ends.push(&m[m.len() - 1] + &Rational::new(1, 10));
    ends.windows(2)
        .map(|w| Rational::simplest_between(&(&w[0] + &gap), &(&w[1] - &gap)))
        .collect()
}

fn cycle_table(t: &CycleTable) -> Result<Report> {
    let n = t.n;
    let m: Vec<Rational> = t.m.iter().map(|s| q(s)).collect();
    let mut r = Report::default();
    for (k, want) in interval_probes(&m).iter().zip(t.pairs) {
        let c = cycle_counts(&IterMap::model2_standard(k.clone())?, n)?;
        r.line(format!(
            "probe n={n} K={k} cycles={} stable={}",
            c.orbits, c.stable
        ));
        r.check(c.pair() == *want, || {
            format!("K={k}: reference {want:?}, computed {:?}", c.pair())
        });
    }
    let search = RatInterval::open(
        &m[0] - &Rational::new(1, 10),
        &m[m.len() - 1] + &Rational::new(1, 10),
    );
    let report = find_thresholds(
        &IterMap::model2_standard(Rational::one())?,
        n,
        &search,
        &Rational::new(1, 100_000_000),
    )?;
    let sp = model2_three_cycle_sp();
    let tol = Rational::new(1, 1_000_000);
    for b in &report.brackets {
        let mid = b.bracket.midpoint();
        let hit = m
            .iter()
            .enumerate()
            .map(|(i, mi)| (i, (&mid - mi).abs()))
            .filter(|(_, d)| *d <= tol)
            .min_by(|a, b| a.1.cmp(&b.1))
            .map(|(i, _)| i);
        let tag = match hit {
            Some(i) => format!("m{}", i + 1),
            None => "extra".to_string(),
        };
        let mut line = format!(
            "{tag} bracket=[{}, {}] counts=({},{})->({},{})",
            b.bracket.lo.to_decimal(10),
            b.bracket.hi.to_decimal(10),
            b.below.0,
            b.below.1,
            b.above.0,
            b.above.1
        );
        if n == 3 {
            let s =
                |k: &Rational| Ok::<_, mondyn::Error>(sign(sp.eval(&point(&[("K", k)]))?.signum()));
            let (lo, hi) = (s(&b.bracket.lo)?, s(&b.bracket.hi)?);
            line.push_str(&format!(" SP={lo}{hi}"));
            r.check(lo != hi && lo != '0' && hi != '0', || {
                format!("SP keeps its sign across {}", b.bracket)
            });
        }
        r.line(line);
    }
    for (i, mi) in m.iter().enumerate() {
        let found = report
            .brackets
            .iter()
            .any(|b| (&b.bracket.midpoint() - mi).abs() <= tol);
        r.check(found, || {
            format!("no bracket within 1e-6 of m{} = {}", i + 1, t.m[i])
        });
    }
    Ok(r)
}

fn table3() -> Result<Report> {
    cycle_table(&TABLE3)
}

fn table4() -> Result<Report> {
    cycle_table(&TABLE4)
}

fn table5() -> Result<Report> {
    cycle_table(&TABLE5)
}

fn model1_border() -> Result<Report> {
    let s = model1_equilibrium_system();
    let b = border_polynomial(&s)?;
    let mut r = Report::default();
    for (src, f) in &b.factors {
        r.line(format!("factor {src}: {f}"));
    }
    let product = b.product();
    r.line(format!("border {product}"));
    let want: ParamPoly = "27*e^3*(8 - 27*e^2*f^3)".parse()?;
    r.check(product.equal_up_to_constant(&want), || {
        format!("border {product} is not a multiple of {want}")
    });
    for (name, e, f, want) in [("S1", "1", "1/2", 1), ("S2", "1", "1", 0)] {
        let c = count_solutions(&s.at(&point(&[("e", &q(e)), ("f", &q(f))]))?)?;
        r.line(format!("{name} e={e} f={f} stable_equilibria={c}"));
        r.check(c == want, || {
            format!("{name}: reference {want}, computed {c}")
        });
    }
    Ok(r)
}

fn model2_stability_plane() -> Result<Report> {
    let sys = model2_equilibrium_system();
    let set = model2_condition_polys()?;
    let [_, b, c, d] = mondyn::models::model2_standard_abcd();
    let mut r = Report::default();
    r.line("rows K = j/10, columns a = 5/2 + i/10 for i = 0..25, entry = stable equilibria");
    for j in (1..=30).rev() {
        let k = Rational::new(j, 10);
        let mut row = String::new();
        let mut runs = 0;
        let mut prev = 0;
        for i in 0..=25 {
            let a = Rational::new(25 + i, 10);
            let pt = point(&[("a", &a), ("b", &b), ("c", &c), ("d", &d), ("K", &k)]);
            let count = count_solutions(&sys.at(&pt)?)?;
            if let Some(by_signs) = set.stable_equilibria(&pt)? {
                r.check(by_signs as usize == count, || {
                    format!("a={a} K={k}: solution count {count}, sign conditions {by_signs}")
                });
            }
            row.push(char::from_digit(count as u32, 10).unwrap_or('?'));
            if count > 0 && prev == 0 {
                runs += 1;
            }
            prev = count;
        }
        r.line(format!("K={k:>5} {row}"));
        if j >= 18 {
            r.check(runs >= 2, || {
                format!("K={k}: expected two separate stable a-ranges, found {runs}")
            });
        }
    }
    Ok(r)
}

fn orbit_lines(r: &mut Report, map: &IterMap, n: u32, want: (usize, usize)) -> Result<()> {
    let set = enumerate_cycle_set(map, n)?;
    let stable = set
        .orbits
        .iter()
        .filter(|o| o.stability == Stability::Stable)
        .count();
    r.line(format!("map {map}"));
    r.line(format!(
        "cycles n={n} orbits={} stable={stable}",
        set.orbits.len()
    ));
    r.check((set.orbits.len(), stable) == want, || {
        format!(
            "{map} n={n}: reference {want:?}, computed ({}, {stable})",
            set.orbits.len()
        )
    });
    for o in &set.orbits {
        r.line(o.to_record(8));
    }
    Ok(())
}

fn model1_four_cycle() -> Result<Report> {
    let mut r = Report::default();
    let map = IterMap::model1(q("0.6"), q("1.2"))?;
    orbit_lines(&mut r, &map, 4, (1, 1))?;
    Ok(r)
}

fn model1_cycle_plane() -> Result<Report> {
    let mut r = Report::default();
    r.line("rows f = 3/5 + j/20, columns e = 3/5 + i/20 for i = 0..20, entry = order of the stable cycle among 1, 2, 4");
    let b2 = 0.5794754859; // (61 - 11 sqrt 17) / 27
    let b4 = 0.6673871142;
    let rows: Vec<(Rational, String)> = (0..=20i64)
        .rev()
        .map(|j| {
            let f = Rational::new(12 + j, 20);
            let mut row = String::new();
            for i in 0..=20i64 {
                let e = Rational::new(12 + i, 20);
                let map = IterMap::model1(e.clone(), f.clone())?;
                let mut mark = '.';
                for n in [1, 2, 4] {
                    match cycle_counts(&map, n) {
                        Ok(c) if c.stable > 0 => {
                            mark = char::from_digit(n, 10).unwrap();
                            break;
                        }
                        Ok(_) => {}
                        Err(mondyn::Error::Nonhyperbolic(_)) => {
                            mark = '?';
                            break;
                        }
                        Err(e) => return Err(e),
                    }
                }
                row.push(mark);
            }
            Ok((f, row))
        })
        .collect::<Result<_>>()?;
    for (f, row) in &rows {
        for (i, mark) in row.chars().enumerate() {
            let e = Rational::new(12 + i as i64, 20);
            let s = (e.pow(2) * f.pow(3)).to_f64();
            let want = if s < 8.0 / 27.0 {
                '1'
            } else if s < b2 {
                '2'
            } else if s < b4 {
                '4'
            } else {
                '.'
            };
            let clear = [8.0 / 27.0, b2, b4].iter().all(|t| (s - t).abs() > 1e-9);
            r.check(!clear || mark == want, || {
                format!("e={e} f={f} e^2f^3={s}: expected {want}, found {mark}")
            });
        }
        r.line(format!("f={f:>5} {row}"));
    }
    Ok(r)
}

fn grid_lines(r: &mut Report, g: &BifGrid) {
    r.line(format!(
        "grid {} in [{}, {}] x {} in [{}, {}], {}x{} cells, x0 = {}",
        g.x_axis.param,
        g.x_axis.lo,
        g.x_axis.hi,
        g.y_axis.param,
        g.y_axis.lo,
        g.y_axis.hi,
        g.x_axis.res,
        g.y_axis.res,
        g.x0
    ));
    for j in (0..g.y_axis.res).rev() {
        let row: Vec<String> = (0..g.x_axis.res)
            .map(|i| g.at(i, j).label(g.max_period))
            .collect();
        r.line(row.join(" "));
    }
}

fn model1_bif2d() -> Result<Report> {
    let (ea, fa) = (Axis::new("e", 0.6, 1.6, 60)?, Axis::new("f", 0.6, 1.6, 60)?);
    let g = bifurcation_2d(
        &FloatMap::model1(1.0, 1.0)?,
        &ea,
        &fa,
        1.0,
        &SimConfig::default(),
    )?;
    let mut r = Report::default();
    grid_lines(&mut r, &g);
    let h = ea.cell_width() / 2.0;
    let crit = 8.0 / 27.0;
    for (j, f) in fa.centers().iter().enumerate() {
        for (i, e) in ea.centers().iter().enumerate() {
            let lo = (e - h).powi(2) * (f - h).powi(3);
            let hi = (e + h).powi(2) * (f + h).powi(3);
            if lo <= crit && crit <= hi {
                continue;
            }
            let want = hi < crit;
            let got = g.at(i, j) == Cell::Period(1);
            r.check(want == got, || {
                format!("cell e={e} f={f}: equilibrium stable = {want}, period-1 = {got}")
            });
        }
    }
    Ok(r)
}

/// Runs of equal cells as `lo hi label` records.
fn run_lines(r: &mut Report, d: &Bif1d) {
    r.line(format!(
        "sweep {} in [{}, {}], {} points, x0 = {}",
        d.axis.param, d.axis.lo, d.axis.hi, d.axis.res, d.x0
    ));
    let mut start = 0;
    for i in 1..=d.rows.len() {
        if i == d.rows.len() || d.rows[i].cell != d.rows[start].cell {
            let (a, b) = (&d.rows[start], &d.rows[i - 1]);
            let mut line = format!(
                "{:.6} {:.6} {}",
                a.param,
                b.param,
                a.cell.label(d.max_period)
            );
            if a.cell == Cell::Period(1) {
                line.push_str(&format!(" x={:.4}..{:.4}", a.samples[0], b.samples[0]));
            }
            r.line(line);
            start = i;
        }
    }
}

fn model1_bif1d() -> Result<Report> {
    let d = bifurcation_1d(
        &FloatMap::model1(1.0, 1.0)?,
        &Axis::new("f", 0.6, 1.6, 1001)?,
        1.1,
        &SimConfig::default(),
    )?;
    let mut r = Report::default();
    run_lines(&mut r, &d);
    for (p, want) in [(2, 0.6665), (4, 0.8339)] {
        let got = d.first(Cell::Period(p));
        r.check(got.is_some_and(|x| (x - want).abs() <= 1e-3), || {
            format!("first period {p} at {got:?}, reference {want}")
        });
    }
    let eight = d
        .rows
        .iter()
        .any(|row| row.cell == Cell::Period(8) && row.param > 0.8744 && row.param < 0.8826);
    r.check(eight, || {
        "no period-8 point inside (0.8744, 0.8826)".to_string()
    });
    Ok(r)
}

/// Substitute `K` and return the remaining polynomial in `d`.
fn in_d(p: &ParamPoly, k: &Rational) -> UniPoly<Rational> {
    let u = p.substitute(&point(&[("K", k)])).to_univariate("d");
    let coeffs = u
        .coeffs()
        .iter()
        .map(|c| c.as_constant().expect("only d remains"))
        .collect();
    UniPoly::new(coeffs, "d")
}

fn model2_three_cycle_magnitude_target() -> Result<Report> {
    let quartic = model2_three_cycle_magnitude();
    let w = Rational::new(1, 100_000_000);
    let mut r = Report::default();
    for k in ["2.42", "2.43", "2.5", "2.8", "3.1", "3.303", "3.35"] {
        let k = q(k);
        let map = IterMap::model2_standard(k.clone())?;
        let set = enumerate_cycle_set(&map, 3)?;
        let qd = in_d(&quartic, &k);
        let mut mags = Vec::new();
        for o in &set.orbits {
            let m = magnitude(&map, o, &w)?;
            let hits = sturm_count(&qd, &m.closure())?;
            r.check(hits >= 1, || {
                format!("K={k}: magnitude {m} brackets no root of the quartic")
            });
            mags.push(format!(
                "{}{}",
                m.midpoint().to_decimal(6),
                if o.stability == Stability::Stable {
                    "s"
                } else {
                    ""
                }
            ));
        }
        r.line(format!(
            "K={} magnitudes {}",
            k.to_decimal(3),
            mags.join(" ")
        ));
    }
    Ok(r)
}

fn model2_three_cycles() -> Result<Report> {
    let mut r = Report::default();
    orbit_lines(&mut r, &IterMap::model2_standard(q("3.303"))?, 3, (8, 2))?;
    Ok(r)
}

fn model2_four_cycles() -> Result<Report> {
    let mut r = Report::default();
    orbit_lines(
        &mut r,
        &IterMap::model2_standard(q("3.319885"))?,
        4,
        (18, 2),
    )?;
    Ok(r)
}

fn model2_five_cycles() -> Result<Report> {
    let mut r = Report::default();
    orbit_lines(
        &mut r,
        &IterMap::model2_standard(q("3.33296183"))?,
        5,
        (48, 2),
    )?;
    Ok(r)
}

fn model2_bif2d() -> Result<Report> {
    let (aa, ka) = (Axis::new("a", 2.5, 5.0, 60)?, Axis::new("K", 0.0, 3.0, 60)?);
    let g = bifurcation_2d(
        &FloatMap::model2_standard(1.0)?,
        &aa,
        &ka,
        1.0,
        &SimConfig::default(),
    )?;
    let mut r = Report::default();
    grid_lines(&mut r, &g);
    let sys = model2_equilibrium_system();
    let [_, b, c, d] = mondyn::models::model2_standard_abcd();
    let stable = |a: f64, k: f64| -> Result<bool> {
        let (a, k) = (
            Rational::from_f64(a).expect("finite"),
            Rational::from_f64(k).expect("finite"),
        );
        if !k.is_positive() {
            return Ok(false);
        }
        Ok(count_solutions(&sys.at(&point(&[
            ("a", &a),
            ("b", &b),
            ("c", &c),
            ("d", &d),
            ("K", &k),
        ]))?)?
            > 0)
    };
    let (ha, hk) = (aa.cell_width(), ka.cell_width());
    for (j, k) in ka.centers().iter().enumerate() {
        for (i, a) in aa.centers().iter().enumerate() {
            if g.at(i, j) != Cell::Period(1) || stable(*a, *k)? {
                continue;
            }
            let mut near = false;
            for (da, dk) in [
                (-ha, 0.0),
                (ha, 0.0),
                (0.0, -hk),
                (0.0, hk),
                (-ha, -hk),
                (-ha, hk),
                (ha, -hk),
                (ha, hk),
            ] {
                near |= stable(a + da, k + dk)?;
            }
            r.check(near, || {
                format!("period-1 cell a={a} K={k} has no stable equilibrium within one cell")
            });
        }
    }
    Ok(r)
}

fn model2_bif1d_k() -> Result<Report> {
    let family = FloatMap::model2(3.3, 2.4, 0.6, 0.05, 1.0)?;
    let axis = Axis::new("K", 0.01, 3.0, 300)?;
    let mut r = Report::default();
    for x0 in [1.0, 4.0] {
        let d = bifurcation_1d(&family, &axis, x0, &SimConfig::default())?;
        run_lines(&mut r, &d);
        if x0 == 1.0 {
            for row in d.rows.iter().filter(|row| row.param < 1.1996) {
                let ok = row.cell == Cell::Period(1) && (row.samples[0] - 1.058).abs() < 1e-3;
                r.check(ok, || {
                    format!(
                        "x0=1 K={}: {:?} at {:?}, reference 1.058",
                        row.param,
                        row.cell,
                        row.samples.first()
                    )
                });
            }
            let after: Vec<_> = d
                .rows
                .iter()
                .filter(|row| row.param > 1.9874 && row.param < 2.05)
                .collect();
            let ok = !after.is_empty()
                && after.iter().all(|row| {
                    row.cell == Cell::Period(1) && (row.samples[0] - 4.384).abs() < 1e-3
                });
            r.check(ok, || {
                "x0=1 does not settle at 4.384 just above K = 1.9874".to_string()
            });
        }
    }
    Ok(r)
}

fn model2_bif1d_a() -> Result<Report> {
    let family = FloatMap::model2(3.6, 2.4, 0.6, 0.05, 2.2)?;
    let axis = Axis::new("a", 2.5, 5.0, 251)?;
    let mut r = Report::default();
    for x0 in [1.0, 4.0] {
        run_lines(
            &mut r,
            &bifurcation_1d(&family, &axis, x0, &SimConfig::default())?,
        );
    }
    Ok(r)
}

/// Published interval within `tol` per endpoint of some computed interval.
fn covered(got: &[(f64, f64)], want: (f64, f64), tol: f64) -> bool {
    got.iter()
        .any(|g| (g.0 - want.0).abs() <= tol && (g.1 - want.1).abs() <= tol)
}

fn model2_basins() -> Result<Report> {
    // The escape set starts where the listed basins end.
    type Spec = (
        &'static str,
        &'static str,
        [(f64, &'static [(f64, f64)]); 2],
        f64,
    );
    let cases: [Spec; 2] = [
        (
            "1/2",
            "7/2",
            [
                (
                    1.19,
                    &[(0.0, 3.168), (6.518, 7.577), (7.745, 7.781), (7.786, 7.789)],
                ),
                (4.64, &[(3.168, 6.518), (7.577, 7.745), (7.781, 7.786)]),
            ],
            7.789,
        ),
        (
            "1",
            "4",
            [
                (
                    4.99,
                    &[(0.0, 0.807), (2.0, 6.192), (6.431, 6.647), (6.653, 6.659)],
                ),
                (1.99, &[(0.807, 2.0), (6.192, 6.431), (6.647, 6.653)]),
            ],
            6.659,
        ),
    ];
    let tol = 2e-3;
    let mut r = Report::default();
    for (k, a, lists, escape) in cases {
        let map = IterMap::model2_standard(q(k))?.with_param("a", q(a))?;
        let rep = basins(&map, 0.0, 9.0, 9001, &SimConfig::default())?;
        r.line(format!("map {map}"));
        for att in &rep.attractors {
            r.line(format!(
                "attractor {} x={} {}",
                att.label, att.value, att.stability
            ));
        }
        for b in &rep.intervals {
            r.line(format!(
                "{:.6} {:.6} {}",
                b.lo,
                b.hi,
                rep.class_label(b.class)
            ));
        }
        for (value, want) in lists {
            let got = rep.basin_near(value).unwrap_or_default();
            for w in want {
                r.check(covered(&got, *w, tol), || {
                    format!("K={k} a={a}: basin of {value} lacks {w:?}")
                });
            }
        }
        let esc = rep.of_class(mondyn::sim::BasinClass::Escape);
        r.check(covered(&esc, (escape, 9.0), tol), || {
            format!("K={k} a={a}: escape set does not start at {escape}")
        });
    }
    Ok(r)
}
