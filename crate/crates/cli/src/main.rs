mod params;
mod reproduce;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mondyn::chaos::{certify_period3, certify_snapback};
use mondyn::models::{model2_condition_polys, Model};
use mondyn::orbits::{
    enumerate_cycle_set, find_thresholds_with, magnitude, Stability, ThresholdOptions,
};
use mondyn::realroots::RatInterval;
use mondyn::semialg::{count_solutions, model1_equilibrium_system, model2_equilibrium_system};
use mondyn::sim::{basins, bifurcation_1d, bifurcation_2d, Axis, SimConfig};
use mondyn::{Error, Rational};

use params::{exact, exact_range, float_range, ModelArgs};

/// Default directory for written artifacts when `--out` is absent.
const OUT_DIR_ENV: &str = "MONDYN_OUT_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "mondyn",
    version,
    about = "Exact and numerical analysis of two monopoly iteration maps"
)]
struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Equilibria, their stability and the sign conditions at one point.
    Stability {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 10)]
        digits: u32,
    },
    /// Enumerate and classify the n-cycles at one point.
    Cycles {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 10)]
        digits: u32,
    },
    /// Bracket every change of the (n-cycle, stable n-cycle) counts.
    Thresholds {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: u32,
        /// Parameter to vary.
        #[arg(long, default_value = "K")]
        param: String,
        #[arg(long)]
        range: String,
        #[arg(long, default_value = "1/10000000")]
        tol: String,
        /// Initial probe grid cells.
        #[arg(long, default_value_t = 16)]
        grid: usize,
        #[arg(long, default_value_t = 10)]
        digits: u32,
    },
    /// Li-Yorke chaos certificate: snapback repeller for Model 1, period 3
    /// for Model 2.
    Chaos {
        #[command(flatten)]
        model: ModelArgs,
        /// Preimage steps for the snapback search.
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 12)]
        digits: u32,
    },
    /// One-parameter bifurcation diagram as CSV.
    Bif1d {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        param: String,
        #[arg(long)]
        range: String,
        #[arg(long, default_value_t = 1001)]
        res: usize,
        #[arg(long, default_value_t = 1.0)]
        x0: f64,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-parameter period map as a PPM image (and optionally CSV).
    Bif2d {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        x_param: String,
        #[arg(long)]
        x_range: String,
        #[arg(long)]
        y_param: String,
        #[arg(long)]
        y_range: String,
        /// Cells per axis; `--y-res` overrides the second axis.
        #[arg(long, default_value_t = 200)]
        res: usize,
        #[arg(long)]
        y_res: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        x0: f64,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the grid as CSV to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Basins of attraction of the stable equilibria over an initial-state
    /// range.
    Basins {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        range: String,
        #[arg(long, default_value_t = 9001)]
        res: usize,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rerun a canonical configuration and compare it with its golden file.
    Reproduce {
        /// Target name, or `list`.
        target: String,
        /// Directory holding the golden files.
        #[arg(long)]
        golden_dir: Option<PathBuf>,
        /// Overwrite the golden file with the computed records.
        #[arg(long)]
        bless: bool,
        /// Also write the computed records to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug, Clone)]
struct SimArgs {
    #[arg(long, default_value_t = 10_000)]
    burn_in: usize,
    #[arg(long, default_value_t = 256)]
    window: usize,
    #[arg(long, default_value_t = 24)]
    max_period: u32,
}

impl SimArgs {
    fn config(&self) -> SimConfig {
        SimConfig {
            burn_in: self.burn_in,
            window: self.window,
            max_period: self.max_period,
            ..SimConfig::default()
        }
    }
}

/// Failure modes mapped to exit codes: 1 for a failed check, 2 for bad
/// input or a computation error.
enum Failure {
    Check(String),
    Error(String),
    /// The reader of stdout went away.
    Closed,
}

/// `println!` that reports a closed pipe instead of panicking.
macro_rules! say {
    ($($arg:tt)*) => {
        writeln!(std::io::stdout().lock(), $($arg)*).map_err(crate::Failure::from)?
    };
}
pub(crate) use say;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Error(format!("i/o error: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn out_path(out: &Option<PathBuf>, default_name: &str) -> Option<PathBuf> {
    out.clone()
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(|d| Path::new(&d).join(default_name)))
}

fn emit(out: &Option<PathBuf>, default_name: &str, bytes: &[u8]) -> Outcome {
    match out_path(out, default_name) {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(&p, bytes)?;
            eprintln!("wrote {}", p.display());
        }
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn stability(model: &ModelArgs, digits: u32) -> Outcome {
    let map = model.exact()?;
    let point = model.point()?;
    say!("map {map}");
    let set = enumerate_cycle_set(&map, 1)?;
    for o in &set.orbits {
        say!(
            "{}",
            o.to_record(digits).replacen("orbit n=1", "equilibrium", 1)
        );
    }
    let system = match map.model() {
        Model::Model1 => model1_equilibrium_system(),
        Model::Model2 => model2_equilibrium_system(),
    };
    say!(
        "stable_equilibria {}",
        count_solutions(&system.at(&point)?)?
    );
    match map.model() {
        Model::Model1 => {
            let s = point["e"].pow(2) * point["f"].pow(3);
            let border = Rational::from(8) - Rational::from(27) * s;
            say!("sign 8-27*e^2*f^3 {}", sign(border.signum()));
        }
        Model::Model2 => {
            let signs = model2_condition_polys()?.signs(&point)?;
            let parts: Vec<String> = signs
                .iter()
                .enumerate()
                .map(|(i, s)| format!("R{}={}", i + 1, sign(*s)))
                .collect();
            say!("signs {}", parts.join(" "));
        }
    }
    Ok(())
}

fn sign(s: i32) -> &'static str {
    match s {
        1 => "+",
        -1 => "-",
        _ => "0",
    }
}

fn cycles(model: &ModelArgs, n: u32, digits: u32) -> Outcome {
    let map = model.exact()?;
    let set = enumerate_cycle_set(&map, n)?;
    let stable = set
        .orbits
        .iter()
        .filter(|o| o.stability == Stability::Stable)
        .count();
    let nonhyp = set
        .orbits
        .iter()
        .filter(|o| o.stability == Stability::Nonhyperbolic)
        .count();
    say!("map {map}");
    say!(
        "cycles n={n} orbits={} stable={stable} nonhyperbolic={nonhyp} real_roots={}",
        set.orbits.len(),
        set.real_roots
    );
    let w = Rational::new(1, 10i64.pow(digits.min(18)));
    for o in &set.orbits {
        let m = magnitude(&map, o, &w)?;
        say!(
            "{} magnitude=[{}, {}]",
            o.to_record(digits),
            m.lo.to_decimal(digits),
            m.hi.to_decimal(digits)
        );
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Error(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Stability { model, digits } => stability(&model, digits),
        Command::Cycles { model, n, digits } => cycles(&model, n, digits),
        Command::Thresholds {
            model,
            n,
            param,
            range,
            tol,
            grid,
            digits,
        } => {
            let base = model.exact_with_free(&[param.as_str()])?;
            let (lo, hi) = exact_range(&range)?;
            let opts = ThresholdOptions {
                grid,
                ..ThresholdOptions::default()
            };
            let report = find_thresholds_with(
                &base,
                &param,
                n,
                &RatInterval::open(lo, hi),
                &exact(&tol)?,
                &opts,
            )?;
            for line in report.to_lines(digits) {
                say!("{line}");
            }
            Ok(())
        }
        Command::Chaos { model, m, digits } => {
            let map = model.exact()?;
            let cert = match map.model() {
                Model::Model1 => certify_snapback(&map, m)?,
                Model::Model2 => certify_period3(&map)?,
            };
            match cert {
                Some(c) => {
                    write!(std::io::stdout().lock(), "{}", c.to_report(digits))?;
                    Ok(())
                }
                None => Err(Failure::Check(format!("no certificate at {map}"))),
            }
        }
        Command::Bif1d {
            model,
            param,
            range,
            res,
            x0,
            sim,
            out,
        } => {
            let family = model.float(&[param.as_str()])?;
            let (lo, hi) = float_range(&range)?;
            let d = bifurcation_1d(&family, &Axis::new(&param, lo, hi, res)?, x0, &sim.config())?;
            emit(&out, "bif1d.csv", d.to_csv().as_bytes())
        }
        Command::Bif2d {
            model,
            x_param,
            x_range,
            y_param,
            y_range,
            res,
            y_res,
            x0,
            sim,
            out,
            csv,
        } => {
            let family = model.float(&[x_param.as_str(), y_param.as_str()])?;
            let (xl, xh) = float_range(&x_range)?;
            let (yl, yh) = float_range(&y_range)?;
            let xa = Axis::new(&x_param, xl, xh, res)?;
            let ya = Axis::new(&y_param, yl, yh, y_res.unwrap_or(res))?;
            let g = bifurcation_2d(&family, &xa, &ya, x0, &sim.config())?;
            let out = out
                .or_else(|| out_path(&None, "bif2d.ppm"))
                .or_else(|| Some(PathBuf::from("bif2d.ppm")));
            emit(&out, "bif2d.ppm", &g.to_ppm())?;
            if csv.is_some() {
                emit(&csv, "bif2d.csv", g.to_csv().as_bytes())?;
            }
            Ok(())
        }
        Command::Basins {
            model,
            range,
            res,
            sim,
            json,
            out,
        } => {
            let map = model.exact()?;
            let (lo, hi) = float_range(&range)?;
            let r = basins(&map, lo, hi, res, &sim.config())?;
            if json {
                emit(&out, "basins.json", (r.to_json() + "\n").as_bytes())
            } else {
                emit(&out, "basins.csv", r.to_csv().as_bytes())
            }
        }
        Command::Reproduce {
            target,
            golden_dir,
            bless,
            out,
        } => {
            let dir = golden_dir.unwrap_or_else(reproduce::default_golden_dir);
            reproduce::run(&target, &dir, bless, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
