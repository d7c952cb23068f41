use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::{classify, simulate_with, Cell, FloatMap, Outcome, SimConfig};
use crate::error::{Error, Result};

/// Index 0 is unused; `1..=23` are periods; 24 is black for periods of 24
/// or more and for divergent trajectories.
pub const PALETTE: [[u8; 3]; 25] = [
    [255, 255, 255],
    [128, 0, 0],
    [230, 25, 75],
    [245, 130, 48],
    [255, 225, 25],
    [210, 245, 60],
    [60, 180, 75],
    [70, 240, 240],
    [0, 130, 200],
    [145, 30, 180],
    [240, 50, 230],
    [250, 190, 212],
    [255, 215, 180],
    [170, 255, 195],
    [220, 190, 255],
    [170, 110, 40],
    [128, 128, 0],
    [0, 0, 128],
    [0, 128, 128],
    [128, 128, 128],
    [255, 250, 200],
    [100, 149, 237],
    [188, 143, 143],
    [85, 107, 47],
    [0, 0, 0],
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Axis {
    pub param: String,
    pub lo: f64,
    pub hi: f64,
    pub res: usize,
}

impl Axis {
    pub fn new(param: &str, lo: f64, hi: f64, res: usize) -> Result<Self> {
        if res < 2 {
            return Err(Error::Domain(format!(
                "resolution {res} for {param} must be at least 2"
            )));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Domain(format!(
                "range {lo}:{hi} for {param} is not an interval"
            )));
        }
        Ok(Axis {
            param: param.to_string(),
            lo,
            hi,
            res,
        })
    }

    /// `res` evenly spaced values including both ends.
    pub fn points(&self) -> Vec<f64> {
        let (span, steps) = (self.hi - self.lo, (self.res - 1) as f64);
        (0..self.res)
            .map(|i| {
                if i + 1 == self.res {
                    self.hi
                } else {
                    self.lo + span * i as f64 / steps
                }
            })
            .collect()
    }

    /// Centers of `res` equal cells.
    pub fn centers(&self) -> Vec<f64> {
        let span = self.hi - self.lo;
        (0..self.res)
            .map(|i| self.lo + span * (2 * i + 1) as f64 / (2 * self.res) as f64)
            .collect()
    }

    pub fn cell_width(&self) -> f64 {
        (self.hi - self.lo) / self.res as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bif1dRow {
    pub param: f64,
    pub samples: Vec<f64>,
    pub cell: Cell,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bif1d {
    pub axis: Axis,
    pub x0: f64,
    pub max_period: u32,
    pub rows: Vec<Bif1dRow>,
}

impl Bif1d {
    /// Columns `param,sample_index,x,period`; divergent rows have one line
    /// with an empty `x`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("param,sample_index,x,period\n");
        for r in &self.rows {
            let label = r.cell.label(self.max_period);
            if r.samples.is_empty() {
                let _ = writeln!(out, "{},0,,{label}", r.param);
            }
            for (i, x) in r.samples.iter().enumerate() {
                let _ = writeln!(out, "{},{i},{x},{label}", r.param);
            }
        }
        out
    }

    /// First parameter value (in axis order) whose cell is `cell`.
    pub fn first(&self, cell: Cell) -> Option<f64> {
        self.rows.iter().find(|r| r.cell == cell).map(|r| r.param)
    }
}

/// Sweep one parameter of `family` and record the post-burn-in samples and
/// detected period at each value.
pub fn bifurcation_1d(family: &FloatMap, axis: &Axis, x0: f64, cfg: &SimConfig) -> Result<Bif1d> {
    let rows = axis
        .points()
        .into_par_iter()
        .map(|v| {
            let map = family.with_param(&axis.param, v)?;
            let t = simulate_with(&map, x0, cfg)?;
            let cell = match &t.outcome {
                Outcome::Divergent { .. } => Cell::Divergent,
                Outcome::Periodic { order, .. } => Cell::Period(*order),
                Outcome::Aperiodic => Cell::Complex,
                Outcome::Unclassified => {
                    return Err(Error::InsufficientData(format!(
                        "window {} too short to classify",
                        cfg.window
                    )))
                }
            };
            Ok(Bif1dRow {
                param: v,
                samples: t.samples,
                cell,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Bif1d {
        axis: axis.clone(),
        x0,
        max_period: cfg.max_period,
        rows,
    })
}

/// Period markers on a grid of cell centers, `x` axis first.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BifGrid {
    pub x_axis: Axis,
    pub y_axis: Axis,
    pub x0: f64,
    pub max_period: u32,
    /// Row-major with `y` increasing: `cells[j * x_res + i]`.
    pub cells: Vec<Cell>,
}

impl BifGrid {
    pub fn at(&self, i: usize, j: usize) -> Cell {
        self.cells[j * self.x_axis.res + i]
    }

    /// Binary PPM (P6), highest `y` on the top row.
    pub fn to_ppm(&self) -> Vec<u8> {
        let (w, h) = (self.x_axis.res, self.y_axis.res);
        let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
        for j in (0..h).rev() {
            for i in 0..w {
                out.extend_from_slice(&PALETTE[self.at(i, j).palette_index()]);
            }
        }
        out
    }

    /// Columns `x,y,period`.
    pub fn to_csv(&self) -> String {
        let mut out = format!("{},{},period\n", self.x_axis.param, self.y_axis.param);
        let (xs, ys) = (self.x_axis.centers(), self.y_axis.centers());
        for (j, y) in ys.iter().enumerate() {
            for (i, x) in xs.iter().enumerate() {
                let _ = writeln!(out, "{x},{y},{}", self.at(i, j).label(self.max_period));
            }
        }
        out
    }
}

pub fn bifurcation_2d(
    family: &FloatMap,
    x_axis: &Axis,
    y_axis: &Axis,
    x0: f64,
    cfg: &SimConfig,
) -> Result<BifGrid> {
    let (xs, ys) = (x_axis.centers(), y_axis.centers());
    let cells = (0..xs.len() * ys.len())
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx % xs.len(), idx / xs.len());
            let map = family
                .with_param(&x_axis.param, xs[i])?
                .with_param(&y_axis.param, ys[j])?;
            classify(&map, x0, cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BifGrid {
        x_axis: x_axis.clone(),
        y_axis: y_axis.clone(),
        x0,
        max_period: cfg.max_period,
        cells,
    })
}
