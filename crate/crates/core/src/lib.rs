//! Exact-arithmetic analysis and numerical simulation of one-dimensional
//! polynomial iteration maps, instantiated on two gradient-adjustment
//! monopoly models.
//!
//! Layers, bottom up: [`exactalg`] (rationals, polynomials, resultants),
//! [`realroots`] (certified root isolation), [`semialg`] (solution counting
//! and border polynomials), [`models`] (the two maps and their cycle
//! polynomials), [`orbits`] (certified cycle enumeration and thresholds),
//! [`chaos`] (Li-Yorke certificates) and [`sim`] (floating-point iteration).

pub mod chaos;
pub mod error;
pub mod exactalg;
pub mod models;
pub mod orbits;
pub mod realroots;
pub mod semialg;
pub mod sim;

pub use error::{Error, Result};
pub use exactalg::{ParamPoly, Rational, UniPoly};
