//! Streaming epsilon-hulls.
//!
//! An epsilon-hull of a point set `P` is a subset `S` such that every point of
//! `P` lies within distance `eps` of the convex hull of `S`. This crate
//! provides three streaming constructions competitive with the smallest such
//! subset, together with the exact oracles used to check them:
//!
//! * [`roa`]: one-pass planar algorithm for randomly ordered streams.
//! * [`multipass`]: planar algorithm that refines a dyadic direction set over
//!   `O(log 1/eps)` passes.
//! * [`epsdelta`]: one-pass sketch in any dimension that is correct for all
//!   but a `delta` fraction of directions.
//! * [`oracles`]: hull checking, brute-force optimum, bad-direction estimation.
//! * [`streamgen`]: benign generators plus layered lower-bound constructions.
//! * [`io`] and [`bench`]: point-stream files, result CSVs, experiment suites.
//!
//! Every routine is generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix `f64`, which is what the CLI uses.

pub mod bench;
pub mod epsdelta;
pub mod error;
pub mod geom;
pub mod io;
pub mod multipass;
pub mod oracles;
pub mod roa;
pub mod scalar;
pub mod streamgen;

pub use error::{Error, Result};
pub use geom::{Direction, Hull2D, Orientation, Point};
pub use scalar::Scalar;

pub type Point64 = geom::Point<f64>;
pub type Point32 = geom::Point<f32>;
pub type Direction64 = geom::Direction<f64>;
pub type Direction32 = geom::Direction<f32>;
pub type Hull2D64 = geom::Hull2D<f64>;
pub type Hull2D32 = geom::Hull2D<f32>;
pub type RoaState64 = roa::RoaState<f64>;
pub type RoaState32 = roa::RoaState<f32>;
pub type DirectionSketch64 = epsdelta::DirectionSketch<f64>;
pub type DirectionSketch32 = epsdelta::DirectionSketch<f32>;
pub type EpsHullReport64 = oracles::EpsHullReport<f64>;
pub type OptResult64 = oracles::OptResult<f64>;
pub type MultipassOutcome64 = multipass::MultipassOutcome<f64>;
