//! Intersections of planar Bézier curves and the conditioning of those
//! intersections.
//!
//! The pipeline is:
//!
//! 1. [`intersect::find_intersections`] locates the roots of
//!    `F(s, t) = b0(s) - b1(t)` by control-polygon subdivision followed by
//!    Newton polishing.
//! 2. [`conditioning::condition_report`] computes, for each root, the
//!    closed-form 2-norm relative root condition number under componentwise
//!    relative coefficient perturbations, together with the looser
//!    norm-ball (Higham-style) bound.
//! 3. [`perturb`] measures the same quantity empirically by applying the
//!    extremal coefficient perturbations and re-solving.
//!
//! The [`cli`] module holds the document formats used by the `cond` binary.

pub mod bernstein;
pub mod cli;
pub mod conditioning;
pub mod curve;
mod error;
pub mod fixtures;
pub mod intersect;
pub mod linalg;
pub mod perturb;

pub use bernstein::BernsteinPoly;
pub use conditioning::{condition_report, ConditionReport, Flag};
pub use curve::{BezierCurve, ParamBox};
pub use error::{Error, Result};
pub use intersect::{find_intersections, IntersectConfig, IntersectionRecord};
pub use linalg::{Mat2, Vec2};
