//! Exact multivariate regression depth for points, lines and planes in
//! dimensions 2 and 3.
//!
//! The crate computes crossing distances and regression depth of k-flats
//! through closed double-wedge minimization over exact rational data,
//! constructs provably deep flats (catline, centerpoint-based lines,
//! six-sector planes), finds the exact deepest planar regression line, and
//! runs a sampling-based approximation of the deepest flat. Every
//! construction is certified after the fact by the exact depth evaluator.

pub mod bounds;
pub mod constructions;
pub mod datagen;
pub mod deepest;
pub mod depth;
pub mod error;
pub mod geometry;
pub mod pencil;
pub mod scalar;
pub mod tverberg;

mod kernel;
mod lp;

pub use error::{Error, Result};
pub use geometry::{
    dualize_2d, dualize_2d_line, orient, AffineFlat, DoubleWedge, Flat, Hyperplane, Pairing,
    Point, Sign, Vector,
};
pub use scalar::{parse_scalar, ratio, scalar, to_decimal, Scalar};
