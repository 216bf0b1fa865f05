//! Rigorous verification of covering relations between h-sets.
//!
//! The crate is layered bottom-up:
//!
//! * [`interval`]: outward-rounded interval arithmetic on scalars, boxes and
//!   matrices, including verified inverses and determinant signs.
//! * [`hset`]: affine h-sets, their charts, transposes, symmetric images and
//!   boundary grids in the maximum norm.
//! * [`dynamics`]: maps with interval evaluation and derivatives, most
//!   notably the four-dimensional reversible quadratic map.
//! * [`covering`]: the exit-wall and boundary sweeps that certify a covering
//!   relation under the convex homotopy to the linearised unstable block.
//! * [`campaign`]: the concrete h-sets near the two hyperbolic fixed points,
//!   the covering graph with its symmetric closure, and symbolic dynamics.

pub mod campaign;
pub mod covering;
pub mod dynamics;
pub mod error;
pub mod hset;
pub mod interval;

pub use error::{Error, Result};
pub use interval::{IBox, IMatrix, Interval};
