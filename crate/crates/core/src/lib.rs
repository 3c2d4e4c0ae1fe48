//! Desk-scale computation with functions of bounded variation on finite
//! planar sets, and a finite-dimensional model of the associated operator
//! theory.
//!
//! - [`geometry`]: polylines, lines, crossing counts and curve weights.
//! - [`variation`]: two-dimensional variation, the BV norm and the search
//!   engines (exact branch and bound, heuristic lower bounds).
//! - [`funcalg`]: function-algebra constructions — generators, lattice and
//!   algebra operations, lifts, pasting and the quantitative extension
//!   constructions on grids.
//! - [`nef`]: half-planes and boolean combinations of them, their traces on
//!   finite sets and indicator functions.
//! - [`spectral`]: diagonalizable matrices as resolutions of identity,
//!   functional calculus, half-plane spectral families and Nef-polygon
//!   spectral projections.

pub mod error;
pub mod funcalg;
pub mod geometry;
pub mod nef;
pub mod spectral;
pub mod suites;
pub mod tol;
pub mod variation;

pub use error::{Error, Result};
