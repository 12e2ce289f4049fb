//! Hopf fibration geometry on the unit 3-sphere.
//!
//! The crate builds Hopf fibers and the surfaces they sweep, images them in
//! the two conjugated 3-spaces of the double orthogonal projection and in the
//! stereographic projection, and ships the numerical oracles (circle and
//! cylinder fits, segment distances, linking numbers) used to check the
//! geometry.
//!
//! Everything here is a pure function of its inputs. The crate is `no_std`
//! and only needs `alloc`; file formats and the command line live in the
//! `hopf4d` crate.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod arrangements;
mod error;
pub mod geometry;
mod math;
mod point;
mod polyline;
pub mod projection;
pub mod surfaces;

pub use error::{Error, Result};
pub use point::{ComplexPair, Point3, Point4, Vector};
pub use polyline::{Polyline, Polyline3, Polyline4};

/// Tolerance for validating inputs that may have passed through round trips.
pub const INPUT_TOL: f64 = 1e-9;

/// Tolerance for identities evaluated in a single step.
pub const IDENTITY_TOL: f64 = 1e-12;

/// Default number of samples along a fiber.
pub const DEFAULT_FIBER_SAMPLES: usize = 256;
