//! Exact heat trace and heat content coefficients for operators of Laplace
//! type on one-dimensional and conformally flat model geometries.

pub mod constructions;
pub mod error;
pub mod geometry;
pub mod heat_content;
pub mod heat_trace;
pub mod jets;
pub mod numerics;
pub mod profile;

pub use error::{Error, Result};
pub use jets::Jet;
pub use numerics::{Rational, Scalar};
