//! Independent numerical ground truth for the exact heat-coefficient
//! engines: eigen-decompositions of 1D operators on intervals and circles,
//! truncated eigen-sums for heat content and heat trace, and small-`t`
//! series fits.

pub mod checks;
pub mod error;
pub mod fit;
pub mod resolution;
pub mod shooting;
pub mod sums;
pub mod tridiag;

pub use checks::{content_fit, intertwine_check, product_trick_check, IntertwineReport, ProductTrickConfig, ProductTrickReport, Smooth};
pub use error::{OracleError, Result};
pub use fit::{asymptotic_fit, AsymptoticFit, FitConfig};
pub use resolution::{
    eigensolve_circle, eigensolve_interval, func, Bc, BoundaryCondition, CircleProblem, EigenConfig, Func,
    IntervalProblem, SpectralResolution,
};
pub use sums::{heat_content_sum, heat_trace_sum, ContentSeries, HeatSum};
