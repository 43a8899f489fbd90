//! Heat trace coefficients `a_n(x, D)` for one-dimensional operators of Laplace
//! type, and the leading-part evaluators for conformally flat metrics.

mod leading;
mod symbol;
mod trig;

pub use leading::{
    leading_trace_global, leading_trace_global_display, leading_trace_local,
    leading_trace_local_display, GlobalLeadingInputs,
};
pub use symbol::{
    grading_audit, moment_integrate, resolvent_recursion, AuditReport, CircleOperator,
    ResolventExpansion, SymbolCoefficient, SymbolMonomial, SymbolOperator, SymbolSum,
};
pub use trig::TrigPoly;

use crate::error::Result;
use crate::geometry::LaplaceOp1D;
use crate::jets::Jet;
use crate::numerics::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCoefficient {
    pub n: usize,
    pub local_value: Option<Jet>,
    pub integrated_value: Option<Scalar>,
}

/// Local coefficients `a_0, ..., a_{n_max}` as jets.
pub fn local_trace_coefficients(op: &LaplaceOp1D, n_max: usize) -> Result<Vec<TraceCoefficient>> {
    let ex = resolvent_recursion(op, n_max, true)?;
    ex.sums
        .iter()
        .map(|s| {
            Ok(TraceCoefficient {
                n: s.n,
                local_value: Some(moment_integrate(s, op)?),
                integrated_value: None,
            })
        })
        .collect()
}

/// `int_M a_n(x, D) dvol` for `n = 0, ..., n_max` on the circle.
pub fn trace_coefficient_series(op: &CircleOperator, n_max: usize) -> Result<Vec<TraceCoefficient>> {
    let ex = resolvent_recursion(op, n_max, true)?;
    let length = op.length();
    ex.sums
        .iter()
        .map(|s| {
            let local = moment_integrate(s, op)?;
            Ok(TraceCoefficient {
                n: s.n,
                local_value: None,
                integrated_value: Some(length.scale(&local.mean())),
            })
        })
        .collect()
}
