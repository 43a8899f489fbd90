//! Leading parts of `a_{2n}` in terms of the highest derivatives of curvature
//! and of the endomorphism `E`. Lower-order terms are not represented.


use crate::error::{Error, Result};
use crate::geometry::{ConformalJetMetric, Tensor};
use crate::jets::Jet;
use crate::numerics::{factorial_q, int, rat, Rational, Scalar};

fn check_nbar(nbar: usize) -> Result<()> {
    if nbar < 3 {
        return Err(Error::InvalidArgument(format!("leading terms need nbar >= 3, got {nbar}")));
    }
    Ok(())
}

/// `(-1)^n n! / (2n+1)!`.
fn prefactor(nbar: usize) -> Rational {
    let sign = if nbar.is_multiple_of(2) { int(1) } else { int(-1) };
    sign * factorial_q(nbar as u64) / factorial_q(2 * nbar as u64 + 1)
}

/// Local leading part from the values of `Delta^{n-1} tau` and `Delta^{n-1} E` at the point.
pub fn leading_trace_local_display(nbar: usize, lap_tau: &Scalar, lap_e: &Scalar) -> Result<Scalar> {
    check_nbar(nbar)?;
    let n = nbar as i64;
    let inner = lap_tau.scale(&int(-n)) + lap_e.scale(&int(-(4 * n + 2)));
    Ok(inner.scale(&prefactor(nbar)))
}

/// Local leading part of `a_{2n}` at the base point of `g`, with `E` an
/// x-dependent endomorphism jet on the same base.
pub fn leading_trace_local(g: &ConformalJetMetric, e: &Jet, nbar: usize) -> Result<Scalar> {
    check_nbar(nbar)?;
    let k = nbar - 1;
    let h_order = g.profile().order();
    if h_order < 2 * nbar {
        return Err(Error::OrderOverflow {
            needed: 2 * nbar,
            available: h_order,
        });
    }
    let tau = g.curvature_tensors(h_order - 2)?.tau;
    let lap_tau = g.laplacian_iterate(&tau, k)?.constant_term().clone();
    let lap_e = g.laplacian_iterate(e, k)?.constant_term().clone();
    leading_trace_local_display(nbar, &lap_tau, &lap_e)
}

/// Squared norms and the mixed product entering the global leading integrand,
/// all with `n - 2` covariant derivatives.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GlobalLeadingInputs {
    pub tau_sq: Scalar,
    pub rho_sq: Scalar,
    pub tau_e: Scalar,
    pub omega_sq: Scalar,
    pub e_sq: Scalar,
}

pub fn leading_trace_global_display(nbar: usize, v: &GlobalLeadingInputs) -> Result<Scalar> {
    check_nbar(nbar)?;
    let n = nbar as i64;
    let inner = v.tau_sq.scale(&int(n * n - n - 1))
        + v.rho_sq.scale(&int(2))
        + v.tau_e.scale(&int(4 * (2 * n + 1) * (n - 1)))
        + v.omega_sq.scale(&int(2 * (2 * n + 1)))
        + v.e_sq.scale(&int(4 * (2 * n - 1) * (2 * n + 1)));
    Ok(inner.scale(&(prefactor(nbar) * rat(1, 2))))
}

/// Global leading integrand at the base point. `omega` is the `dx_1 ^ dx_2`
/// component of the curvature of the connection, if any.
pub fn leading_trace_global(
    g: &ConformalJetMetric,
    e: &Jet,
    omega: Option<&Jet>,
    nbar: usize,
) -> Result<Scalar> {
    check_nbar(nbar)?;
    let m = g.dim();
    let k = nbar - 2;
    let h_order = g.profile().order();
    if h_order < k + 2 {
        return Err(Error::OrderOverflow {
            needed: k + 2,
            available: h_order,
        });
    }
    let curv = g.curvature_tensors(h_order - 2)?;
    let tau = Tensor::scalar(m, curv.tau.clone());
    let et = Tensor::scalar(m, e.clone());
    let omega_sq = match omega {
        Some(w) if !w.is_zero() => {
            if m < 2 {
                return Err(Error::InvalidArgument("a 2-form needs dimension >= 2".into()));
            }
            let mut comps = vec![Jet::zero(w.base().clone(), w.order()); m * m];
            comps[1] = w.clone();
            comps[m] = w.neg();
            g.nabla_norm_squared(&Tensor { m, rank: 2, comps }, k)?
        }
        _ => Scalar::zero(),
    };
    let v = GlobalLeadingInputs {
        tau_sq: g.nabla_norm_squared(&tau, k)?,
        rho_sq: g.nabla_norm_squared(&curv.ricci, k)?,
        tau_e: g.nabla_inner(&tau, &et, k)?,
        omega_sq,
        e_sq: g.nabla_norm_squared(&et, k)?,
    };
    leading_trace_global_display(nbar, &v)
}
