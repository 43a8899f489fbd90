//! Prescribing `beta_{2j}` for `k <= j <= nu` by adding
//! `Phi_nu = sum_{j=k}^{nu} gamma_j psi r^{2j}/(2j)!` to `phi1`, for `-d^2` with
//! Dirichlet conditions at the boundary point `r = 0`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::numerics::{factorial_q, Rational, Scalar};

use super::images::{image_beta, ImageBc};
use super::reduce::beta_reduce;
use super::{xi, BoundaryCondition, BoundaryJetData};

/// Result of the independent second evaluation of one target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetCheck {
    pub ell_bar: usize,
    pub method: &'static str,
    pub value: Scalar,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetMatch {
    pub gammas: BTreeMap<usize, Scalar>,
    /// `Phi_nu` for the largest target index.
    pub phi: Jet,
    /// `C_j - beta_{2j}(Phi + phi1, phi2)`.
    pub residuals: BTreeMap<usize, Scalar>,
    pub verification: Vec<TargetCheck>,
}

impl TargetMatch {
    pub fn verified(&self) -> bool {
        self.residuals.values().all(Scalar::is_zero) && self.verification.iter().all(|c| c.matches)
    }
}

fn beta(phi1: &Jet, phi2: &Jet, ell: usize) -> Result<Scalar> {
    image_beta(phi1, phi2, ImageBc::Dirichlet, ell)
}

/// Solves for `gamma_j` one index at a time. Targets must cover a contiguous
/// range `k..=nu` with `k >= 3`; jets must be based at 0 with order `>= 2 nu`.
pub fn target_match(targets: &BTreeMap<usize, Scalar>, phi1: &Jet, phi2: &Jet) -> Result<TargetMatch> {
    let (k, nu) = match (targets.keys().next(), targets.keys().next_back()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Err(Error::InvalidArgument("no targets given".into())),
    };
    if k < 3 {
        return Err(Error::InvalidArgument(format!(
            "target index {k} is below the first free index 3"
        )));
    }
    if targets.len() != nu - k + 1 {
        return Err(Error::InvalidArgument("target indices must be contiguous".into()));
    }
    let p0 = phi2.derivative_at_base(0)?;
    if p0.is_zero() {
        return Err(Error::InvalidArgument("phi2(0) must be nonzero".into()));
    }
    let psi = p0.inverse()?;
    let order = phi1.order().min(phi2.order());
    if order < 2 * nu {
        return Err(Error::OrderOverflow {
            needed: 2 * nu,
            available: order,
        });
    }
    let phi1 = phi1.truncate(order);
    let phi2 = phi2.truncate(order);
    let mut phi = Jet::zero(Rational::zero(), order);
    let mut gammas = BTreeMap::new();
    for (&j, c) in targets {
        let current = beta(&phi.add(&phi1)?, &phi2, 2 * j)?;
        let gamma = (c - &current).checked_div(&xi(2 * j)?)?;
        let term = Jet::monomial(
            Rational::zero(),
            2 * j,
            (&gamma * &psi).scale(&factorial_q(2 * j as u64).recip()),
            order,
        );
        phi = phi.add(&term)?;
        gammas.insert(j, gamma);
    }
    let total = phi.add(&phi1)?;
    let mut residuals = BTreeMap::new();
    let mut verification = Vec::new();
    for (&j, c) in targets {
        residuals.insert(j, c - &beta(&total, &phi2, 2 * j)?);
        let data = BoundaryJetData::new(total.clone(), phi2.clone());
        let (method, value) = match beta_reduce(&data, BoundaryCondition::Dirichlet, 2 * j) {
            Ok(v) => ("reduction", v.exact()?.clone()),
            Err(Error::Admissibility { .. }) => ("images-swapped", beta(&phi2, &total, 2 * j)?),
            Err(e) => return Err(e),
        };
        verification.push(TargetCheck {
            ell_bar: j,
            method,
            matches: &value == c,
            value,
        });
    }
    Ok(TargetMatch {
        gammas,
        phi,
        residuals,
        verification,
    })
}
