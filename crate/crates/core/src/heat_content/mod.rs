//! Boundary coefficients `beta_l` of the heat content
//! `beta(t) ~ sum_n (-t)^n/n! int D^n phi1 . phi2 + sum_l t^{(l+1)/2} beta_l`.

mod base;
mod images;
mod intertwine;
mod leading;
mod reduce;
mod targets;
mod xi;

pub use base::beta_base;
pub use images::{image_beta, ImageBc};
pub use intertwine::{intertwine_build, product_trick_data, IntertwineData, IntertwinedPair, ProductTrickData};
pub use leading::{leading_content, leading_content_terms, LeadingTerm};
pub use reduce::{beta_reduce, interval_beta_reduce};
pub use targets::{target_match, TargetCheck, TargetMatch};
pub use xi::{xi, xi_closed_form, xi_table};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::numerics::{int, rational_pow, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryCondition {
    /// `phi = 0` on the boundary.
    Dirichlet,
    /// `phi^{(1)} + S phi = 0` with the inward normal derivative.
    Robin,
}

/// Normal jets at one boundary point, in the inward geodesic coordinate `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryJetData {
    pub phi1: Jet,
    pub phi2: Jet,
    pub e: Jet,
    /// Jet whose `k`-th derivative at 0 is `rho_mm^{(k)}`.
    pub rho_mm: Jet,
    pub s: Scalar,
    pub l_trace: Scalar,
    pub l_square_trace: Scalar,
    pub tangential_gradient_product: Scalar,
    pub boundary_volume: Scalar,
    /// Normal component of the connection one-form; `phi2` is differentiated
    /// with the dual connection `-omega`.
    pub omega: Option<Jet>,
}

impl BoundaryJetData {
    /// Flat data with `E = 0`, unit boundary volume and no connection.
    pub fn new(phi1: Jet, phi2: Jet) -> Self {
        let n = phi1.order().min(phi2.order());
        let zero = Jet::zero(Rational::zero(), n);
        BoundaryJetData {
            phi1,
            phi2,
            e: zero.clone(),
            rho_mm: zero,
            s: Scalar::zero(),
            l_trace: Scalar::zero(),
            l_square_trace: Scalar::zero(),
            tangential_gradient_product: Scalar::zero(),
            boundary_volume: Scalar::one(),
            omega: None,
        }
    }

    pub fn with_e(mut self, e: Jet) -> Self {
        self.e = e;
        self
    }

    pub fn with_s(mut self, s: Scalar) -> Self {
        self.s = s;
        self
    }

    pub fn with_rho_mm(mut self, rho: Jet) -> Self {
        self.rho_mm = rho;
        self
    }

    pub fn with_second_fundamental_form(mut self, trace: Scalar, square_trace: Scalar) -> Self {
        self.l_trace = trace;
        self.l_square_trace = square_trace;
        self
    }

    pub fn with_boundary_volume(mut self, v: Scalar) -> Self {
        self.boundary_volume = v;
        self
    }

    pub fn with_connection(mut self, omega: Jet) -> Self {
        self.omega = Some(omega);
        self
    }

    /// Data of `(phi2, phi1, D*)`: the test functions swap and the connection
    /// is replaced by its dual.
    pub fn adjoint_swapped(&self) -> Self {
        let mut d = self.clone();
        std::mem::swap(&mut d.phi1, &mut d.phi2);
        d.omega = self.omega.as_ref().map(Jet::neg);
        d
    }

    /// True when nothing beyond the one-dimensional normal data is present.
    pub fn is_one_dimensional(&self) -> bool {
        self.rho_mm.is_zero()
            && self.l_trace.is_zero()
            && self.l_square_trace.is_zero()
            && self.tangential_gradient_product.is_zero()
            && self.omega.as_ref().is_none_or(Jet::is_zero)
    }

    /// Data of the metric `c^2 g` in dimension `dim`, with `r -> c r`.
    pub fn rescaled(&self, c: &Rational, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        let c2 = (c * c).recip();
        Ok(BoundaryJetData {
            phi1: self.phi1.stretch(c),
            phi2: self.phi2.stretch(c),
            e: self.e.stretch(c).scale_q(&c2),
            rho_mm: self.rho_mm.stretch(c).scale_q(&c2),
            s: self.s.scale(&c.recip()),
            l_trace: self.l_trace.scale(&c.recip()),
            l_square_trace: self.l_square_trace.scale(&c2),
            tangential_gradient_product: self.tangential_gradient_product.scale(&c2),
            boundary_volume: self
                .boundary_volume
                .scale(&rational_pow(c, dim as i64 - 1)?),
            omega: self.omega.as_ref().map(|w| w.stretch(c).scale_q(&c.recip())),
        })
    }
}

/// A jet in `x` at the far end `x = length` re-expressed in the inward
/// coordinate `r = length - x`, based at `r = 0`.
pub fn far_end_inward(jet: &Jet) -> Jet {
    Jet::new(Rational::zero(), jet.reflect().coeffs().to_vec())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Exact,
    LeadingOnly,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Exact => "exact",
            Provenance::LeadingOnly => "leading-only",
        }
    }
}

/// A boundary heat content coefficient. Leading-only values cannot be read as
/// exact ones: [`ContentCoefficient::exact`] refuses them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContentCoefficient {
    pub ell: usize,
    value: Scalar,
    pub provenance: Provenance,
    /// Reading choices and excluded terms that affect the value.
    pub flags: Vec<String>,
}

impl ContentCoefficient {
    pub(crate) fn exact_value(ell: usize, value: Scalar, flags: Vec<String>) -> Self {
        ContentCoefficient {
            ell,
            value,
            provenance: Provenance::Exact,
            flags,
        }
    }

    pub(crate) fn leading_value(ell: usize, value: Scalar, flags: Vec<String>) -> Self {
        ContentCoefficient {
            ell,
            value,
            provenance: Provenance::LeadingOnly,
            flags,
        }
    }

    pub fn exact(&self) -> Result<&Scalar> {
        match self.provenance {
            Provenance::Exact => Ok(&self.value),
            Provenance::LeadingOnly => Err(Error::InvalidArgument(format!(
                "beta_{} is a leading-only value",
                self.ell
            ))),
        }
    }

    pub fn leading(&self) -> Result<&Scalar> {
        match self.provenance {
            Provenance::LeadingOnly => Ok(&self.value),
            Provenance::Exact => Err(Error::InvalidArgument(format!(
                "beta_{} is exact, not a leading part",
                self.ell
            ))),
        }
    }

    /// Explicit cast for reporting either kind.
    pub fn value_unchecked(&self) -> &Scalar {
        &self.value
    }
}

pub(crate) fn check_even(ell: usize, min: usize) -> Result<()> {
    if ell % 2 == 1 || ell < min {
        return Err(Error::InvalidArgument(format!(
            "index {ell} must be even and at least {min}"
        )));
    }
    Ok(())
}

/// `2 / sqrt(pi)`.
pub(crate) fn two_over_sqrt_pi() -> Scalar {
    Scalar::term(-1, int(2))
}
