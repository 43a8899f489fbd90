
use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::numerics::{rat, Scalar};

use super::{two_over_sqrt_pi, BoundaryCondition, BoundaryJetData, ContentCoefficient};

/// The reading of the Robin `l = 2` display used here: the second factor is
/// `phi2^{(1)} + S phi2`.
pub(crate) const ROBIN_FIRST_DERIVATIVE_READING: &str =
    "robin beta_2 uses phi2^(1) + S phi2 in the second factor";

/// First and second covariant normal derivatives at the boundary for the
/// connection `omega`: `phi' + w phi` and `phi'' + 2 w phi' + (w' + w^2) phi`.
pub(crate) fn covariant_normal(phi: &Jet, omega: Option<&Jet>) -> Result<(Scalar, Scalar, Scalar)> {
    if phi.order() < 2 {
        return Err(Error::OrderOverflow {
            needed: 2,
            available: phi.order(),
        });
    }
    let p0 = phi.derivative_at_base(0)?;
    let p1 = phi.derivative_at_base(1)?;
    let p2 = phi.derivative_at_base(2)?;
    match omega {
        None => Ok((p0, p1, p2)),
        Some(w) if w.is_zero() => Ok((p0, p1, p2)),
        Some(w) => {
            let w0 = w.derivative_at_base(0)?;
            let w1 = w.derivative_at_base(1)?;
            let d1 = &p1 + &(&w0 * &p0);
            let d2 = &p2 + &(&(&w0 * &p1).scale(&rat(2, 1)) + &(&(&w1 + &(&w0 * &w0)) * &p0));
            Ok((p0, d1, d2))
        }
    }
}

/// Exact `beta_0` and `beta_2` at one boundary component, times its volume.
pub fn beta_base(d: &BoundaryJetData, bc: BoundaryCondition, ell: usize) -> Result<ContentCoefficient> {
    if ell != 0 && ell != 2 {
        return Err(Error::InvalidArgument(format!(
            "base evaluator covers l = 0, 2 only, got {ell}"
        )));
    }
    let dual = d.omega.as_ref().map(Jet::neg);
    let (a0, a1, a2) = covariant_normal(&d.phi1, d.omega.as_ref())?;
    let (b0, b1, b2) = covariant_normal(&d.phi2, dual.as_ref())?;
    let c = two_over_sqrt_pi();
    let mut flags = Vec::new();
    let local = match (bc, ell) {
        (BoundaryCondition::Dirichlet, 0) => -(&c * &(&a0 * &b0)),
        (BoundaryCondition::Robin, 0) => Scalar::zero(),
        (BoundaryCondition::Dirichlet, _) => {
            let e0 = d.e.derivative_at_base(0)?;
            let rho0 = d.rho_mm.derivative_at_base(0)?;
            let two_thirds = rat(2, 3);
            let mut inner = (&(&a2 * &b0) + &(&a0 * &b2)).scale(&two_thirds);
            inner += &a0 * &b0 * &e0;
            inner += -d.tangential_gradient_product.clone();
            inner += -(&d.l_trace * &(&(&a1 * &b0) + &(&a0 * &b1))).scale(&two_thirds);
            let geo = (&d.l_trace * &d.l_trace).scale(&rat(1, 12))
                + d.l_square_trace.scale(&rat(-1, 6))
                + rho0.scale(&rat(-1, 6));
            inner += &geo * &(&a0 * &b0);
            -(&c * &inner)
        }
        (BoundaryCondition::Robin, _) => {
            flags.push(ROBIN_FIRST_DERIVATIVE_READING.to_string());
            let f1 = &a1 + &(&d.s * &a0);
            let f2 = &b1 + &(&d.s * &b0);
            (&c * &(&f1 * &f2)).scale(&rat(2, 3))
        }
    };
    Ok(ContentCoefficient::exact_value(
        ell,
        &local * &d.boundary_volume,
        flags,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::numerics::int;
    use crate::Rational;

    fn one(order: usize) -> Jet {
        Jet::constant(Rational::zero(), Scalar::one(), order)
    }

    #[test]
    fn spec_values() {
        let d = BoundaryJetData::new(one(4), one(4));
        let b0 = beta_base(&d, BoundaryCondition::Dirichlet, 0).unwrap();
        assert_eq!(b0.exact().unwrap(), &Scalar::term(-1, int(-2)));
        assert!(beta_base(&d, BoundaryCondition::Robin, 0).unwrap().exact().unwrap().is_zero());

        let e = Jet::constant(Rational::zero(), Scalar::from_int(5), 4);
        let d = BoundaryJetData::new(one(4), one(4)).with_e(e);
        let b2 = beta_base(&d, BoundaryCondition::Dirichlet, 2).unwrap();
        assert_eq!(b2.exact().unwrap(), &Scalar::term(-1, int(-10)));

        let d = BoundaryJetData::new(one(4), one(4)).with_s(Scalar::from_int(3));
        let b2 = beta_base(&d, BoundaryCondition::Robin, 2).unwrap();
        assert_eq!(b2.exact().unwrap(), &Scalar::term(-1, int(12)));
        assert_eq!(b2.flags.len(), 1);
        assert!(beta_base(&d, BoundaryCondition::Robin, 4).is_err());
    }
}
