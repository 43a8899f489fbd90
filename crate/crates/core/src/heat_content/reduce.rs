//! `beta_l(phi1, phi2) = 2/(l+1) beta_{l-2}(phi1'' + E phi1, phi2)` whenever the
//! boundary operator annihilates `phi1`, iterated down to `l = 2`.


use crate::error::{Error, Result};
use crate::numerics::{rat, Scalar};

use super::base::beta_base;
use super::{check_even, BoundaryCondition, BoundaryJetData, ContentCoefficient};

fn boundary_value(d: &BoundaryJetData, bc: BoundaryCondition) -> Result<Scalar> {
    let p0 = d.phi1.derivative_at_base(0)?;
    Ok(match bc {
        BoundaryCondition::Dirichlet => p0,
        BoundaryCondition::Robin => &d.phi1.derivative_at_base(1)? + &(&d.s * &p0),
    })
}

/// Exact `beta_l` for `l >= 0` even on one boundary point of a one-dimensional
/// self-adjoint operator `-(d^2 + E)`.
pub fn beta_reduce(d: &BoundaryJetData, bc: BoundaryCondition, ell: usize) -> Result<ContentCoefficient> {
    check_even(ell, 0)?;
    if ell <= 2 {
        return beta_base(d, bc, ell);
    }
    if !d.is_one_dimensional() {
        return Err(Error::Unsupported(
            "reduction needs one-dimensional data in the self-adjoint gauge".into(),
        ));
    }
    if d.phi1.order() < ell {
        return Err(Error::OrderOverflow {
            needed: ell,
            available: d.phi1.order(),
        });
    }
    let mut cur = d.clone();
    let mut factor = rat(1, 1);
    let mut l = ell;
    let mut k = 0;
    while l > 2 {
        let v = boundary_value(&cur, bc)?;
        if !v.is_zero() {
            return Err(Error::Admissibility {
                k,
                value: v.to_string(),
            });
        }
        // -D phi1 = phi1'' + E phi1
        let next = cur.phi1.derivative(2)?.add(&cur.phi1.mul(&cur.e)?)?;
        cur.phi1 = next;
        factor *= rat(2, l as i64 + 1);
        l -= 2;
        k += 1;
    }
    let base = beta_base(&cur, bc, 2)?;
    Ok(ContentCoefficient::exact_value(
        ell,
        base.exact()?.scale(&factor),
        base.flags,
    ))
}

/// Sum over both boundary points of an interval, each given in its inward coordinate.
pub fn interval_beta_reduce(
    near: &BoundaryJetData,
    far: &BoundaryJetData,
    bc: BoundaryCondition,
    ell: usize,
) -> Result<ContentCoefficient> {
    let a = beta_reduce(near, bc, ell)?;
    let b = beta_reduce(far, bc, ell)?;
    let mut flags = a.flags.clone();
    for f in &b.flags {
        if !flags.contains(f) {
            flags.push(f.clone());
        }
    }
    Ok(ContentCoefficient::exact_value(
        ell,
        a.exact()? + b.exact()?,
        flags,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::heat_content::xi;
    use crate::numerics::factorial_q;
    use crate::{Jet, Rational};

    fn mono(k: usize, order: usize) -> Jet {
        Jet::monomial(
            Rational::zero(),
            k,
            Scalar::from_rational(factorial_q(k as u64).recip()),
            order,
        )
    }

    #[test]
    fn monomials_give_xi() {
        for k in 2..=6 {
            let l = 2 * k;
            let d = BoundaryJetData::new(mono(l, l + 2), mono(0, l + 2));
            let b = beta_reduce(&d, BoundaryCondition::Dirichlet, l).unwrap();
            assert_eq!(b.exact().unwrap(), &xi(l).unwrap());
        }
    }

    #[test]
    fn admissibility_error() {
        let d = BoundaryJetData::new(mono(0, 6), mono(0, 6));
        match beta_reduce(&d, BoundaryCondition::Dirichlet, 4) {
            Err(Error::Admissibility { k, .. }) => assert_eq!(k, 0),
            other => panic!("unexpected {other:?}"),
        }
    }
}
