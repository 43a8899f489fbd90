//! The factorisations `D1 = A* A`, `D2 = A A*` with `A = d_r + b` on `[0, 1]`,
//! and the warped-product data `-d_r^2 - e^{-2 alpha} d_theta^2` on `[0, 1] x S^1`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::LaplaceOp1D;
use crate::jets::Jet;
use crate::numerics::{int, Rational, Scalar};
use crate::profile::Profile;

/// Jets of the intertwined pair at one endpoint, in the coordinate `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwinedPair {
    pub d1: LaplaceOp1D,
    pub d2: LaplaceOp1D,
    /// `E1 = b' - b^2`.
    pub e1: Jet,
    /// `E2 = -b' - b^2`.
    pub e2: Jet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwineData {
    pub b: Profile,
    /// Jets based at `x = 0`.
    pub at_0: IntertwinedPair,
    /// Jets based at `x = 1`.
    pub at_1: IntertwinedPair,
    /// Robin parameter of `D1` at `x = 0`: `A phi = 0` reads `phi^{(1)} + b phi = 0`.
    pub s_at_0: Scalar,
    /// At `x = 1` the inward derivative is `-d_x`, so `S = -b(1)`.
    pub s_at_1: Scalar,
}

fn pair(b: &Jet) -> Result<IntertwinedPair> {
    let db = b.derivative(1)?;
    let b2 = b.truncate(db.order()).mul(&b.truncate(db.order()))?;
    let e1 = db.sub(&b2)?;
    let e2 = db.neg().sub(&b2)?;
    Ok(IntertwinedPair {
        d1: LaplaceOp1D::schrodinger(e1.clone()),
        d2: LaplaceOp1D::schrodinger(e2.clone()),
        e1,
        e2,
    })
}

/// Builds `D1`, `D2` with jets of order `order` (one derivative of `b` is used).
pub fn intertwine_build(b: &Profile, order: usize) -> Result<IntertwineData> {
    let j0 = b.jet_at(&Rational::zero(), order + 1)?;
    let j1 = b.jet_at(&int(1), order + 1)?;
    Ok(IntertwineData {
        b: b.clone(),
        s_at_0: j0.constant_term().clone(),
        s_at_1: -j1.constant_term().clone(),
        at_0: pair(&j0)?,
        at_1: pair(&j1)?,
    })
}

/// Separable family on `[0, 1] x S^1` with metric `dr^2 + e^{2 alpha} dtheta^2`,
/// paired against the weight `e^{-alpha}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTrickData {
    pub alpha: Profile,
    /// Exponent sign of the weight `e^{sign alpha}`; always `-1`.
    pub weight_sign: i8,
}

impl ProductTrickData {
    pub fn weight(&self, r: f64) -> f64 {
        (f64::from(self.weight_sign) * self.alpha.eval(r)).exp()
    }

    /// Potential of Fourier mode `k`: `-d_r^2 + k^2 e^{-2 alpha}`.
    pub fn mode_potential(&self, k: i64, r: f64) -> f64 {
        let k = k as f64;
        k * k * (-2.0 * self.alpha.eval(r)).exp()
    }

    /// Mode `k` as an exact operator jet at `x = 0`: `B = -k^2 e^{-2 alpha}`.
    pub fn mode_operator_at_0(&self, k: i64, order: usize) -> Result<LaplaceOp1D> {
        let a = self.alpha.jet_at(&Rational::zero(), order)?;
        let w = a.scale_q(&int(-2)).exp()?;
        Ok(LaplaceOp1D::schrodinger(w.scale_q(&int(-k * k))))
    }
}

/// Validates `alpha(0) = alpha(1) = 0` exactly and packages the family.
pub fn product_trick_data(alpha: &Profile) -> Result<ProductTrickData> {
    for end in [Rational::zero(), int(1)] {
        let v = match alpha.jet_at(&end, 0) {
            Ok(j) => j.constant_term().clone(),
            Err(_) => {
                return Err(Error::InvalidArgument(format!(
                    "alpha({end}) is not exactly zero"
                )))
            }
        };
        if !v.is_zero() {
            return Err(Error::InvalidArgument(format!("alpha({end}) = {v}, expected 0")));
        }
    }
    Ok(ProductTrickData {
        alpha: alpha.clone(),
        weight_sign: -1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::bochner_transform;
    use crate::numerics::rat;

    #[test]
    fn zero_b() {
        let d = intertwine_build(&Profile::zero(), 4).unwrap();
        assert!(d.at_0.e1.is_zero() && d.at_0.e2.is_zero());
        assert!(d.s_at_0.is_zero() && d.s_at_1.is_zero());
        assert_eq!(d.at_0.d1, d.at_0.d2);
    }

    #[test]
    fn linear_b() {
        let d = intertwine_build(&Profile::polynomial(vec![int(0), int(1)]), 4).unwrap();
        let e1 = Jet::from_rationals(Rational::zero(), vec![int(1), int(0), int(-1), int(0), int(0)]);
        let e2 = Jet::from_rationals(Rational::zero(), vec![int(-1), int(0), int(-1), int(0), int(0)]);
        assert_eq!(d.at_0.e1, e1);
        assert_eq!(d.at_0.e2, e2);
        assert_eq!(d.s_at_1, Scalar::from_int(-1));
        for p in [&d.at_0, &d.at_1] {
            assert_eq!(bochner_transform(&p.d1).unwrap().e, p.e1.truncate(2));
            assert_eq!(bochner_transform(&p.d2).unwrap().e, p.e2.truncate(2));
        }
    }

    #[test]
    fn product_trick_endpoints() {
        let sin2 = Profile::SinSquared {
            amplitude: rat(1, 4),
            frequency: int(1),
        };
        let p = product_trick_data(&sin2).unwrap();
        assert_eq!(p.weight_sign, -1);
        assert!((p.weight(0.5) - (-0.25f64).exp()).abs() < 1e-15);
        assert!(p.mode_potential(0, 0.3).abs() < 1e-300);
        assert!(p.mode_operator_at_0(0, 4).unwrap().b.is_zero());
        assert!(product_trick_data(&Profile::bubble()).is_ok());
        assert!(product_trick_data(&Profile::polynomial(vec![int(0), int(1)])).is_err());
        let bad = Profile::SinSquared {
            amplitude: int(1),
            frequency: rat(1, 2),
        };
        assert!(product_trick_data(&bad).is_err());
    }
}
