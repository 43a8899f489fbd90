//! Heat content of `-d^2` on the half-line `r >= 0` by the method of images.
//!
//! With `G_t(z) = (4 pi t)^{-1/2} e^{-z^2/4t}`, the boundary part of
//! `int int phi1(x) phi2(y) (G_t(x-y) -+ G_t(x+y))` comes from
//! `int int x^i y^j G_t(x+y) = i! j! 2^l Gamma(l/2+1) t^{(l+1)/2} / (sqrt(pi) (l+1)!)`
//! with `l = i + j`; the free term contributes the same integral with sign
//! `-(-1)^i` after reflecting `phi1` across the boundary.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::numerics::{factorial_q, int, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageBc {
    Dirichlet,
    Neumann,
}

/// `Gamma(l/2 + 1) / sqrt(pi)` as an exact scalar.
fn gamma_half_over_sqrt_pi(ell: usize) -> Scalar {
    if ell.is_multiple_of(2) {
        Scalar::term(-1, factorial_q(ell as u64 / 2))
    } else {
        // Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!) with n = (l+1)/2
        let n = (ell as u64).div_ceil(2);
        let q = factorial_q(2 * n) / (num_traits::pow(int(4), n as usize) * factorial_q(n));
        Scalar::from_rational(q)
    }
}

/// Exact `beta_l` (any `l >= 0`) for `D = -d^2` on the half-line.
pub fn image_beta(phi1: &Jet, phi2: &Jet, bc: ImageBc, ell: usize) -> Result<Scalar> {
    if phi1.order() < ell || phi2.order() < ell {
        return Err(Error::OrderOverflow {
            needed: ell,
            available: phi1.order().min(phi2.order()),
        });
    }
    if !phi1.base().is_zero() || !phi2.base().is_zero() {
        return Err(Error::InvalidArgument("jets must be based at the boundary r = 0".into()));
    }
    let common = gamma_half_over_sqrt_pi(ell)
        .scale(&(num_traits::pow(int(2), ell) / factorial_q(ell as u64 + 1)));
    let mut acc = Scalar::zero();
    for i in 0..=ell {
        let j = ell - i;
        let parity: i64 = if i % 2 == 0 { 1 } else { -1 };
        let w: Rational = match bc {
            ImageBc::Dirichlet => int(-(1 + parity)),
            ImageBc::Neumann => int(1 - parity),
        };
        if w.is_zero() {
            continue;
        }
        let a = phi1.derivative_at_base(i)?;
        let b = phi2.derivative_at_base(j)?;
        if a.is_zero() || b.is_zero() {
            continue;
        }
        acc += (&a * &b).scale(&w);
    }
    Ok(&acc * &common)
}
