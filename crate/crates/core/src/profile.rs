//! Analytic functions on `[0, 1]` that have exact jets at both endpoints and
//! cheap binary64 evaluation for the numerical oracle.

use std::f64::consts::PI;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::numerics::{factorial_q, int, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Profile {
    /// `sum_k c_k r^k`.
    Polynomial(Vec<Rational>),
    /// `amplitude * sin^2(frequency * pi * r)`.
    SinSquared {
        amplitude: Rational,
        frequency: Rational,
    },
}

fn f64_of(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

impl Profile {
    pub fn zero() -> Self {
        Profile::Polynomial(vec![Rational::zero()])
    }

    pub fn polynomial(coeffs: Vec<Rational>) -> Self {
        Profile::Polynomial(coeffs)
    }

    /// `r (1 - r)`.
    pub fn bubble() -> Self {
        Profile::Polynomial(vec![int(0), int(1), int(-1)])
    }

    /// `k`-th derivative at `r` in binary64.
    pub fn derivative_f64(&self, k: usize, r: f64) -> f64 {
        match self {
            Profile::Polynomial(c) => {
                // Horner over the coefficients of the k-th derivative
                let mut h = 0.0;
                for (j, cj) in c.iter().enumerate().skip(k).rev() {
                    let f: f64 = (0..k).map(|t| (j - t) as f64).product();
                    h = h * r + f * f64_of(cj);
                }
                h
            }
            Profile::SinSquared {
                amplitude,
                frequency,
            } => {
                // a (1 - cos(2 w r)) / 2
                let a = f64_of(amplitude);
                let w2 = 2.0 * f64_of(frequency) * PI;
                if k == 0 {
                    return a * (1.0 - (w2 * r).cos()) / 2.0;
                }
                // d^k cos(w2 r) = w2^k cos(w2 r + k pi / 2)
                -a / 2.0 * w2.powi(k as i32) * (w2 * r + k as f64 * PI / 2.0).cos()
            }
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.derivative_f64(0, r)
    }

    /// Exact Taylor jet at `base`.
    pub fn jet_at(&self, base: &Rational, order: usize) -> Result<Jet> {
        match self {
            Profile::Polynomial(c) => {
                let n = order.max(c.len().saturating_sub(1));
                let mut coeffs = c.clone();
                coeffs.resize(n + 1, Rational::zero());
                let j = Jet::from_rationals(Rational::zero(), coeffs).recenter_polynomial(base);
                Ok(j.truncate(order))
            }
            Profile::SinSquared {
                amplitude,
                frequency,
            } => {
                // theta = 2 f pi base must be a multiple of pi / 2
                let quarter_turns = int(4) * frequency * base;
                if !quarter_turns.is_integer() {
                    return Err(Error::Transcendental(
                        "sin^2 profile",
                        format!("phase 2*{frequency}*pi*{base}"),
                    ));
                }
                let q: num_bigint::BigInt = quarter_turns.to_integer() % 4;
                let q: num_bigint::BigInt = (q + 4) % 4;
                let q = q.to_i64().unwrap_or(0);
                let (cos_t, sin_t) = match q {
                    0 => (1, 0),
                    1 => (0, 1),
                    2 => (-1, 0),
                    _ => (0, -1),
                };
                // cos(theta + u) = cos_t cos u - sin_t sin u, u = 2 f pi s
                let w = int(2) * frequency;
                let mut coeffs = vec![Scalar::zero(); order + 1];
                for (k, slot) in coeffs.iter_mut().enumerate() {
                    let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
                    let mag = w.pow(k as i32) / factorial_q(k as u64);
                    let trig = if k % 2 == 0 { cos_t } else { -sin_t };
                    if trig == 0 {
                        continue;
                    }
                    let c = mag * int(sign * trig);
                    // pi^k = pi^{2k / 2}
                    *slot = Scalar::term(2 * k as i32, c);
                }
                // a (1 - cos) / 2
                let half = amplitude / int(2);
                let cos_jet = Jet::new(base.clone(), coeffs);
                Ok(cos_jet
                    .neg()
                    .add_scalar(&Scalar::one())
                    .scale_q(&half))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn polynomial_values_and_jets() {
        let p = Profile::bubble();
        assert!((p.eval(0.25) - 0.1875).abs() < 1e-15);
        assert!((p.derivative_f64(1, 0.25) - 0.5).abs() < 1e-15);
        assert!((p.derivative_f64(2, 0.7) + 2.0).abs() < 1e-15);
        let j = p.jet_at(&int(1), 3).unwrap();
        assert_eq!(j.coeff(0), Scalar::zero());
        assert_eq!(j.coeff(1), Scalar::from_int(-1));
        assert_eq!(j.coeff(2), Scalar::from_int(-1));
    }

    #[test]
    fn sin_squared_jets() {
        let p = Profile::SinSquared {
            amplitude: rat(1, 4),
            frequency: int(1),
        };
        let j0 = p.jet_at(&int(0), 4).unwrap();
        assert!(j0.constant_term().is_zero());
        // sin^2(pi r)/4 = pi^2 r^2 / 4 - pi^4 r^4 / 12 + ...
        assert_eq!(j0.coeff(2), Scalar::term(4, rat(1, 4)));
        assert_eq!(j0.coeff(4), Scalar::term(8, rat(-1, 12)));
        assert_eq!(p.jet_at(&int(1), 4).unwrap().coeffs(), j0.coeffs());
        let x = 0.3;
        let d2 = p.derivative_f64(2, x);
        let expect = 0.25 * 2.0 * PI * PI * (2.0 * PI * x).cos();
        assert!((d2 - expect).abs() < 1e-12);
        assert!(Profile::SinSquared {
            amplitude: int(1),
            frequency: rat(1, 3)
        }
        .jet_at(&int(1), 2)
        .is_err());
    }
}
