//! Real trigonometric polynomials `sum_k c_k e^{i k w x}` with Gaussian-rational
//! coefficients, closed under the operations the symbol recursion needs.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::numerics::{factorial_q, int, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigPoly {
    omega: Rational,
    /// frequency -> (real part, imaginary part)
    coeffs: BTreeMap<i64, (Rational, Rational)>,
}

impl TrigPoly {
    pub fn zero(omega: Rational) -> Self {
        TrigPoly {
            omega,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(omega: Rational, c: Rational) -> Self {
        let mut p = TrigPoly::zero(omega);
        p.insert(0, (c, Rational::zero()));
        p
    }

    /// `amp * cos(k w x)`.
    pub fn cos(omega: Rational, k: i64, amp: Rational) -> Self {
        if k == 0 {
            return TrigPoly::constant(omega, amp);
        }
        let half = amp / int(2);
        let mut p = TrigPoly::zero(omega);
        p.insert(k, (half.clone(), Rational::zero()));
        p.insert(-k, (half, Rational::zero()));
        p
    }

    /// `amp * sin(k w x)`.
    pub fn sin(omega: Rational, k: i64, amp: Rational) -> Self {
        if k == 0 {
            return TrigPoly::zero(omega);
        }
        let half = amp / int(2);
        let mut p = TrigPoly::zero(omega);
        // sin u = (e^{iu} - e^{-iu}) / (2i)
        p.insert(k, (Rational::zero(), -half.clone()));
        p.insert(-k, (Rational::zero(), half));
        p
    }

    fn insert(&mut self, k: i64, c: (Rational, Rational)) {
        let e = self
            .coeffs
            .entry(k)
            .or_insert((Rational::zero(), Rational::zero()));
        e.0 += c.0;
        e.1 += c.1;
        if e.0.is_zero() && e.1.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn omega(&self) -> &Rational {
        &self.omega
    }

    /// Period `2 pi / w` as an exact scalar.
    pub fn period(&self) -> Scalar {
        Scalar::term(2, int(2) / &self.omega)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&k| k == 0)
    }

    pub fn mean(&self) -> Rational {
        self.coeffs
            .get(&0)
            .map(|c| c.0.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn max_frequency(&self) -> i64 {
        self.coeffs.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    fn check(&self, other: &TrigPoly) -> Result<()> {
        if self.omega != other.omega {
            return Err(Error::InvalidArgument(format!(
                "frequencies differ ({} vs {})",
                self.omega, other.omega
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TrigPoly) -> Result<TrigPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.insert(*k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TrigPoly) -> Result<TrigPoly> {
        self.add(&other.scale_q(&-Rational::one()))
    }

    pub fn mul(&self, other: &TrigPoly) -> Result<TrigPoly> {
        self.check(other)?;
        let mut out = TrigPoly::zero(self.omega.clone());
        for (k1, (a, b)) in &self.coeffs {
            for (k2, (c, d)) in &other.coeffs {
                out.insert(k1 + k2, (a * c - b * d, a * d + b * c));
            }
        }
        Ok(out)
    }

    pub fn scale_q(&self, q: &Rational) -> TrigPoly {
        let mut out = TrigPoly::zero(self.omega.clone());
        if q.is_zero() {
            return out;
        }
        for (k, (a, b)) in &self.coeffs {
            out.coeffs.insert(*k, (a * q, b * q));
        }
        out
    }

    pub fn derivative(&self) -> TrigPoly {
        let mut out = TrigPoly::zero(self.omega.clone());
        for (k, (a, b)) in &self.coeffs {
            if *k == 0 {
                continue;
            }
            // (a + ib) * i k w = -b k w + i a k w
            let f = int(*k) * &self.omega;
            out.coeffs.insert(*k, (-(b * &f), a * &f));
        }
        out
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let w = num_traits::ToPrimitive::to_f64(&self.omega).unwrap_or(f64::NAN);
        self.coeffs
            .iter()
            .map(|(k, (a, b))| {
                let u = *k as f64 * w * x;
                let (a, b) = (
                    num_traits::ToPrimitive::to_f64(a).unwrap_or(f64::NAN),
                    num_traits::ToPrimitive::to_f64(b).unwrap_or(f64::NAN),
                );
                a * u.cos() - b * u.sin()
            })
            .sum()
    }

    /// Taylor jet at `x = 0`.
    pub fn to_jet(&self, order: usize) -> Jet {
        let mut out = vec![Rational::zero(); order + 1];
        for (k, (a, b)) in &self.coeffs {
            // (a + ib) (i k w)^n / n!
            let kw = int(*k) * &self.omega;
            let mut p = Rational::one();
            for (n, slot) in out.iter_mut().enumerate() {
                let v = match n % 4 {
                    0 => a.clone(),
                    1 => -b.clone(),
                    2 => -a.clone(),
                    _ => b.clone(),
                };
                *slot += v * &p / factorial_q(n as u64);
                p *= &kw;
            }
        }
        Jet::from_rationals(Rational::zero(), out)
    }

    pub fn is_positive_constant(&self) -> bool {
        self.is_constant() && self.mean().is_positive()
    }
}
