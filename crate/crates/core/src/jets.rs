//! Truncated Taylor series in one variable with exact [`Scalar`] coefficients.
//!
//! `Jet { base, coeffs }` represents `sum_k coeffs[k] * (x - base)^k` modulo
//! `(x - base)^(order + 1)`. Binary operations return the smaller of the input
//! orders, so precision is never claimed beyond what both inputs support.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::{factorial_q, int, rational_sqrt, Rational, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Jet {
    base: Rational,
    coeffs: Vec<Scalar>,
}

impl Jet {
    /// A jet from its Taylor coefficients; the order is `coeffs.len() - 1`.
    pub fn new(base: Rational, coeffs: Vec<Scalar>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        Jet { base, coeffs }
    }

    pub fn from_rationals(base: Rational, coeffs: Vec<Rational>) -> Self {
        Jet::new(base, coeffs.into_iter().map(Scalar::from_rational).collect())
    }

    pub fn zero(base: Rational, order: usize) -> Self {
        Jet::new(base, vec![Scalar::zero(); order + 1])
    }

    pub fn constant(base: Rational, value: Scalar, order: usize) -> Self {
        let mut j = Jet::zero(base, order);
        j.coeffs[0] = value;
        j
    }

    /// The coordinate function `x`.
    pub fn variable(base: Rational, order: usize) -> Self {
        let mut j = Jet::constant(base.clone(), Scalar::from_rational(base), order);
        if order >= 1 {
            j.coeffs[1] = Scalar::one();
        }
        j
    }

    /// `c * (x - base)^k`.
    pub fn monomial(base: Rational, k: usize, c: Scalar, order: usize) -> Self {
        let mut j = Jet::zero(base, order);
        if k <= order {
            j.coeffs[k] = c;
        }
        j
    }

    /// A jet from derivative values `f^(k)(base)`.
    pub fn from_derivatives(base: Rational, derivs: Vec<Scalar>) -> Self {
        let coeffs = derivs
            .into_iter()
            .enumerate()
            .map(|(k, d)| d.scale(&factorial_q(k as u64).recip()))
            .collect();
        Jet::new(base, coeffs)
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `(x - base)^k`; zero above the order.
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> &Scalar {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Jet {
        let n = order.min(self.order());
        Jet::new(self.base.clone(), self.coeffs[..=n].to_vec())
    }

    /// Pads with zeros. Only valid when the caller knows the extra coefficients
    /// vanish, e.g. for polynomials.
    pub fn extend_exact(&self, order: usize) -> Jet {
        let mut c = self.coeffs.clone();
        c.resize(order.max(self.order()) + 1, Scalar::zero());
        Jet::new(self.base.clone(), c)
    }

    fn check_base(&self, other: &Jet) -> Result<()> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(Error::BaseMismatch(
                self.base.to_string(),
                other.base.to_string(),
            ))
        }
    }

    pub fn add(&self, other: &Jet) -> Result<Jet> {
        self.check_base(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect();
        Ok(Jet::new(self.base.clone(), coeffs))
    }

    pub fn sub(&self, other: &Jet) -> Result<Jet> {
        self.check_base(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect();
        Ok(Jet::new(self.base.clone(), coeffs))
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Jet) -> Result<Jet> {
        self.check_base(other)?;
        let n = self.order().min(other.order());
        let mut out = vec![Scalar::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Jet::new(self.base.clone(), out))
    }

    pub fn scale(&self, c: &Scalar) -> Jet {
        Jet::new(
            self.base.clone(),
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    pub fn scale_q(&self, q: &Rational) -> Jet {
        Jet::new(
            self.base.clone(),
            self.coeffs.iter().map(|a| a.scale(q)).collect(),
        )
    }

    pub fn neg(&self) -> Jet {
        Jet::new(self.base.clone(), self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn add_scalar(&self, c: &Scalar) -> Jet {
        let mut j = self.clone();
        j.coeffs[0] = &j.coeffs[0] + c;
        j
    }

    pub fn powi(&self, e: u32) -> Result<Jet> {
        let mut result = Jet::constant(self.base.clone(), Scalar::one(), self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// `outer(inner(x))`. The inner constant term must equal the outer base point.
    pub fn compose(outer: &Jet, inner: &Jet) -> Result<Jet> {
        let c0 = inner.constant_term();
        if c0 != &Scalar::from_rational(outer.base.clone()) {
            return Err(Error::BaseMismatch(outer.base.to_string(), c0.to_string()));
        }
        let n = outer.order().min(inner.order());
        let mut delta = inner.truncate(n);
        delta.coeffs[0] = Scalar::zero();
        let mut acc = Jet::constant(inner.base.clone(), outer.coeff(n), n);
        for k in (0..n).rev() {
            acc = acc.mul(&delta)?.add_scalar(&outer.coeffs[k]);
        }
        Ok(acc)
    }

    fn require_zero_constant(&self, what: &'static str) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::Transcendental(what, self.coeffs[0].to_string()))
        }
    }

    /// `exp(a)`; the constant term must be zero so the result stays exact.
    pub fn exp(&self) -> Result<Jet> {
        self.require_zero_constant("exp")?;
        let n = self.order();
        let mut y = vec![Scalar::zero(); n + 1];
        y[0] = Scalar::one();
        for k in 1..=n {
            let mut s = Scalar::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += (&self.coeffs[j] * &y[k - j]).scale(&int(j as i64));
                }
            }
            y[k] = s.scale(&Rational::new(1.into(), (k as i64).into()));
        }
        Ok(Jet::new(self.base.clone(), y))
    }

    /// `(sin(a), cos(a))` for a jet with zero constant term.
    pub fn sin_cos(&self) -> Result<(Jet, Jet)> {
        self.require_zero_constant("sin/cos")?;
        let n = self.order();
        let mut s = vec![Scalar::zero(); n + 1];
        let mut c = vec![Scalar::zero(); n + 1];
        c[0] = Scalar::one();
        for k in 1..=n {
            let mut ds = Scalar::zero();
            let mut dc = Scalar::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                let ja = self.coeffs[j].scale(&int(j as i64));
                ds += &ja * &c[k - j];
                dc += &ja * &s[k - j];
            }
            let inv_k = Rational::new(1.into(), (k as i64).into());
            s[k] = ds.scale(&inv_k);
            c[k] = (-dc).scale(&inv_k);
        }
        Ok((Jet::new(self.base.clone(), s), Jet::new(self.base.clone(), c)))
    }

    pub fn sin(&self) -> Result<Jet> {
        Ok(self.sin_cos()?.0)
    }

    pub fn cos(&self) -> Result<Jet> {
        Ok(self.sin_cos()?.1)
    }

    pub fn reciprocal(&self) -> Result<Jet> {
        if self.coeffs[0].is_zero() {
            return Err(Error::Pole("reciprocal of a jet vanishing at its base point"));
        }
        let inv0 = self.coeffs[0].inverse()?;
        let n = self.order();
        let mut y = vec![Scalar::zero(); n + 1];
        y[0] = inv0.clone();
        for k in 1..=n {
            let mut s = Scalar::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += &self.coeffs[j] * &y[k - j];
                }
            }
            y[k] = -(&s * &inv0);
        }
        Ok(Jet::new(self.base.clone(), y))
    }

    pub fn div(&self, other: &Jet) -> Result<Jet> {
        self.mul(&other.reciprocal()?)
    }

    /// Square root; the constant term must be a positive rational square.
    pub fn sqrt(&self) -> Result<Jet> {
        let a0 = self.coeffs[0]
            .as_rational()
            .ok_or_else(|| Error::Transcendental("sqrt", self.coeffs[0].to_string()))?;
        if a0 <= Rational::zero() {
            return Err(Error::NonPositive(format!("sqrt of constant term {a0}")));
        }
        let r0 = rational_sqrt(&a0).ok_or_else(|| Error::Transcendental("sqrt", a0.to_string()))?;
        let inv_2r0 = (int(2) * &r0).recip();
        let n = self.order();
        let mut y = vec![Scalar::zero(); n + 1];
        y[0] = Scalar::from_rational(r0);
        for k in 1..=n {
            let mut s = self.coeffs[k].clone();
            for j in 1..k {
                s = s - &y[j] * &y[k - j];
            }
            y[k] = s.scale(&inv_2r0);
        }
        Ok(Jet::new(self.base.clone(), y))
    }

    /// `a^p` for rational `p`. Integer exponents go through products and the
    /// reciprocal; fractional exponents need the constant term to be 1.
    pub fn power(&self, p: &Rational) -> Result<Jet> {
        if p.is_integer() {
            let e: i64 = p.to_integer().try_into().map_err(|_| {
                Error::InvalidArgument(format!("exponent {p} too large"))
            })?;
            let e_abs = e.unsigned_abs() as u32;
            return if e >= 0 {
                self.powi(e_abs)
            } else {
                self.reciprocal()?.powi(e_abs)
            };
        }
        if self.coeffs[0] != Scalar::one() {
            return Err(Error::Transcendental("fractional power", self.coeffs[0].to_string()));
        }
        // a y' = p a' y, with a_0 = 1.
        let n = self.order();
        let mut y = vec![Scalar::zero(); n + 1];
        y[0] = Scalar::one();
        for k in 1..=n {
            let mut s = Scalar::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                let w = p * int(j as i64) - int((k - j) as i64);
                s += (&self.coeffs[j] * &y[k - j]).scale(&w);
            }
            y[k] = s.scale(&Rational::new(1.into(), (k as i64).into()));
        }
        Ok(Jet::new(self.base.clone(), y))
    }

    /// `d^k/dx^k`; the order drops by `k`.
    pub fn derivative(&self, k: usize) -> Result<Jet> {
        if k > self.order() {
            return Err(Error::OrderOverflow {
                needed: k,
                available: self.order(),
            });
        }
        let coeffs = (0..=self.order() - k)
            .map(|j| {
                let f = factorial_q((j + k) as u64) / factorial_q(j as u64);
                self.coeffs[j + k].scale(&f)
            })
            .collect();
        Ok(Jet::new(self.base.clone(), coeffs))
    }

    /// `f^(k)(base) = k! * c_k`.
    pub fn derivative_at_base(&self, k: usize) -> Result<Scalar> {
        if k > self.order() {
            return Err(Error::OrderOverflow {
                needed: k,
                available: self.order(),
            });
        }
        Ok(self.coeffs[k].scale(&factorial_q(k as u64)))
    }

    /// Antiderivative vanishing at the base point; the order grows by one.
    pub fn integral(&self) -> Jet {
        let mut c = vec![Scalar::zero()];
        for (k, a) in self.coeffs.iter().enumerate() {
            c.push(a.scale(&Rational::new(1.into(), ((k + 1) as i64).into())));
        }
        Jet::new(self.base.clone(), c)
    }

    /// `x - base -> -(x - base)`: the jet of `f(2 base - x)`.
    pub fn reflect(&self) -> Jet {
        Jet::new(
            self.base.clone(),
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| if k % 2 == 1 { -a } else { a.clone() })
                .collect(),
        )
    }

    /// Jet of `x -> f(base + (x - base)/c)`: coefficient `k` picks up `c^-k`.
    pub fn stretch(&self, c: &Rational) -> Jet {
        let inv = c.recip();
        let mut f = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.scale(&f));
            f *= &inv;
        }
        Jet::new(self.base.clone(), out)
    }

    /// Re-expands the jet, read as an exact polynomial, around `new_base`.
    pub fn recenter_polynomial(&self, new_base: &Rational) -> Jet {
        let delta = new_base - &self.base;
        let n = self.order();
        let mut out = vec![Scalar::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // (delta + y)^k = sum_j C(k, j) delta^{k-j} y^j
            let mut binom = Rational::one();
            for (j, slot) in out.iter_mut().enumerate().take(k + 1) {
                let p = num_traits::pow(delta.clone(), k - j);
                *slot += c.scale(&(&binom * p));
                binom = binom * int((k - j) as i64) / int(j as i64 + 1);
            }
        }
        Jet::new(new_base.clone(), out)
    }

    /// Evaluate the truncated polynomial at `x` in binary64.
    pub fn eval_f64(&self, x: f64) -> Result<f64> {
        let b: f64 = num_traits::ToPrimitive::to_f64(&self.base).ok_or(Error::Overflow)?;
        let d = x - b;
        let mut acc = 0.0;
        for a in self.coeffs.iter().rev() {
            acc = acc * d + a.to_f64()?;
        }
        Ok(acc)
    }

    pub fn to_f64_coeffs(&self) -> Result<Vec<f64>> {
        self.coeffs.iter().map(Scalar::to_f64).collect()
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet@{}[", self.base)?;
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// `sum eps_nu 2^-nu f^(2 nu)` for `nu` in `start..start + eps.len()`.
pub fn signed_power_series(f: &Jet, start: usize, eps: &[i8]) -> Result<Jet> {
    let mut acc = Jet::zero(f.base().clone(), f.order());
    let mut p = f.powi(2 * start as u32)?;
    let f2 = f.mul(f)?;
    for (i, e) in eps.iter().enumerate() {
        let nu = start + i;
        let w = Rational::new(BigInt::from(*e), BigInt::from(2).pow(nu as u32));
        acc = acc.add(&p.scale_q(&w))?;
        p = p.mul(&f2)?;
    }
    Ok(acc)
}
