//! Exact scalars: finite rational combinations of half-integer powers of pi.
//!
//! A [`Scalar`] is `sum_k q_k * pi^(k/2)` with `q_k` arbitrary-precision rationals.
//! Every value in the crate lives in the span of `k in {-2, -1, 0}`, but the
//! ledger is general so Gaussian moments (`sqrt(pi)`) can be multiplied in and
//! cancelled without special cases.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `a/b` as a rational.
pub fn rat(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

pub fn int(a: i64) -> Rational {
    Rational::from_integer(BigInt::from(a))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn factorial_q(n: u64) -> Rational {
    Rational::from_integer(factorial(n))
}

/// `q^e` for a possibly negative exponent. Fails on `0^negative`.
pub fn rational_pow(q: &Rational, e: i64) -> Result<Rational> {
    if e >= 0 {
        Ok(num_traits::pow(q.clone(), e as usize))
    } else if q.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(num_traits::pow(q.recip(), (-e) as usize))
    }
}

/// Exact square root of a nonnegative rational if both parts are perfect squares.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

const SQRT_PI_DIGITS: &str = "17724538509055160272981674833411451827975";
const SQRT_PI_SCALE: u32 = 40;

fn sqrt_pi_enclosure() -> &'static (Rational, Rational) {
    static CELL: OnceLock<(Rational, Rational)> = OnceLock::new();
    CELL.get_or_init(|| {
        let n: BigInt = SQRT_PI_DIGITS.parse().expect("digits");
        let d = num_traits::pow(BigInt::from(10), SQRT_PI_SCALE as usize);
        let lo = Rational::new(n.clone(), d.clone());
        let hi = Rational::new(n + 1, d);
        (lo, hi)
    })
}

/// Rational enclosure `[lo, hi]` of `pi^(k/2)`.
fn pi_half_power_enclosure(k: i32) -> (Rational, Rational) {
    let (lo, hi) = sqrt_pi_enclosure();
    if k >= 0 {
        (
            num_traits::pow(lo.clone(), k as usize),
            num_traits::pow(hi.clone(), k as usize),
        )
    } else {
        let e = (-k) as usize;
        (
            num_traits::pow(hi.recip(), e),
            num_traits::pow(lo.recip(), e),
        )
    }
}

/// Exact element of `Q[pi^(1/2), pi^(-1/2)]`, stored as sorted `(k, q_k)` with `q_k != 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: Vec<(i32, Rational)>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Scalar::term(0, q)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(int(n))
    }

    pub fn ratio(a: i64, b: i64) -> Self {
        Scalar::from_rational(rat(a, b))
    }

    /// `q * pi^(k/2)`.
    pub fn term(k: i32, q: Rational) -> Self {
        if q.is_zero() {
            Scalar::zero()
        } else {
            Scalar { terms: vec![(k, q)] }
        }
    }

    /// `pi^(k/2)`.
    pub fn pi_half_power(k: i32) -> Self {
        Scalar::term(k, Rational::one())
    }

    pub fn inv_sqrt_pi() -> Self {
        Scalar::pi_half_power(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(i32, Rational)] {
        &self.terms
    }

    pub fn coefficient(&self, k: i32) -> Rational {
        self.terms
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, q)| q.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// The value as a rational when it has no pi content.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(0, q)] => Some(q.clone()),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    fn from_sorted(mut terms: Vec<(i32, Rational)>) -> Self {
        terms.retain(|(_, q)| !q.is_zero());
        Scalar { terms }
    }

    pub fn scale(&self, q: &Rational) -> Scalar {
        if q.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(k, c)| (*k, c * q)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse. Only single-term values are invertible inside the
    /// Laurent ring; anything else would need a rational-function field.
    pub fn inverse(&self) -> Result<Scalar> {
        match self.terms.as_slice() {
            [] => Err(Error::DivisionByZero),
            [(k, q)] => Ok(Scalar::term(-k, q.recip())),
            _ => Err(Error::NonMonomialDivisor(self.to_string())),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inverse()?)
    }

    /// Nearest binary64 value. Each term is converted with correct rounding and
    /// multiplied by a correctly rounded `pi^(k/2)`, so single-term values are
    /// within a few ulp.
    pub fn to_f64(&self) -> Result<f64> {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        let mut acc = 0.0f64;
        for (k, q) in &self.terms {
            let qf = q.to_f64().ok_or(Error::Overflow)?;
            if !qf.is_finite() {
                return Err(Error::Overflow);
            }
            let p = match *k {
                0 => 1.0,
                -1 => 1.0 / sqrt_pi,
                -2 => std::f64::consts::FRAC_1_PI,
                1 => sqrt_pi,
                2 => std::f64::consts::PI,
                k => sqrt_pi.powi(k),
            };
            acc += qf * p;
        }
        if acc.is_finite() {
            Ok(acc)
        } else {
            Err(Error::Overflow)
        }
    }

    /// Rational enclosure of the exact value.
    pub fn bounds(&self) -> (Rational, Rational) {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (k, q) in &self.terms {
            let (plo, phi) = pi_half_power_enclosure(*k);
            if q.is_positive() {
                lo += q * &plo;
                hi += q * &phi;
            } else {
                lo += q * &phi;
                hi += q * &plo;
            }
        }
        (lo, hi)
    }

    /// Exact sign. Values with several pi-powers are decided through the
    /// enclosure; pi is transcendental, so a nonzero value never straddles zero
    /// once the enclosure is tight enough, and 40 digits suffices for every
    /// magnitude produced here.
    pub fn signum(&self) -> Ordering {
        match self.terms.as_slice() {
            [] => Ordering::Equal,
            [(_, q)] => q.cmp(&Rational::zero()),
            _ => {
                let (lo, hi) = self.bounds();
                if lo.is_positive() {
                    Ordering::Greater
                } else if hi.is_negative() {
                    Ordering::Less
                } else {
                    panic!("sign of {self} not resolved by the pi enclosure")
                }
            }
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn exact_cmp(&self, other: &Scalar) -> Ordering {
        (self - other).signum()
    }

    /// JSON form `{"pi_power_terms": [{"k", "num", "den"}], "float"}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, q)| {
                json!({"k": k, "num": q.numer().to_string(), "den": q.denom().to_string()})
            })
            .collect();
        let float = self.to_f64().ok().map(round_sig);
        json!({"pi_power_terms": terms, "float": float})
    }

    pub fn from_json(v: &Value) -> Result<Scalar> {
        let bad = || Error::InvalidArgument(format!("malformed scalar json: {v}"));
        let arr = v
            .get("pi_power_terms")
            .and_then(Value::as_array)
            .ok_or_else(bad)?;
        let mut acc = Scalar::zero();
        for t in arr {
            let k = t.get("k").and_then(Value::as_i64).ok_or_else(bad)? as i32;
            let num: BigInt = t
                .get("num")
                .and_then(Value::as_str)
                .and_then(|s| s.parse().ok())
                .ok_or_else(bad)?;
            let den: BigInt = t
                .get("den")
                .and_then(Value::as_str)
                .and_then(|s| s.parse().ok())
                .ok_or_else(bad)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            acc += Scalar::term(k, Rational::new(num, den));
        }
        Ok(acc)
    }
}

/// Round to 12 significant digits so JSON output is stable across platforms.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, q)) in self.terms.iter().rev().enumerate() {
            let c = if i == 0 {
                fmt_rational(q)
            } else if q.is_negative() {
                write!(f, " - ")?;
                fmt_rational(&-q)
            } else {
                write!(f, " + ")?;
                fmt_rational(q)
            };
            match *k {
                0 => write!(f, "{c}")?,
                k if k % 2 == 0 => write!(f, "{c}·pi^({})", k / 2)?,
                k => write!(f, "{c}·pi^({k}/2)")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

fn merge(a: &[(i32, Rational)], b: &[(i32, Rational)], sign_b: bool) -> Vec<(i32, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let q = if sign_b { -&b[j].1 } else { b[j].1.clone() };
            out.push((b[j].0, q));
            j += 1;
        } else {
            let q = if sign_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
            out.push((a[i].0, q));
            i += 1;
            j += 1;
        }
    }
    out
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        Scalar::from_sorted(merge(&self.terms, &rhs.terms, false))
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        Scalar::from_sorted(merge(&self.terms, &rhs.terms, true))
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if let ([(ka, qa)], [(kb, qb)]) = (self.terms.as_slice(), rhs.terms.as_slice()) {
            return Scalar::term(ka + kb, qa * qb);
        }
        let mut acc: Vec<(i32, Rational)> = Vec::new();
        for (ka, qa) in &self.terms {
            for (kb, qb) in &rhs.terms {
                let k = ka + kb;
                let q = qa * qb;
                match acc.binary_search_by_key(&k, |(kk, _)| *kk) {
                    Ok(pos) => acc[pos].1 += q,
                    Err(pos) => acc.insert(pos, (k, q)),
                }
            }
        }
        Scalar::from_sorted(acc)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(k, q)| (*k, -q)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_terms_add() {
        let a = Scalar::inv_sqrt_pi();
        assert_eq!(&a + &a, Scalar::term(-1, int(2)));
    }

    #[test]
    fn half_powers_multiply_to_inverse_pi() {
        let a = Scalar::inv_sqrt_pi();
        assert_eq!(&a * &a, Scalar::pi_half_power(-2));
        let b = Scalar::pi_half_power(1);
        assert_eq!(&a * &b, Scalar::one());
    }

    #[test]
    fn xi2_value_and_float() {
        let xi2 = Scalar::from_int(-2) * Scalar::inv_sqrt_pi() * Scalar::ratio(2, 3);
        assert_eq!(xi2, Scalar::term(-1, rat(-4, 3)));
        let scaled = Scalar::ratio(2, 5) * &xi2;
        assert_eq!(scaled, Scalar::term(-1, rat(-8, 15)));
        let f = xi2.to_f64().unwrap();
        assert!((f - (-0.752_252_778_063_675_1)).abs() <= 4.0 * f64::EPSILON * f.abs());
    }

    #[test]
    fn small_rationals_convert_exactly() {
        assert_eq!(Scalar::ratio(1, 2).to_f64().unwrap(), 0.5);
        assert_eq!(Scalar::zero().to_f64().unwrap(), 0.0);
        assert_eq!(Scalar::ratio(-3, 8).to_f64().unwrap(), -0.375);
    }

    #[test]
    fn overflow_is_reported() {
        let huge = Scalar::from_rational(Rational::from_integer(num_traits::pow(
            BigInt::from(10),
            400,
        )));
        assert_eq!(huge.to_f64(), Err(Error::Overflow));
    }

    #[test]
    fn division() {
        let a = Scalar::term(-1, rat(3, 4));
        let b = Scalar::term(-1, rat(1, 2));
        assert_eq!(a.checked_div(&b).unwrap(), Scalar::ratio(3, 2));
        assert_eq!(a.checked_div(&Scalar::zero()), Err(Error::DivisionByZero));
        let mixed = Scalar::one() + Scalar::inv_sqrt_pi();
        assert!(matches!(
            a.checked_div(&mixed),
            Err(Error::NonMonomialDivisor(_))
        ));
    }

    #[test]
    fn sign_of_mixed_value() {
        // 1 - 1.7 pi^(-1/2) = 1 - 0.959... > 0
        let v = Scalar::one() - Scalar::term(-1, rat(17, 10));
        assert_eq!(v.signum(), Ordering::Greater);
        let w = Scalar::one() - Scalar::term(-1, rat(18, 10));
        assert_eq!(w.signum(), Ordering::Less);
    }

    #[test]
    fn json_round_trip_and_display() {
        let v = Scalar::ratio(1, 3) + Scalar::term(-1, rat(-8, 15));
        let back = Scalar::from_json(&v.to_json()).unwrap();
        assert_eq!(back, v);
        assert_eq!(v.to_string(), "1/3 - 8/15·pi^(-1/2)");
        assert_eq!(Scalar::pi_half_power(-2).to_string(), "1·pi^(-1)");
    }

    #[test]
    fn sqrt_of_squares() {
        assert_eq!(rational_sqrt(&rat(9, 16)), Some(rat(3, 4)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
    }
}
