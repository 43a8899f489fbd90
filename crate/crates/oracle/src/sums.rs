//! Truncated eigen-sums for heat content and heat trace.

use crate::error::{OracleError, Result};
use crate::resolution::{SpectralResolution, TAIL_EXPONENT};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HeatSum {
    pub t: f64,
    pub value: f64,
    pub tail_bound: f64,
}

/// `sum_mu e^{-t lambda_mu} w_mu` with `w_mu = gamma_mu(phi1) gamma_mu(phi2)`.
#[derive(Clone, Debug)]
pub struct ContentSeries {
    pub lambdas: Vec<f64>,
    pub weights: Vec<f64>,
    /// `||phi1|| ||phi2||`, used for the Cauchy-Schwarz tail bound.
    pub norm_product: f64,
}

impl ContentSeries {
    pub fn new(res: &SpectralResolution, phi1: &dyn Fn(f64) -> f64, phi2: &dyn Fn(f64) -> f64) -> Self {
        let (g1, g2, norm_product) = res.gauged_pair(phi1, phi2);
        ContentSeries {
            lambdas: res.eigenvalues.clone(),
            weights: g1.iter().zip(&g2).map(|(a, b)| a * b).collect(),
            norm_product,
        }
    }

    fn last(&self) -> f64 {
        *self.lambdas.last().unwrap_or(&0.0)
    }

    pub fn t_floor(&self) -> f64 {
        let last = self.last();
        if last > 0.0 {
            TAIL_EXPONENT / last
        } else {
            f64::INFINITY
        }
    }

    fn check(&self, t: f64) -> Result<()> {
        if !(t > 0.0) || t < self.t_floor() {
            return Err(OracleError::TFloor { t, floor: self.t_floor() });
        }
        Ok(())
    }

    /// `beta(t)`.
    pub fn eval(&self, t: f64) -> Result<HeatSum> {
        self.check(t)?;
        let value = self.lambdas.iter().zip(&self.weights).map(|(l, w)| (-t * l).exp() * w).sum();
        Ok(HeatSum { t, value, tail_bound: (-t * self.last()).exp() * self.norm_product })
    }

    /// `-d/dt beta(t) = sum lambda e^{-t lambda} w`, skipping modes with
    /// `|lambda| <= zero_tol`.
    pub fn eval_rate(&self, t: f64, zero_tol: f64) -> Result<HeatSum> {
        self.check(t)?;
        let value = self
            .lambdas
            .iter()
            .zip(&self.weights)
            .filter(|(l, _)| l.abs() > zero_tol)
            .map(|(l, w)| l * (-t * l).exp() * w)
            .sum();
        let last = self.last();
        Ok(HeatSum { t, value, tail_bound: last * (-t * last).exp() * self.norm_product })
    }
}

pub fn heat_content_sum(
    res: &SpectralResolution,
    phi1: &dyn Fn(f64) -> f64,
    phi2: &dyn Fn(f64) -> f64,
    t: f64,
) -> Result<HeatSum> {
    ContentSeries::new(res, phi1, phi2).eval(t)
}

/// `sum e^{-t lambda}`. The tail is estimated by continuing the top of the
/// spectrum with its mean spacing.
pub fn heat_trace_sum(res: &SpectralResolution, t: f64) -> Result<HeatSum> {
    let floor = res.t_floor();
    if !(t > 0.0) || t < floor {
        return Err(OracleError::TFloor { t, floor });
    }
    let ev = &res.eigenvalues;
    let value = ev.iter().map(|l| (-t * l).exp()).sum();
    let n = ev.len();
    let last = ev[n - 1];
    let half = n / 2;
    let spacing = if n - half > 1 { (last - ev[half]) / (n - 1 - half) as f64 } else { last };
    let tail_bound = (-t * last).exp() / (t * spacing.max(f64::MIN_POSITIVE)).exp_m1();
    Ok(HeatSum { t, value, tail_bound })
}
