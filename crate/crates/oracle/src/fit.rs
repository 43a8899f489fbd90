//! Weighted least-squares fits of small-`t` power series.

use nalgebra::{DMatrix, DVector};

use crate::error::{OracleError, Result};

#[derive(Clone, Copy, Debug)]
pub struct FitConfig {
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
    /// Rows are scaled by `t^weight_power`.
    pub weight_power: f64,
    pub max_condition: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            t_min: 10f64.powf(-3.5),
            t_max: 0.1,
            points: 40,
            weight_power: -0.5,
            max_condition: 1e10,
        }
    }
}

impl FitConfig {
    pub fn window(t_min: f64, t_max: f64) -> Self {
        FitConfig { t_min, t_max, ..Default::default() }
    }

    pub fn grid(&self) -> Vec<f64> {
        geometric_grid(self.t_min, self.t_max, self.points)
    }
}

pub fn geometric_grid(t_min: f64, t_max: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![t_min];
    }
    let r = (t_max / t_min).ln() / (n - 1) as f64;
    (0..n).map(|i| t_min * (r * i as f64).exp()).collect()
}

/// Content exponents `(l + 1) / 2`.
pub fn content_exponents(ells: &[usize]) -> Vec<f64> {
    ells.iter().map(|l| (*l as f64 + 1.0) / 2.0).collect()
}

/// Trace exponents `n / 2 - m / 2`.
pub fn trace_exponents(ns: &[usize], dim: usize) -> Vec<f64> {
    ns.iter().map(|n| (*n as f64 - dim as f64) / 2.0).collect()
}

#[derive(Clone, Debug)]
pub struct AsymptoticFit {
    pub exponents: Vec<f64>,
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    /// Condition number of the row-weighted, column-normalized design.
    pub condition: f64,
    pub residual_rms: f64,
}

/// Fits `value - sum_n (-t)^n / n! interior[n]` by `sum_j c_j t^{p_j}`.
pub fn asymptotic_fit(
    samples: &[(f64, f64)],
    exponents: &[f64],
    interior: &[f64],
    cfg: &FitConfig,
) -> Result<AsymptoticFit> {
    let p = exponents.len();
    if p == 0 || p > 6 {
        return Err(OracleError::InvalidInput(format!("basis of {p} exponents (1..=6 allowed)")));
    }
    if samples.len() < p {
        return Err(OracleError::InvalidInput("fewer samples than basis functions".into()));
    }
    if samples.iter().any(|(t, v)| !(*t > 0.0) || !v.is_finite()) {
        return Err(OracleError::InvalidInput("samples need t > 0 and finite values".into()));
    }
    let n = samples.len();
    let rows: Vec<f64> = samples.iter().map(|(t, _)| t.powf(cfg.weight_power)).collect();
    let mut x = DMatrix::from_fn(n, p, |i, j| rows[i] * samples[i].0.powf(exponents[j]));
    let y = DVector::from_fn(n, |i, _| {
        let (t, v) = samples[i];
        let mut term = 1.0;
        let mut sub = 0.0;
        for (k, c) in interior.iter().enumerate() {
            if k > 0 {
                term *= -t / k as f64;
            }
            sub += term * c;
        }
        rows[i] * (v - sub)
    });
    let scales: Vec<f64> = (0..p).map(|j| x.column(j).norm()).collect();
    if scales.iter().any(|s| !(*s > 0.0)) {
        return Err(OracleError::InvalidInput("degenerate basis column".into()));
    }
    for (j, s) in scales.iter().enumerate() {
        x.column_mut(j).scale_mut(1.0 / s);
    }
    let svd = x.clone().svd(true, true);
    let sv = &svd.singular_values;
    let smax = sv.max();
    let smin = sv.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(condition <= cfg.max_condition) {
        return Err(OracleError::FitRejected { condition, threshold: cfg.max_condition });
    }
    let z = svd
        .solve(&y, 0.0)
        .map_err(|e| OracleError::NonConvergence(format!("least squares: {e}")))?;
    let resid = &y - &x * &z;
    let rss = resid.norm_squared();
    let dof = n.saturating_sub(p).max(1) as f64;
    let sigma2 = rss / dof;
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    let std_errors = (0..p)
        .map(|j| {
            let var: f64 = (0..p).map(|k| (v_t[(k, j)] / sv[k]).powi(2)).sum();
            (sigma2 * var).sqrt() / scales[j]
        })
        .collect();
    Ok(AsymptoticFit {
        exponents: exponents.to_vec(),
        coefficients: (0..p).map(|j| z[j] / scales[j]).collect(),
        std_errors,
        condition,
        residual_rms: (rss / n as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_series() {
        let cfg = FitConfig::default();
        let exps = content_exponents(&[0, 1, 2, 3]);
        let samples: Vec<(f64, f64)> = cfg
            .grid()
            .into_iter()
            .map(|t| (t, 2.0 - 3.0 * t + 0.5 * t.sqrt() - 0.25 * t.powf(1.5) + t * t))
            .collect();
        let f = asymptotic_fit(&samples, &exps, &[2.0, 3.0], &cfg).unwrap();
        for (c, e) in f.coefficients.iter().zip([0.5, 0.0, -0.25, 1.0]) {
            assert!((c - e).abs() < 1e-8, "{c} vs {e}");
        }
    }

    #[test]
    fn over_rich_basis_is_rejected() {
        let cfg = FitConfig::default();
        let exps = [0.5, 0.51, 0.52, 0.53, 0.54, 0.55];
        let samples: Vec<(f64, f64)> = cfg.grid().into_iter().map(|t| (t, t.sqrt() + 1e-9 * t.sin())).collect();
        assert!(matches!(
            asymptotic_fit(&samples, &exps, &[], &cfg),
            Err(OracleError::FitRejected { .. })
        ));
        assert!(asymptotic_fit(&samples, &[0.5; 7], &[], &cfg).is_err());
    }

    #[test]
    fn exponent_grids() {
        assert_eq!(content_exponents(&[0, 2]), vec![0.5, 1.5]);
        assert_eq!(trace_exponents(&[0, 2], 1), vec![-0.5, 0.5]);
        let g = geometric_grid(1e-3, 1e-1, 3);
        assert!((g[1] - 1e-2).abs() < 1e-15);
    }
}
