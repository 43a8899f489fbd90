//! Numerical checks of the intertwining and product identities, and a
//! generic content-fit driver.

use std::f64::consts::PI;

use heatcoef::profile::Profile;

use crate::error::{OracleError, Result};
use crate::fit::{asymptotic_fit, content_exponents, AsymptoticFit, FitConfig};
use crate::resolution::{eigensolve_interval, func, Bc, EigenConfig, Func, IntervalProblem};
use crate::sums::ContentSeries;

/// A function on the interval together with its derivative.
#[derive(Clone)]
pub struct Smooth {
    pub f: Func,
    pub df: Func,
}

impl Smooth {
    pub fn new(f: Func, df: Func) -> Self {
        Smooth { f, df }
    }

    pub fn constant(c: f64) -> Self {
        Smooth { f: func(move |_| c), df: func(|_| 0.0) }
    }

    pub fn from_profile(p: &Profile) -> Self {
        let (a, b) = (p.clone(), p.clone());
        Smooth { f: func(move |x| a.eval(x)), df: func(move |x| b.derivative_f64(1, x)) }
    }
}

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + i as f64 * h);
    }
    s * h / 3.0
}

#[derive(Clone, Debug)]
pub struct IdentityRow {
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub discrepancy: f64,
}

#[derive(Clone, Debug)]
pub struct IntertwineReport {
    pub rows: Vec<IdentityRow>,
    /// Largest `|lhs - rhs| / max(|rhs|, 1e-300)`.
    pub max_relative: f64,
    /// Eigenvalues of `D1` treated as zero modes and left out of the rate sum.
    pub zero_modes: usize,
}

const ZERO_MODE_TOL: f64 = 1e-6;

/// Compares `sum lambda e^{-t lambda} gamma(phi1) gamma(phi2)` for
/// `D1 = -(d^2 + b' - b^2)` under the Robin condition `S(0) = b(0)`,
/// `S(1) = -b(1)` with the Dirichlet heat content of `A phi1`, `A phi2` for
/// `D2 = -(d^2 - b' - b^2)`, where `A = d + b`.
pub fn intertwine_check(
    b: &Smooth,
    phi1: &Smooth,
    phi2: &Smooth,
    t_grid: &[f64],
    cfg: &EigenConfig,
) -> Result<IntertwineReport> {
    let (bf, dbf) = (b.f.clone(), b.df.clone());
    let v1 = func(move |x| bf(x) * bf(x) - dbf(x));
    let (bf, dbf) = (b.f.clone(), b.df.clone());
    let v2 = func(move |x| bf(x) * bf(x) + dbf(x));
    let d1 = IntervalProblem::schrodinger(1.0, v1, Bc::Robin((b.f)(0.0)), Bc::Robin(-(b.f)(1.0)))?;
    let d2 = IntervalProblem::schrodinger(1.0, v2, Bc::Dirichlet, Bc::Dirichlet)?;
    let r1 = eigensolve_interval(&d1, cfg)?;
    let r2 = eigensolve_interval(&d2, cfg)?;
    let lhs = ContentSeries::new(&r1, &*phi1.f, &*phi2.f);
    let a = |p: &Smooth| {
        let (f, df, bf) = (p.f.clone(), p.df.clone(), b.f.clone());
        move |x: f64| df(x) + bf(x) * f(x)
    };
    let (a1, a2) = (a(phi1), a(phi2));
    let rhs = ContentSeries::new(&r2, &a1, &a2);
    let zero_modes = r1.eigenvalues.iter().filter(|l| l.abs() <= ZERO_MODE_TOL).count();
    let mut rows = Vec::with_capacity(t_grid.len());
    let mut max_relative: f64 = 0.0;
    for &t in t_grid {
        let l = lhs.eval_rate(t, ZERO_MODE_TOL)?.value;
        let r = rhs.eval(t)?.value;
        let d = (l - r).abs() / r.abs().max(1e-300);
        max_relative = max_relative.max(d);
        rows.push(IdentityRow { t, lhs: l, rhs: r, discrepancy: d });
    }
    Ok(IntertwineReport { rows, max_relative, zero_modes })
}

#[derive(Clone, Copy, Debug)]
pub struct ProductTrickConfig {
    pub k_max: usize,
    pub eigen: EigenConfig,
    /// Eigen configuration for the modes `k != 0`.
    pub mode_eigen: EigenConfig,
    pub fit: FitConfig,
}

impl Default for ProductTrickConfig {
    fn default() -> Self {
        ProductTrickConfig {
            k_max: 3,
            eigen: EigenConfig::default(),
            mode_eigen: EigenConfig { count: 100, grid: Some(1000) },
            fit: FitConfig::window(10f64.powf(-3.5), 0.009),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProductTrickReport {
    /// `lhs`: the warped quantity summed over modes; `rhs`: `2 pi` times the
    /// flat content of `(1, 1)`.
    pub rows: Vec<IdentityRow>,
    pub max_discrepancy: f64,
    /// Same comparison with the weight `e^{+alpha}` in place of `e^{-alpha}`.
    pub plus_weight_max_discrepancy: f64,
    /// Bound on the modes `|k| > k_max` at the smallest `t`.
    pub mode_tail_bound: f64,
    pub fit: AsymptoticFit,
}

/// Angular Fourier coefficients (cosine, sine) of `g` by the trapezoid rule.
fn angular_modes(g: &dyn Fn(f64) -> f64, k: usize, q: usize) -> (f64, f64) {
    let h = 2.0 * PI / q as f64;
    let mut c = 0.0;
    let mut s = 0.0;
    for i in 0..q {
        let th = i as f64 * h;
        c += g(th) * (k as f64 * th).cos();
        s += g(th) * (k as f64 * th).sin();
    }
    (c / q as f64, s / q as f64)
}

/// Warped product `[0, 1] x S^1` with `D2 = -d_r^2 - e^{-2 alpha} d_theta^2`
/// and measure `e^{alpha} dr dtheta`. Mode `k` of the heat flow sees the
/// potential `k^2 e^{-2 alpha}`.
pub fn product_trick_check(alpha: &Profile, t_grid: &[f64], cfg: &ProductTrickConfig) -> Result<ProductTrickReport> {
    if alpha.eval(0.0).abs() > 1e-14 || alpha.eval(1.0).abs() > 1e-14 {
        return Err(OracleError::InvalidInput("alpha must vanish at r = 0 and r = 1".into()));
    }
    let q = 4 * cfg.k_max + 64;
    // phi1 = 1 and the angular part of the weight are both constant in theta
    let phi_theta = |_: f64| 1.0;
    let weight_theta = |_: f64| 1.0;
    let al = alpha.clone();
    let radial_weight = move |sign: f64| {
        let al = al.clone();
        move |r: f64| (sign * al.eval(r)).exp() * al.eval(r).exp()
    };
    let w_minus = radial_weight(-1.0);
    let w_plus = radial_weight(1.0);
    let one = |_: f64| 1.0;

    let mut series = Vec::new();
    let mut plus_series = Vec::new();
    for k in 0..=cfg.k_max {
        let (pc, ps) = angular_modes(&phi_theta, k, q);
        let (wc, ws) = angular_modes(&weight_theta, k, q);
        // real modes: k = 0 once; k > 0 as cos and sin, each with norm pi
        let coupling = if k == 0 { 2.0 * PI * pc * wc } else { PI * 2.0 * (pc * wc + ps * ws) };
        let al = alpha.clone();
        let kk = (k * k) as f64;
        let p = IntervalProblem::schrodinger(
            1.0,
            func(move |r| kk * (-2.0 * al.eval(r)).exp()),
            Bc::Dirichlet,
            Bc::Dirichlet,
        )?;
        let ecfg = if k == 0 { cfg.eigen } else { cfg.mode_eigen };
        let res = eigensolve_interval(&p, &ecfg)?;
        series.push((coupling, ContentSeries::new(&res, &one, &w_minus)));
        plus_series.push((coupling, ContentSeries::new(&res, &one, &w_plus)));
    }
    let flat = IntervalProblem::flat(1.0, Bc::Dirichlet, Bc::Dirichlet)?;
    let flat_series = ContentSeries::new(&eigensolve_interval(&flat, &cfg.eigen)?, &one, &one);

    // modes beyond k_max: |coupling| times the Cauchy-Schwarz bound with the
    // potential floor k^2 min e^{-2 alpha}
    let grid_min = (0..=1000)
        .map(|i| (-2.0 * alpha.eval(i as f64 / 1000.0)).exp())
        .fold(f64::INFINITY, f64::min);
    let t0 = t_grid.iter().copied().fold(f64::INFINITY, f64::min);
    let norm = simpson(&|r| w_minus(r).powi(2), 0.0, 1.0, 2000).sqrt();
    let mut mode_tail_bound = 0.0;
    for k in cfg.k_max + 1..=q / 2 {
        let (pc, ps) = angular_modes(&phi_theta, k, q);
        let (wc, ws) = angular_modes(&weight_theta, k, q);
        let c = 2.0 * PI * (pc.abs() * wc.abs() + ps.abs() * ws.abs());
        mode_tail_bound += c * norm * (-t0 * (k * k) as f64 * grid_min).exp();
    }
    if mode_tail_bound > 1e-8 {
        return Err(OracleError::InvalidInput(format!(
            "k_max = {} leaves a mode tail of {mode_tail_bound:e} at t = {t0}",
            cfg.k_max
        )));
    }

    let total = |s: &[(f64, ContentSeries)], t: f64| -> Result<f64> {
        let mut v = 0.0;
        for (c, cs) in s {
            if *c != 0.0 {
                v += c * cs.eval(t)?.value;
            }
        }
        Ok(v)
    };
    let mut rows = Vec::new();
    let mut max_discrepancy: f64 = 0.0;
    let mut plus_weight_max_discrepancy: f64 = 0.0;
    for &t in t_grid {
        let lhs = total(&series, t)?;
        let rhs = 2.0 * PI * flat_series.eval(t)?.value;
        let d = (lhs - rhs).abs();
        max_discrepancy = max_discrepancy.max(d);
        plus_weight_max_discrepancy = plus_weight_max_discrepancy.max((total(&plus_series, t)? - rhs).abs());
        rows.push(IdentityRow { t, lhs, rhs, discrepancy: d });
    }

    let floor = series.iter().map(|(_, cs)| cs.t_floor()).fold(0.0, f64::max);
    let fit_cfg = FitConfig { t_min: cfg.fit.t_min.max(floor), ..cfg.fit };
    let mut samples = Vec::new();
    for t in fit_cfg.grid() {
        samples.push((t, total(&series, t)?));
    }
    let interior0 = 2.0 * PI * simpson(&w_minus, 0.0, 1.0, 2000);
    let fit = asymptotic_fit(&samples, &content_exponents(&[0, 1, 2, 3]), &[interior0], &fit_cfg)?;
    Ok(ProductTrickReport { rows, max_discrepancy, plus_weight_max_discrepancy, mode_tail_bound, fit })
}

/// Samples `beta(t)` on the fit grid (clamped to the resolvable floor) and
/// fits the boundary powers after subtracting the interior series.
pub fn content_fit(
    problem: &IntervalProblem,
    phi1: &dyn Fn(f64) -> f64,
    phi2: &dyn Fn(f64) -> f64,
    interior: &[f64],
    exponents: &[f64],
    eigen: &EigenConfig,
    fit: &FitConfig,
) -> Result<(AsymptoticFit, Vec<(f64, f64)>)> {
    let res = eigensolve_interval(problem, eigen)?;
    let series = ContentSeries::new(&res, phi1, phi2);
    let cfg = FitConfig { t_min: fit.t_min.max(series.t_floor()), ..*fit };
    let samples = cfg
        .grid()
        .into_iter()
        .map(|t| series.eval(t).map(|s| (t, s.value)))
        .collect::<Result<Vec<_>>>()?;
    Ok((asymptotic_fit(&samples, exponents, interior, &cfg)?, samples))
}
