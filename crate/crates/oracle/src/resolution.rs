//! Eigen-decompositions of 1D Schrödinger-type operators.

use std::f64::consts::PI;
use std::sync::Arc;

use heatcoef::geometry::LaplaceOp1D;
use heatcoef::{Jet, Scalar};
use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{OracleError, Result};
use crate::tridiag::SymTridiagonal;

pub type Func = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

pub fn func(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Func {
    Arc::new(f)
}

/// `-ln(1e-12)`: tail factors `exp(-t lambda_last)` must stay below `1e-12`.
pub const TAIL_EXPONENT: f64 = 27.631_021_115_928_547;

/// Boundary condition at one end of an interval. `Robin(s)` means
/// `du/dn + s u = 0` with `n` the inward normal, so `u'(0) = -s u(0)` and
/// `u'(L) = s u(L)`. Neumann is `Robin(0.0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bc {
    Dirichlet,
    Robin(f64),
}

impl Bc {
    pub const NEUMANN: Bc = Bc::Robin(0.0);
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryCondition {
    Interval { left: Bc, right: Bc },
    Periodic,
}

/// `-u'' + V u` on `[0, L]`, optionally carrying the gauge `a(x)` of an
/// operator `-(u'' + A u' + B u)` that was brought to this form by
/// `u = e^{-a} w`, `a' = A / 2`.
#[derive(Clone)]
pub struct IntervalProblem {
    pub length: f64,
    pub potential: Func,
    pub left: Bc,
    pub right: Bc,
    pub gauge: Option<Func>,
}

impl IntervalProblem {
    pub fn schrodinger(length: f64, potential: Func, left: Bc, right: Bc) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(OracleError::InvalidInput(format!("interval length {length}")));
        }
        Ok(IntervalProblem { length, potential, left, right, gauge: None })
    }

    pub fn flat(length: f64, left: Bc, right: Bc) -> Result<Self> {
        Self::schrodinger(length, func(|_| 0.0), left, right)
    }

    /// `D = -(d^2 + E)`, i.e. potential `-E`.
    pub fn with_endomorphism(length: f64, e: Func, left: Bc, right: Bc) -> Result<Self> {
        Self::schrodinger(length, func(move |x| -e(x)), left, right)
    }

    /// `-(u'' + A u' + B u)` with real `A`. `a_int` is `int_0^x A`.
    pub fn gauged(
        length: f64,
        a: Func,
        da: Func,
        a_int: Func,
        b: Func,
        left: Bc,
        right: Bc,
    ) -> Result<Self> {
        let shift = |bc: Bc, s: f64| match bc {
            Bc::Dirichlet => Bc::Dirichlet,
            Bc::Robin(x) => Bc::Robin(x + s),
        };
        let left = shift(left, -a(0.0) / 2.0);
        let right = shift(right, a(length) / 2.0);
        let v = func(move |x| {
            let av = a(x);
            -(b(x) - da(x) / 2.0 - av * av / 4.0)
        });
        let mut p = Self::schrodinger(length, v, left, right)?;
        p.gauge = Some(func(move |x| a_int(x) / 2.0));
        Ok(p)
    }

    /// Operator whose jets at `0` are read as polynomials. Needs `g11 = 1`.
    pub fn from_laplace_op(op: &LaplaceOp1D, length: f64, left: Bc, right: Bc) -> Result<Self> {
        let one = Jet::constant(op.g11.base().clone(), Scalar::one(), op.g11.order());
        if op.g11 != one {
            return Err(OracleError::InvalidInput("only g11 = 1 is supported".into()));
        }
        let a = op.a.to_f64_coeffs()?;
        let b = op.b.to_f64_coeffs()?;
        if op.a.base() != &heatcoef::numerics::int(0) {
            return Err(OracleError::InvalidInput("jets must be based at 0".into()));
        }
        if a.iter().all(|c| *c == 0.0) {
            let bf = poly(b);
            return Self::schrodinger(length, func(move |x| -bf(x)), left, right);
        }
        let da: Vec<f64> = a.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect();
        let ai: Vec<f64> = std::iter::once(0.0)
            .chain(a.iter().enumerate().map(|(k, c)| c / (k + 1) as f64))
            .collect();
        Self::gauged(length, poly(a), poly(da), poly(ai), poly(b), left, right)
    }
}

fn poly(c: Vec<f64>) -> Func {
    func(move |x| c.iter().rev().fold(0.0, |acc, a| acc * x + a))
}

/// `-u'' + V u` on the circle of circumference `L`.
#[derive(Clone)]
pub struct CircleProblem {
    pub length: f64,
    pub potential: Func,
}

impl CircleProblem {
    pub fn new(length: f64, potential: Func) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(OracleError::InvalidInput(format!("circle length {length}")));
        }
        Ok(CircleProblem { length, potential })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EigenConfig {
    /// Number of eigenpairs kept.
    pub count: usize,
    /// Coarse grid intervals for the interval solver (the fine grid doubles
    /// it). `None` picks `max(2000, 20 count)`.
    pub grid: Option<usize>,
}

impl Default for EigenConfig {
    fn default() -> Self {
        EigenConfig { count: 200, grid: None }
    }
}

impl EigenConfig {
    pub fn with_count(count: usize) -> Self {
        EigenConfig { count, grid: None }
    }

    fn coarse_grid(&self) -> usize {
        self.grid.unwrap_or_else(|| (20 * self.count).max(2000))
    }
}

struct Level {
    x: Vec<f64>,
    sqrt_m: Vec<f64>,
    eigenvalues: Vec<f64>,
    vectors: Vec<Vec<f64>>,
}

impl Level {
    fn build(p: &IntervalProblem, n: usize, count: usize) -> Result<Level> {
        let h = p.length / n as f64;
        let first = usize::from(p.left == Bc::Dirichlet);
        let last = if p.right == Bc::Dirichlet { n - 1 } else { n };
        let mut x = Vec::new();
        let mut sqrt_m = Vec::new();
        let mut d = Vec::new();
        for i in first..=last {
            let xi = i as f64 * h;
            let end = i == 0 || i == n;
            let m = if end { h / 2.0 } else { h };
            let mut k = if end { 1.0 / h } else { 2.0 / h } + m * (p.potential)(xi);
            if i == 0 {
                if let Bc::Robin(s) = p.left {
                    k -= s;
                }
            }
            if i == n {
                if let Bc::Robin(s) = p.right {
                    k -= s;
                }
            }
            x.push(xi);
            sqrt_m.push(m.sqrt());
            d.push(k / m);
        }
        let e: Vec<f64> = (0..d.len() - 1).map(|i| -1.0 / h / (sqrt_m[i] * sqrt_m[i + 1])).collect();
        let t = SymTridiagonal::new(d, e)?;
        let eigenvalues = t.lowest_eigenvalues(count)?;
        let mut vectors = Vec::with_capacity(count);
        for lam in &eigenvalues {
            let mut v = t.eigenvector(*lam)?;
            if v[0] < 0.0 {
                v.iter_mut().for_each(|c| *c = -*c);
            }
            vectors.push(v);
        }
        Ok(Level { x, sqrt_m, eigenvalues, vectors })
    }

    fn weighted_samples(&self, phi: &dyn Fn(f64) -> f64) -> Vec<f64> {
        self.x.iter().zip(&self.sqrt_m).map(|(x, s)| s * phi(*x)).collect()
    }

    fn fourier(&self, phi: &dyn Fn(f64) -> f64) -> Vec<f64> {
        let f = self.weighted_samples(phi);
        self.vectors.iter().map(|v| v.iter().zip(&f).map(|(a, b)| a * b).sum()).collect()
    }
}

struct CircleBasis {
    grid: Vec<f64>,
    weight: f64,
    /// `basis[j][q]`: real Fourier basis function `j` at grid point `q`.
    basis: Vec<Vec<f64>>,
    /// `coeffs[mu][j]`.
    coeffs: Vec<Vec<f64>>,
}

impl CircleBasis {
    fn projections(&self, phi: &dyn Fn(f64) -> f64) -> Vec<f64> {
        let f: Vec<f64> = self.grid.iter().map(|x| phi(*x)).collect();
        self.basis
            .iter()
            .map(|b| self.weight * b.iter().zip(&f).map(|(a, c)| a * c).sum::<f64>())
            .collect()
    }
}

enum Basis {
    Interval { coarse: Level, fine: Level },
    Circle(CircleBasis),
}

/// First `count` eigenpairs of a self-adjoint 1D operator.
pub struct SpectralResolution {
    pub bc: BoundaryCondition,
    pub length: f64,
    /// Ascending; Richardson-extrapolated on the interval.
    pub eigenvalues: Vec<f64>,
    /// Largest relative coarse/fine discrepancy among the first quarter of
    /// the eigenvalues (zero for the circle solver).
    pub richardson_gap: f64,
    basis: Basis,
    gauge: Option<Func>,
}

pub fn eigensolve_interval(p: &IntervalProblem, cfg: &EigenConfig) -> Result<SpectralResolution> {
    let n = cfg.coarse_grid();
    if cfg.count == 0 || 8 * cfg.count > n {
        return Err(OracleError::InvalidInput(format!(
            "count {} not supported by a grid of {n} intervals (need count <= grid / 8)",
            cfg.count
        )));
    }
    let coarse = Level::build(p, n, cfg.count)?;
    let fine = Level::build(p, 2 * n, cfg.count)?;
    let eigenvalues: Vec<f64> = coarse
        .eigenvalues
        .iter()
        .zip(&fine.eigenvalues)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect();
    let quarter = (cfg.count / 4).max(1);
    let richardson_gap = coarse.eigenvalues[..quarter]
        .iter()
        .zip(&fine.eigenvalues)
        .map(|(c, f)| (f - c).abs() / f.abs().max(1.0))
        .fold(0.0, f64::max);
    Ok(SpectralResolution {
        bc: BoundaryCondition::Interval { left: p.left, right: p.right },
        length: p.length,
        eigenvalues,
        richardson_gap,
        basis: Basis::Interval { coarse, fine },
        gauge: p.gauge.clone(),
    })
}

/// Galerkin solve in the real Fourier basis with `modes` frequencies.
pub fn eigensolve_circle(p: &CircleProblem, modes: usize, cfg: &EigenConfig) -> Result<SpectralResolution> {
    let size = 2 * modes + 1;
    if cfg.count == 0 || cfg.count > size {
        return Err(OracleError::InvalidInput(format!(
            "count {} exceeds the {size} basis functions",
            cfg.count
        )));
    }
    let l = p.length;
    let q = 8 * modes + 64;
    let weight = l / q as f64;
    let grid: Vec<f64> = (0..q).map(|i| i as f64 * weight).collect();
    let w = 2.0 * PI / l;
    let mut basis = Vec::with_capacity(size);
    let mut freq = Vec::with_capacity(size);
    basis.push(vec![1.0 / l.sqrt(); q]);
    freq.push(0.0);
    let amp = (2.0 / l).sqrt();
    for k in 1..=modes {
        let kw = k as f64 * w;
        basis.push(grid.iter().map(|x| amp * (kw * x).cos()).collect());
        basis.push(grid.iter().map(|x| amp * (kw * x).sin()).collect());
        freq.push(kw);
        freq.push(kw);
    }
    let v: Vec<f64> = grid.iter().map(|x| (p.potential)(*x)).collect();
    if v.iter().any(|x| !x.is_finite()) {
        return Err(OracleError::Indefinite("non-finite potential sample".into()));
    }
    let b = DMatrix::from_fn(size, q, |j, i| basis[j][i]);
    let bv = DMatrix::from_fn(size, q, |j, i| basis[j][i] * v[i] * weight);
    let mut h = &bv * b.transpose();
    for j in 0..size {
        h[(j, j)] += freq[j] * freq[j];
    }
    let h = (&h + h.transpose()) * 0.5;
    let eig = SymmetricEigen::try_new(h, f64::EPSILON, 10_000)
        .ok_or_else(|| OracleError::NonConvergence("dense symmetric eigensolve".into()))?;
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|a, b| eig.eigenvalues[*a].total_cmp(&eig.eigenvalues[*b]));
    order.truncate(cfg.count);
    let eigenvalues = order.iter().map(|i| eig.eigenvalues[*i]).collect();
    let coeffs = order
        .iter()
        .map(|i| eig.eigenvectors.column(*i).iter().copied().collect())
        .collect();
    Ok(SpectralResolution {
        bc: BoundaryCondition::Periodic,
        length: l,
        eigenvalues,
        richardson_gap: 0.0,
        basis: Basis::Circle(CircleBasis { grid, weight, basis, coeffs }),
        gauge: None,
    })
}

impl SpectralResolution {
    pub fn count(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Smallest `t` for which `exp(-t lambda_last) <= 1e-12`.
    pub fn t_floor(&self) -> f64 {
        let last = *self.eigenvalues.last().unwrap_or(&0.0);
        if last > 0.0 {
            TAIL_EXPONENT / last
        } else {
            f64::INFINITY
        }
    }

    /// `gamma_mu = int phi phi_mu`, Richardson-extrapolated on the interval.
    pub fn fourier(&self, phi: &dyn Fn(f64) -> f64) -> Vec<f64> {
        match &self.basis {
            Basis::Interval { coarse, fine } => coarse
                .fourier(phi)
                .iter()
                .zip(fine.fourier(phi))
                .map(|(c, f)| (4.0 * f - c) / 3.0)
                .collect(),
            Basis::Circle(cb) => {
                let p = cb.projections(phi);
                cb.coeffs
                    .iter()
                    .map(|c| c.iter().zip(&p).map(|(a, b)| a * b).sum())
                    .collect()
            }
        }
    }

    /// `int phi^2` by the same quadrature as `fourier`.
    pub fn norm_squared(&self, phi: &dyn Fn(f64) -> f64) -> f64 {
        match &self.basis {
            Basis::Interval { coarse, fine } => {
                let n = |lv: &Level| lv.weighted_samples(phi).iter().map(|v| v * v).sum::<f64>();
                (4.0 * n(fine) - n(coarse)) / 3.0
            }
            Basis::Circle(cb) => cb.grid.iter().map(|x| phi(*x).powi(2)).sum::<f64>() * cb.weight,
        }
    }

    /// Fourier coefficients of `e^{a} phi1` and `e^{-a} phi2`: the pair that
    /// enters the eigen-sum for a gauged operator.
    pub fn gauged_pair(&self, phi1: &dyn Fn(f64) -> f64, phi2: &dyn Fn(f64) -> f64) -> (Vec<f64>, Vec<f64>, f64) {
        match &self.gauge {
            None => {
                let n = (self.norm_squared(phi1) * self.norm_squared(phi2)).sqrt();
                (self.fourier(phi1), self.fourier(phi2), n)
            }
            Some(a) => {
                let f1 = |x: f64| a(x).exp() * phi1(x);
                let f2 = |x: f64| (-a(x)).exp() * phi2(x);
                let n = (self.norm_squared(&f1) * self.norm_squared(&f2)).sqrt();
                (self.fourier(&f1), self.fourier(&f2), n)
            }
        }
    }

    /// Eigenfunction `mu` on the uniform sampling grid (fine grid on the
    /// interval, quadrature grid on the circle).
    pub fn eigenfunction_samples(&self, mu: usize) -> Option<(Vec<f64>, Vec<f64>)> {
        match &self.basis {
            Basis::Interval { fine, .. } => {
                let v = fine.vectors.get(mu)?;
                Some((fine.x.clone(), v.iter().zip(&fine.sqrt_m).map(|(a, s)| a / s).collect()))
            }
            Basis::Circle(cb) => {
                let c = cb.coeffs.get(mu)?;
                let vals = (0..cb.grid.len())
                    .map(|q| c.iter().zip(&cb.basis).map(|(a, b)| a * b[q]).sum())
                    .collect();
                Some((cb.grid.clone(), vals))
            }
        }
    }

    /// Largest deviation of the discrete Gram matrix from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let vecs: &Vec<Vec<f64>> = match &self.basis {
            Basis::Interval { fine, .. } => &fine.vectors,
            Basis::Circle(cb) => &cb.coeffs,
        };
        let mut worst: f64 = 0.0;
        for i in 0..vecs.len() {
            for j in 0..=i {
                let dot: f64 = vecs[i].iter().zip(&vecs[j]).map(|(a, b)| a * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_dirichlet_spectrum() {
        let p = IntervalProblem::flat(1.0, Bc::Dirichlet, Bc::Dirichlet).unwrap();
        let r = eigensolve_interval(&p, &EigenConfig::with_count(40)).unwrap();
        for k in 1..=3 {
            let exact = (k as f64 * PI).powi(2);
            assert!((r.eigenvalues[k - 1] - exact).abs() / exact < 1e-8);
        }
        for k in 1..=10 {
            let exact = (k as f64 * PI).powi(2);
            assert!((r.eigenvalues[k - 1] - exact).abs() / exact < 1e-8, "k = {k}");
        }
        assert!(r.orthonormality_defect() < 1e-8);
    }

    #[test]
    fn flat_circle_spectrum() {
        let p = CircleProblem::new(2.0 * PI, func(|_| 0.0)).unwrap();
        let r = eigensolve_circle(&p, 10, &EigenConfig::with_count(7)).unwrap();
        let expect = [0.0, 1.0, 1.0, 4.0, 4.0, 9.0, 9.0];
        for (a, b) in r.eigenvalues.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(r.orthonormality_defect() < 1e-12);
    }

    #[test]
    fn gauge_preserves_spectrum() {
        // -(u'' + 2 u') on [0, 1] Dirichlet: w-potential 1, eigenvalues (k pi)^2 + 1
        let p = IntervalProblem::gauged(
            1.0,
            func(|_| 2.0),
            func(|_| 0.0),
            func(|x| 2.0 * x),
            func(|_| 0.0),
            Bc::Dirichlet,
            Bc::Dirichlet,
        )
        .unwrap();
        let r = eigensolve_interval(&p, &EigenConfig::with_count(20)).unwrap();
        assert!((r.eigenvalues[0] - (PI * PI + 1.0)).abs() < 1e-7);
    }

    #[test]
    fn rejects_bad_configuration() {
        let p = IntervalProblem::flat(1.0, Bc::Dirichlet, Bc::Dirichlet).unwrap();
        assert!(eigensolve_interval(&p, &EigenConfig { count: 100, grid: Some(100) }).is_err());
        assert!(IntervalProblem::flat(-1.0, Bc::Dirichlet, Bc::Dirichlet).is_err());
    }
}
