//! Shooting and characteristic-equation cross-checks for low eigenvalues.

use crate::error::{OracleError, Result};
use crate::resolution::{Bc, IntervalProblem};

/// Right-end boundary residual of the solution started from the left
/// condition, integrated by classical RK4 with `steps` steps.
pub fn shooting_residual(p: &IntervalProblem, lambda: f64, steps: usize) -> f64 {
    let (mut u, mut du) = match p.left {
        Bc::Dirichlet => (0.0, 1.0),
        Bc::Robin(s) => (1.0, -s),
    };
    let h = p.length / steps as f64;
    let v = &p.potential;
    let f = |x: f64, u: f64| (v(x) - lambda) * u;
    for i in 0..steps {
        let x = i as f64 * h;
        let k1u = du;
        let k1v = f(x, u);
        let k2u = du + 0.5 * h * k1v;
        let k2v = f(x + 0.5 * h, u + 0.5 * h * k1u);
        let k3u = du + 0.5 * h * k2v;
        let k3v = f(x + 0.5 * h, u + 0.5 * h * k2u);
        let k4u = du + h * k3v;
        let k4v = f(x + h, u + h * k3u);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        du += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    match p.right {
        Bc::Dirichlet => u,
        Bc::Robin(s) => -du + s * u,
    }
}

fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Refines each guess to a root of the shooting residual, widening a bracket
/// around the guess until the residual changes sign.
pub fn shooting_eigenvalues(p: &IntervalProblem, guesses: &[f64], steps: usize) -> Result<Vec<f64>> {
    let f = |l: f64| shooting_residual(p, l, steps);
    guesses
        .iter()
        .map(|&g| {
            let mut delta = 1e-6 * (g.abs() + 1.0);
            for _ in 0..40 {
                let (lo, hi) = (g - delta, g + delta);
                if (f(lo) < 0.0) != (f(hi) < 0.0) {
                    return Ok(bisect(&f, lo, hi));
                }
                delta *= 2.0;
            }
            Err(OracleError::NonConvergence(format!("no sign change of the shooting residual near {g}")))
        })
        .collect()
}

/// Right-end residual for `-u'' = lambda u` on `[0, L]` with
/// `u'(0) = -s0 u(0)`, evaluated in closed form.
pub fn flat_robin_characteristic(lambda: f64, s0: f64, s1: f64, length: f64) -> f64 {
    let (u, du) = if lambda > 0.0 {
        let k = lambda.sqrt();
        let (s, c) = (k * length).sin_cos();
        (c - s0 * s / k, -k * s - s0 * c)
    } else if lambda < 0.0 {
        let k = (-lambda).sqrt();
        let (s, c) = ((k * length).sinh(), (k * length).cosh());
        (c - s0 * s / k, k * s - s0 * c)
    } else {
        (1.0 - s0 * length, -s0)
    };
    -du + s1 * u
}

/// Lowest root of the flat Robin characteristic function, found by an
/// upward scan from a variational lower bound followed by bisection.
pub fn flat_robin_lowest(s0: f64, s1: f64, length: f64) -> Result<f64> {
    let f = |l: f64| flat_robin_characteristic(l, s0, s1, length);
    let m = s0.abs().max(s1.abs());
    // u(0)^2 <= eps int u'^2 + (1/eps + 1/L) int u^2; eps = 1/(2m) gives
    // lambda >= -2m (2m + 1/L)
    let floor = -2.0 * m * (2.0 * m + 1.0 / length) - 1.0;
    let step = (1.0 / (length * length)).min(0.25);
    let mut lo = floor;
    let mut flo = f(lo);
    while lo < 1e6 {
        let hi = lo + step;
        let fhi = f(hi);
        if (flo < 0.0) != (fhi < 0.0) || fhi == 0.0 {
            return Ok(bisect(&f, lo, hi));
        }
        lo = hi;
        flo = fhi;
    }
    Err(OracleError::NonConvergence("no root of the Robin characteristic function".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn shooting_recovers_flat_dirichlet() {
        let p = IntervalProblem::flat(1.0, Bc::Dirichlet, Bc::Dirichlet).unwrap();
        let ev = shooting_eigenvalues(&p, &[9.8, 39.4, 88.8], 4000).unwrap();
        for (k, l) in ev.iter().enumerate() {
            let exact = ((k + 1) as f64 * PI).powi(2);
            assert!((l - exact).abs() / exact < 1e-9);
        }
    }

    #[test]
    fn neumann_characteristic_lowest_is_zero() {
        assert!(flat_robin_lowest(0.0, 0.0, 1.0).unwrap().abs() < 1e-10);
    }

    #[test]
    fn robin_one_one_is_negative() {
        // u = cosh(k (x - 1/2)) with k tanh(k / 2) = 1
        let l = flat_robin_lowest(1.0, 1.0, 1.0).unwrap();
        let k = (-l).sqrt();
        assert!((k * (k / 2.0).tanh() - 1.0).abs() < 1e-10);
    }
}
