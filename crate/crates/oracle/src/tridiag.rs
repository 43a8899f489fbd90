//! Symmetric tridiagonal eigenproblems: Sturm-count bisection for the
//! eigenvalues, pivoted inverse iteration for the vectors.

use crate::error::{OracleError, Result};

/// Symmetric tridiagonal matrix with diagonal `d` and off-diagonal `e`
/// (`e.len() == d.len() - 1`).
#[derive(Clone, Debug)]
pub struct SymTridiagonal {
    pub d: Vec<f64>,
    pub e: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(d: Vec<f64>, e: Vec<f64>) -> Result<Self> {
        if d.is_empty() || e.len() + 1 != d.len() {
            return Err(OracleError::InvalidInput("tridiagonal shape mismatch".into()));
        }
        if d.iter().chain(e.iter()).any(|x| !x.is_finite()) {
            return Err(OracleError::Indefinite("non-finite matrix entry".into()));
        }
        Ok(SymTridiagonal { d, e })
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.e[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.e[i].abs() } else { 0.0 };
            lo = lo.min(self.d[i] - r);
            hi = hi.max(self.d[i] + r);
        }
        (lo, hi)
    }

    fn norm(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE)
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let tiny = f64::MIN_POSITIVE / f64::EPSILON;
        let mut count = 0;
        let mut q = 0.0;
        for i in 0..self.len() {
            q = if i == 0 { self.d[0] - x } else { self.d[i] - x - self.e[i - 1] * self.e[i - 1] / q };
            if q.abs() < tiny {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `count` smallest eigenvalues in ascending order.
    pub fn lowest_eigenvalues(&self, count: usize) -> Result<Vec<f64>> {
        if count > self.len() {
            return Err(OracleError::InvalidInput(format!(
                "requested {count} eigenvalues of a {}x{} matrix",
                self.len(),
                self.len()
            )));
        }
        let (glo, ghi) = self.gershgorin();
        let abs_floor = f64::EPSILON * f64::EPSILON * self.norm();
        // every Sturm count tightens the brackets of all requested eigenvalues
        let mut lo = vec![glo; count];
        let mut hi = vec![ghi; count];
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            let mut iter = 0;
            while hi[k] - lo[k] > abs_floor.max(2.0 * f64::EPSILON * lo[k].abs().max(hi[k].abs())) {
                let mid = 0.5 * (lo[k] + hi[k]);
                if mid <= lo[k] || mid >= hi[k] {
                    break;
                }
                let c = self.count_below(mid).min(count);
                for h in hi[k..c.max(k)].iter_mut() {
                    *h = h.min(mid);
                }
                for l in lo[c.max(k)..].iter_mut() {
                    *l = l.max(mid);
                }
                iter += 1;
                if iter > 400 {
                    return Err(OracleError::NonConvergence(format!("bisection for eigenvalue {k}")));
                }
            }
            out.push(0.5 * (lo[k] + hi[k]));
        }
        Ok(out)
    }

    /// Unit eigenvector for the eigenvalue `lambda` by inverse iteration.
    pub fn eigenvector(&self, lambda: f64) -> Result<Vec<f64>> {
        let n = self.len();
        let shift = lambda + 16.0 * f64::EPSILON * self.norm().max(lambda.abs());
        let lu = PivotedLu::factor(self, shift);
        let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * ((i as f64) * 0.754_877_666).sin()).collect();
        normalize(&mut x);
        for _ in 0..4 {
            lu.solve(&mut x);
            if x.iter().any(|v| !v.is_finite()) {
                return Err(OracleError::NonConvergence(format!("inverse iteration at {lambda}")));
            }
            normalize(&mut x);
        }
        Ok(x)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.d[i] * x[i];
                if i > 0 {
                    s += self.e[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.e[i] * x[i + 1];
                }
                s
            })
            .collect()
    }
}

fn normalize(x: &mut [f64]) {
    let s = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if s > 0.0 {
        x.iter_mut().for_each(|v| *v /= s);
    }
}

/// LU factorization of `T - shift I` with partial pivoting.
struct PivotedLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swap: Vec<bool>,
}

impl PivotedLu {
    fn factor(t: &SymTridiagonal, shift: f64) -> Self {
        let n = t.len();
        let mut d: Vec<f64> = t.d.iter().map(|x| x - shift).collect();
        let mut dl = t.e.clone();
        let mut du = t.e.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swap = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] != 0.0 {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swap[i] = true;
            }
        }
        let floor = f64::EPSILON * t.norm();
        for v in d.iter_mut() {
            if v.abs() < floor {
                *v = if *v < 0.0 { -floor } else { floor };
            }
        }
        PivotedLu { dl, d, du, du2, swap }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n.saturating_sub(1) {
            if self.swap[i] {
                let temp = b[i] - self.dl[i] * b[i + 1];
                b[i] = b[i + 1];
                b[i + 1] = temp;
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplacian(n: usize) -> SymTridiagonal {
        SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap()
    }

    #[test]
    fn discrete_laplacian_spectrum() {
        let n = 50;
        let t = laplacian(n);
        let ev = t.lowest_eigenvalues(10).unwrap();
        for (k, lam) in ev.iter().enumerate() {
            let theta = (k + 1) as f64 * std::f64::consts::PI / (2.0 * (n + 1) as f64);
            let exact = 4.0 * theta.sin().powi(2);
            assert!((lam - exact).abs() < 1e-13, "{k}: {lam} vs {exact}");
        }
    }

    #[test]
    fn eigenvectors_are_eigenvectors() {
        let n = 40;
        let d: Vec<f64> = (0..n).map(|i| 2.0 + (i as f64 * 0.3).cos()).collect();
        let t = SymTridiagonal::new(d, vec![-1.0; n - 1]).unwrap();
        let ev = t.lowest_eigenvalues(n).unwrap();
        let mut vs = Vec::new();
        for lam in &ev {
            let v = t.eigenvector(*lam).unwrap();
            let tv = t.mul_vec(&v);
            let res: f64 = tv.iter().zip(&v).map(|(a, b)| (a - lam * b).abs()).fold(0.0, f64::max);
            assert!(res < 1e-10);
            vs.push(v);
        }
        for i in 0..n {
            for j in 0..i {
                let dot: f64 = vs[i].iter().zip(&vs[j]).map(|(a, b)| a * b).sum();
                assert!(dot.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn shape_errors() {
        assert!(SymTridiagonal::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(SymTridiagonal::new(vec![f64::NAN], vec![]).is_err());
        assert!(laplacian(3).lowest_eigenvalues(4).is_err());
    }
}
