//! Curvature and boundary geometry of `g = s^2 e^{2h(x)} (dx_1^2 + ... + dx_m^2)`
//! with `h` a jet in the first coordinate, plus the Bochner rewriting of
//! one-dimensional operators `D = -(g11 d^2 + A d + B)`.
//!
//! Tensor entries are jets in `x = x_1`; derivatives in the other coordinates
//! vanish identically, so every formula is a finite index loop.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::numerics::{int, rat, rational_pow, Rational, Scalar};

/// Where the profile variable lives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    /// `[0, length]` in `x`, times the cross-section torus.
    Interval { length: Rational },
    /// `x` periodic with the given period.
    Circle { length: Rational },
}

#[derive(Clone, Debug)]
pub struct ConformalJetMetric {
    dim: usize,
    h: Jet,
    scale: Rational,
    domain: Domain,
    cross_section_volume: Scalar,
}

/// All-covariant tensor with jet entries, indices flattened big-endian in base `m`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub m: usize,
    pub rank: usize,
    pub comps: Vec<Jet>,
}

impl Tensor {
    pub fn index(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.m + i)
    }

    pub fn get(&self, idx: &[usize]) -> &Jet {
        &self.comps[self.index(idx)]
    }

    pub fn multi_index(m: usize, rank: usize, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; rank];
        for slot in (0..rank).rev() {
            idx[slot] = flat % m;
            flat /= m;
        }
        idx
    }

    pub fn scalar(m: usize, f: Jet) -> Tensor {
        Tensor {
            m,
            rank: 0,
            comps: vec![f],
        }
    }
}

#[derive(Clone, Debug)]
pub struct CurvatureTensors {
    /// `R_{ijkl} = g(R(d_i, d_j) d_k, d_l)`, so `R_{ijji} > 0` on spheres.
    pub riemann: Tensor,
    /// `rho_{jk} = sum_i R_{ijki}` (contracted with the inverse metric).
    pub ricci: Tensor,
    pub tau: Jet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryGeometry {
    pub l_trace: Scalar,
    pub l_square_trace: Scalar,
    pub boundary_volume: Scalar,
}

impl ConformalJetMetric {
    /// `h` must vanish at its base point; a constant conformal factor is
    /// carried by `scale` so that `e^{h}` stays exact.
    pub fn new(
        dim: usize,
        h: Jet,
        scale: Rational,
        domain: Domain,
        cross_section_volume: Scalar,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if !h.constant_term().is_zero() {
            return Err(Error::Transcendental("conformal factor", h.constant_term().to_string()));
        }
        if h.coeffs().iter().any(|c| !c.is_rational()) {
            return Err(Error::InvalidArgument("profile h must have rational coefficients".into()));
        }
        if !scale.is_positive() {
            return Err(Error::NonPositive(format!("scale {scale}")));
        }
        Ok(ConformalJetMetric {
            dim,
            h,
            scale,
            domain,
            cross_section_volume,
        })
    }

    /// `e^{2h}` times the flat metric on `[0, 1] x T^{m-1}` with unit cross-section,
    /// based at `x = 0`.
    pub fn on_unit_interval(dim: usize, h: Jet) -> Result<Self> {
        ConformalJetMetric::new(
            dim,
            h,
            Rational::one(),
            Domain::Interval {
                length: Rational::one(),
            },
            Scalar::one(),
        )
    }

    pub fn flat(dim: usize, order: usize) -> Self {
        ConformalJetMetric::on_unit_interval(dim, Jet::zero(Rational::zero(), order))
            .expect("flat metric is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn profile(&self) -> &Jet {
        &self.h
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn cross_section_volume(&self) -> &Scalar {
        &self.cross_section_volume
    }

    /// The homothetic metric `c^2 g`.
    pub fn rescaled(&self, c: &Rational) -> Result<Self> {
        ConformalJetMetric::new(
            self.dim,
            self.h.clone(),
            &self.scale * c,
            self.domain.clone(),
            self.cross_section_volume.clone(),
        )
    }

    fn base(&self) -> &Rational {
        self.h.base()
    }

    fn zero_jet(&self, order: usize) -> Jet {
        Jet::zero(self.base().clone(), order)
    }

    /// `d/dx_i` of an x-dependent jet.
    fn partial(&self, i: usize, f: &Jet) -> Result<Jet> {
        if i == 0 {
            f.derivative(1)
        } else {
            Ok(self.zero_jet(f.order().saturating_sub(1)))
        }
    }

    /// `s^2 e^{2h}`.
    pub fn conformal_factor(&self) -> Result<Jet> {
        Ok(self
            .h
            .scale_q(&int(2))
            .exp()?
            .scale_q(&(&self.scale * &self.scale)))
    }

    pub fn metric(&self) -> Result<Tensor> {
        let f = self.conformal_factor()?;
        let m = self.dim;
        let comps = (0..m * m)
            .map(|flat| {
                if flat / m == flat % m {
                    f.clone()
                } else {
                    self.zero_jet(f.order())
                }
            })
            .collect();
        Ok(Tensor { m, rank: 2, comps })
    }

    pub fn inverse_metric(&self) -> Result<Tensor> {
        let f = self
            .h
            .scale_q(&int(-2))
            .exp()?
            .scale_q(&(&self.scale * &self.scale).recip());
        let m = self.dim;
        let comps = (0..m * m)
            .map(|flat| {
                if flat / m == flat % m {
                    f.clone()
                } else {
                    self.zero_jet(f.order())
                }
            })
            .collect();
        Ok(Tensor { m, rank: 2, comps })
    }

    /// `Gamma^k_{ij}` stored at flat index `[k, i, j]`.
    pub fn christoffel(&self) -> Result<Tensor> {
        let m = self.dim;
        let g = self.metric()?;
        let ginv = self.inverse_metric()?;
        let dg: Vec<Vec<Jet>> = (0..m)
            .map(|l| {
                (0..m * m)
                    .map(|flat| self.partial(l, &g.comps[flat]))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let order = self.h.order().saturating_sub(1);
        let mut comps = Vec::with_capacity(m * m * m);
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    let mut acc = self.zero_jet(order);
                    for l in 0..m {
                        let gkl = ginv.get(&[k, l]);
                        if gkl.is_zero() {
                            continue;
                        }
                        let t = dg[i][j * m + l]
                            .add(&dg[j][i * m + l])?
                            .sub(&dg[l][i * m + j])?;
                        if t.is_zero() {
                            continue;
                        }
                        acc = acc.add(&gkl.mul(&t)?)?;
                    }
                    comps.push(acc.scale_q(&rat(1, 2)));
                }
            }
        }
        Ok(Tensor { m, rank: 3, comps })
    }

    pub fn curvature_tensors(&self, order: usize) -> Result<CurvatureTensors> {
        if order + 2 > self.h.order() {
            return Err(Error::OrderOverflow {
                needed: order + 2,
                available: self.h.order(),
            });
        }
        let m = self.dim;
        let gam = self.christoffel()?;
        let g = self.metric()?;
        let ginv = self.inverse_metric()?;
        let out_order = self.h.order() - 2;
        // R^l_{ijk} = d_i G^l_{jk} - d_j G^l_{ik} + G^l_{ip} G^p_{jk} - G^l_{jp} G^p_{ik}
        let mut rup = vec![self.zero_jet(out_order); m * m * m * m];
        for l in 0..m {
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        let mut acc = self
                            .partial(i, gam.get(&[l, j, k]))?
                            .sub(&self.partial(j, gam.get(&[l, i, k]))?)?;
                        for p in 0..m {
                            let a = gam.get(&[l, i, p]);
                            let b = gam.get(&[p, j, k]);
                            if !a.is_zero() && !b.is_zero() {
                                acc = acc.add(&a.mul(b)?)?;
                            }
                            let c = gam.get(&[l, j, p]);
                            let d = gam.get(&[p, i, k]);
                            if !c.is_zero() && !d.is_zero() {
                                acc = acc.sub(&c.mul(d)?)?;
                            }
                        }
                        rup[((l * m + i) * m + j) * m + k] = acc;
                    }
                }
            }
        }
        let mut riemann = vec![self.zero_jet(out_order); m * m * m * m];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        let mut acc = self.zero_jet(out_order);
                        for p in 0..m {
                            let glp = g.get(&[l, p]);
                            let r = &rup[((p * m + i) * m + j) * m + k];
                            if !glp.is_zero() && !r.is_zero() {
                                acc = acc.add(&glp.mul(r)?)?;
                            }
                        }
                        riemann[((i * m + j) * m + k) * m + l] = acc;
                    }
                }
            }
        }
        let mut ricci = vec![self.zero_jet(out_order); m * m];
        for j in 0..m {
            for k in 0..m {
                let mut acc = self.zero_jet(out_order);
                for i in 0..m {
                    let r = &rup[((i * m + i) * m + j) * m + k];
                    if !r.is_zero() {
                        acc = acc.add(r)?;
                    }
                }
                ricci[j * m + k] = acc;
            }
        }
        let mut tau = self.zero_jet(out_order);
        for j in 0..m {
            for k in 0..m {
                let gjk = ginv.get(&[j, k]);
                if !gjk.is_zero() {
                    tau = tau.add(&gjk.mul(&ricci[j * m + k])?)?;
                }
            }
        }
        let trunc = |t: Vec<Jet>| t.into_iter().map(|j| j.truncate(order)).collect();
        Ok(CurvatureTensors {
            riemann: Tensor {
                m,
                rank: 4,
                comps: trunc(riemann),
            },
            ricci: Tensor {
                m,
                rank: 2,
                comps: trunc(ricci),
            },
            tau: tau.truncate(order),
        })
    }

    /// `(nabla T)_{j_1..j_r i} = d_i T_J - sum_s Gamma^p_{i j_s} T_{J[s -> p]}`.
    pub fn covariant_derivative(&self, t: &Tensor, gam: &Tensor) -> Result<Tensor> {
        let m = self.dim;
        let rank = t.rank + 1;
        let n_out = m.pow(rank as u32);
        let mut comps = Vec::with_capacity(n_out);
        for flat in 0..n_out {
            let idx = Tensor::multi_index(m, rank, flat);
            let (tidx, i) = (&idx[..t.rank], idx[t.rank]);
            comps.push(self.covariant_component(t, gam, tidx, i)?);
        }
        Ok(Tensor { m, rank, comps })
    }

    fn covariant_component(&self, t: &Tensor, gam: &Tensor, tidx: &[usize], i: usize) -> Result<Jet> {
        let mut acc = self.partial(i, t.get(tidx))?;
        let mut j = tidx.to_vec();
        for s in 0..tidx.len() {
            for p in 0..self.dim {
                let c = gam.get(&[p, i, tidx[s]]);
                if c.is_zero() {
                    continue;
                }
                j[s] = p;
                let v = t.get(&j);
                if !v.is_zero() {
                    acc = acc.sub(&c.mul(v)?)?;
                }
            }
            j[s] = tidx[s];
        }
        Ok(acc)
    }

    /// `rho_mm^{(k)}` at the base point: the k-th covariant derivative of the
    /// Ricci tensor, contracted `k + 2` times with the unit inward normal.
    pub fn normal_covariant_derivative(&self, k: usize) -> Result<Scalar> {
        if self.h.order() < k + 2 {
            return Err(Error::OrderOverflow {
                needed: k + 2,
                available: self.h.order(),
            });
        }
        let sign = self.inward_sign()?;
        let gam = self.christoffel()?;
        let curv = self.curvature_tensors(self.h.order() - 2)?;
        let mut lazy = LazyCovariant::new(self, &curv.ricci, &gam);
        let idx = vec![0usize; k + 2];
        let v = lazy.component(&idx)?;
        let c = v.constant_term().clone();
        // unit normal = sign * s^{-1} e^{-h} d_x and e^{h(base)} = 1
        let f = rational_pow(&self.scale, -((k + 2) as i64))? * int(sign.pow(k as u32));
        Ok(c.scale(&f))
    }

    /// +1 when the inward normal is `+d_x` at the base point, -1 when `-d_x`.
    fn inward_sign(&self) -> Result<i64> {
        match &self.domain {
            Domain::Interval { length } => {
                if self.base().is_zero() {
                    Ok(1)
                } else if self.base() == length {
                    Ok(-1)
                } else {
                    Err(Error::InvalidArgument(format!(
                        "base point {} is not a boundary point of [0, {length}]",
                        self.base()
                    )))
                }
            }
            Domain::Circle { .. } => Err(Error::InvalidArgument(
                "closed manifold has no boundary".into(),
            )),
        }
    }

    /// `Delta f = -G^{-1/2} d_i (G^{1/2} g^{ij} d_j f)`, nonnegative on flat space.
    pub fn laplacian(&self, f: &Jet) -> Result<Jet> {
        let m = self.dim;
        let mh = self.h.scale_q(&int(m as i64));
        let sqrt_det = mh.exp()?.scale_q(&rational_pow(&self.scale, m as i64)?);
        let inv_sqrt_det = mh.neg().exp()?.scale_q(&rational_pow(&self.scale, -(m as i64))?);
        let ginv = self.inverse_metric()?;
        let mut acc = self.zero_jet(f.order().saturating_sub(2));
        for i in 0..m {
            for j in 0..m {
                let gij = ginv.get(&[i, j]);
                if gij.is_zero() {
                    continue;
                }
                let flux = sqrt_det.mul(gij)?.mul(&self.partial(j, f)?)?;
                acc = acc.add(&self.partial(i, &flux)?)?;
            }
        }
        Ok(inv_sqrt_det.mul(&acc)?.neg())
    }

    pub fn laplacian_iterate(&self, f: &Jet, k: usize) -> Result<Jet> {
        if f.order() < 2 * k {
            return Err(Error::OrderOverflow {
                needed: 2 * k,
                available: f.order(),
            });
        }
        let mut cur = f.clone();
        for _ in 0..k {
            cur = self.laplacian(&cur)?;
        }
        Ok(cur)
    }

    /// Second fundamental form traces and boundary volume at the base point.
    /// `L_ab = g(nabla_{d_a} d_b, nu)` with `nu` the unit inward normal.
    pub fn boundary_geometry(&self) -> Result<BoundaryGeometry> {
        let sign = self.inward_sign()?;
        let m = self.dim;
        let gam = self.christoffel()?;
        let g0 = self.metric()?.get(&[0, 0]).constant_term().clone();
        let ginv0 = self.inverse_metric()?.get(&[0, 0]).constant_term().clone();
        // nu^0 = sign / s at the base point
        let nu0 = Scalar::from_rational(int(sign) / &self.scale);
        let tangential = 1..m;
        let mut l = vec![vec![Scalar::zero(); m]; m];
        for a in tangential.clone() {
            for b in tangential.clone() {
                l[a][b] = gam.get(&[0, a, b]).constant_term() * &g0 * &nu0;
            }
        }
        let mut trace = Scalar::zero();
        let mut square = Scalar::zero();
        for a in tangential.clone() {
            for b in tangential.clone() {
                if a == b {
                    trace += &ginv0 * &l[a][b];
                }
                square += &ginv0 * &ginv0 * &l[a][b] * &l[a][b];
            }
        }
        let vol = self
            .cross_section_volume
            .scale(&rational_pow(&self.scale, (m - 1) as i64)?);
        Ok(BoundaryGeometry {
            l_trace: trace,
            l_square_trace: square,
            boundary_volume: vol,
        })
    }

    /// `<nabla^k S, nabla^k T>` at the base point for the diagonal conformal metric.
    pub fn nabla_inner(&self, s: &Tensor, t: &Tensor, k: usize) -> Result<Scalar> {
        if s.rank != t.rank || s.m != self.dim || t.m != self.dim {
            return Err(Error::InvalidArgument("tensor shapes differ".into()));
        }
        let gam = self.christoffel()?;
        let mut a = s.clone();
        let mut b = t.clone();
        for _ in 0..k {
            a = self.covariant_derivative(&a, &gam)?;
            b = self.covariant_derivative(&b, &gam)?;
        }
        let ginv0 = self.inverse_metric()?.get(&[0, 0]).constant_term().clone();
        let w = ginv0.pow(a.rank as u32);
        let mut acc = Scalar::zero();
        for (x, y) in a.comps.iter().zip(&b.comps) {
            let (x, y) = (x.constant_term(), y.constant_term());
            if !x.is_zero() && !y.is_zero() {
                acc += x * y;
            }
        }
        Ok(&acc * &w)
    }

    /// `|nabla^k T|^2` at the base point.
    pub fn nabla_norm_squared(&self, t: &Tensor, k: usize) -> Result<Scalar> {
        self.nabla_inner(t, t, k)
    }
}

/// Components of iterated covariant derivatives, computed on demand.
pub struct LazyCovariant<'a> {
    metric: &'a ConformalJetMetric,
    base: &'a Tensor,
    gam: &'a Tensor,
    memo: HashMap<Vec<usize>, Jet>,
}

impl<'a> LazyCovariant<'a> {
    pub fn new(metric: &'a ConformalJetMetric, base: &'a Tensor, gam: &'a Tensor) -> Self {
        LazyCovariant {
            metric,
            base,
            gam,
            memo: HashMap::new(),
        }
    }

    /// Component with `idx.len() - base.rank` derivative slots appended.
    pub fn component(&mut self, idx: &[usize]) -> Result<Jet> {
        if idx.len() == self.base.rank {
            return Ok(self.base.get(idx).clone());
        }
        if let Some(v) = self.memo.get(idx) {
            return Ok(v.clone());
        }
        let r = idx.len() - 1;
        let (tidx, i) = (&idx[..r], idx[r]);
        let mut acc = self.metric.partial(i, &self.component(tidx)?)?;
        let mut j = tidx.to_vec();
        for s in 0..r {
            for p in 0..self.metric.dim {
                let c = self.gam.get(&[p, i, tidx[s]]).clone();
                if c.is_zero() {
                    continue;
                }
                j[s] = p;
                let v = self.component(&j)?;
                if !v.is_zero() {
                    acc = acc.sub(&c.mul(&v)?)?;
                }
            }
            j[s] = tidx[s];
        }
        self.memo.insert(idx.to_vec(), acc.clone());
        Ok(acc)
    }
}

/// `D = -(g11 d^2 + A d + B)` on a line, with jets at a common base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplaceOp1D {
    pub g11: Jet,
    pub a: Jet,
    pub b: Jet,
}

/// Connection one-form component and endomorphism of the Bochner form
/// `D = -(g^{11} nabla nabla + E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BochnerData {
    pub omega: Jet,
    pub e: Jet,
}

impl LaplaceOp1D {
    pub fn new(g11: Jet, a: Jet, b: Jet) -> Result<Self> {
        let g0 = g11
            .constant_term()
            .as_rational()
            .ok_or_else(|| Error::NonPositive(format!("g11(base) = {}", g11.constant_term())))?;
        if !g0.is_positive() {
            return Err(Error::NonPositive(format!("g11(base) = {g0}")));
        }
        if g11.base() != a.base() || g11.base() != b.base() {
            return Err(Error::BaseMismatch(g11.base().to_string(), a.base().to_string()));
        }
        Ok(LaplaceOp1D { g11, a, b })
    }

    /// `-d^2 - B`.
    pub fn schrodinger(b: Jet) -> Self {
        let base = b.base().clone();
        let n = b.order();
        LaplaceOp1D {
            g11: Jet::constant(base.clone(), Scalar::one(), n),
            a: Jet::zero(base, n),
            b,
        }
    }

    pub fn order(&self) -> usize {
        self.g11.order().min(self.a.order()).min(self.b.order())
    }

    /// The operator of the metric `c^2 g`: every coefficient divides by `c^2`.
    pub fn rescaled(&self, c: &Rational) -> Self {
        let f = (c * c).recip();
        LaplaceOp1D {
            g11: self.g11.scale_q(&f),
            a: self.a.scale_q(&f),
            b: self.b.scale_q(&f),
        }
    }

    /// Formal adjoint with respect to the Riemannian density `g11^{-1/2} dx`
    /// when `g11` is constant, i.e. `-(g d^2 - A d + B - A')`.
    pub fn flat_adjoint(&self) -> Result<Self> {
        if self.g11.coeffs()[1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::Unsupported("adjoint for non-constant g11".into()));
        }
        let n = self.order().saturating_sub(1);
        Ok(LaplaceOp1D {
            g11: self.g11.truncate(n),
            a: self.a.neg().truncate(n),
            b: self.b.sub(&self.a.derivative(1)?)?,
        })
    }
}

/// One-variable specialisation of the Bochner formulas:
/// `omega = (A + g Gamma) / (2 g)` with `Gamma = g^{11} Gamma_{11}^1 = -g'/2`, and
/// `E = B - g (omega' + omega^2 - omega Gamma_{11}^1)`.
pub fn bochner_transform(op: &LaplaceOp1D) -> Result<BochnerData> {
    if op.order() < 2 {
        return Err(Error::OrderOverflow {
            needed: 2,
            available: op.order(),
        });
    }
    let g = &op.g11;
    let dg = g.derivative(1)?;
    let ginv = g.reciprocal()?;
    let contracted = dg.scale_q(&rat(-1, 2));
    let omega = op.a.add(&contracted)?.mul(&ginv)?.scale_q(&rat(1, 2));
    let gamma111 = dg.mul(&ginv)?.scale_q(&rat(-1, 2));
    let inner = omega
        .derivative(1)?
        .add(&omega.mul(&omega)?)?
        .sub(&omega.mul(&gamma111)?)?;
    let e = op.b.sub(&g.mul(&inner)?)?;
    Ok(BochnerData { omega, e })
}

/// Inverse of [`bochner_transform`].
pub fn bochner_reconstruct(g11: &Jet, data: &BochnerData) -> Result<LaplaceOp1D> {
    let g = g11;
    let dg = g.derivative(1)?;
    let w = &data.omega;
    let a = g.mul(w)?.scale_q(&int(2)).add(&dg.scale_q(&rat(1, 2)))?;
    let b = data
        .e
        .add(&g.mul(&w.derivative(1)?)?)?
        .add(&g.mul(&w.mul(w)?)?)?
        .add(&w.mul(&dg)?.scale_q(&rat(1, 2)))?;
    LaplaceOp1D::new(g.clone(), a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_with_second(order: usize, coeffs: &[(usize, Rational)]) -> Jet {
        let mut c = vec![Scalar::zero(); order + 1];
        for (k, q) in coeffs {
            c[*k] = Scalar::from_rational(q.clone());
        }
        Jet::new(Rational::zero(), c)
    }

    #[test]
    fn flat_metric_has_no_curvature() {
        let g = ConformalJetMetric::flat(3, 6);
        let c = g.curvature_tensors(4).unwrap();
        assert!(c.riemann.comps.iter().all(Jet::is_zero));
        assert!(c.tau.is_zero());
        assert!(g.normal_covariant_derivative(2).unwrap().is_zero());
    }

    #[test]
    fn two_dimensional_scalar_curvature() {
        // h''(0) = 1 means the x^2 coefficient is 1/2
        let h = h_with_second(6, &[(2, rat(1, 2))]);
        let g = ConformalJetMetric::on_unit_interval(2, h).unwrap();
        let c = g.curvature_tensors(4).unwrap();
        assert_eq!(c.tau.constant_term(), &Scalar::from_int(-2));
        assert_eq!(g.normal_covariant_derivative(0).unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn three_dimensional_ricci() {
        let h = h_with_second(6, &[(2, rat(1, 2))]);
        let g = ConformalJetMetric::on_unit_interval(3, h).unwrap();
        let c = g.curvature_tensors(4).unwrap();
        assert_eq!(c.ricci.get(&[0, 0]).constant_term(), &Scalar::from_int(-2));
    }

    #[test]
    fn laplacian_examples() {
        let g = ConformalJetMetric::flat(2, 6);
        let base = Rational::zero();
        let c = Jet::constant(base.clone(), Scalar::from_int(5), 6);
        assert!(g.laplacian(&c).unwrap().is_zero());
        let x2 = Jet::monomial(base.clone(), 2, Scalar::one(), 6);
        assert_eq!(g.laplacian(&x2).unwrap().coeff(0), Scalar::from_int(-2));
        let x4 = Jet::monomial(base, 4, Scalar::one(), 6);
        assert_eq!(g.laplacian_iterate(&x4, 2).unwrap().coeff(0), Scalar::from_int(24));
    }

    #[test]
    fn boundary_examples() {
        let flat = ConformalJetMetric::flat(3, 4).boundary_geometry().unwrap();
        assert!(flat.l_trace.is_zero());
        assert_eq!(flat.boundary_volume, Scalar::one());
        let h = h_with_second(4, &[(1, rat(3, 1))]);
        let g = ConformalJetMetric::on_unit_interval(2, h).unwrap();
        assert_eq!(g.boundary_geometry().unwrap().l_trace, Scalar::from_int(-3));
        let circle = ConformalJetMetric::new(
            2,
            Jet::zero(Rational::zero(), 3),
            Rational::one(),
            Domain::Circle { length: int(1) },
            Scalar::one(),
        )
        .unwrap();
        assert!(circle.boundary_geometry().is_err());
    }

    #[test]
    fn bochner_examples() {
        let z = Rational::zero();
        let n = 6;
        let one = Jet::constant(z.clone(), Scalar::one(), n);
        let zero = Jet::zero(z.clone(), n);
        let d = bochner_transform(&LaplaceOp1D::new(one.clone(), zero.clone(), zero.clone()).unwrap())
            .unwrap();
        assert!(d.omega.is_zero() && d.e.is_zero());
        let bq = Jet::from_rationals(z.clone(), (0..=n).map(|k| rat(k as i64 + 1, 3)).collect());
        let d = bochner_transform(&LaplaceOp1D::schrodinger(bq.clone())).unwrap();
        assert!(d.omega.is_zero());
        assert_eq!(d.e, bq.truncate(d.e.order()));
        // -(d^2 + 2b d + c): omega = b, E = c - b' - b^2
        let b = Jet::from_rationals(z.clone(), (0..=n).map(|k| rat(1, k as i64 + 2)).collect());
        let c = Jet::from_rationals(z, (0..=n).map(|k| rat(k as i64, 5)).collect());
        let op = LaplaceOp1D::new(one, b.scale_q(&int(2)), c.clone()).unwrap();
        let d = bochner_transform(&op).unwrap();
        assert_eq!(d.omega, b.truncate(d.omega.order()));
        let expect = c.sub(&b.derivative(1).unwrap()).unwrap().sub(&b.mul(&b).unwrap()).unwrap();
        assert_eq!(d.e, expect.truncate(d.e.order()));
    }
}
