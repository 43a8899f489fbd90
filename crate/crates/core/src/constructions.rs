//! Greedy sign constructions with exact certificates, profile builders and the
//! periodic trigonometric integral.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{ConformalJetMetric, Domain, Tensor};
use crate::heat_content::{leading_content, BoundaryCondition, BoundaryJetData};
use crate::heat_trace::{leading_trace_global, leading_trace_local};
use crate::jets::{signed_power_series, Jet};
use crate::numerics::{factorial_q, int, rat, Rational, Scalar};

/// One index of a greedy run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthEntry {
    pub index: usize,
    pub sign: i8,
    /// Contribution of the new term `sign * 2^-k f^{2k}`.
    pub leading: Scalar,
    /// Value of the target quantity before the new term is added.
    pub remainder: Scalar,
    /// Target quantity with the chosen sign.
    pub value: Scalar,
    /// Target quantity with the rejected sign.
    pub opposite_value: Scalar,
    /// `|leading|`; `|value| >= bound` because the signs agree.
    pub bound: Scalar,
    /// Leading part of the heat invariant built from `value`.
    pub certificate: Scalar,
    pub certificate_bound: Scalar,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub kind: &'static str,
    pub dim: usize,
    /// Linear coefficient of `h''` in the differentiated curvature quantity.
    pub c_m: Scalar,
    pub entries: Vec<GrowthEntry>,
    /// Largest `c` with `|value_k| >= c^k k!` over the run.
    pub growth_constant: f64,
    /// Least-squares slope of `log|value_k| - log k!` against `k`.
    pub growth_slope: f64,
    pub notes: Vec<String>,
}

impl GrowthReport {
    pub fn all_certified(&self) -> bool {
        self.entries.iter().all(|e| e.certified)
    }

    pub fn entry(&self, index: usize) -> Option<&GrowthEntry> {
        self.entries.iter().find(|e| e.index == index)
    }
}

const LOWER_ORDER_NOTE: &str =
    "universal lower-order terms of the leading displays are excluded from the certificates";

fn ln_factorial(k: usize) -> f64 {
    (1..=k).map(|i| (i as f64).ln()).sum()
}

fn fit_growth(entries: &[GrowthEntry]) -> (f64, f64) {
    let pts: Vec<(f64, f64)> = entries
        .iter()
        .filter_map(|e| {
            let v = e.value.to_f64().ok()?.abs();
            (v > 0.0).then(|| (e.index as f64, v.ln() - ln_factorial(e.index)))
        })
        .collect();
    if pts.is_empty() {
        return (0.0, f64::NAN);
    }
    let c = pts
        .iter()
        .map(|(k, y)| (y / k).exp())
        .fold(f64::INFINITY, f64::min);
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { f64::NAN };
    (c, slope)
}

/// Runs the greedy loop over `3..=last`. `eval(eps)` returns the target
/// quantity at index `2 + eps.len()` for the signs `eps` (0 omits the last
/// term); `certify(k, value, eps)` sees the signs committed through `k`.
fn greedy<F, C>(last: usize, mut eval: F, mut certify: C) -> Result<Vec<GrowthEntry>>
where
    F: FnMut(&[i8]) -> Result<Scalar>,
    C: FnMut(usize, &Scalar, &[i8]) -> Result<(Scalar, Scalar)>,
{
    let mut eps: Vec<i8> = Vec::new();
    let mut entries = Vec::new();
    for k in 3..=last {
        let mut trial = eps.clone();
        trial.push(0);
        let remainder = eval(&trial)?;
        *trial.last_mut().expect("nonempty") = 1;
        let plus = eval(&trial)?;
        *trial.last_mut().expect("nonempty") = -1;
        let minus = eval(&trial)?;
        let unit = &plus - &remainder;
        if &remainder - &unit != minus {
            return Err(Error::Structure(format!(
                "index {k}: the new term does not enter linearly"
            )));
        }
        let (sign, value, opposite) = if plus.abs().exact_cmp(&minus.abs()) != Ordering::Less {
            (1i8, plus, minus)
        } else {
            (-1i8, minus, plus)
        };
        let leading = if sign == 1 { unit.clone() } else { -unit.clone() };
        let bound = leading.abs();
        eps.push(sign);
        let (certificate, certificate_bound) = certify(k, &value, &eps)?;
        let certified = value.abs().exact_cmp(&bound) != Ordering::Less
            && certificate.abs().exact_cmp(&certificate_bound) != Ordering::Less;
        entries.push(GrowthEntry {
            index: k,
            sign,
            leading,
            remainder,
            value,
            opposite_value: opposite,
            bound,
            certificate,
            certificate_bound,
            certified,
        });
    }
    Ok(entries)
}

fn check_dim(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "the curvature of a conformal profile vanishes in dimension {m}; need m >= 2"
        )));
    }
    Ok(())
}

fn conformal(m: usize, h: Jet) -> Result<ConformalJetMetric> {
    ConformalJetMetric::new(
        m,
        h,
        Rational::one(),
        Domain::Interval { length: int(1) },
        Scalar::one(),
    )
}

/// Greedy choice of `eps_k` in `h = sum_{k>=3} eps_k 2^-k f^{2k}` so that
/// `Delta^{n-1} tau(P)` of `e^{2h} g_flat` grows without cancellation.
/// Certificate: the leading part of `a_{2n}(P)` against `(3 c_f^2 / 14)^n n!`.
pub fn greedy_conformal_trace(m: usize, nbar_max: usize, f: &Jet) -> Result<GrowthReport> {
    check_dim(m)?;
    if nbar_max < 3 {
        return Err(Error::InvalidArgument("nbar_max must be at least 3".into()));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::InvalidArgument("f must vanish at the base point".into()));
    }
    let c_f = f.derivative_at_base(1)?;
    if c_f.is_zero() {
        return Err(Error::InvalidArgument("df(P) = 0".into()));
    }
    if f.order() < 2 * nbar_max {
        return Err(Error::OrderOverflow {
            needed: 2 * nbar_max,
            available: f.order(),
        });
    }
    let c_m = tau_linear_coefficient(m)?;
    let base = f.base().clone();
    let eval = |eps: &[i8]| -> Result<Scalar> {
        let nbar = 2 + eps.len();
        let ff = f.truncate(2 * nbar);
        let h = signed_power_series(&ff, 3, eps)?;
        let g = conformal(m, h)?;
        let tau = g.curvature_tensors(2 * nbar - 2)?.tau;
        Ok(g.laplacian_iterate(&tau, nbar - 1)?.constant_term().clone())
    };
    let certify = |nbar: usize, _: &Scalar, eps: &[i8]| -> Result<(Scalar, Scalar)> {
        let ff = f.truncate(2 * nbar);
        let g = conformal(m, signed_power_series(&ff, 3, eps)?)?;
        let e = Jet::zero(base.clone(), 2 * nbar);
        let lead = leading_trace_local(&g, &e, nbar)?;
        let bound = (&c_f * &c_f)
            .scale(&rat(3, 14))
            .pow(nbar as u32)
            .scale(&factorial_q(nbar as u64));
        Ok((lead, bound))
    };
    let entries = greedy(nbar_max, eval, certify)?;
    let (growth_constant, growth_slope) = fit_growth(&entries);
    Ok(GrowthReport {
        kind: "conformal-trace",
        dim: m,
        c_m,
        entries,
        growth_constant,
        growth_slope,
        notes: vec![LOWER_ORDER_NOTE.to_string()],
    })
}

/// Coefficient of `h''(P)` in `tau(P)` for `e^{2h} g_flat` with `h` depending on one variable.
pub fn tau_linear_coefficient(m: usize) -> Result<Scalar> {
    let h = Jet::monomial(Rational::zero(), 2, Scalar::ratio(1, 2), 4);
    let g = conformal(m, h)?;
    Ok(g.curvature_tensors(2)?.tau.constant_term().clone())
}

/// Coefficient of `h''(P)` in `rho_mm(P)`.
pub fn rho_mm_linear_coefficient(m: usize) -> Result<Scalar> {
    let h = Jet::monomial(Rational::zero(), 2, Scalar::ratio(1, 2), 4);
    conformal(m, h)?.normal_covariant_derivative(0)
}

/// `h(x) = sum_{nu>=3} eps_nu 2^-nu sin(x)^{2 nu}` as an exact jet at `x = 0`.
pub fn sine_power_profile(eps: &[i8], order: usize) -> Result<Jet> {
    let s = Jet::variable(Rational::zero(), order).sin()?;
    signed_power_series(&s, 3, eps)
}

/// Greedy choice of `eps_nu` so that `rho_mm^{(2l-2)}(0)` of `e^{2h}(dx^2 + g_T)` on
/// `[0, 2 pi] x T^{m-1}` grows without cancellation. Both boundary components
/// carry the same jets because `h` is even and `2 pi`-periodic, so the
/// certificate doubles the single-component leading `beta_{2l}`.
pub fn greedy_conformal_content(m: usize, lbar_max: usize) -> Result<GrowthReport> {
    check_dim(m)?;
    if lbar_max < 3 {
        return Err(Error::InvalidArgument("lbar_max must be at least 3".into()));
    }
    let c_m = rho_mm_linear_coefficient(m)?;
    let vol = Scalar::one();
    let eval = |eps: &[i8]| -> Result<Scalar> {
        let lbar = 2 + eps.len();
        let h = sine_power_profile(eps, 2 * lbar)?;
        if (1..=h.order()).step_by(2).any(|j| !h.coeff(j).is_zero()) {
            return Err(Error::Structure("profile is not even".into()));
        }
        conformal(m, h)?.normal_covariant_derivative(2 * lbar - 2)
    };
    let certify = |lbar: usize, value: &Scalar, _: &[i8]| -> Result<(Scalar, Scalar)> {
        let ell = 2 * lbar;
        let one = Jet::constant(Rational::zero(), Scalar::one(), ell);
        let rho = Jet::monomial(
            Rational::zero(),
            ell - 2,
            value.scale(&factorial_q(ell as u64 - 2).recip()),
            ell,
        );
        let d = BoundaryJetData::new(one.clone(), one)
            .with_rho_mm(rho)
            .with_boundary_volume(vol.clone());
        let lead = leading_content(&d, BoundaryCondition::Dirichlet, ell)?;
        let both = lead.leading()?.scale(&int(2));
        Ok((both, vol.scale(&factorial_q(lbar as u64))))
    };
    let entries = greedy(lbar_max, eval, certify)?;
    let (growth_constant, growth_slope) = fit_growth(&entries);
    Ok(GrowthReport {
        kind: "conformal-content",
        dim: m,
        c_m,
        entries,
        growth_constant,
        growth_slope,
        notes: vec![
            LOWER_ORDER_NOTE.to_string(),
            "the far component at x = 2 pi is accounted for by symmetry, not recomputed".to_string(),
        ],
    })
}

/// `(n/(2n+1)) c_f^{2n} 2^-n n! >= (3 c_f^2 / 14)^n n!`.
pub fn trace_certificate_chain(nbar: usize, c_f: &Rational) -> bool {
    let n = nbar as i64;
    let c2 = c_f * c_f;
    let lhs = rat(n, 2 * n + 1) * c2.pow(n as i32) / int(2).pow(n as i32) * factorial_q(nbar as u64);
    let rhs = (rat(3, 14) * c2).pow(n as i32) * factorial_q(nbar as u64);
    lhs >= rhs
}

/// `(2l-2)/(2l+1) (2 * 4 * ... * 2l) >= (4/14) 2^l l! >= l!`.
pub fn content_closing_chain(lbar: usize) -> bool {
    let l = lbar as i64;
    let even_product: Rational = (1..=l).map(|j| int(2 * j)).product();
    let fact = factorial_q(lbar as u64);
    let a = rat(2 * l - 2, 2 * l + 1) * even_product;
    let b = rat(4, 14) * int(2).pow(l as i32) * &fact;
    a >= b && b >= fact
}

/// `Phi` with `Phi^{(l)}(0) = gamma_l` and every other derivative zero.
pub fn plateau_profile(k: usize, gamma: &BTreeMap<usize, Scalar>, eps_norm: f64) -> Result<Jet> {
    if !(eps_norm > 0.0) {
        return Err(Error::NonPositive(format!("norm bound {eps_norm}")));
    }
    if let Some((&l, _)) = gamma.iter().next() {
        if l < k {
            return Err(Error::InvalidArgument(format!(
                "derivative {l} is below the plateau order {k}"
            )));
        }
    }
    let order = gamma.keys().next_back().copied().unwrap_or(k).max(k);
    let mut c = vec![Scalar::zero(); order + 1];
    for (&l, g) in gamma {
        c[l] = g.scale(&factorial_q(l as u64).recip());
    }
    Ok(Jet::new(Rational::zero(), c))
}

/// `f(x) = eps' cos(a x)` on `[0, 1]` with large `k`-th derivative energy and small `C^{k-1}` size.
#[derive(Clone, Debug, PartialEq)]
pub struct BumpProfile {
    pub k: usize,
    pub eps_prime: f64,
    pub frequency: f64,
    /// `int_0^1 |d^k f|^2` by composite Simpson quadrature.
    pub achieved: f64,
    /// `max_{j<k} sup |d^j f|`.
    pub norm_proxy: f64,
    pub grid: Vec<(f64, f64)>,
}

impl BumpProfile {
    pub fn eval(&self, x: f64) -> f64 {
        self.eps_prime * (self.frequency * x).cos()
    }
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

pub fn bump_energy_profile(k: usize, c: f64, eps: f64) -> Result<BumpProfile> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if !(c > 0.0) || !(eps > 0.0) {
        return Err(Error::NonPositive(format!("C = {c}, eps = {eps}")));
    }
    // eps' = eps a^{-(k-1)} / 2 gives energy about eps^2 a^2 / 8 on whole periods
    let a_min = (8.0 * c).sqrt() / eps;
    let mut periods = (a_min / (2.0 * PI)).ceil().max(1.0);
    loop {
        let a = 2.0 * PI * periods;
        let eps_prime = eps * a.powi(-(k as i32 - 1)) / 2.0;
        let dk = |x: f64| eps_prime * a.powi(k as i32) * (a * x + k as f64 * PI / 2.0).cos();
        let n = (64.0 * periods) as usize + 64;
        let achieved = simpson(|x| dk(x).powi(2), 0.0, 1.0, n);
        let norm_proxy = (0..k).map(|j| eps_prime * a.powi(j as i32)).fold(0.0, f64::max);
        if achieved >= c && norm_proxy < eps {
            let grid = (0..=200)
                .map(|i| {
                    let x = i as f64 / 200.0;
                    (x, eps_prime * (a * x).cos())
                })
                .collect();
            return Ok(BumpProfile {
                k,
                eps_prime,
                frequency: a,
                achieved,
                norm_proxy,
                grid,
            });
        }
        periods *= 2.0;
    }
}

/// Finite form of the top-jet lower bound for conformal growth.
///
/// With `f = lower + s x^mu / mu!` on the flat torus, `|nabla^{mu-2} tau|^2(P)`
/// and the global leading integrand are exact quadratics in `s = f^{(mu)}(P)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintCheck {
    pub mu: usize,
    pub dim: usize,
    /// `[c0, c1, c2]` with `|nabla^{mu-2} tau|^2(P) = c0 + c1 s + c2 s^2`.
    pub tau_norm: [Scalar; 3],
    /// Same expansion of the global leading integrand with `E = Omega = 0`.
    pub integrand: [Scalar; 3],
    /// Smallest `C` with `|nabla^{mu-2} tau|^2 >= s^2 - C` for every real `s`.
    pub constant: f64,
    /// Both expansions reproduce the direct evaluation at extra sample points.
    pub quadratic_verified: bool,
    pub holds: bool,
}

fn quadratic_in_top_jet<F>(lower: &Jet, mu: usize, eval: F) -> Result<([Scalar; 3], bool)>
where
    F: Fn(&Jet) -> Result<Scalar>,
{
    let at = |s: i64| -> Result<Scalar> {
        let top = Jet::monomial(lower.base().clone(), mu, Scalar::from_rational(int(s) / factorial_q(mu as u64)), lower.order());
        eval(&lower.add(&top)?)
    };
    let (q0, q1, qm) = (at(0)?, at(1)?, at(-1)?);
    let c2 = (&q1 + &qm).scale(&rat(1, 2)) - &q0;
    let c1 = (&q1 - &qm).scale(&rat(1, 2));
    let predict = |s: i64| &q0 + &c1.scale(&int(s)) + c2.scale(&int(s * s));
    let ok = at(2)? == predict(2) && at(-3)? == predict(-3);
    Ok(([q0, c1, c2], ok))
}

/// Checks `|nabla^{mu-2} tau|^2 >= |d^mu f|^2 - C` at the base point for
/// `e^{2f}` times the flat metric on `T^m`, with `lower` the jet of the
/// previously chosen part of `f`.
pub fn conformal_constraint_check(mu: usize, m: usize, lower: &Jet) -> Result<ConstraintCheck> {
    check_dim(m)?;
    if mu < 3 {
        return Err(Error::InvalidArgument(format!("mu must be at least 3, got {mu}")));
    }
    if lower.order() < mu {
        return Err(Error::OrderOverflow { needed: mu, available: lower.order() });
    }
    let metric = |f: &Jet| {
        ConformalJetMetric::new(m, f.clone(), Rational::one(), Domain::Circle { length: int(1) }, Scalar::one())
    };
    let (tau_norm, ok_tau) = quadratic_in_top_jet(lower, mu, |f| {
        let g = metric(f)?;
        let tau = g.curvature_tensors(f.order() - 2)?.tau;
        g.nabla_norm_squared(&Tensor::scalar(m, tau), mu - 2)
    })?;
    let zero = Jet::zero(lower.base().clone(), lower.order());
    let (integrand, ok_int) =
        quadratic_in_top_jet(lower, mu, |f| leading_trace_global(&metric(f)?, &zero, None, mu))?;

    let [c0, c1, c2] = &tau_norm;
    let excess = c2 - &Scalar::one();
    let constant = match excess.signum() {
        Ordering::Greater => {
            let (b, a) = (c1.to_f64()?, excess.to_f64()?);
            b * b / (4.0 * a) - c0.to_f64()?
        }
        Ordering::Equal if c1.is_zero() => -c0.to_f64()?,
        _ => f64::INFINITY,
    };
    // the tau part alone fixes a lower bound on the s^2 coefficient of the integrand
    let n = mu as i64;
    let d = factorial_q(mu as u64) / factorial_q(2 * mu as u64 + 1) * rat(1, 2);
    let floor = c2.scale(&(d * int(n * n - n - 1)));
    let grows = integrand[2].abs().exact_cmp(&floor) != Ordering::Less && !floor.is_zero();
    let quadratic_verified = ok_tau && ok_int;
    Ok(ConstraintCheck {
        mu,
        dim: m,
        tau_norm,
        integrand,
        constant,
        quadratic_verified,
        holds: quadratic_verified && constant.is_finite() && grows,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrigIntegralReport {
    pub a: i64,
    pub b: i64,
    pub value: f64,
    /// `pi^2`, from the torus average `1/4`.
    pub expected: f64,
    /// The commonly stated value `(2 pi)^2`.
    pub stated: f64,
    pub ratio_to_stated: f64,
    pub note: String,
}

/// `int int_{[-pi, pi]^2} |cos^2(ax) cos^2(by) - sin^2(ax) sin^2(by)|^2` by the
/// periodic trapezoid rule, exact for trigonometric polynomials of degree below the grid size.
pub fn trig_integral_check(a: i64, b: i64) -> Result<TrigIntegralReport> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument("a and b must be nonzero".into()));
    }
    let n = 8 * a.unsigned_abs().max(b.unsigned_abs()) as usize + 16;
    let h = 2.0 * PI / n as f64;
    let (af, bf) = (a as f64, b as f64);
    let xs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let x = -PI + i as f64 * h;
            ((af * x).cos().powi(2), (af * x).sin().powi(2))
        })
        .collect();
    let ys: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let y = -PI + j as f64 * h;
            ((bf * y).cos().powi(2), (bf * y).sin().powi(2))
        })
        .collect();
    let mut sum = 0.0;
    for (cx, sx) in &xs {
        for (cy, sy) in &ys {
            let v = cx * cy - sx * sy;
            sum += v * v;
        }
    }
    let value = sum * h * h;
    let expected = PI * PI;
    let stated = 4.0 * PI * PI;
    Ok(TrigIntegralReport {
        a,
        b,
        value,
        expected,
        stated,
        ratio_to_stated: value / stated,
        note: "the integral equals pi^2, a factor 4 below the stated (2 pi)^2; only positivity and independence of (a, b) are used".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_coefficients() {
        assert_eq!(tau_linear_coefficient(2).unwrap(), Scalar::from_int(-2));
        assert_eq!(tau_linear_coefficient(3).unwrap(), Scalar::from_int(-4));
        assert_eq!(rho_mm_linear_coefficient(2).unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn plateau_round_trip() {
        let g = BTreeMap::from([(4, Scalar::one())]);
        let p = plateau_profile(4, &g, 0.1).unwrap();
        assert_eq!(p, Jet::monomial(Rational::zero(), 4, Scalar::ratio(1, 24), 4));
        let g = BTreeMap::from([(6, Scalar::from_int(3)), (8, Scalar::ratio(-1, 2))]);
        let p = plateau_profile(6, &g, 0.1).unwrap();
        for j in 0..=8 {
            let expected = g.get(&j).cloned().unwrap_or_else(Scalar::zero);
            assert_eq!(p.derivative_at_base(j).unwrap(), expected);
        }
        assert!(plateau_profile(7, &g, 0.1).is_err());
    }

    #[test]
    fn bump_reaches_energy() {
        let b = bump_energy_profile(1, 1.0, 0.1).unwrap();
        assert!(b.achieved >= 1.0 && b.norm_proxy < 0.1);
        let b = bump_energy_profile(3, 5.0, 0.01).unwrap();
        assert!(b.achieved >= 5.0 && b.norm_proxy < 0.01);
    }

    #[test]
    fn chains() {
        for n in 3..=12 {
            assert!(trace_certificate_chain(n, &int(1)));
            assert!(content_closing_chain(n));
        }
    }

    #[test]
    fn trig_value() {
        let r = trig_integral_check(1, 1).unwrap();
        assert!((r.value - PI * PI).abs() < 1e-8);
        assert!((r.ratio_to_stated - 0.25).abs() < 1e-10);
    }
}
