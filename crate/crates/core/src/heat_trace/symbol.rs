//! Resolvent symbol recursion for `D = -(g d^2 + A d + B)` in one variable.
//!
//! The sums stored here are the real symbols `s_n` with `r_n = (-i)^n s_n`:
//! writing `p_k = (-i)^{2-k} q_k` with `q_2 = g xi^2`, `q_1 = A xi`, `q_0 = B`
//! turns the parametrix recursion into
//! `s_n = -r_0 sum (1/alpha!) d_xi^alpha q_k d_x^alpha s_j` over
//! `alpha + j + 2 - k = n`, `j < n`, with purely real coefficients.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::LaplaceOp1D;
use crate::jets::Jet;
use crate::numerics::{factorial, factorial_q, int, rational_sqrt, Rational, Scalar};

use super::trig::TrigPoly;

/// Coefficient functions the recursion can run over.
pub trait SymbolCoefficient: Clone + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Result<Self>;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn scale_q(&self, q: &Rational) -> Self;
    fn dx(&self) -> Result<Self>;
}

impl SymbolCoefficient for Jet {
    fn zero_like(&self) -> Self {
        Jet::zero(self.base().clone(), self.order())
    }
    fn one_like(&self) -> Self {
        Jet::constant(self.base().clone(), Scalar::one(), self.order())
    }
    fn is_zero(&self) -> bool {
        Jet::is_zero(self)
    }
    fn add(&self, other: &Self) -> Result<Self> {
        Jet::add(self, other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        Jet::mul(self, other)
    }
    fn scale_q(&self, q: &Rational) -> Self {
        Jet::scale_q(self, q)
    }
    fn dx(&self) -> Result<Self> {
        self.derivative(1)
    }
}

impl SymbolCoefficient for TrigPoly {
    fn zero_like(&self) -> Self {
        TrigPoly::zero(self.omega().clone())
    }
    fn one_like(&self) -> Self {
        TrigPoly::constant(self.omega().clone(), Rational::one())
    }
    fn is_zero(&self) -> bool {
        TrigPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Result<Self> {
        TrigPoly::add(self, other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        TrigPoly::mul(self, other)
    }
    fn scale_q(&self, q: &Rational) -> Self {
        TrigPoly::scale_q(self, q)
    }
    fn dx(&self) -> Result<Self> {
        Ok(self.derivative())
    }
}

/// An operator whose coefficients live in a [`SymbolCoefficient`] ring.
pub trait SymbolOperator {
    type Coef: SymbolCoefficient;
    fn g11(&self) -> &Self::Coef;
    fn a(&self) -> &Self::Coef;
    fn b(&self) -> &Self::Coef;
    /// `(g^{11})^{-k}`.
    fn g11_inverse_power(&self, k: usize) -> Result<Self::Coef>;
    /// Fails when the coefficients cannot support `s_n`.
    fn check_degree(&self, n: usize) -> Result<()>;
}

impl SymbolOperator for LaplaceOp1D {
    type Coef = Jet;
    fn g11(&self) -> &Jet {
        &self.g11
    }
    fn a(&self) -> &Jet {
        &self.a
    }
    fn b(&self) -> &Jet {
        &self.b
    }
    fn g11_inverse_power(&self, k: usize) -> Result<Jet> {
        self.g11.reciprocal()?.powi(k as u32)
    }
    fn check_degree(&self, n: usize) -> Result<()> {
        if self.order() < n + 2 {
            return Err(Error::OrderOverflow {
                needed: n + 2,
                available: self.order(),
            });
        }
        Ok(())
    }
}

/// `D = -(g d^2 + A d + B)` on the circle of period `2 pi / w`, constant `g`,
/// trigonometric-polynomial `A` and `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleOperator {
    g11: TrigPoly,
    a: TrigPoly,
    b: TrigPoly,
    sqrt_g11: Rational,
}

impl CircleOperator {
    pub fn new(g11: Rational, a: TrigPoly, b: TrigPoly) -> Result<Self> {
        if a.omega() != b.omega() {
            return Err(Error::InvalidArgument("A and B have different periods".into()));
        }
        if g11 <= Rational::zero() {
            return Err(Error::NonPositive(format!("g11 = {g11}")));
        }
        let sqrt_g11 = rational_sqrt(&g11).ok_or_else(|| {
            Error::Unsupported(format!("g11 = {g11} must be a rational square for exact volume"))
        })?;
        Ok(CircleOperator {
            g11: TrigPoly::constant(a.omega().clone(), g11),
            a,
            b,
            sqrt_g11,
        })
    }

    /// `-d^2 - B`.
    pub fn schrodinger(b: TrigPoly) -> Self {
        let w = b.omega().clone();
        CircleOperator::new(Rational::one(), TrigPoly::zero(w), b).expect("unit metric")
    }

    pub fn omega(&self) -> &Rational {
        self.a.omega()
    }

    /// Coordinate period.
    pub fn period(&self) -> Scalar {
        self.a.period()
    }

    /// Riemannian length `period / sqrt(g11)`.
    pub fn length(&self) -> Scalar {
        self.period().scale(&self.sqrt_g11.recip())
    }

    pub fn g11_value(&self) -> Rational {
        self.g11.mean()
    }

    pub fn potential(&self) -> &TrigPoly {
        &self.b
    }

    pub fn drift(&self) -> &TrigPoly {
        &self.a
    }

    /// The operator of `c^2 g`.
    pub fn rescaled(&self, c: &Rational) -> Result<Self> {
        let f = (c * c).recip();
        CircleOperator::new(self.g11_value() * &f, self.a.scale_q(&f), self.b.scale_q(&f))
    }

    /// Local Taylor data at `x = 0`.
    pub fn to_local(&self, order: usize) -> Result<LaplaceOp1D> {
        LaplaceOp1D::new(
            self.g11.to_jet(order),
            self.a.to_jet(order),
            self.b.to_jet(order),
        )
    }
}

impl SymbolOperator for CircleOperator {
    type Coef = TrigPoly;
    fn g11(&self) -> &TrigPoly {
        &self.g11
    }
    fn a(&self) -> &TrigPoly {
        &self.a
    }
    fn b(&self) -> &TrigPoly {
        &self.b
    }
    fn g11_inverse_power(&self, k: usize) -> Result<TrigPoly> {
        let g = self.g11_value();
        Ok(TrigPoly::constant(self.omega().clone(), g.recip().pow(k as i32)))
    }
    fn check_degree(&self, _n: usize) -> Result<()> {
        Ok(())
    }
}

/// `coefficient * xi^xi_power * r_0^r0_power`, with `degree` the number of
/// x-derivatives plus the symbol orders consumed in building it.
#[derive(Clone, Debug)]
pub struct SymbolMonomial<C> {
    pub coefficient: C,
    pub xi_power: usize,
    pub r0_power: usize,
    pub degree: usize,
    /// Number of monomials of the unmerged generation process this entry stands for.
    pub multiplicity: u128,
}

#[derive(Clone, Debug)]
pub struct SymbolSum<C> {
    pub n: usize,
    pub monomials: Vec<SymbolMonomial<C>>,
    /// Nonzero monomials generated for this step from the stored predecessors,
    /// before merging.
    pub generated: usize,
    /// Size of this step in the fully unmerged generation process.
    pub generated_unmerged: u128,
    pub merged: bool,
}

impl<C: SymbolCoefficient> SymbolSum<C> {
    /// Merged coefficient of `xi^beta r_0^j`.
    pub fn coefficient(&self, beta: usize, j: usize) -> Option<C> {
        let mut acc: Option<C> = None;
        for m in &self.monomials {
            if m.xi_power == beta && m.r0_power == j {
                acc = Some(match acc {
                    None => m.coefficient.clone(),
                    Some(a) => a.add(&m.coefficient).ok()?,
                });
            }
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub struct ResolventExpansion<C> {
    pub sums: Vec<SymbolSum<C>>,
}

impl<C: SymbolCoefficient> ResolventExpansion<C> {
    pub fn count_history(&self) -> Vec<u128> {
        self.sums.iter().map(|s| s.generated_unmerged).collect()
    }
}

fn merge<C: SymbolCoefficient>(monos: Vec<SymbolMonomial<C>>) -> Result<Vec<SymbolMonomial<C>>> {
    let mut map: BTreeMap<(usize, usize, usize), (C, u128)> = BTreeMap::new();
    for m in monos {
        let key = (m.xi_power, m.r0_power, m.degree);
        let v = match map.remove(&key) {
            Some((c, mult)) => (c.add(&m.coefficient)?, mult + m.multiplicity),
            None => (m.coefficient, m.multiplicity),
        };
        map.insert(key, v);
    }
    Ok(map
        .into_iter()
        .filter(|(_, (c, _))| !c.is_zero())
        .map(
            |((xi_power, r0_power, degree), (coefficient, multiplicity))| SymbolMonomial {
                coefficient,
                xi_power,
                r0_power,
                degree,
                multiplicity,
            },
        )
        .collect())
}

/// `d_x (c xi^b r_0^j) = c' xi^b r_0^j - j c g' xi^{b+2} r_0^{j+1}`.
fn dx_sum<C: SymbolCoefficient>(
    monos: &[SymbolMonomial<C>],
    dg: &C,
    do_merge: bool,
) -> Result<Vec<SymbolMonomial<C>>> {
    let mut out = Vec::with_capacity(2 * monos.len());
    for m in monos {
        let dc = m.coefficient.dx()?;
        if !dc.is_zero() {
            out.push(SymbolMonomial {
                coefficient: dc,
                xi_power: m.xi_power,
                r0_power: m.r0_power,
                degree: m.degree + 1,
                multiplicity: m.multiplicity,
            });
        }
        if !dg.is_zero() {
            let c = m.coefficient.mul(dg)?.scale_q(&-int(m.r0_power as i64));
            if !c.is_zero() {
                out.push(SymbolMonomial {
                    coefficient: c,
                    xi_power: m.xi_power + 2,
                    r0_power: m.r0_power + 1,
                    degree: m.degree + 1,
                    multiplicity: m.multiplicity,
                });
            }
        }
    }
    if do_merge {
        merge(out)
    } else {
        Ok(out)
    }
}

/// Computes `s_0, ..., s_{n_max}`.
pub fn resolvent_recursion<O: SymbolOperator>(
    op: &O,
    n_max: usize,
    do_merge: bool,
) -> Result<ResolventExpansion<O::Coef>> {
    op.check_degree(n_max)?;
    let g = op.g11();
    let dg = g.dx()?;
    let two_g = g.scale_q(&int(2));
    // (k, alpha, (1/alpha!) d_xi^alpha q_k / xi^e, e)
    let pieces: [(usize, usize, &O::Coef, usize); 5] = [
        (2, 1, &two_g, 1),
        (2, 2, g, 0),
        (1, 0, op.a(), 1),
        (1, 1, op.a(), 0),
        (0, 0, op.b(), 0),
    ];
    let mut sums = vec![SymbolSum {
        n: 0,
        monomials: vec![SymbolMonomial {
            coefficient: g.one_like(),
            xi_power: 0,
            r0_power: 1,
            degree: 0,
            multiplicity: 1,
        }],
        generated: 1,
        generated_unmerged: 1,
        merged: do_merge,
    }];
    // derivs[j][alpha] = d_x^alpha s_j
    let mut derivs: Vec<Vec<Vec<SymbolMonomial<O::Coef>>>> = Vec::new();
    for n in 1..=n_max {
        let j_new = n - 1;
        let d0 = sums[j_new].monomials.clone();
        let d1 = dx_sum(&d0, &dg, do_merge)?;
        let d2 = dx_sum(&d1, &dg, do_merge)?;
        derivs.push(vec![d0, d1, d2]);
        let mut out = Vec::new();
        for &(k, alpha, p, e) in &pieces {
            if p.is_zero() || n + k < 2 + alpha {
                continue;
            }
            let j = n + k - 2 - alpha;
            if j >= n {
                continue;
            }
            for m in &derivs[j][alpha] {
                let c = p.mul(&m.coefficient)?.scale_q(&-Rational::one());
                if c.is_zero() {
                    continue;
                }
                out.push(SymbolMonomial {
                    coefficient: c,
                    xi_power: m.xi_power + e,
                    r0_power: m.r0_power + 1,
                    degree: m.degree + 2 - k,
                    multiplicity: m.multiplicity,
                });
            }
        }
        let generated = out.len();
        let generated_unmerged = out.iter().map(|m| m.multiplicity).sum();
        let monomials = if do_merge { merge(out)? } else { out };
        sums.push(SymbolSum {
            n,
            monomials,
            generated,
            generated_unmerged,
            merged: do_merge,
        });
    }
    Ok(ResolventExpansion { sums })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub n: usize,
    pub generated: usize,
    pub generated_unmerged: u128,
    pub stored: usize,
    pub count_bound: BigInt,
    pub failures: Vec<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the normal-form bounds, weight, degree ledger and monomial count of `s_n`.
pub fn grading_audit<C: SymbolCoefficient>(s: &SymbolSum<C>) -> AuditReport {
    let n = s.n;
    let mut failures = Vec::new();
    for m in &s.monomials {
        let (b, j) = (m.xi_power as i64, m.r0_power as i64);
        let ni = n as i64;
        if j < ni / 2 + 1 || j > 2 * ni + 1 {
            failures.push(format!("r0 power {j} outside [{}, {}]", ni / 2 + 1, 2 * ni + 1));
        }
        if b != 2 * j - ni - 2 {
            failures.push(format!("xi power {b} != 2*{j} - {ni} - 2"));
        }
        if b - 2 * j != -2 - ni {
            failures.push(format!("weight {} != {}", b - 2 * j, -2 - ni));
        }
        if m.degree != n {
            failures.push(format!("degree ledger {} != {n}", m.degree));
        }
    }
    let count_bound = BigInt::from(50u32).pow(n as u32) * factorial(n as u64);
    if BigInt::from(s.generated_unmerged) > count_bound {
        failures.push(format!(
            "generated {} exceeds {count_bound}",
            s.generated_unmerged
        ));
    }
    AuditReport {
        n,
        generated: s.generated,
        generated_unmerged: s.generated_unmerged,
        stored: s.monomials.len(),
        count_bound,
        failures,
    }
}

/// `a_n(x, D)` from `s_n`: each `xi^{2k} r_0^j` integrates to
/// `(2k)! / (4^k k! (j-1)!) g^{-k}` after the contour and Gaussian steps, and the
/// overall factor `(-1)^{n/2}` converts `s_n` back to `r_n`.
pub fn moment_integrate<O: SymbolOperator>(s: &SymbolSum<O::Coef>, op: &O) -> Result<O::Coef> {
    let mut acc = op.g11().zero_like();
    let mut ginv_cache: BTreeMap<usize, O::Coef> = BTreeMap::new();
    for m in &s.monomials {
        if m.xi_power % 2 == 1 {
            continue;
        }
        let k = m.xi_power / 2;
        let w = factorial_q(2 * k as u64)
            / (Rational::from_integer(BigInt::from(4u32).pow(k as u32))
                * factorial_q(k as u64)
                * factorial_q((m.r0_power - 1) as u64));
        let gk = match ginv_cache.get(&k) {
            Some(v) => v.clone(),
            None => {
                let v = op.g11_inverse_power(k)?;
                ginv_cache.insert(k, v.clone());
                v
            }
        };
        acc = acc.add(&m.coefficient.mul(&gk)?.scale_q(&w))?;
    }
    if s.n % 2 == 0 && (s.n / 2) % 2 == 1 {
        acc = acc.scale_q(&-Rational::one());
    }
    Ok(acc)
}
