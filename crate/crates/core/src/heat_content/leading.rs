//! Leading part of `beta_l`, `l >= 6`, in the highest normal derivatives.
//! Lower-order terms are unknown and not represented.


use crate::error::Result;
use crate::numerics::{int, rat, Scalar};

use super::{check_even, xi, BoundaryCondition, BoundaryJetData, ContentCoefficient};

/// One monomial of the leading display with its universal coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerm {
    pub label: &'static str,
    pub coefficient: Scalar,
    pub monomial: Scalar,
}

struct Derivs<'a> {
    d: &'a BoundaryJetData,
}

impl Derivs<'_> {
    fn p1(&self, k: usize) -> Result<Scalar> {
        self.d.phi1.derivative_at_base(k)
    }
    fn p2(&self, k: usize) -> Result<Scalar> {
        self.d.phi2.derivative_at_base(k)
    }
    fn e(&self, k: usize) -> Result<Scalar> {
        self.d.e.derivative_at_base(k)
    }
    /// `phi1^(a) phi2^(b) + phi1^(b) phi2^(a)`.
    fn sym(&self, a: usize, b: usize) -> Result<Scalar> {
        Ok(&self.p1(a)? * &self.p2(b)? + &self.p1(b)? * &self.p2(a)?)
    }
}

/// Universal coefficients and monomial values of the leading display; the
/// second component lists the flagged exclusions.
pub fn leading_content_terms(
    d: &BoundaryJetData,
    bc: BoundaryCondition,
    ell: usize,
) -> Result<(Vec<LeadingTerm>, Vec<String>)> {
    check_even(ell, 6)?;
    let x = xi(ell)?;
    let l = ell as i64;
    let v = Derivs { d };
    let rho = d.rho_mm.derivative_at_base(ell - 2)?;
    let p00 = &v.p1(0)? * &v.p2(0)?;
    let p11 = &v.p1(1)? * &v.p2(1)?;
    let mut flags = Vec::new();
    let terms = match bc {
        BoundaryCondition::Dirichlet => vec![
            LeadingTerm {
                label: "phi1^(l) phi2 + phi1 phi2^(l)",
                coefficient: x.clone(),
                monomial: v.sym(ell, 0)?,
            },
            LeadingTerm {
                label: "phi1 phi2 E^(l-2)",
                coefficient: x.scale(&int(l)),
                monomial: &p00 * &v.e(ell - 2)?,
            },
            LeadingTerm {
                label: "phi1^(l-1) phi2^(1) + phi1^(1) phi2^(l-1)",
                coefficient: Scalar::zero(),
                monomial: v.sym(ell - 1, 1)?,
            },
            LeadingTerm {
                label: "(phi1^(1) phi2 + phi1 phi2^(1)) E^(l-3)",
                coefficient: x.scale(&int(l - 2)),
                monomial: &v.sym(1, 0)? * &v.e(ell - 3)?,
            },
            LeadingTerm {
                label: "phi1^(1) phi2^(1) E^(l-4)",
                coefficient: Scalar::zero(),
                monomial: &p11 * &v.e(ell - 4)?,
            },
            LeadingTerm {
                label: "phi1 phi2 rho_mm^(l-2)",
                coefficient: x.scale(&rat(l - 2, 2)),
                monomial: &p00 * &rho,
            },
        ],
        BoundaryCondition::Robin => {
            let s = &d.s;
            let excluded = &(s * &p00) * &v.e(ell - 3)?;
            if !excluded.is_zero() {
                flags.push(format!(
                    "term S phi1 phi2 E^(l-3) = {excluded} has an undetermined coefficient and is excluded"
                ));
            }
            vec![
                LeadingTerm {
                    label: "phi1^(l) phi2 + phi1 phi2^(l)",
                    coefficient: Scalar::zero(),
                    monomial: v.sym(ell, 0)?,
                },
                LeadingTerm {
                    label: "phi1 phi2 E^(l-2)",
                    coefficient: Scalar::zero(),
                    monomial: &p00 * &v.e(ell - 2)?,
                },
                LeadingTerm {
                    label: "phi1^(l-1) phi2^(1) + phi1^(1) phi2^(l-1)",
                    coefficient: -x.clone(),
                    monomial: v.sym(ell - 1, 1)?,
                },
                LeadingTerm {
                    label: "(phi1^(1) phi2 + phi1 phi2^(1)) E^(l-3)",
                    coefficient: -x.clone(),
                    monomial: &v.sym(1, 0)? * &v.e(ell - 3)?,
                },
                LeadingTerm {
                    label: "phi1^(1) phi2^(1) E^(l-4)",
                    coefficient: x.scale(&int(2 - l)),
                    monomial: &p11 * &v.e(ell - 4)?,
                },
                LeadingTerm {
                    label: "S (phi1^(l-1) phi2 + phi1 phi2^(l-1))",
                    coefficient: -x.clone(),
                    monomial: s * &v.sym(ell - 1, 0)?,
                },
                LeadingTerm {
                    label: "S (phi1^(l-2) phi2^(1) + phi1^(1) phi2^(l-2))",
                    coefficient: -x.clone(),
                    monomial: s * &v.sym(ell - 2, 1)?,
                },
                LeadingTerm {
                    label: "S (phi1 phi2^(1) + phi1^(1) phi2) E^(l-4)",
                    coefficient: x.scale(&int(-2)),
                    monomial: &(s * &v.sym(1, 0)?) * &v.e(ell - 4)?,
                },
                LeadingTerm {
                    label: "phi1 phi2 rho_mm^(l-2)",
                    coefficient: Scalar::zero(),
                    monomial: &p00 * &rho,
                },
            ]
        }
    };
    Ok((terms, flags))
}

/// Leading part of `beta_l` at one boundary component, times its volume.
pub fn leading_content(d: &BoundaryJetData, bc: BoundaryCondition, ell: usize) -> Result<ContentCoefficient> {
    let (terms, mut flags) = leading_content_terms(d, bc, ell)?;
    let sum: Scalar = terms
        .iter()
        .filter(|t| !t.coefficient.is_zero() && !t.monomial.is_zero())
        .map(|t| &t.coefficient * &t.monomial)
        .sum();
    flags.push("lower-order terms omitted".to_string());
    Ok(ContentCoefficient::leading_value(
        ell,
        &sum * &d.boundary_volume,
        flags,
    ))
}
