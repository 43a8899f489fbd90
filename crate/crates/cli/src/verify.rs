//! Quick invariant suite behind `heatcoef verify`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use heatcoef::constructions::{
    conformal_constraint_check, content_closing_chain, greedy_conformal_content, greedy_conformal_trace,
    trace_certificate_chain, trig_integral_check,
};
use heatcoef::geometry::{bochner_transform, LaplaceOp1D};
use heatcoef::heat_content::{
    beta_base, beta_reduce, target_match, xi, xi_closed_form, BoundaryCondition, BoundaryJetData,
};
use heatcoef::heat_trace::{
    grading_audit, local_trace_coefficients, moment_integrate, resolvent_recursion,
    trace_coefficient_series, CircleOperator, TrigPoly,
};
use heatcoef::numerics::{factorial_q, int, rat, rational_pow};
use heatcoef::{Jet, Rational, Scalar};
use heatcoef_oracle::fit::content_exponents;
use heatcoef_oracle::{content_fit, Bc, EigenConfig, FitConfig, IntervalProblem};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type Check = Result<(bool, String), String>;

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn jet(c: &[Rational], order: usize) -> Jet {
    let mut v = c.to_vec();
    v.resize(order + 1, int(0));
    Jet::from_rationals(int(0), v)
}

fn xi_values() -> Check {
    let x2 = Scalar::term(-1, rat(-4, 3));
    let x4 = Scalar::term(-1, rat(-8, 15));
    let mut ok = xi(2).map_err(e)? == x2 && xi(4).map_err(e)? == x4;
    for l in (2..=40).step_by(2) {
        ok &= xi(l).map_err(e)? == xi_closed_form(l).map_err(e)?;
    }
    Ok((ok, "Xi_2, Xi_4 and recursion = closed form for even l <= 40".into()))
}

fn base_values() -> Check {
    let order = 8;
    let one = jet(&[int(1)], order);
    let d = BoundaryJetData::new(one.clone(), one.clone());
    let two_ends = |v: &Scalar| v.scale(&int(2));
    let b0 = two_ends(beta_base(&d, BoundaryCondition::Dirichlet, 0).map_err(e)?.exact().map_err(e)?);
    let b0_plus = beta_base(&d, BoundaryCondition::Robin, 0).map_err(e)?;
    let c = rat(3, 2);
    let dc = d.clone().with_e(jet(std::slice::from_ref(&c), order));
    let b2 = two_ends(beta_base(&dc, BoundaryCondition::Dirichlet, 2).map_err(e)?.exact().map_err(e)?);
    let ok = b0 == Scalar::term(-1, int(-4))
        && b0_plus.exact().map_err(e)?.is_zero()
        && b2 == Scalar::term(-1, int(-4) * &c);
    Ok((ok, format!("beta_0 = {b0}, beta_2(E = 3/2) = {b2}")))
}

fn reduction_values() -> Check {
    let mut ok = true;
    for k in 2..=6usize {
        let l = 2 * k;
        let order = 2 * l + 4;
        let mut c = vec![int(0); l + 1];
        c[l] = factorial_q(l as u64).recip();
        let d = BoundaryJetData::new(jet(&c, order), jet(&[int(1)], order));
        ok &= beta_reduce(&d, BoundaryCondition::Dirichlet, l).map_err(e)?.exact().map_err(e)? == &xi(l).map_err(e)?;
    }
    Ok((ok, "beta_2k(r^2k / (2k)!, 1) = Xi_2k for k = 2..6".into()))
}

fn targets() -> Check {
    let t: BTreeMap<usize, Scalar> = [(3, 1), (4, 2), (5, 3)].into_iter().map(|(j, c)| (j, Scalar::from_int(c))).collect();
    let m = target_match(&t, &jet(&[int(0)], 14), &jet(&[int(1)], 14)).map_err(e)?;
    Ok((m.verified(), "targets (1, 2, 3) at j = 3, 4, 5".into()))
}

fn fixed_operator(order: usize) -> Result<LaplaceOp1D, String> {
    LaplaceOp1D::new(
        jet(&[int(1), rat(1, 2), int(1)], order),
        jet(&[int(0), int(1), int(0), rat(-1, 3)], order),
        jet(&[rat(1, 2), int(-1), rat(1, 4)], order),
    )
    .map_err(e)
}

fn symbol_engine() -> Check {
    let op = fixed_operator(12)?;
    let ex = resolvent_recursion(&op, 8, true).map_err(e)?;
    let mut ok = true;
    let mut values = Vec::new();
    for s in &ex.sums {
        ok &= grading_audit(s).passed();
        let a = moment_integrate(s, &op).map_err(e)?;
        if s.n % 2 == 1 {
            ok &= a.is_zero();
        }
        values.push(a);
    }
    ok &= values[0] == Jet::constant(int(0), Scalar::one(), values[0].order());
    let en = bochner_transform(&op).map_err(e)?.e;
    let n = values[2].order().min(en.order());
    ok &= values[2].truncate(n) == en.truncate(n);
    Ok((ok, "audits, odd vanishing, a_0 = 1 and a_2 = E for n <= 8".into()))
}

fn circle_constant() -> Check {
    let c = rat(3, 2);
    let op = CircleOperator::schrodinger(TrigPoly::constant(rat(1, 3), c.clone()));
    let len = op.length();
    let s = trace_coefficient_series(&op, 8).map_err(e)?;
    let mut ok = true;
    for nb in 0..=4usize {
        let want = len.scale(&(c.pow(nb as i32) / factorial_q(nb as u64)));
        ok &= s[2 * nb].integrated_value.as_ref() == Some(&want);
    }
    Ok((ok, "a_2n = L c^n / n! for n <= 4".into()))
}

fn homothety() -> Check {
    let op = fixed_operator(10)?;
    let c = int(4);
    let a = local_trace_coefficients(&op, 6).map_err(e)?;
    let b = local_trace_coefficients(&op.rescaled(&c), 6).map_err(e)?;
    let mut ok = true;
    for (x, y) in a.iter().zip(&b) {
        let f = rational_pow(&c, -(x.n as i64)).map_err(e)?;
        let (xv, yv) = (x.local_value.as_ref(), y.local_value.as_ref());
        ok &= matches!((xv, yv), (Some(p), Some(q)) if *q == p.scale_q(&f));
    }
    Ok((ok, "a_n(c^2 g) = c^-n a_n(g), c = 4, n <= 6".into()))
}

fn growth() -> Check {
    let t = greedy_conformal_trace(2, 6, &Jet::variable(int(0), 12)).map_err(e)?;
    let c = greedy_conformal_content(2, 6).map_err(e)?;
    let chains = (3..=12).all(|n| trace_certificate_chain(n, &int(1))) && (3..=12).all(content_closing_chain);
    Ok((
        t.all_certified() && c.all_certified() && chains,
        format!("growth constants {:.4} (trace), {:.4} (content)", t.growth_constant, c.growth_constant),
    ))
}

fn growth_constraint() -> Check {
    let lower = jet(&[int(0), int(0), rat(1, 2), rat(-1, 3)], 8);
    let mut ok = true;
    let mut worst = f64::NEG_INFINITY;
    for m in [2, 3] {
        for mu in [3, 4] {
            let r = conformal_constraint_check(mu, m, &lower).map_err(e)?;
            ok &= r.holds;
            worst = worst.max(r.constant);
        }
    }
    Ok((ok, format!("|nabla^(mu-2) tau|^2 >= (f^(mu))^2 - C for mu = 3, 4, m = 2, 3; largest C = {worst:.4}")))
}

fn trig_integral() -> Check {
    let mut ok = true;
    for (a, b) in [(1, 1), (2, 8), (3, 27)] {
        ok &= (trig_integral_check(a, b).map_err(e)?.value - PI * PI).abs() < 1e-8;
    }
    Ok((ok, "integral = pi^2 for (1,1), (2,8), (3,27)".into()))
}

fn oracle_flat() -> Check {
    let p = IntervalProblem::flat(1.0, Bc::Dirichlet, Bc::Dirichlet).map_err(e)?;
    let one = |_: f64| 1.0;
    let (f, _) = content_fit(
        &p,
        &one,
        &one,
        &[1.0],
        &content_exponents(&[0, 1, 2, 3]),
        &EigenConfig::default(),
        &FitConfig::window(10f64.powf(-3.5), 0.009),
    )
    .map_err(e)?;
    let b0 = f.coefficients[0];
    Ok(((b0 + 4.0 / PI.sqrt()).abs() < 1e-4, format!("fitted beta_0 = {b0:.8}")))
}

/// Runs every check; `oracle` adds the spectral cross-check.
pub fn verify_suite(oracle: bool) -> Vec<CheckResult> {
    let mut checks: Vec<(&str, fn() -> Check)> = vec![
        ("xi-table", xi_values),
        ("content-base-values", base_values),
        ("content-reduction", reduction_values),
        ("target-matching", targets),
        ("symbol-engine", symbol_engine),
        ("circle-constant-potential", circle_constant),
        ("trace-homothety", homothety),
        ("greedy-certificates", growth),
        ("growth-constraint", growth_constraint),
        ("trig-integral", trig_integral),
    ];
    if oracle {
        checks.push(("oracle-flat-content", oracle_flat));
    }
    checks
        .into_iter()
        .map(|(name, f)| {
            let (passed, detail) = match f() {
                Ok(r) => r,
                Err(msg) => (false, format!("error: {msg}")),
            };
            CheckResult { name: name.into(), passed, detail }
        })
        .collect()
}
