use std::f64::consts::PI;

use heatcoef::constructions::{
    bump_energy_profile, greedy_conformal_content, greedy_conformal_trace, plateau_profile,
    sine_power_profile, trig_integral_check, GrowthReport,
};
use heatcoef::geometry::LaplaceOp1D;
use heatcoef::heat_content::{
    beta_base, beta_reduce, image_beta, intertwine_build, leading_content, product_trick_data,
    target_match, xi_table, BoundaryCondition, BoundaryJetData, ContentCoefficient, ImageBc,
};
use heatcoef::heat_trace::{local_trace_coefficients, trace_coefficient_series, CircleOperator, TrigPoly};
use heatcoef::profile::Profile;
use heatcoef::{Jet, Rational, Scalar};
use heatcoef_oracle::checks::Smooth;
use heatcoef_oracle::fit::{content_exponents, geometric_grid};
use heatcoef_oracle::{
    asymptotic_fit, eigensolve_circle, eigensolve_interval, func, heat_trace_sum, intertwine_check,
    product_trick_check, AsymptoticFit, Bc, CircleProblem, ContentSeries, EigenConfig, FitConfig,
    IntervalProblem, ProductTrickConfig,
};
use serde_json::{json, Value};

use crate::output::{self, coefficient, coefficient_row, coefficient_table, fitted, num, num_str, scalar, Report, Table};
use crate::parse::{self, float, poly_f64, poly_jet, polynomial, rational};
use crate::{
    Cli, CliError, Command, ContentArgs, ContentBc, ContentMethod, FitArgs, FitDomain, GrowContentArgs,
    GrowTraceArgs, IntertwineArgs, MatchArgs, ProductArgs, ProfileArgs, ProfileKind, TraceArgs, TraceDomain,
    TrigArgs, VerifyArgs,
};

type Res<T> = Result<T, CliError>;

/// Runs the selected command. A `Some` error alongside the report marks a
/// command that produced output but must still exit nonzero.
pub fn dispatch(cli: &Cli) -> Res<(Report, Option<CliError>)> {
    let r = match &cli.command {
        Command::TraceCoeffs(a) => trace_coeffs(a)?,
        Command::ContentCoeffs(a) => content_coeffs(a)?,
        Command::OracleFit(a) => oracle_fit(a)?,
        Command::MatchTargets(a) => match_targets(a)?,
        Command::Intertwine(a) => intertwine(a)?,
        Command::ProductTrick(a) => product_trick(a)?,
        Command::GrowTrace(a) => grow_trace(a)?,
        Command::GrowContent(a) => grow_content(a)?,
        Command::CheckTrig(a) => check_trig(a)?,
        Command::Profiles(a) => profiles(a)?,
        Command::Verify(a) => return Ok(verify(a)),
    };
    Ok((r, None))
}

/// Jet order: at least `2 max + 4`.
fn jet_order(order: Option<usize>, max_index: usize) -> Res<usize> {
    let need = 2 * max_index + 4;
    match order {
        None => Ok(need),
        Some(o) if o >= need => Ok(o),
        Some(o) => Err(CliError::Usage(format!(
            "jet order {o} is below 2 * {max_index} + 4 = {need}"
        ))),
    }
}

fn positive(name: &str, x: f64) -> Res<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Usage(format!("{name} must be positive, got {x}")))
    }
}

fn window(t_min: f64, t_max: f64, points: usize) -> Res<Vec<f64>> {
    positive("t-min", t_min)?;
    if !(t_max > t_min) {
        return Err(CliError::Usage(format!("empty window [{t_min}, {t_max}]")));
    }
    if points < 2 {
        return Err(CliError::Usage("at least two points are needed".into()));
    }
    Ok(geometric_grid(t_min, t_max, points))
}

fn trig(w: &Rational, constant: &str, cos: &[String], sin: &[String]) -> Res<TrigPoly> {
    let mut p = TrigPoly::constant(w.clone(), rational(constant)?);
    for s in cos {
        let (k, amp) = parse::trig_term(s)?;
        p = p.add(&TrigPoly::cos(w.clone(), k, amp))?;
    }
    for s in sin {
        let (k, amp) = parse::trig_term(s)?;
        p = p.add(&TrigPoly::sin(w.clone(), k, amp))?;
    }
    Ok(p)
}

fn taylor(j: &Jet) -> Value {
    Value::Array(j.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

fn fit_json(f: &AsymptoticFit) -> Value {
    json!({
        "exponents": f.exponents.iter().map(|x| num(*x)).collect::<Vec<_>>(),
        "coefficients": f.coefficients.iter().map(|x| num(*x)).collect::<Vec<_>>(),
        "stderrs": f.std_errors.iter().map(|x| num(*x)).collect::<Vec<_>>(),
        "condition": num(f.condition),
        "residual_rms": num(f.residual_rms),
    })
}

fn trace_coeffs(a: &TraceArgs) -> Res<Report> {
    let order = jet_order(a.order, a.max)?;
    let mut table = coefficient_table();
    let mut rows = Vec::new();
    let json = match a.domain {
        TraceDomain::Circle => {
            let w = rational(&a.omega)?;
            let b = trig(&w, &a.constant, &a.cos, &a.sin)?;
            let op = CircleOperator::new(rational(&a.g11)?, TrigPoly::zero(w), b)?;
            for c in trace_coefficient_series(&op, a.max)? {
                let v = c
                    .integrated_value
                    .ok_or_else(|| CliError::engine("Internal", "missing integrated value"))?;
                let f = "integral of a_n over the circle";
                rows.push(coefficient(c.n, &v, "exact", f));
                table.push(coefficient_row(c.n, &v, "exact", f));
            }
            json!({ "domain": "circle", "length": scalar(&op.length()), "coefficients": rows })
        }
        TraceDomain::Local => {
            let op = LaplaceOp1D::new(
                poly_jet(&polynomial(&a.g)?, order),
                poly_jet(&polynomial(&a.a)?, order),
                poly_jet(&polynomial(&a.b)?, order),
            )?;
            for c in local_trace_coefficients(&op, a.max)? {
                let j = c
                    .local_value
                    .ok_or_else(|| CliError::engine("Internal", "missing local value"))?;
                let f = "a_n(0); taylor lists the jet coefficients at 0";
                let mut e = coefficient(c.n, j.constant_term(), "exact", f);
                e["taylor"] = taylor(&j);
                rows.push(e);
                table.push(coefficient_row(c.n, j.constant_term(), "exact", f));
            }
            json!({ "domain": "local", "order": order, "coefficients": rows })
        }
    };
    Ok(Report { json, table })
}

fn content_coeffs(a: &ContentArgs) -> Res<Report> {
    let mut table = coefficient_table();
    let mut rows = Vec::new();
    if a.xi {
        let max = a.max.unwrap_or(12);
        for (l, v) in xi_table(max)? {
            let f = "Xi_l by the two-step recursion";
            rows.push(coefficient(l, &v, "exact", f));
            table.push(coefficient_row(l, &v, "exact", f));
        }
        return Ok(Report { json: json!({ "xi": rows }), table });
    }
    let ells = match (&a.ells, a.max) {
        (Some(s), _) => parse::indices(s)?,
        (None, Some(m)) => (0..=m).step_by(2).collect(),
        (None, None) => vec![0, 2],
    };
    let max = ells.iter().copied().max().unwrap_or(0);
    let order = jet_order(a.order, max)?;
    let phi1 = poly_jet(&polynomial(&a.phi1)?, order);
    let phi2 = poly_jet(&polynomial(&a.phi2)?, order);
    let e = poly_jet(&polynomial(&a.e)?, order);
    let s = Scalar::from_rational(rational(&a.s)?);
    let mut d = BoundaryJetData::new(phi1.clone(), phi2.clone())
        .with_e(e.clone())
        .with_s(s.clone())
        .with_rho_mm(poly_jet(&polynomial(&a.rho)?, order))
        .with_boundary_volume(Scalar::from_rational(rational(&a.boundary_volume)?));
    if let Some(c) = &a.connection {
        d = d.with_connection(poly_jet(&polynomial(c)?, order));
    }
    let bc = match a.bc {
        ContentBc::Dirichlet => BoundaryCondition::Dirichlet,
        ContentBc::Robin => BoundaryCondition::Robin,
    };
    let images_ok = e.is_zero() && s.is_zero() && a.connection.is_none();
    if a.method == ContentMethod::Images && !images_ok {
        return Err(CliError::Usage("the images method needs E = 0, S = 0 and no connection".into()));
    }
    for &ell in &ells {
        let method = match a.method {
            ContentMethod::Auto if ell % 2 == 1 && images_ok => ContentMethod::Images,
            ContentMethod::Auto if ell % 2 == 1 => {
                return Err(CliError::Usage(format!(
                    "odd l = {ell} is available only by the method of images, which needs E = 0, S = 0 and no connection"
                )))
            }
            m => m,
        };
        let (c, formula): (ContentCoefficient, &str) = match method {
            ContentMethod::Auto if ell <= 2 => (beta_base(&d, bc, ell)?, "beta_l base case"),
            ContentMethod::Auto | ContentMethod::Reduction => (beta_reduce(&d, bc, ell)?, "beta_l by reduction"),
            ContentMethod::Leading => (leading_content(&d, bc, ell)?, "leading part of beta_l"),
            ContentMethod::Images => {
                let ibc = match bc {
                    BoundaryCondition::Dirichlet => ImageBc::Dirichlet,
                    BoundaryCondition::Robin => ImageBc::Neumann,
                };
                let v = image_beta(&phi1, &phi2, ibc, ell)?;
                let f = "beta_l by the method of images";
                rows.push(coefficient(ell, &v, "exact", f));
                table.push(coefficient_row(ell, &v, "exact", f));
                continue;
            }
        };
        let prov = c.provenance.as_str();
        let v = c.value_unchecked();
        let mut entry = coefficient(ell, v, prov, formula);
        entry["flags"] = json!(c.flags);
        rows.push(entry);
        table.push(coefficient_row(ell, v, prov, formula));
    }
    Ok(Report {
        json: json!({ "bc": format!("{:?}", a.bc).to_lowercase(), "order": order, "coefficients": rows }),
        table,
    })
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * x + a)
}

fn pmul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn pderiv(a: &[f64]) -> Vec<f64> {
    if a.len() <= 1 {
        return vec![0.0];
    }
    a.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect()
}

fn padd(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

/// `int_0^L (D^n phi1) phi2` for `D = -(d^2 + E)`, `n < terms`, by polynomial algebra.
fn interior_terms(phi1: &[f64], phi2: &[f64], e: &[f64], len: f64, terms: usize) -> Vec<f64> {
    let mut p = phi1.to_vec();
    let mut out = Vec::with_capacity(terms);
    for _ in 0..terms {
        let prod = pmul(&p, phi2);
        let integral: f64 = prod
            .iter()
            .enumerate()
            .map(|(k, c)| c * len.powi(k as i32 + 1) / (k as f64 + 1.0))
            .sum();
        out.push(integral);
        let d2 = pderiv(&pderiv(&p));
        p = padd(&d2, &pmul(e, &p)).iter().map(|c| -c).collect();
    }
    out
}

fn interval_bc(a: &FitArgs) -> Res<(Bc, Bc)> {
    match a.bc.as_str() {
        "dirichlet" => Ok((Bc::Dirichlet, Bc::Dirichlet)),
        "neumann" => Ok((Bc::NEUMANN, Bc::NEUMANN)),
        "robin" => Ok((Bc::Robin(float(&a.s0)?), Bc::Robin(float(&a.s1)?))),
        other => Err(CliError::Usage(format!("unknown boundary condition {other:?}"))),
    }
}

fn oracle_fit(a: &FitArgs) -> Res<Report> {
    let eig = EigenConfig { count: a.count, grid: a.grid };
    let max_condition = positive("max-condition", float(&a.max_condition)?)?;
    let mut table = Table::new(&["t", "value", "tail_bound"]);
    let json = match a.domain {
        FitDomain::Interval => {
            let len = positive("length", float(&a.length)?)?;
            let (left, right) = interval_bc(a)?;
            let p1 = poly_f64(&polynomial(&a.phi1)?);
            let p2 = poly_f64(&polynomial(&a.phi2)?);
            let e = poly_f64(&polynomial(&a.e)?);
            let ec = e.clone();
            let problem = IntervalProblem::with_endomorphism(len, func(move |x| horner(&ec, x)), left, right)?;
            let res = eigensolve_interval(&problem, &eig)?;
            let series = ContentSeries::new(&res, &|x| horner(&p1, x), &|x| horner(&p2, x));
            let requested = a.t_min.as_deref().map(float).transpose()?.unwrap_or(10f64.powf(-3.5));
            let t_min = requested.max(series.t_floor());
            let t_max = a.t_max.as_deref().map(float).transpose()?.unwrap_or(0.009 * len * len);
            let grid = window(t_min, t_max, a.points)?;
            let cfg = FitConfig { t_min, t_max, points: a.points, max_condition, ..FitConfig::default() };
            let mut samples = Vec::with_capacity(grid.len());
            for t in grid {
                let s = series.eval(t)?;
                table.push(vec![num_str(t), num_str(s.value), num_str(s.tail_bound)]);
                samples.push((t, s.value));
            }
            let ells = parse::indices(&a.ells)?;
            let interior = interior_terms(&p1, &p2, &e, len, a.interior_terms);
            let fit = asymptotic_fit(&samples, &content_exponents(&ells), &interior, &cfg)?;
            let coefficients: Vec<Value> = ells
                .iter()
                .zip(fit.coefficients.iter().zip(&fit.std_errors))
                .map(|(l, (c, s))| fitted(*l, *c, *s, "beta_l summed over both endpoints"))
                .collect();
            json!({
                "domain": "interval",
                "length": num(len),
                "eigenpairs": res.count(),
                "window": [num(t_min), num(t_max)],
                "t_floor": num(series.t_floor()),
                "interior": interior.iter().map(|x| num(*x)).collect::<Vec<_>>(),
                "fit": fit_json(&fit),
                "coefficients": coefficients,
            })
        }
        FitDomain::Circle => {
            let w = rational(&a.omega)?;
            let e = trig(&w, &a.constant, &a.cos, &a.sin)?;
            let op = CircleOperator::schrodinger(e.clone());
            let len = output::scalar_f64(&op.length());
            let ec = e.clone();
            let problem = CircleProblem::new(len, func(move |x| -ec.eval_f64(x)))?;
            let modes = a.modes.unwrap_or(a.count);
            let res = eigensolve_circle(&problem, modes, &eig)?;
            let scale = (len / (2.0 * PI)).powi(2);
            let t_min = a
                .t_min
                .as_deref()
                .map(float)
                .transpose()?
                .unwrap_or(1e-3 * scale)
                .max(res.t_floor());
            let t_max = a.t_max.as_deref().map(float).transpose()?.unwrap_or(0.5 * scale);
            let grid = window(t_min, t_max, a.points)?;
            let cfg = FitConfig { t_min, t_max, points: a.points, max_condition, ..FitConfig::default() };
            let mut samples = Vec::with_capacity(grid.len());
            for t in grid {
                let s = heat_trace_sum(&res, t)?;
                let f = (4.0 * PI * t).sqrt();
                table.push(vec![num_str(t), num_str(s.value), num_str(s.tail_bound)]);
                samples.push((t, s.value * f));
            }
            let ns = parse::indices(&a.ns)?;
            let exps: Vec<f64> = ns.iter().map(|n| *n as f64 / 2.0).collect();
            let fit = asymptotic_fit(&samples, &exps, &[], &cfg)?;
            let max_n = ns.iter().copied().max().unwrap_or(0);
            let exact = trace_coefficient_series(&op, max_n)?;
            let f = "integral of a_n over the circle";
            let coefficients: Vec<Value> = ns
                .iter()
                .zip(fit.coefficients.iter().zip(&fit.std_errors))
                .map(|(n, (c, s))| {
                    let mut v = fitted(*n, *c, *s, f);
                    if let Some(x) = exact[*n].integrated_value.as_ref() {
                        v["exact_reference"] = scalar(x);
                    }
                    v
                })
                .collect();
            json!({
                "domain": "circle",
                "length": num(len),
                "eigenpairs": res.count(),
                "window": [num(t_min), num(t_max)],
                "t_floor": num(res.t_floor()),
                "fit": fit_json(&fit),
                "coefficients": coefficients,
            })
        }
    };
    Ok(Report { json, table })
}

fn match_targets(a: &MatchArgs) -> Res<Report> {
    let targets = parse::index_map(&a.targets)?;
    let nu = *targets.keys().next_back().unwrap_or(&0);
    let order = jet_order(a.order, nu)?;
    let phi1 = poly_jet(&polynomial(&a.phi1)?, order);
    let phi2 = poly_jet(&polynomial(&a.phi2)?, order);
    let m = target_match(&targets, &phi1, &phi2)?;
    let mut table = Table::new(&["j", "target", "gamma", "residual", "method", "matches"]);
    let mut rows = Vec::new();
    for (j, g) in &m.gammas {
        rows.push(coefficient(*j, g, "exact", "gamma_j, the 2j-th derivative of Phi at 0"));
        let check = m.verification.iter().find(|c| c.ell_bar == *j);
        table.push(vec![
            j.to_string(),
            targets.get(j).map(|t| t.to_string()).unwrap_or_default(),
            g.to_string(),
            m.residuals.get(j).map(|r| r.to_string()).unwrap_or_default(),
            check.map(|c| c.method.to_string()).unwrap_or_default(),
            check.map(|c| c.matches.to_string()).unwrap_or_default(),
        ]);
    }
    let verification: Vec<Value> = m
        .verification
        .iter()
        .map(|c| json!({ "ell_bar": c.ell_bar, "method": c.method, "value": scalar(&c.value), "matches": c.matches }))
        .collect();
    let residuals: serde_json::Map<String, Value> =
        m.residuals.iter().map(|(j, r)| (j.to_string(), scalar(r))).collect();
    Ok(Report {
        json: json!({
            "order": order,
            "coefficients": rows,
            "phi_taylor": taylor(&m.phi),
            "residuals": residuals,
            "verification": verification,
            "verified": m.verified(),
        }),
        table,
    })
}

fn poly_smooth(c: &[Rational]) -> Smooth {
    let p = poly_f64(c);
    let dp = pderiv(&p);
    Smooth::new(func(move |x| horner(&p, x)), func(move |x| horner(&dp, x)))
}

fn rows_json(rows: &[heatcoef_oracle::checks::IdentityRow], table: &mut Table) -> Vec<Value> {
    rows.iter()
        .map(|r| {
            table.push(vec![num_str(r.t), num_str(r.lhs), num_str(r.rhs), num_str(r.discrepancy)]);
            json!({ "t": num(r.t), "lhs": num(r.lhs), "rhs": num(r.rhs), "discrepancy": num(r.discrepancy) })
        })
        .collect()
}

fn intertwine(a: &IntertwineArgs) -> Res<Report> {
    let b = Profile::polynomial(polynomial(&a.b)?);
    let data = intertwine_build(&b, a.order)?;
    let grid = window(float(&a.t_min)?, float(&a.t_max)?, a.points)?;
    let report = intertwine_check(
        &Smooth::from_profile(&b),
        &poly_smooth(&polynomial(&a.phi1)?),
        &poly_smooth(&polynomial(&a.phi2)?),
        &grid,
        &EigenConfig::with_count(a.count),
    )?;
    let mut table = Table::new(&["t", "lhs", "rhs", "discrepancy"]);
    let rows = rows_json(&report.rows, &mut table);
    let pair = |p: &heatcoef::heat_content::IntertwinedPair| json!({ "e1_taylor": taylor(&p.e1), "e2_taylor": taylor(&p.e2) });
    Ok(Report {
        json: json!({
            "exact": {
                "at_0": pair(&data.at_0),
                "at_1": pair(&data.at_1),
                "s_at_0": scalar(&data.s_at_0),
                "s_at_1": scalar(&data.s_at_1),
            },
            "rows": rows,
            "max_relative": num(report.max_relative),
            "zero_modes": report.zero_modes,
        }),
        table,
    })
}

fn product_trick(a: &ProductArgs) -> Res<Report> {
    let alpha = Profile::SinSquared { amplitude: rational(&a.amplitude)?, frequency: rational(&a.frequency)? };
    let data = product_trick_data(&alpha)?;
    let grid = window(float(&a.t_min)?, float(&a.t_max)?, a.points)?;
    let cfg = ProductTrickConfig { k_max: a.k_max, ..ProductTrickConfig::default() };
    let r = product_trick_check(&alpha, &grid, &cfg)?;
    let mut table = Table::new(&["t", "lhs", "rhs", "discrepancy"]);
    let rows = rows_json(&r.rows, &mut table);
    let coefficients: Vec<Value> = (0..r.fit.coefficients.len())
        .map(|l| fitted(l, r.fit.coefficients[l], r.fit.std_errors[l], "beta_l of the warped product quantity"))
        .collect();
    Ok(Report {
        json: json!({
            "weight_sign": data.weight_sign,
            "rows": rows,
            "max_discrepancy": num(r.max_discrepancy),
            "plus_weight_max_discrepancy": num(r.plus_weight_max_discrepancy),
            "mode_tail_bound": num(r.mode_tail_bound),
            "fit": fit_json(&r.fit),
            "coefficients": coefficients,
        }),
        table,
    })
}

pub(crate) fn growth_json(r: &GrowthReport) -> (Value, Table) {
    let mut table = Table::new(&[
        "index", "sign", "value", "bound", "certificate", "certificate_bound", "certified",
    ]);
    let entries: Vec<Value> = r
        .entries
        .iter()
        .map(|e| {
            table.push(vec![
                e.index.to_string(),
                e.sign.to_string(),
                e.value.to_string(),
                e.bound.to_string(),
                e.certificate.to_string(),
                e.certificate_bound.to_string(),
                e.certified.to_string(),
            ]);
            json!({
                "index": e.index,
                "sign": e.sign,
                "leading": scalar(&e.leading),
                "remainder": scalar(&e.remainder),
                "value": scalar(&e.value),
                "opposite_value": scalar(&e.opposite_value),
                "bound": scalar(&e.bound),
                "certificate": scalar(&e.certificate),
                "certificate_bound": scalar(&e.certificate_bound),
                "certified": e.certified,
                "provenance": "leading-only",
            })
        })
        .collect();
    let json = json!({
        "kind": r.kind,
        "dim": r.dim,
        "c_m": scalar(&r.c_m),
        "entries": entries,
        "growth_constant": num(r.growth_constant),
        "growth_slope": num(r.growth_slope),
        "all_certified": r.all_certified(),
        "notes": r.notes,
    });
    (json, table)
}

fn grow_trace(a: &GrowTraceArgs) -> Res<Report> {
    let order = jet_order(a.order, a.nbar_max)?;
    let f = poly_jet(&polynomial(&a.f)?, order);
    let (json, table) = growth_json(&greedy_conformal_trace(a.m, a.nbar_max, &f)?);
    Ok(Report { json, table })
}

fn grow_content(a: &GrowContentArgs) -> Res<Report> {
    let (json, table) = growth_json(&greedy_conformal_content(a.m, a.lbar_max)?);
    Ok(Report { json, table })
}

fn check_trig(a: &TrigArgs) -> Res<Report> {
    let mut table = Table::new(&["a", "b", "value", "expected", "stated", "ratio_to_stated"]);
    let mut out = Vec::new();
    for (x, y) in parse::int_pairs(&a.pairs)? {
        let r = trig_integral_check(x, y)?;
        table.push(vec![
            x.to_string(),
            y.to_string(),
            num_str(r.value),
            num_str(r.expected),
            num_str(r.stated),
            num_str(r.ratio_to_stated),
        ]);
        out.push(json!({
            "a": r.a,
            "b": r.b,
            "value": num(r.value),
            "expected": num(r.expected),
            "stated": num(r.stated),
            "ratio_to_stated": num(r.ratio_to_stated),
            "note": r.note,
        }));
    }
    Ok(Report { json: json!({ "integrals": out }), table })
}

fn derivative_rows(j: &Jet, formula: &str) -> Res<(Vec<Value>, Table)> {
    let mut table = coefficient_table();
    let mut rows = Vec::new();
    for k in 0..=j.order() {
        let d = j.derivative_at_base(k)?;
        rows.push(coefficient(k, &d, "exact", formula));
        table.push(coefficient_row(k, &d, "exact", formula));
    }
    Ok((rows, table))
}

fn profiles(a: &ProfileArgs) -> Res<Report> {
    match a.kind {
        ProfileKind::SinePower => {
            let eps = parse::signs(&a.eps)?;
            let j = sine_power_profile(&eps, a.order)?;
            let (rows, table) = derivative_rows(&j, "h^(k)(0)")?;
            Ok(Report { json: json!({ "kind": "sine-power", "derivatives": rows }), table })
        }
        ProfileKind::Plateau => {
            let gamma = parse::index_map(&a.gamma)?;
            let j = plateau_profile(a.k, &gamma, float(&a.eps_norm)?)?;
            let (rows, table) = derivative_rows(&j, "Phi^(k)(0)")?;
            Ok(Report { json: json!({ "kind": "plateau", "derivatives": rows }), table })
        }
        ProfileKind::Bump => {
            let b = bump_energy_profile(a.k, float(&a.c)?, float(&a.epsilon)?)?;
            let mut table = Table::new(&["x", "f"]);
            for (x, y) in &b.grid {
                table.push(vec![num_str(*x), num_str(*y)]);
            }
            Ok(Report {
                json: json!({
                    "kind": "bump",
                    "k": b.k,
                    "eps_prime": num(b.eps_prime),
                    "frequency": num(b.frequency),
                    "achieved": num(b.achieved),
                    "norm_proxy": num(b.norm_proxy),
                }),
                table,
            })
        }
    }
}

fn verify(a: &VerifyArgs) -> (Report, Option<CliError>) {
    let results = crate::verify_suite(!a.exact_only);
    let mut table = Table::new(&["check", "passed", "detail"]);
    let failed: Vec<String> = results.iter().filter(|r| !r.passed).map(|r| r.name.clone()).collect();
    let checks: Vec<Value> = results
        .iter()
        .map(|r| {
            table.push(vec![r.name.clone(), r.passed.to_string(), r.detail.clone()]);
            json!({ "check": r.name, "passed": r.passed, "detail": r.detail })
        })
        .collect();
    let report = Report { json: json!({ "checks": checks, "passed": failed.is_empty() }), table };
    let err = (!failed.is_empty()).then_some(CliError::Verify(failed));
    (report, err)
}
