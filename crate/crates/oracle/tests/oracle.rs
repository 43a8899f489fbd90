use std::f64::consts::PI;

use heatcoef::heat_content::{beta_base, beta_reduce, image_beta, BoundaryCondition, BoundaryJetData, ImageBc};
use heatcoef::numerics::{factorial_q, int, rat};
use heatcoef::profile::Profile;
use heatcoef::{Jet, Rational, Scalar};
use heatcoef_oracle::checks::simpson;
use heatcoef_oracle::fit::{content_exponents, geometric_grid};
use heatcoef_oracle::shooting::{flat_robin_lowest, shooting_eigenvalues};
use heatcoef_oracle::*;

fn one(_: f64) -> f64 {
    1.0
}

fn flat_dirichlet() -> SpectralResolution {
    let p = IntervalProblem::flat(1.0, Bc::Dirichlet, Bc::Dirichlet).unwrap();
    eigensolve_interval(&p, &EigenConfig::default()).unwrap()
}

#[test]
fn robin_lowest_eigenvalue_matches_characteristic_equation() {
    let p = IntervalProblem::flat(1.0, Bc::Robin(1.0), Bc::Robin(1.0)).unwrap();
    let r = eigensolve_interval(&p, &EigenConfig::default()).unwrap();
    let exact = flat_robin_lowest(1.0, 1.0, 1.0).unwrap();
    assert!(exact < 0.0);
    assert!((r.eigenvalues[0] - exact).abs() < 1e-7 * exact.abs().max(1.0));
}

#[test]
fn shooting_cross_check_on_potential() {
    let v = func(|x| 5.0 * (3.0 * x).sin() + x * x);
    let p = IntervalProblem::schrodinger(1.0, v, Bc::Robin(0.5), Bc::Dirichlet).unwrap();
    let r = eigensolve_interval(&p, &EigenConfig::default()).unwrap();
    let shot = shooting_eigenvalues(&p, &r.eigenvalues[..5], 20000).unwrap();
    for (a, b) in r.eigenvalues.iter().zip(&shot) {
        assert!((a - b).abs() < 1e-7 * b.abs().max(1.0), "{a} vs {b}");
    }
}

#[test]
fn weyl_law_and_orthonormality() {
    let v = func(|x| 20.0 * x * (1.0 - x));
    let p = IntervalProblem::schrodinger(2.0, v, Bc::Dirichlet, Bc::Dirichlet).unwrap();
    let r = eigensolve_interval(&p, &EigenConfig::default()).unwrap();
    let k = 50.0;
    let ratio = r.eigenvalues[49] / (k * PI / 2.0).powi(2);
    assert!((ratio - 1.0).abs() < 0.01, "{ratio}");
    assert!(r.orthonormality_defect() < 1e-8);
    assert!(r.richardson_gap < 1e-3);
    let (x, u) = r.eigenfunction_samples(0).unwrap();
    assert_eq!(x.len(), u.len());
    assert!(r.eigenvalues.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn parseval() {
    let r = flat_dirichlet();
    let phi = |x: f64| x * (1.0 - x) * x.exp();
    let g = r.fourier(&phi);
    let sum: f64 = g.iter().map(|v| v * v).sum();
    let norm = simpson(&|x| phi(x).powi(2), 0.0, 1.0, 4000);
    assert!((sum - norm).abs() < 1e-6);
}

#[test]
fn heat_content_sum_examples() {
    let r = flat_dirichlet();
    let t = 0.01;
    let s = heat_content_sum(&r, &one, &one, t).unwrap();
    assert!((s.value - 0.774324).abs() < 1e-6);
    assert!((s.value - (1.0 - 4.0 * (t / PI).sqrt())).abs() < 1e-9);
    // spectral gap
    let t = 3.0;
    let g1 = r.fourier(&one)[0];
    let big = heat_content_sum(&r, &one, &one, t).unwrap().value;
    let lead = g1 * g1 * (-t * r.eigenvalues[0]).exp();
    assert!((big - lead).abs() < 1e-20 + 1e-10 * lead);
    // symmetry
    let f = |x: f64| (2.0 * x).cos();
    let g = |x: f64| x * x + 1.0;
    let a = heat_content_sum(&r, &f, &g, 0.02).unwrap().value;
    let b = heat_content_sum(&r, &g, &f, 0.02).unwrap().value;
    assert_eq!(a, b);
    assert!(matches!(heat_content_sum(&r, &one, &one, 1e-6), Err(OracleError::TFloor { .. })));
}

#[test]
fn heat_trace_sum_examples() {
    let c = CircleProblem::new(2.0 * PI, func(|_| 0.0)).unwrap();
    let rc = eigensolve_circle(&c, 60, &EigenConfig::with_count(121)).unwrap();
    assert!(rc.eigenvalues[..5].iter().zip([0.0, 1.0, 1.0, 4.0, 4.0]).all(|(a, b)| (a - b).abs() < 1e-12));
    let t = 0.1;
    assert!((heat_trace_sum(&rc, t).unwrap().value - (PI / t).sqrt()).abs() < 1e-10);

    let r = flat_dirichlet();
    let t = 0.05;
    let images = (4.0 * PI * t).powf(-0.5) - 0.5;
    let s = heat_trace_sum(&r, t).unwrap();
    assert!((s.value - images).abs() < 1e-7, "{} vs {images}", s.value);
    let ts = geometric_grid(0.001, 1.0, 20);
    let vals: Vec<f64> = ts.iter().map(|t| heat_trace_sum(&r, *t).unwrap().value).collect();
    assert!(vals.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn flat_content_fit() {
    let p = IntervalProblem::flat(1.0, Bc::Dirichlet, Bc::Dirichlet).unwrap();
    let fit = FitConfig::window(10f64.powf(-3.5), 0.009);
    let (f, _) = content_fit(&p, &one, &one, &[1.0], &content_exponents(&[0, 1, 2, 3]), &EigenConfig::default(), &fit)
        .unwrap();
    assert!((f.coefficients[0] + 4.0 / PI.sqrt()).abs() < 1e-4);
    assert!(f.coefficients[1].abs() < 1e-3);
    assert!(f.coefficients[2].abs() < 1e-3);
    assert!(f.condition < 1e10);
}

#[test]
fn circle_trace_fit_recovers_length() {
    let l = 3.0;
    let c = CircleProblem::new(l, func(|_| 0.0)).unwrap();
    let r = eigensolve_circle(&c, 150, &EigenConfig::with_count(301)).unwrap();
    let fc = FitConfig::window(r.t_floor().max(1e-3), 0.1);
    let samples: Vec<(f64, f64)> = fc
        .grid()
        .into_iter()
        .map(|t| (t, heat_trace_sum(&r, t).unwrap().value * (4.0 * PI * t).sqrt()))
        .collect();
    let f = asymptotic_fit(&samples, &[0.0, 1.0, 2.0], &[], &fc).unwrap();
    assert!((f.coefficients[0] - l).abs() < 1e-6);
}

fn poly_jet(c: &[i64], order: usize) -> Jet {
    let mut v: Vec<Rational> = c.iter().map(|x| int(*x)).collect();
    v.resize(order + 1, int(0));
    Jet::from_rationals(int(0), v)
}

/// Constant `E = c` factors as `e^{tc}`, so
/// `beta_l(E = c) = sum_j c^j / j! beta_{l - 2j}(E = 0)` with the flat values
/// from the method of images.
fn constant_e_beta(phi1: &Jet, phi2: &Jet, c: i64, ell: usize) -> Scalar {
    let mut s = Scalar::zero();
    for j in 0..=ell / 2 {
        let w = Scalar::from_rational(int(c).pow(j as i32) / factorial_q(j as u64));
        s += w * image_beta(phi1, phi2, ImageBc::Dirichlet, ell - 2 * j).unwrap();
    }
    s
}

#[test]
fn oracle_matches_exact_content_coefficients() {
    let c = 2i64;
    // x (1 - x)(1 + x (1 - x)): symmetric, admissible for the l = 4 reduction
    let q = [0.0, 1.0, 0.0, -2.0, 1.0];
    let qf = move |x: f64| q.iter().rev().fold(0.0, |a, k| a * x + k);
    let phi1 = poly_jet(&[0, 1, 0, -2, 1], 8);
    let phi2 = poly_jet(&[1], 8);
    let e = Jet::constant(int(0), Scalar::from_int(c), 8);
    let d = BoundaryJetData::new(phi1.clone(), phi2.clone()).with_e(e);
    // interior: int (D^n q) with D = -(d^2 + c), by exact polynomial algebra
    let mut interior = Vec::new();
    let mut p = phi1.clone();
    for _ in 0..=6 {
        let integral: f64 = (0..=p.order())
            .map(|k| p.coeff(k).to_f64().unwrap() / (k + 1) as f64)
            .sum();
        interior.push(integral);
        let d2 = p.derivative(2).unwrap();
        let d2 = Jet::new(int(0), {
            let mut v = d2.coeffs().to_vec();
            v.resize(p.order() + 1, Scalar::zero());
            v
        });
        p = d2.add(&p.scale_q(&int(c))).unwrap().neg();
    }
    let prob =
        IntervalProblem::with_endomorphism(1.0, func(move |_| c as f64), Bc::Dirichlet, Bc::Dirichlet).unwrap();
    // beta_6 t^{7/2} is the first term outside the basis, so the window is
    // kept short
    let fit = FitConfig::window(3e-5, 1e-3);
    let (f, _) = content_fit(
        &prob,
        &qf,
        &one,
        &interior,
        &content_exponents(&[0, 1, 2, 3, 4, 5]),
        &EigenConfig::with_count(400),
        &fit,
    )
    .unwrap();
    let tol = [1e-4, 1e-3, 1e-3, 1e-2, 2e-2];
    for ell in 0..=4 {
        // both ends carry the same jets
        let exact = constant_e_beta(&phi1, &phi2, c, ell).scale(&int(2)).to_f64().unwrap();
        assert!(
            (f.coefficients[ell] - exact).abs() < tol[ell] * exact.abs().max(1.0),
            "l = {ell}: fit {} exact {exact}",
            f.coefficients[ell]
        );
    }
    // the Dirichlet engines agree with the factorization route
    assert_eq!(
        beta_base(&d, BoundaryCondition::Dirichlet, 2).unwrap().exact().unwrap(),
        &constant_e_beta(&phi1, &phi2, c, 2)
    );
    assert_eq!(
        beta_reduce(&d, BoundaryCondition::Dirichlet, 4).unwrap().exact().unwrap(),
        &constant_e_beta(&phi1, &phi2, c, 4)
    );
}

#[test]
fn gauge_route_heat_content() {
    // u = e^{-x} sin(pi x) solves -(u'' + 2 u') = (pi^2 + 1) u
    let op = heatcoef::geometry::LaplaceOp1D::new(
        Jet::constant(int(0), Scalar::one(), 4),
        Jet::constant(int(0), Scalar::from_int(2), 4),
        Jet::zero(int(0), 4),
    )
    .unwrap();
    let p = IntervalProblem::from_laplace_op(&op, 1.0, Bc::Dirichlet, Bc::Dirichlet).unwrap();
    let r = eigensolve_interval(&p, &EigenConfig::default()).unwrap();
    let u = |x: f64| (-x).exp() * (PI * x).sin();
    let mass = simpson(&u, 0.0, 1.0, 4000);
    for t in [0.01, 0.1] {
        let b = heat_content_sum(&r, &u, &one, t).unwrap().value;
        let exact = (-t * (PI * PI + 1.0)).exp() * mass;
        assert!((b - exact).abs() < 1e-8, "{b} vs {exact}");
    }
}

#[test]
fn intertwine_examples() {
    let grid = geometric_grid(0.01, 0.2, 8);
    let cfg = EigenConfig::default();
    // b = 0: A = d/dx, first Neumann mode sqrt(2) cos(pi x)
    let b0 = Smooth::constant(0.0);
    let m = Smooth::new(func(|x| 2f64.sqrt() * (PI * x).cos()), func(|x| -PI * 2f64.sqrt() * (PI * x).sin()));
    let r = intertwine_check(&b0, &m, &m, &grid, &cfg).unwrap();
    assert_eq!(r.zero_modes, 1);
    for row in &r.rows {
        let l1 = PI * PI;
        let expect = l1 * (-row.t * l1).exp();
        assert!((row.lhs - expect).abs() < 1e-8 && (row.rhs - expect).abs() < 1e-8);
    }
    let b = Smooth::from_profile(&Profile::bubble());
    let r = intertwine_check(&b, &Smooth::constant(1.0), &Smooth::constant(1.0), &grid, &cfg).unwrap();
    assert!(r.max_relative < 1e-3, "{}", r.max_relative);
    assert_eq!(r.zero_modes, 1);
}

#[test]
fn product_trick_examples() {
    let grid = geometric_grid(0.02, 0.2, 8);
    let cfg = ProductTrickConfig::default();
    let flat = product_trick_check(&Profile::zero(), &grid, &cfg).unwrap();
    assert!(flat.max_discrepancy < 1e-10);
    assert!(flat.plus_weight_max_discrepancy < 1e-10);

    let alpha = Profile::SinSquared { amplitude: rat(1, 4), frequency: int(1) };
    let r = product_trick_check(&alpha, &grid, &cfg).unwrap();
    assert!(r.max_discrepancy < 1e-4);
    for l in 1..=3 {
        assert!(r.fit.coefficients[l].abs() < 1e-2);
    }
    // the e^{+alpha} weight does not reproduce the flat content
    assert!(r.plus_weight_max_discrepancy > 1e-2);
    assert!(product_trick_check(&Profile::bubble().clone(), &grid, &cfg).is_ok());
    let bad = Profile::polynomial(vec![int(1)]);
    assert!(product_trick_check(&bad, &grid, &cfg).is_err());
}

#[test]
fn mode_contributions_decay_with_potential_floor() {
    let alpha = Profile::SinSquared { amplitude: rat(1, 4), frequency: int(1) };
    let floor = (-0.5f64).exp();
    for k in [1.0f64, 3.0, 6.0] {
        let a = alpha.clone();
        let p = IntervalProblem::schrodinger(
            1.0,
            func(move |r| k * k * (-2.0 * a.eval(r)).exp()),
            Bc::Dirichlet,
            Bc::Dirichlet,
        )
        .unwrap();
        let r = eigensolve_interval(&p, &EigenConfig { count: 20, grid: Some(1000) }).unwrap();
        assert!(r.eigenvalues[0] >= PI * PI + k * k * floor - 1e-6);
    }
}
