use std::cmp::Ordering;

use heatcoef::constructions::{
    conformal_constraint_check, greedy_conformal_content, greedy_conformal_trace, sine_power_profile, trig_integral_check,
    GrowthReport,
};
use heatcoef::numerics::{factorial_q, int, rat};
use heatcoef::{Jet, Rational, Scalar};
use num_traits::Zero;

fn x_jet(order: usize) -> Jet {
    Jet::variable(Rational::zero(), order)
}

fn half_bound(k: usize) -> Scalar {
    // 1/2 * 2^-k (2k)!
    Scalar::from_rational(factorial_q(2 * k as u64) / int(2).pow(k as i32 + 1))
}

fn check_no_cancellation(r: &GrowthReport) {
    for e in &r.entries {
        assert!(e.sign == 1 || e.sign == -1);
        assert_eq!(e.value, &e.remainder + &e.leading);
        assert_ne!(e.value.abs().exact_cmp(&e.opposite_value.abs()), Ordering::Less);
        assert_ne!(e.value.abs().exact_cmp(&e.bound), Ordering::Less);
        assert!(e.certified, "index {}", e.index);
    }
}

#[test]
fn trace_greedy_certifies() {
    let r = greedy_conformal_trace(2, 8, &x_jet(16)).unwrap();
    assert_eq!(r.c_m, Scalar::from_int(-2));
    check_no_cancellation(&r);
    for e in &r.entries {
        let n = e.index;
        // |leading| = |c_m| 2^-n (2n)!
        let expect = Scalar::from_rational(int(2) * factorial_q(2 * n as u64) / int(2).pow(n as i32));
        assert_eq!(e.bound, expect);
        assert_ne!(e.value.abs().exact_cmp(&half_bound(n)), Ordering::Less);
    }
    let first = r.entry(3).unwrap();
    assert!(first.remainder.is_zero());
    assert_eq!(first.sign, 1);
    assert_eq!(first.bound, Scalar::from_int(180));
    assert!(r.growth_constant > 0.0);
}

#[test]
fn trace_greedy_with_scaled_f() {
    let f = x_jet(12).scale_q(&rat(3, 2)).add(&Jet::monomial(Rational::zero(), 2, Scalar::one(), 12)).unwrap();
    let r = greedy_conformal_trace(2, 6, &f).unwrap();
    check_no_cancellation(&r);
    assert!(greedy_conformal_trace(2, 6, &Jet::monomial(Rational::zero(), 2, Scalar::one(), 12)).is_err());
    assert!(greedy_conformal_trace(1, 6, &x_jet(12)).is_err());
}

#[test]
fn content_greedy_certifies() {
    let r = greedy_conformal_content(2, 8).unwrap();
    assert_eq!(r.c_m, Scalar::from_int(-1));
    check_no_cancellation(&r);
    for e in &r.entries {
        assert_ne!(e.value.abs().exact_cmp(&half_bound(e.index)), Ordering::Less);
        assert_ne!(
            e.certificate.abs().exact_cmp(&Scalar::from_rational(factorial_q(e.index as u64))),
            Ordering::Less
        );
    }
    assert_ne!(r.entry(3).unwrap().certificate.abs().exact_cmp(&Scalar::from_int(6)), Ordering::Less);
    assert!(r.growth_constant > 0.0);
    assert!(greedy_conformal_content(1, 5).is_err());
}

#[test]
fn truncation_stability() {
    let short = greedy_conformal_content(2, 5).unwrap();
    let long = greedy_conformal_content(2, 7).unwrap();
    assert_eq!(short.entries[..], long.entries[..short.entries.len()]);
    let short = greedy_conformal_trace(2, 5, &x_jet(14)).unwrap();
    let long = greedy_conformal_trace(2, 7, &x_jet(14)).unwrap();
    assert_eq!(short.entries[..], long.entries[..short.entries.len()]);
}

#[test]
fn sine_profile_leading_derivative() {
    let h = sine_power_profile(&[1], 8).unwrap();
    assert_eq!(h.derivative_at_base(6).unwrap(), Scalar::from_int(90));
    for j in (1..=7).step_by(2) {
        assert!(h.coeff(j).is_zero());
    }
}

#[test]
fn trig_integral_is_independent_of_frequencies() {
    let pi2 = std::f64::consts::PI.powi(2);
    let vals: Vec<f64> = [(1, 1), (2, 8), (3, 27)]
        .iter()
        .map(|&(a, b)| trig_integral_check(a, b).unwrap().value)
        .collect();
    for v in &vals {
        assert!((v - pi2).abs() < 1e-8);
        assert!((v - vals[0]).abs() < 1e-8);
    }
    assert!(trig_integral_check(0, 1).is_err());
}

fn profile(coeffs: &[(usize, i64, i64)], order: usize) -> Jet {
    let mut c = vec![int(0); order + 1];
    for &(k, p, q) in coeffs {
        c[k] = rat(p, q);
    }
    Jet::from_rationals(int(0), c)
}

#[test]
fn top_jet_constraint_flat_start() {
    for m in [2usize, 3] {
        for mu in [3usize, 4] {
            let r = conformal_constraint_check(mu, m, &profile(&[], mu + 2)).unwrap();
            assert!(r.holds && r.quadratic_verified, "m = {m}, mu = {mu}");
            // top part of d^{mu-2} tau is -2(m-1) f^(mu)
            let w = 2 * (m as i64 - 1);
            assert_eq!(r.tau_norm[2], Scalar::from_int(w * w));
            assert!(r.tau_norm[0].is_zero() && r.tau_norm[1].is_zero());
            assert!(r.constant <= 0.0);
            assert!(r.integrand[0].is_zero());
            assert_ne!(r.integrand[2].signum(), Ordering::Equal);
        }
    }
}

#[test]
fn top_jet_constraint_with_earlier_terms() {
    let earlier = [
        profile(&[(3, 1, 6)], 8),
        profile(&[(2, 1, 2), (3, -1, 3)], 8),
        profile(&[(1, 1, 1), (2, 1, 4), (5, 2, 1)], 8),
    ];
    for lower in &earlier {
        for m in [2usize, 3] {
            for mu in [3usize, 4] {
                let r = conformal_constraint_check(mu, m, lower).unwrap();
                assert!(r.holds, "m = {m}, mu = {mu}: {r:?}");
                let w = 2 * (m as i64 - 1);
                assert_eq!(r.tau_norm[2], Scalar::from_int(w * w));
            }
        }
    }
    assert!(conformal_constraint_check(3, 1, &earlier[0]).is_err());
    assert!(conformal_constraint_check(2, 2, &earlier[0]).is_err());
    assert!(conformal_constraint_check(6, 2, &profile(&[], 4)).is_err());
}
