//! Property tests for the integration rules.

mod common;

use divdiff::quadrature::{
    even_quad_weights, quad_central, quad_composite, quad_even, quad_uneven, CentralQuadPlan, UnevenQuadPlan,
};
use divdiff::{rat, Exec, Rational, Scalar, TwoSided};
use proptest::prelude::*;
use rand::Rng;

fn power_integral(d: u32, lo: i64, hi: i64) -> Rational {
    (rat(hi, 1).powu(d + 1) - rat(lo, 1).powu(d + 1)) / rat(d as i64 + 1, 1)
}

#[test]
fn closed_rules_are_palindromic() {
    for n in 1..=8 {
        let w = even_quad_weights::<Rational>(n).unwrap().weights;
        let mut rev = w.clone();
        rev.reverse();
        assert_eq!(w, rev, "n={n}");
    }
}

#[test]
fn closed_rule_degree_of_exactness() {
    for n in 1..=8usize {
        let w = even_quad_weights::<Rational>(n).unwrap().weights;
        let top = if n % 2 == 0 { n + 1 } else { n };
        for d in 0..=top as u32 {
            let got = w.iter().enumerate().fold(rat(0, 1), |acc, (i, wi)| acc + wi * rat(i as i64, 1).powu(d));
            assert_eq!(got, power_integral(d, 0, n as i64), "n={n} d={d}");
        }
        // one degree further is not integrated exactly
        let d = top as u32 + 1;
        let got = w.iter().enumerate().fold(rat(0, 1), |acc, (i, wi)| acc + wi * rat(i as i64, 1).powu(d));
        assert_ne!(got, power_integral(d, 0, n as i64), "n={n} d={d}");
    }
}

#[test]
fn weights_sum_to_interval_length() {
    for n in 1..=8usize {
        let even = even_quad_weights::<Rational>(n).unwrap().weights;
        assert_eq!(even.iter().fold(rat(0, 1), |a, w| a + w), rat(n as i64, 1));
        let central = CentralQuadPlan::<Rational>::new(n).unwrap().weights;
        assert_eq!(central.iter().fold(rat(0, 1), |a, w| a + w), rat(2 * n as i64, 1));
    }
}

#[test]
fn symmetric_rules_match_closed_rules() {
    let mut rng = common::rng(29);
    for n in 1..=3usize {
        let weights = CentralQuadPlan::<Rational>::new(n).unwrap().weights;
        assert_eq!(weights, even_quad_weights::<Rational>(2 * n).unwrap().weights);
        for _ in 0..20 {
            let values: Vec<f64> = (0..=2 * n).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let h: f64 = rng.gen_range(0.01..2.0);
            let a = quad_central(&TwoSided::symmetric(values.clone()).unwrap(), &h).unwrap();
            let b = quad_even(&values, &h).unwrap();
            assert!((a - b).abs() <= 1e-12 * a.abs().max(b.abs()), "n={n}: {a} vs {b}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn uneven_rule_exact_on_polynomials(seed in any::<u64>(), n in 0usize..=6, xn in -40i64..=40, hn in 1i64..=30) {
        let mut rng = common::rng(seed);
        let degree = rng.gen_range(0..=n);
        let p = common::random_poly(&mut rng, degree);
        let samples = common::poly_samples(common::distinct_rationals(&mut rng, n + 1, 30, 4), &p);
        let x = rat(2 * xn + 1, 16);
        prop_assume!(!samples.nodes().contains(&x));
        let h = rat(hn, 10);
        let expect = p.integral(&x, &(x.clone() + h.clone()));
        prop_assert_eq!(quad_uneven(&samples, &x, &h).unwrap(), expect);
        let plan = UnevenQuadPlan::new(&samples, &x, &h).unwrap();
        prop_assert_eq!(plan.node_weights.iter().fold(rat(0, 1), |a, w| a + w), h);
    }

    #[test]
    fn symmetric_rule_exact_through_degree_2n_plus_1(seed in any::<u64>(), n in 1usize..=4, an in -10i64..=10, hn in 1i64..=8) {
        let mut rng = common::rng(seed);
        let p = common::random_poly(&mut rng, 2 * n + 1);
        let a = rat(an, 3);
        let h = rat(hn, 4);
        let values = TwoSided::symmetric(
            (-(n as i64)..=n as i64).map(|i| p.eval(&(a.clone() + h.clone() * rat(i, 1)))).collect(),
        ).unwrap();
        let span = h.clone() * rat(n as i64, 1);
        let expect = p.integral(&(a.clone() - span.clone()), &(a + span));
        prop_assert_eq!(quad_central(&values, &h).unwrap(), expect);
    }

    #[test]
    fn composite_sequential_and_parallel_agree(panels in 1usize..=64, n in 1usize..=6, p in -3.0f64..0.0, len in 0.1f64..5.0) {
        let f = |x: f64| (1.3 * x).sin() * x.exp();
        let a = quad_composite(f, p, p + len, panels, n, Exec::Sequential).unwrap();
        let b = quad_composite(f, p, p + len, panels, n, Exec::Parallel).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn closed_rule_matches_rational_integral_in_double_precision() {
    let mut rng = common::rng(31);
    for n in 1..=8usize {
        let p = common::random_poly(&mut rng, n);
        let values: Vec<f64> = (0..=n).map(|i| p.eval(&rat(i as i64, 2)).to_f64()).collect();
        let got = quad_even(&values, &0.5).unwrap();
        let expect = p.integral(&rat(0, 1), &rat(n as i64, 2)).to_f64();
        assert!((got - expect).abs() <= 1e-10 * expect.abs().max(1.0), "n={n}: {got} vs {expect}");
    }
}
