//! Property tests for the interpolation formulas.

mod common;

use divdiff::interpolation::{
    interpolate_backward_even, interpolate_barycentric, interpolate_central, interpolate_forward_even,
    interpolate_general, CentralVariant,
};
use divdiff::oracle::oracle_interpolate;
use divdiff::{rat, Rational, SampleSet, Scalar, TwoSided};
use proptest::prelude::*;
use rand::Rng;

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_split_matches_oracle(seed in any::<u64>(), len in 1usize..=8, xn in -60i64..=60) {
        let mut rng = common::rng(seed);
        let nodes = common::distinct_rationals(&mut rng, len, 30, 4);
        let values: Vec<Rational> = (0..len).map(|_| common::small_rational(&mut rng)).collect();
        let samples = SampleSet::new(nodes, values).unwrap();
        let x = rat(xn, 9);
        let expect = oracle_interpolate(samples.nodes(), samples.values(), &x).unwrap();
        for r in 0..len {
            prop_assert_eq!(interpolate_general(&samples, r, &x).unwrap(), expect.clone());
            prop_assert_eq!(interpolate_barycentric(&samples, r, &x).unwrap(), expect.clone());
        }
    }

    #[test]
    fn node_reproduction(seed in any::<u64>(), len in 1usize..=10) {
        let mut rng = common::rng(seed);
        let nodes = common::distinct_rationals(&mut rng, len, 30, 4);
        let values: Vec<Rational> = (0..len).map(|_| common::small_rational(&mut rng)).collect();
        let samples = SampleSet::new(nodes, values).unwrap();
        let approx = samples.to_f64();
        for r in 0..len {
            for i in 0..len {
                prop_assert_eq!(interpolate_general(&samples, r, samples.node(i)).unwrap(), samples.value(i).clone());
                let got = interpolate_general(&approx, r, approx.node(i)).unwrap();
                prop_assert!(rel_close(got, *approx.value(i), 1e-12), "r={} i={}: {} vs {}", r, i, got, approx.value(i));
            }
        }
    }

    #[test]
    fn polynomial_exactness(seed in any::<u64>(), n in 1usize..=7) {
        let mut rng = common::rng(seed);
        let degree = rng.gen_range(0..=n);
        let p = common::random_poly(&mut rng, degree);
        let samples = common::poly_samples(common::distinct_rationals(&mut rng, n + 1, 30, 3), &p);
        let lo = samples.nodes().iter().min().unwrap().clone();
        let hi = samples.nodes().iter().max().unwrap().clone();
        for k in 0..=20 {
            let x = lo.clone() + (hi.clone() - lo.clone()) * rat(k, 20);
            let r = k as usize % (n + 1);
            prop_assert_eq!(interpolate_general(&samples, r, &x).unwrap(), p.eval(&x));
        }
    }

    #[test]
    fn grid_forms_are_step_invariant(
        n in 1usize..=8,
        r_pick in any::<proptest::sample::Index>(),
        x0 in -3.0f64..3.0,
        h in prop_oneof![-2.0f64..-0.01, 0.01f64..2.0],
        s in -1.0f64..9.0,
    ) {
        let r = r_pick.index(n + 1);
        let f = |x: f64| (0.3 * x).sin() + 0.5 * (0.2 * x).exp();
        let fwd: Vec<f64> = (0..=n).map(|i| f(x0 + i as f64 * h)).collect();
        let fwd_samples = SampleSet::new((0..=n).map(|i| x0 + i as f64 * h).collect(), fwd.clone()).unwrap();
        let a = interpolate_forward_even(&fwd, r, &s).unwrap();
        let b = interpolate_general(&fwd_samples, r, &(x0 + s * h)).unwrap();
        prop_assert!(rel_close(a, b, 1e-10), "forward {} vs {}", a, b);

        let back: Vec<f64> = (0..=n).map(|i| f(x0 - i as f64 * h)).collect();
        let back_samples = SampleSet::new((0..=n).map(|i| x0 - i as f64 * h).collect(), back.clone()).unwrap();
        let a = interpolate_backward_even(&back, r, &-s).unwrap();
        let b = interpolate_general(&back_samples, r, &(x0 - s * h)).unwrap();
        prop_assert!(rel_close(a, b, 1e-10), "backward {} vs {}", a, b);
    }

    #[test]
    fn central_variants_agree(
        m in 1usize..=4,
        n in 1usize..=4,
        r_pick in any::<proptest::sample::Index>(),
        s in -1.5f64..1.5,
        phase in 0.0f64..3.0,
    ) {
        let r = 1 + r_pick.index(m.min(n));
        let values = TwoSided::new(m, n, (-(m as i64)..=n as i64).map(|i| (0.4 * i as f64 + phase).cos() * 3.0 + 1.0).collect()).unwrap();
        let results: Vec<f64> = CentralVariant::ALL
            .iter()
            .map(|&v| interpolate_central(&values, r, &s, v).unwrap())
            .collect();
        for a in &results {
            for b in &results {
                prop_assert!(rel_close(*a, *b, 1e-9), "{:?}", results);
            }
        }
    }

    #[test]
    fn central_variants_match_oracle(seed in any::<u64>(), m in 1usize..=3, n in 1usize..=3, sn in -12i64..=12) {
        let mut rng = common::rng(seed);
        let values: Vec<Rational> = (0..=m + n).map(|_| common::small_rational(&mut rng)).collect();
        let nodes: Vec<Rational> = (-(m as i64)..=n as i64).map(|i| rat(i, 1)).collect();
        let s = rat(sn, 5);
        let expect = oracle_interpolate(&nodes, &values, &s).unwrap();
        let data = TwoSided::new(m, n, values).unwrap();
        for r in 1..=m.min(n) {
            for v in CentralVariant::ALL {
                prop_assert_eq!(interpolate_central(&data, r, &s, v).unwrap(), expect.clone(), "{} r={}", v.name(), r);
            }
        }
    }
}

#[test]
fn barycentric_matches_general_on_degree_five() {
    let mut rng = common::rng(55);
    for _ in 0..20 {
        let nodes = common::distinct_f64(&mut rng, 6, -1.0, 1.0);
        let coeffs: Vec<f64> = (0..6).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let samples = SampleSet::from_fn(nodes, |x| coeffs.iter().rev().fold(0.0, |a, c| a * x + c)).unwrap();
        for _ in 0..100 {
            let x: f64 = rng.gen_range(-1.0..1.0);
            let a = interpolate_barycentric(&samples, 2, &x).unwrap();
            let b = interpolate_general(&samples, 2, &x).unwrap();
            assert!(rel_close(a, b, 1e-9), "{a} vs {b} at {x}");
        }
    }
}

#[test]
fn new_central_variants_accept_r_zero() {
    let data = TwoSided::new(2, 2, vec![1.0, 2.0, 0.5, 3.0, -1.0]).unwrap();
    let nodes: Vec<Rational> = (-2..=2).map(|i| rat(i, 1)).collect();
    let vals: Vec<Rational> = data.values().iter().map(|v| Rational::from_f64(*v).unwrap()).collect();
    let expect = oracle_interpolate(&nodes, &vals, &rat(3, 10)).unwrap().to_f64();
    for v in [CentralVariant::NewForward, CentralVariant::NewBackward] {
        let got = interpolate_central(&data, 0, &0.3, v).unwrap();
        assert!(rel_close(got, expect, 1e-12), "{} {got} vs {expect}", v.name());
    }
    assert!(interpolate_central(&data, 0, &0.3, CentralVariant::Stirling).is_err());
    assert!(interpolate_central(&data, 3, &0.3, CentralVariant::NewForward).is_err());
}
