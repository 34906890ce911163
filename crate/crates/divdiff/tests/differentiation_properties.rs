//! Property tests for the derivative formulas and their coefficients.

mod common;

use divdiff::differentiation::{
    central_derivative, derivative_lincomb, derivative_uneven, derivative_uneven_counted, forward_derivative,
    rho_coeffs, stencil_weights, twosided_derivative, CentralCoeffs, ForwardCoeffs, TwoSidedCoeffs,
};
use divdiff::oracle::golden;
use divdiff::{rat, OpCounts, Rational, SampleSet, Scalar, TwoSided};
use proptest::prelude::*;
use rand::Rng;

fn factorial(t: usize) -> Rational {
    (1..=t as i64).fold(rat(1, 1), |acc, i| acc * rat(i, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stencil_moment_conditions(m in 0usize..=5, n in 0usize..=5, t_pick in any::<proptest::sample::Index>()) {
        prop_assume!(m + n >= 1);
        let t = 1 + t_pick.index(m + n);
        let w = stencil_weights::<Rational>(m, n, t).unwrap();
        for j in 0..=(m + n) as u32 {
            let expect = if j as usize == t { factorial(t) } else { rat(0, 1) };
            prop_assert_eq!(w.moment(j), expect, "m={} n={} t={} j={}", m, n, t, j);
        }
    }

    #[test]
    fn uneven_paths_exact_on_polynomials(seed in any::<u64>(), n in 1usize..=6, xn in -40i64..=40) {
        let mut rng = common::rng(seed);
        let degree = rng.gen_range(0..=n);
        let p = common::random_poly(&mut rng, degree);
        let samples = common::poly_samples(common::distinct_rationals(&mut rng, n + 1, 30, 4), &p);
        let x = rat(2 * xn + 1, 16);
        prop_assume!(!samples.nodes().contains(&x));
        let fx = p.eval(&x);
        for t in 1..=n {
            let expect = p.derivative(t).eval(&x);
            prop_assert_eq!(derivative_uneven(&samples, &x, t, None).unwrap(), expect.clone(), "uneven t={}", t);
            prop_assert_eq!(derivative_uneven(&samples, &x, t, Some(&fx)).unwrap(), expect.clone(), "uneven+fx t={}", t);
            prop_assert_eq!(derivative_lincomb(&samples, &x, t, None).unwrap(), expect.clone(), "lincomb t={}", t);
            prop_assert_eq!(derivative_lincomb(&samples, &x, t, Some(&fx)).unwrap(), expect, "lincomb+fx t={}", t);
        }
    }

    #[test]
    fn closed_form_matches_moment_recurrence(seed in any::<u64>(), n in 1usize..=6, xn in -40i64..=40) {
        let mut rng = common::rng(seed);
        let nodes = common::distinct_rationals(&mut rng, n + 1, 30, 4);
        let values: Vec<Rational> = (0..=n).map(|_| common::small_rational(&mut rng)).collect();
        let samples = SampleSet::new(nodes, values).unwrap();
        let x = rat(2 * xn + 1, 16);
        prop_assume!(!samples.nodes().contains(&x));
        for t in 1..=n {
            let mut ops = OpCounts::default();
            let termwise = derivative_uneven_counted(&samples, &x, t, &mut ops).unwrap();
            prop_assert_eq!(derivative_uneven(&samples, &x, t, None).unwrap() / factorial(t), termwise);
        }
    }

    #[test]
    fn grid_paths_exact_on_polynomials(seed in any::<u64>(), m in 0usize..=4, n in 0usize..=4) {
        prop_assume!(m + n >= 1);
        let mut rng = common::rng(seed);
        let p = common::random_poly(&mut rng, m + n);
        let a = common::small_rational(&mut rng);
        let h = rat(rng.gen_range(1..=9), rng.gen_range(1..=5));
        let values = TwoSided::new(m, n, (-(m as i64)..=n as i64).map(|i| p.eval(&(a.clone() + h.clone() * rat(i, 1)))).collect()).unwrap();
        for t in 1..=m + n {
            let expect = p.derivative(t).eval(&a);
            prop_assert_eq!(twosided_derivative(&values, &h, t).unwrap(), expect.clone());
            if m == 0 {
                prop_assert_eq!(forward_derivative(values.values(), &h, t).unwrap(), expect.clone());
            }
            if m == n {
                prop_assert_eq!(central_derivative(&values, &h, t).unwrap(), expect);
            }
        }
    }

    #[test]
    fn lincomb_agrees_with_uneven(seed in any::<u64>(), n in 2usize..=8, k_pick in any::<proptest::sample::Index>()) {
        let mut rng = common::rng(seed);
        let k = 1 + k_pick.index(n.min(3));
        // one node per cell of [0, 2], jittered inside the middle 70% of the cell
        let cell = 2.0 / (n + 1) as f64;
        let nodes: Vec<f64> = (0..=n).map(|i| (i as f64 + 0.5 + rng.gen_range(-0.35..0.35)) * cell).collect();
        let lo = nodes.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = nodes.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let x = 0.5 * (lo + hi) + rng.gen_range(-0.1..0.1) * (hi - lo);
        prop_assume!(!nodes.contains(&x));
        let f = |x: &f64| x.exp() * (1.0 + x.sin());
        let samples = SampleSet::from_fn(nodes, f).unwrap();
        let a = derivative_uneven(&samples, &x, k, None).unwrap();
        let b = derivative_lincomb(&samples, &x, k, None).unwrap();
        prop_assert!((a - b).abs() <= 1e-8 * a.abs().max(b.abs()), "k={} {} vs {}", k, a, b);
    }

    #[test]
    fn odd_rho_vanish_on_symmetric_nodes(half in 1usize..=4, hn in 1i64..=9, an in -20i64..=20, kmax in 1usize..=7) {
        let h = rat(hn, 4);
        let a = rat(an, 3);
        let nodes: Vec<Rational> = (-(half as i64)..=half as i64)
            .filter(|&i| i != 0)
            .map(|i| a.clone() + h.clone() * rat(i, 1))
            .collect();
        let samples = SampleSet::new(nodes.clone(), nodes).unwrap();
        let rho = rho_coeffs(&samples, &a, kmax).unwrap();
        for m in (1..=kmax).step_by(2) {
            prop_assert_eq!(rho.get(m).clone(), rat(0, 1));
        }
    }

    #[test]
    fn central_coefficients_have_parity(n in 1usize..=8, t in 1usize..=12) {
        let c = CentralCoeffs::<Rational>::new(n, t);
        for k in (1..=t).step_by(2) {
            prop_assert_eq!(c.a_tilde[k].clone(), rat(0, 1));
        }
        let both = TwoSidedCoeffs::<Rational>::new(n, n, t);
        prop_assert_eq!(both.a_fwd, c.a);
    }
}

#[test]
fn first_forward_moment_is_harmonic() {
    for n in 1..=20usize {
        let h: f64 = (1..=n).map(|i| 1.0 / i as f64).sum();
        let u = ForwardCoeffs::<f64>::new(n, 1).u[1];
        assert!((u - h).abs() <= 1e-12 * h, "n={n}: {u} vs {h}");
        assert_eq!(ForwardCoeffs::<Rational>::new(n, 1).u[1], (1..=n as i64).fold(rat(0, 1), |acc, i| acc + rat(1, i)));
    }
}

#[test]
fn golden_stencils_satisfy_moments() {
    for name in ["backward-5pt-d2", "skew-back-5pt-d2", "central-5pt-d2", "skew-fwd-5pt-d2", "forward-5pt-d2"] {
        let g = golden(name).unwrap();
        for j in 0..g.offsets.len() as u32 {
            let moment = g.offsets.iter().zip(&g.weights).fold(rat(0, 1), |acc, (&o, w)| acc + w * rat(o, 1).powu(j));
            let expect = if j as usize == g.t { factorial(g.t) } else { rat(0, 1) };
            assert_eq!(moment, expect, "{name} j={j}");
        }
    }
}

#[test]
fn central_limit_of_a_coefficients() {
    // The gap to (−1)^{i−1} grows like i²/n, so only the leading few are checked.
    let c = CentralCoeffs::<f64>::new(1000, 2);
    for (i, a) in c.a.iter().take(3).enumerate() {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        assert!((a - sign).abs() < 1e-2, "A_{} = {a}", i + 1);
    }
}
