//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use divdiff::oracle::RationalPoly;
use divdiff::{rat, Rational, SampleSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-30..=30), rng.gen_range(1..=7))
}

/// `count` distinct rationals with denominator `den`, numerators in ±`span`.
pub fn distinct_rationals(rng: &mut impl Rng, count: usize, span: i64, den: i64) -> Vec<Rational> {
    let mut pool: Vec<i64> = (-span..=span).collect();
    pool.shuffle(rng);
    pool[..count].iter().map(|&p| rat(p, den)).collect()
}

pub fn random_poly(rng: &mut impl Rng, degree: usize) -> RationalPoly {
    RationalPoly::new((0..=degree).map(|_| small_rational(rng)).collect())
}

pub fn poly_samples(nodes: Vec<Rational>, p: &RationalPoly) -> SampleSet<Rational> {
    SampleSet::from_fn(nodes, |x| p.eval(x)).expect("distinct nodes")
}

/// Distinct doubles in [lo, hi).
pub fn distinct_f64(rng: &mut impl Rng, count: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(count);
    while out.len() < count {
        let v = rng.gen_range(lo..hi);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}
