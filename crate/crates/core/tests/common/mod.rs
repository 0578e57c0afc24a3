#![allow(dead_code)]

use ncphase::{Bivector, GeneratorSet, PhasePoly};
use num_complex::Complex64;
use proptest::prelude::*;

/// Random polynomial with small dyadic coefficients and total degree ≤ `max_deg`.
pub fn poly(gens: GeneratorSet, max_deg: u32, max_terms: usize) -> impl Strategy<Value = PhasePoly> {
    let n = gens.len();
    let term = (
        prop::collection::vec(0..=max_deg, n),
        -4i32..=4,
        -4i32..=4,
    );
    prop::collection::vec(term, 1..=max_terms).prop_map(move |terms| {
        PhasePoly::from_terms(
            gens,
            terms.into_iter().map(|(mut e, re, im)| {
                let mut budget = max_deg;
                for k in e.iter_mut() {
                    *k = (*k).min(budget);
                    budget -= *k;
                }
                (e, Complex64::new(re as f64 / 2.0, im as f64 / 2.0))
            }),
        )
    })
}

/// Real-coefficient variant.
pub fn real_poly(gens: GeneratorSet, max_deg: u32, max_terms: usize) -> impl Strategy<Value = PhasePoly> {
    poly(gens, max_deg, max_terms).prop_map(|p| {
        PhasePoly::from_terms(
            p.generators(),
            p.terms().map(|(e, c)| (e.clone(), Complex64::new(c.re, 0.0))),
        )
    })
}

/// Random bivector with entries in multiples of 1/8 from −1 to 1.
pub fn bivector(gens: GeneratorSet) -> impl Strategy<Value = Bivector> {
    let n = gens.len();
    prop::collection::vec(-8i32..=8, n * (n - 1) / 2).prop_map(move |u| {
        let upper: Vec<f64> = u.into_iter().map(|k| k as f64 / 8.0).collect();
        Bivector::from_upper(gens, &upper).unwrap()
    })
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Seed for every randomized test, overridable through `NC_SEED`.
pub fn seed() -> u64 {
    std::env::var("NC_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(20_240_917)
}

/// Property-test configuration with a fixed seed.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(seed()),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
