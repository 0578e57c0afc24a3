mod common;

use common::{bivector, c, config, poly};
use ncphase::phase::parse_poly;
use ncphase::{moyal_bracket, poisson_bracket, star, Bivector, GeneratorSet, PhasePoly};
use proptest::prelude::*;

const TOL: f64 = 1e-12;

fn coords3() -> GeneratorSet {
    GeneratorSet::coordinates(3).unwrap()
}

fn phase2() -> GeneratorSet {
    GeneratorSet::phase_space(2).unwrap()
}

fn jacobi(f: &PhasePoly, g: &PhasePoly, h: &PhasePoly, pi: &Bivector) -> PhasePoly {
    let br = |a: &PhasePoly, b: &PhasePoly| moyal_bracket(a, b, pi).unwrap();
    &(&br(f, &br(g, h)) + &br(g, &br(h, f))) + &br(h, &br(f, g))
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn star_is_associative(
        (pi, f, g, h) in bivector(coords3()).prop_flat_map(|pi| {
            let gs = pi.generators();
            (Just(pi), poly(gs, 4, 4), poly(gs, 4, 4), poly(gs, 4, 4))
        })
    ) {
        let left = star(&star(&f, &g, &pi).unwrap(), &h, &pi).unwrap();
        let right = star(&f, &star(&g, &h, &pi).unwrap(), &pi).unwrap();
        prop_assert!(left.approx_eq(&right, TOL), "residual {}", (&left - &right).max_abs());
    }

    #[test]
    fn star_is_associative_on_phase_space(
        (pi, f, g, h) in bivector(phase2()).prop_flat_map(|pi| {
            let gs = pi.generators();
            (Just(pi), poly(gs, 3, 3), poly(gs, 3, 3), poly(gs, 3, 3))
        })
    ) {
        let left = star(&star(&f, &g, &pi).unwrap(), &h, &pi).unwrap();
        let right = star(&f, &star(&g, &h, &pi).unwrap(), &pi).unwrap();
        prop_assert!(left.approx_eq(&right, TOL));
    }

    #[test]
    fn moyal_bracket_satisfies_jacobi(
        (pi, f, g, h) in bivector(coords3()).prop_flat_map(|pi| {
            let gs = pi.generators();
            (Just(pi), poly(gs, 3, 3), poly(gs, 3, 3), poly(gs, 3, 3))
        })
    ) {
        prop_assert!(jacobi(&f, &g, &h, &pi).is_zero_within(TOL));
    }

    #[test]
    fn star_is_bilinear(
        (pi, f, g, h) in bivector(coords3()).prop_flat_map(|pi| {
            let gs = pi.generators();
            (Just(pi), poly(gs, 3, 3), poly(gs, 3, 3), poly(gs, 3, 3))
        }),
        re in -3i32..=3, im in -3i32..=3,
    ) {
        let s = c(re as f64, im as f64);
        let lhs = star(&(&f + &g.scale(s)), &h, &pi).unwrap();
        let rhs = &star(&f, &h, &pi).unwrap() + &star(&g, &h, &pi).unwrap().scale(s);
        prop_assert!(lhs.approx_eq(&rhs, TOL));
        let lhs = star(&h, &(&f + &g.scale(s)), &pi).unwrap();
        let rhs = &star(&h, &f, &pi).unwrap() + &star(&h, &g, &pi).unwrap().scale(s);
        prop_assert!(lhs.approx_eq(&rhs, TOL));
    }

    #[test]
    fn zero_bivector_is_commutative(f in poly(coords3(), 4, 4), g in poly(coords3(), 4, 4)) {
        let pi = Bivector::zero(coords3());
        prop_assert_eq!(star(&f, &g, &pi).unwrap(), &f * &g);
        prop_assert!(moyal_bracket(&f, &g, &pi).unwrap().is_zero());
    }

    #[test]
    fn unit_and_self_bracket(
        (pi, f) in bivector(coords3()).prop_flat_map(|pi| {
            let gs = pi.generators();
            (Just(pi), poly(gs, 4, 4))
        })
    ) {
        prop_assert_eq!(star(&f, &PhasePoly::one(coords3()), &pi).unwrap(), f.clone());
        prop_assert_eq!(star(&PhasePoly::one(coords3()), &f, &pi).unwrap(), f.clone());
        prop_assert!(moyal_bracket(&f, &f, &pi).unwrap().is_zero_within(TOL));
    }

    #[test]
    fn generator_bracket_is_a_derivation(
        (pi, f, g) in bivector(coords3()).prop_flat_map(|pi| {
            let gs = pi.generators();
            (Just(pi), poly(gs, 3, 3), poly(gs, 3, 3))
        }),
        a in 0usize..3,
    ) {
        let x = PhasePoly::generator(coords3(), a);
        let lhs = moyal_bracket(&x, &star(&f, &g, &pi).unwrap(), &pi).unwrap();
        let rhs = &star(&moyal_bracket(&x, &f, &pi).unwrap(), &g, &pi).unwrap()
            + &star(&f, &moyal_bracket(&x, &g, &pi).unwrap(), &pi).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, TOL));
        // [xᵃ, f] = iΠᵃᵇ∂ᵦf
        let mut expect = PhasePoly::zero(coords3());
        for b in 0..3 {
            expect = &expect + &f.derivative(b).scale(c(0.0, pi.get(a, b)));
        }
        prop_assert!(moyal_bracket(&x, &f, &pi).unwrap().approx_eq(&expect, TOL));
    }

    #[test]
    fn moyal_over_is_tends_to_poisson(
        (pi, f, g) in bivector(coords3()).prop_flat_map(|pi| {
            let gs = pi.generators();
            (Just(pi), poly(gs, 4, 3), poly(gs, 4, 3))
        })
    ) {
        let pb = poisson_bracket(&f, &g, &pi).unwrap();
        let residual = |s: f64| {
            let m = moyal_bracket(&f, &g, &pi.scaled(s)).unwrap().scale(c(0.0, -1.0 / s));
            (&m - &pb).max_abs()
        };
        let (r1, r2) = (residual(1e-2), residual(1e-3));
        // Only odd powers of s appear, so the remainder is O(s²).
        prop_assert!(r1 <= 1e4 * 1e-4, "r1 {r1}");
        if r1 > 1e-9 {
            prop_assert!(r2 / r1 < 0.02, "ratio {}", r2 / r1);
        }
    }

    #[test]
    fn mixed_jacobi_with_inverse_momentum_block(
        t in prop::sample::select(vec![-2.0, -0.5, 0.25, 1.0, 3.0]),
        (f, g, h) in (poly(phase2(), 3, 3), poly(phase2(), 3, 3), poly(phase2(), 3, 3)),
    ) {
        let tx = Bivector::theta(t);
        let tp = tx.inverse_bivector().unwrap();
        let pi = Bivector::phase_space(&tx, &tp).unwrap();
        prop_assert!(jacobi(&f, &g, &h, &pi).is_zero_within(TOL));
    }

    #[test]
    fn render_parse_round_trip(f in poly(phase2(), 4, 5)) {
        let text = f.to_string();
        prop_assert_eq!(parse_poly(&text, phase2()).unwrap(), f);
    }
}

#[test]
fn linear_symbols_have_exact_brackets() {
    let g = phase2();
    let pi = Bivector::canonical(2).unwrap();
    let x = PhasePoly::generator(g, 0);
    let p = PhasePoly::generator(g, 2);
    assert_eq!(poisson_bracket(&x, &p, &pi).unwrap(), PhasePoly::one(g));
    assert_eq!(
        moyal_bracket(&x, &p, &pi).unwrap(),
        poisson_bracket(&x, &p, &pi).unwrap().scale(c(0.0, 1.0))
    );
}
