mod common;

use common::{c, config, poly};
use nalgebra::DMatrix;
use ncphase::fock::{FockBasis, OperatorMatrix};
use ncphase::gauge::{
    covariant_derivative, covariant_derivative_c_form, field_strength, gauge_transform,
    sw_field_strength, vacuum_coords, ym_action, CovariantCoords, MatrixPoly, SwConvention,
};
use ncphase::{star, Bivector, GeneratorSet, PhasePoly};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn coords2() -> GeneratorSet {
    GeneratorSet::coordinates(2).unwrap()
}

fn random_hermitian(rng: &mut ChaCha8Rng, basis: &FockBasis, states: &[usize]) -> OperatorMatrix {
    let d = basis.dim();
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for (a, &i) in states.iter().enumerate() {
        for &j in &states[a..] {
            let z = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            if i == j {
                m[(i, i)] = c(z.re, 0.0);
            } else {
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
    }
    OperatorMatrix::new(basis.clone(), m).unwrap()
}

/// `exp(iH)` with `H` block diagonal on interior ⊕ exterior states.
fn block_unitary(rng: &mut ChaCha8Rng, basis: &FockBasis, margin: usize) -> OperatorMatrix {
    let inner = basis.interior_states(margin).unwrap();
    let outer: Vec<usize> = (0..basis.dim()).filter(|s| !inner.contains(s)).collect();
    let h = &random_hermitian(rng, basis, &inner) + &random_hermitian(rng, basis, &outer);
    h.scale(c(0.0, 1.0)).exp()
}

fn perturbed_coords(rng: &mut ChaCha8Rng) -> CovariantCoords {
    let b = FockBasis::bose(12).unwrap();
    let cc = vacuum_coords(&Bivector::theta(0.8), &b).unwrap();
    let all: Vec<usize> = (0..b.dim()).collect();
    let h = [random_hermitian(rng, &b, &all), random_hermitian(rng, &b, &all)];
    cc.perturbed(&h, 0.3).unwrap()
}

#[test]
fn action_is_gauge_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(common::seed());
    let cc = perturbed_coords(&mut rng);
    let s0 = ym_action(&cc, 2).unwrap();
    assert!(s0 > 1e-3);
    for _ in 0..20 {
        let u = block_unitary(&mut rng, cc.basis(), 2);
        let s1 = ym_action(&gauge_transform(&cc, &u).unwrap(), 2).unwrap();
        assert!((s1 - s0).abs() <= 1e-9 * s0.max(1.0), "{s0} vs {s1}");
    }
}

#[test]
fn field_strength_is_covariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(common::seed() + 1);
    let cc = perturbed_coords(&mut rng);
    let u = block_unitary(&mut rng, cc.basis(), 2);
    let f = field_strength(&cc);
    let g = field_strength(&gauge_transform(&cc, &u).unwrap());
    let conj = &(&u * &f[0][1]) * &u.adjoint();
    assert!(g[0][1].interior_distance(&conj, 2).unwrap() <= 1e-9);
    assert!(f[0][1].interior_block(2).unwrap().hermitian_deviation() <= 1e-10);
}

#[test]
fn transforms_compose_and_identity_is_trivial() {
    let mut rng = ChaCha8Rng::seed_from_u64(common::seed() + 2);
    let cc = perturbed_coords(&mut rng);
    let id = OperatorMatrix::identity(cc.basis());
    let same = gauge_transform(&cc, &id).unwrap();
    assert_eq!(same.coords(), cc.coords());
    let u1 = block_unitary(&mut rng, cc.basis(), 2);
    let u2 = block_unitary(&mut rng, cc.basis(), 2);
    let step = gauge_transform(&gauge_transform(&cc, &u1).unwrap(), &u2).unwrap();
    let once = gauge_transform(&cc, &(&u2 * &u1)).unwrap();
    for (a, b) in step.coords().iter().zip(once.coords()) {
        assert!((a - b).max_abs() <= 1e-12);
    }
}

#[test]
fn constant_shift_leaves_field_strength() {
    let mut rng = ChaCha8Rng::seed_from_u64(common::seed() + 3);
    let cc = perturbed_coords(&mut rng);
    let id = OperatorMatrix::identity(cc.basis());
    let shifted = cc.perturbed(&[id.scale_real(1.5), id.scale_real(-0.25)], 1.0).unwrap();
    let f = field_strength(&cc);
    let g = field_strength(&shifted);
    assert!((&f[0][1] - &g[0][1]).max_abs() <= 1e-12);
}

#[test]
fn first_order_response_of_field_strength() {
    let mut rng = ChaCha8Rng::seed_from_u64(common::seed() + 4);
    let cc = perturbed_coords(&mut rng);
    let all: Vec<usize> = (0..cc.basis().dim()).collect();
    let h = [random_hermitian(&mut rng, cc.basis(), &all), random_hermitian(&mut rng, cc.basis(), &all)];
    let eps = 1e-4;
    let plus = field_strength(&cc.perturbed(&h, eps).unwrap());
    let minus = field_strength(&cc.perturbed(&h, -eps).unwrap());
    let fd = (&plus[0][1] - &minus[0][1]).scale_real(0.5 / eps);
    let (c1, c2) = (&cc.coords()[0], &cc.coords()[1]);
    let linear = (&h[0].commutator(c2) + &c1.commutator(&h[1])).scale(c(0.0, -1.0));
    assert!((&fd - &linear).max_abs() <= 1e-6);
}

#[test]
fn vacuum_scaling_and_hermiticity() {
    let b = FockBasis::bose(12).unwrap();
    let c1 = vacuum_coords(&Bivector::theta(0.5), &b).unwrap();
    let c2 = vacuum_coords(&Bivector::theta(1.0), &b).unwrap();
    let r1: f64 = c1.coords().iter().map(|c| c.data().norm()).sum();
    let r2: f64 = c2.coords().iter().map(|c| c.data().norm()).sum();
    // The adapted map scales x̂ by √θ and θ⁻¹ by 1/θ.
    assert!((r1 / r2 - 2f64.sqrt()).abs() < 1e-12);
    assert!(c1.coords().iter().all(|c| c.hermitian_deviation() <= 1e-10));
}

proptest! {
    #![proptest_config(config(50))]

    #[test]
    fn derivation_identity_holds(
        f in poly(coords2(), 3, 3),
        a1 in poly(coords2(), 3, 3),
        a2 in poly(coords2(), 3, 3),
        t in prop::sample::select(vec![-1.5, -0.25, 0.5, 2.0]),
        i in 0usize..2,
    ) {
        let theta = Bivector::theta(t);
        let f = MatrixPoly::scalar(f);
        let a = vec![MatrixPoly::scalar(a1), MatrixPoly::scalar(a2)];
        let lhs = covariant_derivative(&f, &a, &theta, i).unwrap();
        let rhs = covariant_derivative_c_form(&f, &a, &theta, i).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn covariant_derivative_obeys_leibniz(
        f in poly(coords2(), 2, 3),
        g in poly(coords2(), 2, 3),
        i in 0usize..2,
    ) {
        // Abelian connection that is a multiple of a generator acts as a
        // derivation on the star product.
        let theta = Bivector::theta(0.7);
        let a = vec![
            MatrixPoly::scalar(PhasePoly::generator(coords2(), 1).scale(c(0.3, 0.0))),
            MatrixPoly::scalar(PhasePoly::zero(coords2())),
        ];
        let (f, g) = (MatrixPoly::scalar(f), MatrixPoly::scalar(g));
        let fg = f.star(&g, &theta).unwrap();
        let lhs = covariant_derivative(&fg, &a, &theta, i).unwrap();
        let rhs = covariant_derivative(&f, &a, &theta, i)
            .unwrap()
            .star(&g, &theta)
            .unwrap()
            .add(&f.star(&covariant_derivative(&g, &a, &theta, i).unwrap(), &theta).unwrap())
            .unwrap();
        prop_assert!(lhs.approx_eq(&rhs, 1e-12));
    }
}

#[test]
fn matrix_field_strength_at_zero_theta() {
    let g = coords2();
    let p = |s: &str| ncphase::phase::parse_poly(s, g).unwrap();
    let a1 = MatrixPoly::new(2, vec![p("x2"), p("x1*x2"), p("1"), p("-x2")]).unwrap();
    let a2 = MatrixPoly::new(2, vec![p("x1^2"), p("(0+1i)*x1"), p("x2"), p("3")]).unwrap();
    let f = sw_field_strength(&[a1.clone(), a2.clone()], &Bivector::theta(0.0), SwConvention::Printed).unwrap();
    // Entrywise oracle: (∂₁A₂ − ∂₂A₁ − i(A₁A₂ − A₂A₁))ₐᵦ.
    for r in 0..2 {
        for s in 0..2 {
            let mut e = &a2.get(r, s).derivative(0) - &a1.get(r, s).derivative(1);
            for k in 0..2 {
                let comm = &(a1.get(r, k) * a2.get(k, s)) - &(a2.get(r, k) * a1.get(k, s));
                e = &e + &comm.scale(c(0.0, -1.0));
            }
            assert!(f[0][1].get(r, s).approx_eq(&e, 1e-14));
        }
    }
}

#[test]
fn standard_convention_matches_star_field_strength_to_first_order() {
    // For Aᵢ = −½F̄ᵢⱼxʲ the star field strength ∂A − ∂A − i[A,A]⋆ is
    // b + θb²/4, which the real-coefficient correction reproduces.
    let (t, bf) = (0.01, 1.3);
    let theta = Bivector::theta(t);
    let g = coords2();
    let a = [
        PhasePoly::generator(g, 1).scale(c(-bf / 2.0, 0.0)),
        PhasePoly::generator(g, 0).scale(c(bf / 2.0, 0.0)),
    ];
    let star_comm = &star(&a[0], &a[1], &theta).unwrap() - &star(&a[1], &a[0], &theta).unwrap();
    let star_f = &(&a[1].derivative(0) - &a[0].derivative(1)) + &star_comm.scale(c(0.0, -1.0));
    let sw = sw_field_strength(
        &[MatrixPoly::scalar(a[0].clone()), MatrixPoly::scalar(a[1].clone())],
        &theta,
        SwConvention::Standard,
    )
    .unwrap();
    let diff = sw[0][1].get(0, 0).constant_term() - star_f.constant_term();
    assert!(diff.norm() < 1e-12, "{diff}");
}
