mod common;

use common::{c, config, poly, real_poly};
use ncphase::fock::{
    mode_operators, read_operator, weyl_quantize, weyl_quantize_with, write_operator, FockBasis,
    GeneratorMap, Mode, OperatorMatrix,
};
use ncphase::{star, Bivector, GeneratorSet};
use proptest::prelude::*;

fn one_mode() -> GeneratorSet {
    GeneratorSet::phase_space(1).unwrap()
}

proptest! {
    #![proptest_config(config(50))]

    #[test]
    fn weyl_is_linear(
        f in poly(one_mode(), 3, 4),
        g in poly(one_mode(), 3, 4),
        re in -3i32..=3, im in -3i32..=3,
    ) {
        let b = FockBasis::bose(10).unwrap();
        let s = c(re as f64, im as f64);
        let lhs = weyl_quantize(&(&f + &g.scale(s)), &b).unwrap();
        let rhs = &weyl_quantize(&f, &b).unwrap() + &weyl_quantize(&g, &b).unwrap().scale(s);
        prop_assert!((&lhs - &rhs).max_abs() <= 1e-10);
    }

    #[test]
    fn real_symbols_quantize_hermitian(f in real_poly(GeneratorSet::phase_space(2).unwrap(), 3, 4)) {
        let b = FockBasis::bose_modes(2, 5).unwrap();
        let w = weyl_quantize(&f, &b).unwrap();
        prop_assert!(w.is_hermitian());
        prop_assert!(w.hermitian_deviation() <= 1e-10);
    }

    #[test]
    fn weyl_composition_on_interior(f in poly(one_mode(), 2, 3), g in poly(one_mode(), 2, 3)) {
        let pi = Bivector::canonical(1).unwrap();
        for cutoff in [8, 12, 16] {
            let b = FockBasis::bose(cutoff).unwrap();
            let lhs = weyl_quantize(&star(&f, &g, &pi).unwrap(), &b).unwrap();
            let rhs = &weyl_quantize(&f, &b).unwrap() * &weyl_quantize(&g, &b).unwrap();
            prop_assert!(lhs.interior_distance(&rhs, 4).unwrap() <= 1e-8);
        }
    }

    #[test]
    fn adapted_generators_realize_bivector(
        u in prop::collection::vec(-8i32..=8, 6),
    ) {
        let g = GeneratorSet::coordinates(4).unwrap();
        let upper: Vec<f64> = u.iter().map(|k| *k as f64 / 4.0).collect();
        let pi = Bivector::from_upper(g, &upper).unwrap();
        prop_assume!(pi.is_invertible());
        let b = FockBasis::bose_modes(2, 6).unwrap();
        let map = GeneratorMap::adapted(&pi, &b).unwrap();
        let id = OperatorMatrix::identity(&b);
        for i in 0..4 {
            for j in 0..4 {
                let comm = map.operator(i).commutator(map.operator(j));
                let target = id.scale(c(0.0, pi.get(i, j)));
                prop_assert!(comm.interior_distance(&target, 1).unwrap() <= 1e-8);
            }
        }
    }

    #[test]
    fn basis_index_round_trip(cutoffs in prop::collection::vec(1usize..5, 1..4), fermis in 0usize..3) {
        let mut modes: Vec<Mode> = cutoffs.iter().map(|&k| Mode::bose(k).unwrap()).collect();
        modes.extend(std::iter::repeat_n(Mode::fermi(), fermis));
        let b = FockBasis::new(modes).unwrap();
        for idx in 0..b.dim() {
            prop_assert_eq!(b.index_of(&b.occupation(idx)), Some(idx));
        }
        let spec = b.to_string();
        prop_assert_eq!(spec.parse::<FockBasis>().unwrap(), b);
    }
}

#[test]
fn weyl_of_adapted_map_is_hermitian() {
    let pi = Bivector::theta(0.6);
    let b = FockBasis::bose(8).unwrap();
    let map = GeneratorMap::adapted(&pi, &b).unwrap();
    let f = ncphase::phase::parse_poly("x1^2*x2 + 0.5*x2", pi.generators()).unwrap();
    let w = weyl_quantize_with(&f, &map).unwrap();
    assert!(w.is_hermitian());
}

#[test]
fn fermi_sector_is_exact() {
    let b = FockBasis::new(vec![Mode::fermi(), Mode::fermi(), Mode::fermi()]).unwrap();
    let id = OperatorMatrix::identity(&b);
    let ops: Vec<_> = (0..3).map(|k| mode_operators(&b, k).unwrap()).collect();
    for (i, oi) in ops.iter().enumerate() {
        for (j, oj) in ops.iter().enumerate() {
            let expect = if i == j { id.clone() } else { OperatorMatrix::zeros(&b) };
            assert_eq!(oi.a.anticommutator(&oj.a_dag), expect);
            assert_eq!(oi.a.anticommutator(&oj.a).max_abs(), 0.0);
        }
    }
}

#[test]
fn serialized_ladder_matches_golden() {
    let b = FockBasis::new(vec![Mode::bose(3).unwrap(), Mode::fermi()]).unwrap();
    let a = mode_operators(&b, 0).unwrap().a;
    let text = write_operator(&a);
    let golden = include_str!("golden/ladder_bose3_fermi.txt");
    assert_eq!(text, golden);
    assert_eq!(read_operator(golden).unwrap(), a);
}
