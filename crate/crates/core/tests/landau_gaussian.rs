mod common;

use common::c;
use nalgebra::{DMatrix, DVector};
use ncphase::fock::Statistics;
use ncphase::gaussian::{Insertion, QuadraticAction};
use ncphase::landau::{braiding_report, landau_system, shifted_commutator};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn landau_levels_and_commutator() {
    for b in [0.5, 1.0, 2.0] {
        let s = landau_system(b, 24).unwrap();
        assert!(s.spacing_residual(1).unwrap() <= 1e-8);
        assert!(s.commutator_residual(1).unwrap() <= 1e-8);
        assert!((s.theta() * s.field() - 1.0).abs() <= 1e-8);
        let lv = s.spectrum(1).unwrap();
        assert!((lv[0] - b / 2.0).abs() <= 1e-12);
        // a = √(B/2)(x̂¹ + ix̂²)
        let rebuilt = (&s.x[0] + &s.x[1].scale(c(0.0, 1.0))).scale_real((b / 2.0).sqrt());
        assert!((&rebuilt - &s.a).max_abs() <= 1e-12);
    }
}

#[test]
fn braiding_is_a_unit_phase() {
    for theta in [0.1, 0.3, -0.3] {
        let r = braiding_report(theta, 64).unwrap();
        assert!((r.phase.norm() - 1.0).abs() <= 1e-6);
        assert!((r.phase - Complex64::from_polar(1.0, -theta)).norm() <= 1e-3);
    }
}

#[test]
fn small_cutoff_braiding_reports_truncation() {
    match braiding_report(3.0, 8) {
        Err(ncphase::Error::TruncationInsufficient { suggested_cutoff, .. }) => {
            assert_eq!(suggested_cutoff, 16)
        }
        other => panic!("expected truncation error, got {other:?}"),
    }
}

#[test]
fn shifted_commutator_limits() {
    assert_eq!(shifted_commutator(0.0, 2.0).unwrap().constant_term(), c(0.0, 0.0));
    assert_eq!(shifted_commutator(0.7, 0.0).unwrap().constant_term(), c(0.0, 0.7));
}

fn random_h(rng: &mut ChaCha8Rng, m: usize) -> DMatrix<Complex64> {
    let a = DMatrix::from_fn(m, m, |_, _| c(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5)));
    a.adjoint() * &a + DMatrix::identity(m, m) * c(1.0, 0.0)
}

/// Wirtinger derivatives of `Z(J)` by nested central differences,
/// Richardson-extrapolated. `ops` lists `(conjugate?, mode)` in order of
/// application; `∂/∂J̄ᵢ` pulls down `χᵢ` and `∂/∂Jᵢ` pulls down `χ⁺ᵢ`.
fn source_derivative(q: &QuadraticAction, ops: &[(bool, usize)]) -> Complex64 {
    let m = q.modes();
    let z = |j: &[Complex64]| q.partition(j).unwrap();
    fn rec(
        z: &dyn Fn(&[Complex64]) -> Complex64,
        ops: &[(bool, usize)],
        j: &mut Vec<Complex64>,
        h: f64,
    ) -> Complex64 {
        let Some((&(bar, k), rest)) = ops.split_first() else {
            return z(j);
        };
        let mut d = |dir: Complex64| {
            let old = j[k];
            j[k] = old + dir * h;
            let fp = rec(z, rest, j, h);
            j[k] = old - dir * h;
            let fm = rec(z, rest, j, h);
            j[k] = old;
            (fp - fm) / (2.0 * h)
        };
        let dx = d(c(1.0, 0.0));
        let dy = d(c(0.0, 1.0));
        // ∂/∂J̄ = ½(∂x + i∂y), ∂/∂J = ½(∂x − i∂y)
        let s = if bar { 1.0 } else { -1.0 };
        (dx + c(0.0, s) * dy) * 0.5
    }
    let mut j = vec![c(0.0, 0.0); m];
    let coarse = rec(&z, ops, &mut j, 2e-2);
    let fine = rec(&z, ops, &mut j, 1e-2);
    (fine * 4.0 - coarse) / 3.0
}

#[test]
fn source_derivatives_give_propagator() {
    let mut rng = ChaCha8Rng::seed_from_u64(common::seed());
    let h = random_h(&mut rng, 2);
    for (stat, sign) in [(Statistics::Bose, 1.0), (Statistics::Fermi, -1.0)] {
        let q = QuadraticAction::new(h.clone(), stat).unwrap();
        let z0 = q.partition(&[c(0.0, 0.0); 2]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let d2 = source_derivative(&q, &[(true, i), (false, j)]) / z0;
                assert!((d2 - q.propagator()[(i, j)] * sign).norm() <= 1e-6, "{stat}: {d2}");
            }
        }
    }
}

#[test]
fn four_point_wick_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(common::seed() + 1);
    let q = QuadraticAction::new(random_h(&mut rng, 2), Statistics::Bose).unwrap();
    let z0 = q.partition(&[c(0.0, 0.0); 2]).unwrap();
    let fd = source_derivative(&q, &[(true, 0), (false, 0), (true, 1), (false, 1)]) / z0;
    let wick = q
        .green(&[Insertion::field(0), Insertion::conj(0), Insertion::field(1), Insertion::conj(1)])
        .unwrap()
        .value;
    assert!((fd - wick).norm() <= 1e-6, "{fd} vs {wick}");
}

#[test]
fn two_point_is_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(common::seed() + 2);
    let h = random_h(&mut rng, 3);
    let inv = h.clone().try_inverse().unwrap();
    for stat in [Statistics::Bose, Statistics::Fermi] {
        let q = QuadraticAction::new(h.clone(), stat).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let g = q.green(&[Insertion::field(i), Insertion::conj(j)]).unwrap().value;
                assert!((g - inv[(i, j)]).norm() <= 1e-10);
            }
        }
    }
}

#[test]
fn log_det_is_sum_of_log_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(common::seed() + 3);
    let h = random_h(&mut rng, 4);
    let q = QuadraticAction::new(h.clone(), Statistics::Bose).unwrap();
    let eig: f64 = h.symmetric_eigen().eigenvalues.iter().map(|l| l.ln()).sum();
    assert!((q.log_det().re - eig).abs() <= 1e-10);
}

#[test]
fn one_mode_bose_matches_quadrature() {
    // ∫ d²χ/π exp(−2|χ|² + 2 Re χ), midpoint rule on a polar grid.
    let (nr, nphi, rmax) = (4000, 256, 6.0);
    let mut sum = 0.0;
    for a in 0..nr {
        let r = (a as f64 + 0.5) * rmax / nr as f64;
        for b in 0..nphi {
            let phi = (b as f64 + 0.5) * std::f64::consts::TAU / nphi as f64;
            sum += r * (-2.0 * r * r + 2.0 * r * phi.cos()).exp();
        }
    }
    let z = sum * (rmax / nr as f64) * (std::f64::consts::TAU / nphi as f64) / std::f64::consts::PI;
    let q = QuadraticAction::new(DMatrix::from_element(1, 1, c(2.0, 0.0)), Statistics::Bose).unwrap();
    let lz = q.log_partition(&[c(1.0, 0.0)]).unwrap();
    assert!((z.ln() - lz.re).abs() < 1e-6, "{} vs {}", z.ln(), lz.re);
}

/// Grassmann algebra on `2m` generators `χ₀..χₘ₋₁, χ̄₀..χ̄ₘ₋₁`, elements as
/// maps from sorted generator bitmasks to coefficients.
#[derive(Clone)]
struct Grassmann(std::collections::BTreeMap<u32, Complex64>);

impl Grassmann {
    fn scalar(z: Complex64) -> Self {
        Self([(0u32, z)].into_iter().collect())
    }

    fn gen(k: u32) -> Self {
        Self([(1u32 << k, c(1.0, 0.0))].into_iter().collect())
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = std::collections::BTreeMap::new();
        for (&a, &x) in &self.0 {
            for (&b, &y) in &o.0 {
                if a & b != 0 {
                    continue;
                }
                // Sign from moving each generator of b past the higher ones of a.
                let mut swaps = 0;
                for k in 0..32 {
                    if b & (1 << k) != 0 {
                        swaps += (a >> (k + 1)).count_ones();
                    }
                }
                let s = if swaps % 2 == 0 { 1.0 } else { -1.0 };
                *out.entry(a | b).or_insert(c(0.0, 0.0)) += x * y * s;
            }
        }
        Self(out)
    }

    fn add(&self, o: &Self) -> Self {
        let mut out = self.0.clone();
        for (&k, &v) in &o.0 {
            *out.entry(k).or_insert(c(0.0, 0.0)) += v;
        }
        Self(out)
    }

    fn top(&self, n: u32) -> Complex64 {
        self.0.get(&((1u32 << n) - 1)).copied().unwrap_or_default()
    }
}

/// `∫ ∏ χ… exp(−χ̄hχ)` normalized by `∫ exp(−χ̄hχ)`.
fn grassmann_expectation(h: &DMatrix<Complex64>, ins: &[Insertion]) -> Complex64 {
    let m = h.nrows() as u32;
    let mut action = Grassmann::scalar(c(0.0, 0.0));
    for i in 0..m {
        for j in 0..m {
            let term = Grassmann::gen(m + i).mul(&Grassmann::gen(j));
            action = action.add(&term.mul(&Grassmann::scalar(-h[(i as usize, j as usize)])));
        }
    }
    // exp of an even nilpotent element: Σ Sⁿ/n!
    let mut weight = Grassmann::scalar(c(1.0, 0.0));
    let mut power = Grassmann::scalar(c(1.0, 0.0));
    for n in 1..=m {
        power = power.mul(&action);
        weight = weight.add(&power.mul(&Grassmann::scalar(c(1.0 / (1..=n).product::<u32>() as f64, 0.0))));
    }
    let mut obs = Grassmann::scalar(c(1.0, 0.0));
    for i in ins {
        let k = if i.conjugate { m + i.mode as u32 } else { i.mode as u32 };
        obs = obs.mul(&Grassmann::gen(k));
    }
    obs.mul(&weight).top(2 * m) / weight.top(2 * m)
}

#[test]
fn fermi_correlators_match_grassmann_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(common::seed() + 4);
    let cases: Vec<Vec<Insertion>> = vec![
        vec![Insertion::field(0), Insertion::conj(1), Insertion::field(1), Insertion::conj(0)],
        vec![Insertion::field(0), Insertion::conj(0), Insertion::field(1), Insertion::conj(1)],
        vec![Insertion::field(1), Insertion::field(0), Insertion::conj(0), Insertion::conj(1)],
        vec![Insertion::field(0), Insertion::conj(1)],
    ];
    for h in [DMatrix::identity(2, 2), random_h(&mut rng, 2)] {
        let q = QuadraticAction::new(h.clone(), Statistics::Fermi).unwrap();
        for ins in &cases {
            let wick = q.green(ins).unwrap().value;
            let exact = grassmann_expectation(&h, ins);
            assert!((wick - exact).norm() < 1e-12, "{ins:?}: {wick} vs {exact}");
        }
    }
    let q = QuadraticAction::new(DMatrix::identity(2, 2), Statistics::Fermi).unwrap();
    assert_eq!(q.green(&cases[0]).unwrap().value, c(-1.0, 0.0));
}

#[test]
fn fermi_determinant_ratios_are_exact() {
    for diag in [vec![3.0, 5.0], vec![0.5, 2.0, 7.0]] {
        let h = DMatrix::from_diagonal(&DVector::from_iterator(diag.len(), diag.iter().map(|x| c(*x, 0.0))));
        let q = QuadraticAction::new(h, Statistics::Fermi).unwrap();
        let z = q.partition(&vec![c(0.0, 0.0); diag.len()]).unwrap();
        assert_eq!(z, c(diag.iter().product(), 0.0));
    }
}

#[test]
fn relabeling_identical_insertions_is_harmless() {
    let mut rng = ChaCha8Rng::seed_from_u64(common::seed() + 5);
    let q = QuadraticAction::new(random_h(&mut rng, 2), Statistics::Bose).unwrap();
    let a = q.green(&[Insertion::field(0), Insertion::conj(1), Insertion::field(0), Insertion::conj(0)]).unwrap();
    let b = q.green(&[Insertion::field(0), Insertion::conj(0), Insertion::field(0), Insertion::conj(1)]).unwrap();
    assert!((a.value - b.value).norm() < 1e-14);
}
