//! Linear canonical transforms `bᵢ = αᵢₖaₖ + βᵢₖa⁺ₖ`, `b⁺ᵢ = γᵢₖaₖ + δᵢₖa⁺ₖ`.
//!
//! Preservation of the algebra is always decided by expanding the brackets
//! of `b, b⁺` from those of `a, a⁺`. The block conditions as commonly printed
//! are evaluated alongside and reported, never used as a verdict.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{max_abs, OperatorMatrix, Statistics};
use crate::phase::{moyal_bracket, Bivector, GeneratorSet, PhasePoly};
use crate::tol;

type CMat = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq)]
pub struct BogoliubovTransform {
    pub alpha: CMat,
    pub beta: CMat,
    pub gamma: CMat,
    pub delta: CMat,
}

impl BogoliubovTransform {
    pub fn new(alpha: CMat, beta: CMat, gamma: CMat, delta: CMat) -> Result<Self> {
        let m = alpha.nrows();
        for blk in [&alpha, &beta, &gamma, &delta] {
            if blk.nrows() != m || blk.ncols() != m {
                return Err(Error::dims(
                    format!("{m}x{m}"),
                    format!("{}x{}", blk.nrows(), blk.ncols()),
                ));
            }
        }
        if m == 0 {
            return Err(Error::InvalidParameter("transform needs at least one mode".into()));
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    /// `γ = β̄`, `δ = ᾱ`.
    pub fn adjoint_consistent(alpha: CMat, beta: CMat) -> Result<Self> {
        let gamma = beta.map(|z| z.conj());
        let delta = alpha.map(|z| z.conj());
        Self::new(alpha, beta, gamma, delta)
    }

    pub fn identity(m: usize) -> Result<Self> {
        Self::adjoint_consistent(CMat::identity(m, m), CMat::zeros(m, m))
    }

    /// Scalar blocks for one mode.
    pub fn scalar(alpha: Complex64, beta: Complex64, gamma: Complex64, delta: Complex64) -> Self {
        let s = |z| CMat::from_element(1, 1, z);
        Self::new(s(alpha), s(beta), s(gamma), s(delta)).expect("1x1 blocks")
    }

    /// One-mode squeeze `α = δ = cosh r`, `β = γ = sinh r`.
    pub fn squeeze(r: f64) -> Self {
        let (c, s) = (Complex64::from(r.cosh()), Complex64::from(r.sinh()));
        Self::scalar(c, s, s, c)
    }

    /// One-mode rotation `b = cos θ a + sin θ a⁺` with `b⁺` its adjoint.
    pub fn rotation(theta: f64) -> Self {
        let (c, s) = (Complex64::from(theta.cos()), Complex64::from(theta.sin()));
        Self::scalar(c, s, s, c)
    }

    pub fn modes(&self) -> usize {
        self.alpha.nrows()
    }

    /// `max(|γ − β̄|, |δ − ᾱ|)`.
    pub fn adjoint_deviation(&self) -> f64 {
        let g = &self.gamma - self.beta.map(|z| z.conj());
        let d = &self.delta - self.alpha.map(|z| z.conj());
        max_abs(&g).max(max_abs(&d))
    }

    pub fn is_adjoint_consistent(&self) -> bool {
        self.adjoint_deviation() <= tol::ADJOINT
    }

    /// `self ∘ first`: the transform applying `first`, then `self`.
    pub fn compose(&self, first: &Self) -> Result<Self> {
        if first.modes() != self.modes() {
            return Err(Error::dims(self.modes(), first.modes()));
        }
        let (a2, b2, g2, d2) = (&self.alpha, &self.beta, &self.gamma, &self.delta);
        let (a1, b1, g1, d1) = (&first.alpha, &first.beta, &first.gamma, &first.delta);
        Self::new(
            a2 * a1 + b2 * g1,
            a2 * b1 + b2 * d1,
            g2 * a1 + d2 * g1,
            g2 * b1 + d2 * d1,
        )
    }
}

/// Bracket of two linear forms `u = uₐ·a + u꜀·a⁺`: commutator for bosons,
/// anticommutator for fermions. Returns the scalar it reduces to.
fn linear_bracket(
    ua: &[Complex64],
    uc: &[Complex64],
    va: &[Complex64],
    vc: &[Complex64],
    statistics: Statistics,
) -> Complex64 {
    let sign = match statistics {
        Statistics::Bose => -1.0,
        Statistics::Fermi => 1.0,
    };
    (0..ua.len())
        .map(|k| ua[k] * vc[k] + uc[k] * va[k] * sign)
        .sum()
}

/// Residuals of a transform against the base algebra.
#[derive(Debug, Clone)]
pub struct AlgebraResidual {
    pub statistics: Statistics,
    /// `[bᵢ, b⁺ⱼ] − δᵢⱼ` (anticommutator for fermions).
    pub r1: CMat,
    /// `[bᵢ, bⱼ]`.
    pub r2: CMat,
    /// `[b⁺ᵢ, b⁺ⱼ]`.
    pub r2_dag: CMat,
    /// Printed block conditions, each as `(label, residual matrix)`.
    pub printed: Vec<(String, CMat)>,
}

impl AlgebraResidual {
    pub fn oracle_max(&self) -> f64 {
        max_abs(&self.r1).max(max_abs(&self.r2)).max(max_abs(&self.r2_dag))
    }

    pub fn printed_max(&self) -> f64 {
        self.printed.iter().map(|(_, m)| max_abs(m)).fold(0.0, f64::max)
    }

    /// Verdict of the bracket expansion.
    pub fn preserves(&self, tol: f64) -> bool {
        self.oracle_max() <= tol
    }
}

pub fn algebra_residual(t: &BogoliubovTransform, statistics: Statistics) -> AlgebraResidual {
    let m = t.modes();
    let row = |blk: &CMat, i: usize| -> Vec<Complex64> { blk.row(i).iter().copied().collect() };
    let mut r1 = CMat::zeros(m, m);
    let mut r2 = CMat::zeros(m, m);
    let mut r2_dag = CMat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let (bi_a, bi_c) = (row(&t.alpha, i), row(&t.beta, i));
            let (bj_a, bj_c) = (row(&t.alpha, j), row(&t.beta, j));
            let (di_a, di_c) = (row(&t.gamma, i), row(&t.delta, i));
            let (dj_a, dj_c) = (row(&t.gamma, j), row(&t.delta, j));
            let kron = if i == j { ONE } else { ZERO };
            r1[(i, j)] = linear_bracket(&bi_a, &bi_c, &dj_a, &dj_c, statistics) - kron;
            r2[(i, j)] = linear_bracket(&bi_a, &bi_c, &bj_a, &bj_c, statistics);
            r2_dag[(i, j)] = linear_bracket(&di_a, &di_c, &dj_a, &dj_c, statistics);
        }
    }
    let id = CMat::identity(m, m);
    let printed = vec![
        (
            "alpha*delta - beta*gamma^T - I".to_string(),
            &t.alpha * &t.delta - &t.beta * t.gamma.transpose() - id,
        ),
        (
            "alpha*gamma + beta*delta^T".to_string(),
            &t.alpha * &t.gamma + &t.beta * t.delta.transpose(),
        ),
    ];
    AlgebraResidual {
        statistics,
        r1,
        r2,
        r2_dag,
        printed,
    }
}

/// Residuals of a one-mode transform against `aa⁺ + q a⁺a = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct QResidual {
    pub q: f64,
    /// `αδ + qγβ − 1`, `βγ + qδα − q`, `αγ + qγα`, `βδ + qδβ`.
    pub printed: [Complex64; 4],
    /// Coefficients of `1, a⁺a, aa, a⁺a⁺` in `bb⁺ + q b⁺b − 1` after
    /// reducing `aa⁺ → 1 − q a⁺a`.
    pub oracle: [Complex64; 4],
}

impl QResidual {
    pub fn oracle_max(&self) -> f64 {
        self.oracle.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn printed_max(&self) -> f64 {
        self.printed.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Whether the printed conditions and the expansion reach the same verdict.
    pub fn agrees(&self, tol: f64) -> bool {
        (self.oracle_max() <= tol) == (self.printed_max() <= tol)
    }
}

pub const Q_TERMS: [&str; 4] = ["1", "a+a", "aa", "a+a+"];

pub fn q_algebra_residual(t: &BogoliubovTransform, q: f64) -> Result<QResidual> {
    if t.modes() != 1 {
        return Err(Error::dims("1 mode", t.modes()));
    }
    if !q.is_finite() {
        return Err(Error::InvalidParameter(format!("q must be finite, found {q}")));
    }
    let (a, b, g, d) = (t.alpha[(0, 0)], t.beta[(0, 0)], t.gamma[(0, 0)], t.delta[(0, 0)]);
    let printed = [
        a * d + q * g * b - 1.0,
        b * g + q * d * a - q,
        a * g + q * g * a,
        b * d + q * d * b,
    ];
    let unit = a * d + q * g * b;
    let oracle = [
        unit - 1.0,
        (b * g + q * d * a) - q * unit,
        a * g + q * g * a,
        b * d + q * d * b,
    ];
    Ok(QResidual { q, printed, oracle })
}

/// Transformed ladder operators and their interior residual.
#[derive(Debug, Clone)]
pub struct TransformedModes {
    pub modes: Vec<(OperatorMatrix, OperatorMatrix)>,
    /// `max |[bᵢ, b⁺ⱼ]∓ − δᵢⱼ|` on the interior block (margin 1).
    pub interior_residual: f64,
    /// `max |b⁺ᵢ − (bᵢ)⁺|`.
    pub adjoint_residual: f64,
}

pub fn apply_transform(
    t: &BogoliubovTransform,
    modes: &[(OperatorMatrix, OperatorMatrix)],
    statistics: Statistics,
) -> Result<TransformedModes> {
    if modes.len() != t.modes() {
        return Err(Error::dims(t.modes(), modes.len()));
    }
    if !t.is_adjoint_consistent() {
        return Err(Error::InvalidParameter(format!(
            "transform is not adjoint-consistent (deviation {:e})",
            t.adjoint_deviation()
        )));
    }
    let basis = modes[0].0.basis().clone();
    if modes
        .iter()
        .any(|(a, ad)| a.basis() != &basis || ad.basis() != &basis)
    {
        return Err(Error::InvalidParameter("modes live on different bases".into()));
    }
    let combine = |ca: &CMat, cc: &CMat, i: usize| -> OperatorMatrix {
        let mut acc = OperatorMatrix::zeros(&basis);
        for (k, (a, ad)) in modes.iter().enumerate() {
            if ca[(i, k)] != ZERO {
                acc = &acc + &a.scale(ca[(i, k)]);
            }
            if cc[(i, k)] != ZERO {
                acc = &acc + &ad.scale(cc[(i, k)]);
            }
        }
        acc
    };
    let out: Vec<(OperatorMatrix, OperatorMatrix)> = (0..t.modes())
        .map(|i| (combine(&t.alpha, &t.beta, i), combine(&t.gamma, &t.delta, i)))
        .collect();
    let id = OperatorMatrix::identity(&basis);
    let zero = OperatorMatrix::zeros(&basis);
    let mut interior_residual = 0.0f64;
    let mut adjoint_residual = 0.0f64;
    for (i, (bi, _)) in out.iter().enumerate() {
        adjoint_residual = adjoint_residual.max((&out[i].1 - &bi.adjoint()).max_abs());
        for (j, (_, bdj)) in out.iter().enumerate() {
            let br = match statistics {
                Statistics::Bose => bi.commutator(bdj),
                Statistics::Fermi => bi.anticommutator(bdj),
            };
            let target = if i == j { &id } else { &zero };
            let margin = if basis.min_bose_cutoff().is_some() { 1 } else { 0 };
            interior_residual = interior_residual.max(br.interior_distance(target, margin)?);
        }
    }
    Ok(TransformedModes {
        modes: out,
        interior_residual,
        adjoint_residual,
    })
}

/// A scalar linear in `δ` and the entries of `θx`, `θp`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaForm {
    pub delta: Complex64,
    /// Coefficient of `θxᵏˡ` for `k < l`.
    pub theta_x: Vec<((usize, usize), Complex64)>,
    /// Coefficient of `θpₖₗ` for `k < l`.
    pub theta_p: Vec<((usize, usize), Complex64)>,
}

impl ThetaForm {
    pub fn eval(&self, theta_x: &Bivector, theta_p: &Bivector) -> Complex64 {
        let mut s = self.delta;
        for ((k, l), c) in &self.theta_x {
            s += c * theta_x.get(*k, *l);
        }
        for ((k, l), c) in &self.theta_p {
            s += c * theta_p.get(*k, *l);
        }
        s
    }
}

impl fmt::Display for ThetaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.delta != ZERO {
            parts.push(format!("({})*delta", crate::phase::fmt_complex(self.delta)));
        }
        for (name, list) in [("thx", &self.theta_x), ("thp", &self.theta_p)] {
            for ((k, l), c) in list.iter() {
                parts.push(format!("({})*{name}{}{}", crate::phase::fmt_complex(*c), k + 1, l + 1));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// One entry of the mode commutator table.
#[derive(Debug, Clone)]
pub struct ThetaEntry {
    pub i: usize,
    pub j: usize,
    /// `[aⁱ, aʲ]` as a linear form.
    pub aa: ThetaForm,
    /// `[aⁱ, a⁺ʲ]` as a linear form.
    pub aa_dag: ThetaForm,
    /// Values at the given `θx`, `θp`.
    pub aa_value: Complex64,
    pub aa_dag_value: Complex64,
    /// `(i/2)(θxⁱʲ − θpᵢⱼ + δᵢⱼ)`, the commonly printed form of `[aⁱ, a⁺ʲ]`.
    pub printed_value: Complex64,
}

/// Commutators of `aⁱ = (xⁱ + ipᵢ)/√2` under
/// `[x,x] = iθx`, `[p,p] = iθp`, `[x,p] = iδ`, computed with the star product.
pub fn theta_mode_commutators(theta_x: &Bivector, theta_p: &Bivector) -> Result<Vec<ThetaEntry>> {
    let n = theta_x.len();
    if theta_p.len() != n {
        return Err(Error::dims(n, theta_p.len()));
    }
    Bivector::phase_space(theta_x, theta_p)?;
    let coords = GeneratorSet::coordinates(n)?;
    let zero = Bivector::zero(coords);
    let unit = |k: usize, l: usize| -> Result<Bivector> {
        let mut m = DMatrix::<f64>::zeros(n, n);
        m[(k, l)] = 1.0;
        m[(l, k)] = -1.0;
        Bivector::from_matrix(coords, &m)
    };
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|k| (k + 1..n).map(move |l| (k, l))).collect();

    // All brackets of linear symbols are constants, linear in the bivector.
    let brackets = |tx: &Bivector, tp: &Bivector| -> Result<(CMat, CMat)> {
        let pi = Bivector::phase_space(tx, tp)?;
        let g = pi.generators();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let a = |i: usize, dag: bool| -> PhasePoly {
            let x = PhasePoly::generator(g, g.coord_index(i));
            let p = PhasePoly::generator(g, g.momentum_index(i));
            let ip = if dag { -I } else { I };
            (&x + &p.scale(ip)).scale(r.into())
        };
        let mut aa = CMat::zeros(n, n);
        let mut aad = CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                aa[(i, j)] = moyal_bracket(&a(i, false), &a(j, false), &pi)?.constant_term();
                aad[(i, j)] = moyal_bracket(&a(i, false), &a(j, true), &pi)?.constant_term();
            }
        }
        Ok((aa, aad))
    };

    let (base_aa, base_aad) = brackets(&zero, &zero)?;
    let mut x_aa = Vec::new();
    let mut x_aad = Vec::new();
    let mut p_aa = Vec::new();
    let mut p_aad = Vec::new();
    for &(k, l) in &pairs {
        let u = unit(k, l)?;
        let (aa, aad) = brackets(&u, &zero)?;
        x_aa.push(aa - &base_aa);
        x_aad.push(aad - &base_aad);
        let (aa, aad) = brackets(&zero, &u)?;
        p_aa.push(aa - &base_aa);
        p_aad.push(aad - &base_aad);
    }
    let form = |base: &CMat, xs: &[CMat], ps: &[CMat], i: usize, j: usize| -> ThetaForm {
        let pick = |ms: &[CMat]| -> Vec<((usize, usize), Complex64)> {
            pairs
                .iter()
                .zip(ms)
                .filter(|(_, m)| m[(i, j)].norm() > tol::COEFF)
                .map(|(kl, m)| (*kl, m[(i, j)]))
                .collect()
        };
        let mut delta = base[(i, j)];
        if delta.norm() <= tol::COEFF {
            delta = ZERO;
        }
        ThetaForm {
            delta,
            theta_x: pick(xs),
            theta_p: pick(ps),
        }
    };
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let aa = form(&base_aa, &x_aa, &p_aa, i, j);
            let aa_dag = form(&base_aad, &x_aad, &p_aad, i, j);
            let kron = if i == j { 1.0 } else { 0.0 };
            let printed_value =
                I * 0.5 * (theta_x.get(i, j) - theta_p.get(i, j) + kron);
            out.push(ThetaEntry {
                i,
                j,
                aa_value: aa.eval(theta_x, theta_p),
                aa_dag_value: aa_dag.eval(theta_x, theta_p),
                aa,
                aa_dag,
                printed_value,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{mode_operators, FockBasis};

    #[test]
    fn identity_has_no_residual() {
        let t = BogoliubovTransform::identity(3).unwrap();
        for st in [Statistics::Bose, Statistics::Fermi] {
            let r = algebra_residual(&t, st);
            assert_eq!(r.oracle_max(), 0.0);
        }
        assert_eq!(algebra_residual(&t, Statistics::Bose).printed_max(), 0.0);
    }

    #[test]
    fn squeeze_preserves_ccr_but_not_printed_pairing() {
        let r = 0.3f64;
        let res = algebra_residual(&BogoliubovTransform::squeeze(r), Statistics::Bose);
        assert!(res.oracle_max() < 1e-15);
        assert!(max_abs(&res.printed[0].1) < 1e-15);
        assert!((res.printed[1].1[(0, 0)].re - (2.0 * r).sinh()).abs() < 1e-15);
    }

    #[test]
    fn rotation_preserves_car_normalization_only() {
        let th = 0.4f64;
        let res = algebra_residual(&BogoliubovTransform::rotation(th), Statistics::Fermi);
        assert!(res.r1[(0, 0)].norm() < 1e-15);
        assert!((res.r2[(0, 0)].re - (2.0 * th).sin()).abs() < 1e-15);
        // Printed sign β = −γ breaks adjoint consistency and gives cos 2θ.
        let (c, s) = (Complex64::from(th.cos()), Complex64::from(th.sin()));
        let printed = BogoliubovTransform::scalar(c, s, -s, c);
        assert!(!printed.is_adjoint_consistent());
        let res = algebra_residual(&printed, Statistics::Fermi);
        assert!((res.r1[(0, 0)].re - ((2.0 * th).cos() - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn q_identity_and_bose_limit() {
        let id = BogoliubovTransform::identity(1).unwrap();
        for q in [-1.0, -0.3, 0.5, 1.0] {
            let r = q_algebra_residual(&id, q).unwrap();
            assert_eq!(r.printed_max(), 0.0);
            assert_eq!(r.oracle_max(), 0.0);
        }
        let t = BogoliubovTransform::scalar(
            Complex64::new(1.1, 0.2),
            Complex64::new(-0.3, 0.5),
            Complex64::new(0.7, -0.1),
            Complex64::new(0.4, 0.9),
        );
        let qr = q_algebra_residual(&t, -1.0).unwrap();
        let br = algebra_residual(&t, Statistics::Bose);
        assert!((qr.oracle[0] - br.r1[(0, 0)]).norm() < 1e-15);
        assert!(qr.oracle[1].norm() < 1e-15 && qr.oracle[2].norm() < 1e-15);
    }

    #[test]
    fn q_residual_needs_one_mode() {
        let t = BogoliubovTransform::identity(2).unwrap();
        assert!(q_algebra_residual(&t, 0.5).is_err());
    }

    #[test]
    fn composition_of_preserving_transforms() {
        let t = BogoliubovTransform::squeeze(0.2)
            .compose(&BogoliubovTransform::squeeze(-0.5))
            .unwrap();
        assert!(algebra_residual(&t, Statistics::Bose).oracle_max() < 1e-14);
        let expect = BogoliubovTransform::squeeze(-0.3);
        assert!(max_abs(&(&t.alpha - &expect.alpha)) < 1e-14);
    }

    #[test]
    fn squeeze_on_truncated_space() {
        let b = FockBasis::bose(20).unwrap();
        let m = mode_operators(&b, 0).unwrap();
        let out = apply_transform(
            &BogoliubovTransform::squeeze(0.3),
            &[(m.a.clone(), m.a_dag.clone())],
            Statistics::Bose,
        )
        .unwrap();
        assert!(out.interior_residual <= 1e-8);
        assert!(out.adjoint_residual <= 1e-12);

        let id = apply_transform(
            &BogoliubovTransform::identity(1).unwrap(),
            &[(m.a.clone(), m.a_dag.clone())],
            Statistics::Bose,
        )
        .unwrap();
        assert_eq!(id.modes[0].0, m.a);
    }

    #[test]
    fn inconsistent_transform_is_rejected() {
        let b = FockBasis::fermi();
        let m = mode_operators(&b, 0).unwrap();
        let bad = BogoliubovTransform::scalar(ONE, ONE, -ONE, ONE);
        assert!(apply_transform(&bad, &[(m.a, m.a_dag)], Statistics::Fermi).is_err());
    }

    #[test]
    fn canonical_theta_table() {
        let z = Bivector::zero(GeneratorSet::coordinates(2).unwrap());
        for e in theta_mode_commutators(&z, &z).unwrap() {
            let kron = if e.i == e.j { 1.0 } else { 0.0 };
            assert!(e.aa_value.norm() < 1e-15);
            assert!((e.aa_dag_value - kron).norm() < 1e-15);
        }
    }

    #[test]
    fn theta_table_forms() {
        let b = 2.0;
        let tx = Bivector::epsilon(2, 1.0 / b).unwrap();
        let tp = Bivector::epsilon(2, b).unwrap();
        let t = theta_mode_commutators(&tx, &tp).unwrap();
        let e12 = &t[1];
        assert_eq!((e12.i, e12.j), (0, 1));
        assert!((e12.aa_value - I * 0.5 * (0.5 - 2.0)).norm() < 1e-15);
        assert!((e12.aa_dag_value - I * 0.5 * (0.5 + 2.0)).norm() < 1e-15);
        assert!((e12.aa_dag.theta_x[0].1 - I * 0.5).norm() < 1e-15);
    }
}
