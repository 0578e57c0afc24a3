use nalgebra::DMatrix;
use num_complex::Complex64;

use super::basis::{FockBasis, Statistics};
use super::operator::OperatorMatrix;
use crate::error::{Error, Result};
use crate::phase::{Bivector, GeneratorSet};
use crate::tol;

/// Ladder and quadrature operators of one mode.
#[derive(Debug, Clone)]
pub struct ModeOperators {
    pub a: OperatorMatrix,
    pub a_dag: OperatorMatrix,
    /// `(a + a⁺)/√2`
    pub x: OperatorMatrix,
    /// `i(a⁺ − a)/√2`
    pub p: OperatorMatrix,
}

/// Annihilation, creation and quadrature operators for `mode`.
///
/// Fermionic modes carry the Jordan–Wigner string over the fermionic modes
/// before them, so distinct fermionic modes anticommute.
pub fn mode_operators(basis: &FockBasis, mode: usize) -> Result<ModeOperators> {
    let target = basis.mode(mode)?;
    let d = basis.dim();
    let mut a = DMatrix::<Complex64>::zeros(d, d);
    for s in 0..d {
        let occ = basis.occupation(s);
        let n = occ[mode];
        if n == 0 {
            continue;
        }
        let mut lowered = occ.clone();
        lowered[mode] -= 1;
        let t = basis.index_of(&lowered).expect("lowered state is in range");
        let amp = match target.statistics() {
            Statistics::Bose => (n as f64).sqrt(),
            Statistics::Fermi => {
                let before: usize = basis.modes()[..mode]
                    .iter()
                    .zip(&occ)
                    .filter(|(m, _)| m.statistics() == Statistics::Fermi)
                    .map(|(_, k)| k)
                    .sum();
                if before % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
        };
        a[(t, s)] = Complex64::new(amp, 0.0);
    }
    let a_dag = a.adjoint();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let x = (&a + &a_dag) * Complex64::new(r, 0.0);
    let p = (&a_dag - &a) * Complex64::new(0.0, r);
    let wrap = |m: DMatrix<Complex64>| OperatorMatrix::from_parts(basis.clone(), m);
    Ok(ModeOperators {
        a: wrap(a),
        a_dag: wrap(a_dag),
        x: wrap(x).certify_hermitian(tol::HERMITIAN)?,
        p: wrap(p).certify_hermitian(tol::HERMITIAN)?,
    })
}

/// Operator assigned to each phase-space generator.
#[derive(Debug, Clone)]
pub struct GeneratorMap {
    gens: GeneratorSet,
    ops: Vec<OperatorMatrix>,
}

impl GeneratorMap {
    /// `x_k ↦ x̂_k`, `p_k ↦ p̂_k` of mode `k`.
    pub fn canonical(basis: &FockBasis) -> Result<Self> {
        let n = basis.mode_count();
        let gens = GeneratorSet::phase_space(n)?;
        let mut xs = Vec::with_capacity(n);
        let mut ps = Vec::with_capacity(n);
        for k in 0..n {
            let m = mode_operators(basis, k)?;
            xs.push(m.x);
            ps.push(m.p);
        }
        xs.extend(ps);
        Ok(Self { gens, ops: xs })
    }

    /// A representation of `[zᵃ, zᵇ] = iΠᵃᵇ` on `Π.len()/2` bosonic modes.
    ///
    /// A symplectic Gram–Schmidt pass finds `E` with `EᵀΠE = J`; each
    /// generator is then `zᵃ = Σₖ (E⁻ᵀ)ᵃₖ X̂ₖ + (E⁻ᵀ)ᵃ₍ₘ₊ₖ₎ P̂ₖ`.
    pub fn adapted(pi: &Bivector, basis: &FockBasis) -> Result<Self> {
        pi.inverse()?;
        let d = pi.len();
        let m = d / 2;
        if basis.mode_count() != m {
            return Err(Error::dims(format!("{m} modes"), basis.mode_count()));
        }
        if basis.has_fermions() {
            return Err(Error::InvalidParameter(
                "a bivector representation needs bosonic modes".into(),
            ));
        }
        let frame = darboux_frame(pi.matrix())?;
        let coeffs = frame
            .transpose()
            .try_inverse()
            .ok_or(Error::SingularBivector)?;
        let mut quads = Vec::with_capacity(d);
        let mut moms = Vec::with_capacity(m);
        for k in 0..m {
            let ops = mode_operators(basis, k)?;
            quads.push(ops.x);
            moms.push(ops.p);
        }
        quads.extend(moms);
        let mut ops = Vec::with_capacity(d);
        for a in 0..d {
            let mut acc = OperatorMatrix::zeros(basis);
            for (k, q) in quads.iter().enumerate() {
                let c = coeffs[(a, k)];
                if c != 0.0 {
                    acc = &acc + &q.scale_real(c);
                }
            }
            ops.push(acc.certify_hermitian(tol::HERMITIAN)?);
        }
        Ok(Self {
            gens: pi.generators(),
            ops,
        })
    }

    pub fn from_operators(gens: GeneratorSet, ops: Vec<OperatorMatrix>) -> Result<Self> {
        if ops.len() != gens.len() {
            return Err(Error::dims(gens.len(), ops.len()));
        }
        if let Some(first) = ops.first() {
            if ops.iter().any(|o| o.basis() != first.basis()) {
                return Err(Error::InvalidParameter(
                    "generator operators live on different bases".into(),
                ));
            }
        }
        Ok(Self { gens, ops })
    }

    pub fn generators(&self) -> GeneratorSet {
        self.gens
    }

    pub fn basis(&self) -> &FockBasis {
        self.ops[0].basis()
    }

    pub fn operator(&self, index: usize) -> &OperatorMatrix {
        &self.ops[index]
    }

    pub fn operators(&self) -> &[OperatorMatrix] {
        &self.ops
    }
}

/// Columns `e₁..eₘ, f₁..fₘ` with `ω(eₖ, fₗ) = δₖₗ` and all other pairings
/// zero, where `ω(u, v) = uᵀΠv`. Paired vectors are rescaled to equal length.
fn darboux_frame(pi: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let d = pi.nrows();
    let omega = |u: &[f64], v: &[f64]| -> f64 {
        let mut s = 0.0;
        for a in 0..d {
            if u[a] == 0.0 {
                continue;
            }
            for b in 0..d {
                s += u[a] * pi[(a, b)] * v[b];
            }
        }
        s
    };
    let mut pool: Vec<Vec<f64>> = (0..d)
        .map(|k| {
            let mut e = vec![0.0; d];
            e[k] = 1.0;
            e
        })
        .collect();
    let scale = pi.amax().max(1.0);
    let mut es = Vec::new();
    let mut fs = Vec::new();
    while !pool.is_empty() {
        let u = pool.remove(0);
        let (best, w) = pool
            .iter()
            .enumerate()
            .map(|(k, v)| (k, omega(&u, v)))
            .fold((usize::MAX, 0.0f64), |acc, (k, w)| {
                if w.abs() > acc.1.abs() {
                    (k, w)
                } else {
                    acc
                }
            });
        if best == usize::MAX || w.abs() <= tol::BIVECTOR * scale {
            return Err(Error::SingularBivector);
        }
        let v: Vec<f64> = pool.remove(best).iter().map(|x| x / w).collect();
        for wv in pool.iter_mut() {
            let wu_ = omega(wv, &u);
            let wv_ = omega(wv, &v);
            for a in 0..d {
                wv[a] += -wv_ * u[a] + wu_ * v[a];
            }
        }
        let nu = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nv = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let s = (nv / nu).sqrt();
        es.push(u.iter().map(|x| x * s).collect::<Vec<_>>());
        fs.push(v.iter().map(|x| x / s).collect::<Vec<_>>());
    }
    let cols: Vec<Vec<f64>> = es.into_iter().chain(fs).collect();
    Ok(DMatrix::from_fn(d, d, |r, c| cols[c][r]))
}
