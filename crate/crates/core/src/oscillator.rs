//! q-deformed oscillators and a finite supersymmetric system.
//!
//! The algebra `aa⁺ + q a⁺a = 1` interpolates between bosons (`q = −1`) and
//! fermions (`q = +1`). On a ladder `a|n⟩ = √λₙ |n−1⟩` it fixes the levels
//! through `λ₀ = 0`, `λₙ₊₁ = 1 − qλₙ`.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{max_abs, mode_operators, FockBasis, Mode, OperatorMatrix};
use crate::linalg::{hermitian_eigen, hermitian_function};
use crate::tol;

#[derive(Debug, Clone)]
pub struct QOscillator {
    q: f64,
    levels: Vec<f64>,
    pub a: OperatorMatrix,
    pub a_dag: OperatorMatrix,
}

/// Build the q-oscillator ladder with up to `cutoff` levels.
///
/// For `q = 1` the ladder closes after two levels (`λ₂ = 0`) and the
/// returned oscillator is the exact two-level fermion regardless of
/// `cutoff`.
pub fn q_mode(q: f64, cutoff: usize) -> Result<QOscillator> {
    if !q.is_finite() || q < -1.0 {
        return Err(Error::InvalidParameter(format!(
            "q must be a real number >= -1, found {q}"
        )));
    }
    if cutoff < 2 {
        return Err(Error::InvalidParameter(format!(
            "q-oscillator cutoff must be at least 2, found {cutoff}"
        )));
    }
    let mut levels = vec![0.0];
    while levels.len() < cutoff {
        let next = 1.0 - q * levels[levels.len() - 1];
        if next < 0.0 {
            return Err(Error::TruncatedAlgebra {
                max_cutoff: levels.len(),
            });
        }
        if next == 0.0 {
            break;
        }
        levels.push(next);
    }
    let dim = levels.len();
    let basis = if q == 1.0 && dim == 2 {
        FockBasis::fermi()
    } else {
        FockBasis::new(vec![Mode::bose(dim)?])?
    };
    let mut a = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = Complex64::new(levels[n].sqrt(), 0.0);
    }
    let a = OperatorMatrix::new(basis, a)?;
    let a_dag = a.adjoint();
    Ok(QOscillator {
        q,
        levels,
        a,
        a_dag,
    })
}

impl QOscillator {
    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    /// `max |λₙ₊₁ − (1 − qλₙ)|` over the stored levels.
    pub fn recursion_residual(&self) -> f64 {
        self.levels
            .windows(2)
            .map(|w| (w[1] - (1.0 - self.q * w[0])).abs())
            .fold(self.levels[0].abs(), f64::max)
    }

    /// `aa⁺ + q a⁺a − 1` as a matrix.
    pub fn algebra_defect(&self) -> OperatorMatrix {
        let lhs = &(&self.a * &self.a_dag) + &(&self.a_dag * &self.a).scale_real(self.q);
        &lhs - &OperatorMatrix::identity(self.a.basis())
    }

    /// Largest defect over the states `n` with `n + 1` inside the ladder, and
    /// over every state when the ladder closes exactly.
    pub fn algebra_residual(&self) -> f64 {
        let defect = self.algebra_defect();
        let closed = self.q == 1.0 && self.dim() == 2;
        let rows = if closed { self.dim() } else { self.dim() - 1 };
        let states: Vec<usize> = (0..rows).collect();
        max_abs(&defect.submatrix(&states))
    }

    /// Eigenvalues of `a⁺a`, which are the levels themselves.
    pub fn number_spectrum(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|n| (&self.a_dag * &self.a).get(n, n).re)
            .collect()
    }
}

/// Choice of Hamiltonian for the supersymmetric system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SusyHamiltonian {
    /// `H = QQ⁺ + Q⁺Q`, commuting with `Q` identically.
    #[default]
    Anticommutator,
    /// `H = Q⁺Q` alone.
    QDaggerQ,
}

#[derive(Debug, Clone)]
pub struct SusySystem {
    pub q: OperatorMatrix,
    pub h: OperatorMatrix,
    pub variant: SusyHamiltonian,
}

/// `Q = a ⊗ f⁺` on a bosonic mode (cutoff `bose_cutoff`) times one fermion.
pub fn susy_system(bose_cutoff: usize, variant: SusyHamiltonian) -> Result<SusySystem> {
    if bose_cutoff < 2 {
        return Err(Error::InvalidParameter(format!(
            "bose cutoff must be at least 2, found {bose_cutoff}"
        )));
    }
    let basis = FockBasis::new(vec![Mode::bose(bose_cutoff)?, Mode::fermi()])?;
    let boson = mode_operators(&basis, 0)?;
    let fermion = mode_operators(&basis, 1)?;
    let q = &boson.a * &fermion.a_dag;
    let qd = q.adjoint();
    let h = match variant {
        SusyHamiltonian::Anticommutator => q.anticommutator(&qd),
        SusyHamiltonian::QDaggerQ => &qd * &q,
    }
    .certify_hermitian(tol::HERMITIAN)?;
    Ok(SusySystem { q, h, variant })
}

impl SusySystem {
    /// `‖[Q, H]‖_max` on the interior block.
    pub fn commutant_residual(&self, margin: usize) -> Result<f64> {
        Ok(max_abs(&self.q.commutator(&self.h).interior_matrix(margin)?))
    }
}

/// Interior states closed under the given operators: a state is dropped
/// while any operator maps it outside the kept set.
pub fn closed_interior(ops: &[&OperatorMatrix], margin: usize) -> Result<Vec<usize>> {
    let basis = ops
        .first()
        .ok_or_else(|| Error::InvalidParameter("no operators given".into()))?
        .basis();
    let mut keep: BTreeSet<usize> = basis.interior_states(margin)?.into_iter().collect();
    loop {
        let before = keep.len();
        let snapshot = keep.clone();
        keep.retain(|&s| {
            ops.iter().all(|op| {
                (0..op.dim()).all(|r| op.get(r, s) == Complex64::new(0.0, 0.0) || snapshot.contains(&r))
            })
        });
        if keep.len() == before {
            break;
        }
    }
    if keep.is_empty() {
        return Err(Error::EmptyInteriorBlock {
            margin,
            cutoff: basis.min_bose_cutoff().unwrap_or(0),
        });
    }
    Ok(keep.into_iter().collect())
}

/// Spectral data of a graded trace computation.
#[derive(Debug, Clone)]
pub struct IndexReport {
    pub index: Complex64,
    /// States kept after closing the interior block under `Q`, `Q⁺`, `H`.
    pub states: usize,
    /// `(eigenvalue, bosonic sector)` pairs, sorted by sector then value.
    pub pairing: Vec<(f64, bool)>,
    /// `dim ker H|bose − dim ker H|fermi`.
    pub graded_kernel: i64,
    /// `dim ker (Q − Q⁺)` on the kept states.
    pub kernel_q_minus_qdag: usize,
}

fn check_index_inputs(q: &OperatorMatrix, h: &OperatorMatrix, beta: f64) -> Result<()> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "beta must be positive and finite, found {beta}"
        )));
    }
    if q.basis() != h.basis() {
        return Err(Error::dims(q.basis(), h.basis()));
    }
    if !h.basis().has_fermions() {
        return Err(Error::InvalidParameter(
            "(-1)^F needs a fermionic tensor factor".into(),
        ));
    }
    let deviation = h.hermitian_deviation();
    if deviation > tol::HERMITIAN {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// `Tr((−1)^F e^{−βH})` over the interior block closed under `Q`, `Q⁺`, `H`.
pub fn witten_index(q: &OperatorMatrix, h: &OperatorMatrix, beta: f64) -> Result<Complex64> {
    Ok(witten_report(q, h, beta, 1)?.index)
}

pub fn witten_report(
    q: &OperatorMatrix,
    h: &OperatorMatrix,
    beta: f64,
    margin: usize,
) -> Result<IndexReport> {
    check_index_inputs(q, h, beta)?;
    let qd = q.adjoint();
    let states = closed_interior(&[q, &qd, h], margin)?;
    let basis = h.basis();
    let hs = h.submatrix(&states);
    let heat = hermitian_function(&hs, |e| Complex64::new((-beta * e).exp(), 0.0));
    let index: Complex64 = states
        .iter()
        .enumerate()
        .map(|(k, &s)| heat[(k, k)] * basis.parity(s) as f64)
        .sum();

    let mut pairing = Vec::new();
    let mut graded_kernel = 0i64;
    for bosonic in [true, false] {
        let sector: Vec<usize> = states
            .iter()
            .copied()
            .filter(|&s| (basis.parity(s) == 1) == bosonic)
            .collect();
        let (vals, _) = hermitian_eigen(&h.submatrix(&sector));
        let zeros = vals.iter().filter(|v| v.abs() < tol::ZERO_MODE).count() as i64;
        graded_kernel += if bosonic { zeros } else { -zeros };
        pairing.extend(vals.into_iter().map(|v| (v, bosonic)));
    }

    let k = (q - &qd).submatrix(&states) * Complex64::new(0.0, 1.0);
    let (kvals, _) = hermitian_eigen(&k);
    let kernel_q_minus_qdag = kvals.iter().filter(|v| v.abs() < tol::ZERO_MODE).count();

    Ok(IndexReport {
        index,
        states: states.len(),
        pairing,
        graded_kernel,
        kernel_q_minus_qdag,
    })
}
