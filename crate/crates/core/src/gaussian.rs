//! Finite Gaussian integrals over bosonic or Grassmann variables.
//!
//! Weights are Euclidean, `exp(−χ⁺hχ + J⁺χ + χ⁺J)`, normalized so that
//! `Z(h = I, J = 0) = 1`. Only ratios of partition functions carry meaning.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::bogoliubov::BogoliubovTransform;
use crate::error::{Error, Result};
use crate::fock::{max_abs, Statistics};
use crate::tol;

type CMat = DMatrix<Complex64>;

#[derive(Debug, Clone)]
pub struct QuadraticAction {
    h: CMat,
    h_inv: CMat,
    log_det: Complex64,
    det: Complex64,
    statistics: Statistics,
}

impl QuadraticAction {
    pub fn new(h: CMat, statistics: Statistics) -> Result<Self> {
        if h.nrows() != h.ncols() || h.nrows() == 0 {
            return Err(Error::dims("non-empty square matrix", format!("{}x{}", h.nrows(), h.ncols())));
        }
        let deviation = max_abs(&(&h - h.adjoint()));
        if deviation > tol::QUADRATIC_FORM {
            return Err(Error::NotHermitian { deviation });
        }
        let (log_det, det, h_inv) = match statistics {
            Statistics::Bose => {
                // Complex Cholesky takes square roots of negative pivots
                // without failing, so definiteness is checked spectrally.
                let (vals, _) = crate::linalg::hermitian_eigen(&h);
                if !(vals[0] > 0.0) {
                    return Err(Error::NotPositiveDefinite);
                }
                let chol = h.clone().cholesky().ok_or(Error::NotPositiveDefinite)?;
                let l = chol.l_dirty();
                let diag: Vec<f64> = (0..h.nrows()).map(|k| l[(k, k)].re).collect();
                if diag.iter().any(|d| !(*d > 0.0)) {
                    return Err(Error::NotPositiveDefinite);
                }
                let log_det = 2.0 * diag.iter().map(|d| d.ln()).sum::<f64>();
                let det = diag.iter().map(|d| d * d).product::<f64>();
                (Complex64::from(log_det), Complex64::from(det), chol.inverse())
            }
            Statistics::Fermi => {
                let lu = h.clone().lu();
                let det = lu.determinant();
                if det.norm() == 0.0 {
                    return Err(Error::SingularMatrix);
                }
                let inv = lu.try_inverse().ok_or(Error::SingularMatrix)?;
                (det.ln(), det, inv)
            }
        };
        Ok(Self {
            h,
            h_inv,
            log_det,
            det,
            statistics,
        })
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn modes(&self) -> usize {
        self.h.nrows()
    }

    pub fn h(&self) -> &CMat {
        &self.h
    }

    /// `h⁻¹`, the two-point function.
    pub fn propagator(&self) -> &CMat {
        &self.h_inv
    }

    pub fn log_det(&self) -> Complex64 {
        self.log_det
    }

    fn source_term(&self, j: &[Complex64]) -> Result<Complex64> {
        if j.len() != self.modes() {
            return Err(Error::dims(self.modes(), j.len()));
        }
        let jv = nalgebra::DVector::from_column_slice(j);
        Ok((jv.adjoint() * &self.h_inv * &jv)[(0, 0)])
    }

    /// Bose: `−log det h + J⁺h⁻¹J`. Fermi: `log det h − J⁺h⁻¹J`.
    pub fn log_partition(&self, j: &[Complex64]) -> Result<Complex64> {
        let s = self.source_term(j)?;
        Ok(match self.statistics {
            Statistics::Bose => -self.log_det + s,
            Statistics::Fermi => self.log_det - s,
        })
    }

    /// `Z(J)/Z(I, 0)`, using the determinant directly.
    pub fn partition(&self, j: &[Complex64]) -> Result<Complex64> {
        let s = self.source_term(j)?;
        Ok(match self.statistics {
            Statistics::Bose => s.exp() / self.det,
            Statistics::Fermi => self.det * (-s).exp(),
        })
    }

    /// `⟨χ…χ⁺…⟩` by Wick pairing each `χᵢ` with a `χ⁺ⱼ` through `(h⁻¹)ᵢⱼ`.
    pub fn green(&self, insertions: &[Insertion]) -> Result<Correlator> {
        for ins in insertions {
            if ins.mode >= self.modes() {
                return Err(Error::InvalidMode {
                    index: ins.mode,
                    modes: self.modes(),
                });
            }
        }
        if insertions.len() % 2 == 1 {
            return Ok(Correlator {
                value: Complex64::new(0.0, 0.0),
                note: Some("odd correlator".into()),
            });
        }
        let fields: Vec<usize> = (0..insertions.len()).filter(|&k| !insertions[k].conjugate).collect();
        let conj: Vec<usize> = (0..insertions.len()).filter(|&k| insertions[k].conjugate).collect();
        if fields.len() != conj.len() {
            return Ok(Correlator {
                value: Complex64::new(0.0, 0.0),
                note: Some("unbalanced correlator".into()),
            });
        }
        let mut value = Complex64::new(0.0, 0.0);
        let mut assign: Vec<usize> = (0..conj.len()).collect();
        loop {
            let mut term = Complex64::new(1.0, 0.0);
            for (k, &f) in fields.iter().enumerate() {
                let c = conj[assign[k]];
                term *= self.h_inv[(insertions[f].mode, insertions[c].mode)];
            }
            if self.statistics == Statistics::Fermi {
                let order: Vec<usize> = fields
                    .iter()
                    .enumerate()
                    .flat_map(|(k, &f)| [f, conj[assign[k]]])
                    .collect();
                term *= permutation_sign(&order) as f64;
            }
            value += term;
            if !next_permutation(&mut assign) {
                break;
            }
        }
        Ok(Correlator { value, note: None })
    }

    /// `Z[h′]/Z[h]` for `χ → αχ`, i.e. `h′ = α⁺hα`. Only number-conserving
    /// transforms (`β = 0`) act on this quadratic form.
    pub fn transformed_ratio(&self, t: &BogoliubovTransform) -> Result<Complex64> {
        if t.modes() != self.modes() {
            return Err(Error::dims(self.modes(), t.modes()));
        }
        if max_abs(&t.beta) > tol::COEFF {
            return Err(Error::InvalidParameter(
                "only transforms with beta = 0 act on a chi^+ h chi form".into(),
            ));
        }
        let h2 = t.alpha.adjoint() * &self.h * &t.alpha;
        let h2 = (&h2 + h2.adjoint()) * Complex64::new(0.5, 0.0);
        let other = Self::new(h2, self.statistics)?;
        let zero = vec![Complex64::new(0.0, 0.0); self.modes()];
        Ok(other.partition(&zero)? / self.partition(&zero)?)
    }
}

/// One field insertion `χ_mode` or `χ⁺_mode`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Insertion {
    pub conjugate: bool,
    pub mode: usize,
}

impl Insertion {
    pub fn field(mode: usize) -> Self {
        Self { conjugate: false, mode }
    }

    pub fn conj(mode: usize) -> Self {
        Self { conjugate: true, mode }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Correlator {
    pub value: Complex64,
    pub note: Option<String>,
}

fn permutation_sign(order: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if order[i] > order[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
