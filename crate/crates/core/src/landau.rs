//! Planar coordinates in a uniform magnetic field `B`, realized on one
//! bosonic mode with `θ = 1/B` (units with ħ = c = e = 1).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{max_abs, mode_operators, FockBasis, OperatorMatrix};
use crate::phase::{moyal_bracket, Bivector, GeneratorSet, PhasePoly};

/// Largest allowed deviation of the braiding group commutator from a scalar.
pub const BRAID_LIMIT: f64 = crate::tol::BRAID_SCALAR;

#[derive(Debug, Clone)]
pub struct LandauSystem {
    b: f64,
    pub a: OperatorMatrix,
    pub a_dag: OperatorMatrix,
    /// `x̂¹ = (a + a⁺)/√(2B)`, `x̂² = −i(a − a⁺)/√(2B)`.
    pub x: [OperatorMatrix; 2],
    /// `H = B(a⁺a + 1/2)`.
    pub h: OperatorMatrix,
}

pub fn landau_system(b: f64, cutoff: usize) -> Result<LandauSystem> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "field strength B must be positive, found {b}"
        )));
    }
    if cutoff < 4 {
        return Err(Error::InvalidParameter(format!(
            "Landau cutoff must be at least 4, found {cutoff}"
        )));
    }
    let basis = FockBasis::bose(cutoff)?;
    let m = mode_operators(&basis, 0)?;
    let s = 1.0 / (2.0 * b).sqrt();
    let x1 = (&m.a + &m.a_dag).scale_real(s);
    let x2 = (&m.a - &m.a_dag).scale(Complex64::new(0.0, -s));
    let id = OperatorMatrix::identity(&basis);
    let h = (&(&m.a_dag * &m.a) + &id.scale_real(0.5)).scale_real(b);
    Ok(LandauSystem {
        b,
        x: [
            x1.certify_hermitian(crate::tol::HERMITIAN)?,
            x2.certify_hermitian(crate::tol::HERMITIAN)?,
        ],
        h: h.certify_hermitian(crate::tol::HERMITIAN)?,
        a: m.a,
        a_dag: m.a_dag,
    })
}

impl LandauSystem {
    pub fn field(&self) -> f64 {
        self.b
    }

    pub fn theta(&self) -> f64 {
        1.0 / self.b
    }

    pub fn cutoff(&self) -> usize {
        self.h.dim()
    }

    /// Ascending eigenvalues of `H` on the interior block.
    pub fn spectrum(&self, margin: usize) -> Result<Vec<f64>> {
        let (vals, _) = crate::linalg::hermitian_eigen(&self.h.interior_matrix(margin)?);
        Ok(vals)
    }

    /// Largest deviation of consecutive interior levels from `B`.
    pub fn spacing_residual(&self, margin: usize) -> Result<f64> {
        let s = self.spectrum(margin)?;
        Ok(s.windows(2)
            .map(|w| (w[1] - w[0] - self.b).abs())
            .fold(0.0, f64::max))
    }

    /// `max |[x̂¹, x̂²] − i/B|` on the interior block.
    pub fn commutator_residual(&self, margin: usize) -> Result<f64> {
        let target = OperatorMatrix::identity(self.h.basis()).scale(Complex64::new(0.0, self.theta()));
        self.x[0].commutator(&self.x[1]).interior_distance(&target, margin)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BraidReport {
    pub phase: Complex64,
    /// `max |G − phase·I|` on the interior block.
    pub deviation: f64,
    pub margin: usize,
}

/// Scalar part of `e^{ix̂¹} e^{ix̂²} e^{−ix̂¹} e^{−ix̂²}` with `[x̂¹, x̂²] = iθ`,
/// which is `e^{−iθ}` exactly in infinite dimension.
pub fn braiding_phase(theta: f64, cutoff: usize) -> Result<Complex64> {
    Ok(braiding_report(theta, cutoff)?.phase)
}

pub fn braiding_report(theta: f64, cutoff: usize) -> Result<BraidReport> {
    if !theta.is_finite() {
        return Err(Error::InvalidParameter(format!("theta must be finite, found {theta}")));
    }
    if cutoff < 4 {
        return Err(Error::InvalidParameter(format!(
            "braiding cutoff must be at least 4, found {cutoff}"
        )));
    }
    let basis = FockBasis::bose(cutoff)?;
    let m = mode_operators(&basis, 0)?;
    let r = theta.abs().sqrt();
    let i = Complex64::new(0.0, 1.0);
    let x1 = m.x.scale_real(r);
    let x2 = m.p.scale_real(r * theta.signum());
    let e1 = x1.scale(i).exp();
    let e2 = x2.scale(i).exp();
    let e1i = x1.scale(-i).exp();
    let e2i = x2.scale(-i).exp();
    let g = &(&(&e1 * &e2) * &e1i) * &e2i;
    let margin = cutoff / 2;
    let block = g.interior_matrix(margin)?;
    let n = block.nrows();
    let phase = block.trace() / n as f64;
    let deviation = max_abs(&(block - nalgebra::DMatrix::identity(n, n) * phase));
    if deviation > BRAID_LIMIT {
        return Err(Error::TruncationInsufficient {
            deviation,
            limit: BRAID_LIMIT,
            suggested_cutoff: 2 * cutoff,
        });
    }
    Ok(BraidReport {
        phase,
        deviation,
        margin,
    })
}

/// `[x′¹, x′²]⋆` after `xⁱ → xⁱ + iθεⁱʲAⱼ` with `Aᵢ = (B/2)εᵢⱼxʲ`,
/// under `[x¹, x²] = iθ`. Equals `iθ(1 − iθB/2)²`.
pub fn shifted_commutator(theta: f64, b: f64) -> Result<PhasePoly> {
    let g = GeneratorSet::coordinates(2)?;
    let pi = Bivector::theta(theta);
    let eps = |i: usize, j: usize| -> f64 {
        match (i, j) {
            (0, 1) => 1.0,
            (1, 0) => -1.0,
            _ => 0.0,
        }
    };
    let x = |k: usize| PhasePoly::generator(g, k);
    let gauge: Vec<PhasePoly> = (0..2)
        .map(|i| {
            (0..2).fold(PhasePoly::zero(g), |acc, j| {
                &acc + &x(j).scale((b / 2.0 * eps(i, j)).into())
            })
        })
        .collect();
    let shifted: Vec<PhasePoly> = (0..2)
        .map(|i| {
            (0..2).fold(x(i), |acc, j| {
                &acc + &gauge[j].scale(Complex64::new(0.0, theta * eps(i, j)))
            })
        })
        .collect();
    moyal_bracket(&shifted[0], &shifted[1], &pi)
}
