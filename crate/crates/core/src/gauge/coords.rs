use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{max_abs, FockBasis, GeneratorMap, OperatorMatrix};
use crate::phase::Bivector;
use crate::tol;

/// `cᵢ = (θ⁻¹)ᵢⱼ x̂ʲ + Aᵢ` realized as hermitian matrices.
#[derive(Debug, Clone)]
pub struct CovariantCoords {
    theta: Bivector,
    theta_inv: nalgebra::DMatrix<f64>,
    c: Vec<OperatorMatrix>,
    g2: f64,
}

impl CovariantCoords {
    pub fn new(theta: Bivector, c: Vec<OperatorMatrix>, g2: f64) -> Result<Self> {
        let theta_inv = theta.inverse()?;
        if c.len() != theta.len() {
            return Err(Error::dims(theta.len(), c.len()));
        }
        if !(g2 > 0.0) || !g2.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "coupling g^2 must be positive, found {g2}"
            )));
        }
        if c.windows(2).any(|w| w[0].basis() != w[1].basis()) {
            return Err(Error::InvalidParameter(
                "covariant coordinates live on different bases".into(),
            ));
        }
        let c = c
            .into_iter()
            .map(|ci| ci.certify_hermitian(tol::HERMITIAN))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            theta,
            theta_inv,
            c,
            g2,
        })
    }

    pub fn theta(&self) -> &Bivector {
        &self.theta
    }

    pub fn theta_inverse(&self) -> &nalgebra::DMatrix<f64> {
        &self.theta_inv
    }

    pub fn coords(&self) -> &[OperatorMatrix] {
        &self.c
    }

    pub fn coupling(&self) -> f64 {
        self.g2
    }

    pub fn basis(&self) -> &FockBasis {
        self.c[0].basis()
    }

    pub fn with_coupling(mut self, g2: f64) -> Result<Self> {
        if !(g2 > 0.0) || !g2.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "coupling g^2 must be positive, found {g2}"
            )));
        }
        self.g2 = g2;
        Ok(self)
    }

    /// Replace `cᵢ` by `cᵢ + εhᵢ`.
    pub fn perturbed(&self, h: &[OperatorMatrix], eps: f64) -> Result<Self> {
        if h.len() != self.c.len() {
            return Err(Error::dims(self.c.len(), h.len()));
        }
        let c = self
            .c
            .iter()
            .zip(h)
            .map(|(ci, hi)| ci + &hi.scale_real(eps))
            .collect();
        Self::new(self.theta.clone(), c, self.g2)
    }
}

/// `cᵢ = (θ⁻¹)ᵢⱼ x̂ʲ` with `x̂` realizing `[x̂ⁱ, x̂ʲ] = iθⁱʲ` on `basis`.
pub fn vacuum_coords(theta: &Bivector, basis: &FockBasis) -> Result<CovariantCoords> {
    let inv = theta.inverse()?;
    let map = GeneratorMap::adapted(theta, basis)?;
    let n = theta.len();
    let c = (0..n)
        .map(|i| {
            let mut acc = OperatorMatrix::zeros(basis);
            for j in 0..n {
                if inv[(i, j)] != 0.0 {
                    acc = &acc + &map.operator(j).scale_real(inv[(i, j)]);
                }
            }
            acc
        })
        .collect();
    CovariantCoords::new(theta.clone(), c, 1.0)
}

/// `Fᵢⱼ = −i[cᵢ, cⱼ] + (θ⁻¹)ᵢⱼ`, antisymmetric by construction.
pub fn field_strength(cc: &CovariantCoords) -> Vec<Vec<OperatorMatrix>> {
    let n = cc.c.len();
    let basis = cc.basis();
    let id = OperatorMatrix::identity(basis);
    let mut f = vec![vec![OperatorMatrix::zeros(basis); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let fij = &cc.c[i].commutator(&cc.c[j]).scale(Complex64::new(0.0, -1.0))
                + &id.scale_real(cc.theta_inv[(i, j)]);
            f[j][i] = -&fij;
            f[i][j] = fij;
        }
    }
    f
}

/// Euclidean action `(1/4g²) Σ_{i≠j} Tr_P(Fᵢⱼ Fᵢⱼ⁺)` over the interior block.
pub fn ym_action(cc: &CovariantCoords, margin: usize) -> Result<f64> {
    let f = field_strength(cc);
    let mut sum = 0.0;
    for (i, row) in f.iter().enumerate() {
        for (j, fij) in row.iter().enumerate() {
            if i == j {
                continue;
            }
            sum += fij.interior_matrix(margin)?.norm_squared();
        }
    }
    Ok(sum / (4.0 * cc.g2))
}

/// `cᵢ → U cᵢ U⁺`.
pub fn gauge_transform(cc: &CovariantCoords, u: &OperatorMatrix) -> Result<CovariantCoords> {
    if u.basis() != cc.basis() {
        return Err(Error::dims(cc.basis(), u.basis()));
    }
    let id = OperatorMatrix::identity(u.basis());
    let deviation = max_abs((&(u * &u.adjoint()) - &id).data());
    if deviation > tol::UNITARY {
        return Err(Error::NotUnitary { deviation });
    }
    let ud = u.adjoint();
    let c = cc.c.iter().map(|ci| &(u * ci) * &ud).collect();
    CovariantCoords::new(cc.theta.clone(), c, cc.g2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_is_flat() {
        let theta = Bivector::theta(0.7);
        let b = FockBasis::bose(16).unwrap();
        let cc = vacuum_coords(&theta, &b).unwrap();
        let comm = cc.coords()[0].commutator(&cc.coords()[1]);
        let target = OperatorMatrix::identity(&b).scale(Complex64::new(0.0, 1.0 / 0.7));
        assert!(comm.interior_distance(&target, 1).unwrap() < 1e-12);
        let f = field_strength(&cc);
        assert!(f[0][1].interior_matrix(2).unwrap().iter().all(|z| z.norm() < 1e-8));
        assert_eq!(f[1][0], -&f[0][1]);
        assert!(ym_action(&cc, 2).unwrap() < 1e-8);
    }

    #[test]
    fn coupling_scales_action() {
        let b = FockBasis::bose(10).unwrap();
        let cc = vacuum_coords(&Bivector::theta(1.0), &b).unwrap();
        let h = vec![OperatorMatrix::identity(&b); 2];
        let mut x = crate::fock::mode_operators(&b, 0).unwrap().x;
        x = &x * &x;
        let cc = cc.perturbed(&[x, h[1].clone()], 0.1).unwrap();
        let s1 = ym_action(&cc, 2).unwrap();
        let s2 = ym_action(&cc.clone().with_coupling(4.0).unwrap(), 2).unwrap();
        assert!(s1 > 0.0);
        assert_eq!(s1 / 4.0, s2);
    }

    #[test]
    fn rejects_non_unitary_and_singular() {
        let b = FockBasis::bose(6).unwrap();
        let cc = vacuum_coords(&Bivector::theta(1.0), &b).unwrap();
        let u = OperatorMatrix::identity(&b).scale_real(1.1);
        assert!(matches!(gauge_transform(&cc, &u), Err(Error::NotUnitary { .. })));
        assert!(matches!(
            vacuum_coords(&Bivector::theta(0.0), &b),
            Err(Error::SingularBivector)
        ));
    }
}
