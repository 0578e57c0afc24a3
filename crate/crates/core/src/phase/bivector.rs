use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::tol;

/// Ordered phase-space generators `x1..xc, p1..pm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorSet {
    coords: usize,
    momenta: usize,
}

impl GeneratorSet {
    pub fn new(coords: usize, momenta: usize) -> Result<Self> {
        if coords + momenta == 0 {
            return Err(Error::InvalidParameter(
                "generator set must contain at least one generator".into(),
            ));
        }
        Ok(Self { coords, momenta })
    }

    /// Coordinates only: `x1..xn`.
    pub fn coordinates(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    /// `n` coordinates and their `n` conjugate momenta.
    pub fn phase_space(n: usize) -> Result<Self> {
        Self::new(n, n)
    }

    pub fn coords(&self) -> usize {
        self.coords
    }

    pub fn momenta(&self) -> usize {
        self.momenta
    }

    pub fn len(&self) -> usize {
        self.coords + self.momenta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when every coordinate has a conjugate momentum.
    pub fn is_canonical(&self) -> bool {
        self.coords == self.momenta
    }

    pub fn coord_index(&self, i: usize) -> usize {
        assert!(i < self.coords, "coordinate {i} out of range");
        i
    }

    pub fn momentum_index(&self, j: usize) -> usize {
        assert!(j < self.momenta, "momentum {j} out of range");
        self.coords + j
    }

    pub fn name(&self, index: usize) -> String {
        if index < self.coords {
            format!("x{}", index + 1)
        } else {
            format!("p{}", index - self.coords + 1)
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        let (kind, rest) = name.split_at(name.chars().next()?.len_utf8());
        let k: usize = rest.parse().ok()?;
        if k == 0 {
            return None;
        }
        match kind {
            "x" if k <= self.coords => Some(k - 1),
            "p" if k <= self.momenta => Some(self.coords + k - 1),
            _ => None,
        }
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.len()).map(|i| self.name(i)).collect();
        write!(f, "({})", names.join(","))
    }
}

/// Constant antisymmetric matrix `Π` with `[zᵃ, zᵇ] = iΠᵃᵇ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bivector {
    gens: GeneratorSet,
    entries: DMatrix<f64>,
}

impl Bivector {
    pub fn zero(gens: GeneratorSet) -> Self {
        let n = gens.len();
        Self {
            gens,
            entries: DMatrix::zeros(n, n),
        }
    }

    /// Build from the strict upper triangle, row-major: `Π¹², Π¹³, …, Π²³, …`.
    pub fn from_upper(gens: GeneratorSet, upper: &[f64]) -> Result<Self> {
        let n = gens.len();
        let expected = n * (n - 1) / 2;
        if upper.len() != expected {
            return Err(Error::dims(
                format!("{expected} upper-triangle entries"),
                upper.len(),
            ));
        }
        let mut b = Self::zero(gens);
        let mut it = upper.iter();
        for a in 0..n {
            for c in a + 1..n {
                b.set(a, c, *it.next().unwrap());
            }
        }
        Ok(b)
    }

    /// Build from a full matrix. The lower triangle must mirror the upper one
    /// with opposite sign; the stored value is then exactly antisymmetric.
    pub fn from_matrix(gens: GeneratorSet, m: &DMatrix<f64>) -> Result<Self> {
        let n = gens.len();
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::dims(
                format!("{n}x{n}"),
                format!("{}x{}", m.nrows(), m.ncols()),
            ));
        }
        let mut b = Self::zero(gens);
        for a in 0..n {
            if m[(a, a)].abs() > tol::BIVECTOR {
                return Err(Error::NotAntisymmetric { row: a, col: a });
            }
            for c in a + 1..n {
                if (m[(a, c)] + m[(c, a)]).abs() > tol::BIVECTOR {
                    return Err(Error::NotAntisymmetric { row: a, col: c });
                }
                b.set(a, c, m[(a, c)]);
            }
        }
        Ok(b)
    }

    /// Two coordinates with `[x1, x2] = iθ`.
    pub fn theta(theta: f64) -> Self {
        let mut b = Self::zero(GeneratorSet::coordinates(2).unwrap());
        b.set(0, 1, theta);
        b
    }

    /// `θⁱʲ = scale·εⁱʲ` on `n` coordinates; only `n = 2` has a unique ε,
    /// larger `n` pair up coordinates `(1,2), (3,4), …`.
    pub fn epsilon(n: usize, scale: f64) -> Result<Self> {
        let mut b = Self::zero(GeneratorSet::coordinates(n)?);
        for k in (0..n.saturating_sub(1)).step_by(2) {
            b.set(k, k + 1, scale);
        }
        Ok(b)
    }

    /// Canonical pairs `[xⁱ, pⱼ] = iδⁱⱼ` with commuting coordinates and momenta.
    pub fn canonical(n: usize) -> Result<Self> {
        let gens = GeneratorSet::phase_space(n)?;
        let mut b = Self::zero(gens);
        for i in 0..n {
            b.set(gens.coord_index(i), gens.momentum_index(i), 1.0);
        }
        Ok(b)
    }

    /// Full phase-space bivector: `[xⁱ,xʲ] = iθxⁱʲ`, `[pᵢ,pⱼ] = iθpᵢⱼ`,
    /// `[xⁱ,pⱼ] = iδⁱⱼ`.
    pub fn phase_space(theta_x: &Bivector, theta_p: &Bivector) -> Result<Self> {
        let n = theta_x.len();
        if theta_x.gens.momenta() != 0 || theta_p.gens.momenta() != 0 {
            return Err(Error::InvalidParameter(
                "coordinate and momentum blocks must be coordinate-only bivectors".into(),
            ));
        }
        if theta_p.len() != n {
            return Err(Error::dims(n, theta_p.len()));
        }
        let mut b = Self::canonical(n)?;
        for i in 0..n {
            for j in i + 1..n {
                b.set(i, j, theta_x.get(i, j));
                b.set(n + i, n + j, theta_p.get(i, j));
            }
        }
        Ok(b)
    }

    fn set(&mut self, a: usize, b: usize, v: f64) {
        self.entries[(a, b)] = v;
        self.entries[(b, a)] = -v;
    }

    pub fn generators(&self) -> GeneratorSet {
        self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.entries[(a, b)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn upper(&self) -> Vec<f64> {
        let n = self.len();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for a in 0..n {
            for b in a + 1..n {
                out.push(self.get(a, b));
            }
        }
        out
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            gens: self.gens,
            entries: &self.entries * s,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|v| *v == 0.0)
    }

    /// Nonzero entries `(a, b, Πᵃᵇ)`, row-major.
    pub fn nonzero(&self) -> Vec<(usize, usize, f64)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let v = self.get(a, b);
                if v != 0.0 {
                    out.push((a, b, v));
                }
            }
        }
        out
    }

    /// `Π⁻¹`, failing rather than pseudo-inverting when `Π` is singular.
    pub fn inverse(&self) -> Result<DMatrix<f64>> {
        let n = self.len();
        let inv = self
            .entries
            .clone()
            .try_inverse()
            .ok_or(Error::SingularBivector)?;
        let residual = (&self.entries * &inv - DMatrix::<f64>::identity(n, n)).amax();
        if !residual.is_finite() || residual > tol::BIVECTOR {
            return Err(Error::SingularBivector);
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }

    /// The bivector built from `Π⁻¹`, on the same generators.
    pub fn inverse_bivector(&self) -> Result<Self> {
        Self::from_matrix(self.gens, &self.inverse()?)
    }

    /// Restriction to the coordinate generators.
    pub fn coordinate_block(&self) -> Result<Self> {
        let c = self.gens.coords();
        let gens = GeneratorSet::coordinates(c)?;
        Ok(Self {
            gens,
            entries: self.entries.view((0, 0), (c, c)).into_owned(),
        })
    }
}
