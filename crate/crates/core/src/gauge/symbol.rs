use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phase::{star, Bivector, GeneratorSet, PhasePoly};

/// `d × d` matrix of phase-space symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPoly {
    d: usize,
    gens: GeneratorSet,
    entries: Vec<PhasePoly>,
}

impl MatrixPoly {
    /// Entries in row-major order.
    pub fn new(d: usize, entries: Vec<PhasePoly>) -> Result<Self> {
        if d == 0 || entries.len() != d * d {
            return Err(Error::dims(d * d, entries.len()));
        }
        let gens = entries[0].generators();
        if entries.iter().any(|e| e.generators() != gens) {
            return Err(Error::InvalidParameter(
                "matrix entries use different generator sets".into(),
            ));
        }
        Ok(Self { d, gens, entries })
    }

    /// Abelian (`d = 1`) symbol.
    pub fn scalar(p: PhasePoly) -> Self {
        Self {
            d: 1,
            gens: p.generators(),
            entries: vec![p],
        }
    }

    pub fn zero(gens: GeneratorSet, d: usize) -> Self {
        Self {
            d,
            gens,
            entries: vec![PhasePoly::zero(gens); d * d],
        }
    }

    pub fn identity(gens: GeneratorSet, d: usize) -> Self {
        Self::from_fn(gens, d, |i, j| {
            if i == j {
                PhasePoly::one(gens)
            } else {
                PhasePoly::zero(gens)
            }
        })
    }

    pub fn from_fn(gens: GeneratorSet, d: usize, f: impl Fn(usize, usize) -> PhasePoly) -> Self {
        let entries = (0..d * d).map(|k| f(k / d, k % d)).collect();
        Self { d, gens, entries }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn generators(&self) -> GeneratorSet {
        self.gens
    }

    pub fn get(&self, i: usize, j: usize) -> &PhasePoly {
        &self.entries[i * self.d + j]
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.d != other.d || self.gens != other.gens {
            return Err(Error::dims(
                format!("{}x{} over {}", self.d, self.d, self.gens),
                format!("{}x{} over {}", other.d, other.d, other.gens),
            ));
        }
        Ok(())
    }

    fn zip(&self, other: &Self, f: impl Fn(&PhasePoly, &PhasePoly) -> PhasePoly) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            d: self.d,
            gens: self.gens,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|p| p.scale(s))
    }

    pub fn map(&self, f: impl Fn(&PhasePoly) -> PhasePoly) -> Self {
        Self {
            d: self.d,
            gens: self.gens,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn derivative(&self, index: usize) -> Self {
        self.map(|p| p.derivative(index))
    }

    fn compose(
        &self,
        other: &Self,
        mut mul: impl FnMut(&PhasePoly, &PhasePoly) -> Result<PhasePoly>,
    ) -> Result<Self> {
        self.check(other)?;
        let d = self.d;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for k in 0..d {
                let mut acc = PhasePoly::zero(self.gens);
                for j in 0..d {
                    acc = &acc + &mul(self.get(i, j), other.get(j, k))?;
                }
                entries.push(acc);
            }
        }
        Ok(Self {
            d,
            gens: self.gens,
            entries,
        })
    }

    /// Matrix product with pointwise multiplication of entries.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compose(other, |a, b| Ok(a * b))
    }

    /// Matrix product with the star product of entries.
    pub fn star(&self, other: &Self, pi: &Bivector) -> Result<Self> {
        self.compose(other, |a, b| star(a, b, pi))
    }

    /// `f ⋆ g − g ⋆ f`.
    pub fn star_commutator(&self, other: &Self, pi: &Bivector) -> Result<Self> {
        self.star(other, pi)?.sub(&other.star(self, pi)?)
    }

    /// `fg − gf` with pointwise entry products.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(PhasePoly::max_abs).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.check(other).is_ok() && self.sub(other).map(|r| r.max_abs() <= tol).unwrap_or(false)
    }
}

impl fmt::Display for MatrixPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 1 {
            return write!(f, "{}", self.entries[0]);
        }
        write!(f, "[")?;
        for i in 0..self.d {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.d {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

fn check_gauge_inputs(f: Option<&MatrixPoly>, a: &[MatrixPoly], theta: &Bivector) -> Result<()> {
    let gens = theta.generators();
    if gens.momenta() != 0 {
        return Err(Error::InvalidParameter(
            "theta must act on coordinates only".into(),
        ));
    }
    if a.len() != gens.len() {
        return Err(Error::dims(gens.len(), a.len()));
    }
    let d = f.map(|f| f.d).unwrap_or_else(|| a.first().map_or(1, |x| x.d));
    for m in f.into_iter().chain(a) {
        if m.gens != gens || m.d != d {
            return Err(Error::dims(
                format!("{d}x{d} over {gens}"),
                format!("{}x{} over {}", m.d, m.d, m.gens),
            ));
        }
    }
    Ok(())
}

/// `∇ᵢf = ∂ᵢf − i[Aᵢ, f]⋆`.
pub fn covariant_derivative(
    f: &MatrixPoly,
    a: &[MatrixPoly],
    theta: &Bivector,
    i: usize,
) -> Result<MatrixPoly> {
    check_gauge_inputs(Some(f), a, theta)?;
    if i >= a.len() {
        return Err(Error::InvalidParameter(format!(
            "direction {i} out of range for {} coordinates",
            a.len()
        )));
    }
    let comm = a[i].star_commutator(f, theta)?;
    f.derivative(i).sub(&comm.scale(Complex64::new(0.0, 1.0)))
}

/// `−i[cᵢ, f]⋆` with `cᵢ = (θ⁻¹)ᵢⱼ xʲ·1 + Aᵢ`.
pub fn covariant_derivative_c_form(
    f: &MatrixPoly,
    a: &[MatrixPoly],
    theta: &Bivector,
    i: usize,
) -> Result<MatrixPoly> {
    check_gauge_inputs(Some(f), a, theta)?;
    let inv = theta.inverse()?;
    let gens = theta.generators();
    let mut lin = PhasePoly::zero(gens);
    for j in 0..gens.len() {
        if inv[(i, j)] != 0.0 {
            lin = &lin + &PhasePoly::generator(gens, j).scale(inv[(i, j)].into());
        }
    }
    let c = MatrixPoly::identity(gens, f.d).map(|p| p * &lin).add(&a[i])?;
    Ok(c.star_commutator(f, theta)?.scale(Complex64::new(0.0, -1.0)))
}

/// Coefficient `κ` of the θ-correction term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SwConvention {
    /// `κ = i/2`, as commonly printed.
    #[default]
    Printed,
    /// `κ = 1/2`, the real coefficient of the first-order expansion.
    Standard,
}

impl SwConvention {
    pub fn kappa(self) -> Complex64 {
        match self {
            Self::Printed => Complex64::new(0.0, 0.5),
            Self::Standard => Complex64::new(0.5, 0.0),
        }
    }
}

/// `Fᵢⱼ = ∂ᵢAⱼ − ∂ⱼAᵢ − i[Aᵢ, Aⱼ] + κ θᵏˡ (∂ₖAᵢ ∂ₗAⱼ − ∂ₖAⱼ ∂ₗAᵢ)`,
/// all products pointwise in the symbols.
pub fn sw_field_strength(
    a: &[MatrixPoly],
    theta: &Bivector,
    convention: SwConvention,
) -> Result<Vec<Vec<MatrixPoly>>> {
    check_gauge_inputs(None, a, theta)?;
    let n = a.len();
    let d = a.first().map_or(1, |x| x.d);
    let gens = theta.generators();
    let kappa = convention.kappa();
    let minus_i = Complex64::new(0.0, -1.0);
    let mut out = vec![vec![MatrixPoly::zero(gens, d); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let mut fij = a[j]
                .derivative(i)
                .sub(&a[i].derivative(j))?
                .add(&a[i].commutator(&a[j])?.scale(minus_i))?;
            for (k, l, t) in theta.nonzero() {
                let term = a[i]
                    .derivative(k)
                    .mul(&a[j].derivative(l))?
                    .sub(&a[j].derivative(k).mul(&a[i].derivative(l))?)?;
                fij = fij.add(&term.scale(kappa * t))?;
            }
            out[j][i] = fij.scale((-1.0).into());
            out[i][j] = fij;
        }
    }
    Ok(out)
}
