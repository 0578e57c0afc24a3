use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::bivector::GeneratorSet;

/// Exponent multi-index, one entry per generator.
pub type Exponents = Vec<u32>;

/// Polynomial phase-space symbol with complex coefficients.
///
/// Terms are kept in lexicographic order of their exponent vectors and no
/// zero coefficient is ever stored, so equal polynomials have identical
/// term maps.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePoly {
    gens: GeneratorSet,
    terms: BTreeMap<Exponents, Complex64>,
}

impl PhasePoly {
    pub fn zero(gens: GeneratorSet) -> Self {
        Self {
            gens,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(gens: GeneratorSet, c: Complex64) -> Self {
        Self::monomial(gens, vec![0; gens.len()], c)
    }

    pub fn one(gens: GeneratorSet) -> Self {
        Self::constant(gens, Complex64::new(1.0, 0.0))
    }

    /// The generator `z_index` itself.
    pub fn generator(gens: GeneratorSet, index: usize) -> Self {
        assert!(index < gens.len(), "generator {index} out of range");
        let mut e = vec![0; gens.len()];
        e[index] = 1;
        Self::monomial(gens, e, Complex64::new(1.0, 0.0))
    }

    pub fn monomial(gens: GeneratorSet, exponents: Exponents, c: Complex64) -> Self {
        assert_eq!(exponents.len(), gens.len(), "exponent length mismatch");
        let mut p = Self::zero(gens);
        p.add_term(exponents, c);
        p
    }

    pub fn from_terms<I>(gens: GeneratorSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Complex64)>,
    {
        let mut p = Self::zero(gens);
        for (e, c) in terms {
            assert_eq!(e.len(), gens.len(), "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == Complex64::new(0.0, 0.0) {
                    o.remove();
                }
            }
        }
    }

    pub fn generators(&self) -> GeneratorSet {
        self.gens
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, e: &[u32]) -> Complex64 {
        self.terms.get(e).copied().unwrap_or_default()
    }

    /// Constant term.
    pub fn constant_term(&self) -> Complex64 {
        self.coeff(&vec![0; self.gens.len()])
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.gens == other.gens && (self - other).is_zero_within(tol)
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im == 0.0)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_terms(self.gens, self.terms.iter().map(|(e, c)| (e.clone(), c * s)))
    }

    pub fn conj(&self) -> Self {
        Self::from_terms(self.gens, self.terms.iter().map(|(e, c)| (e.clone(), c.conj())))
    }

    /// Drop coefficients with modulus at or below `tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        Self::from_terms(
            self.gens,
            self.terms
                .iter()
                .filter(|(_, c)| c.norm() > tol)
                .map(|(e, c)| (e.clone(), *c)),
        )
    }

    /// `∂f/∂z_index`.
    pub fn derivative(&self, index: usize) -> Self {
        assert!(index < self.gens.len(), "generator {index} out of range");
        Self::from_terms(
            self.gens,
            self.terms.iter().filter(|(e, _)| e[index] > 0).map(|(e, c)| {
                let mut d = e.clone();
                let k = d[index];
                d[index] -= 1;
                (d, c * k as f64)
            }),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.gens), |acc, _| &acc * self)
    }

    /// Evaluate at a point, one complex value per generator.
    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.gens.len(), "point dimension mismatch");
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(*c, |acc, (k, z)| acc * z.powu(*k))
            })
            .sum()
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.gens, other.gens,
            "polynomials over different generator sets"
        );
    }
}

pub(crate) fn add_exponents(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl Add for &PhasePoly {
    type Output = PhasePoly;
    fn add(self, rhs: &PhasePoly) -> PhasePoly {
        self.check_same(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }
}

impl Sub for &PhasePoly {
    type Output = PhasePoly;
    fn sub(self, rhs: &PhasePoly) -> PhasePoly {
        self.check_same(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

/// Commutative (pointwise) product.
impl Mul for &PhasePoly {
    type Output = PhasePoly;
    fn mul(self, rhs: &PhasePoly) -> PhasePoly {
        self.check_same(rhs);
        let mut out = PhasePoly::zero(self.gens);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(add_exponents(ea, eb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PhasePoly {
            type Output = PhasePoly;
            fn $m(self, rhs: PhasePoly) -> PhasePoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        -&self
    }
}

pub fn fmt_complex(c: Complex64) -> String {
    // Adding 0.0 turns -0.0 into 0.0.
    let c = Complex64::new(c.re + 0.0, c.im + 0.0);
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.im < 0.0 {
        format!("{}-{}i", c.re, -c.im)
    } else {
        format!("{}+{}i", c.re, c.im)
    }
}

/// Renders in the polynomial text grammar, highest exponent vector first.
impl fmt::Display for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| {
                    if *k == 1 {
                        self.gens.name(i)
                    } else {
                        format!("{}^{}", self.gens.name(i), k)
                    }
                })
                .collect();
            let (sign, coeff) = if c.im == 0.0 {
                if c.re < 0.0 {
                    ("-", format!("{}", -c.re))
                } else {
                    ("+", format!("{}", c.re))
                }
            } else {
                ("+", format!("({})", fmt_complex(*c)))
            };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if factors.is_empty() {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
