use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::basis::FockBasis;
use crate::error::{Error, Result};

/// Dense complex operator on a truncated Fock space.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    basis: FockBasis,
    data: DMatrix<Complex64>,
    hermitian: bool,
}

/// Equality of basis and entries; the hermitian certificate is not compared.
impl PartialEq for OperatorMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.data == other.data
    }
}

impl OperatorMatrix {
    pub fn new(basis: FockBasis, data: DMatrix<Complex64>) -> Result<Self> {
        let d = basis.dim();
        if data.nrows() != d || data.ncols() != d {
            return Err(Error::dims(
                format!("{d}x{d}"),
                format!("{}x{}", data.nrows(), data.ncols()),
            ));
        }
        Ok(Self {
            basis,
            data,
            hermitian: false,
        })
    }

    pub(crate) fn from_parts(basis: FockBasis, data: DMatrix<Complex64>) -> Self {
        debug_assert_eq!(data.nrows(), basis.dim());
        Self {
            basis,
            data,
            hermitian: false,
        }
    }

    pub fn zeros(basis: &FockBasis) -> Self {
        let d = basis.dim();
        Self::from_parts(basis.clone(), DMatrix::zeros(d, d))
    }

    pub fn identity(basis: &FockBasis) -> Self {
        let d = basis.dim();
        let mut m = Self::from_parts(basis.clone(), DMatrix::identity(d, d));
        m.hermitian = true;
        m
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn data(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn into_data(self) -> DMatrix<Complex64> {
        self.data
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[(row, col)]
    }

    /// Whether hermiticity has been certified.
    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// `max |A − A⁺|`.
    pub fn hermitian_deviation(&self) -> f64 {
        max_abs(&(&self.data - self.data.adjoint()))
    }

    /// Set the hermitian flag after checking `‖A − A⁺‖_max ≤ tol`.
    pub fn certify_hermitian(mut self, tol: f64) -> Result<Self> {
        let deviation = self.hermitian_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation });
        }
        self.hermitian = true;
        Ok(self)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            basis: self.basis.clone(),
            data: self.data.adjoint(),
            hermitian: self.hermitian,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            basis: self.basis.clone(),
            data: &self.data * c,
            hermitian: self.hermitian && c.im == 0.0,
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    pub fn trace(&self) -> Complex64 {
        self.data.trace()
    }

    /// Max absolute entry.
    pub fn max_abs(&self) -> f64 {
        max_abs(&self.data)
    }

    /// Matrix exponential (scaling and squaring with a Padé approximant).
    pub fn exp(&self) -> Self {
        Self::from_parts(self.basis.clone(), self.data.exp())
    }

    /// Compression `PAP` onto the interior states, keeping the ambient basis.
    /// Entries outside the interior block are zero.
    pub fn interior_block(&self, margin: usize) -> Result<Self> {
        let states = self.basis.interior_states(margin)?;
        let mut keep = vec![false; self.dim()];
        for &s in &states {
            keep[s] = true;
        }
        let data = DMatrix::from_fn(self.dim(), self.dim(), |r, c| {
            if keep[r] && keep[c] {
                self.data[(r, c)]
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Ok(Self {
            basis: self.basis.clone(),
            data,
            hermitian: self.hermitian,
        })
    }

    /// The interior block as a compact matrix over the interior states.
    pub fn interior_matrix(&self, margin: usize) -> Result<DMatrix<Complex64>> {
        let states = self.basis.interior_states(margin)?;
        Ok(self.submatrix(&states))
    }

    /// Rows and columns at `states`, in the given order.
    pub fn submatrix(&self, states: &[usize]) -> DMatrix<Complex64> {
        DMatrix::from_fn(states.len(), states.len(), |r, c| {
            self.data[(states[r], states[c])]
        })
    }

    /// `max |P(A − B)P|` on the interior block.
    pub fn interior_distance(&self, other: &Self, margin: usize) -> Result<f64> {
        self.check_basis(other);
        let diff = self - other;
        Ok(max_abs(&diff.interior_matrix(margin)?))
    }

    fn check_basis(&self, other: &Self) {
        assert_eq!(self.basis, other.basis, "operators on different Fock bases");
    }
}

pub(crate) fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.check_basis(rhs);
        OperatorMatrix {
            basis: self.basis.clone(),
            data: &self.data + &rhs.data,
            hermitian: self.hermitian && rhs.hermitian,
        }
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.check_basis(rhs);
        OperatorMatrix {
            basis: self.basis.clone(),
            data: &self.data - &rhs.data,
            hermitian: self.hermitian && rhs.hermitian,
        }
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.check_basis(rhs);
        OperatorMatrix::from_parts(self.basis.clone(), &self.data * &rhs.data)
    }
}

impl Neg for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn neg(self) -> OperatorMatrix {
        self.scale_real(-1.0)
    }
}
