//! Noncommutative phase-space toolkit.
//!
//! Symbolic Moyal star products over constant bivectors, Weyl quantization on
//! truncated Fock spaces, q-deformed and supersymmetric oscillators,
//! Bogoliubov transforms, matrix-model Yang–Mills actions, the Landau-level
//! realization of noncommuting planar coordinates, and finite Gaussian
//! partition functions.

pub mod bogoliubov;
pub mod error;
pub mod fock;
pub mod gauge;
pub mod gaussian;
pub mod landau;
mod linalg;
pub mod oscillator;
pub mod phase;
pub mod tol;

pub use error::{Error, Result};
pub use phase::{moyal_bracket, poisson_bracket, star, Bivector, GeneratorSet, PhasePoly};
