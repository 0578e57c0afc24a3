//! Noncommutative gauge theory: covariant coordinates and the matrix-model
//! Yang–Mills action on truncated Fock spaces, and matrix-valued symbols for
//! covariant derivatives and the θ-corrected field strength.

mod coords;
mod symbol;

pub use coords::{field_strength, gauge_transform, vacuum_coords, ym_action, CovariantCoords};
pub use symbol::{
    covariant_derivative, covariant_derivative_c_form, sw_field_strength, MatrixPoly,
    SwConvention,
};
