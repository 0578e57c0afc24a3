//! Symbolic phase-space algebra: polynomial symbols over ordered generators,
//! constant bivectors, and the terminating Moyal star product.

mod bivector;
mod poly;
mod star;
mod text;

pub use bivector::{Bivector, GeneratorSet};
pub use poly::{Exponents, PhasePoly};
pub use star::{moyal_bracket, poisson_bracket, star};
pub use text::{parse_bivector, parse_poly};

pub use poly::fmt_complex;
