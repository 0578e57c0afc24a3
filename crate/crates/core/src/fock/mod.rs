//! Truncated Fock spaces, dense operators on them, and Weyl quantization.

mod basis;
mod ladder;
mod operator;
mod serial;
mod weyl;

pub use basis::{FockBasis, Mode, Statistics};
pub use ladder::{mode_operators, GeneratorMap, ModeOperators};
pub use operator::OperatorMatrix;
pub use serial::{parse_complex_pair, read_operator, write_operator};
pub use weyl::{symmetrized, weyl_quantize, weyl_quantize_with};

pub(crate) use operator::max_abs;
