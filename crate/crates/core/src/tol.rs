//! Default numerical tolerances.
//!
//! Each constant is the threshold a module uses unless a caller overrides it.

/// Coefficient comparison for symbolic polynomials.
pub const COEFF: f64 = 1e-12;

/// Antisymmetry / invertibility checks on a bivector.
pub const BIVECTOR: f64 = 1e-12;

/// Certificate for the hermitian flag on an operator matrix.
pub const HERMITIAN: f64 = 1e-10;

/// Certificate for unitarity of a gauge transformation.
pub const UNITARY: f64 = 1e-10;

/// q-oscillator recursion residual.
pub const Q_LEVELS: f64 = 1e-12;

/// Bogoliubov adjoint-consistency flag.
pub const ADJOINT: f64 = 1e-12;

/// Hermiticity of a quadratic form.
pub const QUADRATIC_FORM: f64 = 1e-12;

/// Imaginary part allowed in a graded trace of a hermitian generator.
pub const INDEX_IMAG: f64 = 1e-10;

/// Eigenvalues below this count as zero modes.
pub const ZERO_MODE: f64 = 1e-9;

/// Largest interior deviation from a scalar for the braiding phase.
pub const BRAID_SCALAR: f64 = 0.05;
