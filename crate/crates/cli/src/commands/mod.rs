//! Subcommand handlers. Each returns a finished report or a classified error.

use clap::Args;
use nalgebra::DMatrix;
use ncphase::fock::{FockBasis, OperatorMatrix};
use ncphase::{Bivector, GeneratorSet};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::input::bivector_arg;
use crate::report::{OutputFormat, Report};
use crate::CliError;

pub mod algebra;
pub mod fields;
pub mod gaussian;
pub mod oscillators;

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Report layout.
    #[arg(long, value_enum, default_value_t = OutputFormat::Structured)]
    pub format: OutputFormat,
    /// Override the pass/fail tolerance of this subcommand's checks.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Run the built-in examples of this subcommand instead.
    #[arg(long)]
    pub selftest: bool,
}

impl Common {
    /// Start a report and echo the shared flags.
    pub fn report(&self, command: &str, default_tol: f64) -> Result<(Report, f64), CliError> {
        let tol = self.tol.unwrap_or(default_tol);
        if !(tol >= 0.0) || !tol.is_finite() {
            return Err(CliError::Input(format!("--tol must be non-negative, found {tol}")));
        }
        let mut r = Report::new(command);
        r.config("format", format!("{:?}", self.format).to_lowercase());
        r.config("tol", format!("{tol:e}"));
        r.config("selftest", self.selftest);
        Ok((r, tol))
    }
}

/// Choice of the constant bivector.
#[derive(Debug, Clone, Args)]
pub struct BivectorArgs {
    /// Two coordinates with `[x1, x2] = iθ`.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["bivector", "canonical"])]
    pub theta: Option<f64>,
    /// `n e12 e13 … e(n-1)n`, inline or as a file path.
    #[arg(long, conflicts_with = "canonical")]
    pub bivector: Option<String>,
    /// Read `--bivector` over `x1..xm, p1..pm` instead of `x1..xn`.
    #[arg(long, requires = "bivector")]
    pub phase_space: bool,
    /// Canonical phase space with this many degrees of freedom.
    #[arg(long)]
    pub canonical: Option<usize>,
}

impl BivectorArgs {
    pub fn resolve(&self) -> Result<Option<Bivector>, CliError> {
        Ok(match (&self.theta, &self.bivector, &self.canonical) {
            (Some(t), _, _) => Some(Bivector::theta(*t)),
            (_, Some(text), _) => Some(bivector_arg(text, self.phase_space)?),
            (_, _, Some(n)) => Some(Bivector::canonical(*n)?),
            _ => None,
        })
    }

    pub fn require(&self) -> Result<Bivector, CliError> {
        self.resolve()?
            .ok_or_else(|| CliError::Input("one of --theta, --bivector, --canonical is required".into()))
    }
}

pub fn echo_bivector(r: &mut Report, pi: &Bivector) {
    r.config("generators", gens_list(pi.generators()));
    let upper: Vec<String> = pi.upper().iter().map(|v| v.to_string()).collect();
    r.config("bivector", format!("{} {}", pi.len(), upper.join(" ")).trim_end());
}

pub fn gens_list(g: GeneratorSet) -> String {
    (0..g.len()).map(|k| g.name(k)).collect::<Vec<_>>().join(",")
}

pub fn required<T: Clone>(v: &Option<T>, flag: &str) -> Result<T, CliError> {
    v.clone()
        .ok_or_else(|| CliError::Input(format!("--{flag} is required unless --selftest is given")))
}

/// Record a selftest case; an error inside the case counts as a failure.
pub fn case(r: &mut Report, name: &str, f: impl FnOnce() -> ncphase::Result<bool>) {
    let ok = matches!(f(), Ok(true));
    r.check(format!("selftest.{name}"), ok);
}

pub fn finish_selftest(mut r: Report, format: OutputFormat) -> (Report, OutputFormat) {
    r.push("selftest", if r.failed() { "fail" } else { "pass" });
    (r, format)
}

pub fn rng() -> Result<ChaCha8Rng, CliError> {
    Ok(ChaCha8Rng::seed_from_u64(crate::seed()?))
}

pub fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, m: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(m, m, |_, _| random_complex(rng))
}

/// `e^{iH}` with `H` random hermitian and block diagonal over the interior
/// states and their complement, so the interior block is preserved.
pub fn random_block_unitary(rng: &mut ChaCha8Rng, basis: &FockBasis, margin: usize) -> Result<OperatorMatrix, CliError> {
    let inner = basis.interior_states(margin)?;
    let d = basis.dim();
    let mut h = DMatrix::<Complex64>::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            if inner.contains(&i) != inner.contains(&j) {
                continue;
            }
            let z = random_complex(rng);
            h[(i, j)] = if i == j { Complex64::new(z.re, 0.0) } else { z };
            h[(j, i)] = h[(i, j)].conj();
        }
    }
    Ok(OperatorMatrix::new(basis.clone(), h)?.scale(Complex64::new(0.0, 1.0)).exp())
}

/// Random hermitian operator with entries in the unit square.
pub fn random_hermitian(rng: &mut ChaCha8Rng, basis: &FockBasis) -> OperatorMatrix {
    let m = random_matrix(rng, basis.dim());
    let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    OperatorMatrix::new(basis.clone(), h).expect("shape matches the basis")
}

pub fn list(values: impl IntoIterator<Item = String>) -> String {
    values.into_iter().collect::<Vec<_>>().join(" ")
}

pub fn real_list(values: &[f64]) -> String {
    list(values.iter().map(|v| format!("{v:.12}")))
}

pub fn max_entry(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
