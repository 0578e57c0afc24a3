use clap::{Args, ValueEnum};
use ncphase::bogoliubov::{
    algebra_residual, apply_transform, q_algebra_residual, theta_mode_commutators, BogoliubovTransform, Q_TERMS,
};
use ncphase::fock::{mode_operators, FockBasis, Mode, OperatorMatrix, Statistics};
use ncphase::oscillator::{q_mode, susy_system, witten_report, SusyHamiltonian};
use ncphase::Bivector;
use num_complex::Complex64;

use super::{case, finish_selftest, list, random_matrix, real_list, required, rng, Common};
use crate::input::bivector_arg;
use crate::report::{OutputFormat, Report};
use crate::CliError;

#[derive(Debug, Args)]
pub struct QoscArgs {
    #[command(flatten)]
    pub common: Common,
    /// Deformation parameter, `q ≥ −1`.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
    #[arg(long, default_value_t = 8)]
    pub cutoff: usize,
}

pub fn qosc(args: QoscArgs) -> Result<(Report, OutputFormat), CliError> {
    let (mut r, tol) = args.common.report("qosc", ncphase::tol::Q_LEVELS)?;
    if args.common.selftest {
        case(&mut r, "bose_levels", || {
            let o = q_mode(-1.0, 8)?;
            Ok(o.levels().iter().enumerate().all(|(n, l)| *l == n as f64))
        });
        case(&mut r, "fermi_levels", || {
            let o = q_mode(1.0, 8)?;
            let id = OperatorMatrix::identity(o.a.basis());
            Ok(o.levels() == [0.0, 1.0] && o.dim() == 2 && o.a.anticommutator(&o.a_dag) == id)
        });
        case(&mut r, "nilpotent_supercharge", || {
            let s = susy_system(8, SusyHamiltonian::Anticommutator)?;
            Ok((&s.q * &s.q).max_abs() == 0.0)
        });
        return Ok(finish_selftest(r, args.common.format));
    }
    let q = required(&args.q, "q")?;
    r.config("q", q);
    r.config("cutoff", args.cutoff);
    let o = q_mode(q, args.cutoff)?;
    r.push("dim", o.dim());
    r.push("levels", real_list(o.levels()));
    r.push("number_spectrum", real_list(&o.number_spectrum()));
    r.sci("recursion_residual", o.recursion_residual());
    r.sci("algebra_residual", o.algebra_residual());
    r.check("recursion", o.recursion_residual() <= tol);
    Ok((r, args.common.format))
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Variant {
    /// `H = QQ⁺ + Q⁺Q`.
    Anticommutator,
    /// `H = Q⁺Q`.
    QDaggerQ,
}

#[derive(Debug, Args)]
pub struct WittenArgs {
    #[command(flatten)]
    pub common: Common,
    /// Bosonic occupation cutoff.
    #[arg(long, default_value_t = 16)]
    pub cutoff: usize,
    /// Inverse temperatures; repeat or separate with commas.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub beta: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Variant::Anticommutator)]
    pub variant: Variant,
    #[arg(long, default_value_t = 1)]
    pub margin: usize,
}

pub fn witten(args: WittenArgs) -> Result<(Report, OutputFormat), CliError> {
    let (mut r, tol) = args.common.report("witten", 1e-8)?;
    if args.common.selftest {
        case(&mut r, "nilpotent_supercharge", || {
            let s = susy_system(16, SusyHamiltonian::Anticommutator)?;
            Ok((&s.q * &s.q).max_abs() == 0.0)
        });
        case(&mut r, "large_beta_kernel", || {
            let s = susy_system(16, SusyHamiltonian::Anticommutator)?;
            let rep = witten_report(&s.q, &s.h, 60.0, 1)?;
            Ok((rep.index.re - rep.graded_kernel as f64).abs() <= 1e-12)
        });
        return Ok(finish_selftest(r, args.common.format));
    }
    let variant = match args.variant {
        Variant::Anticommutator => SusyHamiltonian::Anticommutator,
        Variant::QDaggerQ => SusyHamiltonian::QDaggerQ,
    };
    r.config("cutoff", args.cutoff);
    r.config("beta", list(args.beta.iter().map(|b| b.to_string())));
    r.config("variant", format!("{:?}", args.variant).to_lowercase());
    r.config("margin", args.margin);
    let s = susy_system(args.cutoff, variant)?;
    r.sci("commutant_residual", s.commutant_residual(args.margin)?);
    let mut kernel = None;
    for (k, &beta) in args.beta.iter().enumerate() {
        let rep = witten_report(&s.q, &s.h, beta, args.margin)?;
        let key = if args.beta.len() == 1 { "index".to_string() } else { format!("index[{k}]") };
        r.push(&key, format!("{:.12}", rep.index.re));
        r.sci(format!("{key}.imag"), rep.index.im);
        r.check(format!("{key}.matches_kernel"), (rep.index.re - rep.graded_kernel as f64).abs() <= tol);
        if kernel.is_none() {
            r.push("states", rep.states);
            r.push("graded_kernel", rep.graded_kernel);
            r.push("kernel_q_minus_qdag", rep.kernel_q_minus_qdag);
            kernel = Some(rep.graded_kernel);
        }
    }
    Ok((r, args.common.format))
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    Identity,
    /// `α = δ = cosh r`, `β = γ = sinh r`.
    Squeeze,
    /// `α = δ = cos r`, `β = γ = sin r`.
    Rotation,
    /// Random adjoint-consistent blocks sampled from `NC_SEED`.
    Random,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Stat {
    Bose,
    Fermi,
}

impl From<Stat> for Statistics {
    fn from(s: Stat) -> Self {
        match s {
            Stat::Bose => Statistics::Bose,
            Stat::Fermi => Statistics::Fermi,
        }
    }
}

#[derive(Debug, Args)]
pub struct BogoliubovArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = Kind::Squeeze)]
    pub kind: Kind,
    /// Squeeze or rotation parameter.
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub r: f64,
    /// Mode count for identity and random transforms.
    #[arg(long, default_value_t = 1)]
    pub modes: usize,
    #[arg(long, value_enum, default_value_t = Stat::Bose)]
    pub stat: Stat,
    /// Also check `aa⁺ + q a⁺a = 1` (one mode only).
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
    /// Bosonic cutoff of the numeric check, which random transforms skip.
    #[arg(long, default_value_t = 20)]
    pub cutoff: usize,
    /// Number of random transforms.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
}

fn numeric_residual(t: &BogoliubovTransform, stat: Statistics, cutoff: usize) -> ncphase::Result<f64> {
    let m = t.modes();
    let basis = match stat {
        Statistics::Bose => FockBasis::bose_modes(m, cutoff)?,
        Statistics::Fermi => FockBasis::new(vec![Mode::fermi(); m])?,
    };
    let ops = (0..m)
        .map(|k| mode_operators(&basis, k).map(|o| (o.a, o.a_dag)))
        .collect::<ncphase::Result<Vec<_>>>()?;
    Ok(apply_transform(t, &ops, stat)?.interior_residual)
}

/// With `cutoff` set, also apply the transform to truncated ladder operators.
fn describe(r: &mut Report, key: &str, t: &BogoliubovTransform, stat: Statistics, tol: f64, cutoff: Option<usize>) -> ncphase::Result<()> {
    let res = algebra_residual(t, stat);
    r.sci(format!("{key}adjoint_deviation"), t.adjoint_deviation());
    r.sci(format!("{key}oracle.r1"), super::max_entry(&res.r1));
    r.sci(format!("{key}oracle.r2"), super::max_entry(&res.r2));
    r.sci(format!("{key}oracle.r2_dag"), super::max_entry(&res.r2_dag));
    for (label, m) in &res.printed {
        r.sci(format!("{key}printed[{label}]"), super::max_entry(m));
    }
    let oracle_ok = res.preserves(tol);
    let printed_ok = res.printed_max() <= tol;
    r.push(format!("{key}oracle.preserves"), oracle_ok);
    r.push(format!("{key}printed.preserves"), printed_ok);
    r.push(format!("{key}agree"), oracle_ok == printed_ok);
    if let (Some(cutoff), true) = (cutoff, t.is_adjoint_consistent()) {
        r.sci(format!("{key}numeric.interior_residual"), numeric_residual(t, stat, cutoff)?);
    }
    Ok(())
}

pub fn bogoliubov(args: BogoliubovArgs) -> Result<(Report, OutputFormat), CliError> {
    let (mut r, tol) = args.common.report("bogoliubov", 1e-10)?;
    if args.common.selftest {
        for stat in [Statistics::Bose, Statistics::Fermi] {
            case(&mut r, &format!("identity_{stat}"), || {
                let res = algebra_residual(&BogoliubovTransform::identity(2)?, stat);
                Ok(res.oracle_max() == 0.0 && res.printed_max() == 0.0)
            });
        }
        case(&mut r, "q_bose_limit", || {
            let t = BogoliubovTransform::scalar(
                Complex64::new(1.1, 0.2),
                Complex64::new(-0.3, 0.5),
                Complex64::new(0.7, -0.1),
                Complex64::new(0.4, 0.9),
            );
            let qr = q_algebra_residual(&t, -1.0)?;
            let br = algebra_residual(&t, Statistics::Bose);
            Ok((qr.oracle[0] - br.r1[(0, 0)]).norm() <= 1e-15)
        });
        case(&mut r, "identity_unchanged", || {
            let b = FockBasis::bose(6)?;
            let m = mode_operators(&b, 0)?;
            let out = apply_transform(&BogoliubovTransform::identity(1)?, &[(m.a.clone(), m.a_dag.clone())], Statistics::Bose)?;
            Ok(out.modes[0].0 == m.a && out.modes[0].1 == m.a_dag)
        });
        return Ok(finish_selftest(r, args.common.format));
    }
    let stat = Statistics::from(args.stat);
    r.config("kind", format!("{:?}", args.kind).to_lowercase());
    r.config("stat", stat);
    r.config("cutoff", args.cutoff);
    match args.kind {
        Kind::Squeeze | Kind::Rotation => r.config("r", args.r),
        Kind::Identity => r.config("modes", args.modes),
        Kind::Random => {
            r.config("modes", args.modes);
            r.config("count", args.count);
            r.config("seed", crate::seed()?);
        }
    }
    if let Some(q) = args.q {
        r.config("q", q);
    }
    let transforms = match args.kind {
        Kind::Identity => vec![BogoliubovTransform::identity(args.modes)?],
        Kind::Squeeze => vec![BogoliubovTransform::squeeze(args.r)],
        Kind::Rotation => vec![BogoliubovTransform::rotation(args.r)],
        Kind::Random => {
            if args.modes == 0 {
                return Err(CliError::Input("--modes must be positive".into()));
            }
            let mut g = rng()?;
            (0..args.count)
                .map(|_| {
                    let a = random_matrix(&mut g, args.modes);
                    let b = random_matrix(&mut g, args.modes);
                    BogoliubovTransform::adjoint_consistent(a, b)
                })
                .collect::<ncphase::Result<Vec<_>>>()?
        }
    };
    let single = transforms.len() == 1;
    for (k, t) in transforms.iter().enumerate() {
        let key = if single { String::new() } else { format!("transform[{k}].") };
        let numeric = (!matches!(args.kind, Kind::Random)).then_some(args.cutoff);
        describe(&mut r, &key, t, stat, tol, numeric)?;
        if let Some(q) = args.q {
            let qr = q_algebra_residual(t, q)?;
            for (n, term) in Q_TERMS.iter().enumerate() {
                r.complex(format!("{key}q.printed[{n}]"), qr.printed[n]);
                r.complex(format!("{key}q.oracle[{term}]"), qr.oracle[n]);
            }
            r.push(format!("{key}q.agree"), qr.agrees(tol));
        }
    }
    Ok((r, args.common.format))
}

#[derive(Debug, Args)]
pub struct ThetaModesArgs {
    #[command(flatten)]
    pub common: Common,
    /// Coordinate bivector `n e12 …`, inline or as a file path.
    #[arg(long)]
    pub theta_x: Option<String>,
    /// Momentum bivector `n e12 …`, inline or as a file path.
    #[arg(long)]
    pub theta_p: Option<String>,
}

pub fn theta_modes(args: ThetaModesArgs) -> Result<(Report, OutputFormat), CliError> {
    let (mut r, tol) = args.common.report("theta-modes", ncphase::tol::COEFF)?;
    if args.common.selftest {
        case(&mut r, "canonical", || {
            let z = Bivector::zero(ncphase::GeneratorSet::coordinates(3)?);
            let table = theta_mode_commutators(&z, &z)?;
            Ok(table.iter().all(|e| {
                let delta = if e.i == e.j { 1.0 } else { 0.0 };
                (e.aa_dag_value - delta).norm() <= 1e-15 && e.aa_value.norm() <= 1e-15
            }))
        });
        return Ok(finish_selftest(r, args.common.format));
    }
    let tx = bivector_arg(&required(&args.theta_x, "theta-x")?, false)?;
    let tp = bivector_arg(&required(&args.theta_p, "theta-p")?, false)?;
    r.config("theta_x", list(tx.upper().iter().map(|v| v.to_string())));
    r.config("theta_p", list(tp.upper().iter().map(|v| v.to_string())));
    for e in theta_mode_commutators(&tx, &tp)? {
        let key = format!("[{},{}]", e.i + 1, e.j + 1);
        r.push(format!("aa{key}.form"), &e.aa);
        r.complex(format!("aa{key}"), e.aa_value);
        r.push(format!("aa_dag{key}.form"), &e.aa_dag);
        r.complex(format!("aa_dag{key}"), e.aa_dag_value);
        r.complex(format!("printed{key}"), e.printed_value);
        r.push(format!("printed{key}.matches"), (e.printed_value - e.aa_dag_value).norm() <= tol);
    }
    Ok((r, args.common.format))
}
