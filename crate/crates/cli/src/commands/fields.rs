use clap::{Args, ValueEnum};
use ncphase::fock::{FockBasis, GeneratorMap, OperatorMatrix};
use ncphase::gauge::{
    covariant_derivative, field_strength, gauge_transform, sw_field_strength, vacuum_coords, ym_action, MatrixPoly,
    SwConvention,
};
use ncphase::landau::{braiding_report, landau_system, shifted_commutator};
use ncphase::phase::parse_poly;
use ncphase::{Bivector, PhasePoly};
use num_complex::Complex64;

use super::{case, echo_bivector, finish_selftest, random_block_unitary, random_hermitian, real_list, required, rng, BivectorArgs, Common};
use crate::report::{OutputFormat, Report};
use crate::CliError;

#[derive(Debug, Args)]
pub struct YmArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub pi: BivectorArgs,
    /// Use the vacuum `cᵢ = (θ⁻¹)ᵢⱼ x̂ʲ` with no perturbation.
    #[arg(long, conflicts_with = "perturb")]
    pub vacuum: bool,
    /// Add `ε hᵢ` with random hermitian `hᵢ` sampled from `NC_SEED`.
    #[arg(long)]
    pub perturb: Option<f64>,
    #[arg(long, default_value_t = 12)]
    pub cutoff: usize,
    #[arg(long, default_value_t = 2)]
    pub margin: usize,
    /// Coupling `g²`.
    #[arg(long, default_value_t = 1.0)]
    pub g2: f64,
    /// Check gauge invariance over this many random interior-preserving unitaries.
    #[arg(long, default_value_t = 0)]
    pub unitaries: usize,
}

fn ym_selftest(r: &mut Report) {
    let basis = || FockBasis::bose(12);
    case(r, "hermitian_coords", || {
        let cc = vacuum_coords(&Bivector::theta(0.8), &basis()?)?;
        Ok(cc.coords().iter().all(|c| c.hermitian_deviation() <= 1e-10))
    });
    case(r, "theta_scaling", || {
        // Fixed generator operators x̂, so only θ⁻¹ changes.
        let b = basis()?;
        let map = GeneratorMap::adapted(&Bivector::theta(0.8), &b)?;
        let coords = |t: f64| -> ncphase::Result<Vec<OperatorMatrix>> {
            let inv = Bivector::theta(t).inverse()?;
            Ok((0..2)
                .map(|i| {
                    (0..2).fold(OperatorMatrix::zeros(&b), |acc, j| &acc + &map.operator(j).scale_real(inv[(i, j)]))
                })
                .collect())
        };
        let (one, two) = (coords(0.8)?, coords(1.6)?);
        Ok(one
            .iter()
            .zip(&two)
            .all(|(c1, c2)| (c1.max_abs() - 2.0 * c2.max_abs()).abs() <= 1e-12 * c1.max_abs()))
    });
    case(r, "constant_shift", || {
        let b = basis()?;
        let cc = vacuum_coords(&Bivector::theta(0.8), &b)?;
        let id = OperatorMatrix::identity(&b);
        let shifted = cc.perturbed(&[id.scale_real(1.5), id.scale_real(-0.25)], 1.0)?;
        let (f, g) = (field_strength(&cc), field_strength(&shifted));
        Ok((&f[0][1] - &g[0][1]).max_abs() <= 1e-12)
    });
    case(r, "coupling", || {
        let b = basis()?;
        let x = ncphase::fock::mode_operators(&b, 0)?;
        let cc = vacuum_coords(&Bivector::theta(1.0), &b)?.perturbed(&[&x.x * &x.x, x.p], 0.2)?;
        let s1 = ym_action(&cc, 2)?;
        let s4 = ym_action(&cc.with_coupling(4.0)?, 2)?;
        Ok(s4 == s1 / 4.0 && s1 > 0.0)
    });
    case(r, "identity_transform", || {
        let b = basis()?;
        let cc = vacuum_coords(&Bivector::theta(0.8), &b)?;
        Ok(gauge_transform(&cc, &OperatorMatrix::identity(&b))?.coords() == cc.coords())
    });
    case(r, "composition", || {
        let b = basis()?;
        let cc = vacuum_coords(&Bivector::theta(0.8), &b)?;
        let mut g = rng().map_err(|e| ncphase::Error::InvalidParameter(e.to_string()))?;
        let u1 = random_block_unitary(&mut g, &b, 2).map_err(|e| ncphase::Error::InvalidParameter(e.to_string()))?;
        let u2 = random_block_unitary(&mut g, &b, 2).map_err(|e| ncphase::Error::InvalidParameter(e.to_string()))?;
        let step = gauge_transform(&gauge_transform(&cc, &u1)?, &u2)?;
        let once = gauge_transform(&cc, &(&u2 * &u1))?;
        Ok(step.coords().iter().zip(once.coords()).all(|(a, b)| (a - b).max_abs() <= 1e-12))
    });
}

pub fn ym(args: YmArgs) -> Result<(Report, OutputFormat), CliError> {
    let (mut r, tol) = args.common.report("ym", 1e-8)?;
    if args.common.selftest {
        ym_selftest(&mut r);
        return Ok(finish_selftest(r, args.common.format));
    }
    let theta = args.pi.require()?;
    echo_bivector(&mut r, &theta);
    r.config("vacuum", args.perturb.is_none());
    if let Some(eps) = args.perturb {
        r.config("perturb", eps);
    }
    r.config("cutoff", args.cutoff);
    r.config("margin", args.margin);
    r.config("g2", args.g2);
    r.config("unitaries", args.unitaries);
    if args.perturb.is_some() || args.unitaries > 0 {
        r.config("seed", crate::seed()?);
    }
    if theta.len() % 2 != 0 {
        return Err(CliError::Input("covariant coordinates need an even number of generators".into()));
    }
    let basis = FockBasis::bose_modes(theta.len() / 2, args.cutoff)?;
    let mut cc = vacuum_coords(&theta, &basis)?.with_coupling(args.g2)?;
    let mut g = rng()?;
    if let Some(eps) = args.perturb {
        let h: Vec<OperatorMatrix> = (0..theta.len()).map(|_| random_hermitian(&mut g, &basis)).collect();
        cc = cc.perturbed(&h, eps)?;
    }
    let action = ym_action(&cc, args.margin)?;
    r.push("action", format!("{action:.6e}"));
    let f = field_strength(&cc);
    let fmax = f
        .iter()
        .flatten()
        .map(|fij| fij.interior_matrix(args.margin).map(|m| super::max_entry(&m)))
        .collect::<ncphase::Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    r.sci("field_strength.interior_max", fmax);
    if args.perturb.is_none() {
        r.check("vacuum_flat", action <= tol);
    }
    if args.unitaries > 0 {
        let mut worst = 0.0f64;
        for _ in 0..args.unitaries {
            let u = random_block_unitary(&mut g, &basis, args.margin)?;
            let s = ym_action(&gauge_transform(&cc, &u)?, args.margin)?;
            worst = worst.max((s - action).abs());
        }
        r.sci("gauge_invariance.max_deviation", worst);
        r.check("gauge_invariant", worst <= 1e-9 * action.max(1.0));
    }
    Ok((r, args.common.format))
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Convention {
    /// Imaginary correction coefficient `i/2`.
    Printed,
    /// Real correction coefficient `1/2`.
    Standard,
}

#[derive(Debug, Args)]
pub struct SwArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub pi: BivectorArgs,
    /// Abelian potential component `Aᵢ`; give one per generator, in order.
    #[arg(long = "a", allow_hyphen_values = true)]
    pub a: Vec<String>,
    #[arg(long, value_enum, default_value_t = Convention::Printed)]
    pub convention: Convention,
    /// Symbol whose covariant derivative `∇ᵢf` is also reported.
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
}

pub fn swfield(args: SwArgs) -> Result<(Report, OutputFormat), CliError> {
    let (mut r, _) = args.common.report("swfield", ncphase::tol::COEFF)?;
    if args.common.selftest {
        case(&mut r, "zero_potential", || {
            let theta = Bivector::theta(0.9);
            let g = theta.generators();
            let f = MatrixPoly::scalar(parse_poly("x1^2*x2 + 3*x2", g)?);
            let zero = vec![MatrixPoly::zero(g, 1); 2];
            Ok((0..2).all(|i| matches!(covariant_derivative(&f, &zero, &theta, i), Ok(d) if d == f.derivative(i))))
        });
        case(&mut r, "constant_abelian", || {
            let theta = Bivector::theta(1.3);
            let g = theta.generators();
            let a = vec![
                MatrixPoly::scalar(PhasePoly::constant(g, Complex64::new(2.0, 0.0))),
                MatrixPoly::scalar(PhasePoly::constant(g, Complex64::new(-0.5, 0.0))),
            ];
            Ok(sw_field_strength(&a, &theta, SwConvention::Printed)?[0][1].max_abs() == 0.0)
        });
        return Ok(finish_selftest(r, args.common.format));
    }
    let theta = args.pi.require()?;
    echo_bivector(&mut r, &theta);
    let conv = match args.convention {
        Convention::Printed => SwConvention::Printed,
        Convention::Standard => SwConvention::Standard,
    };
    r.config("convention", format!("{:?}", args.convention).to_lowercase());
    for (k, a) in args.a.iter().enumerate() {
        r.config(&format!("a[{}]", k + 1), a);
    }
    if let Some(f) = &args.f {
        r.config("f", f);
    }
    if args.a.len() != theta.len() {
        return Err(CliError::Input(format!(
            "expected {} potential components (--a), found {}",
            theta.len(),
            args.a.len()
        )));
    }
    let gens = theta.generators();
    let a = args
        .a
        .iter()
        .map(|s| parse_poly(s, gens).map(MatrixPoly::scalar))
        .collect::<ncphase::Result<Vec<_>>>()?;
    let f = sw_field_strength(&a, &theta, conv)?;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            r.push(format!("F[{},{}]", i + 1, j + 1), &f[i][j]);
        }
    }
    if let Some(fs) = &args.f {
        let sym = MatrixPoly::scalar(parse_poly(fs, gens)?);
        for i in 0..a.len() {
            r.push(format!("D[{}]f", i + 1), covariant_derivative(&sym, &a, &theta, i)?);
        }
    }
    Ok((r, args.common.format))
}

#[derive(Debug, Args)]
pub struct LandauArgs {
    #[command(flatten)]
    pub common: Common,
    /// Field strength `B > 0`.
    #[arg(long = "B")]
    pub b: Option<f64>,
    #[arg(long, default_value_t = 24)]
    pub cutoff: usize,
    /// Interior margin; defaults to a quarter of the cutoff.
    #[arg(long)]
    pub margin: Option<usize>,
    /// Also report the commutator after the gauge shift at this `θ`.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
}

pub fn landau(args: LandauArgs) -> Result<(Report, OutputFormat), CliError> {
    let (mut r, tol) = args.common.report("landau", 1e-8)?;
    if args.common.selftest {
        case(&mut r, "zero_field_shift", || {
            let p = shifted_commutator(0.4, 0.0)?;
            Ok(p.approx_eq(&PhasePoly::constant(p.generators(), Complex64::new(0.0, 0.4)), 1e-15))
        });
        case(&mut r, "commutative_start", || Ok(shifted_commutator(0.0, 1.3)?.is_zero()));
        case(&mut r, "spacing", || Ok(landau_system(1.0, 16)?.spacing_residual(4)? <= 1e-8));
        return Ok(finish_selftest(r, args.common.format));
    }
    let b = required(&args.b, "B")?;
    let margin = args.margin.unwrap_or(args.cutoff / 4);
    r.config("B", b);
    r.config("cutoff", args.cutoff);
    r.config("margin", margin);
    if let Some(t) = args.theta {
        r.config("theta", t);
    }
    let sys = landau_system(b, args.cutoff)?;
    r.push("theta", format!("{:.12}", sys.theta()));
    let levels = sys.spectrum(margin)?;
    r.push("levels", real_list(&levels[..levels.len().min(6)]));
    let spacing = sys.spacing_residual(margin)?;
    let comm = sys.commutator_residual(margin)?;
    r.sci("spacing_residual", spacing);
    r.sci("commutator_residual", comm);
    r.check("spacing", spacing <= tol);
    r.check("commutator", comm <= tol);
    if let Some(t) = args.theta {
        let p = shifted_commutator(t, b)?;
        r.push("shifted_commutator", &p);
        r.complex("shifted_commutator.constant", p.constant_term());
    }
    Ok((r, args.common.format))
}

#[derive(Debug, Args)]
pub struct BraidArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, default_value_t = 64)]
    pub cutoff: usize,
}

pub fn braid(args: BraidArgs) -> Result<(Report, OutputFormat), CliError> {
    let (mut r, tol) = args.common.report("braid", 1e-3)?;
    if args.common.selftest {
        case(&mut r, "commuting", || {
            Ok((braiding_report(0.0, 32)?.phase - Complex64::new(1.0, 0.0)).norm() <= 1e-12)
        });
        case(&mut r, "inverse", || {
            let p = braiding_report(0.3, 64)?.phase * braiding_report(-0.3, 64)?.phase;
            Ok((p - Complex64::new(1.0, 0.0)).norm() <= 1e-3)
        });
        return Ok(finish_selftest(r, args.common.format));
    }
    let theta = required(&args.theta, "theta")?;
    r.config("theta", theta);
    r.config("cutoff", args.cutoff);
    let rep = braiding_report(theta, args.cutoff)?;
    let expect = Complex64::from_polar(1.0, -theta);
    r.push("margin", rep.margin);
    r.complex("phase", rep.phase);
    r.complex("expected", expect);
    r.sci("error", (rep.phase - expect).norm());
    r.sci("deviation", rep.deviation);
    r.check("phase", (rep.phase - expect).norm() <= tol);
    Ok((r, args.common.format))
}
