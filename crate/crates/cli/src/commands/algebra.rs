use std::path::PathBuf;

use clap::Args;
use ncphase::fock::{mode_operators, weyl_quantize, write_operator, FockBasis, GeneratorMap, OperatorMatrix};
use ncphase::fock::weyl_quantize_with;
use ncphase::phase::parse_poly;
use ncphase::{moyal_bracket, poisson_bracket, star as star_product, Bivector, Error, GeneratorSet, PhasePoly};
use num_complex::Complex64;

use super::{case, echo_bivector, finish_selftest, required, BivectorArgs, Common};
use crate::report::{OutputFormat, Report};
use crate::CliError;

#[derive(Debug, Args)]
pub struct StarArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub pi: BivectorArgs,
    /// Left symbol.
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    /// Right symbol.
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
}

pub fn star(args: StarArgs, bracket: bool) -> Result<(Report, OutputFormat), CliError> {
    let name = if bracket { "bracket" } else { "star" };
    let (mut r, tol) = args.common.report(name, ncphase::tol::COEFF)?;
    if args.common.selftest {
        algebra_selftest(&mut r);
        return Ok(finish_selftest(r, args.common.format));
    }
    let pi = args.pi.require()?;
    echo_bivector(&mut r, &pi);
    let (fs, gs) = (required(&args.f, "f")?, required(&args.g, "g")?);
    r.config("f", &fs);
    r.config("g", &gs);
    let f = parse_poly(&fs, pi.generators())?;
    let g = parse_poly(&gs, pi.generators())?;
    let comm = moyal_bracket(&f, &g, &pi)?;
    if bracket {
        let pb = poisson_bracket(&f, &g, &pi)?;
        let lead = pb.scale(Complex64::new(0.0, 1.0));
        r.push("moyal", &comm);
        r.push("poisson", &pb);
        r.sci("moyal_minus_i_poisson.max", (&comm - &lead).max_abs());
        r.check("antisymmetric", (&comm + &moyal_bracket(&g, &f, &pi)?).is_zero_within(tol));
    } else {
        r.push("product", star_product(&f, &g, &pi)?);
        r.push("reverse", star_product(&g, &f, &pi)?);
        r.push("commutator", &comm);
        r.complex("commutator.constant", comm.constant_term());
        r.push("commutator.degree", comm.degree());
    }
    Ok((r, args.common.format))
}

fn algebra_selftest(r: &mut Report) {
    let tol = ncphase::tol::COEFF;
    case(r, "unit", || {
        let pi = Bivector::theta(0.7);
        let f = parse_poly("x1^3*x2 - (0+2i)*x2^2 + 5", pi.generators())?;
        let one = PhasePoly::one(pi.generators());
        Ok(star_product(&f, &one, &pi)? == f && star_product(&one, &f, &pi)? == f)
    });
    case(r, "antisymmetry", || {
        let pi = Bivector::canonical(2)?;
        let f = parse_poly("x1^2*p1 + x2*p2^3", pi.generators())?;
        Ok(moyal_bracket(&f, &f, &pi)?.is_zero_within(tol))
    });
    case(r, "canonical_pair", || {
        let pi = Bivector::canonical(1)?;
        let g = pi.generators();
        let pb = poisson_bracket(&PhasePoly::generator(g, 0), &PhasePoly::generator(g, 1), &pi)?;
        Ok(pb == PhasePoly::one(g))
    });
    case(r, "linear_bracket", || {
        let pi = Bivector::canonical(2)?;
        let f = parse_poly("2*x1 - p2 + 3", pi.generators())?;
        let g = parse_poly("x2 + (1+1i)*p1", pi.generators())?;
        let lead = poisson_bracket(&f, &g, &pi)?.scale(Complex64::new(0.0, 1.0));
        Ok(moyal_bracket(&f, &g, &pi)?.approx_eq(&lead, tol))
    });
    case(r, "parse_square", || {
        let g = GeneratorSet::phase_space(1)?;
        Ok(parse_poly("x1^2", g)? == PhasePoly::monomial(g, vec![2, 0], Complex64::new(1.0, 0.0)))
    });
    case(r, "parse_grammar", || {
        let g = GeneratorSet::phase_space(1)?;
        let want = &PhasePoly::monomial(g, vec![1, 1], Complex64::new(0.0, 2.0))
            - &PhasePoly::constant(g, Complex64::new(3.0, 0.0));
        Ok(parse_poly("(0+2i)*x1*p1 - 3", g)? == want)
    });
    case(r, "unknown_generator", || {
        let g = GeneratorSet::coordinates(2)?;
        Ok(matches!(parse_poly("x3", g), Err(Error::UnknownGenerator(_))))
    });
    case(r, "theta_commutator", || {
        let pi = Bivector::theta(0.5);
        let g = pi.generators();
        let c = moyal_bracket(&PhasePoly::generator(g, 0), &PhasePoly::generator(g, 1), &pi)?;
        Ok(c == PhasePoly::constant(g, Complex64::new(0.0, 0.5)))
    });
}

#[derive(Debug, Args)]
pub struct QuantizeArgs {
    #[command(flatten)]
    pub common: Common,
    /// Bivector of the symbol's generators; canonical with one degree of freedom if omitted.
    #[command(flatten)]
    pub pi: BivectorArgs,
    /// Symbol to quantize.
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    /// Second symbol; reports the composition residual `W[f⋆g] − W[f]W[g]`.
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    /// Occupation cutoff per bosonic mode.
    #[arg(long, default_value_t = 16)]
    pub cutoff: usize,
    /// Interior margin for residuals.
    #[arg(long, default_value_t = 2)]
    pub margin: usize,
    /// Write the operator in the text matrix format.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn quantize(args: QuantizeArgs) -> Result<(Report, OutputFormat), CliError> {
    let (mut r, tol) = args.common.report("quantize", ncphase::tol::HERMITIAN)?;
    if args.common.selftest {
        quantize_selftest(&mut r);
        return Ok(finish_selftest(r, args.common.format));
    }
    let pi = args.pi.resolve()?.map_or_else(|| Bivector::canonical(1), Ok)?;
    echo_bivector(&mut r, &pi);
    let fs = required(&args.f, "f")?;
    r.config("f", &fs);
    if let Some(g) = &args.g {
        r.config("g", g);
    }
    r.config("cutoff", args.cutoff);
    r.config("margin", args.margin);
    if let Some(p) = &args.out {
        r.config("out", p.display());
    }
    if pi.len() % 2 != 0 {
        return Err(CliError::Input("quantization needs an even number of generators".into()));
    }
    let basis = FockBasis::bose_modes(pi.len() / 2, args.cutoff)?;
    let map = GeneratorMap::adapted(&pi, &basis)?;
    let f = parse_poly(&fs, pi.generators())?;
    let wf = weyl_quantize_with(&f, &map)?;
    r.push("basis", basis);
    r.push("dim", wf.dim());
    r.complex("trace", wf.trace());
    r.sci("max_abs", wf.max_abs());
    r.sci("hermitian_deviation", wf.hermitian_deviation());
    if f.is_real() {
        r.check("hermitian", wf.hermitian_deviation() <= tol);
    }
    if let Some(gs) = &args.g {
        let g = parse_poly(gs, pi.generators())?;
        let wg = weyl_quantize_with(&g, &map)?;
        let wfg = weyl_quantize_with(&star_product(&f, &g, &pi)?, &map)?;
        r.sci("composition.interior_residual", wfg.interior_distance(&(&wf * &wg), args.margin)?);
    }
    if let Some(p) = &args.out {
        std::fs::write(p, write_operator(&wf))
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok((r, args.common.format))
}

fn quantize_selftest(r: &mut Report) {
    let i = Complex64::new(0.0, 1.0);
    case(r, "bose_ladder", || {
        let b = FockBasis::bose(6)?;
        let m = mode_operators(&b, 0)?;
        let comm = m.a.commutator(&m.a_dag);
        let id = OperatorMatrix::identity(&b);
        Ok(comm.interior_distance(&id, 1)? <= 1e-14 && (comm.get(5, 5).re - 1.0).abs() > 1.0)
    });
    case(r, "fermi_ladder", || {
        let b = FockBasis::fermi();
        let m = mode_operators(&b, 0)?;
        Ok(m.a.anticommutator(&m.a_dag) == OperatorMatrix::identity(&b) && (&m.a * &m.a).max_abs() == 0.0)
    });
    case(r, "canonical_pair", || {
        let b = FockBasis::bose(10)?;
        let m = mode_operators(&b, 0)?;
        let target = OperatorMatrix::identity(&b).scale(i);
        Ok(m.x.is_hermitian() && m.p.is_hermitian() && m.x.commutator(&m.p).interior_distance(&target, 1)? <= 1e-14)
    });
    case(r, "degree_one", || {
        let b = FockBasis::bose(8)?;
        let g = GeneratorSet::phase_space(1)?;
        Ok(weyl_quantize(&PhasePoly::generator(g, 0), &b)? == mode_operators(&b, 0)?.x)
    });
    case(r, "margin_zero", || {
        let b = FockBasis::bose(5)?;
        let m = mode_operators(&b, 0)?;
        Ok(m.x.interior_block(0)? == m.x)
    });
    case(r, "interior_identity", || {
        let b = FockBasis::bose(6)?;
        let m = mode_operators(&b, 0)?;
        let id = OperatorMatrix::identity(&b);
        Ok(m.a.commutator(&m.a_dag).interior_distance(&id, 2)? <= 1e-14)
    });
    case(r, "interior_idempotent", || {
        let b = FockBasis::bose(7)?;
        let m = mode_operators(&b, 0)?;
        let once = (&m.a * &m.x).interior_block(2)?;
        Ok(once.interior_block(2)? == once)
    });
}
