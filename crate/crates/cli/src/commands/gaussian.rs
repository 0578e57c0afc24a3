use std::path::PathBuf;

use clap::Args;
use nalgebra::DMatrix;
use ncphase::fock::Statistics;
use ncphase::gaussian::{Insertion, QuadraticAction};
use num_complex::Complex64;

use super::oscillators::Stat;
use super::{case, finish_selftest, required, Common};
use crate::input::{parse_blocks, parse_green, parse_vector, read_file};
use crate::report::{OutputFormat, Report};
use crate::CliError;

#[derive(Debug, Args)]
pub struct GaussianArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub stat: Option<Stat>,
    /// Quadratic form: `m` then `m×m` row-major `re,im` entries.
    #[arg(long)]
    pub h: Option<PathBuf>,
    /// Sources: `m` then `m` `re,im` entries.
    #[arg(long = "J")]
    pub j: Option<PathBuf>,
    /// Insertions `mode,conj,…` with 1-based modes and `conj` 1 for the conjugate field.
    #[arg(long)]
    pub green: Option<String>,
}

fn selftest(r: &mut Report) {
    for stat in [Statistics::Bose, Statistics::Fermi] {
        case(r, &format!("normalized_{stat}"), || {
            let q = QuadraticAction::new(DMatrix::identity(3, 3), stat)?;
            Ok(q.log_partition(&[Complex64::new(0.0, 0.0); 3])?.norm() == 0.0)
        });
        case(r, &format!("two_point_{stat}"), || {
            let q = QuadraticAction::new(DMatrix::identity(3, 3), stat)?;
            let mut ok = true;
            for i in 0..3 {
                for j in 0..3 {
                    let v = q.green(&[Insertion::field(i), Insertion::conj(j)])?.value;
                    let want = if i == j { 1.0 } else { 0.0 };
                    ok &= (v - want).norm() <= 1e-12;
                }
            }
            Ok(ok)
        });
    }
}

pub fn gaussian(args: GaussianArgs) -> Result<(Report, OutputFormat), CliError> {
    let (mut r, _) = args.common.report("gaussian", 1e-10)?;
    if args.common.selftest {
        selftest(&mut r);
        return Ok(finish_selftest(r, args.common.format));
    }
    let stat = Statistics::from(required(&args.stat, "stat")?);
    let hpath = required(&args.h, "h")?;
    r.config("stat", stat);
    r.config("h", hpath.display());
    if let Some(j) = &args.j {
        r.config("J", j.display());
    }
    if let Some(g) = &args.green {
        r.config("green", g);
    }
    let h = parse_blocks(&read_file(&hpath)?, 1)?.remove(0);
    let m = h.nrows();
    let j = match &args.j {
        Some(p) => parse_vector(&read_file(p)?)?,
        None => vec![Complex64::new(0.0, 0.0); m],
    };
    if j.len() != m {
        return Err(CliError::Input(format!("expected {m} sources, found {}", j.len())));
    }
    let insertions = args.green.as_deref().map(parse_green).transpose()?;
    let q = QuadraticAction::new(h, stat)?;
    r.push("modes", m);
    r.complex("log_det", q.log_det());
    r.complex("log_partition", q.log_partition(&j)?);
    r.complex("partition", q.partition(&j)?);
    let g = q.propagator();
    for a in 0..m {
        for b in 0..m {
            r.complex(format!("propagator[{},{}]", a + 1, b + 1), g[(a, b)]);
        }
    }
    if let Some(ins) = insertions {
        if let Some(bad) = ins.iter().find(|i| i.mode >= m) {
            return Err(CliError::Input(format!("mode {} out of range for {m} modes", bad.mode + 1)));
        }
        let c = q.green(&ins)?;
        r.complex("green", c.value);
        if let Some(note) = c.note {
            r.push("green.note", note);
        }
    }
    Ok((r, args.common.format))
}
