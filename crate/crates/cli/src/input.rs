//! Argument and file parsing shared by the subcommands.

use std::path::Path;

use nalgebra::DMatrix;
use ncphase::fock::parse_complex_pair;
use ncphase::gaussian::Insertion;
use ncphase::phase::parse_bivector;
use ncphase::Bivector;
use num_complex::Complex64;

use crate::CliError;

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

/// A bivector given inline (`"n e12 e13 …"`) or as a file holding that text.
pub fn bivector_arg(text: &str, phase_space: bool) -> Result<Bivector, CliError> {
    let path = Path::new(text);
    let body = if path.is_file() { read_file(path)? } else { text.to_string() };
    Ok(parse_bivector(&body, phase_space)?)
}

fn tokens(text: &str) -> Vec<(usize, usize, &str)> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut col = 1;
        for piece in line.split(char::is_whitespace) {
            if !piece.is_empty() {
                out.push((ln + 1, col, piece));
            }
            col += piece.chars().count() + 1;
        }
    }
    out
}

fn parse_count(tok: Option<&(usize, usize, &str)>) -> Result<usize, CliError> {
    let &(l, c, s) = tok.ok_or_else(|| CliError::Input("empty input".into()))?;
    s.parse().map_err(|_| {
        CliError::from(ncphase::Error::Parse {
            line: l,
            column: c,
            message: format!("expected a dimension, found `{s}`"),
        })
    })
}

fn parse_entries(toks: &[(usize, usize, &str)], count: usize) -> Result<Vec<Complex64>, CliError> {
    if toks.len() != count {
        return Err(CliError::Input(format!("expected {count} entries, found {}", toks.len())));
    }
    toks.iter()
        .map(|&(l, c, s)| parse_complex_pair(s, l, c).map_err(CliError::from))
        .collect()
}

/// `m` followed by `k` row-major `m×m` blocks of `re,im` entries.
pub fn parse_blocks(text: &str, k: usize) -> Result<Vec<DMatrix<Complex64>>, CliError> {
    let toks = tokens(text);
    let m = parse_count(toks.first())?;
    if m == 0 {
        return Err(CliError::Input("dimension must be positive".into()));
    }
    let entries = parse_entries(&toks[1..], k * m * m)?;
    Ok(entries
        .chunks(m * m)
        .map(|blk| DMatrix::from_row_slice(m, m, blk))
        .collect())
}

/// `m` followed by `m` entries.
pub fn parse_vector(text: &str) -> Result<Vec<Complex64>, CliError> {
    let toks = tokens(text);
    let m = parse_count(toks.first())?;
    parse_entries(&toks[1..], m)
}

/// `i1,c1,i2,c2,…`: 1-based mode then `1` for `χ⁺` or `0` for `χ`.
pub fn parse_green(spec: &str) -> Result<Vec<Insertion>, CliError> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() % 2 != 0 {
        return Err(CliError::Input("--green expects mode,flag pairs".into()));
    }
    parts
        .chunks(2)
        .map(|p| {
            let mode: usize = p[0]
                .parse()
                .ok()
                .filter(|m| *m >= 1)
                .ok_or_else(|| CliError::Input(format!("bad mode `{}` (modes start at 1)", p[0])))?;
            let conjugate = match p[1] {
                "0" => false,
                "1" => true,
                other => return Err(CliError::Input(format!("bad conjugation flag `{other}`"))),
            };
            Ok(Insertion {
                conjugate,
                mode: mode - 1,
            })
        })
        .collect()
}
