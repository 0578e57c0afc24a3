//! Text serialization of operator matrices.
//!
//! ```text
//! operator 4
//! basis bose:2 fermi
//! 1,0 0,0 0,0 0,0
//! ...
//! ```
//!
//! The header gives the dimension and the basis spec; each following line is
//! one row of `re,im` pairs. Floats use the shortest representation that
//! parses back to the same value.

use std::fmt::Write;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::basis::FockBasis;
use super::operator::OperatorMatrix;
use crate::error::{Error, Result};

pub fn write_operator(op: &OperatorMatrix) -> String {
    let mut s = String::new();
    writeln!(s, "operator {}", op.dim()).unwrap();
    writeln!(s, "basis {}", op.basis()).unwrap();
    for r in 0..op.dim() {
        let row: Vec<String> = (0..op.dim())
            .map(|c| {
                let z = op.get(r, c);
                format!("{},{}", z.re, z.im)
            })
            .collect();
        writeln!(s, "{}", row.join(" ")).unwrap();
    }
    s
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parse a single `re,im` token (or a bare real).
pub fn parse_complex_pair(tok: &str, line: usize, column: usize) -> Result<Complex64> {
    let (re, im) = tok.split_once(',').unwrap_or((tok, "0"));
    let re: f64 = re
        .parse()
        .map_err(|_| perr(line, column, format!("malformed real part in `{tok}`")))?;
    let im: f64 = im
        .parse()
        .map_err(|_| perr(line, column, format!("malformed imaginary part in `{tok}`")))?;
    Ok(Complex64::new(re, im))
}

/// Whitespace-separated tokens with their 1-based columns.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((line[..s].chars().count() + 1, &line[s..]));
    }
    out
}

pub fn read_operator(text: &str) -> Result<OperatorMatrix> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (l0, head) = lines.next().ok_or_else(|| perr(1, 1, "empty operator file"))?;
    let dim: usize = head
        .strip_prefix("operator ")
        .and_then(|d| d.trim().parse().ok())
        .ok_or_else(|| perr(l0 + 1, 1, "expected `operator <dim>` header"))?;
    let (l1, basis_line) = lines
        .next()
        .ok_or_else(|| perr(l0 + 2, 1, "missing basis line"))?;
    let basis: FockBasis = basis_line
        .strip_prefix("basis ")
        .ok_or_else(|| perr(l1 + 1, 1, "expected `basis <spec>` line"))?
        .parse()?;
    if basis.dim() != dim {
        return Err(Error::dims(dim, basis.dim()));
    }
    let mut data = DMatrix::<Complex64>::zeros(dim, dim);
    let mut row = 0;
    for (ln, line) in lines {
        if row == dim {
            return Err(perr(ln + 1, 1, "too many rows"));
        }
        let toks = tokens(line);
        if toks.len() != dim {
            return Err(perr(
                ln + 1,
                1,
                format!("expected {dim} entries, found {}", toks.len()),
            ));
        }
        for (c, (col, t)) in toks.iter().enumerate() {
            data[(row, c)] = parse_complex_pair(t, ln + 1, *col)?;
        }
        row += 1;
    }
    if row != dim {
        return Err(Error::dims(format!("{dim} rows"), row));
    }
    OperatorMatrix::new(basis, data)
}
