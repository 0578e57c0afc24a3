//! Text forms for symbols and bivectors.
//!
//! Polynomials: terms joined by `+`/`-`, each term a `*`-product of an
//! optional coefficient and generator powers, e.g. `(0+2i)*x1^2*p1 - 3*x2`.
//! Coefficients are real numbers, imaginary numbers (`2.5i`), or
//! parenthesized complex literals (`(1-0.5i)`).
//!
//! Bivectors: the generator count `n`, then the `n(n−1)/2` upper-triangle
//! entries, row-major, separated by whitespace or commas.

use num_complex::Complex64;

use super::bivector::{Bivector, GeneratorSet};
use super::poly::PhasePoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Imag(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let (l0, c0) = (line, col);
        if ch == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if ch.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let simple = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Spanned { tok, line: l0, column: c0 });
            i += 1;
            col += 1;
            continue;
        }
        if ch.is_ascii_digit() || ch == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let s: String = chars[start..i].iter().collect();
            let v: f64 = s
                .parse()
                .map_err(|_| err(l0, c0, format!("malformed number `{s}`")))?;
            col += i - start;
            if i < chars.len() && chars[i] == 'i' {
                let next_alnum = chars.get(i + 1).is_some_and(|c| c.is_alphanumeric());
                if !next_alnum {
                    i += 1;
                    col += 1;
                    out.push(Spanned { tok: Tok::Imag(v), line: l0, column: c0 });
                    continue;
                }
            }
            out.push(Spanned { tok: Tok::Num(v), line: l0, column: c0 });
            continue;
        }
        if ch.is_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_alphanumeric() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            let tok = if s == "i" { Tok::Imag(1.0) } else { Tok::Ident(s) };
            out.push(Spanned { tok, line: l0, column: c0 });
            continue;
        }
        return Err(err(l0, c0, format!("unexpected character `{ch}`")));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    gens: GeneratorSet,
    end: (usize, usize),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.column))
            .unwrap_or(self.end)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(err(l, c, message))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<PhasePoly> {
        let mut acc = PhasePoly::zero(self.gens);
        let mut sign = 1.0;
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
            }
            Some(Tok::Minus) => {
                self.bump();
                sign = -1.0;
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = &acc + &t.scale(Complex64::new(sign, 0.0));
            match self.peek() {
                Some(Tok::Plus) => sign = 1.0,
                Some(Tok::Minus) => sign = -1.0,
                None => return Ok(acc),
                Some(_) => return self.fail("expected `+`, `-` or end of input"),
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<PhasePoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PhasePoly> {
        let (line, column) = self.here();
        match self.bump() {
            Some(Tok::Num(v)) => Ok(PhasePoly::constant(self.gens, Complex64::new(v, 0.0))),
            Some(Tok::Imag(v)) => Ok(PhasePoly::constant(self.gens, Complex64::new(0.0, v))),
            Some(Tok::LParen) => {
                let c = self.complex_literal()?;
                if self.bump() != Some(Tok::RParen) {
                    self.pos -= 1;
                    return self.fail("expected `)`");
                }
                Ok(PhasePoly::constant(self.gens, c))
            }
            Some(Tok::Ident(name)) => {
                let idx = self
                    .gens
                    .index_of(&name)
                    .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                let mut k = 1u32;
                if self.peek() == Some(&Tok::Caret) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Num(v)) if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 => {
                            k = v as u32
                        }
                        _ => {
                            self.pos -= 1;
                            return self.fail("expected a non-negative integer exponent");
                        }
                    }
                }
                Ok(PhasePoly::generator(self.gens, idx).pow(k))
            }
            Some(_) => Err(err(line, column, "expected a coefficient or generator")),
            None => Err(err(line, column, "unexpected end of input")),
        }
    }

    // Inside parentheses: `re`, `im i`, `re ± im i`, each part optionally signed.
    fn complex_literal(&mut self) -> Result<Complex64> {
        let mut z = Complex64::new(0.0, 0.0);
        let mut first = true;
        loop {
            let mut sign = 1.0;
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                }
                Some(Tok::Minus) => {
                    self.bump();
                    sign = -1.0;
                }
                _ if !first => return Ok(z),
                _ => {}
            }
            match self.bump() {
                Some(Tok::Num(v)) => z.re += sign * v,
                Some(Tok::Imag(v)) => z.im += sign * v,
                _ => {
                    self.pos -= 1;
                    return self.fail("expected a number inside parentheses");
                }
            }
            first = false;
            if self.peek() == Some(&Tok::RParen) {
                return Ok(z);
            }
        }
    }
}

/// Parse a polynomial symbol over `gens`.
pub fn parse_poly(text: &str, gens: GeneratorSet) -> Result<PhasePoly> {
    let toks = lex(text)?;
    let end = match text.rsplit_once('\n') {
        Some((head, tail)) => (head.matches('\n').count() + 2, tail.chars().count() + 1),
        None => (1, text.chars().count() + 1),
    };
    if toks.is_empty() {
        return Err(err(end.0, end.1, "empty polynomial"));
    }
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        gens,
        end,
    };
    p.expr()
}

/// Parse `n e₁₂ e₁₃ …`. With `phase_space`, the `n` generators are laid out
/// as `x1..x(n/2), p1..p(n/2)`; otherwise they are coordinates `x1..xn`.
pub fn parse_bivector(text: &str, phase_space: bool) -> Result<Bivector> {
    let mut fields = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let mut col = 1;
        for piece in line.split(|c: char| c.is_whitespace() || c == ',') {
            if !piece.is_empty() {
                fields.push((piece, ln + 1, col));
            }
            col += piece.chars().count() + 1;
        }
    }
    let (head, l, c) = *fields
        .first()
        .ok_or_else(|| err(1, 1, "empty bivector input"))?;
    let n: usize = head
        .parse()
        .map_err(|_| err(l, c, format!("expected generator count, found `{head}`")))?;
    let gens = if phase_space {
        if n % 2 != 0 {
            return Err(err(l, c, "phase-space layout needs an even generator count"));
        }
        GeneratorSet::phase_space(n / 2)?
    } else {
        GeneratorSet::coordinates(n)?
    };
    let mut upper = Vec::with_capacity(fields.len() - 1);
    for &(s, l, c) in &fields[1..] {
        upper.push(
            s.parse::<f64>()
                .map_err(|_| err(l, c, format!("malformed number `{s}`")))?,
        );
    }
    Bivector::from_upper(gens, &upper)
}
