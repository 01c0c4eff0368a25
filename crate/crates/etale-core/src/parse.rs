//! Text grammar shared by the CLI and the test fixtures.
//!
//! ```text
//! poly    := term (('+' | '-') term)*
//! term    := coeff? ('*'? atom)*
//! atom    := ('x' | 'y' | 'v' | 'w' | 'z') ('^' int)?
//! coeff   := int ('/' posint)?
//! ```
//!
//! Whitespace is insignificant and a negative exponent is accepted only on
//! the atom `x`. `v` and `w` are read as synonyms for the first and second
//! variable, `z` is the variable of univariate polynomials, and expressions
//! in abstract generators extend the atom set with `T0`, `T1`, ... (or `P`,
//! `Q` for pairs).

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::multipoly::{MultiPoly, TMono};
use crate::poly::LaurentPoly;
use crate::rational::Rational;
use crate::unipoly::UniPoly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.message)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Num(BigInt),
    Sym(String),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            b'/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &s[start..i];
                let n: BigInt = digits
                    .parse()
                    .map_err(|_| ParseError::new(start, "invalid integer"))?;
                out.push((start, Tok::Num(n)));
            }
            b if b.is_ascii_alphabetic() => {
                let start = i;
                i += 1;
                // `T` carries an index; every other atom is one letter.
                if b == b'T' {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                out.push((start, Tok::Sym(s[start..i].to_string())));
            }
            _ => {
                return Err(ParseError::new(i, "unexpected character"));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
struct RawTerm {
    coeff: Rational,
    atoms: Vec<(String, i64)>,
    pos: usize,
}

fn parse_raw(s: &str) -> Result<Vec<RawTerm>, ParseError> {
    let toks = tokenize(s)?;
    let mut terms = Vec::new();
    let mut i = 0;
    if toks.is_empty() {
        return Err(ParseError::new(0, "empty input"));
    }
    loop {
        // Optional sign before each term; required between terms.
        let mut sign = 1i64;
        let term_pos = toks.get(i).map(|(p, _)| *p).unwrap_or(s.len());
        while let Some((_, tok)) = toks.get(i) {
            match tok {
                Tok::Plus => i += 1,
                Tok::Minus => {
                    sign = -sign;
                    i += 1;
                }
                _ => break,
            }
        }
        let mut coeff = Rational::from_integer(sign.into());
        let mut atoms: Vec<(String, i64)> = Vec::new();
        let mut factors = 0usize;
        loop {
            match toks.get(i) {
                Some((_, Tok::Num(n))) => {
                    i += 1;
                    let mut r = Rational::from_integer(n.clone());
                    if let Some((slash_pos, Tok::Slash)) = toks.get(i).map(|(p, t)| (*p, t.clone()))
                    {
                        i += 1;
                        match toks.get(i) {
                            Some((p, Tok::Num(d))) => {
                                if d.is_zero() || d.is_negative() {
                                    return Err(ParseError::new(
                                        *p,
                                        "denominator must be positive",
                                    ));
                                }
                                r /= Rational::from_integer(d.clone());
                                i += 1;
                            }
                            _ => {
                                return Err(ParseError::new(
                                    slash_pos,
                                    "expected denominator after '/'",
                                ))
                            }
                        }
                    }
                    coeff *= r;
                    factors += 1;
                }
                Some((pos, Tok::Sym(name))) => {
                    let name = name.clone();
                    let pos = *pos;
                    i += 1;
                    let mut exp = 1i64;
                    if let Some((_, Tok::Caret)) = toks.get(i) {
                        i += 1;
                        let mut neg = false;
                        if let Some((_, Tok::Minus)) = toks.get(i) {
                            neg = true;
                            i += 1;
                        }
                        match toks.get(i) {
                            Some((p, Tok::Num(n))) => {
                                let mag: i64 = n.try_into().map_err(|_| {
                                    ParseError::new(*p, "exponent out of range")
                                })?;
                                exp = if neg { -mag } else { mag };
                                i += 1;
                            }
                            _ => {
                                return Err(ParseError::new(
                                    pos,
                                    "expected integer exponent after '^'",
                                ))
                            }
                        }
                    }
                    atoms.push((name, exp));
                    factors += 1;
                }
                Some((_, Tok::Star)) => {
                    i += 1;
                }
                _ => break,
            }
        }
        if factors == 0 {
            return Err(ParseError::new(term_pos, "empty term"));
        }
        terms.push(RawTerm {
            coeff,
            atoms,
            pos: term_pos,
        });
        match toks.get(i) {
            None => break,
            Some((_, Tok::Plus)) | Some((_, Tok::Minus)) => continue,
            Some((p, _)) => return Err(ParseError::new(*p, "expected '+' or '-'")),
        }
    }
    Ok(terms)
}

/// Parse a bivariate Laurent polynomial; atoms `x`/`v` are the first
/// variable and `y`/`w` the second, with negative exponents allowed on `x`
/// only.
pub fn parse_laurent(s: &str) -> Result<LaurentPoly, ParseError> {
    let raw = parse_raw(s)?;
    let mut out = LaurentPoly::zero();
    for term in raw {
        let mut ex = 0i64;
        let mut ey = 0i64;
        for (name, exp) in &term.atoms {
            match name.as_str() {
                "x" => ex += exp,
                "v" | "y" | "w" => {
                    if *exp < 0 {
                        return Err(ParseError::new(
                            term.pos,
                            "negative exponent allowed on x only",
                        ));
                    }
                    if name == "v" {
                        ex += exp;
                    } else {
                        ey += exp;
                    }
                }
                other => {
                    return Err(ParseError::new(
                        term.pos,
                        alloc::format!("unknown atom '{}'", other),
                    ))
                }
            }
        }
        if ey < 0 {
            return Err(ParseError::new(term.pos, "negative y-exponent"));
        }
        out = &out + &LaurentPoly::monomial(ex, ey, term.coeff);
    }
    Ok(out)
}

/// Parse a univariate polynomial in `z`.
pub fn parse_uni(s: &str) -> Result<UniPoly, ParseError> {
    let raw = parse_raw(s)?;
    let mut out = UniPoly::zero();
    for term in raw {
        let mut e = 0i64;
        for (name, exp) in &term.atoms {
            if name != "z" {
                return Err(ParseError::new(
                    term.pos,
                    alloc::format!("unknown atom '{}'", name),
                ));
            }
            if *exp < 0 {
                return Err(ParseError::new(term.pos, "negative exponent on z"));
            }
            e += exp;
        }
        out = out.add(&UniPoly::monomial(e as u32, term.coeff));
    }
    Ok(out)
}

fn parse_symbolic(
    s: &str,
    nvars: usize,
    resolve: impl Fn(&str) -> Option<usize>,
) -> Result<MultiPoly, ParseError> {
    let raw = parse_raw(s)?;
    let mut out = MultiPoly::zero(nvars);
    for term in raw {
        let mut exps = alloc::vec![0u32; nvars];
        for (name, exp) in &term.atoms {
            let idx = resolve(name).ok_or_else(|| {
                ParseError::new(term.pos, alloc::format!("unknown atom '{}'", name))
            })?;
            if *exp < 0 {
                return Err(ParseError::new(term.pos, "negative exponent on symbol"));
            }
            exps[idx] += *exp as u32;
        }
        out = out.add(&MultiPoly::monomial(nvars, TMono::new(exps), term.coeff));
    }
    Ok(out)
}

/// Parse an expression in the abstract generators `T0`, ..., `T{n-1}`.
pub fn parse_texpr(s: &str, nvars: usize) -> Result<MultiPoly, ParseError> {
    parse_symbolic(s, nvars, |name| {
        let k: usize = name.strip_prefix('T')?.parse().ok()?;
        (k < nvars).then_some(k)
    })
}

/// Parse an expression in the pair symbols `P`, `Q`.
pub fn parse_pq(s: &str) -> Result<MultiPoly, ParseError> {
    parse_symbolic(s, 2, |name| match name {
        "P" => Some(0),
        "Q" => Some(1),
        _ => None,
    })
}

/// Parse an exact rational scalar, `int` or `int/posint`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let raw = parse_raw(s)?;
    if raw.len() != 1 || !raw[0].atoms.is_empty() {
        return Err(ParseError::new(0, "expected a rational number"));
    }
    Ok(raw[0].coeff.clone())
}
