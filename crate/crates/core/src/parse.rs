//! Text grammar for homogeneous polynomials.
//!
//! Terms look like `c*x^i*y^j*z^k`, joined by `+` or `-`. The `*` and `^1`
//! are optional and coefficients are integers or fractions `a/b`:
//! `x^4+y^4-z^4`, `1/2*x*y*z`, `3x^2y`.

use crate::exactfield::{FieldError, FieldSpec};
use crate::polyspace::{HomPoly, Monomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("inhomogeneous polynomial: expected degree {expected}, offending monomials: {}", offending.join(", "))]
    Inhomogeneous { expected: u32, offending: Vec<String> },
    #[error("coefficient {coeff} at position {pos} is not defined in {field}")]
    NotInField { coeff: String, pos: usize, field: FieldSpec },
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn number(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(text.parse().expect("digits"))
    }
}

struct RawTerm {
    coeff: BigRational,
    mono: Monomial,
    pos: usize,
}

fn parse_terms(text: &str) -> Result<Vec<RawTerm>, ParseError> {
    let mut lx = Lexer { s: text.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let Some(c) = lx.peek() else {
            if first {
                return lx.err("empty polynomial");
            }
            return lx.err("expected a term after sign");
        };
        let mut sign = BigRational::one();
        if c == b'+' || c == b'-' {
            if c == b'-' {
                sign = -sign;
            }
            lx.pos += 1;
        } else if !first {
            return lx.err(format!("expected '+' or '-', found '{}'", c as char));
        }
        first = false;
        let pos = lx.pos;
        let mut coeff = sign;
        let mut exps = [0u32; 3];
        let mut factors = 0;
        loop {
            match lx.peek() {
                Some(d) if d.is_ascii_digit() => {
                    let num = lx.number()?;
                    let mut r = BigRational::from_integer(num);
                    if lx.peek() == Some(b'/') {
                        lx.pos += 1;
                        let den = lx.number()?;
                        if den.is_zero() {
                            return lx.err("zero denominator");
                        }
                        r /= BigRational::from_integer(den);
                    }
                    coeff *= r;
                }
                Some(v @ (b'x' | b'y' | b'z')) => {
                    lx.pos += 1;
                    let mut e = 1u32;
                    if lx.peek() == Some(b'^') {
                        lx.pos += 1;
                        let n = lx.number()?;
                        e = match u32::try_from(n) {
                            Ok(e) if e <= 100_000 => e,
                            _ => return lx.err("exponent too large"),
                        };
                    }
                    exps[(v - b'x') as usize] += e;
                }
                Some(o) => {
                    if factors == 0 {
                        return lx.err(format!("unexpected '{}'", o as char));
                    }
                    break;
                }
                None => {
                    if factors == 0 {
                        return lx.err("unexpected end of input");
                    }
                    break;
                }
            }
            factors += 1;
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
                if !matches!(lx.peek(), Some(b'0'..=b'9' | b'x' | b'y' | b'z')) {
                    return lx.err("expected a factor after '*'");
                }
            }
        }
        terms.push(RawTerm { coeff, mono: Monomial::new(exps[0], exps[1], exps[2]), pos });
        if lx.peek().is_none() {
            return Ok(terms);
        }
    }
}

/// Parses one homogeneous polynomial over `field`.
pub fn parse_poly(text: &str, field: FieldSpec) -> Result<HomPoly, ParseError> {
    let terms = parse_terms(text)?;
    let expected = terms[0].mono.degree();
    let offending: Vec<String> = terms.iter().filter(|t| t.mono.degree() != expected).map(|t| t.mono.to_string()).collect();
    if !offending.is_empty() {
        return Err(ParseError::Inhomogeneous { expected, offending });
    }
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let c = field.from_rational(&t.coeff).map_err(|e| match e {
            FieldError::NotInField(coeff, field) => ParseError::NotInField { coeff, pos: t.pos, field },
            other => ParseError::Syntax { pos: t.pos, msg: other.to_string() },
        })?;
        out.push((t.mono, c));
    }
    Ok(HomPoly::from_terms(field, expected as i64, out).expect("degrees checked"))
}

/// Comma-separated list of polynomials.
pub fn parse_poly_list(text: &str, field: FieldSpec) -> Result<Vec<HomPoly>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        out.push(parse_poly(part, field).map_err(|e| match e {
            ParseError::Syntax { pos, msg } => ParseError::Syntax { pos: pos + offset, msg },
            ParseError::NotInField { coeff, pos, field } => ParseError::NotInField { coeff, pos: pos + offset, field },
            other => other,
        })?);
        offset += part.len() + 1;
    }
    Ok(out)
}
