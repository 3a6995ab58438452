//! Human-form polynomial input: `2x^3 + x^2 - 1`, `3*x^2+4`, `[1,2]*x + [0,1]`.
//!
//! Integer coefficients map through `Z -> F_p`; bracketed vectors give the
//! flat prime-field digits of an extension-field coefficient.

use super::Poly;
use crate::error::{Error, Result};
use crate::ffield::{Field, FieldElem};

pub fn parse_poly(field: &Field, src: &str) -> Result<Poly> {
    let s: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut pos = 0;
    let mut terms: Vec<(usize, FieldElem)> = Vec::new();
    while pos < s.len() {
        let mut sign = 1i64;
        if s[pos] == '+' || s[pos] == '-' {
            if s[pos] == '-' {
                sign = -1;
            }
            pos += 1;
        } else if !terms.is_empty() {
            return Err(Error::Parse(format!("expected '+' or '-' at offset {pos}")));
        }
        let (coef, had_coef) = parse_coef(field, &s, &mut pos)?;
        if pos < s.len() && s[pos] == '*' {
            if !had_coef {
                return Err(Error::Parse(format!("dangling '*' at offset {pos}")));
            }
            pos += 1;
        }
        let mut exp = 0usize;
        if pos < s.len() && s[pos] == 'x' {
            pos += 1;
            exp = 1;
            if pos < s.len() && s[pos] == '^' {
                pos += 1;
                exp = parse_uint(&s, &mut pos)?
                    .try_into()
                    .map_err(|_| Error::Parse("exponent too large".into()))?;
            }
        } else if !had_coef {
            return Err(Error::Parse(format!("expected a term at offset {pos}")));
        }
        let coef = if sign < 0 { coef.neg() } else { coef };
        terms.push((exp, coef));
    }
    let deg = terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
    let mut coeffs = vec![field.zero(); deg + 1];
    for (e, c) in terms {
        coeffs[e] = coeffs[e].add(&c)?;
    }
    Poly::from_elems(field, &coeffs)
}

fn parse_uint(s: &[char], pos: &mut usize) -> Result<u64> {
    let start = *pos;
    while *pos < s.len() && s[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::Parse(format!("expected a number at offset {start}")));
    }
    s[start..*pos]
        .iter()
        .collect::<String>()
        .parse()
        .map_err(|_| Error::Parse("number too large".into()))
}

fn parse_coef(field: &Field, s: &[char], pos: &mut usize) -> Result<(FieldElem, bool)> {
    if *pos < s.len() && s[*pos] == '[' {
        *pos += 1;
        let mut digits = Vec::new();
        loop {
            let neg = *pos < s.len() && s[*pos] == '-';
            if neg {
                *pos += 1;
            }
            let v = parse_uint(s, pos)?;
            let p = field.characteristic();
            let v = if neg { (p - v % p) % p } else { v % p };
            digits.push(v);
            match s.get(*pos) {
                Some(',') => *pos += 1,
                Some(']') => {
                    *pos += 1;
                    break;
                }
                _ => return Err(Error::Parse("unterminated coefficient vector".into())),
            }
        }
        return Ok((field.from_flat(&digits)?, true));
    }
    if *pos < s.len() && s[*pos].is_ascii_digit() {
        let v = parse_uint(s, pos)?;
        return Ok((field.from_u64(v % field.characteristic()), true));
    }
    Ok((field.one(), false))
}

/// Polynomial over the prime field of `field`'s tower, printed in human form.
pub fn format_poly(f: &Poly) -> String {
    f.to_string()
}
