//! Sparse text form for polynomials: `c*t^e` terms joined by `+`/`-`.
//!
//! Canonical output lists terms by descending degree, drops unit
//! coefficients and writes rationals as `p/q`, e.g. `-3/2*t^3+t-5`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{RatPoly, Rational};
use crate::error::{Error, Result};

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(super) fn format_poly(p: &RatPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (e, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let mag = c.abs();
        if negative {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        match e {
            0 => out.push_str(&format_rational(&mag)),
            _ => {
                if !mag.is_one() {
                    out.push_str(&format_rational(&mag));
                    out.push('*');
                }
                out.push('t');
                if e > 1 {
                    out.push('^');
                    out.push_str(&e.to_string());
                }
            }
        }
    }
    out
}

struct Cursor<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(input: &'a str) -> Self {
        Cursor {
            input,
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, reason: impl Into<String>) -> Error {
        Error::Parse {
            input: self.input.to_string(),
            pos: self.pos,
            reason: reason.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(&self.input[start..self.pos])
    }

    fn unsigned_rational(&mut self) -> Result<Rational> {
        let num: BigInt = self.digits()?.parse().expect("digit run parses");
        if self.eat(b'/') {
            let at = self.pos;
            let den: BigInt = self.digits()?.parse().expect("digit run parses");
            if den.is_zero() {
                self.pos = at;
                return Err(self.error("zero denominator"));
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected character {:?}", c as char))),
        }
    }

    /// `t` optionally followed by `^e`.
    fn variable_power(&mut self) -> Result<usize> {
        if !self.eat(b't') {
            return Err(self.error("expected `t`"));
        }
        if self.eat(b'^') {
            let at = self.pos;
            return self.digits()?.parse().map_err(|_| {
                self.pos = at;
                self.error("exponent out of range")
            });
        }
        Ok(1)
    }

    fn term(&mut self) -> Result<(Rational, usize)> {
        match self.peek() {
            Some(b't') => Ok((Rational::one(), self.variable_power()?)),
            Some(c) if c.is_ascii_digit() => {
                let c = self.unsigned_rational()?;
                if self.eat(b'*') {
                    Ok((c, self.variable_power()?))
                } else {
                    Ok((c, 0))
                }
            }
            Some(c) => Err(self.error(format!("unexpected character {:?}", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses a polynomial such as `t^2+t+1` or `-3/2*t^3 + 5`.
pub fn parse_poly(input: &str) -> Result<RatPoly> {
    let mut cur = Cursor::new(input);
    let mut coeffs: Vec<Rational> = Vec::new();
    let mut first = true;
    loop {
        let negative = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') {
            false
        } else if first {
            false
        } else {
            break;
        };
        let (c, e) = cur.term()?;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, Rational::zero());
        }
        if negative {
            coeffs[e] -= c;
        } else {
            coeffs[e] += c;
        }
        first = false;
    }
    cur.finish()?;
    Ok(RatPoly::new(coeffs))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let mut cur = Cursor::new(input);
    let negative = cur.eat(b'-');
    let r = cur.unsigned_rational()?;
    cur.finish()?;
    Ok(if negative { -r } else { r })
}
