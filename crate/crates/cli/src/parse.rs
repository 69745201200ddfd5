//! The Λ-spec mini-language.
//!
//! ```text
//! spec     := preset | list
//! preset   := "gls" | "exp" | "geom"
//! list     := "[" rational ("," rational)* "]"     (λ₂, λ₃, …)
//! rational := integer | integer "/" positive-integer
//! ```
//!
//! Whitespace is allowed between tokens.

use glsv_core::solver::{LambdaSpec, Preset};
use glsv_core::Rational;
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("at byte {offset}: expected {expected}")]
    Syntax { offset: usize, expected: &'static str },
    #[error("λ₂ must be nonzero")]
    ZeroLambda2,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, expected: &'static str) -> ParseError {
        ParseError::Syntax { offset: self.pos, expected }
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn digits(&mut self, expected: &'static str) -> Result<BigInt, ParseError> {
        let d = self.take_while(|b| b.is_ascii_digit());
        if d.is_empty() {
            return Err(self.err(expected));
        }
        Ok(d.parse().expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let negative = self.eat(b'-');
        let mut num = self.digits("integer")?;
        if negative {
            num = -num;
        }
        self.skip_ws();
        if !self.eat(b'/') {
            return Ok(Rational::from_integer(num));
        }
        self.skip_ws();
        let at = self.pos;
        let den = self.digits("positive integer")?;
        if den.is_zero() {
            return Err(ParseError::Syntax { offset: at, expected: "positive integer" });
        }
        Ok(Rational::new(num, den))
    }
}

pub fn parse_lambda(src: &str) -> Result<LambdaSpec, ParseError> {
    let mut c = Cursor { src, pos: 0 };
    c.skip_ws();
    let spec = if c.eat(b'[') {
        let mut coeffs = Vec::new();
        loop {
            c.skip_ws();
            coeffs.push(c.rational()?);
            c.skip_ws();
            if c.eat(b']') {
                break;
            }
            if !c.eat(b',') {
                return Err(c.err("',' or ']'"));
            }
        }
        LambdaSpec::explicit(coeffs).map_err(|_| ParseError::ZeroLambda2)?
    } else {
        let start = c.pos;
        let word = c.take_while(|b| b.is_ascii_alphanumeric() || b == b'_');
        match Preset::from_name(word) {
            Some(p) => LambdaSpec::Preset(p),
            None => return Err(ParseError::Syntax { offset: start, expected: "\"gls\", \"exp\", \"geom\" or '['" }),
        }
    };
    c.skip_ws();
    if c.pos != src.len() {
        return Err(c.err("end of input"));
    }
    Ok(spec)
}
