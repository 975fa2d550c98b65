//! Polynomial expressions such as `T^19+3*T^8+2`.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power ('*' power)*
//! power  := atom ['^' digits]
//! atom   := digits | 'T' | 'a' | '(' expr ')'
//! ```
//!
//! Integers are reduced mod `p`. The symbol `a` is the generator of `F_q`
//! over `F_p` and is only accepted when `q` is a proper prime power.

use std::fmt;
use std::sync::Arc;

use normform::{FieldSpec, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Arc<FieldSpec>,
}

impl Parser<'_> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> &[u8] {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.power()?;
        while self.eat(b'*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        if self.peek() == Some(b'-') {
            return self.error("negative exponent");
        }
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return self.error("expected an exponent");
        }
        let exp = std::str::from_utf8(digits)
            .ok()
            .and_then(|s| s.parse::<u32>().ok())
            .ok_or(ParseError {
                pos: start,
                message: "exponent too large".into(),
            })?;
        Ok(base.pow(exp))
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let field = self.field;
        match self.peek() {
            Some(b'T') => {
                self.pos += 1;
                Ok(Polynomial::t(field))
            }
            Some(b'a') => {
                if field.degree() == 1 {
                    return self.error("generator `a` needs --m greater than 1");
                }
                self.pos += 1;
                Ok(Polynomial::constant(field, field.generator()))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.error("expected `)`");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let p = field.characteristic();
                let value = self
                    .digits()
                    .iter()
                    .fold(0u64, |acc, &d| (acc * 10 + u64::from(d - b'0')) % p);
                Ok(Polynomial::constant(field, field.element(value)))
            }
            Some(c) => self.error(format!("unexpected `{}`", c as char)),
            None => self.error("unexpected end of input"),
        }
    }
}

pub fn parse_poly(text: &str, field: &Arc<FieldSpec>) -> Result<Polynomial, ParseError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        field,
    };
    let poly = parser.expr()?;
    if parser.peek().is_some() {
        return parser.error("trailing input");
    }
    Ok(poly)
}
