//! Concrete syntax shared by ordinals (symbol `w`) and numerals (symbol `b`).
//!
//! ```text
//! ordinal  := "0" | sum
//! sum      := monomial { "+" monomial }
//! monomial := SYM "^" exp [ "*" nat ] | SYM [ "*" nat ] | nat
//! exp      := nat | SYM | "(" sum ")"
//! nat      := decimal digits, no leading zeros except "0"
//! ```
//!
//! Whitespace is accepted between tokens. Rendering puts `" + "` between the
//! top-level monomials and no spaces inside parenthesised exponents.

use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ordinal::{Monomial, Ordinal};
use crate::Natural;

pub(crate) fn parse_term(text: &str, symbol: u8) -> Result<Ordinal> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        symbol,
    };
    let term = parser.ordinal()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(term)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    symbol: u8,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// `"0"` or a sum of monomials, checked for canonical order.
    fn ordinal(&mut self) -> Result<Ordinal> {
        let start = self.pos;
        let parts = self.sum()?;
        if parts.len() == 1 && parts[0].0.is_zero() && parts[0].1.is_zero() {
            return Ok(Ordinal::zero());
        }
        let mut monomials = Vec::with_capacity(parts.len());
        for (exponent, coefficient) in parts {
            if coefficient.is_zero() {
                return Err(Error::NonCanonical(format!(
                    "zero coefficient in sum starting at position {start}"
                )));
            }
            monomials.push(Monomial::new(exponent, coefficient));
        }
        Ordinal::from_monomials(monomials)
    }

    fn sum(&mut self) -> Result<Vec<(Ordinal, Natural)>> {
        let mut parts = vec![self.monomial()?];
        while self.eat(b'+') {
            parts.push(self.monomial()?);
        }
        Ok(parts)
    }

    fn monomial(&mut self) -> Result<(Ordinal, Natural)> {
        match self.peek() {
            Some(c) if c == self.symbol => {
                self.pos += 1;
                let exponent = if self.eat(b'^') {
                    self.exponent()?
                } else {
                    Ordinal::one()
                };
                let coefficient = if self.eat(b'*') {
                    self.natural()?
                } else {
                    Natural::one()
                };
                Ok((exponent, coefficient))
            }
            Some(c) if c.is_ascii_digit() => Ok((Ordinal::zero(), self.natural()?)),
            Some(_) => Err(self.error("expected a monomial")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn exponent(&mut self) -> Result<Ordinal> {
        match self.peek() {
            Some(c) if c == self.symbol => {
                self.pos += 1;
                Ok(Ordinal::omega())
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::from_natural(self.natural()?)),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.ordinal()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(_) => Err(self.error("expected an exponent")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn natural(&mut self) -> Result<Natural> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = &self.bytes[start..self.pos];
        if digits.is_empty() {
            return Err(self.error("expected a number"));
        }
        if digits.len() > 1 && digits[0] == b'0' {
            return Err(Error::Syntax {
                position: start,
                message: "leading zero".into(),
            });
        }
        Ok(Natural::parse_bytes(digits, 10).expect("ascii digits"))
    }
}

pub(crate) fn render_term(term: &Ordinal, symbol: char) -> String {
    let mut out = String::new();
    write_sum(&mut out, term, symbol, " + ");
    out
}

fn write_sum(out: &mut String, term: &Ordinal, symbol: char, separator: &str) {
    if term.is_zero() {
        out.push('0');
        return;
    }
    for (idx, monomial) in term.monomials().iter().enumerate() {
        if idx > 0 {
            out.push_str(separator);
        }
        write_monomial(out, monomial, symbol);
    }
}

fn write_monomial(out: &mut String, monomial: &Monomial, symbol: char) {
    let exponent = monomial.exponent();
    if exponent.is_zero() {
        let _ = write!(out, "{}", monomial.coefficient());
        return;
    }
    out.push(symbol);
    if let Some(n) = exponent.as_natural() {
        if !n.is_one() {
            let _ = write!(out, "^{n}");
        }
    } else if exponent == &Ordinal::omega() {
        out.push('^');
        out.push(symbol);
    } else {
        out.push_str("^(");
        write_sum(out, exponent, symbol, "+");
        out.push(')');
    }
    if !monomial.coefficient().is_one() {
        let _ = write!(out, "*{}", monomial.coefficient());
    }
}
