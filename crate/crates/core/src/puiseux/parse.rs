//! Text grammar for series:
//!
//! ```text
//! series   := ws [sign] term (sign term)* ws
//! term     := factor ('*' factor)*
//! factor   := int ['/' int] | 't' int ['^' exponent]
//! exponent := int | '(' int ['/' int] ')'
//! ```
//!
//! Whitespace is allowed between tokens. Repeated factors multiply.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::Zero;

use super::PuiseuxSeries;
use crate::scalars::{Field, Scalar};
use crate::{Error, Result};

/// Parses `text` as a series in `t1..t<nvars>` over `field`, with root
/// denominator `denom` and truncation order `order`.
pub fn parse_series(
    text: &str,
    nvars: usize,
    field: Field,
    denom: u64,
    order: Rational64,
) -> Result<PuiseuxSeries> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
        field,
        denom,
    };
    let mut out = PuiseuxSeries::zero(field, nvars, denom, order);
    parser.skip_ws();
    let mut first = true;
    loop {
        parser.skip_ws();
        let negative = match parser.peek() {
            Some(b'+') => {
                parser.pos += 1;
                false
            }
            Some(b'-') => {
                parser.pos += 1;
                true
            }
            None if !first => break,
            _ if first => false,
            _ => return Err(parser.error("expected '+' or '-'")),
        };
        first = false;
        let (c, exponent) = parser.term()?;
        let c = if negative { c.neg() } else { c };
        let m = out.encode(&exponent)?;
        out.insert(m, c);
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    field: Field,
    denom: u64,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::SyntaxError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn eat(&mut self, byte: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("ascii digits"))
    }

    fn small_int(&mut self) -> Result<i64> {
        let at = self.pos;
        let n = self.int()?;
        i64::try_from(n).map_err(|_| Error::SyntaxError {
            position: at,
            message: "integer too large".to_string(),
        })
    }

    fn term(&mut self) -> Result<(Scalar, Vec<Rational64>)> {
        let mut c = self.field.one();
        let mut exponent = vec![Rational64::zero(); self.nvars];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b't') => {
                    self.pos += 1;
                    let at = self.pos;
                    let index = self.small_int()? as usize;
                    if index == 0 || index > self.nvars {
                        self.pos = at;
                        return Err(Error::VariableOutOfRange {
                            index,
                            count: self.nvars,
                        });
                    }
                    let e = if self.eat(b'^') { self.exponent()? } else { 1.into() };
                    exponent[index - 1] += e;
                }
                Some(b) if b.is_ascii_digit() => {
                    let num = self.int()?;
                    let num = self.field.element_of_bigint(&num);
                    let value = if self.eat(b'/') {
                        let at = self.pos;
                        let den = self.int()?;
                        let den = self.field.element_of_bigint(&den);
                        num.div(&den).map_err(|e| match e {
                            Error::DivisionByZero => Error::SyntaxError {
                                position: at,
                                message: "zero denominator".to_string(),
                            },
                            other => other,
                        })?
                    } else {
                        num
                    };
                    c = c.mul_unchecked(&value);
                }
                _ => return Err(self.error("expected a coefficient or a variable")),
            }
            if !self.eat(b'*') {
                return Ok((c, exponent));
            }
        }
    }

    fn exponent(&mut self) -> Result<Rational64> {
        let e = if self.eat(b'(') {
            self.skip_ws();
            if self.peek() == Some(b'-') {
                return Err(self.error("negative exponents are not in the Puiseux ring"));
            }
            let num = self.small_int()?;
            let den = if self.eat(b'/') { self.small_int()? } else { 1 };
            if den == 0 {
                return Err(self.error("zero denominator"));
            }
            if !self.eat(b')') {
                return Err(self.error("expected ')'"));
            }
            Rational64::new(num, den)
        } else {
            Rational64::from_integer(self.small_int()?)
        };
        let den = *e.denom() as u64;
        if !self.denom.is_multiple_of(den) {
            return Err(Error::ExponentDenominatorExceedsN {
                denominator: den,
                root_denominator: self.denom,
            });
        }
        Ok(e)
    }
}
