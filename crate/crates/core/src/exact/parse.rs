//! Recursive-descent parser for the text form of [`ParamScalar`].
//!
//! Accepts `+ - * / ^`, parentheses, integer literals and the identifiers
//! `beta`, `lambda`, `u`. Everything [`ParamScalar::to_text`] prints parses
//! back to the same value.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::mpoly::Var;
use super::param::ParamScalar;
use crate::error::{Error, Result};

pub fn parse_param(s: &str) -> Result<ParamScalar> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ParamScalar> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ParamScalar> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.try_div(&d)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ParamScalar> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<ParamScalar> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse::<BigInt>()
            .map_err(|_| self.error("bad integer"))
    }

    fn atom(&mut self) -> Result<ParamScalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(ParamScalar::from_rational(BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Var::from_name(name)
                    .map(ParamScalar::var)
                    .ok_or_else(|| Error::Parse(format!("unknown symbol '{name}'")))
            }
            _ => Err(self.error("unexpected token")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::param::{half_beta, p};

    #[test]
    fn parses_fraction_form() {
        let v = parse_param("(beta^2-4)/(2*lambda)").unwrap();
        let expected = &(&ParamScalar::beta().pow(2) - &p(4)) / &(&ParamScalar::lambda() * &p(2));
        assert_eq!(v, expected);
    }

    #[test]
    fn precedence_and_unary_minus() {
        assert_eq!(parse_param("1/2*beta").unwrap(), half_beta());
        assert_eq!(parse_param("-u^2").unwrap(), -ParamScalar::u().pow(2));
        assert_eq!(parse_param("2 - 3 - 4").unwrap(), p(-5));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_param("beta +").is_err());
        assert!(parse_param("gamma").is_err());
        assert!(parse_param("1/0").is_err());
        assert!(parse_param("(beta").is_err());
    }

    #[test]
    fn canonical_text_round_trips() {
        let v = &(&(&ParamScalar::beta() * &ParamScalar::lambda()) - &p(3))
            / &(&ParamScalar::u().scale(&BigRational::new(3.into(), 2.into())) + &half_beta());
        let text = v.to_text();
        let back = parse_param(&text).unwrap();
        assert_eq!(back, v);
        assert_eq!(back.to_text(), text);
    }
}
