//! Recursive-descent parser for polynomial text such as `x^4 - 2*(x+1)^2 + 9/2`.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/')? unary)*`,
//! `unary := ('-'|'+') unary | power`, `power := atom ('^' int)?`,
//! `atom := int | var | '(' expr ')'`. Division is only allowed by constants.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

use super::qpoly::QPoly;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    var: u8,
}

pub fn parse_poly(text: &str, var: char) -> Result<QPoly> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, var: var as u8 };
    p.skip_ws();
    if p.pos == p.s.len() {
        return Err(p.err("empty input"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<QPoly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    match d.degree() {
                        Some(0) => acc = acc.scale(&d.coeffs()[0].recip()),
                        _ => return Err(Error::Parse { pos: at, msg: "division by a non-constant".into() }),
                    }
                }
                // implicit multiplication: `2x`, `3(x+1)`
                Some(c) if c == self.var || c == b'(' || c.is_ascii_digit() => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<QPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.uint()?;
            let k: usize = k.try_into().map_err(|_| self.err("exponent too large"))?;
            if k > 100_000 {
                return Err(self.err("exponent too large"));
            }
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(txt.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<QPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c == self.var => {
                self.pos += 1;
                Ok(QPoly::x())
            }
            Some(c) if c.is_ascii_digit() => Ok(QPoly::constant(BigRational::from_integer(self.uint()?))),
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
