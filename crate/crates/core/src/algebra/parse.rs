//! Polynomial expression parser.
//!
//! ```text
//! expr    = [ "+" | "-" ] term { ( "+" | "-" ) term } ;
//! term    = factor { "*" factor } ;
//! factor  = "-" factor | atom [ "^" integer ] ;
//! atom    = integer | variable | "(" expr ")" ;
//! variable = letter { letter | digit | "_" | "'" } ;
//! ```
//!
//! Integer literals are reduced modulo the field characteristic.

use super::poly::{PolyRing, Polynomial};
use crate::error::{Error, Result};

pub fn parse_polynomial(text: &str, ring: &PolyRing) -> Result<Polynomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

/// Parses and additionally requires the result to be homogeneous.
pub fn parse_homogeneous(text: &str, ring: &PolyRing) -> Result<Polynomial> {
    let f = parse_polynomial(text, ring)?;
    if !f.is_homogeneous() {
        return Err(Error::Inhomogeneous(text.trim().to_string()));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a PolyRing,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let ring = self.ring;
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = ring.neg(&acc)?;
        }
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc = ring.add(&acc, &t)?;
            } else if self.eat(b'-') {
                let t = self.term()?;
                acc = ring.sub(&acc, &t)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = self.ring.mul(&acc, &f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        if self.eat(b'-') {
            let f = self.factor()?;
            return self.ring.neg(&f);
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let e = self.unsigned().ok_or_else(|| self.error("expected exponent"))?;
            if e > u8::MAX as u64 {
                self.pos = start;
                return Err(Error::ExponentOverflow);
            }
            return self.ring.pow(&base, e as u32);
        }
        Ok(base)
    }

    fn unsigned(&mut self) -> Option<u64> {
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(&c) = self.src.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            v = v.saturating_mul(10).saturating_add((c - b'0') as u64);
            self.pos += 1;
        }
        (self.pos > start).then_some(v)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let ring = self.ring;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                // reduce digit by digit so huge literals stay exact
                let p = ring.field().characteristic() as u64;
                let mut v = 0u64;
                while let Some(&c) = self.src.get(self.pos) {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    v = (v * 10 + (c - b'0') as u64) % p;
                    self.pos += 1;
                }
                Ok(ring.constant(v as i64))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while let Some(&c) = self.src.get(self.pos) {
                    if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                match ring.var_index(name) {
                    Some(v) => Ok(ring.variable(v)),
                    None => Err(Error::UnknownVariable { name: name.to_string(), pos: start }),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;

    fn ring(vars: &[&str]) -> PolyRing {
        PolyRing::new(FieldSpec::default_field(), vars.iter().map(|s| s.to_string()).collect())
            .unwrap()
    }

    #[test]
    fn binomial_relation() {
        let r = ring(&["w", "x", "y", "z"]);
        let f = parse_polynomial("w*x - y*z", &r).unwrap();
        assert_eq!(f.terms().len(), 2);
        assert_eq!(r.format(&f), "w*x - y*z");
        assert!(f.is_homogeneous());
    }

    #[test]
    fn zeroth_power_is_one() {
        let r = ring(&["x"]);
        assert_eq!(parse_polynomial("x^0", &r).unwrap(), r.constant(1));
    }

    #[test]
    fn unknown_variable() {
        let r = ring(&["x"]);
        match parse_polynomial("x + q", &r) {
            Err(Error::UnknownVariable { name, pos }) => {
                assert_eq!(name, "q");
                assert_eq!(pos, 4);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        let r = ring(&["x", "y"]);
        assert!(matches!(parse_polynomial("x +", &r), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_polynomial("(x", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x y", &r), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn homogeneity_check() {
        let r = ring(&["x", "y"]);
        assert!(matches!(parse_homogeneous("x^2 + y", &r), Err(Error::Inhomogeneous(_))));
        assert!(parse_homogeneous("x^2 + y*x", &r).is_ok());
    }

    #[test]
    fn nested_and_reduced() {
        let r = ring(&["x", "y"]);
        let f = parse_polynomial("-(x - y)^2 + 202*x + 3", &r).unwrap();
        assert_eq!(r.format(&f), "-x^2 + 2*x*y - y^2 + 3");
    }
}
