//! Polynomial text grammar.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' digits)?
//! atom   := digits ('/' digits)? | ident | '(' expr ')'
//! ```
//!
//! Juxtaposition is rejected; products need an explicit `*`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Polynomial, Ring};
use crate::error::{Error, Result};

pub(super) fn parse_polynomial(ring: &Arc<Ring>, s: &str) -> Result<Polynomial> {
    let mut p = Parser {
        ring,
        src: s.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input (juxtaposition needs `*`)"));
    }
    Ok(out)
}

/// Identifiers in order of first appearance; used to infer a ring.
pub fn collect_identifiers(s: &str, out: &mut Vec<String>) {
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        if b[i].is_ascii_alphabetic() || b[i] == b'_' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            let id = &s[start..i];
            if !out.iter().any(|v| v == id) {
                out.push(id.to_string());
            }
        } else if b[i].is_ascii_digit() {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
        } else {
            i += 1;
        }
    }
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
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
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
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

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.digits()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let value = if self.eat(b'/') {
                    self.skip_ws();
                    let den = self.digits()?;
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    BigRational::new(num, den)
                } else {
                    BigRational::from_integer(num)
                };
                let value = self.ring.field().normalize(&value)?;
                Ok(Polynomial::constant(self.ring, &value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Polynomial::var(self.ring, name)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn ring() -> Arc<Ring> {
        Ring::rationals(&["a", "b", "c", "x0", "x1", "x2"])
    }

    #[test]
    fn grammar_examples() {
        let r = ring();
        let f = Polynomial::parse(&r, "x0*x2 - x1^2").unwrap();
        assert_eq!(f.to_string(), "x0*x2 - x1^2");
        let g = Polynomial::parse(&r, "1/2*a*b + c").unwrap();
        assert_eq!(g.to_string(), "1/2*a*b + c");
    }

    #[test]
    fn parentheses_expand() {
        let r = ring();
        let f = Polynomial::parse(&r, "b*(x0 - x1) + (a)^2").unwrap();
        assert_eq!(f.to_string(), "a^2 + b*x0 - b*x1");
    }

    #[test]
    fn juxtaposition_rejected() {
        assert!(Polynomial::parse(&ring(), "a b").is_err());
        assert!(Polynomial::parse(&ring(), "2a").is_err());
    }

    #[test]
    fn unknown_variable() {
        assert!(matches!(
            Polynomial::parse(&ring(), "a + zz"),
            Err(Error::UnknownVariable(v)) if v == "zz"
        ));
    }

    #[test]
    fn bad_denominators() {
        assert!(Polynomial::parse(&ring(), "1/0*a").is_err());
        let f5 = ring().with_field(FieldSpec::prime(5).unwrap());
        assert!(Polynomial::parse(&f5, "1/5*a").is_err());
        assert_eq!(Polynomial::parse(&f5, "1/2*a").unwrap().to_string(), "-2*a");
    }

    #[test]
    fn identifiers_in_order() {
        let mut v = Vec::new();
        collect_identifiers("x0*x2 - x1^2 + 3*x0", &mut v);
        assert_eq!(v, ["x0", "x2", "x1"]);
    }
}
