//! Text form of polynomials.
//!
//! ```text
//! poly    := ['-'] term (('+' | '-') term)*
//! term    := coeff | coeff '*' powprod | powprod
//! powprod := varpow ('*' varpow)*
//! varpow  := ident ['^' uint]
//! coeff   := int ['/' uint]
//! ```
//!
//! Whitespace is ignored. Printing produces the same grammar, terms in
//! descending term order, so parsing printed output is the identity.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;
use crate::ring::PolynomialRing;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
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

    fn malformed(&self, what: &str) -> Error {
        Error::MalformedExpression(format!("{what} at offset {}", self.pos))
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.malformed("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("ascii digits parse"))
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier"))
        } else {
            Err(self.malformed("expected a variable"))
        }
    }

    /// `int ['/' uint]`, the sign is handled by the caller.
    fn coeff(&mut self) -> Result<BigRational> {
        let num = self.uint()?;
        if self.eat(b'/') {
            let den = self.uint()?;
            if den.is_zero() {
                return Err(Error::DivisorNotInvertible("0".into()));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn varpow(&mut self, ring: &PolynomialRing, exps: &mut [u32]) -> Result<()> {
        let name = self.ident()?;
        let idx = ring
            .variable_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut e = 1u32;
        if self.eat(b'^') {
            if self.peek() == Some(b'-') {
                return Err(Error::NegativeExponent(self.pos));
            }
            let v = self.uint()?;
            e = u32::try_from(v).map_err(|_| self.malformed("exponent too large"))?;
        }
        exps[idx] += e;
        Ok(())
    }

    fn term(&mut self, ring: &PolynomialRing) -> Result<(Monomial, BigRational)> {
        let mut exps = vec![0u32; ring.nvars()];
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.coeff()?;
                if !self.eat(b'*') {
                    return Ok((Monomial::new(exps), c));
                }
                c
            }
            _ => BigRational::one(),
        };
        self.varpow(ring, &mut exps)?;
        while self.eat(b'*') {
            self.varpow(ring, &mut exps)?;
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn poly(&mut self, ring: &Arc<PolynomialRing>) -> Result<Polynomial> {
        let mut terms = Vec::new();
        let mut negative = self.eat(b'-');
        loop {
            let (m, c) = self.term(ring)?;
            terms.push((m, if negative { -c } else { c }));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                None => break,
                Some(_) => return Err(self.malformed("unexpected character")),
            }
        }
        Polynomial::from_terms(ring, terms)
    }
}

/// Parse `text` as an element of `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<PolynomialRing>) -> Result<Polynomial> {
    let mut parser = Parser::new(text);
    if parser.peek().is_none() {
        return Err(Error::MalformedExpression("empty expression".into()));
    }
    parser.poly(ring)
}

/// Parse a scalar `['-'] int ['/' uint]` into canonical field form.
pub fn parse_scalar(text: &str, field: Field) -> Result<Scalar> {
    let mut parser = Parser::new(text);
    let negative = parser.eat(b'-');
    let c = parser.coeff()?;
    if parser.peek().is_some() {
        return Err(parser.malformed("trailing characters"));
    }
    field.from_rational(&if negative { -c } else { c })
}

/// Variable power product, `1` for the empty product.
pub fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .zip(names)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, name)| {
            if e == 1 {
                name.clone()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.ring().variables();
        let field = self.field();
        for (i, (m, c)) in self.terms().iter().enumerate() {
            let negative = c.is_negative();
            if negative {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{}", field.format_scalar(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", format_monomial(m, names))?;
            } else {
                write!(f, "{}*{}", field.format_scalar(&abs), format_monomial(m, names))?;
            }
        }
        Ok(())
    }
}
