//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+'|'-') unary | power
//! power  := base ('^' nat)?
//! base   := 'x' | 'y' | 'z' | int | int '/' int | '(' expr ')'
//! ```
//!
//! Unary signs are accepted so that printed output (which may start with `-`)
//! parses back.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{Rational, TriPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character '{0}'")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown identifier '{0}'")]
    UnknownIdentifier(String),
    #[error("exponent must be a non-negative integer literal")]
    BadExponent,
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
}

/// Syntax error with the byte offset at which it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

/// Parses `text` into canonical sparse form.
pub fn parse_poly(text: &str) -> Result<TriPoly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(e),
        Some(c) => Err(p.err(ParseErrorKind::UnexpectedChar(c as char))),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.pos,
            kind,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_tok(&mut self) -> Option<u8> {
        self.skip_ws();
        self.peek()
    }

    fn expr(&mut self) -> Result<TriPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek_tok() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<TriPoly, ParseError> {
        let mut acc = self.unary()?;
        while self.peek_tok() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<TriPoly, ParseError> {
        match self.peek_tok() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<TriPoly, ParseError> {
        let base = self.base()?;
        if self.peek_tok() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                self.pos = start;
                return Err(self.err(ParseErrorKind::BadExponent));
            }
            let e: u32 = digits.parse().map_err(|_| ParseError {
                position: start,
                kind: ParseErrorKind::BadExponent,
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<TriPoly, ParseError> {
        let c = self.peek_tok().ok_or_else(|| self.err(ParseErrorKind::UnexpectedEnd))?;
        match c {
            b'(' => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek_tok() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(e)
                    }
                    Some(c) => Err(self.err(ParseErrorKind::UnexpectedChar(c as char))),
                    None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
                }
            }
            b'0'..=b'9' => {
                let num: BigInt = self.digits().parse().expect("digit run");
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.digits();
                    if den.is_empty() {
                        return match self.peek() {
                            Some(c) => Err(self.err(ParseErrorKind::UnexpectedChar(c as char))),
                            None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
                        };
                    }
                    let den: BigInt = den.parse().expect("digit run");
                    if den.is_zero() {
                        return Err(ParseError {
                            position: at,
                            kind: ParseErrorKind::ZeroDenominator,
                        });
                    }
                    return Ok(TriPoly::constant(Rational::new(num, den)));
                }
                Ok(TriPoly::constant(Rational::from_integer(num)))
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let ident = &self.src[start..self.pos];
                match ident {
                    b"x" => Ok(TriPoly::var(Var::X)),
                    b"y" => Ok(TriPoly::var(Var::Y)),
                    b"z" => Ok(TriPoly::var(Var::Z)),
                    _ => Err(ParseError {
                        position: start,
                        kind: ParseErrorKind::UnknownIdentifier(String::from_utf8_lossy(ident).into_owned()),
                    }),
                }
            }
            _ => {
                // report the whole UTF-8 character rather than a stray byte
                let ch = std::str::from_utf8(&self.src[self.pos..])
                    .ok()
                    .and_then(|s| s.chars().next())
                    .unwrap_or(c as char);
                Err(self.err(ParseErrorKind::UnexpectedChar(ch)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{q, Monomial};

    #[test]
    fn parses_the_conic() {
        let p = parse_poly("x^2+y^2-2*z^2").unwrap();
        let expected = TriPoly::from_terms([
            (Monomial::new(2, 0, 0), q(1)),
            (Monomial::new(0, 2, 0), q(1)),
            (Monomial::new(0, 0, 2), q(-2)),
        ]);
        assert_eq!(p, expected);
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(parse_poly("(x-z)*(x+z)").unwrap(), parse_poly("x^2 - z^2").unwrap());
    }

    #[test]
    fn cancellation() {
        assert!(parse_poly("x - x").unwrap().is_zero());
    }

    #[test]
    fn rational_literals() {
        let p = parse_poly("3/6*x").unwrap();
        assert_eq!(p.coeff(&Monomial::new(1, 0, 0)), Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn error_positions() {
        let e = parse_poly("x + w").unwrap_err();
        assert_eq!(e.position, 4);
        assert_eq!(e.kind, ParseErrorKind::UnknownIdentifier("w".into()));

        let e = parse_poly("x^y").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::BadExponent);
        assert_eq!(e.position, 2);

        let e = parse_poly("x^-1").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::BadExponent);

        let e = parse_poly("(x+y").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);

        let e = parse_poly("x y").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedChar('y'));
        assert_eq!(e.position, 2);

        let e = parse_poly("1/0*x").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ZeroDenominator);

        assert_eq!(parse_poly("").unwrap_err().kind, ParseErrorKind::UnexpectedEnd);
    }

    #[test]
    fn print_parse_fixed_point() {
        for s in ["-x^3 + 1/2*x*y*z - 7", "(x+y+z)^4", "0", "-(x-2*y)^3*(z+1)"] {
            let p = parse_poly(s).unwrap();
            let printed = p.to_string();
            let again = parse_poly(&printed).unwrap();
            assert_eq!(p, again);
            assert_eq!(printed, again.to_string());
        }
    }
}
