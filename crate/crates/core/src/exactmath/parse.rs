//! Recursive-descent parser for polynomial expressions in `t`.
//!
//! ```text
//! expr     := ('+'|'-')? term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | 't' | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! Whitespace between tokens is ignored.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    BadExponent,
    ZeroDenominator,
}

/// Syntax error with the 1-based character column where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "column {}: unexpected '{c}'", self.column),
            ParseErrorKind::UnexpectedEnd => write!(f, "column {}: unexpected end of input", self.column),
            ParseErrorKind::BadExponent => {
                write!(f, "column {}: exponent must be a nonnegative integer", self.column)
            }
            ParseErrorKind::ZeroDenominator => write!(f, "column {}: zero denominator", self.column),
        }
    }
}

/// Parses and expands a polynomial expression.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    let poly = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(poly),
        Some(c) => Err(p.error(ParseErrorKind::UnexpectedChar(c))),
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { column: self.pos + 1, kind }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(c) => self.error(ParseErrorKind::UnexpectedChar(c)),
            None => self.error(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        self.skip_ws();
        let negate = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.base()?;
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error(ParseErrorKind::BadExponent));
        }
        let exp: u32 = digits
            .parse()
            .map_err(|_| ParseError { column: start + 1, kind: ParseErrorKind::BadExponent })?;
        self.skip_ws();
        if matches!(self.peek(), Some('/') | Some('.')) {
            return Err(self.error(ParseErrorKind::BadExponent));
        }
        Ok(base.pow(exp))
    }

    fn base(&mut self) -> Result<Poly, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('t') => {
                self.pos += 1;
                Ok(Poly::t())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.rational().map(Poly::constant),
            _ => Err(self.unexpected()),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let num: BigInt = self.digits().parse().expect("digits");
        self.skip_ws();
        if self.peek() != Some('/') {
            return Ok(Rational::from_integer(num));
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let den = self.digits();
        if den.is_empty() {
            return Err(self.unexpected());
        }
        let den: BigInt = den.parse().expect("digits");
        if den.is_zero() {
            return Err(ParseError { column: start + 1, kind: ParseErrorKind::ZeroDenominator });
        }
        Ok(Rational::new(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    #[test]
    fn expands_examples() {
        assert_eq!(parse_poly("t^2 - 2").unwrap(), Poly::from_ints(&[-2, 0, 1]));
        assert_eq!(parse_poly("(t-1)*(t+1)").unwrap(), Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(parse_poly("3/2*t^5").unwrap(), Poly::monomial(rat(3, 2), 5));
    }

    #[test]
    fn leading_sign_and_nesting() {
        assert_eq!(parse_poly("-t").unwrap(), Poly::from_ints(&[0, -1]));
        assert_eq!(parse_poly("2*(-3)").unwrap(), Poly::constant(int(-6)));
        assert_eq!(parse_poly(" ( t + 1 ) ^ 2 ").unwrap(), Poly::from_ints(&[1, 2, 1]));
        assert_eq!(parse_poly("t^0").unwrap(), Poly::one());
    }

    #[test]
    fn reports_positions() {
        let e = parse_poly("t + * 2").unwrap_err();
        assert_eq!(e, ParseError { column: 5, kind: ParseErrorKind::UnexpectedChar('*') });
        let e = parse_poly("(t + 1").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);
        let e = parse_poly("t x").unwrap_err();
        assert_eq!(e.column, 3);
        assert_eq!(parse_poly("").unwrap_err().kind, ParseErrorKind::UnexpectedEnd);
    }

    #[test]
    fn rejects_bad_exponents() {
        for s in ["t^-1", "t^t", "t^(2)", "t^1/2", "t^"] {
            assert_eq!(parse_poly(s).unwrap_err().kind, ParseErrorKind::BadExponent, "{s}");
        }
        assert_eq!(parse_poly("1/0").unwrap_err().kind, ParseErrorKind::ZeroDenominator);
    }
}
