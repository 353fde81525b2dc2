//! Parsing of elements and basis symbols from the textual form that
//! [`Element`](crate::element::Element) prints.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! element := sign? term ((+|-) term)* | 0
//! term    := (rational *)? generator | 0
//! rational:= int (/ posint)?
//! generator := (L|M|N)(int) | Y(odd/2) | CL | CLN | CN
//! ```
//!
//! The parser accepts exactly what `Element`'s `Display` produces
//! (round-trip guaranteed) plus harmless generalizations such as
//! redundant whitespace and signed coefficients after separators.

use crate::element::Element;
use crate::rational::Rational;
use crate::symbol::{BasisSymbol, Kind};
use std::fmt;

/// Why parsing failed, with the byte position of the offence.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedEnd,
    UnexpectedChar(char),
    BadInteger,
    UnknownGenerator(String),
    IndexParity(String),
    TrailingInput,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: ", self.position)?;
        match &self.kind {
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::BadInteger => write!(f, "malformed integer"),
            ParseErrorKind::UnknownGenerator(name) => {
                write!(f, "unknown generator {name:?} (expected L, M, N, Y, CL, CLN or CN)")
            }
            ParseErrorKind::IndexParity(detail) => write!(f, "{detail}"),
            ParseErrorKind::TrailingInput => write!(f, "trailing input after element"),
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser { bytes: input.as_bytes(), pos: 0 }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { position: self.pos, kind }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, want: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(b) if b == want => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(self.error(ParseErrorKind::UnexpectedChar(b as char))),
            None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
        }
    }

    /// A signed integer literal.
    fn integer(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'+') | Some(b'-')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(ParseError { position: start, kind: ParseErrorKind::BadInteger });
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| ParseError { position: start, kind: ParseErrorKind::BadInteger })
    }

    /// `int` or `int/posint`.
    fn rational(&mut self) -> Result<Rational, ParseError> {
        let num = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den_pos = self.pos;
            let den = self.integer()?;
            if den <= 0 {
                return Err(ParseError { position: den_pos, kind: ParseErrorKind::BadInteger });
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_int(num))
        }
    }

    /// A generator name plus its index.
    fn generator(&mut self) -> Result<BasisSymbol, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_uppercase()) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii")
            .to_string();
        match name.as_str() {
            "CL" => return Ok(BasisSymbol::central(Kind::CL)),
            "CLN" => return Ok(BasisSymbol::central(Kind::CLN)),
            "CN" => return Ok(BasisSymbol::central(Kind::CN)),
            "L" | "M" | "N" | "Y" => {}
            _ => {
                return Err(ParseError {
                    position: start,
                    kind: ParseErrorKind::UnknownGenerator(name),
                })
            }
        }
        self.skip_ws();
        self.expect(b'(')?;
        self.skip_ws();
        let idx_pos = self.pos;
        let idx = self.integer()?;
        self.skip_ws();
        let symbol = if name == "Y" {
            self.expect(b'/')?;
            self.skip_ws();
            let den_pos = self.pos;
            let den = self.integer()?;
            if den != 2 {
                return Err(ParseError {
                    position: den_pos,
                    kind: ParseErrorKind::IndexParity(
                        "half-integer indices must be written over 2".to_string(),
                    ),
                });
            }
            if idx % 2 == 0 {
                return Err(ParseError {
                    position: idx_pos,
                    kind: ParseErrorKind::IndexParity(
                        "Y takes half-integer indices: the numerator must be odd".to_string(),
                    ),
                });
            }
            BasisSymbol::new(Kind::Y, idx).expect("odd index")
        } else {
            let kind = match name.as_str() {
                "L" => Kind::L,
                "M" => Kind::M,
                _ => Kind::N,
            };
            BasisSymbol::integer(kind, idx)
        };
        self.skip_ws();
        self.expect(b')')?;
        Ok(symbol)
    }

    /// One term: an optional coefficient, then a generator; or a
    /// literal zero contribution.
    fn term(&mut self, sign_negative: bool) -> Result<Element, ParseError> {
        self.skip_ws();
        let coeff = match self.peek() {
            Some(b) if b.is_ascii_digit() || b == b'+' || b == b'-' => {
                let c = self.rational()?;
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.skip_ws();
                    c
                } else if c.is_zero() {
                    // A bare zero term contributes nothing.
                    return Ok(Element::zero());
                } else {
                    return match self.peek() {
                        Some(b) => Err(self.error(ParseErrorKind::UnexpectedChar(b as char))),
                        None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
                    };
                }
            }
            Some(_) => Rational::one(),
            None => return Err(self.error(ParseErrorKind::UnexpectedEnd)),
        };
        let symbol = self.generator()?;
        let coeff = if sign_negative { -&coeff } else { coeff };
        Ok(Element::term(symbol, coeff))
    }

    fn element(&mut self) -> Result<Element, ParseError> {
        self.skip_ws();
        let mut negative = false;
        if self.peek() == Some(b'-') {
            // A leading minus applies to the first term only; the
            // coefficient itself may not repeat the sign, so look
            // ahead: "-4*L(0)" parses the sign inside the rational.
            // We treat the sign uniformly by peeking at what follows.
            let save = self.pos;
            self.pos += 1;
            self.skip_ws();
            if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                // Let the rational parser consume the sign.
                self.pos = save;
            } else {
                negative = true;
            }
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let mut out = self.term(negative)?;
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term(false)?;
                    out = &out + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term(true)?;
                    out = &out + &t;
                }
                Some(b) => return Err(self.error(ParseErrorKind::UnexpectedChar(b as char))),
            }
        }
        Ok(out)
    }
}

/// Parses an element in the same textual form that `Element` prints.
pub fn parse_element(input: &str) -> Result<Element, ParseError> {
    let mut p = Parser::new(input);
    let out = p.element()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error(ParseErrorKind::TrailingInput));
    }
    Ok(out)
}

/// Parses a single basis symbol, e.g. `"L(-2)"`, `"Y(3/2)"`, `"CLN"`.
pub fn parse_symbol(input: &str) -> Result<BasisSymbol, ParseError> {
    let mut p = Parser::new(input);
    p.skip_ws();
    let s = p.generator()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error(ParseErrorKind::TrailingInput));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbols() {
        assert_eq!(parse_symbol("L(-2)").unwrap().to_string(), "L(-2)");
        assert_eq!(parse_symbol(" Y( 3 / 2 ) ").unwrap().to_string(), "Y(3/2)");
        assert_eq!(parse_symbol("CLN").unwrap(), BasisSymbol::central(Kind::CLN));
        assert!(parse_symbol("Q(1)").is_err());
        assert!(parse_symbol("L(1/2)").is_err());
        let err = parse_symbol("Y(2/2)").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::IndexParity(_)));
        let err = parse_symbol("Y(3/4)").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::IndexParity(_)));
        assert!(parse_symbol("L(2)x").is_err());
    }

    #[test]
    fn elements() {
        let e = parse_element("-4*L(0) + 1/2*Y(3/2) - 1/3*CL").unwrap();
        assert_eq!(e.to_string(), "-4*L(0) + 1/2*Y(3/2) - 1/3*CL");
        assert_eq!(parse_element("0").unwrap(), Element::zero());
        assert_eq!(parse_element(" 0 ").unwrap(), Element::zero());
        // Leading bare minus on a unit-coefficient term.
        let e = parse_element("-L(1)").unwrap();
        assert_eq!(e.to_string(), "-L(1)");
        // Like terms merge; zero sums vanish.
        let e = parse_element("L(1) - L(1)").unwrap();
        assert!(e.is_zero());
        let e = parse_element("2*M(3)+M(3)").unwrap();
        assert_eq!(e.to_string(), "3*M(3)");
        // Zero terms are allowed and ignored.
        let e = parse_element("L(2) + 0").unwrap();
        assert_eq!(e.to_string(), "L(2)");
        assert_eq!(parse_element("0*N(5)").unwrap(), Element::zero());
    }

    #[test]
    fn error_positions() {
        let err = parse_element("L(0) % M(1)").unwrap_err();
        assert_eq!(err.position, 5);
        assert!(matches!(err.kind, ParseErrorKind::UnexpectedChar('%')));
        let err = parse_element("").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnexpectedEnd));
        let err = parse_element("3*").unwrap_err();
        assert!(matches!(
            err.kind,
            ParseErrorKind::UnknownGenerator(_) | ParseErrorKind::UnexpectedEnd
        ));
        let err = parse_element("5").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnexpectedEnd));
        // Display carries the position.
        assert!(err.to_string().contains("at byte"));
    }

    #[test]
    fn display_round_trip_spot_checks() {
        for text in [
            "L(0)",
            "-L(-1) + L(1)",
            "1/2*M(-3) - 2/7*N(0) + Y(-5/2)",
            "CL - CLN + CN",
            "-3*Y(1/2)",
        ] {
            let e = parse_element(text).unwrap();
            assert_eq!(e.to_string(), text);
            let again = parse_element(&e.to_string()).unwrap();
            assert_eq!(again, e);
        }
    }
}
