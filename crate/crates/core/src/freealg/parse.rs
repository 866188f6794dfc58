//! Recursive-descent parser for polynomial expressions:
//!
//! ```text
//! expr     := [sign] term { ("+"|"-") term } ;
//! term     := factor { "*" factor } ;
//! factor   := atom [ "^" signed_int ] ;
//! atom     := "x"|"y"|"a"|"b"|"q"|"p"|"r"| rational | "(" expr ")" ;
//! rational := integer [ "/" integer ] ;
//! ```
//!
//! `q` and `p` evaluate to the coordinates of the supplied curve point and
//! `r` to the sixth root of unity. Only the bare generator `a` accepts a
//! negative exponent, which produces powers of `a^-1`. The optional leading
//! sign lets printed polynomials parse back.

use num_bigint::BigInt;

use super::poly::NcPoly;
use super::word::{Letter, Word};
use crate::error::ParseError;
use crate::scalar::{CurvePoint, Rational, Scalar};

pub fn parse_expr(text: &str, point: &CurvePoint) -> Result<NcPoly, ParseError> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0, point };
    let value = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error(&["\"+\"", "\"-\"", "\"*\"", "end of input"]));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    point: &'a CurvePoint,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let found = std::str::from_utf8(&self.src[self.pos.min(self.src.len())..])
            .ok()
            .and_then(|s| s.chars().next());
        ParseError {
            position: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    fn expr(&mut self) -> Result<NcPoly, ParseError> {
        let negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
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

    fn term(&mut self) -> Result<NcPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NcPoly, ParseError> {
        let bare_a = self.peek() == Some(b'a');
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let exp_pos = self.pos;
        let exp = self.signed_int()?;
        if exp < 0 {
            if !bare_a {
                self.pos = exp_pos;
                return Err(self.error(&["nonnegative exponent (only a admits a^-n)"]));
            }
            return Ok(NcPoly::word(Word::power(Letter::G, exp.unsigned_abs() as usize)));
        }
        let n = u32::try_from(exp).map_err(|_| {
            self.pos = exp_pos;
            self.error(&["exponent below 2^32"])
        })?;
        Ok(base.pow(n))
    }

    fn atom(&mut self) -> Result<NcPoly, ParseError> {
        const EXPECTED: &[&str] =
            &["\"x\"", "\"y\"", "\"a\"", "\"b\"", "\"q\"", "\"p\"", "\"r\"", "integer", "\"(\""];
        let Some(c) = self.peek() else {
            return Err(self.error(EXPECTED));
        };
        let letter = |l| Ok(NcPoly::letter(l));
        match c {
            b'x' => {
                self.pos += 1;
                letter(Letter::X)
            }
            b'y' => {
                self.pos += 1;
                letter(Letter::Y)
            }
            b'a' => {
                self.pos += 1;
                letter(Letter::A)
            }
            b'b' => {
                self.pos += 1;
                letter(Letter::B)
            }
            b'q' => {
                self.pos += 1;
                Ok(NcPoly::constant(self.point.q().clone()))
            }
            b'p' => {
                self.pos += 1;
                Ok(NcPoly::constant(self.point.p().clone()))
            }
            b'r' => {
                self.pos += 1;
                Ok(NcPoly::constant(Scalar::root()))
            }
            b'(' => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error(&["\")\"", "\"+\"", "\"-\"", "\"*\""]));
                }
                self.pos += 1;
                Ok(inner)
            }
            b'0'..=b'9' => {
                let num = self.integer()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den_pos = self.pos;
                    let den = self.integer()?;
                    let value = Rational::new(num, den).map_err(|_| {
                        self.pos = den_pos;
                        self.error(&["nonzero denominator"])
                    })?;
                    return Ok(NcPoly::constant(value.into()));
                }
                Ok(NcPoly::constant(Rational::from_integer(num).into()))
            }
            _ => Err(self.error(EXPECTED)),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(&["integer"]));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit run parses"))
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let start = self.pos;
        let n = self.integer()?;
        let n = i64::try_from(n).map_err(|_| {
            self.pos = start;
            self.error(&["exponent of machine size"])
        })?;
        Ok(if negative { -n } else { n })
    }
}
