//! Text rendering and parsing. Terms are printed from the greatest monomial down, e.g.
//! `-q^5 - q`, `3/2*q^2*E^-1 + 1`; fractions print as `(num)/(den)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{LaurentFraction, LaurentPoly, PolyError, Var};

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>, PolyError> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => {}
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            d if d.is_ascii_digit() => {
                let start = i;
                while i + 1 < cs.len() && cs[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = cs[start..=i].iter().collect();
                out.push(Tok::Num(digits.parse().unwrap()));
            }
            _ => {
                let v = Var::from_name(&c.to_string())
                    .ok_or_else(|| PolyError::Parse(format!("unexpected character {c:?}")))?;
                out.push(Tok::Var(v));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err<T>(&self, msg: &str) -> Result<T, PolyError> {
        Err(PolyError::Parse(format!("{msg} at token {}", self.pos)))
    }

    fn expr(&mut self) -> Result<LaurentFraction, PolyError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.next();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentFraction, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.next();
                    let d = self.factor()?;
                    acc = acc.checked_div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn exponent(&mut self) -> Result<i32, PolyError> {
        let neg = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                true
            }
            _ => false,
        };
        match self.next() {
            Some(Tok::Num(n)) => {
                let e: i32 = n
                    .try_into()
                    .map_err(|_| PolyError::Parse("exponent out of range".into()))?;
                Ok(if neg { -e } else { e })
            }
            _ => self.err("expected exponent"),
        }
    }

    fn factor(&mut self) -> Result<LaurentFraction, PolyError> {
        let base = match self.next() {
            Some(Tok::Num(n)) => {
                LaurentFraction::from(LaurentPoly::constant(BigRational::from_integer(n)))
            }
            Some(Tok::Var(v)) => LaurentFraction::var(v, 1),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.next() != Some(Tok::RParen) {
                    return self.err("expected ')'");
                }
                e
            }
            Some(Tok::Minus) => return Ok(-self.factor()?),
            _ => return self.err("expected a number, variable or '('"),
        };
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            let e = self.exponent()?;
            return base.pow(e);
        }
        Ok(base)
    }
}

/// Parses the rendering grammar (and general `+ - * / ^ ()` expressions over it).
pub fn parse_fraction(s: &str) -> Result<LaurentFraction, PolyError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(PolyError::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

pub fn parse_poly(s: &str) -> Result<LaurentPoly, PolyError> {
    let f = parse_fraction(s)?;
    f.as_poly()
        .cloned()
        .ok_or_else(|| PolyError::Parse("expected a Laurent polynomial, got a fraction".into()))
}

impl std::str::FromStr for LaurentPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, PolyError> {
        parse_poly(s)
    }
}

impl std::str::FromStr for LaurentFraction {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, PolyError> {
        parse_fraction(s)
    }
}
