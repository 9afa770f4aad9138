//! Reader for the textual forms produced by `Polynomial::render` and
//! `RatFun::render`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Exponents, Polynomial, Rational, RingMode};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(Rational),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| -> String {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect()
    };
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                i += 1;
            }
            '(' => {
                tokens.push(Token::Open);
                i += 1;
            }
            ')' => {
                tokens.push(Token::Close);
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let numer: BigInt = digits(&mut i).parse().map_err(|_| Error::Parse(text.into()))?;
                // `p/q` written without spaces is a literal fraction
                if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    let denom: BigInt = digits(&mut i).parse().map_err(|_| Error::Parse(text.into()))?;
                    if denom.is_zero() {
                        return Err(Error::Parse(format!("zero denominator in {text}")));
                    }
                    tokens.push(Token::Num(Rational::new(numer, denom)));
                } else {
                    tokens.push(Token::Num(Rational::from_integer(numer)));
                }
            }
            a if a.is_ascii_alphabetic() => {
                i += 1;
                let idx = digits(&mut i);
                let idx: usize = idx
                    .parse()
                    .map_err(|_| Error::Parse(format!("variable without index in {text}")))?;
                tokens.push(Token::Var(idx));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    mode: RingMode,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            other => Err(Error::Parse(format!("expected {t:?}, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        match self.peek() {
            Some(Token::Minus) => {
                negate = true;
                self.pos += 1;
            }
            Some(Token::Plus) => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let k = self.signed_int()?;
        power(&base, k)
    }

    fn signed_int(&mut self) -> Result<i32> {
        let negative = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.next() {
            Some(Token::Num(r)) if r.is_integer() => {
                let v: i32 = r
                    .numer()
                    .try_into()
                    .map_err(|_| Error::Parse("exponent out of range".into()))?;
                Ok(if negative { -v } else { v })
            }
            other => Err(Error::Parse(format!("expected an integer exponent, found {other:?}"))),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.next() {
            Some(Token::Num(r)) => Ok(Polynomial::constant(self.mode, r)),
            Some(Token::Var(i)) => Polynomial::var(self.mode, i),
            Some(Token::Open) => {
                let inner = self.expr()?;
                self.expect(Token::Close)?;
                Ok(inner)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn done(&self) -> Result<()> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            Err(Error::Parse(format!("trailing input at token {}", self.pos)))
        }
    }
}

fn power(base: &Polynomial, k: i32) -> Result<Polynomial> {
    if k >= 0 {
        return Ok(base.pow(k as u32));
    }
    let (e, c) = base
        .as_monomial()
        .ok_or_else(|| Error::Parse("negative power of a non-monomial".into()))?;
    Polynomial::monomial(base.mode(), e.scale(k), num_traits::pow(c.recip(), k.unsigned_abs() as usize))
}

pub(crate) fn parse_polynomial(text: &str, mode: RingMode) -> Result<Polynomial> {
    let mut parser = Parser { tokens: tokenize(text)?, pos: 0, mode };
    let p = parser.expr()?;
    parser.done()?;
    Ok(p)
}

/// Parses `num` or `num / (1 - m1)(1 - m2)^k…`, returning the numerator and
/// the factor monomials with multiplicity.
pub(crate) fn parse_fraction(text: &str, mode: RingMode) -> Result<(Polynomial, Vec<Exponents>)> {
    let mut parser = Parser { tokens: tokenize(text)?, pos: 0, mode };
    let num = parser.expr()?;
    let mut factors = Vec::new();
    if parser.peek() == Some(&Token::Slash) {
        parser.pos += 1;
        while parser.peek() == Some(&Token::Open) {
            let group = parser.atom()?;
            let mult = if parser.peek() == Some(&Token::Caret) {
                parser.pos += 1;
                parser.signed_int()?
            } else {
                1
            };
            if mult < 1 {
                return Err(Error::Parse("denominator multiplicity must be positive".into()));
            }
            let m = one_minus_monomial_exponent(&group)?;
            for _ in 0..mult {
                factors.push(m.clone());
            }
        }
        if factors.is_empty() {
            return Err(Error::Parse("empty denominator".into()));
        }
    }
    parser.done()?;
    Ok((num, factors))
}

fn one_minus_monomial_exponent(p: &Polynomial) -> Result<Exponents> {
    let mut terms = p.terms();
    let bad = || Error::Parse(format!("denominator factor {p} is not of the form 1 - monomial"));
    let (e0, c0) = terms.next().ok_or_else(bad)?;
    let (e1, c1) = terms.next().ok_or_else(bad)?;
    if terms.next().is_some() {
        return Err(bad());
    }
    let minus_one = -Rational::one();
    if e0.is_zero() && c0.is_one() && *c1 == minus_one {
        Ok(e1.clone())
    } else if e1.is_zero() && c1.is_one() && *c0 == minus_one {
        Ok(e0.clone())
    } else {
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn fraction_literals_versus_division() {
        let m = RingMode::free(2);
        let p = parse_polynomial("3/2*x1 - 1/3", m).unwrap();
        assert_eq!(p.coefficient(&Exponents::unit(2, 1)), rat(3, 2));
        let (num, den) = parse_fraction("x2 / (1 - x2)(1 - x1*x2)^2", m).unwrap();
        assert_eq!(num, Polynomial::var(m, 2).unwrap());
        assert_eq!(den.len(), 3);
    }

    #[test]
    fn rejects_malformed_input() {
        let m = RingMode::free(2);
        assert!(parse_polynomial("x1 +", m).is_err());
        assert!(parse_polynomial("x3", m).is_err());
        assert!(parse_fraction("1 / (1 + x1)", m).is_err());
        assert!(parse_polynomial("(1 + x1)^-1", m).is_err());
    }
}
