//! Parser for rational-function expressions such as `(1 - z)^2 / (1 - 3z + z^2)`.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | unary)*      juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ['^' ['-'] integer | '^' '(' ['-'] integer ')']
//! atom   := number | 'i' | identifier | '(' expr ')'
//! ```
//!
//! `i` is the imaginary unit; every other identifier is a variable.

use super::field::Field;
use super::gaussian::{parse_rational, GaussianRational};
use super::laurent::VarNames;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

const MAX_INPUT: usize = 10_000;
const MAX_DEPTH: usize = 128;
const MAX_EXPONENT: i64 = 512;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        match c {
            ' ' | '\t' | '\n' | '\r' => k += 1,
            '+' => {
                out.push(Token::Plus);
                k += 1
            }
            '-' | '−' => {
                out.push(Token::Minus);
                k += 1
            }
            '*' | '·' => {
                out.push(Token::Star);
                k += 1
            }
            '/' => {
                out.push(Token::Slash);
                k += 1
            }
            '^' => {
                out.push(Token::Caret);
                k += 1
            }
            '(' => {
                out.push(Token::LParen);
                k += 1
            }
            ')' => {
                out.push(Token::RParen);
                k += 1
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                    k += 1;
                }
                out.push(Token::Num(chars[start..k].iter().collect()));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = k;
                while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                out.push(Token::Ident(chars[start..k].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    names: &'a VarNames,
    depth: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(Error::Parse("expression nested too deeply".into()));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<RatFunc> {
        self.enter()?;
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.next();
                -self.term()?
            }
            Some(Token::Plus) => {
                self.next();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    acc = acc + self.term()?;
                }
                Some(Token::Minus) => {
                    self.next();
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.next();
                    acc = acc * self.unary()?;
                }
                Some(Token::Slash) => {
                    self.next();
                    let d = self.unary()?;
                    acc = acc
                        .checked_div(&d)
                        .ok_or_else(|| Error::Parse("division by zero".into()))?;
                }
                Some(Token::Num(_)) | Some(Token::Ident(_)) | Some(Token::LParen) => {
                    acc = acc * self.power()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.peek() == Some(&Token::Minus) {
            self.next();
            self.enter()?;
            let v = -self.unary()?;
            self.depth -= 1;
            return Ok(v);
        }
        self.power()
    }

    fn exponent(&mut self) -> Result<i64> {
        let parenthesized = self.peek() == Some(&Token::LParen);
        if parenthesized {
            self.next();
        }
        let negative = self.peek() == Some(&Token::Minus);
        if negative {
            self.next();
        }
        let e = match self.next() {
            Some(Token::Num(s)) => s
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("exponent '{s}' is not an integer")))?,
            other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
        };
        if parenthesized && self.next() != Some(Token::RParen) {
            return Err(Error::Parse("expected ')' after exponent".into()));
        }
        if e > MAX_EXPONENT {
            return Err(Error::Parse(format!("exponent {e} exceeds {MAX_EXPONENT}")));
        }
        Ok(if negative { -e } else { e })
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.next();
            let e = self.exponent()?;
            return base
                .pow(e)
                .ok_or_else(|| Error::Parse("negative power of zero".into()));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let n = self.nvars();
        match self.next() {
            Some(Token::Num(s)) => Ok(RatFunc::constant(
                n,
                GaussianRational::new(
                    parse_rational(&s)?,
                    num_rational::BigRational::from_integer(0.into()),
                ),
            )),
            Some(Token::Ident(name)) if name == "i" => {
                Ok(RatFunc::constant(n, GaussianRational::i()))
            }
            Some(Token::Ident(name)) => {
                let idx = self
                    .names
                    .0
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable '{name}'")))?;
                Ok(RatFunc::var(n, idx))
            }
            Some(Token::LParen) => {
                let v = self.expr()?;
                if self.next() != Some(Token::RParen) {
                    return Err(Error::Parse("expected ')'".into()));
                }
                Ok(v)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a rational-function expression.
///
/// With `names = None` the variables are the identifiers of the input in
/// order of first appearance; otherwise only the given names are accepted.
pub fn parse_ratfunc(input: &str, names: Option<&VarNames>) -> Result<(RatFunc, VarNames)> {
    if input.len() > MAX_INPUT {
        return Err(Error::Parse("expression too long".into()));
    }
    let tokens = tokenize(input)?;
    let names = match names {
        Some(n) => n.clone(),
        None => {
            let mut seen: Vec<String> = Vec::new();
            for t in &tokens {
                if let Token::Ident(s) = t {
                    if s != "i" && !seen.contains(s) {
                        seen.push(s.clone());
                    }
                }
            }
            VarNames(seen)
        }
    };
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        names: &names,
        depth: 0,
    };
    let v = p.expr()?;
    if p.pos != tokens.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok((v, names))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LaurentPoly;

    #[test]
    fn parses_zeta_of_cat_map() {
        let (f, names) = parse_ratfunc("(1 - z)^2 / (1 - 3z + z^2)", None).unwrap();
        assert_eq!(names.0, vec!["z"]);
        let expected = RatFunc::new(
            LaurentPoly::from_int_coeffs(&[1, -2, 1]),
            LaurentPoly::from_int_coeffs(&[1, -3, 1]),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn negative_exponents_and_imaginary_unit() {
        let (f, _) = parse_ratfunc("z^-1 - 1", None).unwrap();
        let (g, _) = parse_ratfunc("(1 - z)/z", None).unwrap();
        assert_eq!(f, g);
        let (h, _) = parse_ratfunc("i*i", None).unwrap();
        assert_eq!(h, RatFunc::constant(0, GaussianRational::from_int(-1)));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ratfunc("", None).is_err());
        assert!(parse_ratfunc("(z", None).is_err());
        assert!(parse_ratfunc("1/0", None).is_err());
        assert!(parse_ratfunc("z^99999", None).is_err());
        assert!(parse_ratfunc("z $", None).is_err());
        assert!(parse_ratfunc("0^-1", None).is_err());
        let names = VarNames::new(["t"]);
        assert!(parse_ratfunc("z", Some(&names)).is_err());
    }
}
