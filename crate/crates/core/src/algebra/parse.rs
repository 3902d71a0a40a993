//! Text grammar for polynomials and fractions of polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Division is allowed anywhere while parsing; [`parse_polynomial`] then
//! requires the accumulated denominator to be a nonzero constant.

use num::BigInt;

use super::polynomial::{Polynomial, Variables};
use super::{AlgebraError, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, AlgebraError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Token::Plus)),
            b'-' => out.push((start, Token::Minus)),
            b'*' => out.push((start, Token::Star)),
            b'/' => out.push((start, Token::Slash)),
            b'^' => out.push((start, Token::Caret)),
            b'(' => out.push((start, Token::LParen)),
            b')' => out.push((start, Token::RParen)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Token::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(AlgebraError::Syntax {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Numerator/denominator pair produced while parsing.
#[derive(Clone, Debug)]
struct Quotient {
    num: Polynomial,
    den: Polynomial,
}

impl Quotient {
    fn poly(p: Polynomial) -> Self {
        let den = Polynomial::one(p.vars());
        Quotient { num: p, den }
    }

    fn add(self, rhs: Quotient) -> Quotient {
        if self.den == rhs.den {
            return Quotient {
                num: &self.num + &rhs.num,
                den: self.den,
            };
        }
        Quotient {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }

    fn neg(self) -> Quotient {
        Quotient {
            num: -self.num,
            den: self.den,
        }
    }

    fn mul(self, rhs: Quotient) -> Quotient {
        Quotient {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }

    fn div(self, rhs: Quotient, offset: usize) -> Result<Quotient, AlgebraError> {
        if rhs.num.is_zero() {
            return Err(AlgebraError::DivisionByZero { offset });
        }
        Ok(Quotient {
            num: &self.num * &rhs.den,
            den: &self.den * &rhs.num,
        })
    }

    fn pow(self, e: u32) -> Quotient {
        Quotient {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Fold a constant denominator into the numerator.
    fn tidy(self) -> Quotient {
        if self.den.is_constant() {
            let c = self.den.constant_term();
            let vars = self.num.vars().clone();
            return Quotient {
                num: self.num.scale(&c.recip()),
                den: Polynomial::one(&vars),
            };
        }
        self
    }
}

struct Parser<'a> {
    vars: &'a Variables,
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(o, _)| *o).unwrap_or(self.len)
    }

    fn syntax(&self, message: impl Into<String>) -> AlgebraError {
        AlgebraError::Syntax {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Quotient, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(self.term()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.add(self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Quotient, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul(self.unary()?);
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    acc = acc.div(self.unary()?, at)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Quotient, AlgebraError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Quotient, AlgebraError> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Int(n)) => {
                    let e: u32 = u32::try_from(&n).map_err(|_| self.syntax("exponent too large"))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.syntax("expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Quotient, AlgebraError> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Quotient::poly(Polynomial::constant(self.vars, Rational::from_integer(n))))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let idx = self
                    .vars
                    .index_of(&name)
                    .ok_or(AlgebraError::UnknownVariable { name, offset })?;
                Ok(Quotient::poly(Polynomial::variable(self.vars, idx)))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.syntax("expected a number, variable or `(`")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

fn parse_quotient(text: &str, vars: &Variables) -> Result<Quotient, AlgebraError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        vars,
        tokens,
        pos: 0,
        len: text.len(),
    };
    let q = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.syntax("unexpected trailing input"));
    }
    Ok(q.tidy())
}

/// Parse and expand a polynomial over `vars`.
pub fn parse_polynomial(text: &str, vars: &Variables) -> Result<Polynomial, AlgebraError> {
    let q = parse_quotient(text, vars)?;
    if !q.den.is_constant() {
        return Err(AlgebraError::NotPolynomial(text.trim().to_string()));
    }
    Ok(q.num)
}

/// Parse `numerator / denominator` without any cancellation, so that the
/// denominator is exactly the one written (up to a rational constant).
pub fn parse_fraction(text: &str, vars: &Variables) -> Result<(Polynomial, Polynomial), AlgebraError> {
    let q = parse_quotient(text, vars)?;
    Ok((q.num, q.den))
}
