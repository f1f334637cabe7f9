//! A small grammar for polynomial forms:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := power ('*' power)*
//! power  := atom ['^' integer]
//! atom   := rational | name | '(' expr ')'
//! ```
//!
//! Names are generator names of the target signature. `x1`, `x_1` and
//! `dx_1` are accepted as spellings of `x[1]` and `dx[1]`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{parse_q, Element, Signature};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(String),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::Open);
                i += 1;
            }
            ')' => {
                out.push(Token::Close);
                i += 1;
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token::Number(chars[start..i].iter().collect()));
            }
            _ if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                // bracketed indices belong to the name
                if i < chars.len() && chars[i] == '[' {
                    while i < chars.len() && chars[i] != ']' {
                        i += 1;
                    }
                    if i == chars.len() {
                        return Err(Error::Parse(format!("unclosed '[' in {input:?}")));
                    }
                    i += 1;
                }
                out.push(Token::Name(chars[start..i].iter().collect()));
            }
            _ => return Err(Error::Parse(format!("unexpected {c:?} in {input:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    sig: &'a Arc<Signature>,
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

    fn expr(&mut self) -> Result<Element> {
        let negate = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.try_add(&self.term()?)?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.try_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = self.power()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = acc.try_mul(&self.power()?)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Element> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.next() {
            Some(Token::Number(k)) => {
                let k: u32 = k.parse().map_err(|_| Error::Parse(format!("bad exponent {k}")))?;
                Ok(base.pow(k))
            }
            other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
        }
    }

    fn atom(&mut self) -> Result<Element> {
        match self.next() {
            Some(Token::Number(n)) => {
                let text = if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Token::Number(d)) => format!("{n}/{d}"),
                        other => return Err(Error::Parse(format!("expected denominator, found {other:?}"))),
                    }
                } else {
                    n
                };
                Ok(Element::scalar(self.sig, parse_q(&text)?))
            }
            Some(Token::Name(name)) => Element::generator(self.sig, &resolve_name(self.sig, &name)?),
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(inner),
                    other => Err(Error::Parse(format!("expected ')', found {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!("unexpected {other:?}"))),
        }
    }
}

fn resolve_name(sig: &Signature, name: &str) -> Result<String> {
    if sig.id(name).is_ok() {
        return Ok(name.to_string());
    }
    // x1, x_1, dx12 → x[1], dx[12]
    let stem = name.trim_end_matches(|c: char| c.is_ascii_digit());
    let digits = &name[stem.len()..];
    let stem = stem.trim_end_matches('_');
    if !digits.is_empty() && !stem.is_empty() {
        let candidate = format!("{stem}[{digits}]");
        if sig.id(&candidate).is_ok() {
            return Ok(candidate);
        }
    }
    Err(Error::UnknownGenerator(name.to_string()))
}

/// Parse an expression into an element over `sig`.
pub fn parse_element(sig: &Arc<Signature>, input: &str) -> Result<Element> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".to_string()));
    }
    let mut parser = Parser { tokens, pos: 0, sig };
    let e = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input after token {} in {input:?}",
            parser.pos
        )));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{q, Bidegree, GeneratorDecl};

    fn sig() -> Arc<Signature> {
        let mut decls = Vec::new();
        for i in 1..=3 {
            decls.push(GeneratorDecl::indexed("x", &[i], Bidegree::even(0)));
            decls.push(GeneratorDecl::indexed("dx", &[i], Bidegree::even(1)));
        }
        Signature::new(decls).unwrap()
    }

    #[test]
    fn spellings_and_signs() {
        let s = sig();
        let a = parse_element(&s, "x1*dx_2*dx[3]").unwrap();
        let b = parse_element(&s, "-(dx3*dx2*x[1])").unwrap();
        assert_eq!(a, b);
        let c = parse_element(&s, "1/2*x1^2 - 3 + x2*(x3 + 1)").unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(
            c.coefficient(&Element::generator(&s, "x[1]").unwrap().pow(2).terms()[0].0),
            q(1, 2)
        );
        assert!(parse_element(&s, "dx1*dx1").unwrap().is_zero());
    }

    #[test]
    fn rejects_garbage() {
        let s = sig();
        for bad in ["", "x1 +", "y1", "x1 $ x2", "(x1", "x1 x2", "x1^y"] {
            assert!(parse_element(&s, bad).is_err(), "{bad}");
        }
    }
}
