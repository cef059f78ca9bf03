//! Recursive-descent parser for free-algebra expressions.
//!
//! Grammar (whitespace insignificant, unary minus allowed before a term):
//!
//! ```text
//! expr     := '-'? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := rational | variable | bracket | '(' expr ')'
//! rational := integer ('/' integer)?
//! bracket  := '[' expr (',' expr)+ ']'      -- left-normed commutator
//! variable := 'x' digits
//! ```
//!
//! The optional `/ integer` suffix on constants exists so that printed
//! rational coefficients such as `1/2` read back in; `parse . print` is the
//! identity on canonical printed forms.

use crate::error::{Error, Result};
use crate::scalar::FieldSpec;

use super::{commutator, FreePoly};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(i64),
    Var(u32),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokenize(src: &'a str) -> Result<Vec<(usize, Token)>> {
        let mut lx = Lexer { src: src.as_bytes(), pos: 0 };
        let mut out = Vec::new();
        while let Some(t) = lx.next_token()? {
            out.push(t);
        }
        Ok(out)
    }

    fn next_token(&mut self) -> Result<Option<(usize, Token)>> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'[' => Token::LBracket,
            b']' => Token::RBracket,
            b',' => Token::Comma,
            b'x' => {
                self.pos += 1;
                let idx = self.read_integer(start)?;
                if idx == 0 {
                    return Err(Error::Parse {
                        pos: start,
                        msg: "generator indices start at x1".into(),
                    });
                }
                return Ok(Some((start, Token::Var(idx as u32))));
            }
            b'0'..=b'9' => {
                let n = self.read_integer(start)?;
                return Ok(Some((start, Token::Int(n))));
            }
            other => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unknown token `{}`", other as char),
                })
            }
        };
        self.pos += 1;
        Ok(Some((start, tok)))
    }

    fn read_integer(&mut self, token_start: usize) -> Result<i64> {
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(Error::Parse { pos: token_start, msg: "expected digits".into() });
        }
        std::str::from_utf8(&self.src[digits_start..self.pos])
            .expect("ascii digits")
            .parse::<i64>()
            .map_err(|_| Error::Parse { pos: token_start, msg: "integer too large".into() })
    }
}

struct Parser {
    field: FieldSpec,
    tokens: Vec<(usize, Token)>,
    cursor: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.cursor).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|(_, t)| t.clone());
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.cursor += 1;
            Ok(())
        } else {
            Err(Error::Parse { pos: self.pos(), msg: format!("expected {what}") })
        }
    }

    fn expr(&mut self) -> Result<FreePoly> {
        let negate = if self.peek() == Some(&Token::Minus) {
            self.cursor += 1;
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
                    self.cursor += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(Token::Minus) => {
                    self.cursor += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FreePoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.cursor += 1;
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FreePoly> {
        let pos = self.pos();
        match self.bump() {
            Some(Token::Int(n)) => {
                if self.peek() == Some(&Token::Slash) {
                    self.cursor += 1;
                    let dpos = self.pos();
                    match self.bump() {
                        Some(Token::Int(d)) if d != 0 => Ok(FreePoly::constant(
                            self.field,
                            self.field.fraction(n, d)?,
                        )),
                        Some(Token::Int(_)) => {
                            Err(Error::Parse { pos: dpos, msg: "zero denominator".into() })
                        }
                        _ => Err(Error::Parse { pos: dpos, msg: "expected denominator".into() }),
                    }
                } else {
                    Ok(FreePoly::constant(self.field, self.field.from_i64(n)))
                }
            }
            Some(Token::Var(i)) => FreePoly::var(self.field, i),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Token::LBracket) => {
                let mut args = vec![self.expr()?];
                while self.peek() == Some(&Token::Comma) {
                    self.cursor += 1;
                    args.push(self.expr()?);
                }
                if args.len() < 2 {
                    return Err(Error::Parse {
                        pos: self.pos(),
                        msg: "commutator needs at least two arguments".into(),
                    });
                }
                self.expect(Token::RBracket, "`]`")?;
                commutator(&args)
            }
            _ => Err(Error::Parse { pos, msg: "expected a factor".into() }),
        }
    }
}

/// Parse an expression over the given field.
pub fn parse(field: FieldSpec, src: &str) -> Result<FreePoly> {
    let tokens = Lexer::tokenize(src)?;
    let mut p = Parser { field, tokens, cursor: 0, end: src.len() };
    let poly = p.expr()?;
    if p.cursor != p.tokens.len() {
        return Err(Error::Parse { pos: p.pos(), msg: "trailing input".into() });
    }
    Ok(poly)
}
