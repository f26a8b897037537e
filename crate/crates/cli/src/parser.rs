//! Recursive-descent parser for the form expression language:
//!
//! ```text
//! expr    := term (("perp" | "+") term)*
//! term    := factor (("tensor" | "*") factor)*
//! factor  := INT "x" factor | literal | func | "(" expr ")"
//! literal := "<" entry ("," entry)* ">" | "H" | "0form"
//! entry   := ["-"] atom ("*" atom)*        atom := IDENT | INT
//! func    := ("S" | "L") "^" INT "(" expr ")"
//!          | ("TS" | "qS") "(" INT ["," IDENT "," IDENT] ")"
//! ```

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::ast::{Entry, Expr};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigUint),
    Ident(String),
    ZeroForm,
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::ZeroForm => "'0form'".into(),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut line_start) = (0, 1, 0);
    while i < chars.len() {
        let c = chars[i];
        let column = i - line_start + 1;
        let start = i;
        let tok = if c == '\n' {
            i += 1;
            line += 1;
            line_start = i;
            continue;
        } else if c.is_whitespace() {
            i += 1;
            continue;
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let word_end = (i..chars.len())
                .find(|&j| !is_word_char(chars[j]))
                .unwrap_or(chars.len());
            let suffix: String = chars[i..word_end].iter().collect();
            if digits == "0" && suffix == "form" {
                i = word_end;
                Tok::ZeroForm
            } else {
                Tok::Int(digits.parse().expect("ascii digits"))
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && is_word_char(chars[i]) {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if "<>,()+*-^".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError {
                line,
                column,
                message: format!("unexpected character '{c}'"),
            });
        };
        out.push(Token { tok, line, column });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: chars.len() - line_start + 1,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, token: &Token, message: impl Into<String>) -> ParseError {
        ParseError {
            line: token.line,
            column: token.column,
            message: message.into(),
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let t = &self.tokens[self.pos];
        self.error_at(t, format!("expected {wanted}, found {}", t.tok.describe()))
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.is_sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    fn small_int(&mut self, what: &str) -> Result<u64, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                let t = self.bump();
                n.to_u64()
                    .ok_or_else(|| self.error_at(&t, format!("{what} {n} is too large")))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected("identifier")),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.term()?;
        while self.is_sym('+') || self.is_word("perp") {
            self.bump();
            let right = self.term()?;
            left = Expr::Perp(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.factor()?;
        while self.is_sym('*') || self.is_word("tensor") {
            self.bump();
            let right = self.factor()?;
            left = Expr::Tensor(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if !self.is_word("x") {
                    return Err(self.unexpected("'x' after a count"));
                }
                self.bump();
                Ok(Expr::Times(n, Box::new(self.factor()?)))
            }
            Tok::Sym('-') if matches!(self.peek_at(1), Tok::Int(_)) => {
                let t = self.tokens[self.pos].clone();
                Err(self.error_at(&t, "'x' count must be non-negative"))
            }
            Tok::Sym('<') => {
                self.bump();
                let mut entries = vec![self.entry()?];
                while self.is_sym(',') {
                    self.bump();
                    entries.push(self.entry()?);
                }
                self.expect_sym('>')?;
                Ok(Expr::Literal(entries))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::ZeroForm => {
                self.bump();
                Ok(Expr::Zero)
            }
            Tok::Ident(name) => self.named(&name),
            _ => Err(self.unexpected("a form")),
        }
    }

    fn named(&mut self, name: &str) -> Result<Expr, ParseError> {
        let t = self.bump();
        match name {
            "H" => Ok(Expr::Hyperbolic),
            "S" | "L" => {
                self.expect_sym('^')?;
                let k = self.small_int("power")?;
                self.expect_sym('(')?;
                let e = Box::new(self.expr()?);
                self.expect_sym(')')?;
                Ok(if name == "S" {
                    Expr::Sym(k, e)
                } else {
                    Expr::Ext(k, e)
                })
            }
            "TS" | "qS" => {
                self.expect_sym('(')?;
                let n = self.small_int("degree")?;
                let atoms = if self.is_sym(',') {
                    self.bump();
                    let a = self.ident()?;
                    self.expect_sym(',')?;
                    Some((a, self.ident()?))
                } else {
                    None
                };
                self.expect_sym(')')?;
                Ok(if name == "TS" {
                    Expr::Trace { n, atoms }
                } else {
                    Expr::NormPart { n, atoms }
                })
            }
            _ if self.is_sym('(') || self.is_sym('^') => {
                Err(self.error_at(&t, format!("unknown function '{name}'")))
            }
            _ => Err(self.error_at(&t, format!("unexpected identifier '{name}'"))),
        }
    }

    fn entry(&mut self) -> Result<Entry, ParseError> {
        let negative = self.is_sym('-');
        if negative {
            self.bump();
        }
        let mut factors = vec![self.entry_factor()?];
        while self.is_sym('*') {
            self.bump();
            factors.push(self.entry_factor()?);
        }
        Ok(Entry { negative, factors })
    }

    fn entry_factor(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            Tok::Int(n) => {
                let t = self.bump();
                if n == BigUint::from(0u8) {
                    return Err(self.error_at(&t, "a diagonal entry cannot be zero"));
                }
                Ok(n.to_string())
            }
            _ => Err(self.unexpected("an atom or integer")),
        }
    }
}

/// Parses a whole expression.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("'+', '*' or end of input"));
    }
    Ok(e)
}
