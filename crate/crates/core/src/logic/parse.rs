//! Recursive-descent parser for the concrete formula syntax.
//!
//! ```text
//! white := << black >> | [[ black ]] | ~ white | white (& | '|' | ->) white
//!        | <IDENT> white | [IDENT] white | E* white | A* white | ( white )
//! black := IDENT | ~ black | black (& | '|' | ->) black | ( black )
//! ```
//!
//! Precedence, tightest first: prefix operators and modalities, `&`, `|`,
//! then right-associative `->`.

use std::fmt;

use thiserror::Error;

use super::{BlackFormula, WhiteFormula};
use crate::ids::{ArgumentId, NameError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: &'static str, found: String },
    #[error("dangling `{0}` with no right operand")]
    MissingOperand(&'static str),
    #[error("argument `{0}` used as a formula outside << >> or [[ ]]")]
    BareArgument(String),
    #[error("`{0}` is not allowed inside a black formula")]
    WhiteInBlack(&'static str),
    #[error(transparent)]
    Name(#[from] NameError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    DiamondOpen,
    DiamondClose,
    BoxOpen,
    BoxClose,
    Lt,
    Gt,
    LBracket,
    RBracket,
    Exists,
    Forall,
    Not,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    Ident(String),
    End,
}

impl Tok {
    fn symbol(&self) -> &'static str {
        match self {
            Tok::DiamondOpen => "<<",
            Tok::DiamondClose => ">>",
            Tok::BoxOpen => "[[",
            Tok::BoxClose => "]]",
            Tok::Lt => "<",
            Tok::Gt => ">",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Exists => "E*",
            Tok::Forall => "A*",
            Tok::Not => "~",
            Tok::And => "&",
            Tok::Or => "|",
            Tok::Arrow => "->",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Ident(_) => "identifier",
            Tok::End => "end of input",
        }
    }
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(name) => write!(f, "`{name}`"),
            Tok::End => f.write_str("end of input"),
            other => write!(f, "`{}`", other.symbol()),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let next = bytes.get(i + 1).copied();
        let start = i;
        let tok = match (c, next) {
            (b' ' | b'\t' | b'\r' | b'\n', _) => {
                i += 1;
                continue;
            }
            (b'<', Some(b'<')) => Tok::DiamondOpen,
            (b'>', Some(b'>')) => Tok::DiamondClose,
            (b'[', Some(b'[')) => Tok::BoxOpen,
            (b']', Some(b']')) => Tok::BoxClose,
            (b'-', Some(b'>')) => Tok::Arrow,
            (b'E', Some(b'*')) => Tok::Exists,
            (b'A', Some(b'*')) => Tok::Forall,
            (b'<', _) => Tok::Lt,
            (b'>', _) => Tok::Gt,
            (b'[', _) => Tok::LBracket,
            (b']', _) => Tok::RBracket,
            (b'~', _) => Tok::Not,
            (b'&', _) => Tok::And,
            (b'|', _) => Tok::Or,
            (b'(', _) => Tok::LParen,
            (b')', _) => Tok::RParen,
            (c, _) if c.is_ascii_alphanumeric() || c == b'_' => {
                let end = bytes[i..]
                    .iter()
                    .position(|b| !(b.is_ascii_alphanumeric() || *b == b'_'))
                    .map_or(bytes.len(), |n| i + n);
                out.push((start, Tok::Ident(text[i..end].to_string())));
                i = end;
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(ParseError {
                    position: i,
                    kind: ParseErrorKind::UnexpectedChar(ch),
                });
            }
        };
        i += tok.symbol().len();
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    cursor: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.cursor].1
    }

    fn position(&self) -> usize {
        self.tokens[self.cursor].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let tok = self.tokens[self.cursor].clone();
        if tok.1 != Tok::End {
            self.cursor += 1;
        }
        tok
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.position(),
            kind,
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        self.error(ParseErrorKind::Unexpected {
            expected,
            found: self.peek().to_string(),
        })
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn ident(&mut self) -> PResult<ArgumentId> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let id = ArgumentId::new(&name).map_err(|e| self.error(e.into()))?;
                self.bump();
                Ok(id)
            }
            _ => Err(self.unexpected("an argument name")),
        }
    }

    fn starts_operand(&self) -> bool {
        !matches!(
            self.peek(),
            Tok::End | Tok::RParen | Tok::DiamondClose | Tok::BoxClose | Tok::Gt | Tok::RBracket | Tok::And | Tok::Or | Tok::Arrow
        )
    }

    /// Consumes a binary operator and checks that an operand follows it.
    fn operator(&mut self, symbol: &'static str) -> PResult<()> {
        let (at, _) = self.bump();
        if self.starts_operand() {
            Ok(())
        } else {
            Err(ParseError {
                position: at,
                kind: ParseErrorKind::MissingOperand(symbol),
            })
        }
    }

    fn white(&mut self) -> PResult<WhiteFormula> {
        let lhs = self.white_or()?;
        if *self.peek() == Tok::Arrow {
            self.operator("->")?;
            let rhs = self.white()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn white_or(&mut self) -> PResult<WhiteFormula> {
        let mut lhs = self.white_and()?;
        while *self.peek() == Tok::Or {
            self.operator("|")?;
            lhs = lhs.or(self.white_and()?);
        }
        Ok(lhs)
    }

    fn white_and(&mut self) -> PResult<WhiteFormula> {
        let mut lhs = self.white_unary()?;
        while *self.peek() == Tok::And {
            self.operator("&")?;
            lhs = lhs.and(self.white_unary()?);
        }
        Ok(lhs)
    }

    fn white_unary(&mut self) -> PResult<WhiteFormula> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(self.white_unary()?.not())
            }
            Tok::Lt => {
                self.bump();
                let p = self.ident()?;
                self.expect(Tok::Gt, "`>`")?;
                Ok(WhiteFormula::update(p, self.white_unary()?))
            }
            Tok::LBracket => {
                self.bump();
                let p = self.ident()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(WhiteFormula::update_box(p, self.white_unary()?))
            }
            Tok::Exists => {
                self.bump();
                Ok(WhiteFormula::exists(self.white_unary()?))
            }
            Tok::Forall => {
                self.bump();
                Ok(WhiteFormula::forall(self.white_unary()?))
            }
            Tok::DiamondOpen => {
                self.bump();
                let alpha = self.black()?;
                self.expect(Tok::DiamondClose, "`>>`")?;
                Ok(WhiteFormula::diamond(alpha))
            }
            Tok::BoxOpen => {
                self.bump();
                let alpha = self.black()?;
                self.expect(Tok::BoxClose, "`]]`")?;
                Ok(WhiteFormula::black_box(alpha))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.white()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) => Err(self.error(ParseErrorKind::BareArgument(name))),
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn black(&mut self) -> PResult<BlackFormula> {
        let lhs = self.black_or()?;
        if *self.peek() == Tok::Arrow {
            self.operator("->")?;
            let rhs = self.black()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn black_or(&mut self) -> PResult<BlackFormula> {
        let mut lhs = self.black_and()?;
        while *self.peek() == Tok::Or {
            self.operator("|")?;
            lhs = lhs.or(self.black_and()?);
        }
        Ok(lhs)
    }

    fn black_and(&mut self) -> PResult<BlackFormula> {
        let mut lhs = self.black_unary()?;
        while *self.peek() == Tok::And {
            self.operator("&")?;
            lhs = lhs.and(self.black_unary()?);
        }
        Ok(lhs)
    }

    fn black_unary(&mut self) -> PResult<BlackFormula> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(self.black_unary()?.not())
            }
            Tok::Ident(_) => Ok(BlackFormula::atom(self.ident()?)),
            Tok::LParen => {
                self.bump();
                let inner = self.black()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            tok @ (Tok::DiamondOpen | Tok::BoxOpen | Tok::Lt | Tok::LBracket | Tok::Exists | Tok::Forall) => {
                Err(self.error(ParseErrorKind::WhiteInBlack(tok.symbol())))
            }
            _ => Err(self.unexpected("an argument or `~`")),
        }
    }

    fn finish(&self) -> PResult<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}

/// Parses a white-layer formula, expanding all abbreviations.
pub fn parse_formula(text: &str) -> Result<WhiteFormula, ParseError> {
    let mut parser = Parser {
        tokens: lex(text)?,
        cursor: 0,
    };
    let phi = parser.white()?;
    parser.finish()?;
    Ok(phi)
}

/// Parses a bare black-layer formula.
pub fn parse_black(text: &str) -> Result<BlackFormula, ParseError> {
    let mut parser = Parser {
        tokens: lex(text)?,
        cursor: 0,
    };
    let alpha = parser.black()?;
    parser.finish()?;
    Ok(alpha)
}
