//! Text front end for ground programs and queries.
//!
//! ```text
//! unit      = statement* EOF
//! statement = atom "."
//!           | atom ":-" body "."
//!           | ":-" body "."
//!           | "?-" body "."
//! body      = literal ("," literal)*
//! literal   = "not"? atom
//! atom      = lower ident-char* ("(" term ("," term)* ")")?
//! term      = atom | integer
//! ```
//!
//! `%` starts a comment running to end of line. Argument tuples are part of
//! the atom's name: `move(a,b)` is one propositional atom.

use std::fmt;

use thiserror::Error;

use crate::ast::{Literal, Program, Query};

/// Name prefix reserved for generated sub-check heads.
pub const CHECK_PREFIX: &str = "chk_";
/// Name reserved for the generated conjunction of all sub-checks.
pub const NMR_CHECK: &str = "nmr_check";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: &'static str, found: String },
    #[error("`not` is not allowed in a rule head")]
    NegatedHead,
    #[error("statement is not terminated by `.`")]
    Unterminated,
    #[error("variables are not supported in ground programs: {0}")]
    Variable(String),
    #[error("atom name {0:?} is reserved for generated checks")]
    Reserved(String),
    #[error("query has no goals")]
    EmptyQuery,
    #[error("query directive is not allowed here")]
    UnexpectedQuery,
}

/// A parsed source file: the program plus the last `?-` directive, if any.
#[derive(Debug, Clone, Default)]
pub struct Unit {
    pub program: Program,
    pub query: Option<Query>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Atom(String),
    Not,
    If,
    Ask,
    Comma,
    Dot,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Atom(a) => write!(f, "atom `{a}`"),
            Tok::Not => f.write_str("`not`"),
            Tok::If => f.write_str("`:-`"),
            Tok::Ask => f.write_str("`?-`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn err(pos: Pos, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: pos.line,
            column: pos.column,
            kind,
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '%' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn next(&mut self) -> Result<(Tok, Pos), ParseError> {
        self.skip_trivia();
        let pos = self.pos();
        let Some(&c) = self.chars.peek() else {
            return Ok((Tok::Eof, pos));
        };
        let tok = match c {
            ',' => {
                self.bump();
                Tok::Comma
            }
            '.' => {
                self.bump();
                Tok::Dot
            }
            ':' | '?' => {
                self.bump();
                if self.chars.peek() != Some(&'-') {
                    return Err(Self::err(pos, ParseErrorKind::UnexpectedChar(c)));
                }
                self.bump();
                if c == ':' {
                    Tok::If
                } else {
                    Tok::Ask
                }
            }
            c if c.is_ascii_lowercase() => {
                let name = self.term(pos)?;
                if name == "not" {
                    Tok::Not
                } else {
                    Tok::Atom(name)
                }
            }
            c if c.is_ascii_uppercase() || c == '_' => {
                let name = self.ident();
                return Err(Self::err(pos, ParseErrorKind::Variable(name)));
            }
            c => return Err(Self::err(pos, ParseErrorKind::UnexpectedChar(c))),
        };
        Ok((tok, pos))
    }

    fn ident(&mut self) -> String {
        let mut s = String::new();
        while let Some(&c) = self.chars.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        s
    }

    /// Lowercase identifier with an optional argument tuple, normalised to
    /// contain no whitespace.
    fn term(&mut self, start: Pos) -> Result<String, ParseError> {
        let mut name = self.ident();
        if self.chars.peek() != Some(&'(') {
            return Ok(name);
        }
        self.bump();
        name.push('(');
        loop {
            self.skip_trivia();
            let pos = self.pos();
            match self.chars.peek().copied() {
                Some(c) if c.is_ascii_lowercase() => name.push_str(&self.term(pos)?),
                Some(c) if c.is_ascii_digit() || c == '-' => {
                    if c == '-' {
                        name.push('-');
                        self.bump();
                    }
                    let digits = self.ident();
                    if digits.is_empty() || !digits.chars().all(|d| d.is_ascii_digit()) {
                        return Err(Self::err(
                            pos,
                            ParseErrorKind::Unexpected {
                                expected: "integer argument",
                                found: digits,
                            },
                        ));
                    }
                    name.push_str(&digits);
                }
                Some(c) if c.is_ascii_uppercase() || c == '_' => {
                    let v = self.ident();
                    return Err(Self::err(pos, ParseErrorKind::Variable(v)));
                }
                None => return Err(Self::err(start, ParseErrorKind::Unterminated)),
                Some(c) => return Err(Self::err(pos, ParseErrorKind::UnexpectedChar(c))),
            }
            self.skip_trivia();
            let pos = self.pos();
            match self.bump() {
                Some(',') => name.push(','),
                Some(')') => {
                    name.push(')');
                    return Ok(name);
                }
                None => return Err(Self::err(start, ParseErrorKind::Unterminated)),
                Some(c) => return Err(Self::err(pos, ParseErrorKind::UnexpectedChar(c))),
            }
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    pos: Pos,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer::new(text);
        let (tok, pos) = lexer.next()?;
        Ok(Parser { lexer, tok, pos })
    }

    fn advance(&mut self) -> Result<Tok, ParseError> {
        let (tok, pos) = self.lexer.next()?;
        self.pos = pos;
        Ok(std::mem::replace(&mut self.tok, tok))
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        Lexer::err(self.pos, kind)
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        self.err(ParseErrorKind::Unexpected {
            expected,
            found: self.tok.to_string(),
        })
    }

    fn atom_name(&mut self) -> Result<String, ParseError> {
        match &self.tok {
            Tok::Atom(name) => {
                if name.starts_with(CHECK_PREFIX) || name == NMR_CHECK {
                    return Err(self.err(ParseErrorKind::Reserved(name.clone())));
                }
                let Tok::Atom(name) = self.advance()? else {
                    unreachable!()
                };
                Ok(name)
            }
            Tok::Eof => Err(self.err(ParseErrorKind::Unterminated)),
            _ => Err(self.unexpected("an atom")),
        }
    }

    fn literal(&mut self, program: &mut Program) -> Result<Literal, ParseError> {
        let positive = if self.tok == Tok::Not {
            self.advance()?;
            false
        } else {
            true
        };
        let name = self.atom_name()?;
        let atom = program.atoms.intern(&name);
        Ok(Literal { atom, positive })
    }

    fn body(&mut self, program: &mut Program) -> Result<Vec<Literal>, ParseError> {
        let mut body = vec![self.literal(program)?];
        while self.tok == Tok::Comma {
            self.advance()?;
            body.push(self.literal(program)?);
        }
        Ok(body)
    }

    /// Consumes the statement terminator; `start` locates unterminated
    /// statements at their first token.
    fn end(&mut self, start: Pos) -> Result<(), ParseError> {
        match self.tok {
            Tok::Dot => {
                self.advance()?;
                Ok(())
            }
            Tok::Eof => Err(Lexer::err(start, ParseErrorKind::Unterminated)),
            _ => Err(self.unexpected("`,` or `.`")),
        }
    }

    fn unit(&mut self) -> Result<Unit, ParseError> {
        let mut unit = Unit::default();
        loop {
            let start = self.pos;
            match self.tok {
                Tok::Eof => return Ok(unit),
                Tok::If => {
                    self.advance()?;
                    let body = self.body(&mut unit.program)?;
                    self.end(start)?;
                    unit.program.add_rule(None, body);
                }
                Tok::Ask => {
                    self.advance()?;
                    if self.tok == Tok::Dot {
                        return Err(self.err(ParseErrorKind::EmptyQuery));
                    }
                    let goals = self.body(&mut unit.program)?;
                    self.end(start)?;
                    unit.query = Some(Query { goals });
                }
                Tok::Not => return Err(self.err(ParseErrorKind::NegatedHead)),
                Tok::Atom(_) => {
                    let name = self.atom_name()?;
                    let head = unit.program.atoms.intern(&name);
                    let body = if self.tok == Tok::If {
                        self.advance()?;
                        self.body(&mut unit.program)?
                    } else {
                        Vec::new()
                    };
                    self.end(start)?;
                    unit.program.add_rule(Some(head), body);
                }
                _ => return Err(self.unexpected("a rule, constraint or query")),
            }
        }
    }
}

/// Parses program text that may contain `?-` directives.
pub fn parse_unit(text: &str) -> Result<Unit, ParseError> {
    Parser::new(text)?.unit()
}

/// Parses program text. Query directives are rejected; use [`parse_unit`]
/// for files that embed one.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let mut parser = Parser::new(text)?;
    let unit = parser.unit()?;
    if unit.query.is_some() {
        // Report at the directive itself.
        let mut again = Parser::new(text)?;
        while again.tok != Tok::Ask {
            again.advance()?;
        }
        return Err(again.err(ParseErrorKind::UnexpectedQuery));
    }
    Ok(unit.program)
}

/// Parses `?- l1, ..., ln.` or a bare `l1, ..., ln` against `program`.
/// Atoms not yet in the program are interned as rule-less atoms.
pub fn parse_query(program: &mut Program, text: &str) -> Result<Query, ParseError> {
    let mut parser = Parser::new(text)?;
    let start = parser.pos;
    let asked = parser.tok == Tok::Ask;
    if asked {
        parser.advance()?;
    }
    if matches!(parser.tok, Tok::Eof | Tok::Dot) {
        return Err(parser.err(ParseErrorKind::EmptyQuery));
    }
    let goals = parser.body(program)?;
    match parser.tok {
        Tok::Dot => {
            parser.advance()?;
        }
        Tok::Eof if !asked => {}
        Tok::Eof => return Err(Lexer::err(start, ParseErrorKind::Unterminated)),
        _ => return Err(parser.unexpected("`,` or `.`")),
    }
    if parser.tok != Tok::Eof {
        return Err(parser.unexpected("end of query"));
    }
    Ok(Query { goals })
}
