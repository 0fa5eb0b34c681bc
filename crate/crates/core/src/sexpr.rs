//! Minimal s-expression reader shared by the formula and proof file formats.
//!
//! Atoms are bare symbols; `(` and `)` delimit lists; `#` starts a comment
//! that runs to the end of the line. Every node carries the byte offset it
//! started at so parse errors can point somewhere useful.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexpr {
    Sym(String, usize),
    List(Vec<Sexpr>, usize),
}

impl Sexpr {
    pub fn pos(&self) -> usize {
        match self {
            Sexpr::Sym(_, p) | Sexpr::List(_, p) => *p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {pos}: {msg}")]
pub struct SyntaxError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, SyntaxError> {
    Err(SyntaxError { pos, msg: msg.into() })
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner { bytes: text.as_bytes(), pos: 0 }
    }

    fn skip_trivia(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' => self.pos += 1,
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn read(&mut self) -> Result<Sexpr, SyntaxError> {
        self.skip_trivia();
        if self.pos >= self.bytes.len() {
            return err(self.pos, "unexpected end of input");
        }
        let start = self.pos;
        match self.bytes[self.pos] {
            b'(' => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    if self.pos >= self.bytes.len() {
                        return err(start, "unclosed '('");
                    }
                    if self.bytes[self.pos] == b')' {
                        self.pos += 1;
                        return Ok(Sexpr::List(items, start));
                    }
                    items.push(self.read()?);
                }
            }
            b')' => err(start, "unexpected ')'"),
            _ => {
                let mut end = self.pos;
                while end < self.bytes.len()
                    && !matches!(self.bytes[end], b' ' | b'\t' | b'\r' | b'\n' | b'(' | b')' | b'#')
                {
                    end += 1;
                }
                let sym = std::str::from_utf8(&self.bytes[start..end])
                    .map_err(|_| SyntaxError { pos: start, msg: "invalid utf-8".into() })?
                    .to_owned();
                self.pos = end;
                Ok(Sexpr::Sym(sym, start))
            }
        }
    }
}

/// Parses exactly one s-expression; trailing non-trivia is an error.
pub fn parse_one(text: &str) -> Result<Sexpr, SyntaxError> {
    let mut sc = Scanner::new(text);
    let e = sc.read()?;
    sc.skip_trivia();
    if sc.pos < sc.bytes.len() {
        return err(sc.pos, "trailing input after expression");
    }
    Ok(e)
}

impl fmt::Display for Sexpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexpr::Sym(s, _) => write!(f, "{s}"),
            Sexpr::List(items, _) => {
                write!(f, "(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{it}")?;
                }
                write!(f, ")")
            }
        }
    }
}
