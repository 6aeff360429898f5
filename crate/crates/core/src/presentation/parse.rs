//! Recursive-descent parser for the presentation DSL.
//!
//! ```text
//! file     := stmt*
//! stmt     := "group" IDENT "=" "<" gens "|" relators ">"
//! gens     := IDENT ("," IDENT)*
//! relators := item ("," item)*
//! item     := word | word "=" word
//! word     := factor ("*" factor)*
//! factor   := atom ("^" INT)?
//! atom     := IDENT | "(" word ")" | "[" word "," word "]"
//! ```
//!
//! `#` starts a comment running to the end of the line.

use std::collections::HashMap;

use super::word::Word;
use super::{Presentation, PresentationError};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    BadChar(char),
    #[error("expected {expected}, found {found}")]
    Expected { expected: String, found: String },
    #[error("integer out of range: {0}")]
    BadInt(String),
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("unknown generator {0:?} in relator")]
    UnknownName(String),
    #[error("duplicate group name {0:?}")]
    DuplicateGroup(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Int(i) => format!("integer {i}"),
            Tok::Sym(c) => format!("{c:?}"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (start_line, start_col) = (line, col);
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            out.push(Lexed {
                tok: Tok::Ident(s),
                line: start_line,
                col: start_col,
            });
        } else if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let mut s = String::new();
            s.push(c);
            i += 1;
            col += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            let v = s.parse::<i64>().map_err(|_| ParseError {
                line: start_line,
                col: start_col,
                kind: ParseErrorKind::BadInt(s.clone()),
            })?;
            out.push(Lexed {
                tok: Tok::Int(v),
                line: start_line,
                col: start_col,
            });
        } else if "=<>|,*^()[]".contains(c) {
            out.push(Lexed {
                tok: Tok::Sym(c),
                line,
                col,
            });
            i += 1;
            col += 1;
        } else {
            return Err(ParseError {
                line,
                col,
                kind: ParseErrorKind::BadChar(c),
            });
        }
    }
    out.push(Lexed {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

// Exponents beyond this are rejected rather than expanded letter by letter.
const MAX_EXPONENT: i64 = 1 << 16;

struct Parser<'a> {
    toks: &'a [Lexed],
    pos: usize,
    names: HashMap<String, u32>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Lexed {
        &self.toks[self.pos]
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            col: t.col,
            kind,
        }
    }

    fn expected(&self, what: &str) -> ParseError {
        self.err(ParseErrorKind::Expected {
            expected: what.to_string(),
            found: self.peek().tok.describe(),
        })
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.expected(&format!("{c:?}")))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.expected("identifier")),
        }
    }

    fn stmt(&mut self) -> Result<Presentation, ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == "group" => self.pos += 1,
            _ => return Err(self.expected("\"group\"")),
        }
        let name = self.ident()?;
        self.expect_sym('=')?;
        self.expect_sym('<')?;
        self.names.clear();
        let mut gens = Vec::new();
        loop {
            let at = self.pos;
            let g = self.ident()?;
            if self.names.contains_key(&g) {
                self.pos = at;
                return Err(self.err(ParseErrorKind::DuplicateGenerator(g)));
            }
            self.names.insert(g.clone(), gens.len() as u32);
            gens.push(g);
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym('|')?;
        let mut relators = Vec::new();
        loop {
            let lhs = self.word()?;
            if self.eat_sym('=') {
                let rhs = self.word()?;
                relators.push(lhs.concat(&rhs.inverse()));
            } else {
                relators.push(lhs);
            }
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym('>')?;
        Ok(Presentation {
            name,
            generators: gens,
            relators,
        })
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut w = self.factor()?;
        while self.eat_sym('*') {
            let f = self.factor()?;
            w = w.concat(&f);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        let a = self.atom()?;
        if self.eat_sym('^') {
            match self.peek().tok {
                Tok::Int(n) => {
                    if n.abs() > MAX_EXPONENT {
                        return Err(self.err(ParseErrorKind::BadInt(n.to_string())));
                    }
                    self.pos += 1;
                    Ok(a.pow(n))
                }
                _ => Err(self.expected("integer exponent")),
            }
        } else {
            Ok(a)
        }
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let Some(&g) = self.names.get(s) else {
                    return Err(self.err(ParseErrorKind::UnknownName(s.clone())));
                };
                self.pos += 1;
                Ok(Word::gen(g))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect_sym(')')?;
                Ok(w)
            }
            Tok::Sym('[') => {
                self.pos += 1;
                let x = self.word()?;
                self.expect_sym(',')?;
                let y = self.word()?;
                self.expect_sym(']')?;
                Ok(Word::commutator(&x, &y))
            }
            _ => Err(self.expected("generator, '(' or '['")),
        }
    }
}

/// Parses every `group` statement in `text`.
pub fn parse_presentation(text: &str) -> Result<Vec<Presentation>, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        names: HashMap::new(),
    };
    let mut out: Vec<Presentation> = Vec::new();
    while p.peek().tok != Tok::Eof {
        let (line, col) = (p.peek().line, p.peek().col);
        let pres = p.stmt()?;
        if out.iter().any(|q| q.name == pres.name) {
            return Err(ParseError {
                line,
                col,
                kind: ParseErrorKind::DuplicateGroup(pres.name),
            });
        }
        out.push(pres);
    }
    Ok(out)
}

/// Parses `text` and returns the single group named `name`.
pub fn parse_group(text: &str, name: &str) -> Result<Presentation, PresentationError> {
    parse_presentation(text)?
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| PresentationError::NoSuchGroup(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two() {
        let ps = parse_presentation("group C2 = < a | a^2 >").unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].generators, vec!["a"]);
        assert_eq!(ps[0].relators, vec![Word::gen(0).pow(2)]);
    }

    #[test]
    fn s3_relator_lengths() {
        let ps = parse_presentation("group S3 = < a, b | a^2, b^2, (a*b)^3 >").unwrap();
        let lens: Vec<usize> = ps[0].relators.iter().map(Word::len).collect();
        assert_eq!(lens, vec![2, 2, 6]);
    }

    #[test]
    fn commutator_sugar() {
        let ps = parse_presentation(
            "group H27 = < a, b, c | a^3, b^3, c^3, [a,b]*c^-1, [a,c], [b,c] >",
        )
        .unwrap();
        assert_eq!(ps[0].relators[3].len(), 5);
        assert_eq!(ps[0].relators[4].len(), 4);
    }

    #[test]
    fn equations_become_relators() {
        let ps = parse_presentation("group Q = < a, b | a^2 = b^2 >").unwrap();
        assert_eq!(ps[0].relators[0].len(), 4);
    }

    #[test]
    fn comments_and_multiple_groups() {
        let src = "# header\ngroup A = < x | x^3 > # trailing\n\ngroup B = <y|y^-2>\n";
        let ps = parse_presentation(src).unwrap();
        assert_eq!(ps.iter().map(|p| p.name.as_str()).collect::<Vec<_>>(), ["A", "B"]);
    }

    #[test]
    fn error_locations() {
        let e = parse_presentation("group G = < a | b >").unwrap_err();
        assert_eq!((e.line, e.col), (1, 17));
        assert!(matches!(e.kind, ParseErrorKind::UnknownName(_)));

        let e = parse_presentation("group G = < a, a | a >").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::DuplicateGenerator(_)));
        assert_eq!((e.line, e.col), (1, 16));

        let e = parse_presentation("\ngroup G = < a | a^ >").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(e.kind, ParseErrorKind::Expected { .. }));

        let e = parse_presentation("group G = < a | a ; >").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::BadChar(';')));
    }
}
