//! Lexer and recursive-descent parser for `.pfl` text.

use super::ast::*;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    Eq,
    Arrow,
    FatArrow,
    Leq,
    Turnstile,
    Bar,
    Amp,
    Word(String),
    Quoted(String),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::FatArrow => "`=>`".into(),
            Tok::Leq => "`<=`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Word(w) => format!("`{w}`"),
            Tok::Quoted(w) => format!("\"{w}\""),
            Tok::Eof => "end of input".into(),
        }
    }
}

pub(crate) fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '*' | '.')
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    let err = |pos: Pos, msg: String| CliError::Parse { pos, msg };
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let two = |chars: &std::iter::Peekable<std::str::Chars>, next: char| {
            let mut it = chars.clone();
            it.next();
            it.next() == Some(next)
        };
        let tok = match c {
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            ':' => Tok::Colon,
            '&' => Tok::Amp,
            '-' if two(&chars, '>') => {
                bump(&mut chars);
                Tok::Arrow
            }
            '=' if two(&chars, '>') => {
                bump(&mut chars);
                Tok::FatArrow
            }
            '=' => Tok::Eq,
            '<' if two(&chars, '=') => {
                bump(&mut chars);
                Tok::Leq
            }
            '|' if two(&chars, '-') => {
                bump(&mut chars);
                Tok::Turnstile
            }
            '|' => Tok::Bar,
            '"' => {
                bump(&mut chars);
                let mut s = String::new();
                loop {
                    match bump(&mut chars) {
                        None | Some('\n') => return Err(err(pos, "unterminated string".into())),
                        Some('"') => break,
                        Some('\\') => match bump(&mut chars) {
                            Some(e @ ('"' | '\\')) => s.push(e),
                            _ => return Err(err(pos, "bad escape in string".into())),
                        },
                        Some(c) => s.push(c),
                    }
                }
                out.push((Tok::Quoted(s), pos));
                continue;
            }
            c if is_word_char(c) => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if !is_word_char(c) {
                        break;
                    }
                    s.push(c);
                    bump(&mut chars);
                }
                out.push((Tok::Word(s), pos));
                continue;
            }
            other => return Err(err(pos, format!("unexpected character `{other}`"))),
        };
        bump(&mut chars);
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        Err(CliError::Parse {
            pos: self.pos(),
            msg: format!("expected {expected}, found {}", self.peek().describe()),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<Pos> {
        if self.peek() == &t {
            Ok(self.next().1)
        } else {
            self.fail(&t.describe())
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Tok::Word(w) if w == kw => {
                self.next();
                Ok(())
            }
            _ => self.fail(&format!("`{kw}`")),
        }
    }

    fn ident(&mut self) -> Result<Ident> {
        match self.peek().clone() {
            Tok::Word(text) | Tok::Quoted(text) => {
                let pos = self.next().1;
                Ok(Ident { text, pos })
            }
            _ => self.fail("a name"),
        }
    }

    /// Parses `{ item; item; }` with `item` run once per entry.
    fn block<T>(&mut self, mut item: impl FnMut(&mut Parser) -> Result<T>) -> Result<Vec<T>> {
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        while !self.eat(&Tok::RBrace) {
            out.push(item(self)?);
            self.expect(Tok::Semi)?;
        }
        Ok(out)
    }

    fn subset(&mut self) -> Result<SubsetLit> {
        let pos = self.expect(Tok::LBrace)?;
        let mut elements = Vec::new();
        if !self.eat(&Tok::RBrace) {
            loop {
                elements.push(self.ident()?);
                if self.eat(&Tok::RBrace) {
                    break;
                }
                if !self.eat(&Tok::Comma) {
                    return self.fail("`,` or `}`");
                }
            }
        }
        Ok(SubsetLit { elements, pos })
    }

    fn pair(&mut self, sep: Tok) -> Result<(Ident, Ident)> {
        let a = self.ident()?;
        self.expect(sep)?;
        Ok((a, self.ident()?))
    }

    fn disjunction(&mut self) -> Result<Body> {
        let mut ds = vec![self.conjunction()?];
        while self.eat(&Tok::Bar) {
            ds.push(self.conjunction()?);
        }
        Ok(if ds.len() == 1 {
            ds.pop().unwrap()
        } else {
            Body::Or(ds)
        })
    }

    fn conjunction(&mut self) -> Result<Body> {
        let mut cs = vec![self.factor()?];
        while self.eat(&Tok::Amp) {
            cs.push(self.factor()?);
        }
        Ok(if cs.len() == 1 {
            cs.pop().unwrap()
        } else {
            Body::And(cs)
        })
    }

    fn factor(&mut self) -> Result<Body> {
        match self.peek().clone() {
            Tok::LParen => {
                self.next();
                let b = self.disjunction()?;
                self.expect(Tok::RParen)?;
                Ok(b)
            }
            Tok::Word(w) if w == "true" => {
                self.next();
                Ok(Body::True)
            }
            Tok::Word(w) if w == "false" => {
                self.next();
                Ok(Body::False)
            }
            Tok::Word(_) | Tok::Quoted(_) => Ok(Body::Atom(self.ident()?)),
            _ => self.fail("an atom, `true`, `false` or `(`"),
        }
    }

    fn decl(&mut self) -> Result<Decl> {
        let pos = self.pos();
        let kw = match self.peek() {
            Tok::Word(w) => w.clone(),
            _ => return self.fail("a declaration"),
        };
        self.next();
        let name = self.ident()?;
        let kind = match kw.as_str() {
            "carrier" => {
                self.expect(Tok::Eq)?;
                let labels = self.subset()?.elements;
                self.eat(&Tok::Semi);
                DeclKind::Carrier { labels }
            }
            "relation" => {
                self.expect(Tok::Colon)?;
                let src = self.ident()?;
                self.expect(Tok::Arrow)?;
                let dst = self.ident()?;
                let pairs = self.block(|p| p.pair(Tok::Arrow))?;
                DeclKind::Relation { src, dst, pairs }
            }
            "rules" => {
                self.keyword("on")?;
                let carrier = self.ident()?;
                let rules = self.block(|p| {
                    let a = p.subset()?;
                    p.expect(Tok::Arrow)?;
                    Ok((a, p.subset()?))
                })?;
                DeclKind::Rules { carrier, rules }
            }
            "order" => {
                self.keyword("on")?;
                let carrier = self.ident()?;
                let pairs = self.block(|p| p.pair(Tok::Leq))?;
                DeclKind::Order { carrier, pairs }
            }
            "axioms" => {
                self.keyword("on")?;
                let base = self.ident()?;
                let entries = self.block(|p| {
                    let element = p.ident()?;
                    p.expect(Tok::Colon)?;
                    let label = p.ident()?;
                    p.expect(Tok::FatArrow)?;
                    Ok(AxiomEntry {
                        element,
                        label,
                        cover: p.subset()?,
                    })
                })?;
                DeclKind::Axioms { base, entries }
            }
            "theory" => {
                self.keyword("on")?;
                let carrier = self.ident()?;
                let axioms = self.block(|p| {
                    let premise = p.subset()?;
                    p.expect(Tok::Turnstile)?;
                    Ok((premise, p.disjunction()?))
                })?;
                DeclKind::Theory { carrier, axioms }
            }
            "space" => {
                self.keyword("on")?;
                let points = self.ident()?;
                self.expect(Tok::Comma)?;
                let observables = self.ident()?;
                let pairs = self.block(|p| p.pair(Tok::Arrow))?;
                DeclKind::Space {
                    points,
                    observables,
                    pairs,
                }
            }
            other => {
                return Err(CliError::Parse {
                    pos,
                    msg: format!("unknown declaration `{other}`"),
                })
            }
        };
        Ok(Decl { name, kind, pos })
    }
}

/// Parses text into a document without resolving names.
pub fn parse_syntax(text: &str) -> Result<Document> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let mut decls = Vec::new();
    while p.peek() != &Tok::Eof {
        decls.push(p.decl()?);
    }
    Ok(Document { decls })
}

/// Parses a `;`-separated list of subset literals, as used by command flags.
pub fn parse_subset_list(text: &str) -> Result<Vec<SubsetLit>> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let mut out = Vec::new();
    while p.peek() != &Tok::Eof {
        out.push(p.subset()?);
        if !p.eat(&Tok::Semi) && p.peek() != &Tok::Eof {
            return p.fail("`;`");
        }
    }
    Ok(out)
}
