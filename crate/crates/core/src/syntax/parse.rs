//! Text grammar for terms, sorts, formulas and contexts.
//!
//! ```text
//! obj     ::= ident | "(" obj ")"
//! arrow   ::= ident | "id" obj | "comp" arrow arrow | "(" arrow ")"
//! sort    ::= "Obj" | obj "->" obj
//! formula ::= or ("=>" formula)?
//! or      ::= and ("\/" or)?
//! and     ::= unary ("/\" and)?
//! unary   ::= "top" | "bot" | arrow "=" arrow | "(" formula ")"
//!           | ("forall" | "exists") ident (":" sort)? "." formula
//! context ::= (ident ":" sort ("," ident ":" sort)*)?
//! ```
//!
//! `#` starts a comment running to the end of the line. Names declared in the
//! signature become constants, names bound by an enclosing quantifier become
//! bound indices, and every other name is a free variable.

use std::fmt;

use thiserror::Error;

use super::{Arrow, ArrowSort, Binder, Context, Formula, Hint, Obj, Signature, Sort};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(usize),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Dot,
    Colon,
    Comma,
    Semi,
    Pipe,
    Arrow,
    Eq,
    And,
    Or,
    Implies,
    Circ,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number(n) => write!(f, "`{n}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Pipe => f.write_str("`|`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::And => f.write_str("`/\\`"),
            Tok::Or => f.write_str("`\\/`"),
            Tok::Implies => f.write_str("`=>`"),
            Tok::Circ => f.write_str("`∘`"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<(Vec<Spanned>, (usize, usize)), ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let adv = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            adv(1, &mut i, &mut col);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let two: String = chars[i..chars.len().min(i + 2)].iter().collect();
        let tok2 = match two.as_str() {
            "->" => Some(Tok::Arrow),
            "/\\" => Some(Tok::And),
            "\\/" => Some(Tok::Or),
            "=>" => Some(Tok::Implies),
            _ => None,
        };
        if let Some(tok) = tok2 {
            out.push(Spanned { tok, line: l0, col: c0 });
            adv(2, &mut i, &mut col);
            continue;
        }
        let tok1 = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '.' => Some(Tok::Dot),
            ':' => Some(Tok::Colon),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '|' => Some(Tok::Pipe),
            '=' => Some(Tok::Eq),
            '∘' => Some(Tok::Circ),
            _ => None,
        };
        if let Some(tok) = tok1 {
            out.push(Spanned { tok, line: l0, col: c0 });
            adv(1, &mut i, &mut col);
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            col += i - start;
            let s: String = chars[start..i].iter().collect();
            out.push(Spanned { tok: Tok::Ident(s), line: l0, col: c0 });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| ParseError {
                line: l0,
                col: c0,
                msg: format!("number `{s}` out of range"),
            })?;
            out.push(Spanned { tok: Tok::Number(n), line: l0, col: c0 });
            continue;
        }
        return Err(ParseError { line: l0, col: c0, msg: format!("unexpected character `{c}`") });
    }
    Ok((out, (line, col)))
}

const KEYWORDS: &[&str] = &["id", "comp", "forall", "exists", "top", "bot", "Obj"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Obj,
    Arr,
}

/// Recursive-descent parser over a token stream. Also used by the file
/// format readers of other modules, which drive it token by token.
pub struct Parser<'s> {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
    sig: &'s Signature,
    scope: Vec<(String, Kind)>,
}

impl<'s> Parser<'s> {
    pub fn new(sig: &'s Signature, text: &str) -> Result<Self, ParseError> {
        let (toks, end) = lex(text)?;
        Ok(Parser { toks, pos: 0, end, sig, scope: Vec::new() })
    }

    /// Replaces the signature used to resolve constant names.
    pub fn with_signature<'t>(self, sig: &'t Signature) -> Parser<'t> {
        Parser { toks: self.toks, pos: self.pos, end: self.end, sig, scope: self.scope }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    pub fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|s| &s.tok)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    /// Current line and column.
    pub fn position(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|s| (s.line, s.col)).unwrap_or(self.end)
    }

    pub fn error(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.position();
        ParseError { line, col, msg: msg.into() }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {t}")),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    pub fn bump(&mut self) -> Option<Tok> {
        let t = self.peek().cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    pub fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.is_keyword(kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    /// Any identifier, keywords included.
    pub fn word(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("identifier")),
        }
    }

    /// An identifier that is not a keyword.
    pub fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("name")),
        }
    }

    pub fn number(&mut self) -> Result<usize, ParseError> {
        match self.peek() {
            Some(Tok::Number(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.unexpected("number")),
        }
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn lookup_bound(&self, name: &str) -> Option<(usize, Kind)> {
        self.scope
            .iter()
            .rev()
            .position(|(n, _)| n == name)
            .map(|i| (i, self.scope[self.scope.len() - 1 - i].1))
    }

    pub fn object(&mut self) -> Result<Obj, ParseError> {
        if self.eat(&Tok::LParen) {
            let o = self.object()?;
            self.expect(&Tok::RParen)?;
            return Ok(o);
        }
        let at = self.position();
        let name = self.ident()?;
        match self.lookup_bound(&name) {
            Some((i, Kind::Obj)) => Ok(Obj::Bound(i)),
            Some((_, Kind::Arr)) => Err(ParseError {
                line: at.0,
                col: at.1,
                msg: format!("`{name}` is an arrow, expected an object"),
            }),
            None if self.sig.objects.contains(&name) => Ok(Obj::Const(name)),
            None if self.sig.arrows.contains_key(&name) => Err(ParseError {
                line: at.0,
                col: at.1,
                msg: format!("`{name}` is an arrow constant, expected an object"),
            }),
            None => Ok(Obj::Var(name)),
        }
    }

    pub fn arrow(&mut self) -> Result<Arrow, ParseError> {
        if self.eat(&Tok::LParen) {
            let a = self.arrow()?;
            self.expect(&Tok::RParen)?;
            return Ok(a);
        }
        if self.eat_keyword("id") {
            return Ok(Arrow::Id(self.object()?));
        }
        if self.eat_keyword("comp") {
            let g = self.arrow()?;
            let f = self.arrow()?;
            return Ok(Arrow::comp(g, f));
        }
        let at = self.position();
        let name = self.ident()?;
        match self.lookup_bound(&name) {
            Some((i, Kind::Arr)) => Ok(Arrow::Bound(i)),
            Some((_, Kind::Obj)) => Err(ParseError {
                line: at.0,
                col: at.1,
                msg: format!("`{name}` is an object, expected an arrow"),
            }),
            None if self.sig.arrows.contains_key(&name) => Ok(Arrow::Const(name)),
            None if self.sig.objects.contains(&name) => Err(ParseError {
                line: at.0,
                col: at.1,
                msg: format!("`{name}` is an object constant, expected an arrow"),
            }),
            None => Ok(Arrow::Var(name)),
        }
    }

    pub fn arrow_sort(&mut self) -> Result<ArrowSort, ParseError> {
        let dom = self.object()?;
        self.expect(&Tok::Arrow)?;
        let cod = self.object()?;
        Ok(ArrowSort { dom, cod })
    }

    pub fn sort(&mut self) -> Result<Sort, ParseError> {
        if self.eat_keyword("Obj") {
            Ok(Sort::Obj)
        } else {
            Ok(Sort::Arr(self.arrow_sort()?))
        }
    }

    pub fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.conjunction()?;
        if self.eat(&Tok::Or) {
            let rhs = self.disjunction()?;
            return Ok(Formula::or(lhs, rhs));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if self.eat(&Tok::And) {
            let rhs = self.conjunction()?;
            return Ok(Formula::and(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.eat_keyword("top") {
            return Ok(Formula::Top);
        }
        if self.eat_keyword("bot") {
            return Ok(Formula::Bot);
        }
        let forall = self.is_keyword("forall");
        if forall || self.is_keyword("exists") {
            self.pos += 1;
            let name = self.ident()?;
            let sort = if self.eat(&Tok::Colon) { self.sort()? } else { Sort::Obj };
            self.expect(&Tok::Dot)?;
            let kind = if matches!(sort, Sort::Obj) { Kind::Obj } else { Kind::Arr };
            self.scope.push((name.clone(), kind));
            let body = self.formula();
            self.scope.pop();
            let binder = Binder { hint: Hint(name), sort };
            let body = Box::new(body?);
            return Ok(if forall { Formula::Forall(binder, body) } else { Formula::Exists(binder, body) });
        }
        if self.peek() == Some(&Tok::LParen) {
            let save = self.pos;
            if let Ok(eq) = self.equation() {
                return Ok(eq);
            }
            self.pos = save;
            self.expect(&Tok::LParen)?;
            let f = self.formula()?;
            self.expect(&Tok::RParen)?;
            return Ok(f);
        }
        self.equation()
    }

    fn equation(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.arrow()?;
        self.expect(&Tok::Eq)?;
        let rhs = self.arrow()?;
        Ok(Formula::Eq(lhs, rhs))
    }

    pub fn decl(&mut self) -> Result<(String, Sort), ParseError> {
        let name = self.ident()?;
        self.expect(&Tok::Colon)?;
        Ok((name, self.sort()?))
    }

    pub fn context(&mut self) -> Result<Context, ParseError> {
        let mut ctx = Context::new();
        if !matches!(self.peek(), Some(Tok::Ident(_))) {
            return Ok(ctx);
        }
        loop {
            let (name, sort) = self.decl()?;
            ctx.push(&name, sort);
            if !self.eat(&Tok::Comma) {
                return Ok(ctx);
            }
        }
    }
}

fn whole<'s, T>(
    sig: &'s Signature,
    text: &str,
    f: impl FnOnce(&mut Parser<'s>) -> Result<T, ParseError>,
) -> Result<T, ParseError> {
    let mut p = Parser::new(sig, text)?;
    let v = f(&mut p)?;
    p.finish()?;
    Ok(v)
}

pub fn parse_formula(sig: &Signature, text: &str) -> Result<Formula, ParseError> {
    whole(sig, text, Parser::formula)
}

pub fn parse_arrow(sig: &Signature, text: &str) -> Result<Arrow, ParseError> {
    whole(sig, text, Parser::arrow)
}

pub fn parse_object(sig: &Signature, text: &str) -> Result<Obj, ParseError> {
    whole(sig, text, Parser::object)
}

pub fn parse_sort(sig: &Signature, text: &str) -> Result<Sort, ParseError> {
    whole(sig, text, Parser::sort)
}

pub fn parse_context(sig: &Signature, text: &str) -> Result<Context, ParseError> {
    whole(sig, text, Parser::context)
}
