//! The theory file format.
//!
//! ```text
//! theory TwoArrows {
//!   object One
//!   object A
//!   terminal One
//!   arrow a1 : One -> A
//!   axiom unit : forall f : One -> One . f = id One
//!   axiom a1 = a1
//! }
//! ```
//!
//! Declarations may appear in any order; every constant is in scope in every
//! axiom. Unnamed axioms are called `ax1`, `ax2`, ... by position.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::syntax::{print_formula, Formula, Obj, ParseError, Parser, Signature, Tok};

use super::{Oracle, Theory, TheoryError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryFile {
    pub name: String,
    pub signature: Signature,
    pub axioms: Vec<(String, Formula)>,
    pub terminal: Option<String>,
}

impl TheoryFile {
    pub fn into_theory(self, oracle: Arc<dyn Oracle>) -> Result<Theory, TheoryError> {
        Ok(Theory::new(&self.name, self.signature, self.axioms, oracle)?.with_terminal(self.terminal))
    }
}

fn walk(p: &mut Parser<'_>, sig: &mut Signature, axioms: &mut Vec<(String, Formula)>) -> Result<(String, Option<String>), ParseError> {
    p.expect_keyword("theory")?;
    let name = p.ident()?;
    p.expect(&Tok::LBrace)?;
    let mut terminal = None;
    loop {
        if p.eat(&Tok::RBrace) {
            break;
        }
        let at = p.position();
        let kw = p.word()?;
        let dup = |n: &str| ParseError { line: at.0, col: at.1, msg: format!("`{n}` is declared twice") };
        match kw.as_str() {
            "object" => {
                let n = p.ident()?;
                if sig.has_constant(&n) {
                    return Err(dup(&n));
                }
                sig.objects.insert(n);
            }
            "arrow" => {
                let n = p.ident()?;
                p.expect(&Tok::Colon)?;
                let s = p.arrow_sort()?;
                if sig.has_constant(&n) {
                    return Err(dup(&n));
                }
                sig.arrows.insert(n, s);
            }
            "terminal" => {
                let at = p.position();
                let n = p.ident()?;
                if terminal.replace(n).is_some() {
                    return Err(ParseError { line: at.0, col: at.1, msg: "terminal object declared twice".into() });
                }
            }
            "axiom" => {
                let label = match (p.peek(), p.peek_at(1)) {
                    (Some(Tok::Ident(_)), Some(Tok::Colon)) => {
                        let l = p.ident()?;
                        p.expect(&Tok::Colon)?;
                        Some(l)
                    }
                    _ => None,
                };
                let phi = p.formula()?;
                let label = label.unwrap_or_else(|| format!("ax{}", axioms.len() + 1));
                axioms.push((label, phi));
            }
            other => {
                return Err(ParseError {
                    line: at.0,
                    col: at.1,
                    msg: format!("expected `object`, `arrow`, `terminal`, `axiom` or `}}`, found `{other}`"),
                })
            }
        }
        p.eat(&Tok::Semi);
    }
    p.finish()?;
    Ok((name, terminal))
}

/// Parses a theory file. Constants are resolved against all declarations
/// in the file, so the text is read twice.
pub fn parse_theory(text: &str) -> Result<TheoryFile, ParseError> {
    let empty = Signature::new();
    let mut sig = Signature::new();
    walk(&mut Parser::new(&empty, text)?, &mut sig, &mut Vec::new())?;
    let objects = sig.objects.clone();
    for (name, s) in sig.arrows.iter_mut() {
        for end in [&mut s.dom, &mut s.cod] {
            match end.name() {
                Some(o) if objects.contains(o) => *end = Obj::cst(o),
                other => {
                    return Err(ParseError {
                        line: 1,
                        col: 1,
                        msg: format!("arrow `{name}` mentions undeclared object `{}`", other.unwrap_or("?")),
                    })
                }
            }
        }
    }
    let mut axioms = Vec::new();
    let (name, terminal) = walk(&mut Parser::new(&sig, text)?, &mut Signature::new(), &mut axioms)?;
    if let Some(t) = &terminal {
        if !sig.objects.contains(t) {
            return Err(ParseError { line: 1, col: 1, msg: format!("terminal `{t}` is not a declared object") });
        }
    }
    Ok(TheoryFile { name, signature: sig, axioms, terminal })
}

pub fn print_theory(t: &Theory) -> String {
    let mut out = format!("theory {} {{\n", t.name);
    for o in &t.signature.objects {
        let _ = writeln!(out, "  object {o}");
    }
    if let Some(term) = &t.terminal {
        let _ = writeln!(out, "  terminal {term}");
    }
    for (a, s) in &t.signature.arrows {
        let _ = writeln!(out, "  arrow {a} : {s}");
    }
    for (n, phi) in &t.axioms {
        let _ = writeln!(out, "  axiom {n} : {}", print_formula(phi));
    }
    out.push_str("}\n");
    out
}
