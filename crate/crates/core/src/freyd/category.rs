//! Finite categories given by explicit tables.
//!
//! ```text
//! category Walk {
//!   object X identity idX
//!   object Y              # identity named id_Y
//!   terminal Y
//!   arrow f : X -> Y
//!   arrow g : Y -> Y
//!   g ∘ f = f
//!   g ∘ g = g
//! }
//! ```
//!
//! Every composable pair of non-identity arrows needs a row; rows with an
//! identity are implied. The loader checks the identity and associativity
//! laws and, when a terminal object is declared, that it is terminal.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::syntax::{ParseError, Parser, Signature, Tok};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("`{0}` is declared twice")]
    Duplicate(String),
    #[error("missing composition row for `{g} ∘ {f}`")]
    MissingRow { g: String, f: String },
    #[error("row `{g} ∘ {f} = {k}` is ill-typed")]
    IllTypedRow { g: String, f: String, k: String },
    #[error("conflicting rows for `{g} ∘ {f}`")]
    ConflictingRow { g: String, f: String },
    #[error("identity law fails at `{0}`")]
    IdentityLaw(String),
    #[error("associativity fails at `{h} ∘ {g} ∘ {f}`")]
    NotAssociative { h: String, g: String, f: String },
    #[error("`{0}` is not terminal")]
    NotTerminal(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    pub name: String,
    /// In declaration order.
    pub objects: Vec<String>,
    pub arrows: BTreeMap<String, (String, String)>,
    pub identities: BTreeMap<String, String>,
    /// `(g, f) ↦ g ∘ f`, identity rows included.
    pub comp: BTreeMap<(String, String), String>,
    pub terminal: Option<String>,
}

impl FiniteCategory {
    /// Assembles a category from its tables, adding the identity rows and
    /// checking the laws.
    pub fn new(
        name: &str,
        objects: Vec<String>,
        arrows: BTreeMap<String, (String, String)>,
        identities: BTreeMap<String, String>,
        rows: BTreeMap<(String, String), String>,
        terminal: Option<String>,
    ) -> Result<Self, CategoryError> {
        let mut cat = FiniteCategory { name: name.to_string(), objects, arrows, identities, comp: BTreeMap::new(), terminal };
        for (o, i) in &cat.identities {
            if cat.arrows.get(i) != Some(&(o.clone(), o.clone())) {
                return Err(CategoryError::IdentityLaw(i.clone()));
            }
        }
        for ((g, f), k) in rows {
            let (gs, fs, ks) = (cat.sort(&g)?, cat.sort(&f)?, cat.sort(&k)?);
            if fs.1 != gs.0 || ks != (fs.0.clone(), gs.1.clone()) {
                return Err(CategoryError::IllTypedRow { g, f, k });
            }
            if cat.comp.insert((g.clone(), f.clone()), k).is_some() {
                return Err(CategoryError::ConflictingRow { g, f });
            }
        }
        let arrows: Vec<(String, (String, String))> = cat.arrows.iter().map(|(a, s)| (a.clone(), s.clone())).collect();
        for (a, (d, c)) in &arrows {
            for key in [(cat.identity(c)?, a.clone()), (a.clone(), cat.identity(d)?)] {
                match cat.comp.get(&key) {
                    Some(k) if k != a => return Err(CategoryError::IdentityLaw(a.clone())),
                    Some(_) => {}
                    None => {
                        cat.comp.insert(key, a.clone());
                    }
                }
            }
        }
        cat.check_laws()?;
        Ok(cat)
    }

    pub fn sort(&self, a: &str) -> Result<(String, String), CategoryError> {
        self.arrows.get(a).cloned().ok_or_else(|| CategoryError::UnknownArrow(a.to_string()))
    }

    pub fn identity(&self, o: &str) -> Result<String, CategoryError> {
        self.identities.get(o).cloned().ok_or_else(|| CategoryError::UnknownObject(o.to_string()))
    }

    pub fn compose(&self, g: &str, f: &str) -> Option<&str> {
        self.comp.get(&(g.to_string(), f.to_string())).map(String::as_str)
    }

    /// Arrows `x → y`, by name.
    pub fn hom(&self, x: &str, y: &str) -> Vec<String> {
        self.arrows.iter().filter(|(_, (d, c))| d == x && c == y).map(|(a, _)| a.clone()).collect()
    }

    /// Elements of `x`: arrows from the terminal object.
    pub fn elements(&self, x: &str) -> Vec<String> {
        self.terminal.as_ref().map(|t| self.hom(t, x)).unwrap_or_default()
    }

    /// Checks that every composable pair has a row, that identities are
    /// units, that composition is associative and that the terminal
    /// object, if any, is terminal.
    pub fn check_laws(&self) -> Result<(), CategoryError> {
        for (g, (gd, _)) in &self.arrows {
            for (f, (_, fc)) in &self.arrows {
                if fc == gd && self.compose(g, f).is_none() {
                    return Err(CategoryError::MissingRow { g: g.clone(), f: f.clone() });
                }
            }
        }
        for (a, (d, c)) in &self.arrows {
            if self.compose(&self.identity(c)?, a) != Some(a) || self.compose(a, &self.identity(d)?) != Some(a) {
                return Err(CategoryError::IdentityLaw(a.clone()));
            }
        }
        for (h, (hd, _)) in &self.arrows {
            for (g, (gd, gc)) in &self.arrows {
                if gc != hd {
                    continue;
                }
                for (f, (_, fc)) in &self.arrows {
                    if fc != gd {
                        continue;
                    }
                    let hg = self.compose(h, g).expect("checked");
                    let gf = self.compose(g, f).expect("checked");
                    if self.compose(hg, f) != self.compose(h, gf) {
                        return Err(CategoryError::NotAssociative { h: h.clone(), g: g.clone(), f: f.clone() });
                    }
                }
            }
        }
        if let Some(t) = &self.terminal {
            if !self.objects.contains(t) {
                return Err(CategoryError::UnknownObject(t.clone()));
            }
            if self.objects.iter().any(|o| self.hom(o, t).len() != 1) {
                return Err(CategoryError::NotTerminal(t.clone()));
            }
        }
        Ok(())
    }
}

/// The skeleton of finite sets of size at most `n`: objects `S0 … Sn`,
/// and one arrow per function, named by its values (`m22_10` sends the
/// two elements of `S2` to `1` and `0`). `S1` is terminal.
pub fn sets_up_to(n: usize) -> FiniteCategory {
    fn functions(d: usize, c: usize) -> Vec<Vec<usize>> {
        (0..d).fold(vec![vec![]], |acc, _| {
            acc.into_iter().flat_map(|v| (0..c).map(move |x| [v.clone(), vec![x]].concat())).collect()
        })
    }
    fn name(d: usize, c: usize, vals: &[usize]) -> String {
        let digits: String = vals.iter().map(|v| v.to_string()).collect();
        if d == 0 {
            format!("m{d}{c}")
        } else {
            format!("m{d}{c}_{digits}")
        }
    }
    let objects: Vec<String> = (0..=n).map(|k| format!("S{k}")).collect();
    let mut arrows = BTreeMap::new();
    let mut values = BTreeMap::new();
    let mut identities = BTreeMap::new();
    for d in 0..=n {
        for c in 0..=n {
            for f in functions(d, c) {
                let a = name(d, c, &f);
                arrows.insert(a.clone(), (format!("S{d}"), format!("S{c}")));
                if d == c && f.iter().enumerate().all(|(i, v)| i == *v) {
                    identities.insert(format!("S{d}"), a.clone());
                }
                values.insert(a, (d, c, f));
            }
        }
    }
    let mut rows = BTreeMap::new();
    for (g, (gd, gc, gv)) in &values {
        for (f, (fd, fc, fv)) in &values {
            if fc == gd {
                let k: Vec<usize> = fv.iter().map(|&x| gv[x]).collect();
                rows.insert((g.clone(), f.clone()), name(*fd, *gc, &k));
            }
        }
    }
    let terminal = (n >= 1).then(|| "S1".to_string());
    FiniteCategory::new(&format!("Set{n}"), objects, arrows, identities, rows, terminal).expect("finite sets form a category")
}

fn walk(p: &mut Parser<'_>) -> Result<FiniteCategory, CategoryError> {
    p.expect_keyword("category")?;
    let name = p.ident()?;
    p.expect(&Tok::LBrace)?;
    let mut objects = Vec::new();
    let mut arrows = BTreeMap::new();
    let mut identities = BTreeMap::new();
    let mut rows = BTreeMap::new();
    let mut terminal = None;
    let declare = |arrows: &mut BTreeMap<String, (String, String)>, a: String, d: String, c: String| {
        if arrows.insert(a.clone(), (d, c)).is_some() {
            return Err(CategoryError::Duplicate(a));
        }
        Ok(())
    };
    while !p.eat(&Tok::RBrace) {
        if p.peek_at(1) == Some(&Tok::Circ) {
            let g = p.word()?;
            p.expect(&Tok::Circ)?;
            let f = p.word()?;
            p.expect(&Tok::Eq)?;
            let k = p.word()?;
            if rows.insert((g.clone(), f.clone()), k).is_some() {
                return Err(CategoryError::ConflictingRow { g, f });
            }
        } else {
            match p.word()?.as_str() {
                "object" => {
                    let o = p.word()?;
                    if objects.contains(&o) {
                        return Err(CategoryError::Duplicate(o));
                    }
                    let id = if p.eat_keyword("identity") { p.word()? } else { format!("id_{o}") };
                    declare(&mut arrows, id.clone(), o.clone(), o.clone())?;
                    identities.insert(o.clone(), id);
                    objects.push(o);
                }
                "terminal" => terminal = Some(p.word()?),
                "arrow" => {
                    let a = p.word()?;
                    p.expect(&Tok::Colon)?;
                    let d = p.word()?;
                    p.expect(&Tok::Arrow)?;
                    let c = p.word()?;
                    for o in [&d, &c] {
                        if !objects.contains(o) {
                            return Err(CategoryError::UnknownObject(o.clone()));
                        }
                    }
                    declare(&mut arrows, a, d, c)?;
                }
                other => return Err(p.error(format!("expected a declaration or a row, found `{other}`")).into()),
            }
        }
        p.eat(&Tok::Semi);
    }
    p.finish()?;
    FiniteCategory::new(&name, objects, arrows, identities, rows, terminal)
}

pub fn parse_category(text: &str) -> Result<FiniteCategory, CategoryError> {
    let empty = Signature::new();
    walk(&mut Parser::new(&empty, text)?)
}

pub fn print_category(c: &FiniteCategory) -> String {
    let mut out = format!("category {} {{\n", c.name);
    for o in &c.objects {
        let _ = writeln!(out, "  object {o} identity {}", c.identities[o]);
    }
    if let Some(t) = &c.terminal {
        let _ = writeln!(out, "  terminal {t}");
    }
    let ids: Vec<&String> = c.identities.values().collect();
    for (a, (d, cod)) in &c.arrows {
        if !ids.contains(&a) {
            let _ = writeln!(out, "  arrow {a} : {d} -> {cod}");
        }
    }
    for ((g, f), k) in &c.comp {
        if !ids.contains(&g) && !ids.contains(&f) {
            let _ = writeln!(out, "  {g} ∘ {f} = {k}");
        }
    }
    out.push_str("}\n");
    out
}
