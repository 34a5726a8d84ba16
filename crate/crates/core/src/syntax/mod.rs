//! Syntax of the dependently sorted language of categories plus constants.
//!
//! Terms and formulas use a locally nameless representation: bound variables
//! are de Bruijn indices (`Bound`), free variables and constants carry names.
//! Binders keep a printable [`Hint`] that takes no part in equality, so two
//! alpha-equivalent formulas compare equal.

mod check;
mod parse;
mod print;
mod subst;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};

pub use check::{check_context, check_formula, check_sort, infer_arrow, infer_sort, Scope};
pub use parse::{
    parse_arrow, parse_context, parse_formula, parse_object, parse_sort, ParseError, Parser, Tok,
};
pub use print::{print_context, print_formula, print_sort};
pub use subst::{substitute, Assignment};

use thiserror::Error;

/// Object terms. There are no object-forming operations, only names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Obj {
    Const(String),
    Var(String),
    Bound(usize),
}

/// The dependent sort `dom -> cod`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowSort {
    pub dom: Obj,
    pub cod: Obj,
}

/// Arrow terms. `Comp(outer, inner)` is `outer ∘ inner`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    Const(String),
    Var(String),
    Bound(usize),
    Id(Obj),
    Comp(Box<Arrow>, Box<Arrow>),
}

/// Sort of a declared or bound variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Obj,
    Arr(ArrowSort),
}

/// A term of either kind, used wherever a variable of unknown kind is instantiated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Obj(Obj),
    Arr(Arrow),
}

/// Printable name of a binder. Ignored by `==` and `Hash`.
#[derive(Clone, Debug, Default)]
pub struct Hint(pub String);

impl PartialEq for Hint {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}
impl Eq for Hint {}
impl Hash for Hint {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}
impl PartialOrd for Hint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Hint {
    fn cmp(&self, _: &Self) -> std::cmp::Ordering {
        std::cmp::Ordering::Equal
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binder {
    pub hint: Hint,
    pub sort: Sort,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quant {
    Forall,
    Exists,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Arrow, Arrow),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Top,
    Bot,
    Forall(Binder, Box<Formula>),
    Exists(Binder, Box<Formula>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decl {
    pub name: String,
    pub sort: Sort,
}

/// Ordered variable declarations; arrow sorts may mention earlier object variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Context {
    pub decls: Vec<Decl>,
}

/// Object and arrow constants. Arrow constant sorts mention object constants only.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub objects: BTreeSet<String>,
    pub arrows: BTreeMap<String, ArrowSort>,
}

/// Well-formedness failures for contexts, terms and formulas.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum WfError {
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("declaration of `{var}` mentions `{missing}` before it is declared")]
    UndeclaredSortDependency { var: String, missing: String },
    #[error("variable `{0}` shadows a constant of the signature")]
    ShadowsConstant(String),
    #[error("unbound name `{0}`")]
    UnboundName(String),
    #[error("`{0}` is used at the wrong kind")]
    KindMismatch(String),
    #[error("cannot compose: inner codomain `{cod}` differs from outer domain `{dom}`")]
    EndpointMismatch { cod: String, dom: String },
    #[error("equation between different sorts `{lhs}` and `{rhs}`")]
    SortMismatchInEq { lhs: String, rhs: String },
    #[error("quantifier over `{bound}` captures the sort of free arrow variable `{arrow}`")]
    IllFormedQuantifier { bound: String, arrow: String },
    #[error("no binding for `{0}`")]
    MissingBinding(String),
    #[error("dangling bound index {0}")]
    DanglingIndex(usize),
}

impl WfError {
    /// The variant name, for diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            WfError::DuplicateVariable(_) => "DuplicateVariable",
            WfError::UndeclaredSortDependency { .. } => "UndeclaredSortDependency",
            WfError::ShadowsConstant(_) => "ShadowsConstant",
            WfError::UnboundName(_) => "UnboundName",
            WfError::KindMismatch(_) => "KindMismatch",
            WfError::EndpointMismatch { .. } => "EndpointMismatch",
            WfError::SortMismatchInEq { .. } => "SortMismatchInEq",
            WfError::IllFormedQuantifier { .. } => "IllFormedQuantifier",
            WfError::MissingBinding(_) => "MissingBinding",
            WfError::DanglingIndex(_) => "DanglingIndex",
        }
    }
}

// ---------------------------------------------------------------------------
// Constructors and small helpers

impl Obj {
    pub fn var(name: &str) -> Obj {
        Obj::Var(name.to_string())
    }
    pub fn cst(name: &str) -> Obj {
        Obj::Const(name.to_string())
    }
    pub fn name(&self) -> Option<&str> {
        match self {
            Obj::Const(n) | Obj::Var(n) => Some(n),
            Obj::Bound(_) => None,
        }
    }
}

impl ArrowSort {
    pub fn new(dom: Obj, cod: Obj) -> Self {
        ArrowSort { dom, cod }
    }
}

impl Arrow {
    pub fn var(name: &str) -> Arrow {
        Arrow::Var(name.to_string())
    }
    pub fn cst(name: &str) -> Arrow {
        Arrow::Const(name.to_string())
    }
    pub fn id(o: Obj) -> Arrow {
        Arrow::Id(o)
    }
    /// `outer ∘ inner`
    pub fn comp(outer: Arrow, inner: Arrow) -> Arrow {
        Arrow::Comp(Box::new(outer), Box::new(inner))
    }

    pub fn size(&self) -> usize {
        match self {
            Arrow::Comp(g, f) => 1 + g.size() + f.size(),
            _ => 1,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Arrow::Comp(g, f) => 1 + g.depth().max(f.depth()),
            _ => 0,
        }
    }

    /// True if `self` mentions the free arrow variable `name`.
    pub fn mentions_var(&self, name: &str) -> bool {
        match self {
            Arrow::Var(n) => n == name,
            Arrow::Comp(g, f) => g.mentions_var(name) || f.mentions_var(name),
            _ => false,
        }
    }

    /// True if no variables (free or bound) occur.
    pub fn is_ground(&self) -> bool {
        match self {
            Arrow::Const(_) => true,
            Arrow::Var(_) | Arrow::Bound(_) => false,
            Arrow::Id(o) => matches!(o, Obj::Const(_)),
            Arrow::Comp(g, f) => g.is_ground() && f.is_ground(),
        }
    }
}

impl Term {
    pub fn as_obj(&self) -> Option<&Obj> {
        match self {
            Term::Obj(o) => Some(o),
            Term::Arr(_) => None,
        }
    }
    pub fn as_arrow(&self) -> Option<&Arrow> {
        match self {
            Term::Arr(a) => Some(a),
            Term::Obj(_) => None,
        }
    }
}

impl Binder {
    pub fn new(hint: &str, sort: Sort) -> Self {
        Binder { hint: Hint(hint.to_string()), sort }
    }
    pub fn obj(hint: &str) -> Self {
        Binder::new(hint, Sort::Obj)
    }
    pub fn arr(hint: &str, sort: ArrowSort) -> Self {
        Binder::new(hint, Sort::Arr(sort))
    }
}

impl Formula {
    pub fn eq(lhs: Arrow, rhs: Arrow) -> Formula {
        Formula::Eq(lhs, rhs)
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }
    /// `φ ⟹ ⊥`; negation is notation, not a constructor.
    pub fn negation(a: Formula) -> Formula {
        Formula::implies(a, Formula::Bot)
    }
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    /// Right-nested conjunction; the empty conjunction is `⊤`.
    pub fn conj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut parts: Vec<Formula> = parts.into_iter().collect();
        let Some(mut acc) = parts.pop() else {
            return Formula::Top;
        };
        while let Some(p) = parts.pop() {
            acc = Formula::and(p, acc);
        }
        acc
    }

    /// Binds the free variable `name` (of sort `sort`) with quantifier `q`.
    pub fn bind(q: Quant, name: &str, sort: Sort, body: Formula) -> Formula {
        let body = Box::new(body.close(name));
        let b = Binder::new(name, sort);
        match q {
            Quant::Forall => Formula::Forall(b, body),
            Quant::Exists => Formula::Exists(b, body),
        }
    }

    pub fn forall(name: &str, sort: Sort, body: Formula) -> Formula {
        Formula::bind(Quant::Forall, name, sort, body)
    }
    pub fn exists(name: &str, sort: Sort, body: Formula) -> Formula {
        Formula::bind(Quant::Exists, name, sort, body)
    }

    /// Quantifies over every declaration of `ctx`, outermost first.
    pub fn bind_all(q: Quant, ctx: &Context, body: Formula) -> Formula {
        ctx.decls.iter().rev().fold(body, |acc, d| {
            Formula::bind(q.clone(), &d.name, d.sort.clone(), acc)
        })
    }

    pub fn as_quant(&self) -> Option<(Quant, &Binder, &Formula)> {
        match self {
            Formula::Forall(b, body) => Some((Quant::Forall, b, body)),
            Formula::Exists(b, body) => Some((Quant::Exists, b, body)),
            _ => None,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Eq(a, b) => 1 + a.size() + b.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
            Formula::Top | Formula::Bot => 1,
            Formula::Forall(_, b) | Formula::Exists(_, b) => 1 + b.size(),
        }
    }

    /// Nesting depth of connectives and quantifiers (atoms have depth 0).
    pub fn depth(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Top | Formula::Bot => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => 1 + b.depth(),
        }
    }

    /// Built only from ∧, ∨, =, ⊤, ⊥ and ∃.
    pub fn is_positive(&self) -> bool {
        match self {
            Formula::Eq(..) | Formula::Top | Formula::Bot => true,
            Formula::And(a, b) | Formula::Or(a, b) => a.is_positive() && b.is_positive(),
            Formula::Exists(_, b) => b.is_positive(),
            Formula::Implies(..) | Formula::Forall(..) => false,
        }
    }

    /// No free variables and no dangling indices.
    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty() && self.is_locally_closed()
    }

    pub fn is_locally_closed(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |leaf, depth| {
            if let Leaf::Obj(Obj::Bound(i)) | Leaf::Arrow(Arrow::Bound(i)) = leaf {
                if *i >= depth {
                    ok = false;
                }
            }
        });
        ok
    }
}

impl Context {
    pub fn new() -> Self {
        Context::default()
    }
    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }
    pub fn len(&self) -> usize {
        self.decls.len()
    }
    pub fn lookup(&self, name: &str) -> Option<&Sort> {
        self.decls.iter().rev().find(|d| d.name == name).map(|d| &d.sort)
    }
    pub fn contains(&self, name: &str) -> bool {
        self.lookup(name).is_some()
    }
    pub fn push(&mut self, name: &str, sort: Sort) {
        self.decls.push(Decl { name: name.to_string(), sort });
    }
    pub fn with(mut self, name: &str, sort: Sort) -> Self {
        self.push(name, sort);
        self
    }
    pub fn with_obj(self, name: &str) -> Self {
        self.with(name, Sort::Obj)
    }
    pub fn with_arr(self, name: &str, dom: Obj, cod: Obj) -> Self {
        self.with(name, Sort::Arr(ArrowSort::new(dom, cod)))
    }
    pub fn extend(&self, other: &Context) -> Context {
        let mut c = self.clone();
        c.decls.extend(other.decls.iter().cloned());
        c
    }
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.decls.iter().map(|d| d.name.as_str())
    }
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }
    pub fn with_object(mut self, name: &str) -> Self {
        self.objects.insert(name.to_string());
        self
    }
    pub fn with_arrow(mut self, name: &str, dom: &str, cod: &str) -> Self {
        self.arrows
            .insert(name.to_string(), ArrowSort::new(Obj::cst(dom), Obj::cst(cod)));
        self
    }
    pub fn has_constant(&self, name: &str) -> bool {
        self.objects.contains(name) || self.arrows.contains_key(name)
    }
    pub fn is_empty(&self) -> bool {
        self.objects.is_empty() && self.arrows.is_empty()
    }
    /// Arrow constants of sort `dom -> cod`, in name order.
    pub fn hom(&self, dom: &str, cod: &str) -> Vec<String> {
        self.arrows
            .iter()
            .filter(|(_, s)| s.dom.name() == Some(dom) && s.cod.name() == Some(cod))
            .map(|(n, _)| n.clone())
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Traversal

/// A leaf of the syntax tree, as seen by [`Formula::visit`].
pub enum Leaf<'a> {
    Obj(&'a Obj),
    Arrow(&'a Arrow),
}

/// Rewrites leaves (object terms and non-compound arrow terms). `depth` is
/// the number of binders crossed since the traversal root.
pub trait LeafMap {
    fn obj(&mut self, o: &Obj, depth: usize) -> Option<Obj>;
    fn arrow(&mut self, a: &Arrow, depth: usize) -> Option<Arrow>;
}

impl Obj {
    pub fn rewrite<M: LeafMap>(&self, depth: usize, m: &mut M) -> Obj {
        m.obj(self, depth).unwrap_or_else(|| self.clone())
    }
}

impl ArrowSort {
    pub fn rewrite<M: LeafMap>(&self, depth: usize, m: &mut M) -> ArrowSort {
        ArrowSort { dom: self.dom.rewrite(depth, m), cod: self.cod.rewrite(depth, m) }
    }
}

impl Sort {
    pub fn rewrite<M: LeafMap>(&self, depth: usize, m: &mut M) -> Sort {
        match self {
            Sort::Obj => Sort::Obj,
            Sort::Arr(s) => Sort::Arr(s.rewrite(depth, m)),
        }
    }
    pub fn as_arrow(&self) -> Option<&ArrowSort> {
        match self {
            Sort::Arr(s) => Some(s),
            Sort::Obj => None,
        }
    }
}

impl Arrow {
    pub fn rewrite<M: LeafMap>(&self, depth: usize, m: &mut M) -> Arrow {
        match self {
            Arrow::Id(o) => Arrow::Id(o.rewrite(depth, m)),
            Arrow::Comp(g, f) => Arrow::comp(g.rewrite(depth, m), f.rewrite(depth, m)),
            leaf => m.arrow(leaf, depth).unwrap_or_else(|| leaf.clone()),
        }
    }
}

impl Term {
    pub fn rewrite<M: LeafMap>(&self, depth: usize, m: &mut M) -> Term {
        match self {
            Term::Obj(o) => Term::Obj(o.rewrite(depth, m)),
            Term::Arr(a) => Term::Arr(a.rewrite(depth, m)),
        }
    }
}

impl Formula {
    pub fn rewrite<M: LeafMap>(&self, depth: usize, m: &mut M) -> Formula {
        match self {
            Formula::Eq(a, b) => Formula::Eq(a.rewrite(depth, m), b.rewrite(depth, m)),
            Formula::And(a, b) => Formula::and(a.rewrite(depth, m), b.rewrite(depth, m)),
            Formula::Or(a, b) => Formula::or(a.rewrite(depth, m), b.rewrite(depth, m)),
            Formula::Implies(a, b) => {
                Formula::implies(a.rewrite(depth, m), b.rewrite(depth, m))
            }
            Formula::Top => Formula::Top,
            Formula::Bot => Formula::Bot,
            Formula::Forall(b, body) => Formula::Forall(
                Binder { hint: b.hint.clone(), sort: b.sort.rewrite(depth, m) },
                Box::new(body.rewrite(depth + 1, m)),
            ),
            Formula::Exists(b, body) => Formula::Exists(
                Binder { hint: b.hint.clone(), sort: b.sort.rewrite(depth, m) },
                Box::new(body.rewrite(depth + 1, m)),
            ),
        }
    }

    /// Calls `f` on every leaf with the current binder depth.
    pub fn visit(&self, f: &mut impl FnMut(Leaf<'_>, usize)) {
        fn obj(o: &Obj, d: usize, f: &mut impl FnMut(Leaf<'_>, usize)) {
            f(Leaf::Obj(o), d)
        }
        fn arrow(a: &Arrow, d: usize, f: &mut impl FnMut(Leaf<'_>, usize)) {
            match a {
                Arrow::Id(o) => obj(o, d, f),
                Arrow::Comp(g, h) => {
                    arrow(g, d, f);
                    arrow(h, d, f);
                }
                leaf => f(Leaf::Arrow(leaf), d),
            }
        }
        fn sort(s: &Sort, d: usize, f: &mut impl FnMut(Leaf<'_>, usize)) {
            if let Sort::Arr(s) = s {
                obj(&s.dom, d, f);
                obj(&s.cod, d, f);
            }
        }
        fn go(phi: &Formula, d: usize, f: &mut impl FnMut(Leaf<'_>, usize)) {
            match phi {
                Formula::Eq(a, b) => {
                    arrow(a, d, f);
                    arrow(b, d, f);
                }
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    go(a, d, f);
                    go(b, d, f);
                }
                Formula::Top | Formula::Bot => {}
                Formula::Forall(b, body) | Formula::Exists(b, body) => {
                    sort(&b.sort, d, f);
                    go(body, d + 1, f);
                }
            }
        }
        go(self, 0, f)
    }

    /// Names of free variables, in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        self.visit(&mut |leaf, _| {
            let n = match leaf {
                Leaf::Obj(Obj::Var(n)) | Leaf::Arrow(Arrow::Var(n)) => n,
                _ => return,
            };
            if !out.contains(n) {
                out.push(n.clone());
            }
        });
        out
    }

    /// Names of constants, in order of first occurrence.
    pub fn constants(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        self.visit(&mut |leaf, _| {
            let n = match leaf {
                Leaf::Obj(Obj::Const(n)) | Leaf::Arrow(Arrow::Const(n)) => n,
                _ => return,
            };
            if !out.contains(n) {
                out.push(n.clone());
            }
        });
        out
    }

    pub fn mentions(&self, name: &str) -> bool {
        self.free_vars().iter().any(|n| n == name)
    }

    /// Instantiates the outermost bound variable of a quantifier body.
    pub fn open(&self, with: &Term) -> Formula {
        self.rewrite(0, &mut Open { with })
    }

    /// Opens with a fresh free variable of the binder's kind.
    pub fn open_var(&self, binder: &Binder, name: &str) -> Formula {
        let t = match binder.sort {
            Sort::Obj => Term::Obj(Obj::var(name)),
            Sort::Arr(_) => Term::Arr(Arrow::var(name)),
        };
        self.open(&t)
    }

    /// Abstracts the free variable `name` as the outermost bound variable.
    pub fn close(&self, name: &str) -> Formula {
        self.rewrite(0, &mut Close { name })
    }
}

struct Open<'a> {
    with: &'a Term,
}

impl LeafMap for Open<'_> {
    fn obj(&mut self, o: &Obj, depth: usize) -> Option<Obj> {
        match (o, self.with) {
            (Obj::Bound(i), Term::Obj(t)) if *i == depth => Some(t.clone()),
            (Obj::Bound(i), _) if *i > depth => Some(Obj::Bound(i - 1)),
            _ => None,
        }
    }
    fn arrow(&mut self, a: &Arrow, depth: usize) -> Option<Arrow> {
        match (a, self.with) {
            (Arrow::Bound(i), Term::Arr(t)) if *i == depth => Some(t.clone()),
            (Arrow::Bound(i), _) if *i > depth => Some(Arrow::Bound(i - 1)),
            _ => None,
        }
    }
}

struct Close<'a> {
    name: &'a str,
}

impl LeafMap for Close<'_> {
    fn obj(&mut self, o: &Obj, depth: usize) -> Option<Obj> {
        match o {
            Obj::Var(n) if n == self.name => Some(Obj::Bound(depth)),
            Obj::Bound(i) if *i >= depth => Some(Obj::Bound(i + 1)),
            _ => None,
        }
    }
    fn arrow(&mut self, a: &Arrow, depth: usize) -> Option<Arrow> {
        match a {
            Arrow::Var(n) if n == self.name => Some(Arrow::Bound(depth)),
            Arrow::Bound(i) if *i >= depth => Some(Arrow::Bound(i + 1)),
            _ => None,
        }
    }
}

/// Returns a name based on `base` that `taken` rejects, trying `base`, `base1`, ...
pub fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    let base = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let base = if base.is_empty() { "v" } else { base };
    if !taken(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|n| !taken(n))
        .expect("unbounded")
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obj::Const(n) | Obj::Var(n) => f.write_str(n),
            Obj::Bound(i) => write!(f, "#{i}"),
        }
    }
}

impl fmt::Display for ArrowSort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.dom, self.cod)
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print_arrow_with(self, &[]))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Obj(o) => write!(f, "{o}"),
            Term::Arr(a) => write!(f, "{a}"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_context(self))
    }
}
