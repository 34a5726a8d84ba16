//! Extensions by constants, definitional extensions and the canonical
//! term-complete extension.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::ctxiso::expand_unique_exists;
use crate::syntax::{
    check_formula, fresh_name, print_formula, Arrow, ArrowSort, Assignment, Context, Formula, Obj,
    Signature, Sort, Term, WfError,
};

use super::{term_category, Theory, TheoryError};

#[derive(Debug, Error)]
pub enum ExtensionError {
    #[error("entry {0}: the oracle cannot certify unique existence")]
    NotProvablyUnique(usize),
    #[error("entry {index} is ill-formed: {source}")]
    IllFormedEntry { index: usize, source: WfError },
    #[error("`{0}` was never canonicalised")]
    OutOfBudget(String),
    #[error("cannot compose: `{0}` is not the source of the second extension")]
    NotComposable(String),
    #[error(transparent)]
    Theory(#[from] TheoryError),
}

/// What the term-complete construction did.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletionReport {
    pub budget: usize,
    /// Entries whose unique existence was put to the oracle.
    pub examined: usize,
    /// The budget ran out before the construction saturated.
    pub exhausted: bool,
    pub stage1: Vec<String>,
    pub stage2: Vec<String>,
    /// Constants removed by the quotient, with their representative.
    pub merged: Vec<(String, String)>,
}

/// A theory morphism `source → target`, given by where it sends the
/// constants of `source`. Constants outside the translation's domain are
/// sent to themselves.
#[derive(Clone, Debug)]
pub struct Extension {
    pub source: Arc<Theory>,
    pub target: Arc<Theory>,
    pub translation: Assignment,
    pub report: Option<CompletionReport>,
    /// Canonical constants of enumerated arrow terms, for term-complete
    /// extensions.
    canon: BTreeMap<Arrow, String>,
}

impl Extension {
    pub fn identity(t: Arc<Theory>) -> Extension {
        Extension { source: t.clone(), target: t, translation: Assignment::new(), report: None, canon: BTreeMap::new() }
    }

    pub fn translate(&self, phi: &Formula) -> Formula {
        self.translation.formula(phi)
    }

    /// First `self`, then `next`.
    pub fn then(&self, next: &Extension) -> Result<Extension, ExtensionError> {
        let same = Arc::ptr_eq(&self.target, &next.source)
            || (self.target.name == next.source.name && self.target.signature == next.source.signature);
        if !same {
            return Err(ExtensionError::NotComposable(next.source.name.clone()));
        }
        Ok(Extension {
            source: self.source.clone(),
            target: next.target.clone(),
            translation: self.translation.then(&next.translation),
            report: next.report.clone(),
            canon: next.canon.clone(),
        })
    }

    /// Source axioms whose translation the target cannot prove.
    pub fn unverified_axioms(&self) -> Vec<String> {
        self.source
            .axioms
            .iter()
            .filter(|(_, phi)| !self.target.proves(&self.translate(phi)))
            .map(|(n, _)| n.clone())
            .collect()
    }
}

fn rebuild(base: &Theory, name: &str, sig: Signature, axioms: Vec<(String, Formula)>) -> Result<Arc<Theory>, TheoryError> {
    let mut t = Theory::new(name, sig, axioms, base.oracle().clone())?.with_terminal(base.terminal.clone());
    if let Some(d) = &base.delegation {
        t = t.with_delegation(d.clone());
    }
    Ok(Arc::new(t))
}

fn taken(sig: &Signature) -> impl Fn(&str) -> bool + '_ {
    move |n| sig.has_constant(n)
}

/// Adds one constant per variable of each entry and the axiom `P(c)`,
/// after the oracle certifies `∃!Δ. P`. `name_of(s, v)` suggests the name
/// of the constant for variable `v` of entry `s`.
fn extend_with(
    t: &Arc<Theory>,
    entries: &[(Context, Formula)],
    name_of: impl Fn(usize, &str) -> String,
) -> Result<(Arc<Theory>, Vec<String>), ExtensionError> {
    let mut sig = t.signature.clone();
    let mut axioms = t.axioms.clone();
    let mut added = Vec::new();
    for (s, (delta, p)) in entries.iter().enumerate() {
        let unique = expand_unique_exists(&t.signature, &Context::new(), delta, p)
            .map_err(|source| ExtensionError::IllFormedEntry { index: s, source })?;
        if !t.proves(&unique) {
            return Err(ExtensionError::NotProvablyUnique(s));
        }
        let mut sigma = Assignment::new();
        for d in &delta.decls {
            let c = fresh_name(&name_of(s, &d.name), taken(&sig));
            match &d.sort {
                Sort::Obj => {
                    sig.objects.insert(c.clone());
                    sigma = sigma.with_obj(&d.name, Obj::cst(&c));
                }
                Sort::Arr(srt) => {
                    sig.arrows.insert(c.clone(), ArrowSort::new(sigma.obj(&srt.dom), sigma.obj(&srt.cod)));
                    sigma = sigma.with_arrow(&d.name, Arrow::cst(&c));
                }
            }
            added.push(c);
        }
        let label = fresh_name("def", |n| axioms.iter().any(|(m, _)| m == n) || crate::kernel::builtin_axiom(n).is_some());
        axioms.push((label, sigma.formula(p)));
    }
    if entries.is_empty() {
        return Ok((t.clone(), added));
    }
    Ok((rebuild(t, &format!("{}'", t.name), sig, axioms)?, added))
}

/// The extension of `t` by a constant configuration for each entry
/// `(Δ, P)` with `t ⊢ ∃!Δ. P`.
pub fn extend_by_constants(t: Arc<Theory>, entries: &[(Context, Formula)]) -> Result<Extension, ExtensionError> {
    let (target, _) = extend_with(&t, entries, |s, v| format!("c{}_{v}", s + 1))?;
    Ok(Extension { source: t, target, translation: Assignment::new(), report: None, canon: BTreeMap::new() })
}

fn printed_order(a: &Arrow, b: &Arrow) -> std::cmp::Ordering {
    let (x, y) = (a.to_string(), b.to_string());
    x.len().cmp(&y.len()).then(x.cmp(&y))
}

/// Object-defining entries tried in the first stage: the terminal and the
/// initial object, as universal properties of a single object variable.
fn stage_one_entries() -> Vec<(Context, Formula)> {
    let x = Obj::var("X");
    let y = Sort::Obj;
    let unique_into = |into: bool| {
        let srt = if into {
            ArrowSort::new(Obj::var("Y"), x.clone())
        } else {
            ArrowSort::new(x.clone(), Obj::var("Y"))
        };
        Formula::forall(
            "Y",
            y.clone(),
            Formula::exists(
                "f",
                Sort::Arr(srt.clone()),
                Formula::forall("g", Sort::Arr(srt), Formula::eq(Arrow::var("g"), Arrow::var("f"))),
            ),
        )
    };
    let delta = Context::new().with_obj("X");
    let mut out = vec![(delta.clone(), unique_into(true)), (delta, unique_into(false))];
    out.sort_by_key(|(d, p)| {
        let s = format!("{} |- {}", crate::syntax::print_context(d), print_formula(p));
        (s.len(), s)
    });
    out
}

fn arrow_constants(sig: &Signature) -> Vec<(String, ArrowSort)> {
    sig.arrows.iter().map(|(n, s)| (n.clone(), s.clone())).collect()
}

/// `T_comp`: the canonical term-complete definitional extension, built in
/// three stages with at most `budget` entries put to the oracle.
///
/// Stage 1 adds object constants for certified universal properties.
/// Stage 2 closes the arrow constants under identities and composition,
/// adding a constant for every term not provably equal to an existing one.
/// Stage 3 keeps the least constant of each provable-equality class.
pub fn term_complete_extension(t: Arc<Theory>, budget: usize) -> Result<Extension, ExtensionError> {
    let mut report = CompletionReport { budget, ..Default::default() };
    let mut cur = t.clone();

    let mut accepted = Vec::new();
    for entry in stage_one_entries() {
        if report.examined == budget {
            report.exhausted = true;
            break;
        }
        report.examined += 1;
        let unique = expand_unique_exists(&cur.signature, &Context::new(), &entry.0, &entry.1)
            .map_err(|source| ExtensionError::IllFormedEntry { index: 0, source })?;
        if cur.proves(&unique) {
            accepted.push(entry);
        }
    }
    let (next, added) = extend_with(&cur, &accepted, |s, _| ["terminal", "initial"].get(s).unwrap_or(&"o").to_string())?;
    cur = next;
    report.stage1 = added;

    let mut covered: BTreeSet<Arrow> = BTreeSet::new();
    'closure: loop {
        let mut candidates: Vec<Arrow> = cur.signature.objects.iter().map(|o| Arrow::id(Obj::cst(o))).collect();
        let consts = arrow_constants(&cur.signature);
        for (g, gs) in &consts {
            for (f, fs) in &consts {
                if fs.cod == gs.dom {
                    candidates.push(Arrow::comp(Arrow::cst(g), Arrow::cst(f)));
                }
            }
        }
        candidates.retain(|c| !covered.contains(c));
        candidates.sort_by(printed_order);
        let mut progress = false;
        for term in candidates {
            covered.insert(term.clone());
            let scope = crate::syntax::Scope::new(&cur.signature, Context::new());
            let srt = scope.infer(&term).expect("constant terms are well-sorted");
            let known = cur
                .signature
                .arrows
                .iter()
                .filter(|(_, s)| **s == srt)
                .any(|(c, _)| cur.proves(&Formula::eq(term.clone(), Arrow::cst(c))));
            if known {
                continue;
            }
            if report.examined == budget {
                report.exhausted = true;
                break 'closure;
            }
            report.examined += 1;
            let entry = (Context::new().with_arr("f", srt.dom.clone(), srt.cod.clone()), Formula::eq(Arrow::var("f"), term.clone()));
            let suggested = match &term {
                Arrow::Id(o) => format!("i_{}", o.name().unwrap_or("o")),
                Arrow::Comp(g, f) => format!("{g}_{f}"),
                other => other.to_string(),
            };
            match extend_with(&cur, &[entry], |_, _| suggested.clone()) {
                Ok((next, added)) => {
                    cur = next;
                    report.stage2.extend(added);
                    progress = true;
                }
                Err(ExtensionError::NotProvablyUnique(_)) => {}
                Err(e) => return Err(e),
            }
        }
        if !progress {
            break;
        }
    }

    let (target, translation) = quotient(&cur, &mut report)?;
    let canon = canonicalise(&target);
    Ok(Extension { source: t, target, translation, report: Some(report), canon })
}

/// Stage 3: identifies provably equal arrow constants, keeping the least.
fn quotient(t: &Arc<Theory>, report: &mut CompletionReport) -> Result<(Arc<Theory>, Assignment), ExtensionError> {
    let mut by_sort: BTreeMap<ArrowSort, Vec<String>> = BTreeMap::new();
    for (n, s) in &t.signature.arrows {
        by_sort.entry(s.clone()).or_default().push(n.clone());
    }
    let mut rep: BTreeMap<String, String> = BTreeMap::new();
    for names in by_sort.values() {
        for (i, c) in names.iter().enumerate() {
            if rep.contains_key(c) {
                continue;
            }
            for d in &names[i + 1..] {
                if !rep.contains_key(d) && t.proves(&Formula::eq(Arrow::cst(c), Arrow::cst(d))) {
                    rep.insert(d.clone(), c.clone());
                }
            }
        }
    }
    if rep.is_empty() {
        return Ok((t.clone(), Assignment::new()));
    }
    let mut sigma = Assignment::new();
    for (d, c) in &rep {
        sigma.bind_atom(Term::Arr(Arrow::cst(d)), Term::Arr(Arrow::cst(c)));
        report.merged.push((d.clone(), c.clone()));
    }
    let mut sig = t.signature.clone();
    sig.arrows.retain(|n, _| !rep.contains_key(n));
    let axioms = t.axioms.iter().map(|(n, phi)| (n.clone(), sigma.formula(phi))).collect();
    Ok((rebuild(t, &format!("{}/=", t.name), sig, axioms)?, sigma))
}

/// The canonical constant of every closed arrow term of depth at most one.
fn canonicalise(t: &Arc<Theory>) -> BTreeMap<Arrow, String> {
    let mut out = BTreeMap::new();
    let Ok(tc) = term_category(t, &Context::new()) else {
        return out;
    };
    for ((dom, cod), terms) in tc.arrows(1) {
        let consts: Vec<&String> =
            t.signature.arrows.iter().filter(|(_, s)| s.dom == dom && s.cod == cod).map(|(n, _)| n).collect();
        for term in terms {
            if let Arrow::Const(c) = &term {
                out.insert(term.clone(), c.clone());
                continue;
            }
            if let Some(c) = consts.iter().find(|c| t.proves(&Formula::eq(term.clone(), Arrow::cst(c)))) {
                out.insert(term, (*c).clone());
            }
        }
    }
    out
}

/// The unique constant of a term-complete extension provably equal to `t`.
pub fn canonical_constant(e: &Extension, t: &Arrow) -> Result<String, ExtensionError> {
    if let Arrow::Const(c) = t {
        if e.target.signature.arrows.contains_key(c) {
            return Ok(c.clone());
        }
    }
    e.canon.get(t).cloned().ok_or_else(|| ExtensionError::OutOfBudget(t.to_string()))
}

/// Whether `phi` is well-formed and closed over the extension's target.
pub fn is_target_sentence(e: &Extension, phi: &Formula) -> bool {
    check_formula(&e.target.signature, &Context::new(), phi).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;
    use crate::theoria::{parse_theory, CongruenceOracle};

    fn theory(text: &str) -> Arc<Theory> {
        Arc::new(parse_theory(text).unwrap().into_theory(Arc::new(CongruenceOracle::default())).unwrap())
    }

    #[test]
    fn empty_entry_list_is_the_identity() {
        let t = theory("theory T { object A }");
        let e = extend_by_constants(t.clone(), &[]).unwrap();
        assert!(Arc::ptr_eq(&e.target, &t));
        assert!(e.translation.is_empty());
    }

    #[test]
    fn reflexive_definition_adds_a_constant() {
        let t = theory("theory T { object One terminal One }");
        let delta = Context::new().with_arr("f", Obj::cst("One"), Obj::cst("One"));
        let p = Formula::eq(Arrow::var("f"), Arrow::id(Obj::cst("One")));
        let e = extend_by_constants(t, &[(delta, p)]).unwrap();
        assert_eq!(e.target.signature.arrows["c1_f"], ArrowSort::new(Obj::cst("One"), Obj::cst("One")));
        let last = &e.target.axioms.last().unwrap().1;
        assert_eq!(print_formula(last), "c1_f = id One");
        assert!(e.unverified_axioms().is_empty());
    }

    #[test]
    fn unprovable_uniqueness_is_rejected() {
        let t = theory("theory T { object A object B arrow f : A -> B arrow g : A -> B }");
        let delta = Context::new().with_arr("h", Obj::cst("A"), Obj::cst("B"));
        let p = Formula::Top;
        let e = extend_by_constants(t, &[(delta, p)]).unwrap_err();
        assert!(matches!(e, ExtensionError::NotProvablyUnique(0)), "{e}");
    }

    #[test]
    fn zero_budget_only_quotients() {
        let t = theory("theory T { object A object B arrow f : A -> B arrow g : A -> B axiom f = g }");
        let e = term_complete_extension(t, 0).unwrap();
        assert_eq!(e.target.signature.arrows.keys().collect::<Vec<_>>(), vec!["f"]);
        assert_eq!(e.translation.arrow(&Arrow::cst("g")), Arrow::cst("f"));
        let r = e.report.as_ref().unwrap();
        assert_eq!(r.merged, vec![("g".to_string(), "f".to_string())]);
        assert!(r.exhausted);
    }

    #[test]
    fn canonical_constants_of_identities_and_composites() {
        let t = theory("theory T { object A object B arrow c : A -> B }");
        let e = term_complete_extension(t, 20).unwrap();
        let r = e.report.as_ref().unwrap();
        assert!(!r.exhausted, "{r:?}");
        let ia = canonical_constant(&e, &Arrow::id(Obj::cst("A"))).unwrap();
        assert_eq!(ia, "i_A");
        assert_eq!(canonical_constant(&e, &Arrow::cst("c")).unwrap(), "c");
        let t = Arrow::comp(Arrow::cst("c"), Arrow::cst("i_A"));
        assert_eq!(canonical_constant(&e, &t).unwrap(), "c");
        let deep = parse_formula(&e.target.signature, "comp c (comp (id A) (id A)) = c").unwrap();
        assert!(is_target_sentence(&e, &deep));
        let Formula::Eq(lhs, _) = deep else { unreachable!() };
        assert!(matches!(canonical_constant(&e, &lhs), Err(ExtensionError::OutOfBudget(_))));
    }

    #[test]
    fn composition_composes_translations() {
        let t = theory("theory T { object A arrow f : A -> A arrow g : A -> A arrow h : A -> A axiom f = g axiom g = h }");
        let e1 = term_complete_extension(t, 0).unwrap();
        let id = Extension::identity(e1.target.clone());
        let e = e1.then(&id).unwrap();
        assert_eq!(e.translation.arrow(&Arrow::cst("h")), Arrow::cst("f"));
        let other = Extension::identity(theory("theory U { object A }"));
        assert!(matches!(e1.then(&other), Err(ExtensionError::NotComposable(_))));
    }
}
