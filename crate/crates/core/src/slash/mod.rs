//! Positive diagrams, congruence closure and the Friedman slash.

mod eval;
mod file;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::syntax::{Arrow, ArrowSort, Formula, Obj, ParseError, WfError};
use crate::theoria::Theory;

pub use eval::{check_fp_implies_provable, fp_eval, replay, FpCertificate, FpCheck, Provability, Step};
pub use file::{parse_model, print_model};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SlashError {
    #[error("the theory does not prove `{0} = {1}`")]
    NotProvable(String, String),
    #[error("the classes of `{0}` do not form an equivalence relation")]
    NotEquivalence(String),
    #[error("`{f1} ~ {f2}` and `{g1} ~ {g2}` but their composites are not merged")]
    NotCongruent { f1: String, f2: String, g1: String, g2: String },
    #[error("unknown arrow constant `{0}`")]
    UnknownConstant(String),
    #[error("no constant is known to equal `{0}`")]
    Uncanonical(String),
    #[error("the oracle could not decide `{0}`")]
    OracleIncomplete(String),
    #[error(transparent)]
    IllFormed(#[from] WfError),
    #[error("certificate does not replay: {0}")]
    Replay(String),
    #[error("model file: {0}")]
    Parse(#[from] ParseError),
}

/// Which constant each identity and each composite of two constants equals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompTable {
    pub ids: BTreeMap<String, String>,
    pub comps: BTreeMap<(String, String), String>,
}

fn sort_of(t: &Theory, c: &str) -> Result<ArrowSort, SlashError> {
    t.signature.arrows.get(c).cloned().ok_or_else(|| SlashError::UnknownConstant(c.to_string()))
}

fn constants_of<'a>(t: &'a Theory, srt: &ArrowSort) -> impl Iterator<Item = &'a String> {
    let srt = srt.clone();
    t.signature.arrows.iter().filter(move |(_, s)| **s == srt).map(|(n, _)| n)
}

impl CompTable {
    /// Fills the table by asking the oracle, for each identity and each
    /// composable pair, which constant of the right sort it equals. A
    /// constant defined by an axiom `c = term` is preferred; otherwise the
    /// least provably equal constant is taken. Entries the oracle cannot
    /// settle are left out.
    pub fn from_oracle(t: &Theory) -> CompTable {
        let mut table = CompTable::default();
        let defined = |term: &Arrow| {
            t.axioms.iter().find_map(|(_, phi)| match phi {
                Formula::Eq(Arrow::Const(c), rhs) if rhs == term => Some(c.clone()),
                Formula::Eq(lhs, Arrow::Const(c)) if lhs == term => Some(c.clone()),
                _ => None,
            })
        };
        let first_equal = |term: Arrow, srt: &ArrowSort| {
            defined(&term)
                .or_else(|| constants_of(t, srt).find(|c| t.proves(&Formula::eq(term.clone(), Arrow::cst(c)))).cloned())
        };
        for o in &t.signature.objects {
            let srt = ArrowSort::new(Obj::cst(o), Obj::cst(o));
            if let Some(c) = first_equal(Arrow::id(Obj::cst(o)), &srt) {
                table.ids.insert(o.clone(), c);
            }
        }
        for (g, gs) in &t.signature.arrows {
            for (f, fs) in &t.signature.arrows {
                if fs.cod != gs.dom {
                    continue;
                }
                let srt = ArrowSort::new(fs.dom.clone(), gs.cod.clone());
                if let Some(c) = first_equal(Arrow::comp(Arrow::cst(g), Arrow::cst(f)), &srt) {
                    table.comps.insert((g.clone(), f.clone()), c);
                }
            }
        }
        table
    }

    /// The constant equal to a closed arrow term.
    pub fn canon(&self, t: &Arrow) -> Result<String, SlashError> {
        let found = match t {
            Arrow::Const(c) => Some(c.clone()),
            Arrow::Id(Obj::Const(o)) => self.ids.get(o).cloned(),
            Arrow::Comp(g, f) => {
                let (g, f) = (self.canon(g)?, self.canon(f)?);
                self.comps.get(&(g, f)).cloned()
            }
            _ => None,
        };
        found.ok_or_else(|| SlashError::Uncanonical(t.to_string()))
    }
}

/// A positive diagram: a partition of the arrow constants of each hom into
/// classes of constants declared equal.
#[derive(Clone, Debug)]
pub struct Model {
    pub theory: Arc<Theory>,
    pub table: CompTable,
    /// The classes with more than one member, as given.
    pub classes: Vec<Vec<String>>,
}

impl Model {
    /// Each constant alone.
    pub fn discrete(theory: Arc<Theory>, table: CompTable) -> Model {
        Model { theory, table, classes: Vec::new() }
    }

    pub fn with_classes(theory: Arc<Theory>, table: CompTable, classes: Vec<Vec<String>>) -> Model {
        Model { theory, table, classes }
    }

    pub fn same(&self, f: &str, g: &str) -> bool {
        f == g || self.classes.iter().any(|c| c.iter().any(|x| x == f) && c.iter().any(|x| x == g))
    }

    /// The least member of the class of `f`.
    pub fn representative(&self, f: &str) -> String {
        self.classes
            .iter()
            .find(|c| c.iter().any(|x| x == f))
            .and_then(|c| c.iter().min().cloned())
            .unwrap_or_else(|| f.to_string())
    }

    /// One constant per class in the hom `srt`, the least of each.
    pub fn domain(&self, srt: &ArrowSort) -> Vec<String> {
        let reps: BTreeSet<String> = constants_of(&self.theory, srt).map(|c| self.representative(c)).collect();
        reps.into_iter().collect()
    }

    /// Whether the closed equation `lhs = rhs` belongs to the diagram.
    pub fn holds(&self, lhs: &Arrow, rhs: &Arrow) -> Result<bool, SlashError> {
        Ok(self.same(&self.table.canon(lhs)?, &self.table.canon(rhs)?))
    }
}

/// Checks that the diagram is provable, an equivalence on each hom and a
/// congruence for composition.
pub fn validate_model(t: &Theory, m: &Model) -> Result<(), SlashError> {
    let mut seen = BTreeSet::new();
    for class in &m.classes {
        let Some(first) = class.first() else { continue };
        let srt = sort_of(t, first)?;
        for c in class {
            if sort_of(t, c)? != srt || !seen.insert(c.clone()) {
                return Err(SlashError::NotEquivalence(srt.to_string()));
            }
        }
        for (i, f1) in class.iter().enumerate() {
            for f2 in &class[i + 1..] {
                if !t.proves(&Formula::eq(Arrow::cst(f1), Arrow::cst(f2))) {
                    return Err(SlashError::NotProvable(f1.clone(), f2.clone()));
                }
            }
        }
    }
    let merged: Vec<(String, String)> = m
        .classes
        .iter()
        .flat_map(|c| c.iter().flat_map(move |a| c.iter().map(move |b| (a.clone(), b.clone()))))
        .filter(|(a, b)| a != b)
        .collect();
    let reflexive = t.signature.arrows.keys().map(|c| (c.clone(), c.clone()));
    let pairs: Vec<(String, String)> = reflexive.chain(merged.iter().cloned()).collect();
    for (f1, f2) in &merged {
        let fs = sort_of(t, f1)?;
        for (g1, g2) in &pairs {
            let gs = sort_of(t, g1)?;
            let check = |g1: &str, g2: &str, f1: &str, f2: &str| -> Result<(), SlashError> {
                let a = m.table.canon(&Arrow::comp(Arrow::cst(g1), Arrow::cst(f1)))?;
                let b = m.table.canon(&Arrow::comp(Arrow::cst(g2), Arrow::cst(f2)))?;
                if m.same(&a, &b) {
                    Ok(())
                } else {
                    Err(SlashError::NotCongruent { f1: f1.into(), f2: f2.into(), g1: g1.into(), g2: g2.into() })
                }
            };
            if gs.dom == fs.cod {
                check(g1, g2, f1, f2)?;
            }
            if fs.dom == gs.cod {
                check(f1, f2, g1, g2)?;
            }
        }
    }
    Ok(())
}

fn find(parent: &mut BTreeMap<String, String>, x: &str) -> String {
    let p = parent.get(x).cloned().unwrap_or_else(|| x.to_string());
    if p == x {
        return p;
    }
    let root = find(parent, &p);
    parent.insert(x.to_string(), root.clone());
    root
}

fn union(parent: &mut BTreeMap<String, String>, a: &str, b: &str) -> bool {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra == rb {
        return false;
    }
    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
    parent.insert(hi, lo);
    true
}

/// The least diagram containing `seeds` that is closed under composition.
pub fn congruence_close(t: Arc<Theory>, table: CompTable, seeds: &[(String, String)]) -> Result<Model, SlashError> {
    let mut parent = BTreeMap::new();
    for (a, b) in seeds {
        if sort_of(&t, a)? != sort_of(&t, b)? || !t.proves(&Formula::eq(Arrow::cst(a), Arrow::cst(b))) {
            return Err(SlashError::NotProvable(a.clone(), b.clone()));
        }
        union(&mut parent, a, b);
    }
    let consts: Vec<String> = t.signature.arrows.keys().cloned().collect();
    loop {
        let mut changed = false;
        let classes = group(&mut parent, &consts);
        for class in classes.values() {
            for (f1, f2) in class.iter().flat_map(|a| class.iter().map(move |b| (a, b))) {
                for g in &consts {
                    for (x, y) in [
                        (Arrow::comp(Arrow::cst(g), Arrow::cst(f1)), Arrow::comp(Arrow::cst(g), Arrow::cst(f2))),
                        (Arrow::comp(Arrow::cst(f1), Arrow::cst(g)), Arrow::comp(Arrow::cst(f2), Arrow::cst(g))),
                    ] {
                        if let (Ok(a), Ok(b)) = (table.canon(&x), table.canon(&y)) {
                            changed |= union(&mut parent, &a, &b);
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let classes = group(&mut parent, &consts).into_values().filter(|c| c.len() > 1).collect();
    Ok(Model::with_classes(t, table, classes))
}

fn group(parent: &mut BTreeMap<String, String>, consts: &[String]) -> BTreeMap<String, Vec<String>> {
    let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for c in consts {
        let r = find(parent, c);
        out.entry(r).or_default().push(c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theoria::{parse_theory, CongruenceOracle};

    fn theory(text: &str) -> Arc<Theory> {
        Arc::new(parse_theory(text).unwrap().into_theory(Arc::new(CongruenceOracle::default())).unwrap())
    }

    const WHISKER: &str = "theory W { object A object B object C
        arrow f : A -> B arrow g : A -> B arrow h : B -> C
        arrow hf : A -> C arrow hg : A -> C
        axiom f = g axiom hf = comp h f axiom hg = comp h g }";

    #[test]
    fn discrete_model_is_valid() {
        let t = theory(WHISKER);
        let m = Model::discrete(t.clone(), CompTable::from_oracle(&t));
        validate_model(&t, &m).unwrap();
    }

    #[test]
    fn unprovable_merge_is_rejected() {
        let t = theory("theory T { object A object B arrow f : A -> B arrow g : A -> B }");
        let m = Model::with_classes(t.clone(), CompTable::from_oracle(&t), vec![vec!["f".into(), "g".into()]]);
        assert_eq!(validate_model(&t, &m), Err(SlashError::NotProvable("f".into(), "g".into())));
    }

    #[test]
    fn missing_composite_merge_is_not_congruent() {
        let t = theory(WHISKER);
        let m = Model::with_classes(t.clone(), CompTable::from_oracle(&t), vec![vec!["f".into(), "g".into()]]);
        assert!(matches!(validate_model(&t, &m), Err(SlashError::NotCongruent { .. })));
    }

    #[test]
    fn overlapping_classes_are_not_an_equivalence() {
        let t = theory("theory T { object A arrow f : A -> A arrow g : A -> A axiom f = g }");
        let classes = vec![vec!["f".into(), "g".into()], vec!["g".into()]];
        let m = Model::with_classes(t.clone(), CompTable::from_oracle(&t), classes);
        assert!(matches!(validate_model(&t, &m), Err(SlashError::NotEquivalence(_))));
    }

    #[test]
    fn closure_merges_whiskered_composites() {
        let t = theory(WHISKER);
        let table = CompTable::from_oracle(&t);
        assert!(congruence_close(t.clone(), table.clone(), &[]).unwrap().classes.is_empty());
        let m = congruence_close(t.clone(), table, &[("f".into(), "g".into())]).unwrap();
        assert!(m.same("hf", "hg"));
        validate_model(&t, &m).unwrap();
    }

    #[test]
    fn closure_is_transitive() {
        let t = theory("theory T { object A object B arrow f : A -> B arrow g : A -> B arrow h : A -> B axiom f = g axiom g = h }");
        let m = congruence_close(t.clone(), CompTable::from_oracle(&t), &[("f".into(), "g".into()), ("g".into(), "h".into())])
            .unwrap();
        assert_eq!(m.classes, vec![vec!["f".to_string(), "g".into(), "h".into()]]);
        let t2 = theory("theory T { object A object B arrow f : A -> B arrow g : A -> B }");
        let e = congruence_close(t2.clone(), CompTable::from_oracle(&t2), &[("f".into(), "g".into())]).unwrap_err();
        assert_eq!(e, SlashError::NotProvable("f".into(), "g".into()));
    }
}
