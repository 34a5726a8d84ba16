//! Global sections, the Freyd cover as a comma category, and the theory
//! and model it induces.
//!
//! The cover glues a finite category of sets `Tiny` to the canonical
//! term-complete extension of a theory along its global-sections functor.
//! Objects are triples `(X, S, f : X → GS(S))` and arrows are commuting
//! pairs `(h, φ)`. Objects are named `O0, O1, …` and arrows `F0, F1, …`
//! in a fixed order; [`FreydCategory::legend`] spells each name out.

pub mod category;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::slash::{CompTable, Model};
use crate::syntax::{Arrow, ArrowSort, Assignment, Obj, Signature, Term};
use crate::theoria::{canonical_constant, Delegation, DelegatingOracle, Extension, Theory, TheoryError};

pub use category::{parse_category, print_category, sets_up_to, CategoryError, FiniteCategory};

#[derive(Debug, Error)]
pub enum FreydError {
    #[error("theory `{0}` declares no terminal object")]
    NoTerminal(String),
    #[error("`{0}` has no canonical constant")]
    OutOfBudget(String),
    #[error("the global sections of `{0}` have no image in the finite category")]
    GsNotInTiny(String),
    #[error("the global-sections image is not functorial at `{0}`")]
    NotFunctorial(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Theory(#[from] TheoryError),
}

/// The global-sections functor of a term-complete extension: each object
/// `S` goes to its canonical constants `One → S`, each arrow constant to
/// post-composition followed by canonicalisation.
#[derive(Clone, Debug)]
pub struct GlobalSections {
    pub terminal: String,
    /// Composition and identities of the target, by canonical constant.
    pub table: CompTable,
    /// The elements of each object, sorted.
    pub elements: BTreeMap<String, Vec<String>>,
    /// For each arrow constant `φ : S → S'`, the index in `elements[S']`
    /// of `φ ∘ elements[S][i]`.
    pub maps: BTreeMap<String, Vec<usize>>,
}

pub fn global_sections(e: &Extension) -> Result<GlobalSections, FreydError> {
    let t = &e.target;
    let terminal = t.terminal.clone().ok_or_else(|| FreydError::NoTerminal(t.name.clone()))?;
    let canon = |a: Arrow| canonical_constant(e, &a).map_err(|_| FreydError::OutOfBudget(a.to_string()));
    let mut table = CompTable::default();
    for o in &t.signature.objects {
        table.ids.insert(o.clone(), canon(Arrow::id(Obj::cst(o)))?);
    }
    for (g, gs) in &t.signature.arrows {
        for (f, fs) in &t.signature.arrows {
            if fs.cod == gs.dom {
                table.comps.insert((g.clone(), f.clone()), canon(Arrow::comp(Arrow::cst(g), Arrow::cst(f)))?);
            }
        }
    }
    let one = Obj::cst(&terminal);
    let elements: BTreeMap<String, Vec<String>> = t
        .signature
        .objects
        .iter()
        .map(|o| {
            let srt = ArrowSort::new(one.clone(), Obj::cst(o));
            let els = t.signature.arrows.iter().filter(|(_, s)| **s == srt).map(|(c, _)| c.clone()).collect();
            (o.clone(), els)
        })
        .collect();
    let mut maps = BTreeMap::new();
    for (phi, srt) in &t.signature.arrows {
        let (Obj::Const(s), Obj::Const(s2)) = (&srt.dom, &srt.cod) else { continue };
        let target = &elements[s2];
        let image = elements[s]
            .iter()
            .map(|x| {
                let y = &table.comps[&(phi.clone(), x.clone())];
                target.iter().position(|z| z == y).expect("composites of elements are elements")
            })
            .collect();
        maps.insert(phi.clone(), image);
    }
    Ok(GlobalSections { terminal, table, elements, maps })
}

impl GlobalSections {
    /// The canonical constant of `φ ∘ x`.
    pub fn apply(&self, phi: &str, x: &str) -> Option<&str> {
        self.table.comps.get(&(phi.to_string(), x.to_string())).map(String::as_str)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FreydObject {
    /// An object `X` of Tiny.
    pub plus: String,
    /// An object constant `S` of the base theory.
    pub minus: String,
    /// A Tiny arrow `X → GS(S)`.
    pub down: String,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FreydArrow {
    pub dom: String,
    pub cod: String,
    /// A Tiny arrow between the `plus` parts.
    pub plus: String,
    /// A base arrow constant between the `minus` parts.
    pub minus: String,
}

#[derive(Clone, Debug)]
pub struct FreydCategory {
    pub tiny: FiniteCategory,
    pub gs: GlobalSections,
    /// The cover as a plain finite category over the names `O*` and `F*`.
    pub category: FiniteCategory,
    pub objects: BTreeMap<String, FreydObject>,
    pub arrows: BTreeMap<String, FreydArrow>,
    /// Where GS sends base objects and arrow constants.
    pub gs_objects: BTreeMap<String, String>,
    pub gs_arrows: BTreeMap<String, String>,
    /// The triple `(1, One, !)`.
    pub unit: String,
    /// The section `S ↦ (GS(S), S, 1)`, `φ ↦ (GS(φ), φ)`.
    pub section_objects: BTreeMap<String, String>,
    pub section_arrows: BTreeMap<String, String>,
}

fn sorted_names(prefix: &str, n: usize) -> impl Iterator<Item = String> + '_ {
    (0..n).map(move |i| format!("{prefix}{i}"))
}

/// The Freyd cover of `base` (a term-complete extension with global
/// sections `gs`) along `tiny`, a finite category with a terminal object.
pub fn comma_glue(tiny: &FiniteCategory, base: &Theory, gs: &GlobalSections) -> Result<FreydCategory, FreydError> {
    let tiny_terminal = tiny.terminal.clone().ok_or_else(|| FreydError::NoTerminal(tiny.name.clone()))?;
    let points: BTreeMap<&str, Vec<String>> = tiny.objects.iter().map(|x| (x.as_str(), tiny.elements(x))).collect();

    let mut gs_objects = BTreeMap::new();
    for (s, els) in &gs.elements {
        let x = tiny
            .objects
            .iter()
            .find(|x| points[x.as_str()].len() == els.len())
            .ok_or_else(|| FreydError::GsNotInTiny(s.clone()))?;
        gs_objects.insert(s.clone(), x.clone());
    }
    let mut gs_arrows = BTreeMap::new();
    for (phi, image) in &gs.maps {
        let srt = &base.signature.arrows[phi];
        let (Obj::Const(s), Obj::Const(s2)) = (&srt.dom, &srt.cod) else { continue };
        let (x, y) = (&gs_objects[s], &gs_objects[s2]);
        let u = tiny
            .hom(x, y)
            .into_iter()
            .find(|u| image.iter().enumerate().all(|(i, &j)| tiny.compose(u, &points[x.as_str()][i]) == Some(&points[y.as_str()][j])))
            .ok_or_else(|| FreydError::GsNotInTiny(phi.clone()))?;
        gs_arrows.insert(phi.clone(), u);
    }
    for (s, id) in &gs.table.ids {
        if gs_arrows[id] != tiny.identity(&gs_objects[s])? {
            return Err(FreydError::NotFunctorial(id.clone()));
        }
    }
    for ((g, f), k) in &gs.table.comps {
        if tiny.compose(&gs_arrows[g], &gs_arrows[f]) != Some(gs_arrows[k].as_str()) {
            return Err(FreydError::NotFunctorial(format!("{g} ∘ {f}")));
        }
    }

    let mut triples = Vec::new();
    for s in gs.elements.keys() {
        for x in &tiny.objects {
            for down in tiny.hom(x, &gs_objects[s]) {
                triples.push(FreydObject { plus: x.clone(), minus: s.clone(), down });
            }
        }
    }
    let objects: BTreeMap<String, FreydObject> = sorted_names("O", triples.len()).zip(triples).collect();
    let index: BTreeMap<&FreydObject, &String> = objects.iter().map(|(n, o)| (o, n)).collect();

    let mut pairs = Vec::new();
    for (a, ao) in &objects {
        for (b, bo) in &objects {
            for h in tiny.hom(&ao.plus, &bo.plus) {
                let srt = ArrowSort::new(Obj::cst(&ao.minus), Obj::cst(&bo.minus));
                for (phi, _) in base.signature.arrows.iter().filter(|(_, s)| **s == srt) {
                    let left = tiny.compose(&gs_arrows[phi], &ao.down);
                    let right = tiny.compose(&bo.down, &h);
                    if left.is_some() && left == right {
                        pairs.push(FreydArrow { dom: a.clone(), cod: b.clone(), plus: h.clone(), minus: phi.clone() });
                    }
                }
            }
        }
    }
    let arrows: BTreeMap<String, FreydArrow> = sorted_names("F", pairs.len()).zip(pairs).collect();
    let arrow_index: BTreeMap<&FreydArrow, &String> = arrows.iter().map(|(n, a)| (a, n)).collect();
    let find = |a: &FreydArrow| arrow_index.get(a).map(|n| (*n).clone());

    let mut identities = BTreeMap::new();
    for (o, ob) in &objects {
        let id = FreydArrow {
            dom: o.clone(),
            cod: o.clone(),
            plus: tiny.identity(&ob.plus)?,
            minus: gs.table.ids[&ob.minus].clone(),
        };
        identities.insert(o.clone(), find(&id).ok_or_else(|| FreydError::NotFunctorial(o.clone()))?);
    }
    let mut rows = BTreeMap::new();
    for (g, ga) in &arrows {
        for (f, fa) in &arrows {
            if fa.cod != ga.dom {
                continue;
            }
            let composite = FreydArrow {
                dom: fa.dom.clone(),
                cod: ga.cod.clone(),
                plus: tiny.compose(&ga.plus, &fa.plus).expect("Tiny is closed").to_string(),
                minus: gs.table.comps[&(ga.minus.clone(), fa.minus.clone())].clone(),
            };
            let k = find(&composite).ok_or_else(|| FreydError::NotFunctorial(format!("{g} ∘ {f}")))?;
            rows.insert((g.clone(), f.clone()), k);
        }
    }
    let sorts = arrows.iter().map(|(n, a)| (n.clone(), (a.dom.clone(), a.cod.clone()))).collect();
    let category = FiniteCategory::new(
        &format!("{}_{}", tiny.name, base.name),
        objects.keys().cloned().collect(),
        sorts,
        identities,
        rows,
        None,
    )?;

    let one_points = &gs_objects[&gs.terminal];
    let unit_down = tiny.hom(&tiny_terminal, one_points).into_iter().next().ok_or_else(|| FreydError::GsNotInTiny(gs.terminal.clone()))?;
    let unit = index[&FreydObject { plus: tiny_terminal, minus: gs.terminal.clone(), down: unit_down }].clone();

    let mut section_objects = BTreeMap::new();
    for (s, x) in &gs_objects {
        let o = FreydObject { plus: x.clone(), minus: s.clone(), down: tiny.identity(x)? };
        section_objects.insert(s.clone(), index[&o].clone());
    }
    let mut section_arrows = BTreeMap::new();
    for (phi, u) in &gs_arrows {
        let srt = &base.signature.arrows[phi];
        let (Obj::Const(s), Obj::Const(s2)) = (&srt.dom, &srt.cod) else { continue };
        let a = FreydArrow {
            dom: section_objects[s].clone(),
            cod: section_objects[s2].clone(),
            plus: u.clone(),
            minus: phi.clone(),
        };
        section_arrows.insert(phi.clone(), find(&a).ok_or_else(|| FreydError::NotFunctorial(phi.clone()))?);
    }

    Ok(FreydCategory {
        tiny: tiny.clone(),
        gs: gs.clone(),
        category,
        objects,
        arrows,
        gs_objects,
        gs_arrows,
        unit,
        section_objects,
        section_arrows,
    })
}

impl FreydCategory {
    /// Objects whose base component is `s`.
    pub fn over(&self, s: &str) -> Vec<&String> {
        self.objects.iter().filter(|(_, o)| o.minus == s).map(|(n, _)| n).collect()
    }

    /// The projection to the base theory, as a translation of constants.
    pub fn minus_map(&self) -> Assignment {
        let mut m = Assignment::new();
        for (n, o) in &self.objects {
            m.bind_atom(Term::Obj(Obj::cst(n)), Term::Obj(Obj::cst(&o.minus)));
        }
        for (n, a) in &self.arrows {
            m.bind_atom(Term::Arr(Arrow::cst(n)), Term::Arr(Arrow::cst(&a.minus)));
        }
        m
    }

    /// The section of [`minus_map`](Self::minus_map) through the diagonal
    /// triples `(GS(S), S, 1)`.
    pub fn section(&self) -> Assignment {
        let mut m = Assignment::new();
        for (s, o) in &self.section_objects {
            m.bind_atom(Term::Obj(Obj::cst(s)), Term::Obj(Obj::cst(o)));
        }
        for (phi, a) in &self.section_arrows {
            m.bind_atom(Term::Arr(Arrow::cst(phi)), Term::Arr(Arrow::cst(a)));
        }
        m
    }

    /// One line per object and arrow name.
    pub fn legend(&self) -> String {
        let mut out = String::new();
        for (n, o) in &self.objects {
            let _ = writeln!(out, "{n} = ({}, {}, {})", o.plus, o.minus, o.down);
        }
        for (n, a) in &self.arrows {
            let _ = writeln!(out, "{n} : {} -> {} = ({}, {})", a.dom, a.cod, a.plus, a.minus);
        }
        out
    }
}

/// The theory whose constants are the objects and arrows of the cover,
/// whose axioms are the base axioms carried along the section, and whose
/// provability is that of the base after projecting along `minus`.
pub fn star_theory(f: &FreydCategory, base: Arc<Theory>) -> Result<Theory, FreydError> {
    let mut signature = Signature::new();
    for n in f.objects.keys() {
        signature = signature.with_object(n);
    }
    for (n, a) in &f.arrows {
        signature.arrows.insert(n.clone(), ArrowSort::new(Obj::cst(&a.dom), Obj::cst(&a.cod)));
    }
    let section = f.section();
    let axioms = base.axioms.iter().map(|(n, phi)| (n.clone(), section.formula(phi))).collect();
    let name = format!("{}_star", base.name);
    let t = Theory::new(&name, signature, axioms, Arc::new(DelegatingOracle))?
        .with_terminal(Some(f.unit.clone()))
        .with_delegation(Delegation { base, translation: f.minus_map() });
    Ok(t)
}

/// The model in which two arrow terms are equal when they compose to the
/// same arrow of the cover.
pub fn freyd_model(f: &FreydCategory, star: Arc<Theory>) -> Model {
    let table = CompTable { ids: f.category.identities.clone(), comps: f.category.comp.clone() };
    Model::discrete(star, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slash::validate_model;
    use crate::syntax::{parse_formula, Formula};
    use crate::theoria::{parse_theory, term_complete_extension, CongruenceOracle};

    const BASE: &str = "theory Points {
        object One
        object A
        terminal One
        arrow a1 : One -> A
        arrow a2 : One -> A
    }";

    fn cover() -> (Extension, FreydCategory) {
        let t = Arc::new(parse_theory(BASE).unwrap().into_theory(Arc::new(CongruenceOracle::default())).unwrap());
        let e = term_complete_extension(t, 200).unwrap();
        let gs = global_sections(&e).unwrap();
        let f = comma_glue(&sets_up_to(2), &e.target, &gs).unwrap();
        (e, f)
    }

    #[test]
    fn global_sections_are_functorial() {
        let (e, f) = cover();
        let gs = &f.gs;
        assert_eq!(gs.elements["A"], vec!["a1".to_string(), "a2".to_string()]);
        for (s, id) in &gs.table.ids {
            assert_eq!(gs.maps[id], (0..gs.elements[s].len()).collect::<Vec<_>>());
        }
        for ((g, f2), k) in &gs.table.comps {
            let composed: Vec<usize> = gs.maps[f2].iter().map(|&i| gs.maps[g][i]).collect();
            assert_eq!(composed, gs.maps[k]);
        }
        assert!(e.target.signature.arrows.len() >= 4);
    }

    #[test]
    fn seven_triples_over_a() {
        let (_, f) = cover();
        assert_eq!(f.over("A").len(), 1 + 2 + 4);
        assert_eq!(f.over("One").len(), 1 + 1 + 1);
    }

    #[test]
    fn projections_are_functors() {
        let (_, f) = cover();
        for ((g, h), k) in &f.category.comp {
            let (ga, ha, ka) = (&f.arrows[g], &f.arrows[h], &f.arrows[k]);
            assert_eq!(f.tiny.compose(&ga.plus, &ha.plus), Some(ka.plus.as_str()));
            assert_eq!(f.gs.table.comps[&(ga.minus.clone(), ha.minus.clone())], ka.minus);
        }
        for (o, id) in &f.category.identities {
            let ob = &f.objects[o];
            assert_eq!(f.arrows[id].plus, f.tiny.identity(&ob.plus).unwrap());
            assert_eq!(f.arrows[id].minus, f.gs.table.ids[&ob.minus]);
        }
    }

    #[test]
    fn down_is_natural() {
        let (_, f) = cover();
        for a in f.arrows.values() {
            let (d, c) = (&f.objects[&a.dom], &f.objects[&a.cod]);
            assert_eq!(f.tiny.compose(&f.gs_arrows[&a.minus], &d.down), f.tiny.compose(&c.down, &a.plus));
        }
    }

    #[test]
    fn points_of_the_cover_are_points_of_plus() {
        let (_, f) = cover();
        for (o, ob) in &f.objects {
            let mut pluses: Vec<String> = f.category.hom(&f.unit, o).iter().map(|a| f.arrows[a].plus.clone()).collect();
            pluses.sort();
            assert_eq!(pluses, f.tiny.elements(&ob.plus), "at {o}");
        }
    }

    #[test]
    fn equal_minus_is_provable_equality_between_distinct_constants() {
        let (e, f) = cover();
        let star = star_theory(&f, e.target.clone()).unwrap();
        let pair = f
            .arrows
            .iter()
            .flat_map(|(n, a)| f.arrows.iter().map(move |(m, b)| (n, a, m, b)))
            .find(|(n, a, m, b)| n < m && a.dom == b.dom && a.cod == b.cod && a.minus == b.minus && a.plus != b.plus)
            .expect("the cover is not faithful over the base");
        let eq = Formula::eq(Arrow::cst(pair.0), Arrow::cst(pair.2));
        assert!(star.proves(&eq));
        let m = freyd_model(&f, Arc::new(star));
        assert!(!m.holds(&Arrow::cst(pair.0), &Arrow::cst(pair.2)).unwrap());
    }

    #[test]
    fn star_theory_is_conservative_on_samples() {
        let (e, f) = cover();
        let star = star_theory(&f, e.target.clone()).unwrap();
        let section = f.section();
        for text in ["a1 = a2", "a1 = a1", "exists x : One -> A . x = a2", "a1 = a2 \\/ top", "comp a1 (id One) = a1"] {
            let phi = parse_formula(&e.target.signature, text).unwrap();
            assert_eq!(star.proves(&section.formula(&phi)), e.target.proves(&phi), "{text}");
        }
    }

    #[test]
    fn freyd_model_validates_and_retracts() {
        let (e, f) = cover();
        let star = Arc::new(star_theory(&f, e.target.clone()).unwrap());
        let m = freyd_model(&f, star.clone());
        validate_model(&star, &m).unwrap();
        for (a, fa) in &f.arrows {
            let id = Arrow::id(Obj::cst(&fa.dom));
            assert!(m.holds(&Arrow::comp(Arrow::cst(a), id), &Arrow::cst(a)).unwrap());
        }
    }

    #[test]
    fn sets_without_room_for_the_sections_fail() {
        let t = parse_theory("theory Three { object One object A terminal One arrow a1 : One -> A arrow a2 : One -> A arrow a3 : One -> A }")
            .unwrap()
            .into_theory(Arc::new(CongruenceOracle::default()))
            .unwrap();
        let e = term_complete_extension(Arc::new(t), 200).unwrap();
        let gs = global_sections(&e).unwrap();
        assert!(matches!(comma_glue(&sets_up_to(2), &e.target, &gs), Err(FreydError::GsNotInTiny(s)) if s == "A"));
    }
}
