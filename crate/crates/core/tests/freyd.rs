mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use catslash::freyd::{
    comma_glue, freyd_model, global_sections, parse_category, sets_up_to, star_theory, CategoryError, FreydCategory,
    FreydError,
};
use catslash::slash::validate_model;
use catslash::syntax::{print_formula, Context};
use catslash::theoria::{parse_theory, term_complete_extension, Answer, CongruenceOracle, Extension, Theory};
use common::fixtures::{category_laws, completed, read_fixture, term_model};
use common::{Env, Gen};

struct Cover {
    ext: Extension,
    cover: FreydCategory,
}

fn cover_of(rel: &str) -> Cover {
    let ext = completed(rel);
    let tiny = parse_category(&read_fixture("tiny.category")).unwrap();
    let gs = global_sections(&ext).unwrap();
    let cover = comma_glue(&tiny, &ext.target, &gs).unwrap();
    Cover { ext, cover }
}

/// Number of functions from an `m`-set to an `n`-set.
fn functions(m: usize, n: usize) -> usize {
    n.pow(m as u32)
}

#[test]
fn the_tiny_fixture_is_sets_up_to_two() {
    let tiny = parse_category(&read_fixture("tiny.category")).unwrap();
    let sets = sets_up_to(2);
    assert_eq!(tiny.arrows, sets.arrows);
    assert_eq!(tiny.comp, sets.comp);
    assert_eq!(tiny.terminal.as_deref(), Some("S1"));
    for m in 0..=2 {
        for n in 0..=2 {
            assert_eq!(tiny.hom(&format!("S{m}"), &format!("S{n}")).len(), functions(m, n));
        }
    }
    category_laws(&tiny).unwrap();
}

#[test]
fn a_category_file_with_a_missing_row_is_rejected() {
    let err = parse_category(&read_fixture("invalid/missing_row.category")).unwrap_err();
    assert!(matches!(err, CategoryError::MissingRow { .. }), "{err}");
}

#[test]
fn cover_has_one_object_per_map_into_the_global_sections() {
    let Cover { ext, cover } = cover_of("two_arrows/two_arrows.theory");
    let gs = global_sections(&ext).unwrap();
    assert_eq!(gs.elements["A"].len(), 2);
    assert_eq!(cover.over("A").len(), (0..=2).map(|m| functions(m, 2)).sum::<usize>());
    assert_eq!(cover.over("A").len(), 7);
    assert_eq!(cover.over("One").len(), 3);
    let triples: BTreeSet<_> = cover.objects.values().collect();
    assert_eq!(triples.len(), cover.objects.len());
}

#[test]
fn cover_satisfies_the_category_laws() {
    let Cover { cover, .. } = cover_of("two_arrows/two_arrows.theory");
    category_laws(&cover.category).unwrap();
}

#[test]
fn projections_are_functors() {
    let Cover { ext, cover } = cover_of("two_arrows/two_arrows.theory");
    let base = term_model(&ext.target).table;
    for ((g, f), k) in &cover.category.comp {
        let (ga, fa, ka) = (&cover.arrows[g], &cover.arrows[f], &cover.arrows[k]);
        assert_eq!(cover.tiny.compose(&ga.plus, &fa.plus), Some(ka.plus.as_str()), "{g} ∘ {f}");
        assert_eq!(base.comps.get(&(ga.minus.clone(), fa.minus.clone())), Some(&ka.minus), "{g} ∘ {f}");
    }
}

#[test]
fn down_is_natural() {
    let Cover { cover, .. } = cover_of("two_arrows/two_arrows.theory");
    for (name, a) in &cover.arrows {
        let (src, tgt) = (&cover.objects[&a.dom], &cover.objects[&a.cod]);
        let gs_phi = &cover.gs_arrows[&a.minus];
        let left = cover.tiny.compose(gs_phi, &src.down);
        let right = cover.tiny.compose(&tgt.down, &a.plus);
        assert!(left.is_some() && left == right, "{name}");
    }
}

#[test]
fn global_elements_of_a_triple_are_elements_of_its_first_component() {
    let Cover { cover, .. } = cover_of("two_arrows/two_arrows.theory");
    for (name, o) in &cover.objects {
        let points = cover.category.hom(&cover.unit, name);
        let elements = cover.tiny.elements(&o.plus);
        assert_eq!(points.len(), elements.len(), "{name}");
        let images: BTreeSet<&str> = points.iter().map(|p| cover.arrows[p].plus.as_str()).collect();
        assert_eq!(images.len(), points.len(), "{name}: not injective");
        assert!(images.iter().all(|i| elements.iter().any(|e| e == i)), "{name}");
    }
}

#[test]
fn the_cover_model_is_valid() {
    let Cover { ext, cover } = cover_of("two_arrows/two_arrows.theory");
    let star = Arc::new(star_theory(&cover, ext.target.clone()).unwrap());
    validate_model(&star, &freyd_model(&cover, star.clone())).unwrap();
}

#[test]
fn the_glued_theory_is_conservative() {
    let Cover { ext, cover } = cover_of("demo/demo.theory");
    let base: &Theory = &ext.target;
    let star = star_theory(&cover, ext.target.clone()).unwrap();
    let section = cover.section();
    let env = Env::new(&base.signature, &Context::new());
    let mut decided = 0;
    for seed in 0..150 {
        let mut g = Gen::new(seed);
        g.positive_antecedents = true;
        let phi = g.formula_in(&env, 3, false);
        let (a, b) = (base.ask(&phi), star.ask(&section.formula(&phi)));
        match (&a, &b) {
            (Answer::Unknown, _) | (_, Answer::Unknown) => {}
            _ => {
                decided += 1;
                assert_eq!(a.is_yes(), b.is_yes(), "{}", print_formula(&phi));
            }
        }
    }
    assert!(decided >= 100, "{decided} decided");
}

#[test]
fn a_hom_too_large_for_the_tiny_category_is_reported() {
    let text = "theory Three { object One object A terminal One
        arrow a1 : One -> A arrow a2 : One -> A arrow a3 : One -> A }";
    let t = parse_theory(text).unwrap().into_theory(Arc::new(CongruenceOracle::default())).unwrap();
    let ext = term_complete_extension(Arc::new(t), 256).unwrap();
    let gs = global_sections(&ext).unwrap();
    let err = comma_glue(&sets_up_to(2), &ext.target, &gs).unwrap_err();
    assert!(matches!(err, FreydError::GsNotInTiny(..)), "{err}");
}
