mod common;

use std::sync::Arc;

use catslash::kernel::{check_proof, Judgement};
use catslash::syntax::{infer_arrow, print_formula, Arrow, Context, Formula, Obj};
use catslash::theoria::{canonical_constant, parse_theory, print_theory, Answer, CongruenceOracle};
use common::fixtures::{completed, read_fixture, theory};
use common::{Env, Gen};

const FIXTURES: [&str; 2] = ["two_arrows/two_arrows.theory", "demo/demo.theory"];

#[test]
fn theory_files_round_trip() {
    for rel in FIXTURES {
        let t = theory(rel);
        let again = parse_theory(&print_theory(&t)).unwrap();
        assert_eq!(again.name, t.name, "{rel}");
        assert_eq!(print_theory(&t), print_theory(&again.into_theory(t.oracle().clone()).unwrap()), "{rel}");
    }
}

#[test]
fn an_ill_formed_axiom_is_rejected() {
    let file = parse_theory(&read_fixture("invalid/ill_formed.theory")).unwrap();
    let err = file.into_theory(Arc::new(CongruenceOracle::default())).unwrap_err();
    assert!(err.to_string().contains("quantif"), "{err}");
}

#[test]
fn oracle_proofs_pass_the_kernel() {
    for rel in FIXTURES {
        let t = completed(rel).target;
        let env = Env::new(&t.signature, &Context::new());
        for seed in 0..150 {
            let mut g = Gen::new(seed);
            g.positive_antecedents = true;
            let phi = g.formula_in(&env, 3, false);
            if let Answer::Yes(p) = t.ask(&phi) {
                let r = check_proof(t.as_ref(), &Judgement::closed(phi.clone()), &p);
                assert!(r.is_ok(), "{rel}: {}: {}", print_formula(&phi), r.unwrap_err());
            }
        }
    }
}

#[test]
fn term_completion_is_conservative() {
    for rel in FIXTURES {
        let ext = completed(rel);
        let env = Env::new(&ext.source.signature, &Context::new());
        let mut decided = 0;
        for seed in 0..150 {
            let mut g = Gen::new(seed);
            g.positive_antecedents = true;
            let phi = g.formula_in(&env, 3, false);
            let (a, b) = (ext.source.ask(&phi), ext.target.ask(&ext.translation.formula(&phi)));
            if matches!(a, Answer::Unknown) || matches!(b, Answer::Unknown) {
                continue;
            }
            decided += 1;
            assert_eq!(a.is_yes(), b.is_yes(), "{rel}: {}", print_formula(&phi));
        }
        assert!(decided >= 100, "{rel}: {decided} decided");
    }
}

/// Closed arrow terms of composition depth at most one, over the source.
fn shallow_terms(rel: &str) -> Vec<Arrow> {
    let t = theory(rel);
    let sig = &t.signature;
    let mut atoms: Vec<(Arrow, Obj, Obj)> =
        sig.arrows.iter().map(|(n, s)| (Arrow::cst(n), s.dom.clone(), s.cod.clone())).collect();
    atoms.extend(sig.objects.iter().map(|o| (Arrow::id(Obj::cst(o)), Obj::cst(o), Obj::cst(o))));
    let mut out: Vec<Arrow> = atoms.iter().map(|(a, _, _)| a.clone()).collect();
    for (g, gd, _) in &atoms {
        for (f, _, fc) in &atoms {
            if fc == gd {
                out.push(Arrow::comp(g.clone(), f.clone()));
            }
        }
    }
    out
}

#[test]
fn canonical_constants_agree_with_provable_equality() {
    for rel in FIXTURES {
        let ext = completed(rel);
        let t = &ext.target;
        let scope_sort = |a: &Arrow| infer_arrow(&ext.source.signature, &Context::new(), a).unwrap();
        let terms = shallow_terms(rel);
        for a in &terms {
            let ca = canonical_constant(&ext, a).unwrap_or_else(|e| panic!("{rel}: {a}: {e}"));
            let ta = ext.translation.arrow(a);
            assert!(t.proves(&Formula::eq(ta.clone(), Arrow::cst(&ca))), "{rel}: {a} = {ca}");
            for b in &terms {
                if scope_sort(a) != scope_sort(b) {
                    continue;
                }
                let cb = canonical_constant(&ext, b).unwrap();
                let equal = t.proves(&Formula::eq(ta.clone(), ext.translation.arrow(b)));
                assert_eq!(ca == cb, equal, "{rel}: {a} vs {b}");
            }
        }
    }
}
