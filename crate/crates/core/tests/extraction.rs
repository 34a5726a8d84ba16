mod common;

use std::collections::BTreeSet;

use catslash::extractor::{certify_axioms, extract, Payload, Side};
use catslash::kernel::rules::{imp_elim, imp_intro, top};
use catslash::kernel::{check_proof, write_certificate, Judgement, P};
use catslash::slash::{fp_eval, validate_model, CompTable, Model};
use catslash::syntax::{print_formula, Formula};
use catslash::theoria::Extension;
use common::fixtures::{brute_force_witnesses, completed, demo_goals, existential_prefix, instantiate, term_model};

struct Demo {
    ext: Extension,
    model: Model,
}

fn demo() -> Demo {
    let ext = completed("demo/demo.theory");
    let model = term_model(&ext.target);
    validate_model(&ext.target, &model).unwrap();
    Demo { ext, model }
}

/// The demo goals, checked in the source theory and translated into the
/// completed one.
fn translated_goals(d: &Demo) -> Vec<(String, Formula, P)> {
    let src = &d.ext.source;
    demo_goals(src)
        .into_iter()
        .map(|(name, goal, proof)| {
            check_proof(src.as_ref(), &Judgement::closed(goal.clone()), &proof)
                .unwrap_or_else(|e| panic!("{name}: {e}"));
            let phi = d.ext.translation.formula(&goal);
            let p = proof.substitute(&d.ext.translation, &BTreeSet::new());
            (name, phi, p)
        })
        .collect()
}

#[test]
fn corpus_mixes_the_constructive_rules() {
    let d = demo();
    let goals = translated_goals(&d);
    assert!(goals.len() >= 20, "{} goals", goals.len());
    let text: String = goals.iter().map(|(_, _, p)| write_certificate(None, p)).collect();
    for rule in ["EXISTS_INTRO", "OR_INTRO", "OR_ELIM", "IMPLIES_ELIM", "EXISTS_ELIM"] {
        assert!(text.contains(&format!(" {rule}")), "no {rule} in the corpus");
    }
}

#[test]
fn every_corpus_goal_yields_a_certified_payload() {
    let d = demo();
    let t = &d.ext.target;
    let certs = certify_axioms(t, &d.model).unwrap();
    for (name, phi, p) in translated_goals(&d) {
        let r = extract(t, &d.model, &certs, &p, &phi).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(r.certificate.verdict, "{name}");
        match &r.payload {
            Payload::Witness { assignment } => {
                let (sorts, _) = existential_prefix(&phi);
                assert_eq!(assignment.len(), sorts.len(), "{name}");
                let chosen: Vec<String> = assignment.iter().map(|(_, c)| c.clone()).collect();
                let instance = instantiate(&phi, &chosen);
                assert!(fp_eval(t, &d.model, &instance).unwrap().verdict, "{name}");
                assert!(t.proves(&instance), "{name}: {}", print_formula(&instance));
                let all = brute_force_witnesses(t, &d.model, &phi, sorts.len());
                assert!(all.contains(&chosen), "{name}: {chosen:?} not among {all:?}");
            }
            Payload::Disjunct { side } => {
                let Formula::Or(l, r) = &phi else { panic!("{name}: not a disjunction") };
                let part = if *side == Side::Left { l } else { r };
                assert!(fp_eval(t, &d.model, part).unwrap().verdict, "{name}");
                assert!(t.proves(part), "{name}");
            }
            Payload::Plain => assert!(fp_eval(t, &d.model, &phi).unwrap().verdict, "{name}"),
        }
    }
}

#[test]
fn weakened_proofs_extract_identically() {
    let d = demo();
    let t = &d.ext.target;
    let certs = certify_axioms(t, &d.model).unwrap();
    for (name, phi, p) in translated_goals(&d) {
        let weakened = imp_elim(imp_intro(Formula::Top, p.shift_hyps(0, 1)), top());
        check_proof(t.as_ref(), &Judgement::closed(phi.clone()), &weakened).unwrap_or_else(|e| panic!("{name}: {e}"));
        let a = extract(t, &d.model, &certs, &p, &phi).unwrap();
        let b = extract(t, &d.model, &certs, &weakened, &phi).unwrap();
        assert_eq!(a.payload, b.payload, "{name}");
    }
}

#[test]
fn a_proof_of_bottom_is_not_extracted() {
    let ext = completed("inconsistent/two_arrows_inconsistent.theory");
    let t = &ext.target;
    let m = Model::discrete(t.clone(), CompTable::from_oracle(t));
    let p = t.ask(&Formula::Bot).proof().cloned().expect("the theory proves bot");
    assert!(extract(t, &m, &Default::default(), &p, &Formula::Bot).is_err());
}
