mod common;

use std::sync::Arc;

use proptest::prelude::*;

use catslash::slash::{fp_eval, replay, validate_model, Model, SlashError, Step};
use catslash::syntax::{parse_formula, print_formula, Context, Formula};
use catslash::theoria::{Answer, Theory};
use common::fixtures::{completed, model_truth, term_model};
use common::{Env, Gen};

fn two_arrows() -> (Arc<Theory>, Model) {
    let t = completed("two_arrows/two_arrows.theory").target;
    let m = term_model(&t);
    validate_model(&t, &m).unwrap();
    (t, m)
}

fn closed_formula(t: &Theory, seed: u64, positive: bool) -> Formula {
    let mut g = Gen::new(seed);
    g.positive_antecedents = true;
    let env = Env::new(&t.signature, &Context::new());
    g.formula_in(&env, 4, positive)
}

/// Sentences whose evaluation needs a provability answer the oracle cannot
/// give abort instead of producing a verdict. The sampled sentences quantify
/// over infinite term homs, so a few aborts are expected.
const MAX_UNDECIDED: usize = 5;

#[test]
fn fp_true_implies_provable_on_fuzzed_sentences() {
    let (t, m) = two_arrows();
    let (mut true_count, mut undecided) = (0, 0);
    for seed in 0..500 {
        let phi = closed_formula(&t, seed, false);
        match fp_eval(&t, &m, &phi) {
            Ok(cert) if cert.verdict => {
                true_count += 1;
                assert!(matches!(t.ask(&phi), Answer::Yes(_)), "FP true but unprovable: {}", print_formula(&phi));
            }
            Ok(_) => {}
            Err(SlashError::OracleIncomplete(_)) => undecided += 1,
            Err(e) => panic!("{}: {e}", print_formula(&phi)),
        }
    }
    assert!(true_count >= 50, "only {true_count} sentences had a true slash");
    assert!(undecided <= MAX_UNDECIDED, "{undecided} sentences undecided");
}

#[test]
fn fp_agrees_with_model_truth_on_positive_sentences() {
    let (t, m) = two_arrows();
    for seed in 0..500 {
        let phi = closed_formula(&t, seed, true);
        assert!(phi.is_positive());
        let fp = fp_eval(&t, &m, &phi).unwrap().verdict;
        assert_eq!(fp, model_truth(&m, &phi), "{}", print_formula(&phi));
    }
}

#[test]
fn bottom_has_a_false_slash_in_an_inconsistent_theory() {
    let t = completed("inconsistent/two_arrows_inconsistent.theory").target;
    assert!(t.proves(&Formula::Bot));
    let m = term_model(&t);
    assert!(!fp_eval(&t, &m, &Formula::Bot).unwrap().verdict);
}

#[test]
fn disjunction_records_the_true_side() {
    let (t, m) = two_arrows();
    let phi = parse_formula(&t.signature, "a1 = a2 \\/ a2 = a2").unwrap();
    let cert = fp_eval(&t, &m, &phi).unwrap();
    assert!(cert.verdict);
    assert!(matches!(cert.step, Step::Or { chosen: Some(1), .. }));

    let none = parse_formula(&t.signature, "a1 = a2 \\/ a2 = a1").unwrap();
    assert!(!fp_eval(&t, &m, &none).unwrap().verdict);
}

#[test]
fn existentials_record_a_witness() {
    let (t, m) = two_arrows();
    let phi = parse_formula(&t.signature, "exists x : One -> A . x = a2").unwrap();
    let cert = fp_eval(&t, &m, &phi).unwrap();
    match cert.step {
        Step::Exists { witness: Some(w), .. } => assert_eq!(w, "a2"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn excluded_middle_for_an_independent_equation_fails() {
    let (t, m) = two_arrows();
    let phi = parse_formula(&t.signature, "a1 = a2 \\/ (a1 = a2 => bot)").unwrap();
    assert!(!fp_eval(&t, &m, &phi).unwrap().verdict);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn certificates_replay(seed in any::<u64>()) {
        let (t, m) = two_arrows();
        let phi = closed_formula(&t, seed, false);
        let cert = fp_eval(&t, &m, &phi);
        prop_assume!(!matches!(cert, Err(SlashError::OracleIncomplete(_))));
        let cert = cert.unwrap();
        prop_assert_eq!(replay(&m, &phi, &cert).unwrap(), cert.verdict);
    }
}
