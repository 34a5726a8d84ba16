//! Natural-deduction proofs and their checker.
//!
//! A [`Proof`] is a tree whose nodes name an inference rule, carry the terms
//! and formulas that rule needs, and point at their premises. Hypotheses are
//! addressed by position: the judgement's own hypotheses come first and every
//! rule that discharges an assumption (`ImpliesIntro`, `OrElim`,
//! `ExistsElim`) appends it at the end of the list seen by its premise.

mod axioms;
mod build;
mod cert;
mod check;
mod search;
mod transform;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::syntax::{Arrow, Context, Formula, Signature, Sort, Term, WfError};

pub use axioms::{builtin_axiom, equality_axioms, BUILTIN_AXIOMS};
pub use build::{congruence, derive_substitution, rewrite_at, transport, Calc, Eqn, Side, SubstError};
pub use cert::{parse_certificate, write_certificate, CertError, Certificate};
pub use check::{check_proof, infer_conclusion};
pub use search::{bounded_search, bounded_search_with, SearchLimits};

/// Shared handle to a proof node.
pub type P = Arc<Proof>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Proof {
    Hyp(usize),
    /// A named axiom: a built-in equality or category axiom, or a theory axiom.
    Axiom(String),
    /// A formula whose proof is delegated to the theory (see [`Axioms::accepts_import`]).
    Imported(Formula),
    AndIntro(P, P),
    AndElimL(P),
    AndElimR(P),
    /// Left disjunct proved; carries the right disjunct.
    OrIntroL(P, Formula),
    /// Right disjunct proved; carries the left disjunct.
    OrIntroR(Formula, P),
    /// Major premise, then the two cases, each with its disjunct appended.
    OrElim(P, P, P),
    /// Antecedent, then a proof of the consequent with the antecedent appended.
    ImpliesIntro(Formula, P),
    ImpliesElim(P, P),
    TopIntro,
    BotElim(P, Formula),
    /// Eigenvariable, its sort, and a proof of the opened body.
    ForallIntro(String, Sort, P),
    ForallElim(P, Term),
    /// The existential formula, the witness, and a proof of the instance.
    ExistsIntro(Formula, Term, P),
    /// Major premise, eigenvariable, and a proof of the goal with the opened body appended.
    ExistsElim(P, String, P),
    EqRefl(Arrow),
    EqSym(P),
    EqTrans(P, P),
    /// From `g = g'` and `f = f'` conclude `g ∘ f = g' ∘ f'`.
    EqCongComp(P, P),
}

impl Proof {
    pub fn premises(&self) -> Vec<&P> {
        match self {
            Proof::Hyp(_)
            | Proof::Axiom(_)
            | Proof::Imported(_)
            | Proof::TopIntro
            | Proof::EqRefl(_) => vec![],
            Proof::AndElimL(p)
            | Proof::AndElimR(p)
            | Proof::OrIntroL(p, _)
            | Proof::OrIntroR(_, p)
            | Proof::ImpliesIntro(_, p)
            | Proof::BotElim(p, _)
            | Proof::ForallIntro(_, _, p)
            | Proof::ForallElim(p, _)
            | Proof::ExistsIntro(_, _, p)
            | Proof::EqSym(p) => vec![p],
            Proof::AndIntro(a, b)
            | Proof::ImpliesElim(a, b)
            | Proof::ExistsElim(a, _, b)
            | Proof::EqTrans(a, b)
            | Proof::EqCongComp(a, b) => vec![a, b],
            Proof::OrElim(a, b, c) => vec![a, b, c],
        }
    }

    /// Number of nodes, counting shared subproofs once per occurrence.
    pub fn size(&self) -> usize {
        1 + self.premises().iter().map(|p| p.size()).sum::<usize>()
    }

    pub fn rule_name(&self) -> &'static str {
        match self {
            Proof::Hyp(_) => "HYP",
            Proof::Axiom(_) => "AXIOM",
            Proof::Imported(_) => "IMPORTED",
            Proof::AndIntro(..) => "AND_INTRO",
            Proof::AndElimL(_) => "AND_ELIM_L",
            Proof::AndElimR(_) => "AND_ELIM_R",
            Proof::OrIntroL(..) => "OR_INTRO_L",
            Proof::OrIntroR(..) => "OR_INTRO_R",
            Proof::OrElim(..) => "OR_ELIM",
            Proof::ImpliesIntro(..) => "IMPLIES_INTRO",
            Proof::ImpliesElim(..) => "IMPLIES_ELIM",
            Proof::TopIntro => "TOP_INTRO",
            Proof::BotElim(..) => "BOT_ELIM",
            Proof::ForallIntro(..) => "FORALL_INTRO",
            Proof::ForallElim(..) => "FORALL_ELIM",
            Proof::ExistsIntro(..) => "EXISTS_INTRO",
            Proof::ExistsElim(..) => "EXISTS_ELIM",
            Proof::EqRefl(_) => "EQ_REFL",
            Proof::EqSym(_) => "EQ_SYM",
            Proof::EqTrans(..) => "EQ_TRANS",
            Proof::EqCongComp(..) => "EQ_CONG_COMP",
        }
    }
}

/// Constructors returning shared nodes.
pub mod rules {
    use super::*;

    pub fn hyp(i: usize) -> P {
        Arc::new(Proof::Hyp(i))
    }
    pub fn axiom(name: &str) -> P {
        Arc::new(Proof::Axiom(name.to_string()))
    }
    pub fn imported(phi: Formula) -> P {
        Arc::new(Proof::Imported(phi))
    }
    pub fn and_intro(a: P, b: P) -> P {
        Arc::new(Proof::AndIntro(a, b))
    }
    pub fn and_l(p: P) -> P {
        Arc::new(Proof::AndElimL(p))
    }
    pub fn and_r(p: P) -> P {
        Arc::new(Proof::AndElimR(p))
    }
    pub fn or_l(p: P, right: Formula) -> P {
        Arc::new(Proof::OrIntroL(p, right))
    }
    pub fn or_r(left: Formula, p: P) -> P {
        Arc::new(Proof::OrIntroR(left, p))
    }
    pub fn or_elim(major: P, l: P, r: P) -> P {
        Arc::new(Proof::OrElim(major, l, r))
    }
    pub fn imp_intro(antecedent: Formula, p: P) -> P {
        Arc::new(Proof::ImpliesIntro(antecedent, p))
    }
    pub fn imp_elim(f: P, a: P) -> P {
        Arc::new(Proof::ImpliesElim(f, a))
    }
    pub fn top() -> P {
        Arc::new(Proof::TopIntro)
    }
    pub fn bot_elim(p: P, goal: Formula) -> P {
        Arc::new(Proof::BotElim(p, goal))
    }
    pub fn forall_intro(var: &str, sort: Sort, p: P) -> P {
        Arc::new(Proof::ForallIntro(var.to_string(), sort, p))
    }
    pub fn forall_elim(p: P, t: Term) -> P {
        Arc::new(Proof::ForallElim(p, t))
    }
    /// Instantiates successive universal quantifiers.
    pub fn forall_elims(p: P, ts: impl IntoIterator<Item = Term>) -> P {
        ts.into_iter().fold(p, forall_elim)
    }
    pub fn exists_intro(phi: Formula, t: Term, p: P) -> P {
        Arc::new(Proof::ExistsIntro(phi, t, p))
    }
    pub fn exists_elim(major: P, var: &str, minor: P) -> P {
        Arc::new(Proof::ExistsElim(major, var.to_string(), minor))
    }
    pub fn refl(a: Arrow) -> P {
        Arc::new(Proof::EqRefl(a))
    }
    pub fn sym(p: P) -> P {
        Arc::new(Proof::EqSym(p))
    }
    pub fn trans(p: P, q: P) -> P {
        Arc::new(Proof::EqTrans(p, q))
    }
    pub fn cong(g: P, f: P) -> P {
        Arc::new(Proof::EqCongComp(g, f))
    }
}

/// Source of axioms consulted by the checker.
pub trait Axioms {
    fn signature(&self) -> &Signature;
    /// A theory axiom by name. Built-in axioms are resolved by the kernel.
    fn axiom(&self, name: &str) -> Option<Formula>;
    /// Theory axioms in a fixed order, for proof search.
    fn axiom_list(&self) -> Vec<(String, Formula)> {
        Vec::new()
    }
    /// Whether `Imported(phi)` is justified by a delegated provability oracle.
    fn accepts_import(&self, _phi: &Formula) -> bool {
        false
    }
}

/// Axiom source with a signature and no axioms beyond the built-in ones.
#[derive(Clone, Debug, Default)]
pub struct PureLogic(pub Signature);

impl Axioms for PureLogic {
    fn signature(&self) -> &Signature {
        &self.0
    }
    fn axiom(&self, _: &str) -> Option<Formula> {
        None
    }
}

/// `ctx; hyps ⊢ goal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgement {
    pub ctx: Context,
    pub hyps: Vec<Formula>,
    pub goal: Formula,
}

impl Judgement {
    pub fn new(ctx: Context, hyps: Vec<Formula>, goal: Formula) -> Self {
        Judgement { ctx, hyps, goal }
    }
    pub fn closed(goal: Formula) -> Self {
        Judgement { ctx: Context::new(), hyps: vec![], goal }
    }
}

/// Position of a node: child indices from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NodePath(pub Vec<usize>);

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ProofError {
    #[error("at {path}: rule expects {expected}, found {found}")]
    RuleMismatch { path: NodePath, expected: String, found: String },
    #[error("at {path}: eigenvariable `{var}` is not fresh")]
    EigenvariableCapture { path: NodePath, var: String },
    #[error("at {path}: unknown axiom `{name}`")]
    UnknownAxiom { path: NodePath, name: String },
    #[error("at {path}: {source}")]
    IllFormed { path: NodePath, source: WfError },
}

impl ProofError {
    pub fn path(&self) -> &NodePath {
        match self {
            ProofError::RuleMismatch { path, .. }
            | ProofError::EigenvariableCapture { path, .. }
            | ProofError::UnknownAxiom { path, .. }
            | ProofError::IllFormed { path, .. } => path,
        }
    }
}
