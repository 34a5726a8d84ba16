//! Theories over the language of categories, provability oracles, term
//! categories and extensions.

mod congruence;
mod extension;
mod file;
mod oracles;
pub mod paths;
pub mod rewrite;
mod termcat;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::kernel::{check_proof, Axioms, Judgement, P};
use crate::syntax::{check_formula, print_formula, Context, Formula, Signature, WfError};

pub use crate::syntax::Assignment;
pub use congruence::{CongruenceLimits, CongruenceOracle};
pub use extension::{
    canonical_constant, extend_by_constants, is_target_sentence, term_complete_extension, CompletionReport, Extension,
    ExtensionError,
};
pub use file::{parse_theory, print_theory, TheoryFile};
pub use oracles::{CertDb, DelegatingOracle, SearchOracle};
pub use termcat::{apply_assignment, is_sort_correct, term_category, TermCategory};

/// Answer to a provability query.
#[derive(Clone, Debug)]
pub enum Answer {
    Yes(P),
    /// The oracle certifies that the formula is not provable.
    No,
    Unknown,
}

impl Answer {
    pub fn proof(&self) -> Option<&P> {
        match self {
            Answer::Yes(p) => Some(p),
            _ => None,
        }
    }
    pub fn is_yes(&self) -> bool {
        matches!(self, Answer::Yes(_))
    }
}

/// Decides or semi-decides `T ⊢ φ` for closed `φ`.
pub trait Oracle: Send + Sync {
    fn name(&self) -> String;
    fn query(&self, theory: &Theory, phi: &Formula) -> Answer;
    /// When true, `Unknown` may be read as a refutation.
    fn is_complete(&self) -> bool {
        false
    }
}

/// The base theory and translation behind a theory whose provability is
/// delegated (see [`DelegatingOracle`]).
#[derive(Clone)]
pub struct Delegation {
    pub base: Arc<Theory>,
    pub translation: Assignment,
}

#[derive(Debug, Error)]
pub enum TheoryError {
    #[error("axiom `{name}` is ill-formed: {source}")]
    IllFormedAxiom { name: String, source: WfError },
    #[error("duplicate axiom name `{0}`")]
    DuplicateAxiom(String),
    #[error("axiom name `{0}` clashes with a built-in axiom")]
    ReservedAxiom(String),
}

pub struct Theory {
    pub name: String,
    pub signature: Signature,
    pub axioms: Vec<(String, Formula)>,
    /// The object constant playing the terminal object, if declared.
    pub terminal: Option<String>,
    pub delegation: Option<Delegation>,
    oracle: Arc<dyn Oracle>,
    cache: Mutex<HashMap<Formula, Answer>>,
}

impl fmt::Debug for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Theory")
            .field("name", &self.name)
            .field("signature", &self.signature)
            .field("axioms", &self.axioms)
            .field("oracle", &self.oracle.name())
            .finish()
    }
}

impl Theory {
    pub fn new(
        name: &str,
        signature: Signature,
        axioms: Vec<(String, Formula)>,
        oracle: Arc<dyn Oracle>,
    ) -> Result<Self, TheoryError> {
        let mut seen = std::collections::BTreeSet::new();
        for (n, phi) in &axioms {
            if crate::kernel::builtin_axiom(n).is_some() {
                return Err(TheoryError::ReservedAxiom(n.clone()));
            }
            if !seen.insert(n.clone()) {
                return Err(TheoryError::DuplicateAxiom(n.clone()));
            }
            check_formula(&signature, &Context::new(), phi)
                .map_err(|source| TheoryError::IllFormedAxiom { name: n.clone(), source })?;
        }
        Ok(Theory {
            name: name.to_string(),
            signature,
            axioms,
            terminal: None,
            delegation: None,
            oracle,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_terminal(mut self, terminal: Option<String>) -> Self {
        self.terminal = terminal;
        self
    }

    pub fn with_delegation(mut self, d: Delegation) -> Self {
        self.delegation = Some(d);
        self
    }

    /// The same theory answered by another oracle.
    pub fn with_oracle(&self, oracle: Arc<dyn Oracle>) -> Theory {
        Theory {
            name: self.name.clone(),
            signature: self.signature.clone(),
            axioms: self.axioms.clone(),
            terminal: self.terminal.clone(),
            delegation: self.delegation.clone(),
            oracle,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn oracle(&self) -> &Arc<dyn Oracle> {
        &self.oracle
    }

    pub fn oracle_is_complete(&self) -> bool {
        self.oracle.is_complete()
    }

    /// Asks the oracle about a closed formula. Answers are cached, and a
    /// proof that fails the kernel is reported as `Unknown`.
    pub fn ask(&self, phi: &Formula) -> Answer {
        if let Some(a) = self.cache.lock().expect("oracle cache").get(phi) {
            return a.clone();
        }
        let answer = match self.oracle.query(self, phi) {
            Answer::Yes(p) => match check_proof(self, &Judgement::closed(phi.clone()), &p) {
                Ok(()) => Answer::Yes(p),
                Err(e) => {
                    debug_assert!(false, "oracle {} returned a bad proof of {}: {e}", self.oracle.name(), print_formula(phi));
                    Answer::Unknown
                }
            },
            other => other,
        };
        self.cache.lock().expect("oracle cache").insert(phi.clone(), answer.clone());
        answer
    }

    pub fn proves(&self, phi: &Formula) -> bool {
        self.ask(phi).is_yes()
    }
}

impl Axioms for Theory {
    fn signature(&self) -> &Signature {
        &self.signature
    }
    fn axiom(&self, name: &str) -> Option<Formula> {
        self.axioms.iter().find(|(n, _)| n == name).map(|(_, f)| f.clone())
    }
    fn axiom_list(&self) -> Vec<(String, Formula)> {
        self.axioms.clone()
    }
    fn accepts_import(&self, phi: &Formula) -> bool {
        match &self.delegation {
            Some(d) => d.base.proves(&d.translation.formula(phi)),
            None => false,
        }
    }
}
