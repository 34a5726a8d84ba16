//! Witness extraction: runs a checked proof against FP certificates of its
//! axioms, producing explicit witnesses for existential conclusions and a
//! chosen side for disjunctions.

mod report;

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{builtin_axiom, check_proof, Judgement, Proof, ProofError, P};
use crate::slash::{fp_eval, FpCertificate, Model, SlashError, Step};
use crate::syntax::{print_formula, Arrow, Assignment, Formula, Obj, Term};
use crate::theoria::Theory;

pub use report::{describe, run_criterion, CriterionReport, GoalRecord, GoalStatus};

/// FP certificates of theory axioms, by axiom name.
pub type AxiomCerts = BTreeMap<String, FpCertificate>;

#[derive(Debug, Error)]
pub enum ExtractionError {
    #[error("axiom `{0}` has no true FP certificate")]
    AxiomNotCertified(String),
    #[error(transparent)]
    Slash(#[from] SlashError),
    #[error("proof rejected: {0}")]
    Rejected(#[from] ProofError),
    #[error("a proof of bot was accepted with certified axioms")]
    InconsistencyWitness,
    #[error("extraction reached an unsound state: {0}")]
    Unsound(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    /// One canonical constant per existentially bound variable, outermost first.
    Witness { assignment: Vec<(String, String)> },
    Disjunct { side: Side },
    Plain,
}

#[derive(Clone, Debug)]
pub struct ExtractionResult {
    pub conclusion: Formula,
    pub payload: Payload,
    /// `FP` of the instantiated body, the chosen disjunct, or the
    /// conclusion itself.
    pub certificate: FpCertificate,
}

/// Signs `FP` of each theory axiom, failing on the first that does not hold.
pub fn certify_axioms(t: &Theory, m: &Model) -> Result<AxiomCerts, ExtractionError> {
    let mut out = AxiomCerts::new();
    for (name, phi) in &t.axioms {
        let c = fp_eval(t, m, phi)?;
        if !c.verdict {
            return Err(ExtractionError::AxiomNotCertified(name.clone()));
        }
        out.insert(name.clone(), c);
    }
    Ok(out)
}

type Env = BTreeMap<String, Term>;

/// What the soundness induction knows about a subformula: either a
/// certificate computed by `fp_eval`, or evidence built by the proof.
#[derive(Clone)]
enum Ev {
    Cert(Rc<FpCertificate>),
    Trivial,
    And(Rc<Ev>, Rc<Ev>),
    Or(Side, Rc<Ev>),
    Exists(Term, Rc<Ev>),
    Lam { body: P, env: Env, hyps: Vec<Ev> },
    ForallLam { var: String, body: P, env: Env, hyps: Vec<Ev> },
}

struct Extractor<'a> {
    theory: &'a Theory,
    model: &'a Model,
    axioms: &'a AxiomCerts,
    evaluated: RefCell<HashMap<Formula, Rc<FpCertificate>>>,
}

fn unsound(msg: impl Into<String>) -> ExtractionError {
    ExtractionError::Unsound(msg.into())
}

fn assignment(env: &Env) -> Assignment {
    let mut s = Assignment::new();
    for (v, t) in env {
        s.bind(v, t.clone());
    }
    s
}

impl Extractor<'_> {
    fn fp(&self, phi: &Formula) -> Result<Rc<FpCertificate>, ExtractionError> {
        if let Some(c) = self.evaluated.borrow().get(phi) {
            return Ok(c.clone());
        }
        let c = Rc::new(fp_eval(self.theory, self.model, phi)?);
        self.evaluated.borrow_mut().insert(phi.clone(), c.clone());
        Ok(c)
    }

    /// The canonical constant a closed term denotes.
    fn canonical(&self, t: &Term) -> Result<Term, ExtractionError> {
        Ok(match t {
            Term::Obj(o) => Term::Obj(o.clone()),
            Term::Arr(a) => Term::Arr(Arrow::cst(&self.model.representative(&self.model.table.canon(a)?))),
        })
    }

    fn instantiate(&self, env: &Env, t: &Term) -> Result<Term, ExtractionError> {
        self.canonical(&assignment(env).term(t))
    }

    fn certified(&self, name: &str, c: Rc<FpCertificate>) -> Result<Ev, ExtractionError> {
        if c.verdict {
            Ok(Ev::Cert(c))
        } else {
            Err(ExtractionError::AxiomNotCertified(name.to_string()))
        }
    }

    fn run(&self, p: &P, env: &Env, hyps: &[Ev]) -> Result<Ev, ExtractionError> {
        Ok(match &**p {
            Proof::Hyp(i) => hyps.get(*i).cloned().ok_or_else(|| unsound(format!("hypothesis {i} out of range")))?,
            Proof::Axiom(name) => {
                if let Some(phi) = builtin_axiom(name) {
                    self.certified(name, self.fp(phi)?)?
                } else {
                    let c = self.axioms.get(name).ok_or_else(|| ExtractionError::AxiomNotCertified(name.clone()))?;
                    self.certified(name, Rc::new(c.clone()))?
                }
            }
            Proof::Imported(phi) => {
                let phi = assignment(env).formula(phi);
                self.certified(&print_formula(&phi), self.fp(&phi)?)?
            }
            Proof::AndIntro(a, b) => Ev::And(Rc::new(self.run(a, env, hyps)?), Rc::new(self.run(b, env, hyps)?)),
            Proof::AndElimL(q) => self.project(self.run(q, env, hyps)?, Side::Left)?,
            Proof::AndElimR(q) => self.project(self.run(q, env, hyps)?, Side::Right)?,
            Proof::OrIntroL(q, _) => Ev::Or(Side::Left, Rc::new(self.run(q, env, hyps)?)),
            Proof::OrIntroR(_, q) => Ev::Or(Side::Right, Rc::new(self.run(q, env, hyps)?)),
            Proof::OrElim(major, l, r) => {
                let (side, e) = self.choose(self.run(major, env, hyps)?)?;
                let mut hyps = hyps.to_vec();
                hyps.push(e);
                self.run(if side == Side::Left { l } else { r }, env, &hyps)?
            }
            Proof::ImpliesIntro(_, body) => Ev::Lam { body: body.clone(), env: env.clone(), hyps: hyps.to_vec() },
            Proof::ImpliesElim(f, a) => {
                let arg = self.run(a, env, hyps)?;
                self.apply(self.run(f, env, hyps)?, arg)?
            }
            Proof::TopIntro | Proof::EqRefl(_) | Proof::EqSym(_) | Proof::EqTrans(..) | Proof::EqCongComp(..) => {
                Ev::Trivial
            }
            Proof::BotElim(q, _) => {
                self.run(q, env, hyps)?;
                return Err(ExtractionError::InconsistencyWitness);
            }
            Proof::ForallIntro(var, _, body) => {
                Ev::ForallLam { var: var.clone(), body: body.clone(), env: env.clone(), hyps: hyps.to_vec() }
            }
            Proof::ForallElim(q, t) => {
                let t = self.instantiate(env, t)?;
                self.specialise(self.run(q, env, hyps)?, t)?
            }
            Proof::ExistsIntro(_, t, q) => Ev::Exists(self.instantiate(env, t)?, Rc::new(self.run(q, env, hyps)?)),
            Proof::ExistsElim(major, var, minor) => {
                let (w, e) = self.open(self.run(major, env, hyps)?)?;
                let mut env = env.clone();
                env.insert(var.clone(), w);
                let mut hyps = hyps.to_vec();
                hyps.push(e);
                self.run(minor, &env, &hyps)?
            }
        })
    }

    fn sub(c: &FpCertificate) -> Result<(), ExtractionError> {
        if c.verdict {
            Ok(())
        } else {
            Err(unsound(format!("FP of `{}` is false", c.formula)))
        }
    }

    fn project(&self, e: Ev, side: Side) -> Result<Ev, ExtractionError> {
        match e {
            Ev::And(a, b) => Ok((*if side == Side::Left { a } else { b }).clone()),
            Ev::Cert(c) => match &c.step {
                Step::And { parts } if parts.len() == 2 => {
                    let part = &parts[if side == Side::Left { 0 } else { 1 }];
                    Self::sub(part)?;
                    Ok(Ev::Cert(Rc::new(part.clone())))
                }
                _ => Err(unsound(format!("`{}` is not a true conjunction", c.formula))),
            },
            _ => Err(unsound("conjunction elimination on other evidence")),
        }
    }

    fn choose(&self, e: Ev) -> Result<(Side, Ev), ExtractionError> {
        match e {
            Ev::Or(side, inner) => Ok((side, (*inner).clone())),
            Ev::Cert(c) => match &c.step {
                Step::Or { chosen: Some(i), parts } => {
                    let part = parts.last().expect("chosen part");
                    Self::sub(part)?;
                    Ok((if *i == 0 { Side::Left } else { Side::Right }, Ev::Cert(Rc::new(part.clone()))))
                }
                _ => Err(unsound(format!("`{}` is not a true disjunction", c.formula))),
            },
            _ => Err(unsound("disjunction elimination on other evidence")),
        }
    }

    fn apply(&self, f: Ev, arg: Ev) -> Result<Ev, ExtractionError> {
        match f {
            Ev::Lam { body, env, mut hyps } => {
                hyps.push(arg);
                self.run(&body, &env, &hyps)
            }
            Ev::Cert(c) => match &c.step {
                Step::Implies { conclusion: Some(k), .. } if c.verdict => {
                    Self::sub(k)?;
                    Ok(Ev::Cert(Rc::new((**k).clone())))
                }
                _ => Err(unsound(format!("`{}` does not carry its conclusion", c.formula))),
            },
            _ => Err(unsound("implication elimination on other evidence")),
        }
    }

    fn specialise(&self, f: Ev, t: Term) -> Result<Ev, ExtractionError> {
        match f {
            Ev::ForallLam { var, body, mut env, hyps } => {
                env.insert(var, t);
                self.run(&body, &env, &hyps)
            }
            Ev::Cert(c) => {
                let name = term_name(&t);
                match &c.step {
                    Step::Forall { instances, .. } if c.verdict => {
                        let (_, inst) = instances
                            .iter()
                            .find(|(n, _)| *n == name)
                            .ok_or_else(|| unsound(format!("`{name}` is not an instance of `{}`", c.formula)))?;
                        Self::sub(inst)?;
                        Ok(Ev::Cert(Rc::new(inst.clone())))
                    }
                    _ => Err(unsound(format!("`{}` is not a true universal", c.formula))),
                }
            }
            _ => Err(unsound("universal elimination on other evidence")),
        }
    }

    fn open(&self, e: Ev) -> Result<(Term, Ev), ExtractionError> {
        match e {
            Ev::Exists(w, inner) => Ok((w, (*inner).clone())),
            Ev::Cert(c) => match &c.step {
                Step::Exists { witness: Some(w), probes } => {
                    let (_, inst) = probes.last().expect("witness probe");
                    Self::sub(inst)?;
                    let w = self.model.theory.signature.objects.get(w).map_or_else(
                        || Term::Arr(Arrow::cst(w)),
                        |o| Term::Obj(Obj::cst(o)),
                    );
                    Ok((w, Ev::Cert(Rc::new(inst.clone()))))
                }
                _ => Err(unsound(format!("`{}` is not a true existential", c.formula))),
            },
            _ => Err(unsound("existential elimination on other evidence")),
        }
    }
}

fn term_name(t: &Term) -> String {
    match t {
        Term::Obj(Obj::Const(o)) => o.clone(),
        Term::Arr(Arrow::Const(a)) => a.clone(),
        other => other.to_string(),
    }
}

/// Extracts the constructive content of a closed proof of `phi`.
pub fn extract(
    t: &Theory,
    m: &Model,
    axioms: &AxiomCerts,
    proof: &P,
    phi: &Formula,
) -> Result<ExtractionResult, ExtractionError> {
    check_proof(t, &Judgement::closed(phi.clone()), proof)?;
    if *phi == Formula::Bot {
        return Err(ExtractionError::InconsistencyWitness);
    }
    let x = Extractor { theory: t, model: m, axioms, evaluated: RefCell::new(HashMap::new()) };
    let mut ev = x.run(proof, &Env::new(), &[])?;
    let (payload, instance) = match phi {
        Formula::Exists(..) => {
            let mut assignment = Vec::new();
            let mut cur = phi.clone();
            while let Formula::Exists(bd, body) = &cur {
                let (w, inner) = x.open(ev)?;
                assignment.push((bd.hint.0.clone(), term_name(&w)));
                cur = body.open(&w);
                ev = inner;
            }
            (Payload::Witness { assignment }, cur)
        }
        Formula::Or(a, b) => {
            let (side, _) = x.choose(ev)?;
            (Payload::Disjunct { side }, if side == Side::Left { (**a).clone() } else { (**b).clone() })
        }
        _ => (Payload::Plain, phi.clone()),
    };
    let certificate = (*x.fp(&instance)?).clone();
    if !certificate.verdict {
        return Err(unsound(format!("FP of the extracted `{}` is false", certificate.formula)));
    }
    Ok(ExtractionResult { conclusion: phi.clone(), payload, certificate })
}
