//! The Friedman slash `FP` relative to a theory and a positive diagram.

use serde::{Deserialize, Serialize};

use crate::syntax::{check_formula, print_formula, Arrow, Binder, Context, Formula, Obj, Sort, Term};
use crate::theoria::{Answer, CertDb, Theory};

use super::{Model, SlashError};

/// The outcome of a provability sub-query, by certificate key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provability {
    pub key: String,
    pub provable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Step {
    Top,
    Bot,
    /// Both sides as canonical constants.
    Atom { lhs: String, rhs: String },
    /// Conjuncts evaluated left to right, stopping at the first false one.
    And { parts: Vec<FpCertificate> },
    /// `chosen` is 0 for the left disjunct, 1 for the right.
    Or { chosen: Option<usize>, parts: Vec<FpCertificate> },
    /// Candidates probed in domain order; the last is the witness when the
    /// verdict is true.
    Exists { witness: Option<String>, probes: Vec<(String, FpCertificate)> },
    Implies { premise: Box<FpCertificate>, conclusion: Option<Box<FpCertificate>>, provability: Option<Provability> },
    Forall { instances: Vec<(String, FpCertificate)>, provability: Option<Provability> },
}

/// `FP(φ)` together with the evidence for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpCertificate {
    pub formula: String,
    pub verdict: bool,
    pub step: Step,
}

impl FpCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }
    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

fn provable(t: &Theory, phi: &Formula) -> Result<Provability, SlashError> {
    let provable = match t.ask(phi) {
        Answer::Yes(_) => true,
        Answer::No => false,
        Answer::Unknown if t.oracle_is_complete() => false,
        Answer::Unknown => return Err(SlashError::OracleIncomplete(print_formula(phi))),
    };
    Ok(Provability { key: CertDb::key(phi), provable })
}

/// The quantifier domain of a sort: object constants, or one constant
/// per class of the hom.
fn domain(m: &Model, sort: &Sort) -> Vec<(String, Term)> {
    match sort {
        Sort::Obj => m.theory.signature.objects.iter().map(|o| (o.clone(), Term::Obj(Obj::cst(o)))).collect(),
        Sort::Arr(s) => m.domain(s).into_iter().map(|c| (c.clone(), Term::Arr(Arrow::cst(&c)))).collect(),
    }
}

fn instance(body: &Formula, term: &Term) -> Formula {
    body.open(term)
}

struct Evaluator<'a> {
    theory: &'a Theory,
    model: &'a Model,
}

impl Evaluator<'_> {
    fn eval(&self, phi: &Formula) -> Result<FpCertificate, SlashError> {
        let (verdict, step) = match phi {
            Formula::Top => (true, Step::Top),
            Formula::Bot => (false, Step::Bot),
            Formula::Eq(l, r) => {
                let (lhs, rhs) = (self.model.table.canon(l)?, self.model.table.canon(r)?);
                (self.model.same(&lhs, &rhs), Step::Atom { lhs, rhs })
            }
            Formula::And(a, b) => {
                let mut parts = vec![self.eval(a)?];
                if parts[0].verdict {
                    parts.push(self.eval(b)?);
                }
                (parts.iter().all(|p| p.verdict) && parts.len() == 2, Step::And { parts })
            }
            Formula::Or(a, b) => {
                let mut parts = vec![self.eval(a)?];
                if !parts[0].verdict {
                    parts.push(self.eval(b)?);
                }
                let chosen = parts.iter().position(|p| p.verdict);
                (chosen.is_some(), Step::Or { chosen, parts })
            }
            Formula::Implies(a, b) => {
                let premise = Box::new(self.eval(a)?);
                let conclusion = if premise.verdict { Some(Box::new(self.eval(b)?)) } else { None };
                let semantic = conclusion.as_ref().is_none_or(|c| c.verdict);
                let provability = if semantic { Some(provable(self.theory, phi)?) } else { None };
                let verdict = semantic && provability.as_ref().is_some_and(|p| p.provable);
                (verdict, Step::Implies { premise, conclusion, provability })
            }
            Formula::Exists(bd, body) => {
                let mut probes = Vec::new();
                let mut witness = None;
                for (name, term) in domain(self.model, &bd.sort) {
                    let c = self.eval(&instance(body, &term))?;
                    let found = c.verdict;
                    probes.push((name.clone(), c));
                    if found {
                        witness = Some(name);
                        break;
                    }
                }
                (witness.is_some(), Step::Exists { witness, probes })
            }
            Formula::Forall(bd, body) => {
                let mut instances = Vec::new();
                let mut all = true;
                for (name, term) in domain(self.model, &bd.sort) {
                    let c = self.eval(&instance(body, &term))?;
                    all = c.verdict;
                    instances.push((name, c));
                    if !all {
                        break;
                    }
                }
                let provability = if all { Some(provable(self.theory, phi)?) } else { None };
                let verdict = all && provability.as_ref().is_some_and(|p| p.provable);
                (verdict, Step::Forall { instances, provability })
            }
        };
        Ok(FpCertificate { formula: print_formula(phi), verdict, step })
    }
}

/// Evaluates `FP(φ)` for a closed formula. Atoms are read in the diagram,
/// quantifiers range over canonical constants, and the implication and
/// universal clauses also ask the theory's oracle. An oracle answer of
/// `Unknown` aborts unless the oracle is complete.
pub fn fp_eval(t: &Theory, m: &Model, phi: &Formula) -> Result<FpCertificate, SlashError> {
    check_formula(&t.signature, &Context::new(), phi)?;
    Evaluator { theory: t, model: m }.eval(phi)
}

fn bad(msg: impl Into<String>) -> SlashError {
    SlashError::Replay(msg.into())
}

/// Re-derives the verdict of a certificate for `phi` from its trace,
/// checking atoms against the diagram, instances against the quantifier
/// domains and provability references against their formulas. Recorded
/// provability answers are trusted.
pub fn replay(m: &Model, phi: &Formula, cert: &FpCertificate) -> Result<bool, SlashError> {
    if cert.formula != print_formula(phi) {
        return Err(bad(format!("certificate is for `{}`, not `{}`", cert.formula, print_formula(phi))));
    }
    let check_key = |p: &Provability| {
        if p.key == CertDb::key(phi) {
            Ok(p.provable)
        } else {
            Err(bad(format!("provability reference of `{}` has the wrong key", cert.formula)))
        }
    };
    let instances = |bd: &Binder, body: &Formula, seen: &[(String, FpCertificate)], stop_on: bool| {
        let dom = domain(m, &bd.sort);
        let mut last = None;
        for (i, (name, c)) in seen.iter().enumerate() {
            let Some((expected, term)) = dom.get(i) else { return Err(bad("more instances than domain elements")) };
            if expected != name {
                return Err(bad(format!("instance `{name}` out of domain order")));
            }
            let v = replay(m, &instance(body, term), c)?;
            if v == stop_on && i + 1 != seen.len() {
                return Err(bad("instances continue past a decisive one"));
            }
            last = Some(v);
        }
        let decided = last == Some(stop_on);
        if !decided && seen.len() != dom.len() {
            return Err(bad("domain not exhausted"));
        }
        Ok(decided)
    };
    let verdict = match (phi, &cert.step) {
        (Formula::Top, Step::Top) => true,
        (Formula::Bot, Step::Bot) => false,
        (Formula::Eq(l, r), Step::Atom { lhs, rhs }) => {
            if &m.table.canon(l)? != lhs || &m.table.canon(r)? != rhs {
                return Err(bad(format!("atom `{}` canonicalises differently", cert.formula)));
            }
            m.same(lhs, rhs)
        }
        (Formula::And(a, b), Step::And { parts }) => match parts.as_slice() {
            [pa] => {
                if replay(m, a, pa)? {
                    return Err(bad("conjunction stopped at a true conjunct"));
                }
                false
            }
            [pa, pb] => replay(m, a, pa)? && replay(m, b, pb)?,
            _ => return Err(bad("malformed conjunction")),
        },
        (Formula::Or(a, b), Step::Or { chosen, parts }) => {
            let got = match parts.as_slice() {
                [pa] if replay(m, a, pa)? => Some(0),
                [pa, pb] if !replay(m, a, pa)? => replay(m, b, pb)?.then_some(1),
                _ => return Err(bad("malformed disjunction")),
            };
            if &got != chosen {
                return Err(bad("disjunct choice does not match"));
            }
            got.is_some()
        }
        (Formula::Implies(a, b), Step::Implies { premise, conclusion, provability }) => {
            let pv = replay(m, a, premise)?;
            let semantic = match (pv, conclusion) {
                (false, None) => true,
                (true, Some(c)) => replay(m, b, c)?,
                _ => return Err(bad("implication trace does not follow its premise")),
            };
            match (semantic, provability) {
                (true, Some(p)) => check_key(p)?,
                (false, None) => false,
                _ => return Err(bad("implication provability recorded inconsistently")),
            }
        }
        (Formula::Exists(bd, body), Step::Exists { witness, probes }) => {
            let found = instances(bd, body, probes, true)?;
            if found != witness.is_some() || (found && witness.as_ref() != probes.last().map(|p| &p.0)) {
                return Err(bad("witness does not match the probes"));
            }
            found
        }
        (Formula::Forall(bd, body), Step::Forall { instances: seen, provability }) => {
            let refuted = instances(bd, body, seen, false)?;
            match (refuted, provability) {
                (false, Some(p)) => check_key(p)?,
                (true, None) => false,
                _ => return Err(bad("universal provability recorded inconsistently")),
            }
        }
        _ => return Err(bad(format!("trace shape does not match `{}`", cert.formula))),
    };
    if verdict != cert.verdict {
        return Err(bad(format!("verdict of `{}` does not replay", cert.formula)));
    }
    Ok(verdict)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FpCheck {
    /// `FP(φ)` holds and the oracle proves `φ`.
    Holds,
    /// `FP(φ)` is false.
    Vacuous,
    /// `FP(φ)` holds but the oracle does not prove `φ`.
    Violated(String),
}

/// Checks that `FP(φ)` implies `T ⊢ φ` for one formula.
pub fn check_fp_implies_provable(t: &Theory, m: &Model, phi: &Formula) -> Result<FpCheck, SlashError> {
    if !fp_eval(t, m, phi)?.verdict {
        return Ok(FpCheck::Vacuous);
    }
    Ok(if t.proves(phi) { FpCheck::Holds } else { FpCheck::Violated(print_formula(phi)) })
}
