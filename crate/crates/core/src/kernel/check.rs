//! The proof checker: infers the conclusion of each node bottom-up.

use crate::syntax::{print_formula, Formula, Scope, Sort, Term, WfError};

use super::{builtin_axiom, Axioms, Judgement, NodePath, Proof, ProofError};

struct Checker<'a, A: Axioms + ?Sized> {
    axioms: &'a A,
    scope: Scope<'a>,
    hyps: Vec<Formula>,
    path: Vec<usize>,
}

/// Remaining stack below which checking a premise moves to a new segment.
const RED_ZONE: usize = 256 * 1024;
const STACK_SEGMENT: usize = 8 * 1024 * 1024;

fn show(phi: &Formula) -> String {
    format!("`{}`", print_formula(phi))
}

impl<'a, A: Axioms + ?Sized> Checker<'a, A> {
    fn here(&self) -> NodePath {
        NodePath(self.path.clone())
    }

    fn mismatch(&self, expected: impl Into<String>, found: &Formula) -> ProofError {
        ProofError::RuleMismatch { path: self.here(), expected: expected.into(), found: show(found) }
    }

    fn wf(&self, r: Result<(), WfError>) -> Result<(), ProofError> {
        r.map_err(|source| ProofError::IllFormed { path: self.here(), source })
    }

    fn term_sort(&self, t: &Term) -> Result<Sort, ProofError> {
        self.scope
            .infer_term(t)
            .map_err(|source| ProofError::IllFormed { path: self.here(), source })
    }

    fn child(&mut self, i: usize, p: &Proof) -> Result<Formula, ProofError> {
        self.path.push(i);
        let r = stacker::maybe_grow(RED_ZONE, STACK_SEGMENT, || self.infer(p));
        self.path.pop();
        r
    }

    fn with_hyp(&mut self, i: usize, h: Formula, p: &Proof) -> Result<Formula, ProofError> {
        self.hyps.push(h);
        let r = self.child(i, p);
        self.hyps.pop();
        r
    }

    fn fresh_ok(&self, var: &str) -> bool {
        !self.scope.sig.has_constant(var)
            && !self.scope.ctx.contains(var)
            && !self.hyps.iter().any(|h| h.mentions(var))
    }

    fn with_var(
        &mut self,
        i: usize,
        var: &str,
        sort: &Sort,
        hyp: Option<Formula>,
        p: &Proof,
    ) -> Result<Formula, ProofError> {
        if !self.fresh_ok(var) {
            return Err(ProofError::EigenvariableCapture { path: self.here(), var: var.into() });
        }
        self.scope.ctx.push(var, sort.clone());
        let r = match hyp {
            Some(h) => self.with_hyp(i, h, p),
            None => self.child(i, p),
        };
        self.scope.ctx.decls.pop();
        r
    }

    fn infer(&mut self, p: &Proof) -> Result<Formula, ProofError> {
        match p {
            Proof::Hyp(i) => self.hyps.get(*i).cloned().ok_or_else(|| ProofError::RuleMismatch {
                path: self.here(),
                expected: format!("hypothesis index below {}", self.hyps.len()),
                found: i.to_string(),
            }),
            Proof::Axiom(name) => builtin_axiom(name)
                .cloned()
                .or_else(|| self.axioms.axiom(name))
                .ok_or_else(|| ProofError::UnknownAxiom { path: self.here(), name: name.clone() }),
            Proof::Imported(phi) => {
                self.wf(self.scope.check_sorts(phi))?;
                if !phi.is_closed() || !self.axioms.accepts_import(phi) {
                    return Err(self.mismatch("a formula certified by the delegated theory", phi));
                }
                Ok(phi.clone())
            }
            Proof::AndIntro(a, b) => {
                let a = self.child(0, a)?;
                let b = self.child(1, b)?;
                Ok(Formula::and(a, b))
            }
            Proof::AndElimL(q) | Proof::AndElimR(q) => match self.child(0, q)? {
                Formula::And(a, b) => Ok(if matches!(p, Proof::AndElimL(_)) { *a } else { *b }),
                other => Err(self.mismatch("a conjunction", &other)),
            },
            Proof::OrIntroL(q, right) => {
                self.wf(self.scope.check_sorts(right))?;
                let a = self.child(0, q)?;
                Ok(Formula::or(a, right.clone()))
            }
            Proof::OrIntroR(left, q) => {
                self.wf(self.scope.check_sorts(left))?;
                let b = self.child(0, q)?;
                Ok(Formula::or(left.clone(), b))
            }
            Proof::OrElim(major, l, r) => {
                let (a, b) = match self.child(0, major)? {
                    Formula::Or(a, b) => (*a, *b),
                    other => return Err(self.mismatch("a disjunction", &other)),
                };
                let c1 = self.with_hyp(1, a, l)?;
                let c2 = self.with_hyp(2, b, r)?;
                if c1 != c2 {
                    self.path.push(2);
                    let e = self.mismatch(show(&c1), &c2);
                    self.path.pop();
                    return Err(e);
                }
                Ok(c1)
            }
            Proof::ImpliesIntro(a, q) => {
                self.wf(self.scope.check_sorts(a))?;
                let b = self.with_hyp(0, a.clone(), q)?;
                Ok(Formula::implies(a.clone(), b))
            }
            Proof::ImpliesElim(f, a) => {
                let (ante, cons) = match self.child(0, f)? {
                    Formula::Implies(a, b) => (*a, *b),
                    other => return Err(self.mismatch("an implication", &other)),
                };
                let got = self.child(1, a)?;
                if got != ante {
                    self.path.push(1);
                    let e = self.mismatch(show(&ante), &got);
                    self.path.pop();
                    return Err(e);
                }
                Ok(cons)
            }
            Proof::TopIntro => Ok(Formula::Top),
            Proof::BotElim(q, goal) => {
                self.wf(self.scope.check_sorts(goal))?;
                match self.child(0, q)? {
                    Formula::Bot => Ok(goal.clone()),
                    other => Err(self.mismatch("`bot`", &other)),
                }
            }
            Proof::ForallIntro(var, sort, q) => {
                self.wf(self.scope.check_sort(sort))?;
                let body = self.with_var(0, var, sort, None, q)?;
                Ok(Formula::forall(var, sort.clone(), body))
            }
            Proof::ForallElim(q, t) => {
                let (b, body) = match self.child(0, q)? {
                    Formula::Forall(b, body) => (b, body),
                    other => return Err(self.mismatch("a universal formula", &other)),
                };
                let s = self.term_sort(t)?;
                if s != b.sort {
                    return Err(ProofError::RuleMismatch {
                        path: self.here(),
                        expected: format!("a term of sort {}", crate::syntax::print_sort(&b.sort)),
                        found: format!("`{t}` of sort {}", crate::syntax::print_sort(&s)),
                    });
                }
                Ok(body.open(t))
            }
            Proof::ExistsIntro(phi, t, q) => {
                self.wf(self.scope.check_sorts(phi))?;
                let Formula::Exists(b, body) = phi else {
                    return Err(self.mismatch("an existential formula", phi));
                };
                let s = self.term_sort(t)?;
                if s != b.sort {
                    return Err(ProofError::RuleMismatch {
                        path: self.here(),
                        expected: format!("a witness of sort {}", crate::syntax::print_sort(&b.sort)),
                        found: format!("`{t}` of sort {}", crate::syntax::print_sort(&s)),
                    });
                }
                let instance = body.open(t);
                let got = self.child(0, q)?;
                if got != instance {
                    self.path.push(0);
                    let e = self.mismatch(show(&instance), &got);
                    self.path.pop();
                    return Err(e);
                }
                Ok(phi.clone())
            }
            Proof::ExistsElim(major, var, minor) => {
                let (b, body) = match self.child(0, major)? {
                    Formula::Exists(b, body) => (b, body),
                    other => return Err(self.mismatch("an existential formula", &other)),
                };
                let opened = body.open_var(&b, var);
                let c = self.with_var(1, var, &b.sort, Some(opened), minor)?;
                if c.mentions(var) {
                    return Err(ProofError::EigenvariableCapture { path: self.here(), var: var.clone() });
                }
                Ok(c)
            }
            Proof::EqRefl(a) => {
                self.term_sort(&Term::Arr(a.clone()))?;
                Ok(Formula::Eq(a.clone(), a.clone()))
            }
            Proof::EqSym(q) => match self.child(0, q)? {
                Formula::Eq(a, b) => Ok(Formula::Eq(b, a)),
                other => Err(self.mismatch("an equation", &other)),
            },
            Proof::EqTrans(q, r) => {
                let (a, b) = match self.child(0, q)? {
                    Formula::Eq(a, b) => (a, b),
                    other => return Err(self.mismatch("an equation", &other)),
                };
                match self.child(1, r)? {
                    Formula::Eq(b2, c) if b2 == b => Ok(Formula::Eq(a, c)),
                    other => {
                        self.path.push(1);
                        let e = self.mismatch(format!("an equation with left side `{b}`"), &other);
                        self.path.pop();
                        Err(e)
                    }
                }
            }
            Proof::EqCongComp(q, r) => {
                let (g, g2) = match self.child(0, q)? {
                    Formula::Eq(a, b) => (a, b),
                    other => return Err(self.mismatch("an equation", &other)),
                };
                let (f, f2) = match self.child(1, r)? {
                    Formula::Eq(a, b) => (a, b),
                    other => return Err(self.mismatch("an equation", &other)),
                };
                let lhs = crate::syntax::Arrow::comp(g, f);
                let rhs = crate::syntax::Arrow::comp(g2, f2);
                self.term_sort(&Term::Arr(lhs.clone()))?;
                self.term_sort(&Term::Arr(rhs.clone()))?;
                Ok(Formula::Eq(lhs, rhs))
            }
        }
    }
}

/// Infers what `p` proves from `hyps` in `ctx`.
pub fn infer_conclusion<A: Axioms + ?Sized>(
    axioms: &A,
    ctx: &crate::syntax::Context,
    hyps: &[Formula],
    p: &Proof,
) -> Result<Formula, ProofError> {
    let mut c = Checker {
        axioms,
        scope: Scope::new(axioms.signature(), ctx.clone()),
        hyps: hyps.to_vec(),
        path: Vec::new(),
    };
    c.infer(p)
}

/// Accepts iff `p` derives `j.goal` from `j.hyps` in `j.ctx`.
pub fn check_proof<A: Axioms + ?Sized>(axioms: &A, j: &Judgement, p: &Proof) -> Result<(), ProofError> {
    let got = infer_conclusion(axioms, &j.ctx, &j.hyps, p)?;
    if got != j.goal {
        return Err(ProofError::RuleMismatch {
            path: NodePath::default(),
            expected: show(&j.goal),
            found: show(&got),
        });
    }
    Ok(())
}
