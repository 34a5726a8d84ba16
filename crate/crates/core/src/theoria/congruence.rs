//! A proof-producing decision procedure for theories whose axioms are
//! closed positive formulas or ground implications between them.
//!
//! Hypotheses are decomposed eagerly: conjunctions are split, disjunctions
//! and existentials are eliminated by case analysis and fresh eigenvariables,
//! and equations are completed into a convergent rewrite system on paths.
//! Implications among the hypotheses fire once their antecedent is proved.
//! Goals are then attacked in a goal-directed way, with existential
//! witnesses drawn from the normal forms of the required hom.
//!
//! A `No` answer is only given when nothing was given up on: every
//! hypothesis was usable, completion converged, and every witness space
//! searched was finite.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::kernel::rules::*;
use crate::kernel::{Eqn, P};
use crate::syntax::{Arrow, ArrowSort, Context, Formula, Obj, Scope, Sort, Term};

use super::paths::{normalise, Path};
use super::rewrite::{CompletionLimits, RewriteSystem};
use super::{Answer, Oracle, Theory};

#[derive(Clone, Copy, Debug)]
pub struct CongruenceLimits {
    pub completion: CompletionLimits,
    /// Most candidate witnesses enumerated for one existential.
    pub max_witnesses: usize,
    /// Longest composite enumerated as a witness.
    pub max_witness_length: usize,
    /// Cap on goal and hypothesis steps for one query.
    pub max_work: usize,
}

impl Default for CongruenceLimits {
    fn default() -> Self {
        CongruenceLimits { completion: CompletionLimits::default(), max_witnesses: 64, max_witness_length: 6, max_work: 200_000 }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CongruenceOracle {
    pub limits: CongruenceLimits,
}

impl Oracle for CongruenceOracle {
    fn name(&self) -> String {
        "congruence".into()
    }
    fn query(&self, theory: &Theory, phi: &Formula) -> Answer {
        let mut prover = Prover { theory, limits: self.limits, work: 0 };
        let pending = theory.axioms.iter().map(|(n, f)| (f.clone(), axiom(n))).collect();
        match prover.solve(State::default(), pending, phi) {
            Outcome::Proved(p) => Answer::Yes(p.simplify()),
            Outcome::Refuted => Answer::No,
            Outcome::Unknown => Answer::Unknown,
        }
    }
}

enum Outcome {
    Proved(P),
    Refuted,
    Unknown,
}

#[derive(Clone, Debug)]
struct Clause {
    antecedent: Formula,
    consequent: Formula,
    proof: P,
    fired: bool,
}

#[derive(Clone, Debug, Default)]
struct State {
    ctx: Context,
    nhyps: usize,
    eqs: Vec<(Path, Path, P)>,
    clauses: Vec<Clause>,
    incomplete: bool,
    system: Option<Arc<RewriteSystem>>,
}

impl State {
    fn refuted(&self) -> Outcome {
        if self.incomplete {
            Outcome::Unknown
        } else {
            Outcome::Refuted
        }
    }
}

struct Prover<'t> {
    theory: &'t Theory,
    limits: CongruenceLimits,
    work: usize,
}

impl<'t> Prover<'t> {
    fn eqn(&self, st: &State) -> Eqn<'t> {
        Eqn::new(&self.theory.signature, st.ctx.clone())
    }

    fn exhausted(&mut self) -> bool {
        self.work += 1;
        self.work > self.limits.max_work
    }

    fn fresh(&self, st: &State, hint: &str) -> String {
        Scope::new(&self.theory.signature, st.ctx.clone()).fresh(hint)
    }

    /// Decomposes `pending` into the state, then proves `goal`.
    fn solve(&mut self, mut st: State, pending: Vec<(Formula, P)>, goal: &Formula) -> Outcome {
        let mut queue: VecDeque<(Formula, P)> = pending.into();
        loop {
            if self.exhausted() {
                return Outcome::Unknown;
            }
            let Some(pos) = (0..queue.len())
                .find(|&i| !matches!(queue[i].0, Formula::Or(..) | Formula::Exists(..)))
                .or_else(|| (0..queue.len()).find(|&i| matches!(queue[i].0, Formula::Exists(..))))
                .or(if queue.is_empty() { None } else { Some(0) })
            else {
                match self.fire_clause(&mut st) {
                    Some(item) => {
                        queue.push_back(item);
                        continue;
                    }
                    None => {
                        st.system = Some(self.system(&st));
                        return self.goal(&st, goal);
                    }
                }
            };
            let (phi, p) = queue.remove(pos).expect("index in range");
            match phi {
                Formula::Top => {}
                Formula::Bot => return Outcome::Proved(bot_elim(p, goal.clone())),
                Formula::And(a, b) => {
                    queue.push_back((*a, and_l(p.clone())));
                    queue.push_back((*b, and_r(p)));
                }
                Formula::Eq(s, t) => {
                    let eqn = self.eqn(&st);
                    match (normalise(&eqn, &s), normalise(&eqn, &t)) {
                        (Ok((ps, es)), Ok((pt, et))) => {
                            st.eqs.push((ps, pt, trans(sym(es), trans(p, et))));
                            st.system = None;
                        }
                        _ => st.incomplete = true,
                    }
                }
                Formula::Implies(a, c) => {
                    st.clauses.push(Clause { antecedent: *a, consequent: *c, proof: p, fired: false });
                }
                Formula::Forall(..) => st.incomplete = true,
                Formula::Exists(b, body) => {
                    let x = self.fresh(&st, &b.hint.0);
                    let k = st.nhyps;
                    let mut inner = st.clone();
                    inner.ctx.push(&x, b.sort.clone());
                    inner.nhyps += 1;
                    let mut rest: Vec<(Formula, P)> = queue.into_iter().collect();
                    rest.push((body.open_var(&b, &x), hyp(k)));
                    return match self.solve(inner, rest, goal) {
                        Outcome::Proved(q) => Outcome::Proved(exists_elim(p, &x, q)),
                        other => other,
                    };
                }
                Formula::Or(a, b) => {
                    let k = st.nhyps;
                    let rest: Vec<(Formula, P)> = queue.into_iter().collect();
                    let mut branch = |side: Formula| {
                        let mut inner = st.clone();
                        inner.nhyps += 1;
                        let mut items = rest.clone();
                        items.push((side, hyp(k)));
                        self.solve(inner, items, goal)
                    };
                    let left = branch(*a);
                    if let Outcome::Refuted = left {
                        return Outcome::Refuted;
                    }
                    let right = branch(*b);
                    return match (left, right) {
                        (Outcome::Proved(l), Outcome::Proved(r)) => Outcome::Proved(or_elim(p, l, r)),
                        (_, Outcome::Refuted) => Outcome::Refuted,
                        _ => Outcome::Unknown,
                    };
                }
            }
        }
    }

    /// Fires the first clause whose antecedent is now provable.
    fn fire_clause(&mut self, st: &mut State) -> Option<(Formula, P)> {
        st.system = Some(self.system(st));
        let mut saw_unknown = false;
        for i in 0..st.clauses.len() {
            if st.clauses[i].fired {
                continue;
            }
            let a = st.clauses[i].antecedent.clone();
            match self.goal(st, &a) {
                Outcome::Proved(q) => {
                    let c = &mut st.clauses[i];
                    c.fired = true;
                    return Some((c.consequent.clone(), imp_elim(c.proof.clone(), q)));
                }
                Outcome::Unknown => saw_unknown = true,
                Outcome::Refuted => {}
            }
        }
        if saw_unknown {
            st.incomplete = true;
        }
        None
    }

    fn system(&self, st: &State) -> Arc<RewriteSystem> {
        if let Some(s) = &st.system {
            return s.clone();
        }
        Arc::new(RewriteSystem::complete(&self.eqn(st), st.eqs.clone(), self.limits.completion))
    }

    fn equation(&mut self, st: &State, s: &Arrow, t: &Arrow) -> Outcome {
        let eqn = self.eqn(st);
        let (Ok((ps, es)), Ok((pt, et))) = (normalise(&eqn, s), normalise(&eqn, t)) else {
            return Outcome::Unknown;
        };
        let sys = self.system(st);
        let (ns, qs) = sys.normalise(&eqn, &ps);
        let (nt, qt) = sys.normalise(&eqn, &pt);
        if ns == nt {
            return Outcome::Proved(trans(trans(es, qs), sym(trans(et, qt))));
        }
        if sys.confluent {
            st.refuted()
        } else {
            Outcome::Unknown
        }
    }

    fn goal(&mut self, st: &State, g: &Formula) -> Outcome {
        if self.exhausted() {
            return Outcome::Unknown;
        }
        match g {
            Formula::Top => Outcome::Proved(top()),
            Formula::Bot => st.refuted(),
            Formula::Eq(s, t) => self.equation(st, s, t),
            Formula::And(a, b) => match self.goal(st, a) {
                Outcome::Proved(p) => match self.goal(st, b) {
                    Outcome::Proved(q) => Outcome::Proved(and_intro(p, q)),
                    other => other,
                },
                other => other,
            },
            Formula::Or(a, b) => {
                let left = self.goal(st, a);
                if let Outcome::Proved(p) = left {
                    return Outcome::Proved(or_l(p, (**b).clone()));
                }
                match (left, self.goal(st, b)) {
                    (_, Outcome::Proved(q)) => Outcome::Proved(or_r((**a).clone(), q)),
                    (Outcome::Refuted, Outcome::Refuted) => Outcome::Refuted,
                    _ => Outcome::Unknown,
                }
            }
            Formula::Implies(a, b) => {
                let mut inner = st.clone();
                let k = inner.nhyps;
                inner.nhyps += 1;
                match self.solve(inner, vec![((**a).clone(), hyp(k))], b) {
                    Outcome::Proved(q) => Outcome::Proved(imp_intro((**a).clone(), q)),
                    other => other,
                }
            }
            Formula::Forall(bd, body) => {
                let x = self.fresh(st, &bd.hint.0);
                let mut inner = st.clone();
                inner.ctx.push(&x, bd.sort.clone());
                match self.goal(&inner, &body.open_var(bd, &x)) {
                    Outcome::Proved(q) => Outcome::Proved(forall_intro(&x, bd.sort.clone(), q)),
                    other => other,
                }
            }
            Formula::Exists(bd, body) => {
                let probe = self.fresh(st, &bd.hint.0);
                let vacuous = !body.open_var(bd, &probe).mentions(&probe);
                if vacuous {
                    if let Outcome::Refuted = self.goal(st, &body.open_var(bd, &probe)) {
                        return Outcome::Refuted;
                    }
                }
                let (candidates, finite) = self.witnesses(st, &bd.sort);
                let mut all_refuted = finite;
                for t in candidates {
                    match self.goal(st, &body.open(&t)) {
                        Outcome::Proved(q) => return Outcome::Proved(exists_intro(g.clone(), t, q)),
                        Outcome::Refuted => {}
                        Outcome::Unknown => all_refuted = false,
                    }
                }
                if all_refuted {
                    st.refuted()
                } else {
                    Outcome::Unknown
                }
            }
        }
    }

    /// Candidate witnesses of a sort, one per provable-equality class when
    /// the rewrite system is convergent, and whether the list is exhaustive.
    fn witnesses(&mut self, st: &State, sort: &Sort) -> (Vec<Term>, bool) {
        let objects = self.objects(st);
        match sort {
            Sort::Obj => (objects.into_iter().map(Term::Obj).collect(), true),
            Sort::Arr(ArrowSort { dom, cod }) => {
                let sys = self.system(st);
                let gens = self.generators(st);
                let mut found = Vec::new();
                let mut frontier = vec![Path::empty(dom.clone())];
                let mut finite = sys.confluent;
                let mut length = 0;
                while !frontier.is_empty() {
                    if length == self.limits.max_witness_length {
                        finite = false;
                        break;
                    }
                    length += 1;
                    let mut next = Vec::new();
                    for p in frontier {
                        if p.cod() == cod {
                            found.push(Term::Arr(p.canon()));
                        }
                        for (g, s) in &gens {
                            if &s.dom != p.cod() {
                                continue;
                            }
                            let ext = p.then(&Path { objs: vec![s.dom.clone(), s.cod.clone()], gens: vec![g.clone()] });
                            if sys.is_normal(&ext) {
                                next.push(ext);
                            }
                        }
                    }
                    if found.len() + next.len() > self.limits.max_witnesses {
                        finite = false;
                        break;
                    }
                    frontier = next;
                }
                (found, finite)
            }
        }
    }

    fn objects(&self, st: &State) -> Vec<Obj> {
        let mut out: Vec<Obj> = self.theory.signature.objects.iter().map(|o| Obj::cst(o)).collect();
        out.extend(st.ctx.decls.iter().filter(|d| d.sort == Sort::Obj).map(|d| Obj::var(&d.name)));
        out
    }

    fn generators(&self, st: &State) -> Vec<(Arrow, ArrowSort)> {
        let mut out: Vec<(Arrow, ArrowSort)> =
            self.theory.signature.arrows.iter().map(|(n, s)| (Arrow::cst(n), s.clone())).collect();
        for d in &st.ctx.decls {
            if let Sort::Arr(s) = &d.sort {
                out.push((Arrow::var(&d.name), s.clone()));
            }
        }
        out
    }
}
