//! Deterministic bounded proof search.
//!
//! Iterative deepening on proof size. At each goal the search tries, in a
//! fixed order: a matching hypothesis, the invertible introduction rules,
//! disjunction and existential introduction, congruence, backchaining from
//! hypotheses and axioms (with meta-variables for universally quantified
//! variables), symmetry and transitivity, and finally elimination of
//! disjunctive, existential and absurd hypotheses.

use std::collections::BTreeMap;

use crate::syntax::{Arrow, ArrowSort, Formula, Obj, Scope, Sort, Term};

use super::rules::*;
use super::{builtin_axiom, check_proof, Axioms, Judgement, BUILTIN_AXIOMS, P};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest proof size (node count) considered.
    pub max_size: usize,
    /// Cap on candidate terms tried for an unconstrained variable.
    pub max_candidates: usize,
    /// Cap on goal expansions before giving up.
    pub max_steps: usize,
}

impl SearchLimits {
    pub fn size(max_size: usize) -> Self {
        SearchLimits { max_size, max_candidates: 12, max_steps: 400_000 }
    }
}

/// Searches for a proof of `j` with at most `depth` nodes. `None` is not a
/// refutation.
pub fn bounded_search<A: Axioms + ?Sized>(axioms: &A, j: &Judgement, depth: usize) -> Option<P> {
    bounded_search_with(axioms, j, SearchLimits::size(depth))
}

pub fn bounded_search_with<A: Axioms + ?Sized>(
    axioms: &A,
    j: &Judgement,
    limits: SearchLimits,
) -> Option<P> {
    let mut sources: Vec<(P, Formula)> = BUILTIN_AXIOMS
        .iter()
        .map(|n| (axiom(n), builtin_axiom(n).expect("builtin").clone()))
        .collect();
    for (n, f) in axioms.axiom_list() {
        sources.push((axiom(&n), f));
    }
    let mut s = Search {
        scope: Scope::new(axioms.signature(), j.ctx.clone()),
        hyps: j.hyps.clone(),
        consumed: vec![false; j.hyps.len()],
        sources,
        limits,
        metas: 0,
        steps: 0,
    };
    let p = s.prove_min(&j.goal, limits.max_size)?;
    check_proof(axioms, j, &p).ok()?;
    Some(p)
}

#[derive(Clone, Debug)]
enum Step {
    Inst(String, Sort),
    L,
    R,
    Imp(Formula),
}

type Subst = BTreeMap<String, Term>;

fn is_meta(n: &str) -> bool {
    n.starts_with('?')
}

fn has_bound(a: &Arrow) -> bool {
    match a {
        Arrow::Bound(_) | Arrow::Id(Obj::Bound(_)) => true,
        Arrow::Comp(g, f) => has_bound(g) || has_bound(f),
        _ => false,
    }
}

fn match_obj(p: &Obj, t: &Obj, s: &mut Subst) -> bool {
    match p {
        Obj::Var(m) if is_meta(m) => match s.get(m) {
            Some(Term::Obj(o)) => o == t,
            Some(_) => false,
            None => {
                if matches!(t, Obj::Bound(_)) {
                    return false;
                }
                s.insert(m.clone(), Term::Obj(t.clone()));
                true
            }
        },
        _ => p == t,
    }
}

fn match_arrow(p: &Arrow, t: &Arrow, s: &mut Subst) -> bool {
    match (p, t) {
        (Arrow::Var(m), _) if is_meta(m) => match s.get(m) {
            Some(Term::Arr(a)) => a == t,
            Some(_) => false,
            None => {
                if has_bound(t) {
                    return false;
                }
                s.insert(m.clone(), Term::Arr(t.clone()));
                true
            }
        },
        (Arrow::Id(a), Arrow::Id(b)) => match_obj(a, b, s),
        (Arrow::Comp(g, f), Arrow::Comp(g2, f2)) => match_arrow(g, g2, s) && match_arrow(f, f2, s),
        _ => p == t,
    }
}

fn match_sort(p: &Sort, t: &Sort, s: &mut Subst) -> bool {
    match (p, t) {
        (Sort::Obj, Sort::Obj) => true,
        (Sort::Arr(a), Sort::Arr(b)) => match_obj(&a.dom, &b.dom, s) && match_obj(&a.cod, &b.cod, s),
        _ => false,
    }
}

fn match_formula(p: &Formula, t: &Formula, s: &mut Subst) -> bool {
    match (p, t) {
        (Formula::Eq(a, b), Formula::Eq(c, d)) => match_arrow(a, c, s) && match_arrow(b, d, s),
        (Formula::And(a, b), Formula::And(c, d))
        | (Formula::Or(a, b), Formula::Or(c, d))
        | (Formula::Implies(a, b), Formula::Implies(c, d)) => {
            match_formula(a, c, s) && match_formula(b, d, s)
        }
        (Formula::Top, Formula::Top) | (Formula::Bot, Formula::Bot) => true,
        (Formula::Forall(b1, x), Formula::Forall(b2, y)) | (Formula::Exists(b1, x), Formula::Exists(b2, y)) => {
            match_sort(&b1.sort, &b2.sort, s) && match_formula(x, y, s)
        }
        _ => false,
    }
}

fn apply(s: &Subst) -> crate::syntax::Assignment {
    let mut a = crate::syntax::Assignment::new();
    for (k, v) in s {
        a.bind(k, v.clone());
    }
    a
}

fn collect_arrows(phi: &Formula, out: &mut Vec<Arrow>) {
    fn go(a: &Arrow, out: &mut Vec<Arrow>) {
        if has_bound(a) || a.free_metas() {
            if let Arrow::Comp(g, f) = a {
                go(g, out);
                go(f, out);
            }
            return;
        }
        if !out.contains(a) {
            out.push(a.clone());
        }
        if let Arrow::Comp(g, f) = a {
            go(g, out);
            go(f, out);
        }
    }
    match phi {
        Formula::Eq(a, b) => {
            go(a, out);
            go(b, out);
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            collect_arrows(a, out);
            collect_arrows(b, out);
        }
        Formula::Forall(_, b) | Formula::Exists(_, b) => collect_arrows(b, out),
        Formula::Top | Formula::Bot => {}
    }
}

impl Arrow {
    fn free_metas(&self) -> bool {
        match self {
            Arrow::Var(n) => is_meta(n),
            Arrow::Id(Obj::Var(n)) => is_meta(n),
            Arrow::Comp(g, f) => g.free_metas() || f.free_metas(),
            _ => false,
        }
    }
}

struct Search<'a> {
    scope: Scope<'a>,
    hyps: Vec<Formula>,
    consumed: Vec<bool>,
    sources: Vec<(P, Formula)>,
    limits: SearchLimits,
    metas: usize,
    steps: usize,
}

impl<'a> Search<'a> {
    fn exhausted(&self) -> bool {
        self.steps > self.limits.max_steps
    }

    /// Smallest proof of `goal` with at most `budget` nodes.
    fn prove_min(&mut self, goal: &Formula, budget: usize) -> Option<P> {
        (1..=budget).find_map(|b| if self.exhausted() { None } else { self.prove(goal, b, true) })
    }

    fn with_hyp<T>(&mut self, h: Formula, f: impl FnOnce(&mut Self) -> T) -> T {
        self.hyps.push(h);
        self.consumed.push(false);
        let r = f(self);
        self.hyps.pop();
        self.consumed.pop();
        r
    }

    fn with_var<T>(&mut self, name: &str, sort: Sort, f: impl FnOnce(&mut Self) -> T) -> T {
        self.scope.ctx.push(name, sort);
        let r = f(self);
        self.scope.ctx.decls.pop();
        r
    }

    fn fresh(&self, base: &str) -> String {
        let extra: Vec<String> = self.hyps.iter().flat_map(|h| h.free_vars()).collect();
        self.scope.fresh_avoiding(if base.is_empty() { "x" } else { base }, &extra)
    }

    fn objects(&self) -> Vec<Obj> {
        let mut out: Vec<Obj> = self.scope.sig.objects.iter().map(|o| Obj::cst(o)).collect();
        for d in &self.scope.ctx.decls {
            if d.sort == Sort::Obj {
                out.push(Obj::var(&d.name));
            }
        }
        out
    }

    /// Terms of sort `s` worth trying: atoms, identities, and subterms of the
    /// goal and hypotheses.
    fn candidates(&self, s: &ArrowSort, goal: &Formula) -> Vec<Arrow> {
        let mut pool: Vec<Arrow> = Vec::new();
        for n in self.scope.sig.arrows.keys() {
            pool.push(Arrow::cst(n));
        }
        for d in &self.scope.ctx.decls {
            if matches!(d.sort, Sort::Arr(_)) {
                pool.push(Arrow::var(&d.name));
            }
        }
        pool.push(Arrow::id(s.dom.clone()));
        collect_arrows(goal, &mut pool);
        for h in &self.hyps {
            collect_arrows(h, &mut pool);
        }
        let mut out = Vec::new();
        for a in pool {
            if out.len() >= self.limits.max_candidates {
                break;
            }
            if !out.contains(&a) && self.scope.infer(&a).ok().as_ref() == Some(s) {
                out.push(a);
            }
        }
        out
    }

    fn prove(&mut self, goal: &Formula, budget: usize, allow_sym: bool) -> Option<P> {
        if budget == 0 || self.exhausted() {
            return None;
        }
        self.steps += 1;
        if let Some(i) = self.hyps.iter().position(|h| h == goal) {
            return Some(hyp(i));
        }
        match goal {
            Formula::Top => return Some(top()),
            Formula::Eq(a, b) if a == b => return Some(refl(a.clone())),
            Formula::And(a, b) => {
                if budget < 3 {
                    return None;
                }
                let pa = self.prove_min(a, budget - 2)?;
                let pb = self.prove_min(b, budget - 1 - pa.size())?;
                return Some(and_intro(pa, pb));
            }
            Formula::Implies(a, b) => {
                let a = (**a).clone();
                let pb = self.with_hyp(a.clone(), |s| s.prove(b, budget - 1, true))?;
                return Some(imp_intro(a, pb));
            }
            Formula::Forall(bd, body) => {
                let x = self.fresh(&bd.hint.0);
                let opened = body.open_var(bd, &x);
                let p = self.with_var(&x, bd.sort.clone(), |s| s.prove(&opened, budget - 1, true))?;
                return Some(forall_intro(&x, bd.sort.clone(), p));
            }
            _ => {}
        }
        if budget < 2 {
            return self.backchain(goal, budget);
        }
        match goal {
            Formula::Or(a, b) => {
                if let Some(p) = self.prove(a, budget - 1, true) {
                    return Some(or_l(p, (**b).clone()));
                }
                if let Some(p) = self.prove(b, budget - 1, true) {
                    return Some(or_r((**a).clone(), p));
                }
            }
            Formula::Exists(bd, body) => {
                let witnesses: Vec<Term> = match &bd.sort {
                    Sort::Obj => self.objects().into_iter().map(Term::Obj).collect(),
                    Sort::Arr(s) => self.candidates(s, goal).into_iter().map(Term::Arr).collect(),
                };
                for t in witnesses {
                    if let Some(p) = self.prove(&body.open(&t), budget - 1, true) {
                        return Some(exists_intro(goal.clone(), t, p));
                    }
                }
            }
            Formula::Eq(Arrow::Comp(g, f), Arrow::Comp(g2, f2)) if budget >= 3 => {
                let eg = Formula::eq((**g).clone(), (**g2).clone());
                let ef = Formula::eq((**f).clone(), (**f2).clone());
                if self.scope.infer(g).ok() == self.scope.infer(g2).ok() {
                    if let Some(pg) = self.prove_min(&eg, budget - 2) {
                        if let Some(pf) = self.prove_min(&ef, budget - 1 - pg.size()) {
                            return Some(cong(pg, pf));
                        }
                    }
                }
            }
            _ => {}
        }
        if let Some(p) = self.backchain(goal, budget) {
            return Some(p);
        }
        if let Formula::Eq(a, b) = goal {
            if allow_sym {
                let flipped = Formula::eq(b.clone(), a.clone());
                if let Some(p) = self.prove(&flipped, budget - 1, false) {
                    return Some(sym(p));
                }
            }
            if budget >= 3 {
                if let Ok(s) = self.scope.infer(a) {
                    for m in self.candidates(&s, goal) {
                        if &m == a || &m == b {
                            continue;
                        }
                        let first = Formula::eq(a.clone(), m.clone());
                        if let Some(p1) = self.prove_min(&first, budget - 2) {
                            let second = Formula::eq(m, b.clone());
                            if let Some(p2) = self.prove_min(&second, budget - 1 - p1.size()) {
                                return Some(trans(p1, p2));
                            }
                        }
                    }
                }
            }
        }
        self.eliminate_hyps(goal, budget)
    }

    fn eliminate_hyps(&mut self, goal: &Formula, budget: usize) -> Option<P> {
        for i in 0..self.hyps.len() {
            if self.consumed[i] || budget < 3 {
                continue;
            }
            match self.hyps[i].clone() {
                Formula::Or(a, b) => {
                    self.consumed[i] = true;
                    let r = (|| {
                        let pl = self.with_hyp(*a, |s| s.prove_min(goal, budget - 2))?;
                        let pr = self.with_hyp(*b, |s| s.prove_min(goal, budget - 1 - pl.size()))?;
                        Some(or_elim(hyp(i), pl, pr))
                    })();
                    self.consumed[i] = false;
                    if r.is_some() {
                        return r;
                    }
                }
                Formula::Exists(bd, body) => {
                    let x = self.fresh(&bd.hint.0);
                    let opened = body.open_var(&bd, &x);
                    self.consumed[i] = true;
                    let r = self.with_var(&x, bd.sort.clone(), |s| {
                        s.with_hyp(opened, |s| s.prove_min(goal, budget - 1))
                    });
                    self.consumed[i] = false;
                    if let Some(p) = r {
                        return Some(exists_elim(hyp(i), &x, p));
                    }
                }
                _ => {}
            }
        }
        if *goal != Formula::Bot && budget >= 2 {
            if let Some(p) = self.prove(&Formula::Bot, budget - 1, true) {
                return Some(bot_elim(p, goal.clone()));
            }
        }
        None
    }

    fn paths(&mut self, f: &Formula, prefix: Vec<Step>, max: usize, out: &mut Vec<(Vec<Step>, Formula)>) {
        out.push((prefix.clone(), f.clone()));
        if prefix.len() >= max {
            return;
        }
        match f {
            Formula::Forall(b, body) => {
                let m = format!("?{}", self.metas);
                self.metas += 1;
                let t = match b.sort {
                    Sort::Obj => Term::Obj(Obj::var(&m)),
                    Sort::Arr(_) => Term::Arr(Arrow::var(&m)),
                };
                let mut p = prefix;
                p.push(Step::Inst(m, b.sort.clone()));
                self.paths(&body.open(&t), p, max, out);
            }
            Formula::And(a, b) => {
                let mut pl = prefix.clone();
                pl.push(Step::L);
                self.paths(a, pl, max, out);
                let mut pr = prefix;
                pr.push(Step::R);
                self.paths(b, pr, max, out);
            }
            Formula::Implies(a, b) => {
                let mut p = prefix;
                p.push(Step::Imp((**a).clone()));
                self.paths(b, p, max, out);
            }
            _ => {}
        }
    }

    /// Completes a partial instantiation: object metas are read off the
    /// sorts of instantiated arrows, the rest are enumerated.
    fn complete(&self, steps: &[Step], s: Subst, goal: &Formula) -> Vec<Subst> {
        let mut s = s;
        for st in steps {
            if let Step::Inst(m, Sort::Arr(pat)) = st {
                if let Some(Term::Arr(a)) = s.get(m).cloned() {
                    let Ok(actual) = self.scope.infer(&a) else { return vec![] };
                    if !match_sort(&Sort::Arr(pat.clone()), &Sort::Arr(actual), &mut s) {
                        return vec![];
                    }
                }
            }
        }
        let mut partial = vec![s];
        for st in steps {
            let Step::Inst(m, sort) = st else { continue };
            let mut next = Vec::new();
            for s in partial {
                if s.contains_key(m) {
                    next.push(s);
                    continue;
                }
                let choices: Vec<Term> = match sort {
                    Sort::Obj => self.objects().into_iter().map(Term::Obj).collect(),
                    Sort::Arr(pat) => {
                        let sub = apply(&s);
                        let concrete = ArrowSort::new(sub.obj(&pat.dom), sub.obj(&pat.cod));
                        if [&concrete.dom, &concrete.cod].iter().any(|o| matches!(o, Obj::Var(n) if is_meta(n))) {
                            continue;
                        }
                        self.candidates(&concrete, goal).into_iter().map(Term::Arr).collect()
                    }
                };
                for c in choices {
                    let mut s2 = s.clone();
                    s2.insert(m.clone(), c);
                    next.push(s2);
                    if next.len() > self.limits.max_candidates * self.limits.max_candidates {
                        break;
                    }
                }
            }
            partial = next;
        }
        partial
    }

    fn backchain(&mut self, goal: &Formula, budget: usize) -> Option<P> {
        let mut sources: Vec<(P, Formula)> =
            self.hyps.iter().enumerate().map(|(i, h)| (hyp(i), h.clone())).collect();
        sources.extend(self.sources.iter().cloned());
        for (node, f) in sources {
            let mut paths = Vec::new();
            self.paths(&f, Vec::new(), budget.saturating_sub(1), &mut paths);
            for (steps, result) in paths {
                let mut s = Subst::new();
                if !match_formula(&result, goal, &mut s) {
                    continue;
                }
                for full in self.complete(&steps, s, goal) {
                    if let Some(p) = self.instantiate(&node, &steps, &full, budget) {
                        return Some(p);
                    }
                    if self.exhausted() {
                        return None;
                    }
                }
            }
        }
        None
    }

    fn instantiate(&mut self, node: &P, steps: &[Step], s: &Subst, budget: usize) -> Option<P> {
        let sub = apply(s);
        let mut left = budget.checked_sub(1 + steps.len())?;
        let mut p = node.clone();
        for st in steps {
            p = match st {
                Step::Inst(m, _) => forall_elim(p, s.get(m)?.clone()),
                Step::L => and_l(p),
                Step::R => and_r(p),
                Step::Imp(a) => {
                    let sub_goal = sub.formula(a);
                    let q = self.prove_min(&sub_goal, left)?;
                    left -= q.size();
                    imp_elim(p, q)
                }
            };
        }
        Some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::super::PureLogic;
    use super::*;
    use crate::syntax::{parse_formula, Context, Signature};

    #[test]
    fn identity_composite() {
        let l = PureLogic(Signature::new().with_object("A"));
        let goal = parse_formula(&l.0, "id A = comp (id A) (id A)").unwrap();
        let p = bounded_search(&l, &Judgement::closed(goal), 8).expect("found");
        assert_eq!(p.size(), 5);
    }

    #[test]
    fn hypothesis() {
        let l = PureLogic(Signature::new().with_object("A"));
        let phi = parse_formula(&l.0, "exists f : A -> A . f = id A").unwrap();
        let j = Judgement::new(Context::new(), vec![phi.clone()], phi);
        assert_eq!(bounded_search(&l, &j, 1), Some(hyp(0)));
    }

    struct OneAxiom(Signature, Formula);

    impl Axioms for OneAxiom {
        fn signature(&self) -> &Signature {
            &self.0
        }
        fn axiom(&self, name: &str) -> Option<Formula> {
            (name == "ax").then(|| self.1.clone())
        }
        fn axiom_list(&self) -> Vec<(String, Formula)> {
            vec![("ax".into(), self.1.clone())]
        }
    }

    #[test]
    fn axiom_matching_the_goal() {
        let sig = Signature::new().with_object("A").with_arrow("a", "A", "A").with_arrow("b", "A", "A");
        let ax = parse_formula(&sig, "comp a b = b").unwrap();
        let t = OneAxiom(sig, ax.clone());
        assert_eq!(bounded_search(&t, &Judgement::closed(ax), 1), Some(axiom("ax")));
    }

    #[test]
    fn no_proof_of_bot() {
        let l = PureLogic(Signature::new().with_object("A").with_arrow("a", "A", "A"));
        assert_eq!(bounded_search(&l, &Judgement::closed(Formula::Bot), 6), None);
    }

    #[test]
    fn propositional_reasoning() {
        let l = PureLogic(Signature::new().with_object("A").with_arrow("a", "A", "A").with_arrow("b", "A", "A"));
        for text in [
            "a = b => b = a",
            "a = b \\/ b = a => b = a",
            "(exists f : A -> A . f = a) => exists g : A -> A . a = g",
            "a = b => forall h : A -> A . comp h a = comp h b",
            "bot => a = b",
        ] {
            let goal = parse_formula(&l.0, text).unwrap();
            assert!(bounded_search(&l, &Judgement::closed(goal), 9).is_some(), "{text}");
        }
    }
}
