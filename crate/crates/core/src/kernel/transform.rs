//! Structural operations on proofs: hypothesis shifting and term substitution.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::syntax::{fresh_name, Arrow, Assignment, Formula, Obj, Term};

use super::{Proof, P};

impl Proof {
    /// Shifts every hypothesis index `>= from` by `by`, for inserting `by`
    /// hypotheses at position `from`.
    pub fn shift_hyps(self: &Arc<Self>, from: usize, by: usize) -> P {
        if by == 0 {
            return self.clone();
        }
        self.rebuild(&mut |node| match node {
            Proof::Hyp(i) if *i >= from => Some(Arc::new(Proof::Hyp(i + by))),
            _ => None,
        })
    }

    /// Applies `sigma` to every term and formula of the proof. Eigenvariables
    /// in `avoid`, in the domain of `sigma`, or free in its range are renamed.
    pub fn substitute(self: &Arc<Self>, sigma: &Assignment, avoid: &BTreeSet<String>) -> P {
        let mut avoid = avoid.clone();
        for t in sigma.objects.keys().chain(sigma.objects.values()) {
            if let Obj::Var(n) = t {
                avoid.insert(n.clone());
            }
        }
        for (k, v) in &sigma.arrows {
            for a in [k, v] {
                collect_arrow_vars(a, &mut avoid);
            }
        }
        subst(self, sigma, &avoid)
    }

    /// Renames eigenvariables that clash with `avoid`.
    pub fn freshen(self: &Arc<Self>, avoid: &BTreeSet<String>) -> P {
        subst(self, &Assignment::new(), avoid)
    }

    /// Removes reflexivity steps from equational reasoning: `trans` with a
    /// reflexive side, `sym` of `refl` or of `sym`, and congruence of two
    /// reflexivities. The conclusion is unchanged.
    pub fn simplify(self: &Arc<Self>) -> P {
        self.rebuild(&mut |node| {
            let out = match node {
                Proof::EqTrans(a, b) => match (a.simplify(), b.simplify()) {
                    (a, b) if matches!(*a, Proof::EqRefl(_)) => b,
                    (a, b) if matches!(*b, Proof::EqRefl(_)) => a,
                    (a, b) => Arc::new(Proof::EqTrans(a, b)),
                },
                Proof::EqSym(a) => {
                    let a = a.simplify();
                    match &*a {
                        Proof::EqRefl(_) => a,
                        Proof::EqSym(inner) => inner.clone(),
                        _ => Arc::new(Proof::EqSym(a)),
                    }
                }
                Proof::EqCongComp(g, f) => {
                    let (g, f) = (g.simplify(), f.simplify());
                    match (&*g, &*f) {
                        (Proof::EqRefl(x), Proof::EqRefl(y)) => Arc::new(Proof::EqRefl(Arrow::comp(x.clone(), y.clone()))),
                        _ => Arc::new(Proof::EqCongComp(g, f)),
                    }
                }
                _ => return None,
            };
            Some(out)
        })
    }

    /// Bottom-up rebuild; `f` may replace a node outright.
    fn rebuild(self: &Arc<Self>, f: &mut impl FnMut(&Proof) -> Option<P>) -> P {
        if let Some(r) = f(self) {
            return r;
        }
        let mut go = |p: &P| p.rebuild(f);
        let node = match &**self {
            Proof::Hyp(_) | Proof::Axiom(_) | Proof::Imported(_) | Proof::TopIntro | Proof::EqRefl(_) => {
                return self.clone()
            }
            Proof::AndIntro(a, b) => Proof::AndIntro(go(a), go(b)),
            Proof::AndElimL(a) => Proof::AndElimL(go(a)),
            Proof::AndElimR(a) => Proof::AndElimR(go(a)),
            Proof::OrIntroL(a, r) => Proof::OrIntroL(go(a), r.clone()),
            Proof::OrIntroR(l, a) => Proof::OrIntroR(l.clone(), go(a)),
            Proof::OrElim(a, b, c) => Proof::OrElim(go(a), go(b), go(c)),
            Proof::ImpliesIntro(h, a) => Proof::ImpliesIntro(h.clone(), go(a)),
            Proof::ImpliesElim(a, b) => Proof::ImpliesElim(go(a), go(b)),
            Proof::BotElim(a, g) => Proof::BotElim(go(a), g.clone()),
            Proof::ForallIntro(x, s, a) => Proof::ForallIntro(x.clone(), s.clone(), go(a)),
            Proof::ForallElim(a, t) => Proof::ForallElim(go(a), t.clone()),
            Proof::ExistsIntro(phi, t, a) => Proof::ExistsIntro(phi.clone(), t.clone(), go(a)),
            Proof::ExistsElim(a, x, b) => Proof::ExistsElim(go(a), x.clone(), go(b)),
            Proof::EqSym(a) => Proof::EqSym(go(a)),
            Proof::EqTrans(a, b) => Proof::EqTrans(go(a), go(b)),
            Proof::EqCongComp(a, b) => Proof::EqCongComp(go(a), go(b)),
        };
        Arc::new(node)
    }
}

fn collect_arrow_vars(a: &Arrow, out: &mut BTreeSet<String>) {
    match a {
        Arrow::Var(n) => {
            out.insert(n.clone());
        }
        Arrow::Id(Obj::Var(n)) => {
            out.insert(n.clone());
        }
        Arrow::Comp(g, f) => {
            collect_arrow_vars(g, out);
            collect_arrow_vars(f, out);
        }
        _ => {}
    }
}

/// Chooses the eigenvariable name under `sigma` and returns the assignment
/// for the premise.
fn bind_eigen(x: &str, sigma: &Assignment, avoid: &BTreeSet<String>) -> (String, Assignment) {
    let mut inner = sigma.clone();
    inner.objects.remove(&Obj::var(x));
    inner.arrows.remove(&Arrow::var(x));
    if !avoid.contains(x) {
        return (x.to_string(), inner);
    }
    let y = fresh_name(x, |n| avoid.contains(n));
    inner.objects.insert(Obj::var(x), Obj::var(&y));
    inner.arrows.insert(Arrow::var(x), Arrow::var(&y));
    (y, inner)
}

fn subst(p: &P, sigma: &Assignment, avoid: &BTreeSet<String>) -> P {
    if sigma.is_empty() && avoid.is_empty() {
        return p.clone();
    }
    let go = |q: &P| subst(q, sigma, avoid);
    let f = |phi: &Formula| sigma.formula(phi);
    let t = |x: &Term| sigma.term(x);
    let node = match &**p {
        Proof::Hyp(_) | Proof::Axiom(_) | Proof::TopIntro => return p.clone(),
        Proof::Imported(phi) => Proof::Imported(f(phi)),
        Proof::EqRefl(a) => Proof::EqRefl(sigma.arrow(a)),
        Proof::AndIntro(a, b) => Proof::AndIntro(go(a), go(b)),
        Proof::AndElimL(a) => Proof::AndElimL(go(a)),
        Proof::AndElimR(a) => Proof::AndElimR(go(a)),
        Proof::OrIntroL(a, r) => Proof::OrIntroL(go(a), f(r)),
        Proof::OrIntroR(l, a) => Proof::OrIntroR(f(l), go(a)),
        Proof::OrElim(a, b, c) => Proof::OrElim(go(a), go(b), go(c)),
        Proof::ImpliesIntro(h, a) => Proof::ImpliesIntro(f(h), go(a)),
        Proof::ImpliesElim(a, b) => Proof::ImpliesElim(go(a), go(b)),
        Proof::BotElim(a, g) => Proof::BotElim(go(a), f(g)),
        Proof::ForallIntro(x, s, a) => {
            let (y, inner) = bind_eigen(x, sigma, avoid);
            let mut avoid2 = avoid.clone();
            avoid2.insert(y.clone());
            let s2 = match s {
                crate::syntax::Sort::Obj => crate::syntax::Sort::Obj,
                crate::syntax::Sort::Arr(a) => crate::syntax::Sort::Arr(crate::syntax::ArrowSort::new(
                    sigma.obj(&a.dom),
                    sigma.obj(&a.cod),
                )),
            };
            Proof::ForallIntro(y, s2, subst(a, &inner, &avoid2))
        }
        Proof::ForallElim(a, x) => Proof::ForallElim(go(a), t(x)),
        Proof::ExistsIntro(phi, x, a) => Proof::ExistsIntro(f(phi), t(x), go(a)),
        Proof::ExistsElim(a, x, b) => {
            let (y, inner) = bind_eigen(x, sigma, avoid);
            let mut avoid2 = avoid.clone();
            avoid2.insert(y.clone());
            Proof::ExistsElim(go(a), y, subst(b, &inner, &avoid2))
        }
        Proof::EqSym(a) => Proof::EqSym(go(a)),
        Proof::EqTrans(a, b) => Proof::EqTrans(go(a), go(b)),
        Proof::EqCongComp(a, b) => Proof::EqCongComp(go(a), go(b)),
    };
    Arc::new(node)
}

#[cfg(test)]
mod tests {
    use super::super::{check_proof, rules::*, Judgement, PureLogic};
    use super::*;
    use crate::syntax::{parse_context, parse_formula, Signature};

    #[test]
    fn weakening_renames_eigenvariables() {
        let l = PureLogic(Signature::new());
        let goal = parse_formula(&l.0, "forall X . id X = id X").unwrap();
        let p = forall_intro("X", crate::syntax::Sort::Obj, refl(Arrow::id(Obj::var("X"))));
        check_proof(&l, &Judgement::closed(goal.clone()), &p).unwrap();
        let ctx = parse_context(&l.0, "X : Obj").unwrap();
        let avoid: BTreeSet<String> = ["X".to_string()].into();
        let q = p.freshen(&avoid);
        check_proof(&l, &Judgement::new(ctx, vec![], goal), &q).unwrap();
    }

    #[test]
    fn hypothesis_shift() {
        let l = PureLogic(Signature::new());
        let top = Formula::Top;
        let p = imp_intro(top.clone(), hyp(1));
        let j = Judgement::new(Default::default(), vec![top.clone()], Formula::implies(top.clone(), top.clone()));
        check_proof(&l, &j, &p).unwrap();
        let q = p.shift_hyps(1, 2);
        let j2 = Judgement::new(Default::default(), vec![top.clone(), Formula::Bot, Formula::Bot], j.goal.clone());
        check_proof(&l, &j2, &q).unwrap();
    }

    #[test]
    fn simplification_drops_reflexive_steps() {
        let l = PureLogic(Signature::new());
        let ctx = parse_context(&l.0, "A : Obj, f : A -> A, g : A -> A").unwrap();
        let (f, g) = (Arrow::var("f"), Arrow::var("g"));
        let h = Formula::eq(f.clone(), g.clone());
        let messy = trans(
            sym(sym(refl(Arrow::comp(f.clone(), f.clone())))),
            trans(cong(refl(f.clone()), refl(f.clone())), trans(sym(refl(Arrow::comp(f.clone(), f.clone()))), cong(hyp(0), refl(f.clone())))),
        );
        let goal = Formula::eq(Arrow::comp(f.clone(), f.clone()), Arrow::comp(g, f.clone()));
        let j = Judgement::new(ctx, vec![h], goal);
        check_proof(&l, &j, &messy).unwrap();
        let clean = messy.simplify();
        check_proof(&l, &j, &clean).unwrap();
        assert_eq!(clean, cong(hyp(0), refl(f)));
    }
}
