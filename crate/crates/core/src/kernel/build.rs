//! Proof builders: equational reasoning helpers and the substitution property.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::syntax::{Arrow, ArrowSort, Context, Formula, Obj, Scope, Signature, Sort, Term, WfError};

use super::rules::*;
use super::P;

/// Equational proof construction in a fixed signature and context.
#[derive(Clone, Debug)]
pub struct Eqn<'a> {
    pub scope: Scope<'a>,
}

/// Which argument of a composite to descend into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Outer,
    Inner,
}

impl<'a> Eqn<'a> {
    pub fn new(sig: &'a Signature, ctx: Context) -> Self {
        Eqn { scope: Scope::new(sig, ctx) }
    }

    pub fn sort(&self, a: &Arrow) -> Result<ArrowSort, WfError> {
        self.scope.infer(a)
    }

    /// `h ∘ (g ∘ f) = (h ∘ g) ∘ f`
    pub fn assoc(&self, h: &Arrow, g: &Arrow, f: &Arrow) -> Result<P, WfError> {
        let sf = self.sort(f)?;
        let sg = self.sort(g)?;
        let sh = self.sort(h)?;
        let objs = [sf.dom, sf.cod, sg.cod, sh.cod].map(Term::Obj);
        let arrs = [f, g, h].map(|a| Term::Arr(a.clone()));
        Ok(forall_elims(axiom("cat_assoc"), objs.into_iter().chain(arrs)))
    }

    fn id_axiom(&self, f: &Arrow) -> Result<P, WfError> {
        let s = self.sort(f)?;
        Ok(forall_elims(axiom("cat_id"), [Term::Obj(s.dom), Term::Obj(s.cod), Term::Arr(f.clone())]))
    }

    /// `1_B ∘ f = f` for `f : A -> B`
    pub fn id_left(&self, f: &Arrow) -> Result<P, WfError> {
        Ok(sym(and_l(self.id_axiom(f)?)))
    }

    /// `f ∘ 1_A = f` for `f : A -> B`
    pub fn id_right(&self, f: &Arrow) -> Result<P, WfError> {
        Ok(sym(and_r(self.id_axiom(f)?)))
    }
}

/// Given `eq : s = s2` where `s` sits at `path` inside `t`, proves `t = t2`
/// and returns `t2`.
pub fn rewrite_at(t: &Arrow, path: &[Side], eq: P, s2: &Arrow) -> (P, Arrow) {
    let Some((first, rest)) = path.split_first() else {
        return (eq, s2.clone());
    };
    let Arrow::Comp(g, f) = t else {
        panic!("rewrite path does not match term structure")
    };
    match first {
        Side::Outer => {
            let (pg, g2) = rewrite_at(g, rest, eq, s2);
            (cong(pg, refl((**f).clone())), Arrow::comp(g2, (**f).clone()))
        }
        Side::Inner => {
            let (pf, f2) = rewrite_at(f, rest, eq, s2);
            (cong(refl((**g).clone()), pf), Arrow::comp((**g).clone(), f2))
        }
    }
}

/// A chain `lhs = t1 = t2 = ...` assembled with transitivity.
#[derive(Clone, Debug)]
pub struct Calc {
    pub lhs: Arrow,
    pub rhs: Arrow,
    proof: Option<P>,
}

impl Calc {
    pub fn new(start: Arrow) -> Self {
        Calc { lhs: start.clone(), rhs: start, proof: None }
    }

    /// Extends the chain with `step : rhs = next`.
    pub fn then(mut self, step: P, next: Arrow) -> Self {
        self.proof = Some(match self.proof {
            None => step,
            Some(p) => trans(p, step),
        });
        self.rhs = next;
        self
    }

    pub fn finish(self) -> P {
        self.proof.unwrap_or_else(|| refl(self.lhs))
    }
}

/// Proves `t[a/x] = t[b/x]` from `eq : a = b`.
pub fn congruence(t: &Arrow, x: &str, eq: &P) -> P {
    if !t.mentions_var(x) {
        return refl(t.clone());
    }
    match t {
        Arrow::Var(n) if n == x => eq.clone(),
        Arrow::Comp(g, f) => cong(congruence(g, x, eq), congruence(f, x, eq)),
        _ => refl(t.clone()),
    }
}

fn plug(phi: &Formula, x: &str, t: &Arrow) -> Formula {
    let mut s = crate::syntax::Assignment::new();
    s.arrows.insert(Arrow::var(x), t.clone());
    s.formula(phi)
}

/// Proves `phi[a/x] ⟹ phi[b/x]` from `eq : a = b`. `base` is the number of
/// hypotheses in scope where the proof is used; `avoid` lists names that
/// eigenvariables must not take.
pub fn transport(
    phi: &Formula,
    x: &str,
    a: &Arrow,
    b: &Arrow,
    eq: &P,
    base: usize,
    avoid: &BTreeSet<String>,
) -> P {
    let pa = plug(phi, x, a);
    let pb = plug(phi, x, b);
    let n = base;
    let body: P = match phi {
        Formula::Eq(s, t) => {
            let cs = congruence(s, x, eq);
            let ct = congruence(t, x, eq);
            trans(sym(cs), trans(hyp(n), ct))
        }
        Formula::Top => top(),
        Formula::Bot => hyp(n),
        Formula::And(l, r) => {
            let tl = transport(l, x, a, b, eq, n + 1, avoid);
            let tr = transport(r, x, a, b, eq, n + 1, avoid);
            and_intro(imp_elim(tl, and_l(hyp(n))), imp_elim(tr, and_r(hyp(n))))
        }
        Formula::Or(l, r) => {
            let tl = transport(l, x, a, b, eq, n + 2, avoid);
            let tr = transport(r, x, a, b, eq, n + 2, avoid);
            or_elim(
                hyp(n),
                or_l(imp_elim(tl, hyp(n + 1)), plug(r, x, b)),
                or_r(plug(l, x, b), imp_elim(tr, hyp(n + 1))),
            )
        }
        Formula::Implies(l, r) => {
            let back = sym(eq.clone());
            let tl = transport(l, x, b, a, &back, n + 2, avoid);
            let tr = transport(r, x, a, b, eq, n + 2, avoid);
            imp_intro(plug(l, x, b), imp_elim(tr, imp_elim(hyp(n), imp_elim(tl, hyp(n + 1)))))
        }
        Formula::Forall(binder, inner) | Formula::Exists(binder, inner) => {
            let y = crate::syntax::fresh_name(&binder.hint.0, |c| {
                c == x || avoid.contains(c) || phi.mentions(c) || a.mentions_var(c) || b.mentions_var(c)
            });
            let mut avoid2 = avoid.clone();
            avoid2.insert(y.clone());
            let opened = inner.open_var(binder, &y);
            let yt = match binder.sort {
                Sort::Obj => Term::Obj(Obj::var(&y)),
                Sort::Arr(_) => Term::Arr(Arrow::var(&y)),
            };
            if matches!(phi, Formula::Forall(..)) {
                let t = transport(&opened, x, a, b, eq, n + 1, &avoid2);
                forall_intro(&y, binder.sort.clone(), imp_elim(t, forall_elim(hyp(n), yt)))
            } else {
                let t = transport(&opened, x, a, b, eq, n + 2, &avoid2);
                exists_elim(hyp(n), &y, exists_intro(pb.clone(), yt, imp_elim(t, hyp(n + 1))))
            }
        }
    };
    imp_intro(pa, body)
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SubstError {
    #[error("terms of different sorts: `{0}` and `{1}`")]
    SortMismatch(String, String),
    #[error(transparent)]
    IllFormed(#[from] WfError),
}

/// Proves `f = g ⟹ phi[f/x] ⟹ phi[g/x]` in `ctx`, where `phi` is well
/// formed in `ctx` extended with the arrow variable `x` of the sort of `f`.
pub fn derive_substitution(
    sig: &Signature,
    ctx: &Context,
    phi: &Formula,
    x: &str,
    f: &Arrow,
    g: &Arrow,
) -> Result<P, SubstError> {
    let scope = Scope::new(sig, ctx.clone());
    let sf = scope.infer(f)?;
    let sg = scope.infer(g)?;
    if sf != sg {
        return Err(SubstError::SortMismatch(f.to_string(), g.to_string()));
    }
    let ext = ctx.clone().with(x, Sort::Arr(sf));
    Scope::new(sig, ext).check_sorts(phi)?;
    let mut avoid: BTreeSet<String> = ctx.names().map(str::to_string).collect();
    avoid.extend(sig.objects.iter().cloned());
    avoid.extend(sig.arrows.keys().cloned());
    let t = transport(phi, x, f, g, &hyp(0), 1, &avoid);
    Ok(imp_intro(Formula::eq(f.clone(), g.clone()), t))
}

#[cfg(test)]
mod tests {
    use super::super::{check_proof, Judgement, PureLogic};
    use super::*;
    use crate::syntax::{parse_context, parse_formula};

    fn check_subst(ctx: &str, phi: &str, x: &str, f: &str, g: &str) {
        let sig = Signature::new();
        let ctx = parse_context(&sig, ctx).unwrap();
        let phi = parse_formula(&sig, phi).unwrap();
        let (f, g) = (Arrow::var(f), Arrow::var(g));
        let p = derive_substitution(&sig, &ctx, &phi, x, &f, &g).unwrap();
        let goal = Formula::implies(
            Formula::eq(f.clone(), g.clone()),
            Formula::implies(plug(&phi, x, &f), plug(&phi, x, &g)),
        );
        check_proof(&PureLogic(sig), &Judgement::new(ctx, vec![], goal), &p).unwrap();
    }

    #[test]
    fn atomic_case() {
        check_subst("A : Obj, B : Obj, h : A -> B, f : A -> B, g : A -> B", "x = h", "x", "f", "g");
    }

    #[test]
    fn existential_case() {
        check_subst(
            "A : Obj, B : Obj, f : A -> B, g : A -> B",
            "exists k : A -> B . k = x /\\ top",
            "x",
            "f",
            "g",
        );
    }

    #[test]
    fn top_case() {
        let sig = Signature::new();
        let ctx = parse_context(&sig, "A : Obj, f : A -> A, g : A -> A").unwrap();
        let p = derive_substitution(&sig, &ctx, &Formula::Top, "x", &Arrow::var("f"), &Arrow::var("g")).unwrap();
        assert_eq!(p, imp_intro(Formula::eq(Arrow::var("f"), Arrow::var("g")), imp_intro(Formula::Top, top())));
    }

    #[test]
    fn compound_case() {
        check_subst(
            "A : Obj, f : A -> A, g : A -> A, h : A -> A",
            "(forall k : A -> A . comp x k = comp k x) \\/ (x = h => bot) /\\ (exists Y . forall m : Y -> A . comp x m = m)",
            "x",
            "f",
            "g",
        );
    }

    #[test]
    fn sort_mismatch() {
        let sig = Signature::new();
        let ctx = parse_context(&sig, "A : Obj, B : Obj, f : A -> B, g : A -> A").unwrap();
        let r = derive_substitution(&sig, &ctx, &Formula::Top, "x", &Arrow::var("f"), &Arrow::var("g"));
        assert!(matches!(r, Err(SubstError::SortMismatch(..))));
    }

    #[test]
    fn equational_helpers() {
        let sig = Signature::new();
        let ctx = parse_context(&sig, "A : Obj, B : Obj, C : Obj, D : Obj, f : A -> B, g : B -> C, h : C -> D").unwrap();
        let e = Eqn::new(&sig, ctx.clone());
        let (f, g, h) = (Arrow::var("f"), Arrow::var("g"), Arrow::var("h"));
        let l = PureLogic(sig.clone());
        let goal = Formula::eq(
            Arrow::comp(h.clone(), Arrow::comp(g.clone(), f.clone())),
            Arrow::comp(Arrow::comp(h.clone(), g.clone()), f.clone()),
        );
        check_proof(&l, &Judgement::new(ctx.clone(), vec![], goal), &e.assoc(&h, &g, &f).unwrap()).unwrap();
        let goal = Formula::eq(Arrow::comp(Arrow::id(Obj::var("B")), f.clone()), f.clone());
        check_proof(&l, &Judgement::new(ctx.clone(), vec![], goal), &e.id_left(&f).unwrap()).unwrap();
        // rewrite inside h ∘ (g ∘ f) using 1_B ∘ f = f backwards
        let t = Arrow::comp(h.clone(), Arrow::comp(g.clone(), f.clone()));
        let (p, t2) = rewrite_at(&t, &[Side::Inner, Side::Inner], sym(e.id_left(&f).unwrap()), &Arrow::comp(Arrow::id(Obj::var("B")), f.clone()));
        check_proof(&l, &Judgement::new(ctx, vec![], Formula::eq(t, t2)), &p).unwrap();
    }
}
