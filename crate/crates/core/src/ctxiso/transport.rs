//! Proofs that truth is invariant under context isomorphism.
//!
//! For `P` in context `Γ, Δ` the generated proof shows
//! `∀Δ₁ ∀Δ₂ ∀τ. cond(τ) ⟹ (P(Δ₁) ⟺ P(Δ₂))` by induction on `P`, proving
//! both directions at once since implication flips them. Each object of
//! the current context carries an isomorphism `τ` with inverse `σ`, and
//! each arrow variable carries its naturality square
//! `g₂ ∘ τ_A = τ_B ∘ g₁`. Objects outside `Δ`, including those bound
//! inside `P`, carry identities.

use std::collections::{BTreeMap, BTreeSet};

use crate::kernel::rules::*;
use crate::kernel::{Eqn, Judgement, P};
use crate::syntax::{
    check_context, check_formula, Arrow, ArrowSort, Assignment, Context, Formula, Obj, Quant, Scope,
    Signature, Sort, Term, WfError,
};

use super::ContextIso;

#[derive(Clone, Debug)]
struct ObjIso {
    from: Obj,
    to: Obj,
    tau: Arrow,
    sigma: Arrow,
    /// `σ ∘ τ = 1_from`
    inv_from: P,
    /// `τ ∘ σ = 1_to`
    inv_to: P,
}

#[derive(Clone, Debug)]
struct ArrIso {
    from: Arrow,
    to: Arrow,
    /// `to ∘ τ_dom = τ_cod ∘ from`
    square: P,
}

fn chain(steps: impl IntoIterator<Item = P>) -> P {
    steps.into_iter().reduce(trans).expect("nonempty chain")
}

#[derive(Clone)]
struct Transport<'s> {
    sig: &'s Signature,
    /// `Γ, Δ` and the variables bound so far, under their base names.
    base: Context,
    /// The kernel's context at the current node.
    kctx: Context,
    objs: BTreeMap<String, ObjIso>,
    arrs: BTreeMap<String, ArrIso>,
    taken: BTreeSet<String>,
}

impl<'s> Transport<'s> {
    fn eqn(&self) -> Eqn<'s> {
        Eqn::new(self.sig, self.kctx.clone())
    }
    fn assoc(&self, h: &Arrow, g: &Arrow, f: &Arrow) -> P {
        self.eqn().assoc(h, g, f).expect("well-sorted composite")
    }
    fn id_left(&self, f: &Arrow) -> P {
        self.eqn().id_left(f).expect("well-sorted arrow")
    }
    fn id_right(&self, f: &Arrow) -> P {
        self.eqn().id_right(f).expect("well-sorted arrow")
    }

    fn fresh(&mut self, hint: &str) -> String {
        let n = crate::syntax::fresh_name(hint, |n| self.taken.contains(n));
        self.taken.insert(n.clone());
        n
    }

    fn obj(&self, o: &Obj) -> ObjIso {
        if let Obj::Var(v) = o {
            if let Some(i) = self.objs.get(v) {
                return i.clone();
            }
        }
        let id = Arrow::id(o.clone());
        let inv = self.id_left(&id);
        ObjIso { from: o.clone(), to: o.clone(), tau: id.clone(), sigma: id, inv_from: inv.clone(), inv_to: inv }
    }

    fn side(&self, to: bool) -> Assignment {
        let mut s = Assignment::new();
        for (v, i) in &self.objs {
            s = s.with_obj(v, if to { i.to.clone() } else { i.from.clone() });
        }
        for (v, i) in &self.arrs {
            s = s.with_arrow(v, if to { i.to.clone() } else { i.from.clone() });
        }
        s
    }

    fn base_sort(&self, t: &Arrow) -> ArrowSort {
        Scope::new(self.sig, self.base.clone()).infer(t).expect("well-sorted base term")
    }

    /// `to(t) ∘ τ_X = τ_Y ∘ from(t)` for `t : X → Y`.
    fn natural(&self, t: &Arrow) -> P {
        match t {
            Arrow::Var(x) if self.arrs.contains_key(x) => self.arrs[x].square.clone(),
            Arrow::Id(x) => {
                let tau = self.obj(x).tau;
                trans(self.id_left(&tau), sym(self.id_right(&tau)))
            }
            Arrow::Comp(g, f) => {
                let ArrowSort { dom: x, cod: y } = self.base_sort(f);
                let z = self.base_sort(g).cod;
                let (to, from) = (self.side(true), self.side(false));
                let (g_to, f_to) = (to.arrow(g), to.arrow(f));
                let (g_from, f_from) = (from.arrow(g), from.arrow(f));
                let (tx, ty, tz) = (self.obj(&x).tau, self.obj(&y).tau, self.obj(&z).tau);
                chain([
                    sym(self.assoc(&g_to, &f_to, &tx)),
                    cong(refl(g_to.clone()), self.natural(f)),
                    self.assoc(&g_to, &ty, &f_from),
                    cong(self.natural(g), refl(f_from.clone())),
                    sym(self.assoc(&tz, &g_from, &f_from)),
                ])
            }
            atom => trans(self.id_right(atom), sym(self.id_left(atom))),
        }
    }

    /// From `h : from(s) = from(t)` proves `to(s) = to(t)`.
    fn atomic(&self, s: &Arrow, t: &Arrow, h: P) -> P {
        let ArrowSort { dom: x, cod: y } = self.base_sort(s);
        let (ox, oy) = (self.obj(&x), self.obj(&y));
        let to = self.side(true);
        let (s_to, t_to) = (to.arrow(s), to.arrow(t));
        let (tx, sx, ty) = (ox.tau.clone(), ox.sigma.clone(), oy.tau);
        chain([
            sym(self.id_right(&s_to)),
            cong(refl(s_to.clone()), sym(ox.inv_to.clone())),
            self.assoc(&s_to, &tx, &sx),
            cong(self.natural(s), refl(sx.clone())),
            cong(cong(refl(ty), h), refl(sx.clone())),
            cong(sym(self.natural(t)), refl(sx.clone())),
            sym(self.assoc(&t_to, &tx, &sx)),
            cong(refl(t_to.clone()), ox.inv_to),
            self.id_right(&t_to),
        ])
    }

    /// The same isomorphism read backwards.
    fn inverse(&self) -> Transport<'s> {
        let mut inv = self.clone();
        for i in inv.objs.values_mut() {
            std::mem::swap(&mut i.from, &mut i.to);
            std::mem::swap(&mut i.tau, &mut i.sigma);
            std::mem::swap(&mut i.inv_from, &mut i.inv_to);
        }
        for (name, i) in inv.arrs.iter_mut() {
            let s = self.base_sort(&Arrow::var(name));
            let (oa, ob) = (self.obj(&s.dom), self.obj(&s.cod));
            if i.from == i.to && oa.from == oa.to && ob.from == ob.to {
                continue;
            }
            let (g_from, g_to) = (i.from.clone(), i.to.clone());
            let (sa, sb) = (oa.sigma.clone(), ob.sigma.clone());
            let ta = oa.tau.clone();
            let square = chain([
                cong(sym(self.id_left(&g_from)), refl(sa.clone())),
                cong(cong(sym(ob.inv_from.clone()), refl(g_from.clone())), refl(sa.clone())),
                cong(sym(self.assoc(&sb, &ob.tau, &g_from)), refl(sa.clone())),
                cong(cong(refl(sb.clone()), sym(i.square.clone())), refl(sa.clone())),
                sym(self.assoc(&sb, &Arrow::comp(g_to.clone(), ta.clone()), &sa)),
                cong(refl(sb.clone()), sym(self.assoc(&g_to, &ta, &sa))),
                cong(refl(sb.clone()), cong(refl(g_to.clone()), oa.inv_to.clone())),
                cong(refl(sb), self.id_right(&g_to)),
            ]);
            *i = ArrIso { from: g_to, to: g_from, square };
        }
        inv
    }

    /// A proof of `from(φ) ⟹ to(φ)` with `n` hypotheses in scope.
    fn prove(&self, phi: &Formula, n: usize) -> P {
        let (from, to) = (self.side(false), self.side(true));
        let (a, b) = (from.formula(phi), to.formula(phi));
        if a == b {
            return imp_intro(a, hyp(n));
        }
        let body = match phi {
            Formula::Eq(s, t) => self.atomic(s, t, hyp(n)),
            Formula::And(x, y) => and_intro(
                imp_elim(self.prove(x, n + 1), and_l(hyp(n))),
                imp_elim(self.prove(y, n + 1), and_r(hyp(n))),
            ),
            Formula::Or(x, y) => or_elim(
                hyp(n),
                or_l(imp_elim(self.prove(x, n + 2), hyp(n + 1)), to.formula(y)),
                or_r(to.formula(x), imp_elim(self.prove(y, n + 2), hyp(n + 1))),
            ),
            Formula::Implies(x, y) => imp_intro(
                to.formula(x),
                imp_elim(
                    self.prove(y, n + 2),
                    imp_elim(hyp(n), imp_elim(self.inverse().prove(x, n + 2), hyp(n + 1))),
                ),
            ),
            Formula::Forall(bd, body) => self.quantifier(Quant::Forall, bd.hint.0.as_str(), &bd.sort, body, &b, n),
            Formula::Exists(bd, body) => self.quantifier(Quant::Exists, bd.hint.0.as_str(), &bd.sort, body, &b, n),
            Formula::Top | Formula::Bot => unreachable!("closed atoms are unchanged"),
        };
        imp_intro(a, body)
    }

    /// The body of `prove` for a quantifier; hypothesis `n` is `from(φ)`.
    fn quantifier(&self, q: Quant, hint: &str, sort: &Sort, body: &Formula, target: &Formula, n: usize) -> P {
        let mut ext = self.clone();
        let x = ext.fresh(hint);
        let binder = crate::syntax::Binder::new(&x, sort.clone());
        let opened = body.open_var(&binder, &x);
        ext.base.push(&x, sort.clone());
        match sort {
            Sort::Obj => {
                ext.kctx.push(&x, Sort::Obj);
                let v = Term::Obj(Obj::var(&x));
                match q {
                    Quant::Forall => forall_intro(
                        &x,
                        Sort::Obj,
                        imp_elim(ext.prove(&opened, n + 1), forall_elim(hyp(n), v)),
                    ),
                    Quant::Exists => exists_elim(
                        hyp(n),
                        &x,
                        exists_intro(target.clone(), v, imp_elim(ext.prove(&opened, n + 2), hyp(n + 1))),
                    ),
                }
            }
            Sort::Arr(s) => {
                let (oa, ob) = (self.obj(&s.dom), self.obj(&s.cod));
                let shared = oa.from == oa.to && ob.from == ob.to;
                let var = Arrow::var(&x);
                let (eigen_sort, iso) = match (q.clone(), shared) {
                    (_, true) => {
                        ext.kctx.push(&x, Sort::Arr(ArrowSort::new(oa.from.clone(), ob.from.clone())));
                        let square = trans(ext.id_right(&var), sym(ext.id_left(&var)));
                        (ArrowSort::new(oa.from.clone(), ob.from.clone()), ArrIso { from: var.clone(), to: var.clone(), square })
                    }
                    (Quant::Forall, false) => {
                        let srt = ArrowSort::new(oa.to.clone(), ob.to.clone());
                        ext.kctx.push(&x, Sort::Arr(srt.clone()));
                        let inner = Arrow::comp(var.clone(), oa.tau.clone());
                        let from = Arrow::comp(ob.sigma.clone(), inner.clone());
                        let back = chain([
                            ext.assoc(&ob.tau, &ob.sigma, &inner),
                            cong(ob.inv_to.clone(), refl(inner.clone())),
                            ext.id_left(&inner),
                        ]);
                        (srt, ArrIso { from, to: var.clone(), square: sym(back) })
                    }
                    (Quant::Exists, false) => {
                        let srt = ArrowSort::new(oa.from.clone(), ob.from.clone());
                        ext.kctx.push(&x, Sort::Arr(srt.clone()));
                        let inner = Arrow::comp(var.clone(), oa.sigma.clone());
                        let to = Arrow::comp(ob.tau.clone(), inner.clone());
                        let square = chain([
                            sym(ext.assoc(&ob.tau, &inner, &oa.tau)),
                            cong(refl(ob.tau.clone()), sym(ext.assoc(&var, &oa.sigma, &oa.tau))),
                            cong(refl(ob.tau.clone()), cong(refl(var.clone()), oa.inv_from.clone())),
                            cong(refl(ob.tau.clone()), ext.id_right(&var)),
                        ]);
                        (srt, ArrIso { from: var.clone(), to, square })
                    }
                };
                let (from_term, to_term) = (iso.from.clone(), iso.to.clone());
                ext.arrs.insert(x.clone(), iso);
                match q {
                    Quant::Forall => forall_intro(
                        &x,
                        Sort::Arr(eigen_sort),
                        imp_elim(ext.prove(&opened, n + 1), forall_elim(hyp(n), Term::Arr(from_term))),
                    ),
                    Quant::Exists => exists_elim(
                        hyp(n),
                        &x,
                        exists_intro(
                            target.clone(),
                            Term::Arr(to_term),
                            imp_elim(ext.prove(&opened, n + 2), hyp(n + 1)),
                        ),
                    ),
                }
            }
        }
    }
}

/// Proof of `i`-th conjunct of a right-nested conjunction of `len` parts.
fn project(p: P, i: usize, len: usize) -> P {
    let mut q = p;
    for _ in 0..i {
        q = and_r(q);
    }
    if i + 1 < len {
        and_l(q)
    } else {
        q
    }
}

/// A kernel proof, in context `Γ`, of
/// `∀Δ₁ ∀Δ₂ ∀τ. cond(τ) ⟹ (P(Δ₁) ⟺ P(Δ₂))`, returned with its judgement.
pub fn transport_proof(
    sig: &Signature,
    gamma: &Context,
    delta: &Context,
    p: &Formula,
) -> Result<(Judgement, P), WfError> {
    let full = gamma.extend(delta);
    check_context(sig, &full)?;
    check_formula(sig, &full, p)?;
    let iso = ContextIso::new(sig, gamma, delta);
    let binders = iso.source.ctx.extend(&iso.target.ctx).extend(&iso.component_ctx(&iso.components));
    let cond = iso.cond();
    let p1 = iso.source.assignment.formula(p);
    let p2 = iso.target.assignment.formula(p);
    let goal = Formula::bind_all(Quant::Forall, &binders, Formula::implies(cond.clone(), Formula::iff(p1, p2)));

    let mut t = Transport {
        sig,
        base: full.clone(),
        kctx: iso.ctx(),
        objs: BTreeMap::new(),
        arrs: BTreeMap::new(),
        taken: BTreeSet::new(),
    };
    t.taken.extend(sig.objects.iter().cloned());
    t.taken.extend(sig.arrows.keys().cloned());
    t.taken.extend(full.names().map(str::to_string));
    t.taken.extend(iso.ctx().names().map(str::to_string));
    t.taken.extend(p.free_vars());

    let clauses = iso.clauses(&iso.components);
    let len = clauses.len();
    let mut elims = Vec::new();
    let mut n = 1;
    for (i, d) in iso.delta.decls.iter().enumerate() {
        match &d.sort {
            Sort::Obj => {
                let s = t.fresh(&format!("{}_inv", iso.components[&d.name]));
                let v1 = Obj::var(&iso.source.names[&d.name]);
                let v2 = Obj::var(&iso.target.names[&d.name]);
                t.kctx.push(&s, Sort::Arr(ArrowSort::new(v2.clone(), v1.clone())));
                t.objs.insert(
                    d.name.clone(),
                    ObjIso {
                        from: v1,
                        to: v2,
                        tau: Arrow::var(&iso.components[&d.name]),
                        sigma: Arrow::var(&s),
                        inv_from: and_l(hyp(n)),
                        inv_to: and_r(hyp(n)),
                    },
                );
                elims.push((project(hyp(0), i, len), s));
                n += 1;
            }
            Sort::Arr(_) => {
                t.arrs.insert(
                    d.name.clone(),
                    ArrIso {
                        from: Arrow::var(&iso.source.names[&d.name]),
                        to: Arrow::var(&iso.target.names[&d.name]),
                        square: project(hyp(0), i, len),
                    },
                );
            }
        }
    }
    let mut proof = and_intro(t.prove(p, n), t.inverse().prove(p, n));
    for (major, s) in elims.into_iter().rev() {
        proof = exists_elim(major, &s, proof);
    }
    proof = imp_intro(cond, proof);
    for d in binders.decls.iter().rev() {
        proof = forall_intro(&d.name, d.sort.clone(), proof);
    }
    Ok((Judgement::new(gamma.clone(), vec![], goal), proof))
}
