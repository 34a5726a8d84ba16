//! The almost-category of terms in a context.

use std::collections::{BTreeMap, BTreeSet};

use crate::syntax::{check_context, substitute, Arrow, Assignment, Context, Formula, Obj, Scope, Sort, WfError};

use super::Theory;

/// Object and arrow terms over a signature in a context. Composition and
/// identities are the term constructors, so `1_A` and `1_A ∘ 1_A` are
/// different arrows.
#[derive(Clone, Debug)]
pub struct TermCategory {
    pub signature: crate::syntax::Signature,
    pub ctx: Context,
}

/// Orders terms length-lexicographically on their printed form.
fn printed_order(a: &Arrow, b: &Arrow) -> std::cmp::Ordering {
    let (x, y) = (a.to_string(), b.to_string());
    x.len().cmp(&y.len()).then(x.cmp(&y))
}

impl TermCategory {
    pub fn objects(&self) -> Vec<Obj> {
        let mut out: Vec<Obj> = self.signature.objects.iter().map(|o| Obj::cst(o)).collect();
        out.extend(self.ctx.decls.iter().filter(|d| d.sort == Sort::Obj).map(|d| Obj::var(&d.name)));
        out
    }

    fn atoms(&self) -> Vec<(Arrow, Obj, Obj)> {
        let mut out: Vec<(Arrow, Obj, Obj)> =
            self.signature.arrows.iter().map(|(n, s)| (Arrow::cst(n), s.dom.clone(), s.cod.clone())).collect();
        for d in &self.ctx.decls {
            if let Sort::Arr(s) = &d.sort {
                out.push((Arrow::var(&d.name), s.dom.clone(), s.cod.clone()));
            }
        }
        out
    }

    /// Every arrow term of composition depth at most `depth`, grouped by
    /// hom and listed length-lexicographically on printed form.
    pub fn arrows(&self, depth: usize) -> BTreeMap<(Obj, Obj), Vec<Arrow>> {
        let mut homs: BTreeMap<(Obj, Obj), BTreeSet<Arrow>> = BTreeMap::new();
        for o in self.objects() {
            homs.entry((o.clone(), o.clone())).or_default().insert(Arrow::id(o));
        }
        for (a, d, c) in self.atoms() {
            homs.entry((d, c)).or_default().insert(a);
        }
        for _ in 0..depth {
            let mut next = homs.clone();
            for ((x, y), fs) in &homs {
                for ((y2, z), gs) in &homs {
                    if y2 != y {
                        continue;
                    }
                    let out = next.entry((x.clone(), z.clone())).or_default();
                    for f in fs {
                        for g in gs {
                            out.insert(Arrow::comp(g.clone(), f.clone()));
                        }
                    }
                }
            }
            homs = next;
        }
        homs.into_iter()
            .map(|(k, set)| {
                let mut v: Vec<Arrow> = set.into_iter().collect();
                v.sort_by(printed_order);
                (k, v)
            })
            .collect()
    }

    /// Arrow terms `dom → cod` of depth at most `depth`.
    pub fn hom(&self, dom: &Obj, cod: &Obj, depth: usize) -> Vec<Arrow> {
        self.arrows(depth).remove(&(dom.clone(), cod.clone())).unwrap_or_default()
    }
}

/// The term category of `theory` in `ctx`.
pub fn term_category(theory: &Theory, ctx: &Context) -> Result<TermCategory, WfError> {
    check_context(&theory.signature, ctx)?;
    Ok(TermCategory { signature: theory.signature.clone(), ctx: ctx.clone() })
}

/// Applies an assignment to a formula. Every free variable must be bound;
/// constants outside the assignment's domain are left unchanged.
pub fn apply_assignment(sigma: &Assignment, phi: &Formula) -> Result<Formula, WfError> {
    substitute(phi, sigma)
}

/// Whether `sigma` sends every variable of `from` to a term of the matching
/// sort in the target scope.
pub fn is_sort_correct(sigma: &Assignment, from: &Context, target: &Scope<'_>) -> bool {
    from.decls.iter().all(|d| {
        let image = match &d.sort {
            Sort::Obj => crate::syntax::Term::Obj(sigma.obj(&Obj::var(&d.name))),
            Sort::Arr(_) => crate::syntax::Term::Arr(sigma.arrow(&Arrow::var(&d.name))),
        };
        match (target.infer_term(&image), &d.sort) {
            (Ok(Sort::Obj), Sort::Obj) => true,
            (Ok(Sort::Arr(got)), Sort::Arr(want)) => {
                got.dom == sigma.obj(&want.dom) && got.cod == sigma.obj(&want.cod)
            }
            _ => false,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_context, Signature};

    #[test]
    fn identity_composites_are_distinct_terms() {
        let tc = TermCategory { signature: Signature::new(), ctx: parse_context(&Signature::new(), "A : Obj").unwrap() };
        let hom = tc.hom(&Obj::var("A"), &Obj::var("A"), 2);
        let id = Arrow::id(Obj::var("A"));
        assert!(hom.contains(&id));
        assert!(hom.contains(&Arrow::comp(id.clone(), id.clone())));
        assert_eq!(hom[0], id);
    }

    #[test]
    fn empty_theory_has_nothing() {
        let tc = TermCategory { signature: Signature::new(), ctx: Context::new() };
        assert!(tc.objects().is_empty());
        assert!(tc.arrows(3).is_empty());
    }

    #[test]
    fn single_arrow_at_depth_one() {
        let sig = Signature::new().with_object("A").with_object("B").with_arrow("f", "A", "B");
        let tc = TermCategory { signature: sig, ctx: Context::new() };
        let hom = tc.hom(&Obj::cst("A"), &Obj::cst("B"), 1);
        let f = Arrow::cst("f");
        let expected = vec![
            f.clone(),
            Arrow::comp(Arrow::id(Obj::cst("B")), f.clone()),
            Arrow::comp(f, Arrow::id(Obj::cst("A"))),
        ];
        assert_eq!(hom, expected);
    }
}
