//! Well-formedness of contexts, sort inference for terms, and formula checking.

use super::{
    fresh_name, print_sort, Arrow, ArrowSort, Context, Formula, Leaf, Obj, Signature, Sort, Term,
    WfError,
};

/// A signature together with a context of free variables.
#[derive(Clone, Debug)]
pub struct Scope<'a> {
    pub sig: &'a Signature,
    pub ctx: Context,
}

impl<'a> Scope<'a> {
    pub fn new(sig: &'a Signature, ctx: Context) -> Self {
        Scope { sig, ctx }
    }

    pub fn empty(sig: &'a Signature) -> Self {
        Scope { sig, ctx: Context::new() }
    }

    /// A variable name unused by the signature and the context.
    pub fn fresh(&self, base: &str) -> String {
        fresh_name(base, |n| self.sig.has_constant(n) || self.ctx.contains(n))
    }

    /// A fresh name that additionally avoids `extra`.
    pub fn fresh_avoiding(&self, base: &str, extra: &[String]) -> String {
        fresh_name(base, |n| {
            self.sig.has_constant(n) || self.ctx.contains(n) || extra.iter().any(|e| e == n)
        })
    }

    pub fn check_obj(&self, o: &Obj) -> Result<(), WfError> {
        match o {
            Obj::Const(n) if self.sig.objects.contains(n) => Ok(()),
            Obj::Const(n) if self.sig.arrows.contains_key(n) => {
                Err(WfError::KindMismatch(n.clone()))
            }
            Obj::Const(n) => Err(WfError::UnboundName(n.clone())),
            Obj::Var(n) => match self.ctx.lookup(n) {
                Some(Sort::Obj) => Ok(()),
                Some(Sort::Arr(_)) => Err(WfError::KindMismatch(n.clone())),
                None => Err(WfError::UnboundName(n.clone())),
            },
            Obj::Bound(i) => Err(WfError::DanglingIndex(*i)),
        }
    }

    pub fn check_sort(&self, s: &Sort) -> Result<(), WfError> {
        match s {
            Sort::Obj => Ok(()),
            Sort::Arr(a) => {
                self.check_obj(&a.dom)?;
                self.check_obj(&a.cod)
            }
        }
    }

    pub fn infer(&self, a: &Arrow) -> Result<ArrowSort, WfError> {
        match a {
            Arrow::Const(n) => match self.sig.arrows.get(n) {
                Some(s) => Ok(s.clone()),
                None if self.sig.objects.contains(n) => Err(WfError::KindMismatch(n.clone())),
                None => Err(WfError::UnboundName(n.clone())),
            },
            Arrow::Var(n) => match self.ctx.lookup(n) {
                Some(Sort::Arr(s)) => Ok(s.clone()),
                Some(Sort::Obj) => Err(WfError::KindMismatch(n.clone())),
                None => Err(WfError::UnboundName(n.clone())),
            },
            Arrow::Bound(i) => Err(WfError::DanglingIndex(*i)),
            Arrow::Id(o) => {
                self.check_obj(o)?;
                Ok(ArrowSort::new(o.clone(), o.clone()))
            }
            Arrow::Comp(g, f) => {
                let sf = self.infer(f)?;
                let sg = self.infer(g)?;
                if sf.cod != sg.dom {
                    return Err(WfError::EndpointMismatch {
                        cod: sf.cod.to_string(),
                        dom: sg.dom.to_string(),
                    });
                }
                Ok(ArrowSort::new(sf.dom, sg.cod))
            }
        }
    }

    pub fn infer_term(&self, t: &Term) -> Result<Sort, WfError> {
        match t {
            Term::Obj(o) => self.check_obj(o).map(|_| Sort::Obj),
            Term::Arr(a) => self.infer(a).map(Sort::Arr),
        }
    }

    /// Sort-checks `phi` structurally. Binders are opened with fresh names.
    pub fn check_sorts(&self, phi: &Formula) -> Result<(), WfError> {
        let mut scope = self.clone();
        let avoid = phi.free_vars();
        scope.check_sorts_in(phi, &avoid)
    }

    fn check_sorts_in(&mut self, phi: &Formula, avoid: &[String]) -> Result<(), WfError> {
        match phi {
            Formula::Eq(a, b) => {
                let sa = self.infer(a)?;
                let sb = self.infer(b)?;
                if sa != sb {
                    return Err(WfError::SortMismatchInEq {
                        lhs: print_sort(&Sort::Arr(sa)),
                        rhs: print_sort(&Sort::Arr(sb)),
                    });
                }
                Ok(())
            }
            Formula::Top | Formula::Bot => Ok(()),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                self.check_sorts_in(a, avoid)?;
                self.check_sorts_in(b, avoid)
            }
            Formula::Forall(b, body) | Formula::Exists(b, body) => {
                self.check_sort(&b.sort)?;
                let name = self.fresh_avoiding(&b.hint.0, avoid);
                let opened = body.open_var(b, &name);
                self.ctx.push(&name, b.sort.clone());
                let r = self.check_sorts_in(&opened, avoid);
                self.ctx.decls.pop();
                r
            }
        }
    }

    /// Full check: the quantifier restriction on printed names, then sorts.
    pub fn check(&self, phi: &Formula) -> Result<(), WfError> {
        check_restriction(&self.ctx, phi)?;
        self.check_sorts(phi)
    }
}

/// Printed endpoint names of an arrow variable, where they are variables.
type Endpoints = Vec<String>;

fn endpoint_names(s: &ArrowSort, stack: &[(String, Option<Endpoints>)]) -> Endpoints {
    [&s.dom, &s.cod]
        .into_iter()
        .filter_map(|o| match o {
            Obj::Var(n) => Some(n.clone()),
            Obj::Bound(i) if *i < stack.len() => Some(stack[stack.len() - 1 - i].0.clone()),
            _ => None,
        })
        .collect()
}

/// Rejects `∀X φ` / `∃X φ` where an arrow variable free in `φ` has a sort
/// mentioning a variable printed as `X`.
fn check_restriction(ctx: &Context, phi: &Formula) -> Result<(), WfError> {
    fn go(
        ctx: &Context,
        phi: &Formula,
        stack: &mut Vec<(String, Option<Endpoints>)>,
    ) -> Result<(), WfError> {
        match phi {
            Formula::Eq(..) | Formula::Top | Formula::Bot => Ok(()),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                go(ctx, a, stack)?;
                go(ctx, b, stack)
            }
            Formula::Forall(b, body) | Formula::Exists(b, body) => {
                let name = b.hint.0.clone();
                if matches!(b.sort, Sort::Obj) {
                    let mut offender = None;
                    body.visit(&mut |leaf, depth| {
                        if offender.is_some() {
                            return;
                        }
                        let (arrow, ends) = match leaf {
                            Leaf::Arrow(Arrow::Var(n)) => match ctx.lookup(n) {
                                Some(Sort::Arr(s)) => (n.clone(), endpoint_names(s, &[])),
                                _ => return,
                            },
                            Leaf::Arrow(Arrow::Bound(i)) if *i > depth => {
                                let k = i - depth - 1;
                                if k >= stack.len() {
                                    return;
                                }
                                let (n, ends) = &stack[stack.len() - 1 - k];
                                match ends {
                                    Some(e) => (n.clone(), e.clone()),
                                    None => return,
                                }
                            }
                            _ => return,
                        };
                        if ends.contains(&name) {
                            offender = Some(arrow);
                        }
                    });
                    if let Some(arrow) = offender {
                        return Err(WfError::IllFormedQuantifier { bound: name, arrow });
                    }
                }
                let ends = b.sort.as_arrow().map(|s| endpoint_names(s, stack));
                stack.push((name, ends));
                let r = go(ctx, body, stack);
                stack.pop();
                r
            }
        }
    }
    go(ctx, phi, &mut Vec::new())
}

pub fn check_context(sig: &Signature, ctx: &Context) -> Result<(), WfError> {
    let mut seen = Scope::empty(sig);
    for d in &ctx.decls {
        if seen.ctx.contains(&d.name) {
            return Err(WfError::DuplicateVariable(d.name.clone()));
        }
        if sig.has_constant(&d.name) {
            return Err(WfError::ShadowsConstant(d.name.clone()));
        }
        if let Sort::Arr(s) = &d.sort {
            for o in [&s.dom, &s.cod] {
                if let Err(e) = seen.check_obj(o) {
                    return Err(match e {
                        WfError::UnboundName(missing) => WfError::UndeclaredSortDependency {
                            var: d.name.clone(),
                            missing,
                        },
                        other => other,
                    });
                }
            }
        }
        seen.ctx.push(&d.name, d.sort.clone());
    }
    Ok(())
}

pub fn check_sort(sig: &Signature, ctx: &Context, s: &Sort) -> Result<(), WfError> {
    Scope::new(sig, ctx.clone()).check_sort(s)
}

pub fn infer_arrow(sig: &Signature, ctx: &Context, a: &Arrow) -> Result<ArrowSort, WfError> {
    Scope::new(sig, ctx.clone()).infer(a)
}

pub fn infer_sort(sig: &Signature, ctx: &Context, t: &Term) -> Result<Sort, WfError> {
    Scope::new(sig, ctx.clone()).infer_term(t)
}

pub fn check_formula(sig: &Signature, ctx: &Context, phi: &Formula) -> Result<(), WfError> {
    Scope::new(sig, ctx.clone()).check(phi)
}

#[cfg(test)]
mod tests {
    use super::super::{parse_context, parse_formula};
    use super::*;

    fn ctx(s: &str) -> Context {
        parse_context(&Signature::new(), s).unwrap()
    }

    #[test]
    fn context_examples() {
        let sig = Signature::new();
        assert_eq!(check_context(&sig, &ctx("A : Obj, f : A -> A")), Ok(()));
        assert_eq!(
            check_context(&sig, &ctx("f : A -> A, A : Obj")),
            Err(WfError::UndeclaredSortDependency { var: "f".into(), missing: "A".into() })
        );
        assert_eq!(
            check_context(&sig, &ctx("A : Obj, A : Obj")),
            Err(WfError::DuplicateVariable("A".into()))
        );
    }

    #[test]
    fn inference_examples() {
        let sig = Signature::new();
        let c = ctx("A : Obj, B : Obj, f : A -> B, g : B -> A");
        let a = Obj::var("A");
        assert_eq!(
            infer_arrow(&sig, &ctx("A : Obj"), &Arrow::id(a.clone())),
            Ok(ArrowSort::new(a.clone(), a.clone()))
        );
        let gf = Arrow::comp(Arrow::var("g"), Arrow::var("f"));
        assert_eq!(infer_arrow(&sig, &c, &gf), Ok(ArrowSort::new(a.clone(), a)));
        let ff = Arrow::comp(Arrow::var("f"), Arrow::var("f"));
        assert_eq!(
            infer_arrow(&sig, &c, &ff),
            Err(WfError::EndpointMismatch { cod: "B".into(), dom: "A".into() })
        );
    }

    #[test]
    fn formula_examples() {
        let sig = Signature::new();
        let bad = parse_formula(&sig, "forall X . forall f : X -> X . forall X . f = id X").unwrap();
        assert_eq!(
            check_formula(&sig, &Context::new(), &bad),
            Err(WfError::IllFormedQuantifier { bound: "X".into(), arrow: "f".into() })
        );
        let good =
            parse_formula(&sig, "forall A . forall B . forall f : A -> B . f = comp (id B) f")
                .unwrap();
        assert_eq!(check_formula(&sig, &Context::new(), &good), Ok(()));
        let c = ctx("A : Obj, B : Obj, f : A -> B, g : A -> A");
        let mismatch = parse_formula(&sig, "f = g").unwrap();
        assert!(matches!(
            check_formula(&sig, &c, &mismatch),
            Err(WfError::SortMismatchInEq { .. })
        ));
    }

    #[test]
    fn free_variable_capture_in_context() {
        let sig = Signature::new();
        let c = ctx("X : Obj, f : X -> X");
        let phi = parse_formula(&sig, "forall X . f = f").unwrap();
        assert_eq!(
            check_formula(&sig, &c, &phi),
            Err(WfError::IllFormedQuantifier { bound: "X".into(), arrow: "f".into() })
        );
        let ok = parse_formula(&sig, "forall Y . f = f").unwrap();
        assert_eq!(check_formula(&sig, &c, &ok), Ok(()));
    }
}
