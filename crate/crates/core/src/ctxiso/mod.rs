//! Context renaming, context isomorphisms and uniqueness up to unique
//! isomorphism.

mod transport;

use std::collections::{BTreeMap, BTreeSet};

use crate::syntax::{
    check_formula, Arrow, ArrowSort, Assignment, Context, Formula, Obj, Quant, Signature, Sort, WfError,
};

pub use transport::transport_proof;

/// Copies of `delta` with every variable renamed, together with the
/// renaming as an assignment.
#[derive(Clone, Debug)]
pub struct Renamed {
    pub ctx: Context,
    pub names: BTreeMap<String, String>,
    pub assignment: Assignment,
}

/// Renames the variables of `delta` by appending `tag`, adding primes when
/// a name is in `taken`. Sorts mentioning earlier variables of `delta` are
/// renamed to match; everything else is left alone.
pub fn rename_context_avoiding(delta: &Context, tag: &str, taken: &BTreeSet<String>) -> Renamed {
    let mut names = BTreeMap::new();
    let mut sigma = Assignment::new();
    let mut ctx = Context::new();
    let mut used = taken.clone();
    for d in &delta.decls {
        let mut n = format!("{}{tag}", d.name);
        while used.contains(&n) || delta.contains(&n) {
            n.push('\'');
        }
        used.insert(n.clone());
        let sort = match &d.sort {
            Sort::Obj => Sort::Obj,
            Sort::Arr(s) => Sort::Arr(ArrowSort::new(sigma.obj(&s.dom), sigma.obj(&s.cod))),
        };
        ctx.push(&n, sort.clone());
        match sort {
            Sort::Obj => sigma = sigma.with_obj(&d.name, Obj::var(&n)),
            Sort::Arr(_) => sigma = sigma.with_arrow(&d.name, Arrow::var(&n)),
        }
        names.insert(d.name.clone(), n);
    }
    Renamed { ctx, names, assignment: sigma }
}

/// `Δ_tag`: the variables of `delta` with `tag` appended.
pub fn rename_context(delta: &Context, tag: &str) -> Context {
    rename_context_avoiding(delta, tag, &BTreeSet::new()).ctx
}

/// A context isomorphism `τ : Δ₁ ≅ Δ₂` over an ambient context `Γ`.
#[derive(Clone, Debug)]
pub struct ContextIso {
    pub ambient: Context,
    pub delta: Context,
    pub source: Renamed,
    pub target: Renamed,
    /// One arrow variable `V₁ → V₂` per object variable `V` of `delta`.
    pub components: BTreeMap<String, String>,
}

fn taken_names(sig: &Signature, ctxs: &[&Context]) -> BTreeSet<String> {
    let mut out: BTreeSet<String> = sig.objects.iter().chain(sig.arrows.keys()).cloned().collect();
    for c in ctxs {
        out.extend(c.names().map(str::to_string));
    }
    out
}

impl ContextIso {
    pub fn new(sig: &Signature, gamma: &Context, delta: &Context) -> Self {
        let mut taken = taken_names(sig, &[gamma, delta]);
        let source = rename_context_avoiding(delta, "1", &taken);
        taken.extend(source.ctx.names().map(str::to_string));
        let target = rename_context_avoiding(delta, "2", &taken);
        taken.extend(target.ctx.names().map(str::to_string));
        let mut components = BTreeMap::new();
        for d in &delta.decls {
            if d.sort == Sort::Obj {
                let mut n = format!("f_{}", d.name);
                while taken.contains(&n) {
                    n.push('\'');
                }
                taken.insert(n.clone());
                components.insert(d.name.clone(), n);
            }
        }
        ContextIso { ambient: gamma.clone(), delta: delta.clone(), source, target, components }
    }

    /// Object variables of `delta`, in order.
    pub fn object_vars(&self) -> Vec<&str> {
        self.delta.decls.iter().filter(|d| d.sort == Sort::Obj).map(|d| d.name.as_str()).collect()
    }

    /// The component at `S`, `1_S` for objects outside `delta`.
    pub fn component(&self, s: &Obj, names: &BTreeMap<String, String>) -> Arrow {
        match s {
            Obj::Var(v) if names.contains_key(v) => Arrow::var(&names[v]),
            other => Arrow::id(other.clone()),
        }
    }

    /// Declarations of the components, `f_V : V₁ → V₂`, under `names`.
    pub fn component_ctx(&self, names: &BTreeMap<String, String>) -> Context {
        let mut ctx = Context::new();
        for v in self.object_vars() {
            let s = ArrowSort::new(Obj::var(&self.source.names[v]), Obj::var(&self.target.names[v]));
            ctx.push(&names[v], Sort::Arr(s));
        }
        ctx
    }

    /// `Γ, Δ₁, Δ₂, f_V…`
    pub fn ctx(&self) -> Context {
        self.ambient
            .extend(&self.source.ctx)
            .extend(&self.target.ctx)
            .extend(&self.component_ctx(&self.components))
    }

    /// The conditions making the components an isomorphism: one clause per
    /// declaration of `delta`, in order. An object `V` contributes the
    /// invertibility of its component, an arrow `g : A → B` the square
    /// `g₂ ∘ f_A = f_B ∘ g₁`.
    pub fn clauses(&self, names: &BTreeMap<String, String>) -> Vec<Formula> {
        let mut out = Vec::new();
        for d in &self.delta.decls {
            match &d.sort {
                Sort::Obj => {
                    let v1 = Obj::var(&self.source.names[&d.name]);
                    let v2 = Obj::var(&self.target.names[&d.name]);
                    let f = Arrow::var(&names[&d.name]);
                    let g = Arrow::var("g");
                    let body = Formula::and(
                        Formula::eq(Arrow::comp(g.clone(), f.clone()), Arrow::id(v1.clone())),
                        Formula::eq(Arrow::comp(f, g), Arrow::id(v2.clone())),
                    );
                    out.push(Formula::exists("g", Sort::Arr(ArrowSort::new(v2, v1)), body));
                }
                Sort::Arr(s) => {
                    let g1 = Arrow::var(&self.source.names[&d.name]);
                    let g2 = Arrow::var(&self.target.names[&d.name]);
                    out.push(Formula::eq(
                        Arrow::comp(g2, self.component(&s.dom, names)),
                        Arrow::comp(self.component(&s.cod, names), g1),
                    ));
                }
            }
        }
        out
    }

    pub fn cond(&self) -> Formula {
        Formula::conj(self.clauses(&self.components))
    }
}

/// The context `(Γ, Δ₁, Δ₂, f_V…)` and the formula saying the `f_V` form
/// an isomorphism `Δ₁ ≅ Δ₂`.
pub fn iso_formula(sig: &Signature, gamma: &Context, delta: &Context) -> (Context, Formula) {
    let iso = ContextIso::new(sig, gamma, delta);
    (iso.ctx(), iso.cond())
}

/// `∃!Δ. P` read as existence plus uniqueness up to unique isomorphism:
/// `∃Δ. P ∧ ∀Δ₁ ∀Δ₂. P(Δ₁) ∧ P(Δ₂) ⟹ ∃τ. cond(τ) ∧ ∀τ'. cond(τ') ⟹ τ = τ'`,
/// where `τ = τ'` compares components.
pub fn expand_unique_exists(
    sig: &Signature,
    gamma: &Context,
    delta: &Context,
    p: &Formula,
) -> Result<Formula, WfError> {
    check_formula(sig, &gamma.extend(delta), p)?;
    let iso = ContextIso::new(sig, gamma, delta);
    let mut taken = taken_names(sig, &[&iso.ctx(), delta]);
    taken.extend(p.free_vars());
    let mut primed = BTreeMap::new();
    for (v, n) in &iso.components {
        let mut m = format!("{n}'");
        while taken.contains(&m) {
            m.push('\'');
        }
        taken.insert(m.clone());
        primed.insert(v.clone(), m);
    }
    let same = Formula::conj(
        iso.object_vars()
            .into_iter()
            .map(|v| Formula::eq(Arrow::var(&iso.components[v]), Arrow::var(&primed[v]))),
    );
    let unique = Formula::bind_all(
        Quant::Forall,
        &iso.component_ctx(&primed),
        Formula::implies(Formula::conj(iso.clauses(&primed)), same),
    );
    let exists_tau = Formula::bind_all(
        Quant::Exists,
        &iso.component_ctx(&iso.components),
        Formula::and(iso.cond(), unique),
    );
    let p1 = iso.source.assignment.formula(p);
    let p2 = iso.target.assignment.formula(p);
    let uniqueness = Formula::bind_all(
        Quant::Forall,
        &iso.source.ctx.extend(&iso.target.ctx),
        Formula::implies(Formula::and(p1, p2), exists_tau),
    );
    let existence = Formula::bind_all(Quant::Exists, delta, p.clone());
    Ok(Formula::and(existence, uniqueness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{check_formula, parse_context, parse_formula, print_context, print_formula};

    fn sig() -> Signature {
        Signature::new().with_object("C")
    }

    #[test]
    fn renaming_appends_the_tag() {
        let s = sig();
        let d = parse_context(&s, "A : Obj, f : C -> A").unwrap();
        assert_eq!(print_context(&rename_context(&d, "1")), "A1 : Obj, f1 : C -> A1");
        let d = parse_context(&s, "A : Obj, B : Obj, g : A -> B").unwrap();
        assert_eq!(print_context(&rename_context(&d, "2")), "A2 : Obj, B2 : Obj, g2 : A2 -> B2");
        assert!(rename_context(&Context::new(), "1").is_empty());
    }

    #[test]
    fn iso_conditions() {
        let s = sig();
        let d = parse_context(&s, "A : Obj").unwrap();
        let (ctx, cond) = iso_formula(&s, &Context::new(), &d);
        assert_eq!(print_context(&ctx), "A1 : Obj, A2 : Obj, f_A : A1 -> A2");
        assert_eq!(print_formula(&cond), "exists g : A2 -> A1 . comp g f_A = id A1 /\\ comp f_A g = id A2");

        let d = parse_context(&s, "A : Obj, f : C -> A").unwrap();
        let (ctx, cond) = iso_formula(&s, &Context::new(), &d);
        check_formula(&s, &ctx, &cond).unwrap();
        assert!(print_formula(&cond).ends_with("comp f2 (id C) = comp f_A f1"), "{}", print_formula(&cond));

        let d = parse_context(&s, "A : Obj, B : Obj, g : A -> B").unwrap();
        let (ctx, cond) = iso_formula(&s, &Context::new(), &d);
        check_formula(&s, &ctx, &cond).unwrap();
        assert!(print_formula(&cond).contains("comp g2 f_A = comp f_B g1"));
    }

    #[test]
    fn unique_existence_is_well_formed() {
        let s = Signature::new().with_object("A");
        let d = parse_context(&s, "B : Obj, f : A -> B").unwrap();
        let p = parse_formula(&s, "exists g : B -> A . comp g f = id A /\\ comp f g = id B").unwrap();
        let e = expand_unique_exists(&s, &Context::new(), &d, &p).unwrap();
        check_formula(&s, &Context::new(), &e).unwrap();
        assert!(e.is_closed());

        let top = expand_unique_exists(&s, &Context::new(), &Context::new(), &Formula::Top).unwrap();
        assert_eq!(
            top,
            Formula::and(Formula::Top, Formula::implies(Formula::and(Formula::Top, Formula::Top), Formula::and(Formula::Top, Formula::implies(Formula::Top, Formula::Top))))
        );
    }
}
