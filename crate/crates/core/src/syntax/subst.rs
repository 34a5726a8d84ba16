//! Simultaneous substitution of terms for free variables and constants.
//!
//! Replacement terms are locally closed, so no binder can capture them.

use std::collections::BTreeMap;

use super::{Arrow, Formula, LeafMap, Obj, Term, WfError};

/// A finite map from atoms (variables or constants) to terms of the same kind.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    pub objects: BTreeMap<Obj, Obj>,
    pub arrows: BTreeMap<Arrow, Arrow>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn with_obj(mut self, var: &str, to: Obj) -> Self {
        self.objects.insert(Obj::var(var), to);
        self
    }

    pub fn with_arrow(mut self, var: &str, to: Arrow) -> Self {
        self.arrows.insert(Arrow::var(var), to);
        self
    }

    /// Binds the variable `var` to `to`.
    pub fn bind(&mut self, var: &str, to: Term) {
        match to {
            Term::Obj(o) => {
                self.objects.insert(Obj::var(var), o);
            }
            Term::Arr(a) => {
                self.arrows.insert(Arrow::var(var), a);
            }
        }
    }

    /// Binds an atom, variable or constant, to a term of the same kind.
    pub fn bind_atom(&mut self, atom: Term, to: Term) {
        match (atom, to) {
            (Term::Obj(a), Term::Obj(o)) => {
                self.objects.insert(a, o);
            }
            (Term::Arr(a), Term::Arr(t)) => {
                self.arrows.insert(a, t);
            }
            _ => panic!("assignment binds an atom to a term of another kind"),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty() && self.arrows.is_empty()
    }

    pub fn binds_var(&self, name: &str) -> bool {
        self.objects.contains_key(&Obj::var(name)) || self.arrows.contains_key(&Arrow::var(name))
    }

    pub fn obj(&self, o: &Obj) -> Obj {
        o.rewrite(0, &mut Apply(self))
    }

    pub fn arrow(&self, a: &Arrow) -> Arrow {
        a.rewrite(0, &mut Apply(self))
    }

    pub fn term(&self, t: &Term) -> Term {
        t.rewrite(0, &mut Apply(self))
    }

    /// Homomorphic image of `phi`; unmapped atoms are left alone.
    pub fn formula(&self, phi: &Formula) -> Formula {
        phi.rewrite(0, &mut Apply(self))
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &Assignment) -> Assignment {
        let mut out = Assignment::new();
        for (k, v) in &self.objects {
            out.objects.insert(k.clone(), other.obj(v));
        }
        for (k, v) in &self.arrows {
            out.arrows.insert(k.clone(), other.arrow(v));
        }
        for (k, v) in &other.objects {
            out.objects.entry(k.clone()).or_insert_with(|| v.clone());
        }
        for (k, v) in &other.arrows {
            out.arrows.entry(k.clone()).or_insert_with(|| v.clone());
        }
        out
    }
}

struct Apply<'a>(&'a Assignment);

impl LeafMap for Apply<'_> {
    fn obj(&mut self, o: &Obj, _: usize) -> Option<Obj> {
        self.0.objects.get(o).cloned()
    }
    fn arrow(&mut self, a: &Arrow, _: usize) -> Option<Arrow> {
        self.0.arrows.get(a).cloned()
    }
}

/// Substitutes along `sigma`, which must cover every free variable of `phi`.
pub fn substitute(phi: &Formula, sigma: &Assignment) -> Result<Formula, WfError> {
    if let Some(v) = phi.free_vars().into_iter().find(|v| !sigma.binds_var(v)) {
        return Err(WfError::MissingBinding(v));
    }
    Ok(sigma.formula(phi))
}

#[cfg(test)]
mod tests {
    use super::super::{parse_formula, print_formula, Signature};
    use super::*;

    fn sig() -> Signature {
        Signature::new().with_object("A").with_arrow("c", "A", "A")
    }

    #[test]
    fn substitution_examples() {
        let s = sig();
        let phi = parse_formula(&s, "f = id X").unwrap();
        let sigma = Assignment::new().with_obj("X", Obj::cst("A")).with_arrow("f", Arrow::id(Obj::cst("A")));
        assert_eq!(substitute(&phi, &sigma).unwrap(), parse_formula(&s, "id A = id A").unwrap());

        let phi = parse_formula(&s, "exists g : X -> X . g = f").unwrap();
        let sigma = Assignment::new().with_obj("X", Obj::cst("A")).with_arrow("f", Arrow::cst("c"));
        assert_eq!(
            substitute(&phi, &sigma).unwrap(),
            parse_formula(&s, "exists g : A -> A . g = c").unwrap()
        );
    }

    #[test]
    fn bound_name_is_renamed_on_print() {
        let s = Signature::new();
        let phi = parse_formula(&s, "forall Y . forall h : Y -> X . h = h").unwrap();
        let sigma = Assignment::new().with_obj("X", Obj::var("Y"));
        let out = substitute(&phi, &sigma).unwrap();
        assert_eq!(print_formula(&out), "forall Y1 . forall h : Y1 -> Y . h = h");
    }

    #[test]
    fn missing_binding() {
        let phi = parse_formula(&Signature::new(), "f = g").unwrap();
        let sigma = Assignment::new().with_arrow("f", Arrow::var("g"));
        assert_eq!(substitute(&phi, &sigma), Err(WfError::MissingBinding("g".into())));
    }
}
