//! Built-in equality and category axioms, as closed formulas.

use std::sync::OnceLock;

use crate::syntax::{Arrow, ArrowSort, Formula, Obj, Sort};

pub const BUILTIN_AXIOMS: &[&str] = &[
    "eq_refl",
    "eq_sym",
    "eq_trans",
    "comp_cong_left",
    "comp_cong_right",
    "cat_assoc",
    "cat_id",
];

fn o(n: &str) -> Obj {
    Obj::var(n)
}

fn v(n: &str) -> Arrow {
    Arrow::var(n)
}

fn hom(a: &str, b: &str) -> Sort {
    Sort::Arr(ArrowSort::new(o(a), o(b)))
}

fn objs(names: &[&str], body: Formula) -> Formula {
    names.iter().rev().fold(body, |acc, n| Formula::forall(n, Sort::Obj, acc))
}

fn arrows(decls: &[(&str, &str, &str)], body: Formula) -> Formula {
    decls
        .iter()
        .rev()
        .fold(body, |acc, (n, a, b)| Formula::forall(n, hom(a, b), acc))
}

fn build(name: &str) -> Formula {
    let c = Arrow::comp;
    let eq = Formula::eq;
    let imp = Formula::implies;
    match name {
        "eq_refl" => objs(&["A", "B"], arrows(&[("f", "A", "B")], eq(v("f"), v("f")))),
        "eq_sym" => objs(
            &["A", "B"],
            arrows(&[("f", "A", "B"), ("g", "A", "B")], imp(eq(v("f"), v("g")), eq(v("g"), v("f")))),
        ),
        "eq_trans" => objs(
            &["A", "B"],
            arrows(
                &[("f", "A", "B"), ("g", "A", "B"), ("h", "A", "B")],
                imp(eq(v("f"), v("g")), imp(eq(v("g"), v("h")), eq(v("f"), v("h")))),
            ),
        ),
        "comp_cong_left" => objs(
            &["A", "B", "C"],
            arrows(
                &[("f", "A", "B"), ("g", "B", "C"), ("h", "B", "C")],
                imp(eq(v("g"), v("h")), eq(c(v("g"), v("f")), c(v("h"), v("f")))),
            ),
        ),
        "comp_cong_right" => objs(
            &["A", "B", "C"],
            arrows(
                &[("f", "A", "B"), ("g", "A", "B"), ("h", "B", "C")],
                imp(eq(v("f"), v("g")), eq(c(v("h"), v("f")), c(v("h"), v("g")))),
            ),
        ),
        "cat_assoc" => objs(
            &["A", "B", "C", "D"],
            arrows(
                &[("f", "A", "B"), ("g", "B", "C"), ("h", "C", "D")],
                eq(c(v("h"), c(v("g"), v("f"))), c(c(v("h"), v("g")), v("f"))),
            ),
        ),
        "cat_id" => objs(
            &["A", "B"],
            arrows(
                &[("f", "A", "B")],
                Formula::and(
                    eq(v("f"), c(Arrow::id(o("B")), v("f"))),
                    eq(v("f"), c(v("f"), Arrow::id(o("A")))),
                ),
            ),
        ),
        _ => unreachable!("not a built-in axiom"),
    }
}

fn table() -> &'static Vec<(String, Formula)> {
    static TABLE: OnceLock<Vec<(String, Formula)>> = OnceLock::new();
    TABLE.get_or_init(|| BUILTIN_AXIOMS.iter().map(|n| (n.to_string(), build(n))).collect())
}

/// The universal closures of reflexivity, symmetry, transitivity, congruence
/// of composition, associativity and the identity laws, with their names.
pub fn equality_axioms() -> Vec<(String, Formula)> {
    table().clone()
}

pub fn builtin_axiom(name: &str) -> Option<&'static Formula> {
    table().iter().find(|(n, _)| n == name).map(|(_, f)| f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{check_formula, parse_formula, Context, Signature};

    #[test]
    fn axioms_are_closed_and_well_formed() {
        let sig = Signature::new();
        for (name, phi) in equality_axioms() {
            assert!(phi.is_closed(), "{name}");
            check_formula(&sig, &Context::new(), &phi).unwrap();
        }
    }

    #[test]
    fn expected_axioms_present() {
        let s = Signature::new();
        let all: Vec<Formula> = equality_axioms().into_iter().map(|(_, f)| f).collect();
        for text in [
            "forall A . forall B . forall f : A -> B . forall g : A -> B . forall h : A -> B . f = g => g = h => f = h",
            "forall A . forall B . forall C . forall D . forall f : A -> B . forall g : B -> C . forall h : C -> D . comp h (comp g f) = comp (comp h g) f",
            "forall A . forall B . forall f : A -> B . f = comp (id B) f /\\ f = comp f (id A)",
        ] {
            let phi = parse_formula(&s, text).unwrap();
            assert!(all.contains(&phi), "{text}");
        }
    }
}
