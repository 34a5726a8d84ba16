//! Pretty-printer emitting the text grammar accepted by the parser.
//!
//! Binder hints are reused as printed names unless that would change the
//! meaning of the text: a hint is renamed when it coincides with a free name
//! or constant printed inside its body, with the printed name of an outer
//! binder still referenced inside its body, or with a keyword.

use std::collections::BTreeSet;

use super::{Arrow, ArrowSort, Context, Formula, Leaf, Obj, Sort};

const KEYWORDS: &[&str] = &["id", "comp", "forall", "exists", "top", "bot", "Obj"];

fn bound_name(names: &[String], i: usize) -> String {
    if i < names.len() {
        names[names.len() - 1 - i].clone()
    } else {
        format!("#{i}")
    }
}

fn print_obj(o: &Obj, names: &[String]) -> String {
    match o {
        Obj::Const(n) | Obj::Var(n) => n.clone(),
        Obj::Bound(i) => bound_name(names, *i),
    }
}

pub(crate) fn print_arrow_with(a: &Arrow, names: &[String]) -> String {
    match a {
        Arrow::Const(n) | Arrow::Var(n) => n.clone(),
        Arrow::Bound(i) => bound_name(names, *i),
        Arrow::Id(o) => format!("id {}", print_obj(o, names)),
        Arrow::Comp(g, f) => {
            format!("comp {} {}", print_arg(g, names), print_arg(f, names))
        }
    }
}

fn print_arg(a: &Arrow, names: &[String]) -> String {
    match a {
        Arrow::Id(_) | Arrow::Comp(..) => format!("({})", print_arrow_with(a, names)),
        _ => print_arrow_with(a, names),
    }
}

fn print_arrow_sort(s: &ArrowSort, names: &[String]) -> String {
    format!("{} -> {}", print_obj(&s.dom, names), print_obj(&s.cod, names))
}

fn print_sort_with(s: &Sort, names: &[String]) -> String {
    match s {
        Sort::Obj => "Obj".to_string(),
        Sort::Arr(a) => print_arrow_sort(a, names),
    }
}

pub fn print_sort(s: &Sort) -> String {
    print_sort_with(s, &[])
}

pub fn print_context(ctx: &Context) -> String {
    ctx.decls
        .iter()
        .map(|d| format!("{} : {}", d.name, print_sort(&d.sort)))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn print_formula(phi: &Formula) -> String {
    let mut names = Vec::new();
    go(phi, &mut names, 0, true)
}

/// Names that a binder directly around `body` must avoid: free names and
/// constants in `body`, plus printed names of outer binders it references.
fn clashes(body: &Formula, names: &[String]) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    body.visit(&mut |leaf, depth| match leaf {
        Leaf::Obj(Obj::Const(n) | Obj::Var(n)) | Leaf::Arrow(Arrow::Const(n) | Arrow::Var(n)) => {
            out.insert(n.clone());
        }
        Leaf::Obj(Obj::Bound(i)) | Leaf::Arrow(Arrow::Bound(i)) if *i > depth => {
            out.insert(bound_name(names, i - depth - 1));
        }
        _ => {}
    });
    out
}

fn go(phi: &Formula, names: &mut Vec<String>, prec: u8, rightmost: bool) -> String {
    let paren = |s: String, need: bool| if need { format!("({s})") } else { s };
    match phi {
        Formula::Eq(a, b) => {
            format!("{} = {}", print_arrow_with(a, names), print_arrow_with(b, names))
        }
        Formula::Top => "top".to_string(),
        Formula::Bot => "bot".to_string(),
        Formula::Implies(a, b) => {
            let need = prec > 0;
            let l = go(a, names, 1, false);
            let r = go(b, names, 0, need || rightmost);
            paren(format!("{l} => {r}"), need)
        }
        Formula::Or(a, b) => {
            let need = prec > 1;
            let l = go(a, names, 2, false);
            let r = go(b, names, 1, need || rightmost);
            paren(format!("{l} \\/ {r}"), need)
        }
        Formula::And(a, b) => {
            let need = prec > 2;
            let l = go(a, names, 3, false);
            let r = go(b, names, 2, need || rightmost);
            paren(format!("{l} /\\ {r}"), need)
        }
        Formula::Forall(b, body) | Formula::Exists(b, body) => {
            let kw = if matches!(phi, Formula::Forall(..)) { "forall" } else { "exists" };
            let sort = match &b.sort {
                Sort::Obj => String::new(),
                s => format!(" : {}", print_sort_with(s, names)),
            };
            let avoid = clashes(body, names);
            let base = if b.hint.0.is_empty() {
                if matches!(b.sort, Sort::Obj) { "X" } else { "f" }
            } else {
                b.hint.0.as_str()
            };
            let taken = |n: &str| avoid.contains(n) || KEYWORDS.contains(&n);
            let name = if taken(base) { super::fresh_name(base, taken) } else { base.to_string() };
            names.push(name.clone());
            let inner = go(body, names, 0, true);
            names.pop();
            paren(format!("{kw} {name}{sort} . {inner}"), !rightmost)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_formula, Binder, Signature};
    use super::*;

    fn roundtrip(s: &str) {
        let sig = Signature::new().with_object("A").with_arrow("c", "A", "A");
        let f = parse_formula(&sig, s).unwrap();
        let printed = print_formula(&f);
        assert_eq!(printed, s);
        assert_eq!(parse_formula(&sig, &printed).unwrap(), f);
    }

    #[test]
    fn prints_canonical_text() {
        roundtrip("forall X . forall f : X -> X . forall X . f = id X");
        roundtrip("forall A . forall B . forall f : A -> B . f = comp (id B) f");
        roundtrip("(forall X . id X = id X) /\\ top");
        roundtrip("top /\\ (exists g : A -> A . g = c) \\/ bot");
        roundtrip("(top => bot) => top \\/ bot /\\ top");
        roundtrip("c = comp c (comp c (id A))");
    }

    #[test]
    fn capturing_hint_is_renamed() {
        // ∀ with hint "x" over a body that mentions the free variable x.
        let body = Formula::Eq(Arrow::Bound(0), Arrow::var("x"));
        let sort = Sort::Arr(ArrowSort::new(Obj::var("A"), Obj::var("A")));
        let f = Formula::Forall(Binder::new("x", sort), Box::new(body));
        assert_eq!(print_formula(&f), "forall x1 : A -> A . x1 = x");
    }

    #[test]
    fn keyword_hint_is_renamed() {
        let f = Formula::Forall(Binder::obj("id"), Box::new(Formula::Eq(Arrow::Id(Obj::Bound(0)), Arrow::Id(Obj::Bound(0)))));
        assert_eq!(print_formula(&f), "forall id1 . id id1 = id id1");
    }
}
