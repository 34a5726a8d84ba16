//! Fixture loading and reference evaluators written independently of the
//! library's slash evaluator.

use std::path::PathBuf;
use std::sync::Arc;

use catslash::freyd::FiniteCategory;
use catslash::kernel::{parse_certificate, P};
use catslash::slash::{fp_eval, CompTable, Model};
use catslash::syntax::{Arrow, Formula, Obj, Sort, Term};
use catslash::theoria::{parse_theory, term_complete_extension, CongruenceOracle, Extension, Theory};

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

pub fn read_fixture(rel: &str) -> String {
    std::fs::read_to_string(fixture(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn theory(rel: &str) -> Arc<Theory> {
    let file = parse_theory(&read_fixture(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"));
    Arc::new(file.into_theory(Arc::new(CongruenceOracle::default())).unwrap())
}

pub fn completed(rel: &str) -> Extension {
    term_complete_extension(theory(rel), 256).unwrap()
}

pub fn term_model(t: &Arc<Theory>) -> Model {
    Model::discrete(t.clone(), CompTable::from_oracle(t))
}

/// The goal certificates of the demo corpus, in file order.
pub fn demo_goals(t: &Theory) -> Vec<(String, Formula, P)> {
    let dir = fixture("demo/goals");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "proof"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let cert = parse_certificate(&t.signature, &text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, cert.goal.expect("goal line"), cert.proof)
        })
        .collect()
}

/// Reads a closed arrow term as a constant by walking the composition table.
fn value(m: &Model, a: &Arrow) -> Option<String> {
    match a {
        Arrow::Const(c) => Some(c.clone()),
        Arrow::Id(Obj::Const(o)) => m.table.ids.get(o).cloned(),
        Arrow::Comp(g, f) => {
            let key = (value(m, g)?, value(m, f)?);
            m.table.comps.get(&key).cloned()
        }
        _ => None,
    }
}

/// Every closed term of a sort: all object constants, or every arrow
/// constant of the hom.
pub fn instances(m: &Model, sort: &Sort) -> Vec<(String, Term)> {
    let sig = &m.theory.signature;
    match sort {
        Sort::Obj => sig.objects.iter().map(|o| (o.clone(), Term::Obj(Obj::cst(o)))).collect(),
        Sort::Arr(s) => sig
            .arrows
            .iter()
            .filter(|(_, srt)| *srt == s)
            .map(|(c, _)| (c.clone(), Term::Arr(Arrow::cst(c))))
            .collect(),
    }
}

/// Truth of a closed formula in the model, with quantifiers over all
/// constants and no appeal to provability.
pub fn model_truth(m: &Model, phi: &Formula) -> bool {
    match phi {
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Eq(l, r) => {
            let (l, r) = (value(m, l).expect("closed term"), value(m, r).expect("closed term"));
            m.same(&l, &r)
        }
        Formula::And(a, b) => model_truth(m, a) && model_truth(m, b),
        Formula::Or(a, b) => model_truth(m, a) || model_truth(m, b),
        Formula::Implies(a, b) => !model_truth(m, a) || model_truth(m, b),
        Formula::Exists(bd, body) => instances(m, &bd.sort).iter().any(|(_, t)| model_truth(m, &body.open(t))),
        Formula::Forall(bd, body) => instances(m, &bd.sort).iter().all(|(_, t)| model_truth(m, &body.open(t))),
    }
}

/// Strips leading existentials, returning the bound sorts and the body.
pub fn existential_prefix(phi: &Formula) -> (Vec<Sort>, Formula) {
    let mut sorts = Vec::new();
    let mut cur = phi.clone();
    while let Formula::Exists(bd, body) = cur {
        sorts.push(bd.sort.clone());
        cur = *body;
    }
    (sorts, cur)
}

/// Every assignment of constants to the leading existentials of `phi`
/// whose instantiated body has a true slash.
pub fn brute_force_witnesses(t: &Theory, m: &Model, phi: &Formula, n: usize) -> Vec<Vec<String>> {
    if n == 0 {
        return if fp_eval(t, m, phi).unwrap().verdict { vec![Vec::new()] } else { Vec::new() };
    }
    let Formula::Exists(bd, body) = phi else { unreachable!("existential prefix") };
    let mut out = Vec::new();
    for (name, term) in instances(m, &bd.sort) {
        for mut rest in brute_force_witnesses(t, m, &body.open(&term), n - 1) {
            rest.insert(0, name.clone());
            out.push(rest);
        }
    }
    out
}

/// Opens the leading existentials of `phi` at the given constants.
pub fn instantiate(phi: &Formula, constants: &[String]) -> Formula {
    let mut cur = phi.clone();
    for c in constants {
        let Formula::Exists(bd, body) = cur else { unreachable!("existential prefix") };
        let term = match &bd.sort {
            Sort::Obj => Term::Obj(Obj::cst(c)),
            Sort::Arr(_) => Term::Arr(Arrow::cst(c)),
        };
        cur = body.open(&term);
    }
    cur
}

/// Checks the category laws by brute force over all composable pairs and
/// triples, naming the first violation.
pub fn category_laws(c: &FiniteCategory) -> Result<(), String> {
    for (f, (fd, fc)) in &c.arrows {
        let (id_d, id_c) = (&c.identities[fd], &c.identities[fc]);
        if c.compose(f, id_d) != Some(f.as_str()) {
            return Err(format!("{f} ∘ 1 ≠ {f}"));
        }
        if c.compose(id_c, f) != Some(f.as_str()) {
            return Err(format!("1 ∘ {f} ≠ {f}"));
        }
        for (g, (gd, gc)) in &c.arrows {
            if gd != fc {
                continue;
            }
            let gf = c.compose(g, f).ok_or_else(|| format!("{g} ∘ {f} missing"))?;
            if c.arrows[gf] != (fd.clone(), gc.clone()) {
                return Err(format!("{g} ∘ {f} is ill-typed"));
            }
            for (h, (hd, _)) in &c.arrows {
                if hd != gc {
                    continue;
                }
                let left = c.compose(h, gf);
                let right = c.compose(h, g).and_then(|hg| c.compose(hg, f));
                if left.is_none() || left != right {
                    return Err(format!("({h} ∘ {g}) ∘ {f} ≠ {h} ∘ ({g} ∘ {f})"));
                }
            }
        }
    }
    Ok(())
}
