//! Text serialisation of proofs. See `proofs.md` at the repository root.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::syntax::{
    parse_arrow, parse_context, parse_formula, parse_object, parse_sort, print_context,
    print_formula, print_sort, Context, Formula, ParseError, Signature, Term,
};

use super::{Judgement, Proof, P};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("certificate line {line}: {msg}")]
pub struct CertError {
    pub line: usize,
    pub msg: String,
}

/// A parsed certificate: an optional judgement header and the proof.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub ctx: Context,
    pub hyps: Vec<Formula>,
    pub goal: Option<Formula>,
    pub proof: P,
}

impl Certificate {
    pub fn judgement(&self) -> Option<Judgement> {
        self.goal
            .as_ref()
            .map(|g| Judgement::new(self.ctx.clone(), self.hyps.clone(), g.clone()))
    }
}

fn term_arg(t: &Term) -> String {
    match t {
        Term::Obj(o) => format!("obj {o}"),
        Term::Arr(a) => format!("arr {a}"),
    }
}

fn args(p: &Proof) -> Vec<String> {
    match p {
        Proof::Hyp(i) => vec![i.to_string()],
        Proof::Axiom(n) => vec![n.clone()],
        Proof::Imported(phi) => vec![print_formula(phi)],
        Proof::OrIntroL(_, phi) | Proof::OrIntroR(phi, _) => vec![print_formula(phi)],
        Proof::ImpliesIntro(phi, _) | Proof::BotElim(_, phi) => vec![print_formula(phi)],
        Proof::ForallIntro(x, s, _) => vec![format!("{x} : {}", print_sort(s))],
        Proof::ForallElim(_, t) => vec![term_arg(t)],
        Proof::ExistsIntro(phi, t, _) => vec![print_formula(phi), term_arg(t)],
        Proof::ExistsElim(_, x, _) => vec![x.clone()],
        Proof::EqRefl(a) => vec![a.to_string()],
        _ => vec![],
    }
}

/// Serialises `p`, preceded by the judgement when given. Shared subproofs
/// are written once.
pub fn write_certificate(j: Option<&Judgement>, p: &P) -> String {
    let mut out = String::new();
    if let Some(j) = j {
        if !j.ctx.is_empty() {
            let _ = writeln!(out, "context {}", print_context(&j.ctx));
        }
        for h in &j.hyps {
            let _ = writeln!(out, "hyp {}", print_formula(h));
        }
        let _ = writeln!(out, "goal {}", print_formula(&j.goal));
    }
    let mut ids: HashMap<*const Proof, usize> = HashMap::new();
    fn emit(p: &P, ids: &mut HashMap<*const Proof, usize>, out: &mut String) -> usize {
        if let Some(&id) = ids.get(&Arc::as_ptr(p)) {
            return id;
        }
        let prem: Vec<usize> = p.premises().into_iter().map(|q| emit(q, ids, out)).collect();
        let id = ids.len();
        ids.insert(Arc::as_ptr(p), id);
        let prem = if prem.is_empty() {
            "-".to_string()
        } else {
            prem.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
        };
        let _ = write!(out, "{id} {} {prem}", p.rule_name());
        for a in args(p) {
            let _ = write!(out, " | {a}");
        }
        out.push('\n');
        id
    }
    emit(p, &mut ids, &mut out);
    out
}

fn perr(line: usize) -> impl Fn(ParseError) -> CertError {
    move |e| CertError { line, msg: e.to_string() }
}

fn parse_term(sig: &Signature, s: &str, line: usize) -> Result<Term, CertError> {
    if let Some(rest) = s.strip_prefix("obj ") {
        return parse_object(sig, rest).map(Term::Obj).map_err(perr(line));
    }
    if let Some(rest) = s.strip_prefix("arr ") {
        return parse_arrow(sig, rest).map(Term::Arr).map_err(perr(line));
    }
    Err(CertError { line, msg: format!("expected `obj <object>` or `arr <arrow>`, found `{s}`") })
}

/// Parses a certificate; names in `sig` are read as constants.
pub fn parse_certificate(sig: &Signature, text: &str) -> Result<Certificate, CertError> {
    let mut ctx = Context::new();
    let mut hyps = Vec::new();
    let mut goal = None;
    let mut nodes: Vec<P> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let err = |msg: String| CertError { line, msg };
        if let Some(rest) = l.strip_prefix("context ") {
            ctx = parse_context(sig, rest).map_err(perr(line))?;
            continue;
        }
        if let Some(rest) = l.strip_prefix("hyp ") {
            hyps.push(parse_formula(sig, rest).map_err(perr(line))?);
            continue;
        }
        if let Some(rest) = l.strip_prefix("goal ") {
            goal = Some(parse_formula(sig, rest).map_err(perr(line))?);
            continue;
        }
        let mut parts = l.split('|').map(str::trim);
        let head = parts.next().unwrap_or("");
        let args: Vec<&str> = parts.collect();
        let mut words = head.split_whitespace();
        let id: usize = words
            .next()
            .and_then(|w| w.parse().ok())
            .ok_or_else(|| err("expected a node id".into()))?;
        if id != nodes.len() {
            return Err(err(format!("expected node id {}, found {id}", nodes.len())));
        }
        let rule = words.next().ok_or_else(|| err("expected a rule name".into()))?;
        let prem_text = words.next().unwrap_or("-");
        if words.next().is_some() {
            return Err(err("unexpected text before arguments; separate arguments with `|`".into()));
        }
        let mut prem = Vec::new();
        if prem_text != "-" {
            for w in prem_text.split(',') {
                let k: usize = w.parse().map_err(|_| err(format!("bad premise id `{w}`")))?;
                let node = nodes
                    .get(k)
                    .ok_or_else(|| err(format!("premise {k} is not an earlier node")))?;
                prem.push(node.clone());
            }
        }
        let need = |n: usize, a: usize| -> Result<(), CertError> {
            if prem.len() != n {
                return Err(err(format!("{rule} takes {n} premises, found {}", prem.len())));
            }
            if args.len() != a {
                return Err(err(format!("{rule} takes {a} arguments, found {}", args.len())));
            }
            Ok(())
        };
        let fml = |s: &str| parse_formula(sig, s).map_err(perr(line));
        let node = match rule {
            "HYP" => {
                need(0, 1)?;
                Proof::Hyp(args[0].parse().map_err(|_| err(format!("bad index `{}`", args[0])))?)
            }
            "AXIOM" => {
                need(0, 1)?;
                Proof::Axiom(args[0].to_string())
            }
            "IMPORTED" => {
                need(0, 1)?;
                Proof::Imported(fml(args[0])?)
            }
            "AND_INTRO" => {
                need(2, 0)?;
                Proof::AndIntro(prem[0].clone(), prem[1].clone())
            }
            "AND_ELIM_L" => {
                need(1, 0)?;
                Proof::AndElimL(prem[0].clone())
            }
            "AND_ELIM_R" => {
                need(1, 0)?;
                Proof::AndElimR(prem[0].clone())
            }
            "OR_INTRO_L" => {
                need(1, 1)?;
                Proof::OrIntroL(prem[0].clone(), fml(args[0])?)
            }
            "OR_INTRO_R" => {
                need(1, 1)?;
                Proof::OrIntroR(fml(args[0])?, prem[0].clone())
            }
            "OR_ELIM" => {
                need(3, 0)?;
                Proof::OrElim(prem[0].clone(), prem[1].clone(), prem[2].clone())
            }
            "IMPLIES_INTRO" => {
                need(1, 1)?;
                Proof::ImpliesIntro(fml(args[0])?, prem[0].clone())
            }
            "IMPLIES_ELIM" => {
                need(2, 0)?;
                Proof::ImpliesElim(prem[0].clone(), prem[1].clone())
            }
            "TOP_INTRO" => {
                need(0, 0)?;
                Proof::TopIntro
            }
            "BOT_ELIM" => {
                need(1, 1)?;
                Proof::BotElim(prem[0].clone(), fml(args[0])?)
            }
            "FORALL_INTRO" => {
                need(1, 1)?;
                let (x, s) = args[0]
                    .split_once(':')
                    .ok_or_else(|| err("expected `<var> : <sort>`".into()))?;
                let s = parse_sort(sig, s.trim()).map_err(perr(line))?;
                Proof::ForallIntro(x.trim().to_string(), s, prem[0].clone())
            }
            "FORALL_ELIM" => {
                need(1, 1)?;
                Proof::ForallElim(prem[0].clone(), parse_term(sig, args[0], line)?)
            }
            "EXISTS_INTRO" => {
                need(1, 2)?;
                Proof::ExistsIntro(fml(args[0])?, parse_term(sig, args[1], line)?, prem[0].clone())
            }
            "EXISTS_ELIM" => {
                need(2, 1)?;
                Proof::ExistsElim(prem[0].clone(), args[0].to_string(), prem[1].clone())
            }
            "EQ_REFL" => {
                need(0, 1)?;
                Proof::EqRefl(parse_arrow(sig, args[0]).map_err(perr(line))?)
            }
            "EQ_SYM" => {
                need(1, 0)?;
                Proof::EqSym(prem[0].clone())
            }
            "EQ_TRANS" => {
                need(2, 0)?;
                Proof::EqTrans(prem[0].clone(), prem[1].clone())
            }
            "EQ_CONG_COMP" => {
                need(2, 0)?;
                Proof::EqCongComp(prem[0].clone(), prem[1].clone())
            }
            other => return Err(err(format!("unknown rule `{other}`"))),
        };
        nodes.push(Arc::new(node));
    }
    let proof = nodes.pop().ok_or(CertError { line: 0, msg: "certificate has no nodes".into() })?;
    Ok(Certificate { ctx, hyps, goal, proof })
}

#[cfg(test)]
mod tests {
    use super::super::rules::*;
    use super::*;
    use crate::syntax::{Arrow, Obj, Sort};

    #[test]
    fn roundtrip_with_sharing() {
        let sig = Signature::new().with_object("A");
        let ida = Arrow::id(Obj::cst("A"));
        let r = refl(ida.clone());
        let p = and_intro(r.clone(), r);
        let p = forall_intro("X", Sort::Obj, imp_intro(Formula::Top, p));
        let goal = crate::syntax::parse_formula(&sig, "forall X . top => id A = id A /\\ id A = id A").unwrap();
        let j = Judgement::closed(goal);
        let text = write_certificate(Some(&j), &p);
        assert_eq!(
            text,
            "goal forall X . top => id A = id A /\\ id A = id A\n\
             0 EQ_REFL - | id A\n\
             1 AND_INTRO 0,0\n\
             2 IMPLIES_INTRO 1 | top\n\
             3 FORALL_INTRO 2 | X : Obj\n"
        );
        let c = parse_certificate(&sig, &text).unwrap();
        assert_eq!(c.proof, p);
        assert_eq!(c.judgement(), Some(j));
    }

    #[test]
    fn rejects_forward_references() {
        let e = parse_certificate(&Signature::new(), "0 EQ_SYM 1\n").unwrap_err();
        assert_eq!(e.line, 1);
    }
}
