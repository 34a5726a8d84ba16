//! Arrow terms as paths of generators, modulo associativity and identities.
//!
//! A [`Path`] lists generators (arrow constants or variables) in the order
//! they are applied, together with the objects visited. Its canonical term
//! is right-nested: `[g1, g2, g3]` denotes `g3 ∘ (g2 ∘ g1)`, and the empty
//! path at `X` denotes `1_X`. The functions here build kernel proofs
//! relating terms to canonical terms of their paths.

use std::cmp::Ordering;

use crate::kernel::rules::*;
use crate::kernel::{Eqn, P};
use crate::syntax::{Arrow, Obj, WfError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    /// Visited objects; always one more than `gens`.
    pub objs: Vec<Obj>,
    pub gens: Vec<Arrow>,
}

impl Path {
    pub fn empty(at: Obj) -> Self {
        Path { objs: vec![at], gens: vec![] }
    }

    pub fn dom(&self) -> &Obj {
        &self.objs[0]
    }

    pub fn cod(&self) -> &Obj {
        self.objs.last().expect("nonempty")
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generators `i..j` with their objects.
    pub fn slice(&self, i: usize, j: usize) -> Path {
        Path { objs: self.objs[i..=j].to_vec(), gens: self.gens[i..j].to_vec() }
    }

    /// `self` followed by `next`; requires `self.cod() == next.dom()`.
    pub fn then(&self, next: &Path) -> Path {
        debug_assert_eq!(self.cod(), next.dom());
        let mut objs = self.objs.clone();
        objs.extend(next.objs[1..].iter().cloned());
        let mut gens = self.gens.clone();
        gens.extend(next.gens.iter().cloned());
        Path { objs, gens }
    }

    pub fn canon(&self) -> Arrow {
        let mut it = self.gens.iter();
        let Some(first) = it.next() else {
            return Arrow::id(self.dom().clone());
        };
        it.fold(first.clone(), |acc, g| Arrow::comp(g.clone(), acc))
    }

    /// Position of the first occurrence of `pat` (nonempty) in `self`.
    pub fn find(&self, pat: &Path) -> Option<usize> {
        if pat.is_empty() || pat.len() > self.len() {
            return None;
        }
        (0..=self.len() - pat.len()).find(|&i| self.gens[i..i + pat.len()] == pat.gens[..])
    }

    /// Shortlex comparison: shorter first, then generator by generator.
    pub fn shortlex(&self, other: &Path) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.gens.cmp(&other.gens))
    }
}

/// The path of a term, whose sorts are looked up in `eqn`'s scope.
pub fn path_of(eqn: &Eqn<'_>, t: &Arrow) -> Result<Path, WfError> {
    match t {
        Arrow::Id(o) => {
            eqn.scope.check_obj(o)?;
            Ok(Path::empty(o.clone()))
        }
        Arrow::Comp(g, f) => {
            let pf = path_of(eqn, f)?;
            let pg = path_of(eqn, g)?;
            if pf.cod() != pg.dom() {
                return Err(WfError::EndpointMismatch { cod: pf.cod().to_string(), dom: pg.dom().to_string() });
            }
            Ok(pf.then(&pg))
        }
        atom => {
            let s = eqn.sort(atom)?;
            Ok(Path { objs: vec![s.dom, s.cod], gens: vec![atom.clone()] })
        }
    }
}

/// `canon(v) ∘ canon(u) = canon(u ++ v)`
pub fn append(eqn: &Eqn<'_>, u: &Path, v: &Path) -> P {
    let cu = u.canon();
    if v.is_empty() {
        return eqn.id_left(&cu).expect("well-sorted path");
    }
    if u.is_empty() {
        return eqn.id_right(&v.canon()).expect("well-sorted path");
    }
    let last = v.gens.last().expect("nonempty").clone();
    if v.len() == 1 {
        return refl(Arrow::comp(last, cu));
    }
    let init = v.slice(0, v.len() - 1);
    // (last ∘ canon(init)) ∘ canon(u) = last ∘ (canon(init) ∘ canon(u)) = last ∘ canon(u ++ init)
    let a = sym(eqn.assoc(&last, &init.canon(), &cu).expect("well-sorted path"));
    let b = cong(refl(last), append(eqn, u, &init));
    trans(a, b)
}

/// `t = canon(path_of(t))`
pub fn normalise(eqn: &Eqn<'_>, t: &Arrow) -> Result<(Path, P), WfError> {
    match t {
        Arrow::Comp(g, f) => {
            let (pf, ef) = normalise(eqn, f)?;
            let (pg, eg) = normalise(eqn, g)?;
            if pf.cod() != pg.dom() {
                return Err(WfError::EndpointMismatch { cod: pf.cod().to_string(), dom: pg.dom().to_string() });
            }
            let whole = pf.then(&pg);
            let step = cong(eg, ef);
            Ok((whole, trans(step, append(eqn, &pf, &pg))))
        }
        _ => {
            let p = path_of(eqn, t)?;
            Ok((p, refl(t.clone())))
        }
    }
}

/// From `eq : canon(l) = canon(r)`, proves
/// `canon(x ++ l ++ y) = canon(x ++ r ++ y)`.
pub fn in_context(eqn: &Eqn<'_>, x: &Path, l: &Path, r: &Path, y: &Path, eq: P) -> P {
    let mut p = eq;
    let (mut lhs, mut rhs) = (l.clone(), r.clone());
    if !x.is_empty() {
        // canon(x++l) = canon(l) ∘ canon(x) = canon(r) ∘ canon(x) = canon(x++r)
        let cx = x.canon();
        let step = cong(p, refl(cx));
        p = trans(sym(append(eqn, x, &lhs)), trans(step, append(eqn, x, &rhs)));
        lhs = x.then(&lhs);
        rhs = x.then(&rhs);
    }
    if !y.is_empty() {
        let cy = y.canon();
        let step = cong(refl(cy), p);
        p = trans(sym(append(eqn, &lhs, y)), trans(step, append(eqn, &rhs, y)));
    }
    p
}
