//! Knuth-Bendix completion over paths, with a proof for every rule.
//!
//! Rules are oriented by the shortlex order on paths. When completion
//! finishes within its limits the rule set is confluent and terminating,
//! so two terms are provably equal exactly when their normal forms agree.

use std::collections::VecDeque;

use crate::kernel::rules::*;
use crate::kernel::{Eqn, P};

use super::paths::{in_context, Path};

/// `lhs → rhs` with a proof of `canon(lhs) = canon(rhs)`.
#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: Path,
    pub rhs: Path,
    pub proof: P,
}

#[derive(Clone, Copy, Debug)]
pub struct CompletionLimits {
    pub max_rules: usize,
    pub max_pairs: usize,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits { max_rules: 200, max_pairs: 4000 }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RewriteSystem {
    pub rules: Vec<Rule>,
    /// False when completion stopped at a limit; normal forms are then
    /// still provably equal to their inputs but may not be unique.
    pub confluent: bool,
}

impl RewriteSystem {
    /// Completes the given equations `(a, b, proof of canon(a) = canon(b))`.
    pub fn complete(eqn: &Eqn<'_>, eqs: Vec<(Path, Path, P)>, limits: CompletionLimits) -> Self {
        let mut sys = RewriteSystem { rules: Vec::new(), confluent: true };
        let mut queue: VecDeque<(Path, Path, P)> = eqs.into();
        let mut processed = 0;
        while let Some((a, b, p)) = queue.pop_front() {
            processed += 1;
            if processed > limits.max_pairs || sys.rules.len() > limits.max_rules {
                sys.confluent = false;
                break;
            }
            let (na, pa) = sys.normalise(eqn, &a);
            let (nb, pb) = sys.normalise(eqn, &b);
            if na == nb {
                continue;
            }
            let proof = trans(trans(sym(pa), p), pb);
            let rule = if na.shortlex(&nb).is_gt() {
                Rule { lhs: na, rhs: nb, proof }
            } else {
                Rule { lhs: nb, rhs: na, proof: sym(proof) }
            };
            let mut kept = Vec::with_capacity(sys.rules.len());
            for old in std::mem::take(&mut sys.rules) {
                if old.lhs.find(&rule.lhs).is_some() {
                    queue.push_back((old.lhs, old.rhs, old.proof));
                } else {
                    kept.push(old);
                }
            }
            sys.rules = kept;
            sys.rules.push(rule);
            let new = sys.rules.len() - 1;
            for i in 0..sys.rules.len() {
                for (x, y) in [(i, new), (new, i)] {
                    queue.extend(critical_pairs(eqn, &sys.rules[x], &sys.rules[y]));
                }
            }
            sys.reduce_right_sides(eqn);
        }
        sys
    }

    fn reduce_right_sides(&mut self, eqn: &Eqn<'_>) {
        for i in 0..self.rules.len() {
            let (nf, p) = self.normalise(eqn, &self.rules[i].rhs);
            if nf != self.rules[i].rhs {
                let r = &mut self.rules[i];
                r.proof = trans(r.proof.clone(), p);
                r.rhs = nf;
            }
        }
    }

    /// First applicable rewrite: `(rule index, position)`.
    fn redex(&self, w: &Path) -> Option<(usize, usize)> {
        self.rules.iter().enumerate().find_map(|(k, r)| w.find(&r.lhs).map(|i| (k, i)))
    }

    pub fn is_normal(&self, w: &Path) -> bool {
        self.redex(w).is_none()
    }

    /// Normal form of `w` with a proof of `canon(w) = canon(nf)`.
    pub fn normalise(&self, eqn: &Eqn<'_>, w: &Path) -> (Path, P) {
        let mut cur = w.clone();
        let mut proof = refl(cur.canon());
        while let Some((k, i)) = self.redex(&cur) {
            let r = &self.rules[k];
            let x = cur.slice(0, i);
            let y = cur.slice(i + r.lhs.len(), cur.len());
            let step = in_context(eqn, &x, &r.lhs, &r.rhs, &y, r.proof.clone());
            cur = x.then(&r.rhs).then(&y);
            proof = trans(proof, step);
        }
        (cur, proof)
    }
}

/// Overlaps of `r1`'s suffix with `r2`'s prefix, as equations between
/// the two one-step reducts.
fn critical_pairs(eqn: &Eqn<'_>, r1: &Rule, r2: &Rule) -> Vec<(Path, Path, P)> {
    let (l1, l2) = (&r1.lhs, &r2.lhs);
    let mut out = Vec::new();
    for k in 1..l1.len().min(l2.len()) {
        if l1.gens[l1.len() - k..] != l2.gens[..k] {
            continue;
        }
        let head = l1.slice(0, l1.len() - k);
        let tail = l2.slice(k, l2.len());
        let empty_l = Path::empty(l1.dom().clone());
        let empty_r = Path::empty(l2.cod().clone());
        let via1 = in_context(eqn, &empty_l, l1, &r1.rhs, &tail, r1.proof.clone());
        let via2 = in_context(eqn, &head, l2, &r2.rhs, &empty_r, r2.proof.clone());
        let red1 = r1.rhs.then(&tail);
        let red2 = head.then(&r2.rhs);
        out.push((red1, red2, trans(sym(via1), via2)));
    }
    out
}
