//! Seeded generators of well-formed terms and formulas, shared by the
//! integration tests.

#![allow(dead_code)]

pub mod fixtures;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use catslash::syntax::{Arrow, ArrowSort, Assignment, Context, Formula, Obj, Signature, Sort};

/// The objects and arrow atoms in scope.
#[derive(Clone, Debug, Default)]
pub struct Env {
    pub objs: Vec<Obj>,
    pub arrows: Vec<(Arrow, ArrowSort)>,
}

impl Env {
    pub fn new(sig: &Signature, ctx: &Context) -> Env {
        let mut env = Env::default();
        env.objs.extend(sig.objects.iter().map(|o| Obj::cst(o)));
        env.arrows.extend(sig.arrows.iter().map(|(n, s)| (Arrow::cst(n), s.clone())));
        for d in &ctx.decls {
            match &d.sort {
                Sort::Obj => env.objs.push(Obj::var(&d.name)),
                Sort::Arr(s) => env.arrows.push((Arrow::var(&d.name), s.clone())),
            }
        }
        env
    }
}

pub struct Gen {
    pub rng: ChaCha8Rng,
    counter: usize,
    /// Keep the antecedents of implications free of `=>` and `forall`.
    pub positive_antecedents: bool,
    /// Allow quantifiers over objects.
    pub object_quantifiers: bool,
    /// Most composition steps in one arrow term.
    pub term_depth: usize,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            counter: 0,
            positive_antecedents: false,
            object_quantifiers: true,
            term_depth: 2,
        }
    }

    pub fn fresh(&mut self, base: &str) -> String {
        self.counter += 1;
        format!("{base}{}", self.counter)
    }

    fn pick<'a, T>(&mut self, xs: &'a [T]) -> Option<&'a T> {
        if xs.is_empty() {
            None
        } else {
            Some(&xs[self.rng.gen_range(0..xs.len())])
        }
    }

    /// A term of sort `d -> c`, if one can be built.
    pub fn arrow(&mut self, env: &Env, d: &Obj, c: &Obj, depth: usize) -> Option<Arrow> {
        let mut atoms: Vec<Arrow> =
            env.arrows.iter().filter(|(_, s)| &s.dom == d && &s.cod == c).map(|(a, _)| a.clone()).collect();
        if d == c {
            atoms.push(Arrow::id(d.clone()));
        }
        if depth > 0 && (atoms.is_empty() || self.rng.gen_bool(0.35)) {
            for _ in 0..3 {
                let m = self.pick(&env.objs)?.clone();
                if let (Some(g), Some(f)) = (self.arrow(env, &m, c, depth - 1), self.arrow(env, d, &m, depth - 1)) {
                    return Some(Arrow::comp(g, f));
                }
            }
        }
        self.pick(&atoms).cloned()
    }

    pub fn equation(&mut self, env: &Env) -> Formula {
        for _ in 0..8 {
            let (d, c) = match self.rng.gen_range(0..3) {
                0 => match self.pick(&env.objs) {
                    Some(o) => (o.clone(), o.clone()),
                    None => break,
                },
                _ => match self.pick(&env.arrows) {
                    Some((_, s)) => (s.dom.clone(), s.cod.clone()),
                    None => continue,
                },
            };
            let depth = self.term_depth;
            if let (Some(l), Some(r)) = (self.arrow(env, &d, &c, depth), self.arrow(env, &d, &c, depth)) {
                return Formula::eq(l, r);
            }
        }
        if self.rng.gen_bool(0.5) {
            Formula::Top
        } else {
            Formula::Bot
        }
    }

    fn quantified(&mut self, env: &Env, depth: usize, positive: bool, universal: bool) -> Formula {
        let mut inner = env.clone();
        let (name, sort) = if self.object_quantifiers && (env.objs.is_empty() || self.rng.gen_bool(0.3)) {
            let name = self.fresh("X");
            inner.objs.push(Obj::var(&name));
            (name, Sort::Obj)
        } else {
            let d = self.pick(&env.objs).cloned().expect("objects in scope");
            let c = self.pick(&env.objs).cloned().expect("objects in scope");
            let name = self.fresh("v");
            let srt = ArrowSort::new(d, c);
            inner.arrows.push((Arrow::var(&name), srt.clone()));
            (name, Sort::Arr(srt))
        };
        let body = self.formula_in(&inner, depth - 1, positive);
        if universal {
            Formula::forall(&name, sort, body)
        } else {
            Formula::exists(&name, sort, body)
        }
    }

    /// A formula of connective depth at most `depth`; with `positive`, only
    /// `/\`, `\/`, `=`, `top`, `bot` and `exists`.
    pub fn formula_in(&mut self, env: &Env, depth: usize, positive: bool) -> Formula {
        if depth == 0 {
            return match self.rng.gen_range(0..10) {
                0 => Formula::Top,
                1 => Formula::Bot,
                _ => self.equation(env),
            };
        }
        let choices = if positive { 5 } else { 7 };
        match self.rng.gen_range(0..choices) {
            0 => self.equation(env),
            1 => Formula::and(self.formula_in(env, depth - 1, positive), self.formula_in(env, depth - 1, positive)),
            2 => Formula::or(self.formula_in(env, depth - 1, positive), self.formula_in(env, depth - 1, positive)),
            3 | 4 => self.quantified(env, depth, positive, false),
            5 => {
                let ante = self.formula_in(env, depth - 1, positive || self.positive_antecedents);
                Formula::implies(ante, self.formula_in(env, depth - 1, positive))
            }
            _ => self.quantified(env, depth, positive, true),
        }
    }

    pub fn formula(&mut self, sig: &Signature, ctx: &Context, depth: usize) -> Formula {
        self.formula_in(&Env::new(sig, ctx), depth, false)
    }

    /// A context of `n` declarations over `base`: object variables and
    /// arrow variables between objects already in scope.
    pub fn context(&mut self, sig: &Signature, base: &Context, n: usize, tag: &str) -> Context {
        let mut env = Env::new(sig, base);
        let mut ctx = Context::new();
        for i in 0..n {
            if env.objs.is_empty() || self.rng.gen_bool(0.4) {
                let name = format!("{tag}{i}");
                env.objs.push(Obj::var(&name));
                ctx = ctx.with_obj(&name);
            } else {
                let d = self.pick(&env.objs).cloned().expect("objects in scope");
                let c = self.pick(&env.objs).cloned().expect("objects in scope");
                let name = format!("{}{i}", tag.to_lowercase());
                env.arrows.push((Arrow::var(&name), ArrowSort::new(d.clone(), c.clone())));
                ctx = ctx.with_arr(&name, d, c);
            }
        }
        ctx
    }
}

/// A fuzzed substitution instance over `sig`: a context of three
/// declarations, a predicate in the arrow variable `x`, and two terms of
/// the sort of `x`.
pub fn substitution_case(sig: &Signature, seed: u64) -> (Context, Formula, Arrow, Arrow) {
    let mut g = Gen::new(seed);
    let base = g.context(sig, &Context::new(), 3, "C");
    let env = Env::new(sig, &base);
    let (d, c, f, h) = loop {
        let d = env.objs[g.rng.gen_range(0..env.objs.len())].clone();
        let c = env.objs[g.rng.gen_range(0..env.objs.len())].clone();
        if let (Some(f), Some(h)) = (g.arrow(&env, &d, &c, 2), g.arrow(&env, &d, &c, 2)) {
            break (d, c, f, h);
        }
    };
    let with_x = base.clone().with_arr("x", d, c);
    let phi = g.formula(sig, &with_x, 3);
    (base, phi, f, h)
}

/// The formula `f = h => phi[f/x] => phi[h/x]`.
pub fn substitution_goal(phi: &Formula, f: &Arrow, h: &Arrow) -> Formula {
    Formula::implies(
        Formula::eq(f.clone(), h.clone()),
        Formula::implies(
            Assignment::new().with_arrow("x", f.clone()).formula(phi),
            Assignment::new().with_arrow("x", h.clone()).formula(phi),
        ),
    )
}

/// A fuzzed transport instance over `sig`: `Γ` of at most one declaration,
/// `Δ` of at most three, and a formula of depth at most four over both.
pub fn transport_case(sig: &Signature, seed: u64) -> (Context, Context, Formula) {
    let mut g = Gen::new(seed);
    let n = g.rng.gen_range(0..=3);
    let m = g.rng.gen_range(0..=1);
    let gamma = g.context(sig, &Context::new(), m, "G");
    let delta = g.context(sig, &gamma, n, "D");
    let p = g.formula(sig, &gamma.extend(&delta), 4);
    (gamma, delta, p)
}

