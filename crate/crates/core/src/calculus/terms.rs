//! Typed proof terms over the classical axioms, compiled to Hilbert lines by
//! bracket abstraction.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use super::derivation::{Derivation, Step};
use crate::language::Formula;
use crate::substitution::Instantiation;

#[derive(Debug)]
pub(crate) enum Kind {
    Prem,
    Hyp(u32),
    Ax(u8, Vec<Formula>),
    App(Tm, Tm),
    Lam(u32, Formula, Tm),
}

#[derive(Debug)]
pub(crate) struct Node {
    kind: Kind,
    ty: Formula,
    free: u64,
    size: usize,
}

/// A proof term; its type is the formula it proves.
#[derive(Clone, Debug)]
pub(crate) struct Tm(Rc<Node>);

fn imp(a: &Formula, b: &Formula) -> Formula {
    Formula::imp(a.clone(), b.clone())
}

impl Tm {
    fn mk(kind: Kind, ty: Formula, free: u64) -> Tm {
        let size = match &kind {
            Kind::App(f, a) => f.0.size + a.0.size + 1,
            Kind::Lam(_, _, body) => body.0.size + 1,
            _ => 1,
        };
        Tm(Rc::new(Node { kind, ty, free, size }))
    }

    /// Node count, a cheap proxy for compiled length.
    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn ty(&self) -> &Formula {
        &self.0.ty
    }

    fn uses(&self, x: u32) -> bool {
        self.0.free & (1 << x) != 0
    }

    pub fn prem(f: Formula) -> Tm {
        Tm::mk(Kind::Prem, f, 0)
    }

    pub fn hyp(x: u32, f: Formula) -> Tm {
        assert!(x < 64, "hypothesis depth exceeded");
        Tm::mk(Kind::Hyp(x), f, 1 << x)
    }

    pub fn app(f: &Tm, a: &Tm) -> Tm {
        let (ante, cons) = f.ty().as_binary(crate::language::IMP).expect("applied term has an implication type");
        debug_assert_eq!(ante, a.ty(), "argument type mismatch");
        let ty = cons.clone();
        Tm::mk(Kind::App(f.clone(), a.clone()), ty, f.0.free | a.0.free)
    }

    pub fn app2(f: &Tm, a: &Tm, b: &Tm) -> Tm {
        Tm::app(&Tm::app(f, a), b)
    }

    pub fn lam(x: u32, a: &Formula, body: &Tm) -> Tm {
        let ty = imp(a, body.ty());
        Tm::mk(Kind::Lam(x, a.clone(), body.clone()), ty, body.0.free & !(1 << x))
    }

    fn ax(n: u8, args: Vec<Formula>, ty: Formula) -> Tm {
        Tm::mk(Kind::Ax(n, args), ty, 0)
    }

    /// a→(b→a)
    pub fn k(a: &Formula, b: &Formula) -> Tm {
        Tm::ax(1, vec![a.clone(), b.clone()], imp(a, &imp(b, a)))
    }

    /// (a→b)→((a→(b→c))→(a→c))
    pub fn s(a: &Formula, b: &Formula, c: &Formula) -> Tm {
        let ty = imp(&imp(a, b), &imp(&imp(a, &imp(b, c)), &imp(a, c)));
        Tm::ax(2, vec![a.clone(), b.clone(), c.clone()], ty)
    }

    /// a→(b→(a∧b))
    pub fn pair(a: &Formula, b: &Formula) -> Tm {
        let ab = Formula::and(a.clone(), b.clone());
        Tm::ax(3, vec![a.clone(), b.clone()], imp(a, &imp(b, &ab)))
    }

    pub fn fst(a: &Formula, b: &Formula) -> Tm {
        Tm::ax(4, vec![a.clone(), b.clone()], imp(&Formula::and(a.clone(), b.clone()), a))
    }

    pub fn snd(a: &Formula, b: &Formula) -> Tm {
        Tm::ax(5, vec![a.clone(), b.clone()], imp(&Formula::and(a.clone(), b.clone()), b))
    }

    pub fn inl(a: &Formula, b: &Formula) -> Tm {
        Tm::ax(6, vec![a.clone(), b.clone()], imp(a, &Formula::or(a.clone(), b.clone())))
    }

    pub fn inr(a: &Formula, b: &Formula) -> Tm {
        Tm::ax(7, vec![a.clone(), b.clone()], imp(b, &Formula::or(a.clone(), b.clone())))
    }

    /// (a→c)→((b→c)→((a∨b)→c))
    pub fn cases(a: &Formula, b: &Formula, c: &Formula) -> Tm {
        let ty = imp(&imp(a, c), &imp(&imp(b, c), &imp(&Formula::or(a.clone(), b.clone()), c)));
        Tm::ax(8, vec![a.clone(), b.clone(), c.clone()], ty)
    }

    /// (a→b)→((a→¬b)→¬a)
    pub fn refute(a: &Formula, b: &Formula) -> Tm {
        let nb = Formula::not(b.clone());
        let ty = imp(&imp(a, b), &imp(&imp(a, &nb), &Formula::not(a.clone())));
        Tm::ax(9, vec![a.clone(), b.clone()], ty)
    }

    /// ¬¬a→a
    pub fn dne(a: &Formula) -> Tm {
        Tm::ax(10, vec![a.clone()], imp(&Formula::not(Formula::not(a.clone())), a))
    }

    /// Any formula `g` from a contradictory pair `x : X`, `nx : ¬X`.
    pub fn absurd(g: &Formula, x: &Tm, nx: &Tm) -> Tm {
        let xf = x.ty();
        if let Some(c) = g.as_unary(crate::language::NOT) {
            let r = Tm::refute(c, xf);
            return Tm::app2(&r, &Tm::app(&Tm::k(xf, c), x), &Tm::app(&Tm::k(nx.ty(), c), nx));
        }
        let ng = Formula::not(g.clone());
        let r = Tm::refute(&ng, xf);
        let nng = Tm::app2(&r, &Tm::app(&Tm::k(xf, &ng), x), &Tm::app(&Tm::k(nx.ty(), &ng), nx));
        Tm::app(&Tm::dne(g), &nng)
    }

    /// The same proof with every hypothesis discharged by combinators.
    pub fn eliminate(&self) -> Tm {
        match &self.0.kind {
            Kind::Lam(x, a, body) => abstract_over(*x, a, &body.eliminate()),
            Kind::App(f, a) => {
                if self.0.free == 0 && !has_lambda(self) {
                    return self.clone();
                }
                Tm::app(&f.eliminate(), &a.eliminate())
            }
            _ => self.clone(),
        }
    }

    /// Emits lines, reusing any formula already proved.
    pub fn to_derivation(&self, premises: &[Formula]) -> Derivation {
        let closed = self.eliminate();
        let mut out = Emitter { lines: Vec::new(), index: HashMap::new() };
        let last = out.emit(&closed);
        out.lines.truncate(last + 1);
        Derivation::new(premises.to_vec(), out.lines)
    }

    /// Line count of the compiled derivation.
    pub fn cost(&self) -> usize {
        let closed = self.eliminate();
        let mut seen = HashSet::new();
        count(&closed, &mut seen);
        seen.len()
    }
}

fn has_lambda(t: &Tm) -> bool {
    match &t.0.kind {
        Kind::Lam(..) => true,
        Kind::App(f, a) => has_lambda(f) || has_lambda(a),
        _ => false,
    }
}

fn count(t: &Tm, seen: &mut HashSet<Formula>) {
    if seen.contains(t.ty()) {
        return;
    }
    if let Kind::App(f, a) = &t.0.kind {
        count(a, seen);
        count(f, seen);
    }
    seen.insert(t.ty().clone());
}

/// a→a from two instances of the first axiom and one of the second.
fn identity(a: &Formula) -> Tm {
    let aa = imp(a, a);
    Tm::app2(&Tm::s(a, &aa, a), &Tm::k(a, a), &Tm::k(a, &aa))
}

/// `[x]t` for a hypothesis-free-of-lambdas term `t`.
fn abstract_over(x: u32, xa: &Formula, t: &Tm) -> Tm {
    if !t.uses(x) {
        return Tm::app(&Tm::k(t.ty(), xa), t);
    }
    match &t.0.kind {
        Kind::Hyp(_) => identity(xa),
        Kind::App(u, v) => {
            if !u.uses(x) && matches!(v.0.kind, Kind::Hyp(y) if y == x) {
                return u.clone();
            }
            let av = abstract_over(x, xa, v);
            let au = abstract_over(x, xa, u);
            Tm::app2(&Tm::s(xa, v.ty(), t.ty()), &av, &au)
        }
        _ => unreachable!("only hypotheses and applications carry free hypotheses"),
    }
}

struct Emitter {
    lines: Vec<Step>,
    index: HashMap<Formula, usize>,
}

impl Emitter {
    fn emit(&mut self, t: &Tm) -> usize {
        if let Some(&i) = self.index.get(t.ty()) {
            return i;
        }
        let step = match &t.0.kind {
            Kind::Prem => Step::premise(t.ty().clone()),
            Kind::Ax(n, args) => {
                let names = ["α", "β", "γ"];
                let inst = Instantiation::from_pairs(names.iter().zip(args).map(|(m, f)| ((*m).into(), f.clone())));
                Step::rule(t.ty().clone(), &format!("ax{n}"), vec![], Some(inst))
            }
            Kind::App(f, a) => {
                if let Kind::App(_, b) = &f.0.kind {
                    self.emit(b);
                }
                let ia = self.emit(a);
                let i_f = self.emit(f);
                if let Some(&i) = self.index.get(t.ty()) {
                    return i;
                }
                let inst = Instantiation::from_pairs([("α".into(), a.ty().clone()), ("β".into(), t.ty().clone())]);
                Step::rule(t.ty().clone(), "MP", vec![ia, i_f], Some(inst))
            }
            Kind::Hyp(_) | Kind::Lam(..) => unreachable!("hypotheses are eliminated before emission"),
        };
        self.lines.push(step);
        let i = self.lines.len() - 1;
        self.index.insert(t.ty().clone(), i);
        i
    }
}
