//! Goal-directed classical proof search guided by truth tables. Produces
//! proof terms over the classical axioms.

use std::collections::HashMap;

use super::terms::Tm;
use crate::language::{Formula, Sym, AND, IMP, NOT, OR};

const MAX_VARS: usize = 6;
const MAX_DEPTH: u32 = 48;

/// Truth tables of formulas over a fixed variable list, as bit rows.
struct Tables {
    vars: Vec<Sym>,
    full: u64,
}

impl Tables {
    fn new(vars: Vec<Sym>) -> Self {
        let rows = 1u32 << vars.len();
        let full = if rows == 64 { u64::MAX } else { (1u64 << rows) - 1 };
        Tables { vars, full }
    }

    fn mask(&self, f: &Formula) -> u64 {
        match f {
            Formula::Var(v) => {
                let i = self.vars.iter().position(|w| w == v).expect("variable listed");
                (0..(1u32 << self.vars.len())).filter(|r| r >> i & 1 == 1).fold(0, |m, r| m | 1 << r)
            }
            Formula::App(op, args) => match (&**op, &args[..]) {
                (NOT, [a]) => !self.mask(a) & self.full,
                (AND, [a, b]) => self.mask(a) & self.mask(b),
                (OR, [a, b]) => self.mask(a) | self.mask(b),
                (IMP, [a, b]) => (!self.mask(a) | self.mask(b)) & self.full,
                _ => unreachable!("checked by supports"),
            },
            Formula::Const(_) => unreachable!("checked by supports"),
        }
    }
}

/// True iff `f` uses only variables and ∧, ∨, →, ¬.
pub(crate) fn supports(f: &Formula) -> bool {
    match f {
        Formula::Var(_) => true,
        Formula::Const(_) => false,
        Formula::App(op, args) => {
            matches!((&**op, args.len()), (NOT, 1) | (AND, 2) | (OR, 2) | (IMP, 2)) && args.iter().all(supports)
        }
    }
}

#[derive(Clone)]
struct Fact {
    formula: Formula,
    term: Tm,
    used: bool,
}

#[derive(Clone)]
struct Ctx {
    facts: Vec<Fact>,
    index: HashMap<Formula, usize>,
    mask: u64,
    next: u32,
}

/// Search switches; every combination is tried and the shortest compiled
/// proof kept.
#[derive(Clone, Copy)]
struct Config {
    extract: bool,
    lift: bool,
    reductio_first: bool,
    large_first: bool,
}

struct Prover {
    tables: Tables,
    config: Config,
}

fn neg(f: &Formula) -> Formula {
    Formula::not(f.clone())
}

impl Ctx {
    fn get(&self, f: &Formula) -> Option<&Tm> {
        self.index.get(f).map(|&i| &self.facts[i].term)
    }

    fn has(&self, f: &Formula) -> bool {
        self.index.contains_key(f)
    }

    fn pair(&self) -> Option<(Tm, Tm)> {
        let mut best: Option<(usize, Tm, Tm)> = None;
        for fact in &self.facts {
            if let Some(x) = fact.formula.as_unary(NOT) {
                if let Some(tx) = self.get(x) {
                    let size = weight(tx) + weight(&fact.term);
                    if best.as_ref().is_none_or(|(s, _, _)| size < *s) {
                        best = Some((size, tx.clone(), fact.term.clone()));
                    }
                }
            }
        }
        best.map(|(_, a, b)| (a, b))
    }

    fn mark(&self, f: &Formula) -> Ctx {
        let mut c = self.clone();
        if let Some(&i) = c.index.get(f) {
            c.facts[i].used = true;
        }
        c
    }
}

/// Rough size of a proof term, used to rank alternatives.
fn weight(t: &Tm) -> usize {
    t.size()
}

impl Prover {
    fn entails(&self, ctx: &Ctx, f: &Formula) -> bool {
        ctx.mask & !self.tables.mask(f) & self.tables.full == 0
    }

    fn add(&self, ctx: &mut Ctx, f: Formula, t: Tm) {
        let mut queue = vec![(f, t)];
        while let Some((f, t)) = queue.pop() {
            if ctx.has(&f) {
                continue;
            }
            ctx.mask &= self.tables.mask(&f);
            ctx.index.insert(f.clone(), ctx.facts.len());
            ctx.facts.push(Fact { formula: f.clone(), term: t.clone(), used: false });
            self.consequences(ctx, &f, &t, &mut queue);
            // interactions with facts already present
            for fact in ctx.facts.clone() {
                if let Some((a, b)) = fact.formula.as_binary(IMP) {
                    if *a == f && !ctx.has(b) {
                        queue.push((b.clone(), Tm::app(&fact.term, &t)));
                    }
                }
                if let Some(inner) = fact.formula.as_unary(NOT) {
                    if let Some((a, b)) = inner.as_binary(AND) {
                        if *a == f && !ctx.has(&neg(b)) {
                            queue.push((neg(b), not_right(a, b, &t, &fact.term)));
                        } else if *b == f && !ctx.has(&neg(a)) {
                            queue.push((neg(a), not_left(a, b, &t, &fact.term, ctx.next)));
                        }
                    }
                }
            }
        }
    }

    /// Immediate consequences of a new fact `f` proved by `t`.
    fn consequences(&self, ctx: &Ctx, f: &Formula, t: &Tm, queue: &mut Vec<(Formula, Tm)>) {
        if let Some((a, b)) = f.as_binary(AND) {
            queue.push((a.clone(), Tm::app(&Tm::fst(a, b), t)));
            queue.push((b.clone(), Tm::app(&Tm::snd(a, b), t)));
        } else if let Some((a, b)) = f.as_binary(IMP) {
            if let Some(ta) = ctx.get(a) {
                queue.push((b.clone(), Tm::app(t, ta)));
            }
        } else if let Some(inner) = f.as_unary(NOT) {
            if let Some(a) = inner.as_unary(NOT) {
                queue.push((a.clone(), Tm::app(&Tm::dne(a), t)));
            } else if let Some((a, b)) = inner.as_binary(OR) {
                let r = |x: &Formula, inj: Tm| Tm::app2(&Tm::refute(x, inner), &inj, &Tm::app(&Tm::k(f, x), t));
                queue.push((neg(a), r(a, Tm::inl(a, b))));
                queue.push((neg(b), r(b, Tm::inr(a, b))));
            } else if let Some((a, b)) = inner.as_binary(IMP) {
                if !self.config.extract {
                    let nb = Tm::app2(&Tm::refute(b, inner), &Tm::k(b, a), &Tm::app(&Tm::k(f, b), t));
                    queue.push((neg(b), nb));
                    return;
                }
                let nb = Tm::app2(&Tm::refute(b, inner), &Tm::k(b, a), &Tm::app(&Tm::k(f, b), t));
                queue.push((neg(b), nb));
                let (y, z) = (ctx.next, ctx.next + 1);
                let na = neg(a);
                let body = Tm::absurd(b, &Tm::hyp(z, a.clone()), &Tm::hyp(y, na.clone()));
                let lemma = Tm::lam(y, &na, &Tm::lam(z, a, &body));
                let nna = Tm::app2(&Tm::refute(&na, inner), &lemma, &Tm::app(&Tm::k(f, &na), t));
                queue.push((a.clone(), Tm::app(&Tm::dne(a), &nna)));
            } else if let Some((a, b)) = inner.as_binary(AND) {
                if let Some(ta) = ctx.get(a) {
                    queue.push((neg(b), not_right(a, b, ta, t)));
                } else if let Some(tb) = ctx.get(b) {
                    queue.push((neg(a), not_left(a, b, tb, t, ctx.next)));
                }
            }
        }
    }

    fn with_hyp(&self, ctx: &Ctx, f: &Formula) -> (Ctx, u32) {
        let mut c = ctx.clone();
        let x = c.next;
        c.next += 1;
        self.add(&mut c, f.clone(), Tm::hyp(x, f.clone()));
        (c, x)
    }

    fn with_fact(&self, ctx: &Ctx, f: &Formula, t: Tm) -> Ctx {
        let mut c = ctx.clone();
        self.add(&mut c, f.clone(), t);
        c
    }

    fn prove(&self, ctx: &Ctx, g: &Formula) -> Option<Tm> {
        debug_assert!(self.entails(ctx, g), "subgoal {g} is not entailed");
        if ctx.next > MAX_DEPTH {
            return None;
        }
        if let Some(t) = ctx.get(g) {
            return Some(t.clone());
        }
        if let Some((x, nx)) = ctx.pair() {
            return Some(Tm::absurd(g, &x, &nx));
        }
        if let Some((a, b)) = g.as_binary(IMP) {
            if self.config.lift && ctx.mask != 0 && self.entails(ctx, b) {
                if let Some(tb) = self.prove(ctx, b) {
                    return Some(Tm::app(&Tm::k(b, a), &tb));
                }
            }
            let (c, x) = self.with_hyp(ctx, a);
            return Some(Tm::lam(x, a, &self.prove(&c, b)?));
        }
        if let Some((a, b)) = g.as_binary(AND) {
            return Some(Tm::app2(&Tm::pair(a, b), &self.prove(ctx, a)?, &self.prove(ctx, b)?));
        }
        if let Some(a) = g.as_unary(NOT) {
            let (c, x) = self.with_hyp(ctx, a);
            let (tx, tnx) = self.contra(&c)?;
            return Some(Tm::app2(&Tm::refute(a, tx.ty()), &Tm::lam(x, a, &tx), &Tm::lam(x, a, &tnx)));
        }
        if let Some((a, b)) = g.as_binary(OR) {
            if self.entails(ctx, a) {
                if let Some(ta) = self.prove(ctx, a) {
                    return Some(Tm::app(&Tm::inl(a, b), &ta));
                }
            }
            if self.entails(ctx, b) {
                if let Some(tb) = self.prove(ctx, b) {
                    return Some(Tm::app(&Tm::inr(a, b), &tb));
                }
            }
        }
        let or_goal = g.as_binary(OR).is_some();
        if !(or_goal && self.config.reductio_first) {
            if let Some(t) = self.left(ctx, g) {
                return Some(t);
            }
        }
        let ng = neg(g);
        if ctx.has(&ng) {
            return None;
        }
        let (c, x) = self.with_hyp(ctx, &ng);
        let (tx, tnx) = self.contra(&c)?;
        let nng = Tm::app2(&Tm::refute(&ng, tx.ty()), &Tm::lam(x, &ng, &tx), &Tm::lam(x, &ng, &tnx));
        Some(Tm::app(&Tm::dne(g), &nng))
    }

    /// Tries the left rules toward `g` in turn.
    fn left(&self, ctx: &Ctx, g: &Formula) -> Option<Tm> {
        for fact in ctx.facts.iter().filter(|f| !f.used) {
            if let Some((a, b)) = fact.formula.as_binary(IMP) {
                if !ctx.has(b) && self.entails(ctx, a) {
                    let c = ctx.mark(&fact.formula);
                    let Some(ta) = self.prove(&c, a) else { continue };
                    let c = self.with_fact(&c, b, Tm::app(&fact.term, &ta));
                    if let Some(t) = self.prove(&c, g) {
                        return Some(t);
                    }
                }
            }
        }
        for fact in ctx.facts.iter().filter(|f| !f.used) {
            if let Some((a, b)) = fact.formula.as_binary(OR) {
                if !ctx.has(a) && !ctx.has(b) {
                    let c = ctx.mark(&fact.formula);
                    if let Some(t) = self.branch(&c, a, b, &fact.term, g) {
                        return Some(t);
                    }
                }
            }
        }
        None
    }

    fn branch(&self, ctx: &Ctx, a: &Formula, b: &Formula, t: &Tm, g: &Formula) -> Option<Tm> {
        let (ca, x) = self.with_hyp(ctx, a);
        let ta = self.prove(&ca, g)?;
        let (cb, y) = self.with_hyp(ctx, b);
        let tb = self.prove(&cb, g)?;
        Some(Tm::app(&Tm::app2(&Tm::cases(a, b, g), &Tm::lam(x, a, &ta), &Tm::lam(y, b, &tb)), t))
    }

    /// A pair `X`, `¬X` from an unsatisfiable context.
    fn contra(&self, ctx: &Ctx) -> Option<(Tm, Tm)> {
        debug_assert_eq!(ctx.mask, 0);
        if ctx.next > MAX_DEPTH {
            return None;
        }
        if let Some(p) = ctx.pair() {
            return Some(p);
        }
        let mut negs: Vec<&Fact> =
            ctx.facts.iter().filter(|f| !f.used && f.formula.as_unary(NOT).is_some()).collect();
        negs.sort_by_key(|f| f.formula.size());
        if self.config.large_first {
            negs.reverse();
        }
        for fact in negs {
            let y = fact.formula.as_unary(NOT).expect("filtered");
            let c = ctx.mark(&fact.formula);
            if let Some(ty) = self.prove(&c, y) {
                return Some((ty, fact.term.clone()));
            }
        }
        for fact in ctx.facts.iter().filter(|f| !f.used) {
            if let Some((a, b)) = fact.formula.as_binary(IMP) {
                if !ctx.has(b) {
                    let c = ctx.mark(&fact.formula);
                    let ta = self.prove(&c, a)?;
                    let c = self.with_fact(&c, b, Tm::app(&fact.term, &ta));
                    return self.contra(&c);
                }
            }
        }
        for fact in ctx.facts.iter().filter(|f| !f.used) {
            if let Some((a, b)) = fact.formula.as_binary(OR) {
                if !ctx.has(a) && !ctx.has(b) {
                    let c = ctx.mark(&fact.formula);
                    let (ca, x) = self.with_hyp(&c, a);
                    let (za, nza) = self.contra(&ca)?;
                    let z = za.ty().clone();
                    let nz = neg(&z);
                    let (cb, y) = self.with_hyp(&c, b);
                    let (wb, nwb) = self.contra(&cb)?;
                    let join = |ta: &Tm, tb: &Tm, goal: &Formula| {
                        Tm::app(
                            &Tm::app2(&Tm::cases(a, b, goal), &Tm::lam(x, a, ta), &Tm::lam(y, b, tb)),
                            &fact.term,
                        )
                    };
                    let tz = join(&za, &Tm::absurd(&z, &wb, &nwb), &z);
                    let tnz = join(&nza, &Tm::absurd(&nz, &wb, &nwb), &nz);
                    return Some((tz, tnz));
                }
            }
        }
        None
    }
}

/// ¬b from a : A and h : ¬(a∧b).
fn not_right(a: &Formula, b: &Formula, ta: &Tm, h: &Tm) -> Tm {
    let ab = Formula::and(a.clone(), b.clone());
    Tm::app2(&Tm::refute(b, &ab), &Tm::app(&Tm::pair(a, b), ta), &Tm::app(&Tm::k(h.ty(), b), h))
}

/// ¬a from b : B and h : ¬(a∧b).
fn not_left(a: &Formula, b: &Formula, tb: &Tm, h: &Tm, x: u32) -> Tm {
    let ab = Formula::and(a.clone(), b.clone());
    let intro = Tm::lam(x, a, &Tm::app2(&Tm::pair(a, b), &Tm::hyp(x, a.clone()), tb));
    Tm::app2(&Tm::refute(a, &ab), &intro, &Tm::app(&Tm::k(h.ty(), a), h))
}

/// A proof term for `goal` from `premises`, if the goal is a classical
/// consequence and the formulas are in the supported fragment.
pub(crate) fn classical_term(premises: &[Formula], goal: &Formula) -> Option<Tm> {
    if !supports(goal) || !premises.iter().all(supports) {
        return None;
    }
    let mut vars: Vec<Sym> = goal.variables().into_iter().collect();
    for p in premises {
        for v in p.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
    }
    if vars.len() > MAX_VARS {
        return None;
    }
    let configs = (0..16u8).map(|b| Config {
        extract: b & 1 == 0,
        lift: b & 2 == 0,
        reductio_first: b & 4 != 0,
        large_first: b & 8 != 0,
    });
    let mut best: Option<(usize, Tm)> = None;
    for config in configs {
        let prover = Prover { tables: Tables::new(vars.clone()), config };
        let mut ctx = Ctx { facts: Vec::new(), index: HashMap::new(), mask: prover.tables.full, next: 0 };
        for p in premises {
            prover.add(&mut ctx, p.clone(), Tm::prem(p.clone()));
        }
        if !prover.entails(&ctx, goal) {
            return None;
        }
        if let Some(t) = prover.prove(&ctx, goal) {
            let len = t.cost();
            if best.as_ref().is_none_or(|(l, _)| len < *l) {
                best = Some((len, t));
            }
        }
    }
    best.map(|(_, t)| t)
}

/// Compiled Hilbert derivation of `goal` from `premises` in the classical calculus.
pub fn prove_classical(premises: &[Formula], goal: &Formula) -> Option<super::Derivation> {
    classical_term(premises, goal).map(|t| t.to_derivation(premises))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::derivation::check_derivation;
    use crate::calculus::rules::hilbert_cl;
    use crate::language::f;

    fn lines(goal: &str) -> usize {
        let g = f(goal);
        let t = classical_term(&[], &g).unwrap_or_else(|| panic!("no proof of {goal}"));
        let d = t.to_derivation(&[]);
        assert!(check_derivation(&hilbert_cl(), &d, &g).is_verified(), "{goal}\n{d}");
        d.len()
    }

    #[test]
    fn small_tautologies() {
        assert_eq!(lines("(p→p)"), 5);
        for g in ["(p∨¬p)", "(((p→q)→p)→p)", "((p→q)∨(q→p))", "(¬¬p→p)", "(p→¬¬p)", "(¬(p∧q)→(¬p∨¬q))"] {
            lines(g);
        }
    }

    #[test]
    fn non_consequences_are_declined() {
        assert!(classical_term(&[], &f("(p→q)")).is_none());
        assert!(classical_term(&[f("p")], &f("(q∨p)")).is_some());
    }
}
