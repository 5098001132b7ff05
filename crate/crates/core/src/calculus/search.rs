//! Bounded proof search: iterative deepening over rule applications, the
//! deduction theorem for implications, and the classical prover for
//! calculi containing the classical axioms.

use std::collections::HashMap;
use std::rc::Rc;

use super::classical::{prove_classical, supports};
use super::derivation::{check_derivation, Derivation, Justification, Step};
use super::rules::{axiom_schema, hilbert_cl, modus_ponens, Calculus, StructuralRule};
use crate::language::{Formula, Metaformula, Sym};
use crate::matrix::{b2, matrix_consequence};
use crate::substitution::Instantiation;

/// Search limits: derivation length and degree of instantiation terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_steps: usize,
    pub max_degree: usize,
}

impl Limits {
    /// 40 steps, instantiation terms of degree at most `goal` degree + 4.
    pub fn for_goal(goal: &Formula) -> Limits {
        Limits { max_steps: 40, max_degree: goal.degree() + 4 }
    }
}

/// Largest proof tree tried by plain iterative deepening.
const TREE_CAP: usize = 9;

#[derive(Clone, Debug)]
enum T {
    Hole(usize),
    Ground(Formula),
    App(Sym, Rc<[T]>),
}

struct Bindings {
    slots: Vec<Option<T>>,
    trail: Vec<usize>,
}

impl Bindings {
    fn fresh(&mut self, n: usize) -> usize {
        let base = self.slots.len();
        self.slots.resize(base + n, None);
        base
    }

    fn walk(&self, t: &T) -> T {
        let mut t = t.clone();
        while let T::Hole(i) = t {
            match &self.slots[i] {
                Some(u) => t = u.clone(),
                None => break,
            }
        }
        t
    }

    fn bind(&mut self, i: usize, t: T) {
        self.slots[i] = Some(t);
        self.trail.push(i);
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let i = self.trail.pop().expect("above mark");
            self.slots[i] = None;
        }
    }

    fn occurs(&self, i: usize, t: &T) -> bool {
        match self.walk(t) {
            T::Hole(j) => i == j,
            T::Ground(_) => false,
            T::App(_, args) => args.iter().any(|a| self.occurs(i, a)),
        }
    }

    fn unify(&mut self, a: &T, b: &T) -> bool {
        let (a, b) = (self.walk(a), self.walk(b));
        match (&a, &b) {
            (T::Hole(i), T::Hole(j)) if i == j => true,
            (T::Hole(i), _) => !self.occurs(*i, &b) && {
                self.bind(*i, b.clone());
                true
            },
            (_, T::Hole(j)) => !self.occurs(*j, &a) && {
                self.bind(*j, a.clone());
                true
            },
            (T::Ground(f), T::Ground(g)) => f == g,
            (T::Ground(f), T::App(op, args)) | (T::App(op, args), T::Ground(f)) => match f {
                Formula::App(fop, fargs) if fop == op && fargs.len() == args.len() => {
                    fargs.iter().zip(args.iter()).all(|(x, y)| self.unify(&T::Ground(x.clone()), y))
                }
                _ => false,
            },
            (T::App(o1, a1), T::App(o2, a2)) => {
                o1 == o2 && a1.len() == a2.len() && a1.iter().zip(a2.iter()).all(|(x, y)| self.unify(x, y))
            }
        }
    }

    /// The formula denoted by `t`, reading unbound holes as `filler`.
    fn resolve(&self, t: &T, filler: &Formula) -> Formula {
        match self.walk(t) {
            T::Hole(_) => filler.clone(),
            T::Ground(f) => f,
            T::App(op, args) => Formula::App(op, args.iter().map(|a| self.resolve(a, filler)).collect::<Vec<_>>().into()),
        }
    }

    fn is_ground(&self, t: &T) -> bool {
        match self.walk(t) {
            T::Hole(_) => false,
            T::Ground(_) => true,
            T::App(_, args) => args.iter().all(|a| self.is_ground(a)),
        }
    }
}

/// A rule with metavariables numbered for renaming apart.
struct Compiled {
    premises: Vec<Meta>,
    conclusion: Meta,
    metas: Vec<Sym>,
    order: Vec<usize>,
}

#[derive(Clone)]
enum Meta {
    Var(usize),
    Const(Sym),
    App(Sym, Vec<Meta>),
}

fn compile(r: &StructuralRule) -> Compiled {
    let metas = r.metavariables();
    fn go(m: &Metaformula, metas: &[Sym]) -> Meta {
        match m {
            Metaformula::Meta(v) => Meta::Var(metas.iter().position(|w| w == v).expect("collected")),
            Metaformula::Const(c) => Meta::Const(c.clone()),
            Metaformula::App(op, args) => Meta::App(op.clone(), args.iter().map(|a| go(a, metas)).collect()),
        }
    }
    let premises: Vec<Meta> = r.premises.iter().map(|p| go(p, &metas)).collect();
    let mut order: Vec<usize> = (0..premises.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(r.premises[i].degree()));
    Compiled { conclusion: go(&r.conclusion, &metas), premises, metas, order }
}

fn rename(m: &Meta, base: usize) -> T {
    match m {
        Meta::Var(i) => T::Hole(base + i),
        Meta::Const(c) => T::Ground(Formula::Const(c.clone())),
        Meta::App(op, args) => T::App(op.clone(), args.iter().map(|a| rename(a, base)).collect::<Vec<_>>().into()),
    }
}

#[derive(Clone, Copy)]
enum Choice {
    Premise(usize),
    Rule(usize, usize),
}

struct Tree {
    formula: Formula,
    choice: Choice,
    inst: Option<Instantiation>,
    children: Vec<Tree>,
}

struct Searcher<'a> {
    calc: &'a Calculus,
    rules: Vec<Compiled>,
    premises: &'a [Formula],
    b: Bindings,
    choices: Vec<Choice>,
    sound: bool,
    refuted: HashMap<Formula, bool>,
    root: T,
    filler: Formula,
    limits: Limits,
    fresh: Vec<Vec<Sym>>,
}

impl Searcher<'_> {
    fn hopeless(&mut self, goal: &T) -> bool {
        if !self.sound || !self.b.is_ground(goal) {
            return false;
        }
        let f = self.b.resolve(goal, &self.filler);
        if let Some(&r) = self.refuted.get(&f) {
            return r;
        }
        let r = supports(&f) && !matrix_consequence(&b2(), self.premises, &f).unwrap_or(true);
        self.refuted.insert(f, r);
        r
    }

    /// Proves every goal in `goals` using exactly `budget` tree nodes.
    fn solve(&mut self, goals: &mut Vec<T>, budget: usize) -> bool {
        let Some(goal) = goals.pop() else {
            return budget == 0 && self.accept();
        };
        if budget < goals.len() + 1 || self.hopeless(&goal) {
            goals.push(goal);
            return false;
        }
        let mark = self.b.trail.len();
        for i in 0..self.premises.len() {
            if self.b.unify(&goal, &T::Ground(self.premises[i].clone())) {
                self.choices.push(Choice::Premise(i));
                if self.solve(goals, budget - 1) {
                    return true;
                }
                self.choices.pop();
            }
            self.b.undo(mark);
        }
        for r in 0..self.rules.len() {
            let npremises = self.rules[r].premises.len();
            if npremises + goals.len() + 1 > budget {
                continue;
            }
            let base = self.b.fresh(self.rules[r].metas.len());
            if self.b.unify(&goal, &rename(&self.rules[r].conclusion, base)) {
                self.choices.push(Choice::Rule(r, base));
                let depth = goals.len();
                for &i in self.rules[r].order.iter().rev() {
                    goals.push(rename(&self.rules[r].premises[i], base));
                }
                if self.solve(goals, budget - 1) {
                    return true;
                }
                goals.truncate(depth);
                self.choices.pop();
            }
            self.b.undo(mark);
        }
        goals.push(goal);
        false
    }

    /// Final check once every goal is closed: the degree cap on introduced terms.
    fn accept(&self) -> bool {
        self.fits(&self.tree())
    }

    fn fits(&self, t: &Tree) -> bool {
        let own = match (t.choice, &t.inst) {
            (Choice::Rule(r, _), Some(i)) => {
                self.fresh[r].iter().all(|v| i.get(v).is_none_or(|f| f.degree() <= self.limits.max_degree))
            }
            _ => true,
        };
        own && t.children.iter().all(|c| self.fits(c))
    }

    fn tree(&self) -> Tree {
        let mut it = self.choices.iter().copied();
        self.build(&self.root.clone(), &mut it)
    }

    fn build(&self, goal: &T, it: &mut impl Iterator<Item = Choice>) -> Tree {
        let formula = self.b.resolve(goal, &self.filler);
        match it.next().expect("one choice per node") {
            Choice::Premise(i) => Tree { formula, choice: Choice::Premise(i), inst: None, children: Vec::new() },
            Choice::Rule(r, base) => {
                let rule = &self.rules[r];
                let mut children: Vec<Option<Tree>> = (0..rule.premises.len()).map(|_| None).collect();
                for &i in &rule.order {
                    children[i] = Some(self.build(&rename(&rule.premises[i], base), it));
                }
                let inst = Instantiation::from_pairs(
                    rule.metas.iter().enumerate().map(|(k, m)| (m.clone(), self.b.resolve(&T::Hole(base + k), &self.filler))),
                );
                Tree {
                    formula,
                    choice: Choice::Rule(r, base),
                    inst: Some(inst),
                    children: children.into_iter().map(|c| c.expect("built")).collect(),
                }
            }
        }
    }
}

/// Lines of a proof tree: premises of a rule before its conclusion, the
/// minor premise of an inner application before the outer one.
struct Lines<'a> {
    calc: &'a Calculus,
    steps: Vec<Step>,
    index: HashMap<Formula, usize>,
}

impl Lines<'_> {
    fn emit(&mut self, t: &Tree) -> usize {
        if let Some(&i) = self.index.get(&t.formula) {
            return i;
        }
        let step = match t.choice {
            Choice::Premise(_) => Step::premise(t.formula.clone()),
            Choice::Rule(r, _) => {
                if let [_, major] = &t.children[..] {
                    if let [inner, _] = &major.children[..] {
                        self.emit(inner);
                    }
                }
                let from: Vec<usize> = t.children.iter().map(|c| self.emit(c)).collect();
                if let Some(&i) = self.index.get(&t.formula) {
                    return i;
                }
                Step::rule(t.formula.clone(), &self.calc.rules[r].name, from, t.inst.clone())
            }
        };
        self.steps.push(step);
        let i = self.steps.len() - 1;
        self.index.insert(t.formula.clone(), i);
        i
    }
}

/// Shortest proof tree of at most `cap` nodes, by iterative deepening.
fn deepen(c: &Calculus, premises: &[Formula], goal: &Formula, limits: Limits, cap: usize) -> Option<Derivation> {
    let filler = goal
        .variables()
        .into_iter()
        .next()
        .or_else(|| premises.iter().flat_map(|p| p.variables()).next())
        .map(Formula::Var)
        .unwrap_or_else(|| Formula::var("p"));
    let sound = c.rules.iter().all(|r| crate::calculus::soundness::rule_is_sound(r, &b2()).unwrap_or(false));
    let mut s = Searcher {
        calc: c,
        rules: c.rules.iter().map(compile).collect(),
        premises,
        b: Bindings { slots: Vec::new(), trail: Vec::new() },
        choices: Vec::new(),
        sound,
        refuted: HashMap::new(),
        root: T::Ground(goal.clone()),
        filler,
        limits,
        fresh: c.rules.iter().map(introduced).collect(),
    };
    for size in 1..=cap {
        s.b = Bindings { slots: Vec::new(), trail: Vec::new() };
        s.choices.clear();
        if s.solve(&mut vec![T::Ground(goal.clone())], size) {
            let tree = s.tree();
            let mut lines = Lines { calc: s.calc, steps: Vec::new(), index: HashMap::new() };
            let last = lines.emit(&tree);
            lines.steps.truncate(last + 1);
            let d = Derivation::new(premises.to_vec(), lines.steps);
            if d.len() <= limits.max_steps {
                return Some(d);
            }
        }
    }
    None
}

/// Turns a derivation of `b` from `X ∪ {a}` into one of `a→b` from `X`;
/// it needs the first two axiom schemata and modus ponens, and no other
/// rule with premises.
pub fn deduction(c: &Calculus, d: &Derivation, a: &Formula) -> Option<Derivation> {
    let (k, s, mp) = (axiom_schema(1)?, axiom_schema(2)?, modus_ponens());
    let name_of = |r: &StructuralRule| c.rules.iter().find(|x| x.premises == r.premises && x.conclusion == r.conclusion).map(|x| x.name.clone());
    let (kn, sn, mpn) = (name_of(&k)?, name_of(&s)?, name_of(&mp)?);
    let premises: Vec<Formula> = d.premises.iter().filter(|p| *p != a).cloned().collect();
    let imp = |x: &Formula, y: &Formula| Formula::imp(x.clone(), y.clone());
    let mut out: Vec<Step> = Vec::new();
    let mut index: HashMap<Formula, usize> = HashMap::new();
    let mut push = |step: Step, out: &mut Vec<Step>| -> usize {
        if let Some(&i) = index.get(&step.formula) {
            return i;
        }
        out.push(step);
        index.insert(out.last().expect("pushed").formula.clone(), out.len() - 1);
        out.len() - 1
    };
    let inst = |pairs: &[(&str, &Formula)]| Some(Instantiation::from_pairs(pairs.iter().map(|(m, f)| (Sym::from(*m), (*f).clone()))));
    let mut lifted: Vec<usize> = Vec::new();
    for step in &d.steps {
        let g = &step.formula;
        let line = if g == a {
            let aa = imp(a, a);
            let k1 = push(Step::rule(imp(a, &aa), &kn, vec![], inst(&[("α", a), ("β", a)])), &mut out);
            let k2 = push(Step::rule(imp(a, &imp(&aa, a)), &kn, vec![], inst(&[("α", a), ("β", &aa)])), &mut out);
            let s_ty = imp(&imp(a, &aa), &imp(&imp(a, &imp(&aa, a)), &aa));
            let si = push(Step::rule(s_ty.clone(), &sn, vec![], inst(&[("α", a), ("β", &aa), ("γ", a)])), &mut out);
            let mid = imp(&imp(a, &imp(&aa, a)), &aa);
            let m1 = push(Step::rule(mid.clone(), &mpn, vec![k1, si], inst(&[("α", &imp(a, &aa)), ("β", &mid)])), &mut out);
            push(Step::rule(aa.clone(), &mpn, vec![k2, m1], inst(&[("α", &imp(a, &imp(&aa, a))), ("β", &aa)])), &mut out)
        } else {
            match &step.by {
                Justification::Rule { rule, from, .. } if *rule == mpn => {
                    let (minor, major) = (&d.steps[from[0]].formula, g);
                    let (lm, lj) = (lifted[from[0]], lifted[from[1]]);
                    let s_ty = imp(&imp(a, minor), &imp(&imp(a, &imp(minor, major)), &imp(a, major)));
                    let si = push(Step::rule(s_ty, &sn, vec![], inst(&[("α", a), ("β", minor), ("γ", major)])), &mut out);
                    let mid = imp(&imp(a, &imp(minor, major)), &imp(a, major));
                    let m1 = push(Step::rule(mid.clone(), &mpn, vec![lm, si], inst(&[("α", &imp(a, minor)), ("β", &mid)])), &mut out);
                    let am = imp(a, major);
                    push(Step::rule(am.clone(), &mpn, vec![lj, m1], inst(&[("α", &imp(a, &imp(minor, major))), ("β", &am)])), &mut out)
                }
                Justification::Rule { from, .. } if !from.is_empty() => return None,
                by => {
                    let own = push(Step { formula: g.clone(), by: by.clone() }, &mut out);
                    let kt = imp(g, &imp(a, g));
                    let ki = push(Step::rule(kt, &kn, vec![], inst(&[("α", g), ("β", a)])), &mut out);
                    push(Step::rule(imp(a, g), &mpn, vec![own, ki], inst(&[("α", g), ("β", &imp(a, g))])), &mut out)
                }
            }
        };
        lifted.push(line);
    }
    let last = *lifted.last()?;
    out.truncate(last + 1);
    Some(Derivation::new(premises, out))
}

fn classical_rules_present(c: &Calculus) -> bool {
    hilbert_cl().rules.iter().all(|r| c.has_rule(r))
}

fn renamed_for(c: &Calculus, d: Derivation) -> Option<Derivation> {
    let cl = hilbert_cl();
    let mut map = HashMap::new();
    for r in &cl.rules {
        let own = c.rules.iter().find(|x| x.premises == r.premises && x.conclusion == r.conclusion)?;
        map.insert(r.name.clone(), own.name.clone());
    }
    let steps = d
        .steps
        .into_iter()
        .map(|mut s| {
            if let Justification::Rule { rule, .. } = &mut s.by {
                *rule = map[rule.as_str()].clone();
            }
            s
        })
        .collect();
    Some(Derivation::new(d.premises, steps))
}

/// Metavariables of `r` occurring in none of its premises: the terms a
/// rule application introduces rather than inherits from cited lines.
fn introduced(r: &StructuralRule) -> Vec<Sym> {
    let inherited: Vec<Sym> = r.premises.iter().flat_map(|p| p.metavariables()).collect();
    r.conclusion.metavariables().into_iter().filter(|v| !inherited.contains(v)).collect()
}

/// Largest degree of a term introduced by some step of `d`.
pub fn introduced_degree(c: &Calculus, d: &Derivation) -> usize {
    d.steps
        .iter()
        .filter_map(|s| match &s.by {
            Justification::Rule { rule, inst: Some(i), .. } => {
                let fresh = introduced(c.rule(rule)?);
                fresh.iter().filter_map(|v| i.get(v)).map(Formula::degree).max()
            }
            _ => None,
        })
        .max()
        .unwrap_or(0)
}

/// A derivation of `goal` from `premises` in `c` of at most
/// `limits.max_steps` lines, or `None`; `None` is not evidence of
/// underivability. The degree cap bounds the terms that enumeration may
/// introduce; goal-directed routes build their instances from subformulas
/// of the goal and premises and are not subject to it.
pub fn bounded_search(c: &Calculus, premises: &[Formula], goal: &Formula, limits: Limits) -> Option<Derivation> {
    let within = |d: &Derivation| d.len() <= limits.max_steps && check_derivation(c, d, goal).is_verified();
    if let Some(d) = deepen(c, premises, goal, limits, TREE_CAP.min(limits.max_steps)) {
        return Some(d);
    }
    if classical_rules_present(c) {
        if let Some(d) = prove_classical(premises, goal).and_then(|d| renamed_for(c, d)) {
            if within(&d) {
                return Some(d);
            }
        }
    }
    if let Some((a, b)) = goal.as_binary(crate::language::IMP) {
        let mut wider = premises.to_vec();
        if !wider.contains(a) {
            wider.push(a.clone());
        }
        let inner = Limits { max_steps: limits.max_steps, max_degree: limits.max_degree };
        if let Some(d) = deepen(c, &wider, b, inner, TREE_CAP.min(limits.max_steps)) {
            if let Some(d) = deduction(c, &d, a) {
                if within(&d) {
                    return Some(d);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::rules::{hilbert_lc, nd_rules};
    use crate::language::f;

    fn search(c: &Calculus, xs: &[&str], g: &str) -> Option<Derivation> {
        let xs: Vec<Formula> = xs.iter().map(|x| f(x)).collect();
        let g = f(g);
        let d = bounded_search(c, &xs, &g, Limits::for_goal(&g))?;
        assert!(check_derivation(c, &d, &g).is_verified(), "{d}");
        Some(d)
    }

    #[test]
    fn identity_in_five_steps() {
        let d = search(&hilbert_cl(), &[], "(p→p)").unwrap();
        let lines: Vec<String> = d.steps.iter().map(|s| s.formula.to_string()).collect();
        assert_eq!(
            lines,
            [
                "(p→(p→p))",
                "(p→((p→p)→p))",
                "((p→(p→p))→((p→((p→p)→p))→(p→p)))",
                "((p→((p→p)→p))→(p→p))",
                "(p→p)"
            ]
        );
    }

    #[test]
    fn conjunction_from_its_parts() {
        let d = search(&nd_rules(), &["p", "q"], "(p∧q)").unwrap();
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn atoms_are_not_theorems() {
        assert!(search(&hilbert_cl(), &[], "p").is_none());
    }

    #[test]
    fn classical_fallback() {
        let d = search(&hilbert_cl(), &[], "(p∨¬p)").unwrap();
        assert!(d.len() <= 40);
    }

    #[test]
    fn deduction_theorem_route() {
        let c = hilbert_lc();
        let d = search(&c, &[], "((p∧q)→(q∧p))").unwrap();
        assert!(d.len() <= 40);
        let inner = deepen(&c, &[f("p")], &f("(q→p)"), Limits::for_goal(&f("(q→p)")), 5).unwrap();
        let lifted = deduction(&c, &inner, &f("p")).unwrap();
        assert!(check_derivation(&c, &lifted, &f("(p→(q→p))")).is_verified());
    }
}
