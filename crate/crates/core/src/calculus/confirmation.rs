//! Confirmation trees for sequents `X ⊢ α` built from derivations in the
//! rules without discharge, the three hyperrules, and combinations of
//! confirmed sequents with a further derivation.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use super::derivation::{check_derivation, Derivation, Justification, Step, Verdict};
use super::rules::nd_rules;
use super::CalculusError;
use crate::language::{formula_from_json, formula_to_json, Formula, AND, IMP, NOT, OR};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Hyperrule {
    /// `X,α ⊢ β / X ⊢ α→β`
    Ci,
    /// `X,α ⊢ β` and `X,α ⊢ ¬β` / `X ⊢ ¬α`
    Cii,
    /// `X,α ⊢ γ` and `X,β ⊢ γ` / `X,α∨β ⊢ γ`
    Ciii,
}

impl Hyperrule {
    pub fn name(self) -> &'static str {
        match self {
            Hyperrule::Ci => "c-i",
            Hyperrule::Cii => "c-ii",
            Hyperrule::Ciii => "c-iii",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "c-i" => Some(Hyperrule::Ci),
            "c-ii" => Some(Hyperrule::Cii),
            "c-iii" => Some(Hyperrule::Ciii),
            _ => None,
        }
    }

    fn arity(self) -> usize {
        match self {
            Hyperrule::Ci => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Confirmed {
    /// A derivation of the conclusion from the premises.
    Derivation(Derivation),
    /// A hyperrule applied to confirmed sequents.
    Hyperrule(Hyperrule, Vec<Confirmation>),
    /// Confirmed `X ⊢ αᵢ` together with a derivation of the conclusion from `X, α₁…αₙ`.
    Combination(Vec<Confirmation>, Derivation),
}

/// A node asserting `premises ⊢ conclusion`, with its justification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Confirmation {
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
    pub by: Confirmed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfirmationFailure {
    Derivation(Verdict),
    UnknownPremise(Formula),
    WrongChildCount { expected: usize, found: usize },
    Shape(String),
}

impl fmt::Display for ConfirmationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfirmationFailure::Derivation(Verdict::FirstFailure { step, reason }) => {
                write!(f, "embedded derivation fails at step {}: {reason}", step + 1)
            }
            ConfirmationFailure::Derivation(Verdict::Verified) => write!(f, "embedded derivation"),
            ConfirmationFailure::UnknownPremise(p) => write!(f, "derivation uses {p}, which is not available"),
            ConfirmationFailure::WrongChildCount { expected, found } => {
                write!(f, "expected {expected} confirmed premises, found {found}")
            }
            ConfirmationFailure::Shape(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfirmationVerdict {
    Verified,
    /// `node` counts nodes in post-order from 1.
    FirstFailure { node: usize, reason: ConfirmationFailure },
}

impl ConfirmationVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, ConfirmationVerdict::Verified)
    }
}

type Set = BTreeSet<Formula>;

fn set(xs: &[Formula]) -> Set {
    xs.iter().cloned().collect()
}

fn with(x: &Set, f: &Formula) -> Set {
    let mut s = x.clone();
    s.insert(f.clone());
    s
}

fn shape(msg: String) -> ConfirmationFailure {
    ConfirmationFailure::Shape(msg)
}

fn check_embedded(d: &Derivation, available: &Set, goal: &Formula) -> Result<(), ConfirmationFailure> {
    if let Some(p) = d.premises.iter().find(|p| !available.contains(p)) {
        return Err(ConfirmationFailure::UnknownPremise(p.clone()));
    }
    match check_derivation(&nd_rules(), d, goal) {
        Verdict::Verified => Ok(()),
        v => Err(ConfirmationFailure::Derivation(v)),
    }
}

fn check_hyperrule(node: &Confirmation, rule: Hyperrule, kids: &[Confirmation]) -> Result<(), ConfirmationFailure> {
    if kids.len() != rule.arity() {
        return Err(ConfirmationFailure::WrongChildCount { expected: rule.arity(), found: kids.len() });
    }
    let x = set(&node.premises);
    let got: Vec<Set> = kids.iter().map(|k| set(&k.premises)).collect();
    match rule {
        Hyperrule::Ci => {
            let (a, b) = node
                .conclusion
                .as_binary(IMP)
                .ok_or_else(|| shape(format!("{} is not an implication", node.conclusion)))?;
            if got[0] != with(&x, a) {
                return Err(shape(format!("premises of the confirmed sequent must be X together with {a}")));
            }
            if kids[0].conclusion != *b {
                return Err(shape(format!("confirmed sequent must conclude {b}")));
            }
        }
        Hyperrule::Cii => {
            let a = node.conclusion.as_unary(NOT).ok_or_else(|| shape(format!("{} is not a negation", node.conclusion)))?;
            for g in &got {
                if *g != with(&x, a) {
                    return Err(shape(format!("premises of the confirmed sequents must be X together with {a}")));
                }
            }
            let b = &kids[0].conclusion;
            if kids[1].conclusion != Formula::not(b.clone()) {
                return Err(shape(format!("confirmed sequents must conclude {b} and ¬{b}")));
            }
        }
        Hyperrule::Ciii => {
            if kids.iter().any(|k| k.conclusion != node.conclusion) {
                return Err(shape(format!("confirmed sequents must conclude {}", node.conclusion)));
            }
            let fits = x.iter().filter_map(|d| d.as_binary(OR).map(|(a, b)| (d, a, b))).any(|(d, a, b)| {
                let mut rest = x.clone();
                rest.remove(d);
                [rest, x.clone()].iter().any(|base| got[0] == with(base, a) && got[1] == with(base, b))
            });
            if !fits {
                return Err(shape("no disjunctive premise α∨β with the sequents X,α and X,β confirmed".into()));
            }
        }
    }
    Ok(())
}

fn check_node(node: &Confirmation) -> Result<(), ConfirmationFailure> {
    let x = set(&node.premises);
    match &node.by {
        Confirmed::Derivation(d) => check_embedded(d, &x, &node.conclusion),
        Confirmed::Hyperrule(rule, kids) => check_hyperrule(node, *rule, kids),
        Confirmed::Combination(kids, d) => {
            if let Some(k) = kids.iter().find(|k| set(&k.premises) != x) {
                return Err(shape(format!("combined sequent concluding {} has other premises", k.conclusion)));
            }
            let mut available = x;
            available.extend(kids.iter().map(|k| k.conclusion.clone()));
            check_embedded(d, &available, &node.conclusion)
        }
    }
}

fn visit(node: &Confirmation, counter: &mut usize) -> Result<(), (usize, ConfirmationFailure)> {
    let kids: &[Confirmation] = match &node.by {
        Confirmed::Derivation(_) => &[],
        Confirmed::Hyperrule(_, k) | Confirmed::Combination(k, _) => k,
    };
    for k in kids {
        visit(k, counter)?;
    }
    *counter += 1;
    check_node(node).map_err(|e| (*counter, e))
}

/// Checks every node, children before parents.
pub fn check_confirmation(c: &Confirmation) -> ConfirmationVerdict {
    match visit(c, &mut 0) {
        Ok(()) => ConfirmationVerdict::Verified,
        Err((node, reason)) => ConfirmationVerdict::FirstFailure { node, reason },
    }
}

impl Confirmation {
    pub fn derived(premises: Vec<Formula>, conclusion: Formula, d: Derivation) -> Self {
        Confirmation { premises, conclusion, by: Confirmed::Derivation(d) }
    }

    pub fn hyperrule(premises: Vec<Formula>, conclusion: Formula, rule: Hyperrule, kids: Vec<Confirmation>) -> Self {
        Confirmation { premises, conclusion, by: Confirmed::Hyperrule(rule, kids) }
    }

    pub fn combination(premises: Vec<Formula>, conclusion: Formula, kids: Vec<Confirmation>, d: Derivation) -> Self {
        Confirmation { premises, conclusion, by: Confirmed::Combination(kids, d) }
    }

    pub fn children(&self) -> &[Confirmation] {
        match &self.by {
            Confirmed::Derivation(_) => &[],
            Confirmed::Hyperrule(_, k) | Confirmed::Combination(k, _) => k,
        }
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        1 + self.children().iter().map(Confirmation::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn children_mut(&mut self) -> &mut [Confirmation] {
        match &mut self.by {
            Confirmed::Derivation(_) => &mut [],
            Confirmed::Hyperrule(_, k) | Confirmed::Combination(k, _) => k,
        }
    }

    /// The node at post-order position `n` (from 1), mutably.
    pub fn node_mut(&mut self, n: usize) -> Option<&mut Confirmation> {
        let sizes: Vec<usize> = self.children().iter().map(Confirmation::len).collect();
        let mut offset = 0;
        for (i, size) in sizes.into_iter().enumerate() {
            if n <= offset + size {
                return self.children_mut()[i].node_mut(n - offset);
            }
            offset += size;
        }
        (n == offset + 1).then_some(self)
    }

    /// The same tree with `extra` added to the premises of every node.
    pub fn widen(&self, extra: &Formula) -> Confirmation {
        let mut premises = self.premises.clone();
        if !premises.contains(extra) {
            premises.push(extra.clone());
        }
        let by = match &self.by {
            Confirmed::Derivation(d) => Confirmed::Derivation(d.clone()),
            Confirmed::Hyperrule(r, k) => Confirmed::Hyperrule(*r, k.iter().map(|c| c.widen(extra)).collect()),
            Confirmed::Combination(k, d) => Confirmed::Combination(k.iter().map(|c| c.widen(extra)).collect(), d.clone()),
        };
        Confirmation { premises, conclusion: self.conclusion.clone(), by }
    }

    pub fn to_json(&self) -> Value {
        let by = match &self.by {
            Confirmed::Derivation(d) => json!({ "derivation": d.to_json() }),
            Confirmed::Hyperrule(r, k) => {
                json!({ "hyperrule": r.name(), "children": k.iter().map(Confirmation::to_json).collect::<Vec<_>>() })
            }
            Confirmed::Combination(k, d) => json!({
                "combination": {
                    "children": k.iter().map(Confirmation::to_json).collect::<Vec<_>>(),
                    "derivation": d.to_json(),
                }
            }),
        };
        json!({
            "premises": self.premises.iter().map(formula_to_json).collect::<Vec<_>>(),
            "conclusion": formula_to_json(&self.conclusion),
            "by": by,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, CalculusError> {
        let bad = |m: String| CalculusError::Malformed(m);
        let premises = v
            .get("premises")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("confirmation needs a `premises` array".into()))?
            .iter()
            .map(|p| formula_from_json(p).map_err(bad))
            .collect::<Result<Vec<_>, _>>()?;
        let conclusion =
            formula_from_json(v.get("conclusion").ok_or_else(|| bad("confirmation needs a `conclusion`".into()))?)
                .map_err(bad)?;
        let by = v.get("by").ok_or_else(|| bad("confirmation needs `by`".into()))?;
        let kids = |k: Option<&Value>| -> Result<Vec<Confirmation>, CalculusError> {
            k.and_then(Value::as_array)
                .ok_or_else(|| bad("`children` must be an array".into()))?
                .iter()
                .map(Confirmation::from_json)
                .collect()
        };
        let by = if let Some(d) = by.get("derivation") {
            Confirmed::Derivation(Derivation::from_json(d)?)
        } else if let Some(r) = by.get("hyperrule") {
            let name = r.as_str().unwrap_or_default();
            let rule = Hyperrule::from_name(name).ok_or_else(|| bad(format!("unknown hyperrule `{name}`")))?;
            Confirmed::Hyperrule(rule, kids(by.get("children"))?)
        } else if let Some(c) = by.get("combination") {
            let d = c.get("derivation").ok_or_else(|| bad("combination needs a derivation".into()))?;
            Confirmed::Combination(kids(c.get("children"))?, Derivation::from_json(d)?)
        } else {
            return Err(bad(format!("unknown justification {by}")));
        };
        Ok(Confirmation { premises, conclusion, by })
    }

    fn render(&self, f: &mut fmt::Formatter<'_>, counter: &mut usize) -> fmt::Result {
        for k in self.children() {
            k.render(f, counter)?;
        }
        *counter += 1;
        let xs: Vec<String> = self.premises.iter().map(|p| p.to_string()).collect();
        let how = match &self.by {
            Confirmed::Derivation(d) => format!("derivation, {} steps", d.len()),
            Confirmed::Hyperrule(r, _) => r.name().to_string(),
            Confirmed::Combination(k, d) => format!("{} confirmed, derivation of {} steps", k.len(), d.len()),
        };
        writeln!(f, "{:>3}. {{{}}} ⊢ {}  [{how}]", *counter, xs.join(", "), self.conclusion)
    }
}

impl fmt::Display for Confirmation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, &mut 0)
    }
}

fn premise_steps(d: &mut Vec<Step>, fs: &[&Formula]) {
    d.extend(fs.iter().map(|f| Step::premise((*f).clone())));
}

fn step(f: Formula, rule: &str, from: Vec<usize>) -> Step {
    Step { formula: f, by: Justification::Rule { rule: rule.to_string(), from, inst: None } }
}

/// `⊢ a→(b→(a∧b))`: the derivation `a, b, a∧b`, then the first hyperrule twice.
pub fn conjunction_confirmation(a: &Formula, b: &Formula) -> Confirmation {
    let ab = Formula::app(AND, vec![a.clone(), b.clone()]);
    let mut steps = Vec::new();
    premise_steps(&mut steps, &[a, b]);
    steps.push(step(ab.clone(), "a-i", vec![0, 1]));
    let leaf = Confirmation::derived(vec![a.clone(), b.clone()], ab.clone(), Derivation::new(vec![a.clone(), b.clone()], steps));
    let inner = Confirmation::hyperrule(vec![a.clone()], Formula::imp(b.clone(), ab.clone()), Hyperrule::Ci, vec![leaf]);
    Confirmation::hyperrule(
        vec![],
        Formula::imp(a.clone(), Formula::imp(b.clone(), ab)),
        Hyperrule::Ci,
        vec![inner],
    )
}

/// `⊢ a∨¬a` by reductio on `¬(a∨¬a)`, refuting `a` and `¬a` in turn.
pub fn excluded_middle_confirmation(a: &Formula) -> Confirmation {
    let na = Formula::not(a.clone());
    let lem = Formula::or(a.clone(), na.clone());
    let nlem = Formula::not(lem.clone());
    let refute = |x: &Formula, intro: &str| {
        let xs = vec![nlem.clone(), x.clone()];
        let d1 = Derivation::new(xs.clone(), vec![Step::premise(x.clone()), step(lem.clone(), intro, vec![0])]);
        let d2 = Derivation::new(xs.clone(), vec![Step::premise(nlem.clone())]);
        Confirmation::hyperrule(
            vec![nlem.clone()],
            Formula::not(x.clone()),
            Hyperrule::Cii,
            vec![
                Confirmation::derived(xs.clone(), lem.clone(), d1),
                Confirmation::derived(xs, nlem.clone(), d2),
            ],
        )
    };
    let step3 = refute(a, "a-ii");
    let step4 = refute(&na, "a-iii");
    let step5 = Confirmation::hyperrule(vec![], Formula::not(nlem.clone()), Hyperrule::Cii, vec![step3, step4]);
    let nn = Formula::not(nlem.clone());
    let d6 = Derivation::new(vec![nn.clone()], vec![Step::premise(nn), step(lem.clone(), "b-iv", vec![0])]);
    Confirmation::combination(vec![], lem, vec![step5], d6)
}

/// `⊢ (a→c)→((b→c)→((a∨b)→c))` by cases, then the first hyperrule three times.
pub fn cases_confirmation(a: &Formula, b: &Formula, c: &Formula) -> Confirmation {
    let (ac, bc) = (Formula::imp(a.clone(), c.clone()), Formula::imp(b.clone(), c.clone()));
    let ab = Formula::or(a.clone(), b.clone());
    let branch = |x: &Formula, xc: &Formula| {
        let xs = vec![ac.clone(), bc.clone(), x.clone()];
        let d = Derivation::new(
            xs.clone(),
            vec![Step::premise(x.clone()), Step::premise(xc.clone()), step(c.clone(), "b-iii", vec![0, 1])],
        );
        Confirmation::derived(xs, c.clone(), d)
    };
    let step2 = Confirmation::hyperrule(
        vec![ac.clone(), bc.clone(), ab.clone()],
        c.clone(),
        Hyperrule::Ciii,
        vec![branch(a, &ac), branch(b, &bc)],
    );
    let abc = Formula::imp(ab, c.clone());
    let step3 = Confirmation::hyperrule(vec![ac.clone(), bc.clone()], abc.clone(), Hyperrule::Ci, vec![step2]);
    let bcabc = Formula::imp(bc, abc);
    let step4 = Confirmation::hyperrule(vec![ac.clone()], bcabc.clone(), Hyperrule::Ci, vec![step3]);
    Confirmation::hyperrule(vec![], Formula::imp(ac, bcabc), Hyperrule::Ci, vec![step4])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::f;

    fn all() -> Vec<Confirmation> {
        let (p, q, r) = (f("p"), f("q"), f("r"));
        vec![conjunction_confirmation(&p, &q), excluded_middle_confirmation(&p), cases_confirmation(&p, &q, &r)]
    }

    #[test]
    fn worked_confirmations_verify() {
        let sizes: Vec<usize> = all().iter().map(Confirmation::len).collect();
        assert_eq!(sizes, vec![3, 8, 6]);
        for c in all() {
            assert!(check_confirmation(&c).is_verified(), "{c}");
            assert_eq!(c.premises, Vec::<Formula>::new());
        }
        assert_eq!(all()[2].conclusion, f("((p→r)→((q→r)→((p∨q)→r)))"));
    }

    #[test]
    fn every_mutated_node_is_reported() {
        for c in all() {
            for n in 1..=c.len() {
                let mut bad = c.clone();
                let node = bad.node_mut(n).unwrap();
                node.conclusion = Formula::not(node.conclusion.clone());
                match check_confirmation(&bad) {
                    ConfirmationVerdict::FirstFailure { node, .. } => assert_eq!(node, n, "{bad}"),
                    v => panic!("mutation at {n} accepted: {v:?}"),
                }
            }
        }
    }

    #[test]
    fn widening_keeps_confirmations() {
        for c in all() {
            assert!(check_confirmation(&c.widen(&f("(s→s)"))).is_verified());
        }
    }

    #[test]
    fn json_roundtrip() {
        for c in all() {
            assert_eq!(Confirmation::from_json(&c.to_json()).unwrap(), c);
        }
    }

    #[test]
    fn hyperrule_shapes_are_enforced() {
        let c = conjunction_confirmation(&f("p"), &f("q"));
        let Confirmed::Hyperrule(_, kids) = &c.by else { unreachable!() };
        let wrong = Confirmation::hyperrule(vec![], c.conclusion.clone(), Hyperrule::Cii, kids.clone());
        assert!(matches!(
            check_confirmation(&wrong),
            ConfirmationVerdict::FirstFailure { node: 3, reason: ConfirmationFailure::WrongChildCount { .. } }
        ));
    }
}
