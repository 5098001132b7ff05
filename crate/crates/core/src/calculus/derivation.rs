use std::fmt;

use serde_json::{json, Value};

use super::rules::Calculus;
use super::CalculusError;
use crate::language::{formula_from_json, formula_to_json, Formula};
use crate::substitution::{instantiate, match_into, Instantiation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Premise,
    Rule { rule: String, from: Vec<usize>, inst: Option<Instantiation> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub formula: Formula,
    pub by: Justification,
}

impl Step {
    pub fn premise(formula: Formula) -> Self {
        Step { formula, by: Justification::Premise }
    }

    pub fn rule(formula: Formula, rule: &str, from: Vec<usize>, inst: Option<Instantiation>) -> Self {
        Step { formula, by: Justification::Rule { rule: rule.to_string(), from, inst } }
    }
}

/// A list of formulas, each a premise or obtained from earlier ones by a rule.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    pub premises: Vec<Formula>,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureReason {
    Empty,
    NotAPremise,
    UnknownRule(String),
    WrongPremiseCount { expected: usize, found: usize },
    ForwardReference { cited: usize },
    NotAnInstance,
    GoalMismatch { last: Formula },
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::Empty => write!(f, "empty derivation"),
            FailureReason::NotAPremise => write!(f, "formula is not among the premises"),
            FailureReason::UnknownRule(r) => write!(f, "unknown rule `{r}`"),
            FailureReason::WrongPremiseCount { expected, found } => {
                write!(f, "rule takes {expected} premises, {found} cited")
            }
            FailureReason::ForwardReference { cited } => write!(f, "cites step {cited}, which does not precede it"),
            FailureReason::NotAnInstance => write!(f, "not an instance of the cited rule"),
            FailureReason::GoalMismatch { last } => write!(f, "last formula {last} is not the goal"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    FirstFailure { step: usize, reason: FailureReason },
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified)
    }
}

/// Checks one step against the rules of `c`, given the formulas before it.
pub(crate) fn check_step(c: &Calculus, premises: &[Formula], done: &[Formula], i: usize, step: &Step) -> Result<(), FailureReason> {
    match &step.by {
        Justification::Premise => {
            if premises.contains(&step.formula) {
                Ok(())
            } else {
                Err(FailureReason::NotAPremise)
            }
        }
        Justification::Rule { rule, from, inst } => {
            let r = c.rule(rule).ok_or_else(|| FailureReason::UnknownRule(rule.clone()))?;
            if r.premises.len() != from.len() {
                return Err(FailureReason::WrongPremiseCount { expected: r.premises.len(), found: from.len() });
            }
            if let Some(&bad) = from.iter().find(|&&j| j >= i) {
                return Err(FailureReason::ForwardReference { cited: bad });
            }
            let mut acc = inst.clone().unwrap_or_default();
            if let Some(given) = inst {
                if let Ok(conc) = instantiate(&r.conclusion, given) {
                    if conc != step.formula {
                        return Err(FailureReason::NotAnInstance);
                    }
                }
            }
            let ok = r.premises.iter().zip(from).all(|(p, &j)| match_into(p, &done[j], &mut acc))
                && match_into(&r.conclusion, &step.formula, &mut acc);
            if ok {
                Ok(())
            } else {
                Err(FailureReason::NotAnInstance)
            }
        }
    }
}

/// Verifies every step and that the last formula is `goal`.
pub fn check_derivation(c: &Calculus, d: &Derivation, goal: &Formula) -> Verdict {
    let mut done = Vec::with_capacity(d.steps.len());
    for (i, step) in d.steps.iter().enumerate() {
        if let Err(reason) = check_step(c, &d.premises, &done, i, step) {
            return Verdict::FirstFailure { step: i, reason };
        }
        done.push(step.formula.clone());
    }
    match done.last() {
        None => Verdict::FirstFailure { step: 0, reason: FailureReason::Empty },
        Some(last) if last != goal => {
            Verdict::FirstFailure { step: done.len() - 1, reason: FailureReason::GoalMismatch { last: last.clone() } }
        }
        Some(_) => Verdict::Verified,
    }
}

impl Derivation {
    pub fn new(premises: Vec<Formula>, steps: Vec<Step>) -> Self {
        Derivation { premises, steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }

    /// Largest degree of any step formula.
    pub fn max_degree(&self) -> usize {
        self.steps.iter().map(|s| s.formula.degree()).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| {
                let by = match &s.by {
                    Justification::Premise => json!("Premise"),
                    Justification::Rule { rule, from, inst } => {
                        let mut obj = json!({ "rule": rule, "from": from });
                        if let Some(i) = inst {
                            obj["inst"] = serde_json::to_value(i).expect("instantiation serializes");
                        }
                        obj
                    }
                };
                json!({ "formula": formula_to_json(&s.formula), "by": by })
            })
            .collect();
        json!({ "premises": self.premises.iter().map(formula_to_json).collect::<Vec<_>>(), "steps": steps })
    }

    pub fn from_json(v: &Value) -> Result<Self, CalculusError> {
        let bad = |msg: String| CalculusError::Malformed(msg);
        let premises = v
            .get("premises")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("proof needs a `premises` array".into()))?
            .iter()
            .map(|p| formula_from_json(p).map_err(bad))
            .collect::<Result<Vec<_>, _>>()?;
        let steps = v
            .get("steps")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("proof needs a `steps` array".into()))?
            .iter()
            .map(|s| {
                let formula = formula_from_json(s.get("formula").ok_or_else(|| bad("step without formula".into()))?)
                    .map_err(bad)?;
                let by = s.get("by").ok_or_else(|| bad("step without `by`".into()))?;
                if by.as_str() == Some("Premise") {
                    return Ok(Step::premise(formula));
                }
                let rule = by.get("rule").and_then(Value::as_str).ok_or_else(|| bad(format!("bad justification {by}")))?;
                let from = by
                    .get("from")
                    .and_then(Value::as_array)
                    .map(|a| a.iter().map(|x| x.as_u64().map(|n| n as usize)).collect::<Option<Vec<_>>>())
                    .unwrap_or(Some(Vec::new()))
                    .ok_or_else(|| bad(format!("bad step indices in {by}")))?;
                let inst = match by.get("inst") {
                    Some(i) => Some(serde_json::from_value(i.clone()).map_err(|e| bad(e.to_string()))?),
                    None => None,
                };
                Ok(Step::rule(formula, rule, from, inst))
            })
            .collect::<Result<Vec<_>, CalculusError>>()?;
        Ok(Derivation { premises, steps })
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            let by = match &s.by {
                Justification::Premise => "premise".to_string(),
                Justification::Rule { rule, from, .. } if from.is_empty() => rule.clone(),
                Justification::Rule { rule, from, .. } => {
                    let cited: Vec<String> = from.iter().map(|j| (j + 1).to_string()).collect();
                    format!("{rule} {}", cited.join(","))
                }
            };
            writeln!(f, "{:>3}. {}  [{by}]", i + 1, s.formula)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::rules::{hilbert_cl, nd_rules};
    use crate::language::f;

    #[test]
    fn conjunction_elimination() {
        let d = Derivation::new(
            vec![f("(p∧q)")],
            vec![Step::premise(f("(p∧q)")), Step::rule(f("p"), "b-i", vec![0], None)],
        );
        assert_eq!(check_derivation(&nd_rules(), &d, &f("p")), Verdict::Verified);
    }

    #[test]
    fn axiom_then_detachment() {
        let d = Derivation::new(
            vec![f("p")],
            vec![
                Step::premise(f("p")),
                Step::rule(f("(p→(q→p))"), "ax1", vec![], None),
                Step::rule(f("(q→p)"), "MP", vec![0, 1], None),
            ],
        );
        assert!(check_derivation(&hilbert_cl(), &d, &f("(q→p)")).is_verified());
        let j = d.to_json();
        assert_eq!(Derivation::from_json(&j).unwrap(), d);
    }

    #[test]
    fn forward_citation_fails() {
        let d = Derivation::new(
            vec![f("p")],
            vec![
                Step::rule(f("(q→p)"), "MP", vec![0, 1], None),
                Step::premise(f("p")),
                Step::rule(f("(p→(q→p))"), "ax1", vec![], None),
            ],
        );
        assert_eq!(
            check_derivation(&hilbert_cl(), &d, &f("(q→p)")),
            Verdict::FirstFailure { step: 0, reason: FailureReason::ForwardReference { cited: 0 } }
        );
    }

    #[test]
    fn recorded_instantiation_must_agree() {
        let inst = Instantiation::from_pairs([("α".into(), f("p")), ("β".into(), f("r"))]);
        let d = Derivation::new(vec![], vec![Step::rule(f("(p→(q→p))"), "ax1", vec![], Some(inst))]);
        assert!(matches!(
            check_derivation(&hilbert_cl(), &d, &f("(p→(q→p))")),
            Verdict::FirstFailure { step: 0, reason: FailureReason::NotAnInstance }
        ));
    }

    #[test]
    fn wrong_goal_and_unknown_rule() {
        let d = Derivation::new(vec![f("p")], vec![Step::premise(f("p"))]);
        assert!(matches!(
            check_derivation(&hilbert_cl(), &d, &f("q")),
            Verdict::FirstFailure { step: 0, reason: FailureReason::GoalMismatch { .. } }
        ));
        let d = Derivation::new(vec![], vec![Step::rule(f("p"), "ax99", vec![], None)]);
        assert!(matches!(
            check_derivation(&hilbert_cl(), &d, &f("p")),
            Verdict::FirstFailure { step: 0, reason: FailureReason::UnknownRule(_) }
        ));
    }
}
