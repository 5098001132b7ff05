//! Designated-preservation of rules in a matrix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::rules::{Calculus, StructuralRule};
use super::CalculusError;
use crate::language::{Formula, Metaformula, Sym};
use crate::matrix::{advance, Matrix, MatrixError, Program};

/// Reads metavariables as variables of the same name.
pub fn as_formula(m: &Metaformula) -> Formula {
    match m {
        Metaformula::Meta(v) => Formula::Var(v.clone()),
        Metaformula::Const(c) => Formula::Const(c.clone()),
        Metaformula::App(op, args) => Formula::App(op.clone(), args.iter().map(as_formula).collect::<Vec<_>>().into()),
    }
}

/// Outcome for one rule: a violating assignment of elements to
/// metavariables, if one was found, and how many assignments were examined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleVerdict {
    pub rule: String,
    pub witness: Option<Vec<(Sym, usize)>>,
    pub checked: u64,
    pub exhaustive: bool,
}

impl RuleVerdict {
    pub fn sound(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessReport {
    pub calculus: String,
    pub matrix: String,
    pub rules: Vec<RuleVerdict>,
}

impl SoundnessReport {
    pub fn all_sound(&self) -> bool {
        self.rules.iter().all(RuleVerdict::sound)
    }

    pub fn to_json(&self, m: &Matrix) -> Value {
        let rules: Vec<Value> = self
            .rules
            .iter()
            .map(|r| {
                json!({
                    "rule": r.rule,
                    "sound": r.sound(),
                    "checked": r.checked,
                    "exhaustive": r.exhaustive,
                    "witness": r.witness.as_ref().map(|w| {
                        w.iter().map(|(k, e)| (k.to_string(), json!(m.algebra().element_name(*e)))).collect::<serde_json::Map<_, _>>()
                    }),
                })
            })
            .collect();
        json!({"calculus": self.calculus, "matrix": self.matrix, "rules": rules})
    }
}

struct Compiled {
    metas: Vec<Sym>,
    premises: Vec<Program>,
    conclusion: Program,
}

impl Compiled {
    fn new(r: &StructuralRule, m: &Matrix) -> Result<Self, MatrixError> {
        let metas = r.metavariables();
        let alg = m.algebra();
        Ok(Compiled {
            premises: r.premises.iter().map(|p| Program::compile(alg, &as_formula(p), &metas)).collect::<Result<_, _>>()?,
            conclusion: Program::compile(alg, &as_formula(&r.conclusion), &metas)?,
            metas,
        })
    }

    fn violated(&self, m: &Matrix, vals: &[usize], stack: &mut Vec<usize>) -> bool {
        let alg = m.algebra();
        self.premises.iter().all(|p| m.is_designated(p.run(alg, vals, stack)))
            && !m.is_designated(self.conclusion.run(alg, vals, stack))
    }
}

/// Checks one rule: exhaustively when the assignments of elements to its
/// metavariables number at most `budget`, else on `budget` seeded samples.
pub fn check_rule(r: &StructuralRule, m: &Matrix, budget: u64, seed: u64) -> Result<RuleVerdict, CalculusError> {
    let c = Compiled::new(r, m)?;
    let n = m.algebra().size();
    let k = c.metas.len();
    let total = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    let mut stack = Vec::new();
    let verdict = |witness: Option<&[usize]>, checked: u64, exhaustive: bool| RuleVerdict {
        rule: r.name.clone(),
        witness: witness.map(|w| c.metas.iter().cloned().zip(w.iter().copied()).collect()),
        checked,
        exhaustive,
    };
    if total <= budget as u128 {
        let mut vals = vec![0usize; k];
        let mut checked = 0;
        loop {
            checked += 1;
            if c.violated(m, &vals, &mut stack) {
                return Ok(verdict(Some(&vals), checked, true));
            }
            if !advance(&mut vals, n) {
                return Ok(verdict(None, checked, true));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vals = vec![0usize; k];
    for i in 0..budget {
        vals.iter_mut().for_each(|v| *v = rng.gen_range(0..n));
        if c.violated(m, &vals, &mut stack) {
            return Ok(verdict(Some(&vals), i + 1, false));
        }
    }
    Ok(verdict(None, budget, false))
}

/// True iff `r` preserves designation under every assignment.
pub fn rule_is_sound(r: &StructuralRule, m: &Matrix) -> Result<bool, CalculusError> {
    Ok(check_rule(r, m, u64::MAX, 0)?.sound())
}

/// Checks every rule of `c` in `m`.
pub fn soundness_check(c: &Calculus, m: &Matrix, budget: u64) -> Result<SoundnessReport, CalculusError> {
    let rules = c
        .rules
        .iter()
        .enumerate()
        .map(|(i, r)| check_rule(r, m, budget, i as u64))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SoundnessReport { calculus: c.name.clone(), matrix: m.name().to_string(), rules })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::rules::{axiom_schema, hilbert_cl, hilbert_int, hilbert_lc};
    use crate::matrix::{b2, godel, l3};

    #[test]
    fn classical_rules_in_b2() {
        let r = soundness_check(&hilbert_cl(), &b2(), 1_000_000).unwrap();
        assert!(r.all_sound());
        assert!(r.rules.iter().all(|v| v.exhaustive));
    }

    #[test]
    fn intuitionistic_rules_in_godel_three() {
        assert!(soundness_check(&hilbert_int(), &godel(3).unwrap(), 1_000_000).unwrap().all_sound());
        assert!(soundness_check(&hilbert_lc(), &godel(5).unwrap(), 1_000_000).unwrap().all_sound());
    }

    #[test]
    fn double_negation_fails_in_godel_three() {
        let v = check_rule(&axiom_schema(10).unwrap(), &godel(3).unwrap(), 1000, 0).unwrap();
        let w = v.witness.unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].1, 1);
    }

    #[test]
    fn sampling_when_over_budget() {
        let v = check_rule(&axiom_schema(8).unwrap(), &l3(), 5, 7).unwrap();
        assert!(!v.exhaustive);
        assert_eq!(v.checked, 5);
        assert!(rule_is_sound(&axiom_schema(12).unwrap(), &l3()).unwrap());
    }
}
