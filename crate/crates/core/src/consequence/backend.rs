//! Decidable consequence relations and sampled checks of their defining
//! properties.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::ConsequenceError;
use crate::language::{random_formula, Formula, Signature, Sym};
use crate::matrix::{class_consequence, Matrix};
use crate::substitution::Substitution;

/// A decision procedure for `X ⊢ α` over finite `X`.
pub trait ConsequenceBackend: Send + Sync {
    fn name(&self) -> String;
    fn derives(&self, premises: &[Formula], goal: &Formula) -> Result<bool, ConsequenceError>;
    fn structural(&self) -> bool;
    fn finitary(&self) -> bool;
}

/// Consequence determined by a nonempty finite class of finite matrices.
#[derive(Clone, Debug)]
pub struct MatrixBackend {
    matrices: Vec<Matrix>,
}

pub fn matrix_backend(matrices: Vec<Matrix>) -> Result<MatrixBackend, ConsequenceError> {
    if matrices.is_empty() {
        return Err(ConsequenceError::EmptyClass);
    }
    Ok(MatrixBackend { matrices })
}

impl MatrixBackend {
    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }
}

impl ConsequenceBackend for MatrixBackend {
    fn name(&self) -> String {
        let names: Vec<&str> = self.matrices.iter().map(|m| m.name()).collect();
        names.join("∩")
    }

    fn derives(&self, premises: &[Formula], goal: &Formula) -> Result<bool, ConsequenceError> {
        Ok(class_consequence(&self.matrices, premises, goal)?)
    }

    fn structural(&self) -> bool {
        true
    }

    fn finitary(&self) -> bool {
        true
    }
}

/// `X ⊢ α` iff every part derives it.
pub struct Intersection<'a> {
    parts: Vec<&'a dyn ConsequenceBackend>,
}

impl<'a> Intersection<'a> {
    pub fn new(parts: Vec<&'a dyn ConsequenceBackend>) -> Result<Self, ConsequenceError> {
        if parts.is_empty() {
            return Err(ConsequenceError::EmptyClass);
        }
        Ok(Intersection { parts })
    }
}

impl ConsequenceBackend for Intersection<'_> {
    fn name(&self) -> String {
        let names: Vec<String> = self.parts.iter().map(|p| p.name()).collect();
        format!("⋂({})", names.join(", "))
    }

    fn derives(&self, premises: &[Formula], goal: &Formula) -> Result<bool, ConsequenceError> {
        for p in &self.parts {
            if !p.derives(premises, goal)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn structural(&self) -> bool {
        self.parts.iter().all(|p| p.structural())
    }

    fn finitary(&self) -> bool {
        self.parts.iter().all(|p| p.finitary())
    }
}

/// `X ⊢° α` iff `X ⊢ α` and `X` is nonempty.
pub struct NonEmpty<B>(pub B);

impl<B: ConsequenceBackend> ConsequenceBackend for NonEmpty<B> {
    fn name(&self) -> String {
        format!("{}°", self.0.name())
    }

    fn derives(&self, premises: &[Formula], goal: &Formula) -> Result<bool, ConsequenceError> {
        Ok(!premises.is_empty() && self.0.derives(premises, goal)?)
    }

    fn structural(&self) -> bool {
        self.0.structural()
    }

    fn finitary(&self) -> bool {
        self.0.finitary()
    }
}

/// Outcome of a sampled property: cases drawn, how many met the
/// hypothesis, and the inputs of every failure.
#[derive(Clone, Debug, PartialEq)]
pub struct PropertyReport {
    pub property: String,
    pub cases: u64,
    pub nonvacuous: u64,
    pub failures: Vec<Value>,
    pub seed: u64,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "property": self.property,
            "cases": self.cases,
            "nonvacuous": self.nonvacuous,
            "failures": self.failures,
            "seed": self.seed,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationProperty {
    Reflexivity,
    Monotonicity,
    Cut,
    Structurality,
}

impl RelationProperty {
    pub const ALL: [RelationProperty; 4] =
        [RelationProperty::Reflexivity, RelationProperty::Monotonicity, RelationProperty::Cut, RelationProperty::Structurality];

    pub fn name(self) -> &'static str {
        match self {
            RelationProperty::Reflexivity => "reflexivity",
            RelationProperty::Monotonicity => "monotonicity",
            RelationProperty::Cut => "cut",
            RelationProperty::Structurality => "structurality",
        }
    }
}

/// Random formulas over `p, q` and random substitutions into `p, q, r`.
pub struct Sampler {
    rng: ChaCha8Rng,
    atoms: Vec<Formula>,
    targets: Vec<Formula>,
    ops: Vec<(Sym, usize)>,
    depth: usize,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            atoms: vec![Formula::var("p"), Formula::var("q")],
            targets: vec![Formula::var("p"), Formula::var("q"), Formula::var("r")],
            ops: Signature::basic().connectives().to_vec(),
            depth: 3,
        }
    }

    pub fn formula(&mut self) -> Formula {
        random_formula(&mut self.rng, &self.atoms, &self.ops, self.depth)
    }

    pub fn formulas(&mut self, max: usize) -> Vec<Formula> {
        let n = self.rng.gen_range(0..=max);
        (0..n).map(|_| self.formula()).collect()
    }

    pub fn substitution(&mut self) -> Substitution {
        let mut pairs = Vec::new();
        for v in ["p", "q"] {
            let image = random_formula(&mut self.rng, &self.targets, &self.ops, 2);
            pairs.push((Sym::from(v), image));
        }
        Substitution::from_pairs(pairs)
    }

    pub fn pick<'a>(&mut self, xs: &'a [Formula]) -> Option<&'a Formula> {
        xs.choose(&mut self.rng)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }
}

pub(crate) fn names(xs: &[Formula]) -> Vec<String> {
    xs.iter().map(|f| f.to_string()).collect()
}

pub(crate) fn substitution_json(s: &Substitution) -> Value {
    Value::Object(s.support().map(|(v, f)| (v.to_string(), json!(f.to_string()))).collect())
}

/// Draws `cases` instances of `prop` and records every violation.
pub fn sample_property(
    b: &dyn ConsequenceBackend,
    prop: RelationProperty,
    cases: u64,
    seed: u64,
) -> Result<PropertyReport, ConsequenceError> {
    let mut s = Sampler::new(seed);
    let mut nonvacuous = 0;
    let mut failures = Vec::new();
    for _ in 0..cases {
        match prop {
            RelationProperty::Reflexivity => {
                let mut xs = s.formulas(3);
                let a = s.formula();
                xs.push(a.clone());
                nonvacuous += 1;
                if !b.derives(&xs, &a)? {
                    failures.push(json!({"premises": names(&xs), "goal": a.to_string()}));
                }
            }
            RelationProperty::Monotonicity => {
                let xs = s.formulas(2);
                let a = s.formula();
                if b.derives(&xs, &a)? {
                    nonvacuous += 1;
                    let mut ys = xs.clone();
                    ys.extend(s.formulas(2));
                    if !b.derives(&ys, &a)? {
                        failures.push(json!({"premises": names(&xs), "extended": names(&ys), "goal": a.to_string()}));
                    }
                }
            }
            RelationProperty::Cut => {
                let xs = s.formulas(2);
                let beta = match s.pick(&xs) {
                    Some(x) if s.coin() => x.clone(),
                    _ => s.formula(),
                };
                let mut zs = s.formulas(2);
                let a = match s.pick(&zs) {
                    Some(z) if s.coin() => z.clone(),
                    _ if s.coin() => beta.clone(),
                    _ => s.formula(),
                };
                let mut zb = zs.clone();
                zb.push(beta.clone());
                if b.derives(&xs, &beta)? && b.derives(&zb, &a)? {
                    nonvacuous += 1;
                    zs.extend(xs.iter().cloned());
                    if !b.derives(&zs, &a)? {
                        failures.push(json!({
                            "x": names(&xs), "z": names(&zb[..zb.len() - 1]),
                            "beta": beta.to_string(), "goal": a.to_string(),
                        }));
                    }
                }
            }
            RelationProperty::Structurality => {
                let xs = s.formulas(2);
                let a = s.formula();
                if b.derives(&xs, &a)? {
                    nonvacuous += 1;
                    let sigma = s.substitution();
                    let sx: Vec<Formula> = xs.iter().map(|x| sigma.apply(x)).collect();
                    if !b.derives(&sx, &sigma.apply(&a))? {
                        failures.push(json!({"premises": names(&xs), "goal": a.to_string(), "sigma": substitution_json(&sigma)}));
                    }
                }
            }
        }
    }
    Ok(PropertyReport { property: prop.name().to_string(), cases, nonvacuous, failures, seed })
}

/// All four relation properties, seeded `seed, seed+1, …`.
pub fn check_relation_axioms(
    b: &dyn ConsequenceBackend,
    cases: u64,
    seed: u64,
) -> Result<Vec<PropertyReport>, ConsequenceError> {
    RelationProperty::ALL.iter().enumerate().map(|(i, &p)| sample_property(b, p, cases, seed + i as u64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::f;
    use crate::matrix::{b2, godel, l3};

    #[test]
    fn matrix_backend_decides() {
        let b = matrix_backend(vec![b2()]).unwrap();
        assert!(b.derives(&[f("p"), f("(p→q)")], &f("q")).unwrap());
        assert!(!b.derives(&[f("q")], &f("p")).unwrap());
        assert!(b.structural() && b.finitary());
        assert!(matches!(matrix_backend(vec![]), Err(ConsequenceError::EmptyClass)));
    }

    #[test]
    fn everything_designated_derives_everything() {
        let m = b2();
        let all = m.with_designated("b2-trivial", &[0, 1]).unwrap();
        let b = matrix_backend(vec![all]).unwrap();
        assert!(b.derives(&[], &f("p")).unwrap());
        assert!(b.derives(&[f("q")], &f("(p∧¬p)")).unwrap());
    }

    #[test]
    fn relation_axioms_on_b2_and_l3() {
        for m in [b2(), l3()] {
            let b = matrix_backend(vec![m]).unwrap();
            for r in check_relation_axioms(&b, 200, 5).unwrap() {
                assert!(r.passed(), "{}", r.to_json());
                assert!(r.nonvacuous > 0, "{}", r.property);
            }
        }
    }

    #[test]
    fn intersection_and_nonempty_variants() {
        let a = matrix_backend(vec![l3()]).unwrap();
        let g = matrix_backend(vec![godel(3).unwrap()]).unwrap();
        let both = Intersection::new(vec![&a, &g]).unwrap();
        assert!(!both.derives(&[], &f("(p∨¬p)")).unwrap());
        assert!(both.derives(&[f("p")], &f("(q→p)")).unwrap());
        for r in check_relation_axioms(&both, 100, 1).unwrap() {
            assert!(r.passed(), "{}", r.to_json());
        }
        let nonempty = NonEmpty(matrix_backend(vec![b2()]).unwrap());
        assert!(!nonempty.derives(&[], &f("(p→p)")).unwrap());
        assert!(nonempty.derives(&[f("q")], &f("(p→p)")).unwrap());
        for r in check_relation_axioms(&nonempty, 100, 2).unwrap() {
            assert!(r.passed(), "{}", r.to_json());
        }
    }
}
