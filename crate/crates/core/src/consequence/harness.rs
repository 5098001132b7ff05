//! Pointwise checks of theory-level claims through membership queries.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::backend::{names, substitution_json, ConsequenceBackend};
use super::ConsequenceError;
use crate::calculus::as_formula;
use crate::language::{Formula, Metaformula};
use crate::substitution::Substitution;

#[derive(Clone, Debug, PartialEq)]
pub struct HarnessReport {
    /// The instantiated premise set.
    pub premises: Vec<Formula>,
    /// Whether the premise set derives the goal at all.
    pub derivable: bool,
    pub cases: usize,
    /// Substitutions whose image of the goal is not derived.
    pub failures: Vec<Substitution>,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "premises": names(&self.premises),
            "derivable": self.derivable,
            "cases": self.cases,
            "failures": self.failures.iter().map(substitution_json).collect::<Vec<_>>(),
        })
    }
}

/// Instantiates `schemas` by reading metavariables as variables, closes the
/// result under the sampled substitutions, and checks that when the set
/// derives `goal` it also derives every sampled image of `goal`.
pub fn lindenbaum_property_harness(
    b: &dyn ConsequenceBackend,
    schemas: &[Metaformula],
    goal: &Formula,
    sample: &[Substitution],
) -> Result<HarnessReport, ConsequenceError> {
    let base: Vec<Formula> = schemas.iter().map(as_formula).collect();
    let mut premises: BTreeSet<Formula> = base.iter().cloned().collect();
    for s in sample {
        premises.extend(base.iter().map(|x| s.apply(x)));
    }
    let premises: Vec<Formula> = premises.into_iter().collect();
    let derivable = b.derives(&premises, goal)?;
    let mut failures = Vec::new();
    if derivable {
        for s in sample {
            if !b.derives(&premises, &s.apply(goal))? {
                failures.push(s.clone());
            }
        }
    }
    Ok(HarnessReport { premises, derivable, cases: if derivable { sample.len() } else { 0 }, failures })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BrownSuszkoReport {
    /// Members of the universe derivable from the premises.
    pub theory: BTreeSet<Formula>,
    /// Members of the universe whose image lies in the theory.
    pub preimage: BTreeSet<Formula>,
    pub checked: u64,
    /// A subset of the preimage deriving a member outside it.
    pub violations: Vec<(Vec<Formula>, Formula)>,
    pub seed: u64,
}

impl BrownSuszkoReport {
    pub fn closed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let list = |s: &BTreeSet<Formula>| s.iter().map(|f| f.to_string()).collect::<Vec<_>>();
        json!({
            "theory": list(&self.theory),
            "preimage": list(&self.preimage),
            "checked": self.checked,
            "closed": self.closed(),
            "violations": self.violations.iter().map(|(y, a)| json!({"premises": names(y), "goal": a.to_string()})).collect::<Vec<_>>(),
            "seed": self.seed,
        })
    }
}

/// Samples finite subsets `Y` of `s⁻¹(T) ∩ U`, `T` the theory of `x`, and
/// checks that everything in `U` derivable from `Y` stays in the preimage.
pub fn brown_suszko_sample(
    b: &dyn ConsequenceBackend,
    x: &[Formula],
    s: &Substitution,
    universe: &[Formula],
    samples: usize,
    seed: u64,
) -> Result<BrownSuszkoReport, ConsequenceError> {
    if !b.structural() {
        return Err(ConsequenceError::NotStructural(b.name()));
    }
    let mut theory = BTreeSet::new();
    let mut preimage = BTreeSet::new();
    for a in universe {
        if b.derives(x, a)? {
            theory.insert(a.clone());
        }
        if b.derives(x, &s.apply(a))? {
            preimage.insert(a.clone());
        }
    }
    let pre: Vec<Formula> = preimage.iter().cloned().collect();
    let outside: Vec<&Formula> = universe.iter().filter(|a| !preimage.contains(*a)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut violations = Vec::new();
    for _ in 0..samples {
        let k = rng.gen_range(0..=pre.len().min(3));
        let ys: Vec<Formula> = sample(&mut rng, pre.len(), k).into_iter().map(|i| pre[i].clone()).collect();
        for a in &outside {
            checked += 1;
            if b.derives(&ys, a)? {
                violations.push((ys.clone(), (*a).clone()));
            }
        }
    }
    Ok(BrownSuszkoReport { theory, preimage, checked, violations, seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consequence::backend::{matrix_backend, Sampler};
    use crate::consequence::NonEmpty;
    use crate::language::{enumerate, f, m, Signature};
    use crate::matrix::{b2, godel};

    fn sigmas(n: usize, seed: u64) -> Vec<Substitution> {
        let mut s = Sampler::new(seed);
        (0..n).map(|_| s.substitution()).collect()
    }

    #[test]
    fn identity_schema_instances() {
        let b = matrix_backend(vec![b2()]).unwrap();
        let r = lindenbaum_property_harness(&b, &[m("(α→α)")], &f("(p→p)"), &sigmas(50, 3)).unwrap();
        assert!(r.derivable && r.passed());
        assert_eq!(r.cases, 50);
    }

    #[test]
    fn theorems_stay_theorems() {
        let b = matrix_backend(vec![b2()]).unwrap();
        let r = lindenbaum_property_harness(&b, &[], &f("((p→q)∨(q→p))"), &sigmas(50, 4)).unwrap();
        assert!(r.derivable && r.passed());
        let r = lindenbaum_property_harness(&b, &[], &f("p"), &sigmas(10, 4)).unwrap();
        assert!(!r.derivable);
        assert_eq!(r.cases, 0);
    }

    fn one_variable_universe() -> Vec<Formula> {
        enumerate(&[Formula::var("p")], Signature::basic().connectives(), 3)
    }

    #[test]
    fn preimages_of_theories_are_closed() {
        let u = one_variable_universe();
        let s = Substitution::unary("p", f("(p∧p)"));
        for m in [b2(), godel(3).unwrap()] {
            let b = matrix_backend(vec![m]).unwrap();
            let r = brown_suszko_sample(&b, &[f("p")], &s, &u, 30, 9).unwrap();
            assert!(r.closed(), "{}", r.to_json());
            assert!(r.preimage.contains(&f("p")));
        }
    }

    #[test]
    fn identity_preimage_is_the_theory() {
        let u = one_variable_universe();
        let b = matrix_backend(vec![b2()]).unwrap();
        let r = brown_suszko_sample(&b, &[f("p")], &Substitution::identity(), &u, 5, 0).unwrap();
        assert_eq!(r.theory, r.preimage);
    }

    #[test]
    fn nonempty_variant_stays_structural() {
        let b = NonEmpty(matrix_backend(vec![b2()]).unwrap());
        let r = brown_suszko_sample(&b, &[f("¬p")], &Substitution::unary("p", f("¬p")), &one_variable_universe(), 10, 1)
            .unwrap();
        assert!(r.closed());
    }
}
