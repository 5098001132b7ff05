//! Frames up to isomorphism and countermodel search.

use std::collections::{BTreeMap, HashSet};
use std::sync::OnceLock;

use super::model::{extension_in, KripkeModel};
use super::KripkeError;
use crate::heyting::{FinitePoset, Set};
use crate::language::{Formula, Sym};

pub const MAX_WORLDS: usize = 7;
pub const DEFAULT_WORLDS: usize = 6;
pub const KRIPKE_BUDGET: u64 = 10_000_000;

static POSETS: [OnceLock<Vec<FinitePoset>>; MAX_WORLDS] = [const { OnceLock::new() }; MAX_WORLDS];

/// Posets on exactly `n` elements, one per isomorphism class. Each is built
/// by adding a maximal element above a down-set of a smaller one, so element
/// indices follow a linear extension.
pub fn posets(n: usize) -> &'static [FinitePoset] {
    assert!(n < MAX_WORLDS, "posets above {} elements are not enumerated", MAX_WORLDS - 1);
    POSETS[n].get_or_init(|| {
        if n == 0 {
            return vec![FinitePoset::new(0, &[]).expect("empty poset")];
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for q in posets(n - 1) {
            let all: Set = (1 << q.len()) - 1;
            for up in q.up_sets() {
                let down = all & !up;
                let mut less: Vec<(usize, usize)> = q.covers();
                less.extend((0..q.len()).filter(|&i| down >> i & 1 == 1).map(|i| (i, n - 1)));
                let p = FinitePoset::new(n, &less).expect("extension of a poset");
                if seen.insert(p.canonical_key()) {
                    out.push(p);
                }
            }
        }
        out
    })
}

/// Rooted posets with at most `n` elements, root `w0`, by increasing size.
pub fn rooted_frames(n: usize) -> impl Iterator<Item = FinitePoset> {
    (0..n.min(MAX_WORLDS)).flat_map(|m| {
        posets(m).iter().map(move |q| {
            let mut less: Vec<(usize, usize)> = (1..=m).map(|i| (0, i)).collect();
            less.extend(q.covers().iter().map(|&(a, b)| (a + 1, b + 1)));
            FinitePoset::new(m + 1, &less).expect("rooted poset")
        })
    })
}

/// A model and a world of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub model: KripkeModel,
    pub world: usize,
}

/// First rooted model of at most `n` worlds whose root does not force `f`.
pub fn int_countermodel(f: &Formula, n: usize) -> Result<Option<Countermodel>, KripkeError> {
    int_countermodel_with_budget(f, n, KRIPKE_BUDGET)
}

pub fn int_countermodel_with_budget(f: &Formula, n: usize, budget: u64) -> Result<Option<Countermodel>, KripkeError> {
    if n > MAX_WORLDS {
        return Err(KripkeError::TooManyWorlds(n));
    }
    let vars: Vec<Sym> = f.variables().into_iter().collect();
    let mut spent: u64 = 0;
    for frame in rooted_frames(n) {
        let ups = frame.up_sets();
        let total = (ups.len() as u64).checked_pow(vars.len() as u32).unwrap_or(u64::MAX);
        spent = spent.saturating_add(total);
        if spent > budget {
            return Err(KripkeError::BudgetExceeded { budget });
        }
        let above: Vec<Set> = (0..frame.len()).map(|w| frame.above(w)).collect();
        let mut digits = vec![0usize; vars.len()];
        loop {
            let val = |v: &str| vars.iter().position(|x| &**x == v).map(|i| ups[digits[i]]).unwrap_or(0);
            if extension_in(&above, &val, f)? & 1 == 0 {
                let valuation: BTreeMap<Sym, Set> = vars.iter().cloned().zip(digits.iter().map(|&d| ups[d])).collect();
                return Ok(Some(Countermodel { model: KripkeModel::new(frame, valuation)?, world: 0 }));
            }
            if !crate::matrix::advance(&mut digits, ups.len()) {
                break;
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::forces;
    use crate::language::f;

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
        assert_eq!(rooted_frames(6).count(), 88);
    }

    #[test]
    fn peirce_and_double_negation() {
        let c = int_countermodel(&f("(((p→q)→p)→p)"), 6).unwrap().unwrap();
        assert!(c.model.frame().len() <= 2);
        assert!(!forces(&c.model, c.world, &f("(((p→q)→p)→p)")).unwrap());
        let d = int_countermodel(&f("(¬¬p→p)"), 6).unwrap().unwrap();
        assert_eq!(d.model.frame().len(), 2);
        assert!(d.model.frame().leq(0, 1));
    }

    #[test]
    fn intuitionistic_theorems_have_none() {
        assert!(int_countermodel(&f("(p→(q→p))"), 5).unwrap().is_none());
        assert!(int_countermodel(&f("(¬¬¬p→¬p)"), 5).unwrap().is_none());
    }

    #[test]
    fn limits() {
        assert!(matches!(int_countermodel(&f("p"), 8), Err(KripkeError::TooManyWorlds(8))));
        let big = f("((((p∧q)∧r)∧s)→p)");
        assert!(matches!(int_countermodel_with_budget(&big, 6, 100), Err(KripkeError::BudgetExceeded { .. })));
    }
}
