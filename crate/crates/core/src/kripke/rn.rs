//! The one-variable formulas `P₀, P₁, …` and classification up to
//! intuitionistic equivalence by bounded countermodel search.

use serde_json::{json, Value};

use super::model::extension_in;
use super::search::{int_countermodel, rooted_frames, Countermodel, DEFAULT_WORLDS};
use super::{KripkeError, KripkeModel};
use crate::heyting::{FinitePoset, Set};
use crate::language::{f, Formula, Sym, AND, IFF, IMP, NOT, OR};

/// `P_i`: `p∧¬p`, `¬p`, `p`, then `P_{2n+3} = P_{2n+1}→P_{2n}` and
/// `P_{2n+4} = P_{2n+1}∨P_{2n+2}`.
pub fn rn_formula(i: usize) -> Formula {
    rn_sequence(i).pop().expect("nonempty")
}

/// `P_0, …, P_n`.
pub fn rn_sequence(n: usize) -> Vec<Formula> {
    let mut ps = vec![f("(p∧¬p)"), f("¬p"), f("p")];
    while ps.len() <= n {
        let k = ps.len();
        let next = if k % 2 == 1 {
            Formula::imp(ps[k - 2].clone(), ps[k - 3].clone())
        } else {
            Formula::or(ps[k - 3].clone(), ps[k - 2].clone())
        };
        ps.push(next);
    }
    ps.truncate(n + 1);
    ps
}

/// `P_∞ = p→p`.
pub fn rn_top() -> Formula {
    f("(p→p)")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RnClass {
    P(usize),
    Top,
    /// No candidate or several candidates survived the search.
    Unresolved(Vec<RnClass>),
}

impl RnClass {
    pub fn label(&self) -> String {
        match self {
            RnClass::P(i) => format!("P{i}"),
            RnClass::Top => "1".into(),
            RnClass::Unresolved(_) => "unresolved".into(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            RnClass::Unresolved(c) => json!({"class": "unresolved", "candidates": c.iter().map(RnClass::label).collect::<Vec<_>>()}),
            c => json!({"class": c.label()}),
        }
    }
}

/// Every rooted model of at most `worlds` worlds over the single variable
/// `p`. A one-variable formula is summarized by its truth sets in all of
/// them; two formulas are inseparable within the bound iff the summaries
/// agree, and `a→b` has no countermodel iff each truth set of `a` is
/// inside that of `b`.
#[derive(Clone, Debug)]
pub struct OneVariableModels {
    frames: Vec<FinitePoset>,
    above: Vec<Vec<Set>>,
    /// (frame index, truth set of `p`)
    models: Vec<(usize, Set)>,
}

/// Truth sets of one formula in every model of a [`OneVariableModels`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint(Vec<Set>);

impl OneVariableModels {
    pub fn new(worlds: usize) -> Self {
        let frames: Vec<FinitePoset> = rooted_frames(worlds).collect();
        let above = frames.iter().map(|fr| (0..fr.len()).map(|w| fr.above(w)).collect()).collect();
        let models = frames.iter().enumerate().flat_map(|(i, fr)| fr.up_sets().into_iter().map(move |s| (i, s))).collect();
        OneVariableModels { frames, above, models }
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn fingerprint(&self, f: &Formula) -> Result<Fingerprint, KripkeError> {
        if let Some(v) = f.variables().into_iter().find(|v| &**v != "p") {
            return Err(KripkeError::NotOneVariable(v.to_string()));
        }
        self.models
            .iter()
            .map(|&(i, p)| extension_in(&self.above[i], &|_| p, f))
            .collect::<Result<_, _>>()
            .map(Fingerprint)
    }

    /// Applies `∧`, `∨`, `→`, `↔` or `¬` model by model.
    pub fn combine(&self, op: &str, args: &[&Fingerprint]) -> Result<Fingerprint, KripkeError> {
        let boxed = |above: &[Set], bad: Set| (0..above.len()).filter(|&w| above[w] & bad == 0).fold(0 as Set, |acc, w| acc | 1 << w);
        let out = self
            .models
            .iter()
            .enumerate()
            .map(|(k, &(i, _))| {
                let at = |j: usize| args[j].0[k];
                match (op, args.len()) {
                    (AND, 2) => Ok(at(0) & at(1)),
                    (OR, 2) => Ok(at(0) | at(1)),
                    (IMP, 2) => Ok(boxed(&self.above[i], at(0) & !at(1))),
                    (IFF, 2) => Ok(boxed(&self.above[i], at(0) ^ at(1))),
                    (NOT, 1) => Ok(boxed(&self.above[i], at(0))),
                    _ => Err(KripkeError::Unsupported(op.to_string())),
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(Fingerprint(out))
    }

    /// `a→b` holds throughout every model.
    pub fn below(&self, a: &Fingerprint, b: &Fingerprint) -> bool {
        a.0.iter().zip(&b.0).all(|(x, y)| x & !y == 0)
    }

    /// A model with a world forcing `a` but not `b`, rooted at that world.
    pub fn separating(&self, a: &Fingerprint, b: &Fingerprint) -> Option<Countermodel> {
        let k = (0..self.models.len()).find(|&k| a.0[k] & !b.0[k] & 1 == 1)?;
        let (i, p) = self.models[k];
        let valuation = [(Sym::from("p"), p)].into_iter().collect();
        Some(Countermodel { model: KripkeModel::new(self.frames[i].clone(), valuation).expect("up-set valuation"), world: 0 })
    }
}

/// True when no model of at most `worlds` worlds separates `a` and `b`.
pub fn equivalent_within(a: &Formula, b: &Formula, worlds: usize) -> Result<bool, KripkeError> {
    Ok(int_countermodel(&Formula::imp(a.clone(), b.clone()), worlds)?.is_none()
        && int_countermodel(&Formula::imp(b.clone(), a.clone()), worlds)?.is_none())
}

/// `P_0 … P_count` and `P_∞` with their fingerprints.
#[derive(Clone, Debug)]
pub struct RnTable {
    pub bank: OneVariableModels,
    pub formulas: Vec<Formula>,
    pub prints: Vec<Fingerprint>,
    pub top: Fingerprint,
}

impl RnTable {
    pub fn new(count: usize, worlds: usize) -> Result<Self, KripkeError> {
        let bank = OneVariableModels::new(worlds);
        let formulas = rn_sequence(count);
        let prints = formulas.iter().map(|p| bank.fingerprint(p)).collect::<Result<_, _>>()?;
        let top = bank.fingerprint(&rn_top())?;
        Ok(RnTable { bank, formulas, prints, top })
    }

    /// The classes whose fingerprint equals `fp`; exactly one when resolved.
    pub fn classify_print(&self, fp: &Fingerprint) -> RnClass {
        let mut survivors: Vec<RnClass> =
            self.prints.iter().enumerate().filter(|(_, p)| *p == fp).map(|(i, _)| RnClass::P(i)).collect();
        if &self.top == fp {
            survivors.push(RnClass::Top);
        }
        if survivors.len() == 1 { survivors.pop().expect("one") } else { RnClass::Unresolved(survivors) }
    }

    pub fn classify(&self, f: &Formula) -> Result<RnClass, KripkeError> {
        Ok(self.classify_print(&self.bank.fingerprint(f)?))
    }
}

/// Compares `f` with `P_0 … P_count` and `P_∞` over models of at most
/// `worlds` worlds.
pub fn rn_classify_within(f: &Formula, count: usize, worlds: usize) -> Result<RnClass, KripkeError> {
    if let Some(v) = f.variables().into_iter().find(|v| &**v != "p") {
        return Err(KripkeError::NotOneVariable(v.to_string()));
    }
    RnTable::new(count, worlds)?.classify(f)
}

/// Classification among `P_0 … P_12` and `P_∞` over models of at most six worlds.
pub fn rn_classify(f: &Formula) -> Result<RnClass, KripkeError> {
    rn_classify_within(f, 12, DEFAULT_WORLDS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recursion_matches_the_labels() {
        let ps = rn_sequence(8);
        assert_eq!(ps[3], f("(¬p→(p∧¬p))"));
        assert_eq!(ps[4], f("(¬p∨p)"));
        assert_eq!(ps[5], Formula::imp(ps[3].clone(), ps[2].clone()));
        assert_eq!(ps[7], Formula::imp(ps[5].clone(), ps[4].clone()));
        assert_eq!(ps[8], Formula::or(ps[5].clone(), ps[6].clone()));
        assert_eq!(rn_formula(2), f("p"));
    }

    #[test]
    fn classifies_named_formulas() {
        assert_eq!(rn_classify(&f("¬¬p")).unwrap(), RnClass::P(3));
        assert_eq!(rn_classify(&f("(p∨¬p)")).unwrap(), RnClass::P(4));
        assert_eq!(rn_classify(&f("(¬¬p→p)")).unwrap(), RnClass::P(5));
        assert_eq!(rn_classify(&f("(¬p∨¬¬p)")).unwrap(), RnClass::P(6));
        assert_eq!(rn_classify(&f("((p→p)∧p)")).unwrap(), RnClass::P(2));
        assert_eq!(rn_classify(&f("¬(p∧¬p)")).unwrap(), RnClass::Top);
        assert!(rn_classify(&f("(p∨q)")).is_err());
    }

    #[test]
    fn fingerprints_agree_with_search() {
        let bank = OneVariableModels::new(4);
        let ps = rn_sequence(7);
        for a in &ps {
            for b in &ps {
                let (fa, fb) = (bank.fingerprint(a).unwrap(), bank.fingerprint(b).unwrap());
                let searched = int_countermodel(&Formula::imp(a.clone(), b.clone()), 4).unwrap();
                assert_eq!(bank.below(&fa, &fb), searched.is_none(), "{a} → {b}");
                if let Some(c) = bank.separating(&fa, &fb) {
                    assert!(crate::kripke::forces(&c.model, 0, a).unwrap());
                    assert!(!crate::kripke::forces(&c.model, 0, b).unwrap());
                }
                let imp = bank.combine(IMP, &[&fa, &fb]).unwrap();
                assert_eq!(imp, bank.fingerprint(&Formula::imp(a.clone(), b.clone())).unwrap());
            }
        }
    }
}
