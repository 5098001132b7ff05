//! Exhaustive verification of lattice, Boolean and Heyting laws.

use std::fmt;

use serde_json::{json, Value};

use super::HeytingError;
use crate::language::{f, Formula, Sym};
use crate::matrix::{FiniteAlgebra, Program};

/// An equation, an inequality read as `l ∧ r = l`, or an equivalence of
/// two inequalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Law {
    Eq(Formula, Formula),
    Le(Formula, Formula),
    LeIff((Formula, Formula), (Formula, Formula)),
}

impl fmt::Display for Law {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Law::Eq(l, r) => write!(out, "{l} = {r}"),
            Law::Le(l, r) => write!(out, "{l} ≤ {r}"),
            Law::LeIff((a, b), (c, d)) => write!(out, "{a} ≤ {b} ⟺ {c} ≤ {d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: &'static str,
    pub law: Law,
    /// Expected only in Boolean algebras.
    pub boolean_only: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    LatticeL1L4,
    BoundedB1,
    BooleanB2,
    HeytingH1H6,
    IntPropsAH,
    DerivedEqs,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::LatticeL1L4, Suite::BoundedB1, Suite::BooleanB2, Suite::HeytingH1H6, Suite::IntPropsAH, Suite::DerivedEqs];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LatticeL1L4 => "lattice_l1_l4",
            Suite::BoundedB1 => "bounded_b1",
            Suite::BooleanB2 => "boolean_b2",
            Suite::HeytingH1H6 => "heyting_h1_h6",
            Suite::IntPropsAH => "int_props_a_h",
            Suite::DerivedEqs => "derived_eqs",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    pub fn identities(self) -> Vec<Identity> {
        let eq = |name, l: &str, r: &str| Identity { name, law: Law::Eq(f(l), f(r)), boolean_only: false };
        let le = |name, l: &str, r: &str| Identity { name, law: Law::Le(f(l), f(r)), boolean_only: false };
        match self {
            Suite::LatticeL1L4 => vec![
                eq("l1-i", "(x∧y)", "(y∧x)"),
                eq("l1-ii", "(x∨y)", "(y∨x)"),
                eq("l2-i", "(x∧(y∧z))", "((x∧y)∧z)"),
                eq("l2-ii", "(x∨(y∨z))", "((x∨y)∨z)"),
                eq("l3-i", "((x∧y)∨y)", "y"),
                eq("l3-ii", "(x∧(x∨y))", "x"),
                eq("l4-i", "(x∧(y∨z))", "((x∧y)∨(x∧z))"),
                eq("l4-ii", "(x∨(y∧z))", "((x∨y)∧(x∨z))"),
            ],
            Suite::BoundedB1 => vec![eq("b1-i", "(x∧⊤)", "x"), eq("b1-ii", "(x∨⊤)", "⊤")],
            Suite::BooleanB2 => vec![eq("b2-i", "((x∧¬x)∨y)", "y"), eq("b2-ii", "((x∨¬x)∧y)", "y")],
            Suite::HeytingH1H6 => vec![
                eq("h1", "(x∧(x→y))", "(x∧y)"),
                eq("h2", "((x→y)∧y)", "y"),
                eq("h3", "((x→y)∧(x→z))", "(x→(y∧z))"),
                eq("h4", "(x∧(y→y))", "x"),
                eq("h5", "(¬⊤∨y)", "y"),
                eq("h6", "¬x", "(x→¬⊤)"),
            ],
            Suite::IntPropsAH => vec![
                le("a", "x", "(y→x)"),
                le("b", "(x→y)", "((x→(y→z))→(x→z))"),
                le("c", "x", "(y→(x∧y))"),
                le("d", "(x∧y)", "x"),
                le("e", "x", "(x∨y)"),
                le("f", "(x→z)", "((y→z)→((x∨y)→z))"),
                le("g", "(x→y)", "((x→¬y)→¬x)"),
                le("h", "x", "(¬x→y)"),
            ],
            Suite::DerivedEqs => vec![
                eq("idempotence-∧", "(x∧x)", "x"),
                eq("idempotence-∨", "(x∨x)", "x"),
                Identity { name: "double-negation", law: Law::Eq(f("¬¬x"), f("x")), boolean_only: true },
                Identity { name: "excluded-middle", law: Law::Eq(f("(x∨¬x)"), f("⊤")), boolean_only: true },
                eq("contradiction", "(x∧¬x)", "¬⊤"),
                eq("self-implication", "(x→x)", "⊤"),
                Identity {
                    name: "pseudo-complementation",
                    law: Law::LeIff((f("x"), f("(y→z)")), (f("(x∧y)"), f("z"))),
                    boolean_only: false,
                },
            ],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityResult {
    pub name: String,
    pub law: String,
    pub boolean_only: bool,
    /// First assignment violating the law, variables in alphabetical order.
    pub witness: Option<Vec<(Sym, usize)>>,
}

impl IdentityResult {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub suite: Suite,
    pub results: Vec<IdentityResult>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(IdentityResult::holds)
    }

    /// Ignores failures of laws expected only in Boolean algebras.
    pub fn passed_intuitionistically(&self) -> bool {
        self.results.iter().all(|r| r.holds() || r.boolean_only)
    }

    pub fn result(&self, name: &str) -> Option<&IdentityResult> {
        self.results.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self, alg: &FiniteAlgebra) -> Value {
        json!({
            "suite": self.suite.name(),
            "passed": self.passed(),
            "identities": self.results.iter().map(|r| json!({
                "name": r.name,
                "law": r.law,
                "holds": r.holds(),
                "boolean_only": r.boolean_only,
                "witness": r.witness.as_ref().map(|w| w.iter().map(|(v, e)| (v.to_string(), json!(alg.element_name(*e)))).collect::<serde_json::Map<_, _>>()),
            })).collect::<Vec<_>>(),
        })
    }
}

fn law_vars(law: &Law) -> Vec<Sym> {
    let mut vs = std::collections::BTreeSet::new();
    let mut add = |x: &Formula| vs.extend(x.variables());
    match law {
        Law::Eq(l, r) | Law::Le(l, r) => {
            add(l);
            add(r);
        }
        Law::LeIff((a, b), (c, d)) => [a, b, c, d].into_iter().for_each(add),
    }
    vs.into_iter().collect()
}

/// First violating assignment of `law` in `alg`.
pub fn counterexample(alg: &FiniteAlgebra, law: &Law) -> Result<Option<Vec<(Sym, usize)>>, HeytingError> {
    let vars = law_vars(law);
    let compile = |x: &Formula| Program::compile(alg, x, &vars);
    let meet = |a: usize, b: usize| -> Result<usize, HeytingError> {
        alg.table(crate::language::AND)
            .map(|t| t.get(alg.size(), &[a, b]))
            .ok_or_else(|| HeytingError::MissingOperation("∧".into()))
    };
    let progs: Vec<Program> = match law {
        Law::Eq(l, r) | Law::Le(l, r) => vec![compile(l)?, compile(r)?],
        Law::LeIff((a, b), (c, d)) => vec![compile(a)?, compile(b)?, compile(c)?, compile(d)?],
    };
    let n = alg.size();
    let mut vals = vec![0usize; vars.len()];
    let mut stack = Vec::new();
    loop {
        let v: Vec<usize> = progs.iter().map(|p| p.run(alg, &vals, &mut stack)).collect();
        let ok = match law {
            Law::Eq(..) => v[0] == v[1],
            Law::Le(..) => meet(v[0], v[1])? == v[0],
            Law::LeIff(..) => (meet(v[0], v[1])? == v[0]) == (meet(v[2], v[3])? == v[2]),
        };
        if !ok {
            return Ok(Some(vars.iter().cloned().zip(vals).collect()));
        }
        if !crate::matrix::advance(&mut vals, n) {
            return Ok(None);
        }
    }
}

pub fn check_identities(alg: &FiniteAlgebra, suite: Suite) -> Result<IdentityReport, HeytingError> {
    let results = suite
        .identities()
        .into_iter()
        .map(|id| {
            Ok(IdentityResult {
                name: id.name.to_string(),
                law: id.law.to_string(),
                boolean_only: id.boolean_only,
                witness: counterexample(alg, &id.law)?,
            })
        })
        .collect::<Result<_, HeytingError>>()?;
    Ok(IdentityReport { suite, results })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{b2, godel_algebra, l3};

    #[test]
    fn b2_passes_everything() {
        let a = b2().algebra().clone();
        for s in Suite::ALL {
            assert!(check_identities(&a, s).unwrap().passed(), "{}", s.name());
        }
    }

    #[test]
    fn godel_three_is_heyting_not_boolean() {
        let a = godel_algebra(3).unwrap();
        assert!(check_identities(&a, Suite::HeytingH1H6).unwrap().passed());
        assert!(check_identities(&a, Suite::IntPropsAH).unwrap().passed());
        let r = check_identities(&a, Suite::BooleanB2).unwrap();
        assert!(r.result("b2-i").unwrap().holds());
        let w = r.result("b2-ii").unwrap().witness.clone().unwrap();
        assert_eq!(w[0], ("x".into(), 1));
        let d = check_identities(&a, Suite::DerivedEqs).unwrap();
        assert!(!d.passed() && d.passed_intuitionistically());
    }

    #[test]
    fn lukasiewicz_fails_heyting_laws() {
        let r = check_identities(l3().algebra(), Suite::HeytingH1H6).unwrap();
        assert!(!r.result("h1").unwrap().holds());
        assert!(check_identities(l3().algebra(), Suite::LatticeL1L4).unwrap().passed());
    }

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
    }
}
