use std::fmt;

use serde_json::{json, Value};

use super::CalculusError;
use crate::language::{metaformula_to_json, m, Metaformula};

/// A schema `premises / conclusion`; premiseless rules are axiom schemata.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructuralRule {
    pub name: String,
    pub premises: Vec<Metaformula>,
    pub conclusion: Metaformula,
}

impl StructuralRule {
    pub fn new(name: &str, premises: Vec<Metaformula>, conclusion: Metaformula) -> Self {
        StructuralRule { name: name.to_string(), premises, conclusion }
    }

    pub fn axiom(name: &str, conclusion: Metaformula) -> Self {
        Self::new(name, Vec::new(), conclusion)
    }

    pub fn is_axiom(&self) -> bool {
        self.premises.is_empty()
    }

    /// Metavariables of premises then conclusion, in first-occurrence order.
    pub fn metavariables(&self) -> Vec<crate::language::Sym> {
        let mut out = Vec::new();
        for p in self.premises.iter().chain(std::iter::once(&self.conclusion)) {
            for v in p.metavariables() {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "premises": self.premises.iter().map(metaformula_to_json).collect::<Vec<_>>(),
            "conclusion": metaformula_to_json(&self.conclusion),
        })
    }
}

impl fmt::Display for StructuralRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.premises.iter().map(|p| p.to_string()).collect();
        write!(f, "{}: {} / {}", self.name, ps.join(", "), self.conclusion)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Calculus {
    pub name: String,
    pub rules: Vec<StructuralRule>,
}

impl Calculus {
    pub fn new(name: &str, rules: Vec<StructuralRule>) -> Self {
        Calculus { name: name.to_string(), rules }
    }

    pub fn rule(&self, name: &str) -> Option<&StructuralRule> {
        self.rules.iter().find(|r| r.name == name)
    }

    pub fn axioms(&self) -> impl Iterator<Item = &StructuralRule> {
        self.rules.iter().filter(|r| r.is_axiom())
    }

    pub fn has_rule(&self, r: &StructuralRule) -> bool {
        self.rules.iter().any(|s| s.premises == r.premises && s.conclusion == r.conclusion)
    }
}

/// Axiom schema `axn` for `n` in 1..=12.
pub fn axiom_schema(n: usize) -> Option<StructuralRule> {
    let text = match n {
        1 => "(α→(β→α))",
        2 => "((α→β)→((α→(β→γ))→(α→γ)))",
        3 => "(α→(β→(α∧β)))",
        4 => "((α∧β)→α)",
        5 => "((α∧β)→β)",
        6 => "(α→(α∨β))",
        7 => "(β→(α∨β))",
        8 => "((α→γ)→((β→γ)→((α∨β)→γ)))",
        9 => "((α→β)→((α→¬β)→¬α))",
        10 => "(¬¬α→α)",
        11 => "(β→(¬β→α))",
        12 => "((α→β)∨(β→α))",
        _ => return None,
    };
    Some(StructuralRule::axiom(&format!("ax{n}"), m(text)))
}

pub fn modus_ponens() -> StructuralRule {
    StructuralRule::new("MP", vec![m("α"), m("(α→β)")], m("β"))
}

fn hilbert(name: &str, axioms: &[usize]) -> Calculus {
    let mut rules: Vec<StructuralRule> = axioms.iter().filter_map(|&n| axiom_schema(n)).collect();
    rules.push(modus_ponens());
    Calculus::new(name, rules)
}

pub fn hilbert_cl() -> Calculus {
    hilbert("hilbert_cl", &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10])
}

pub fn hilbert_int() -> Calculus {
    hilbert("hilbert_int", &[1, 2, 3, 4, 5, 6, 7, 8, 9, 11])
}

pub fn hilbert_p() -> Calculus {
    hilbert("hilbert_p", &[1, 2, 3, 4, 5, 6, 7, 8])
}

pub fn hilbert_lc() -> Calculus {
    hilbert("hilbert_lc", &[1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 12])
}

/// Introduction and elimination rules without hypothesis discharge.
pub fn nd_rules() -> Calculus {
    let r = |name: &str, ps: &[&str], c: &str| StructuralRule::new(name, ps.iter().map(|p| m(p)).collect(), m(c));
    Calculus::new(
        "nd_rules",
        vec![
            r("a-i", &["α", "β"], "(α∧β)"),
            r("a-ii", &["α"], "(α∨β)"),
            r("a-iii", &["β"], "(α∨β)"),
            r("a-iv", &["α"], "¬¬α"),
            r("b-i", &["(α∧β)"], "α"),
            r("b-ii", &["(α∧β)"], "β"),
            r("b-iii", &["α", "(α→β)"], "β"),
            r("b-iv", &["¬¬α"], "α"),
        ],
    )
}

pub const CALCULUS_NAMES: [&str; 5] = ["hilbert_cl", "hilbert_int", "hilbert_p", "hilbert_lc", "nd_rules"];

pub fn builtin_calculus(name: &str) -> Result<Calculus, CalculusError> {
    match name {
        "hilbert_cl" | "cl" => Ok(hilbert_cl()),
        "hilbert_int" | "int" => Ok(hilbert_int()),
        "hilbert_p" | "p" => Ok(hilbert_p()),
        "hilbert_lc" | "lc" => Ok(hilbert_lc()),
        "nd_rules" | "nd" => Ok(nd_rules()),
        _ => Err(CalculusError::BadName(name.to_string())),
    }
}

/// Renders a rule as a basic Horn sentence over the unary predicate `D`,
/// naming metavariables x, y, z, … in order of first occurrence.
pub fn rule_to_horn(r: &StructuralRule) -> String {
    const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
    let metas = r.metavariables();
    let name_of = |v: &str| {
        let i = metas.iter().position(|w| &**w == v).expect("collected above");
        match NAMES.get(i) {
            Some(n) => n.to_string(),
            None => format!("x{}", i + 1 - NAMES.len()),
        }
    };
    let prefix: String = (0..metas.len()).map(|i| format!("∀{}", name_of(&metas[i]))).collect();
    let atom = |mf: &Metaformula| format!("D({})", strip_outer(mf.render_with(&name_of)));
    let body = if r.premises.is_empty() {
        atom(&r.conclusion)
    } else {
        let ps: Vec<String> = r.premises.iter().map(atom).collect();
        let lhs = if ps.len() == 1 { ps[0].clone() } else { format!("({})", ps.join(" & ")) };
        format!("({lhs} ⇒ {})", atom(&r.conclusion))
    };
    if prefix.is_empty() {
        body
    } else if r.premises.is_empty() {
        format!("{prefix} {body}")
    } else {
        format!("{prefix}{body}")
    }
}

fn strip_outer(s: String) -> String {
    if s.starts_with('(') && s.ends_with(')') {
        let inner = &s[s.char_indices().nth(1).map(|(i, _)| i).unwrap_or(1)..s.len() - 1];
        let mut depth = 0i32;
        for c in inner.chars() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth < 0 {
                        return s;
                    }
                }
                _ => {}
            }
        }
        if depth == 0 {
            return inner.to_string();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(hilbert_cl().rules.len(), 11);
        assert_eq!(hilbert_int().rules.len(), 11);
        assert_eq!(hilbert_p().rules.len(), 9);
        assert_eq!(hilbert_lc().rules.len(), 12);
        assert_eq!(nd_rules().rules.len(), 8);
    }

    #[test]
    fn positive_rules_are_shared() {
        let (cl, int) = (hilbert_cl(), hilbert_int());
        for r in &hilbert_p().rules {
            assert!(cl.has_rule(r) && int.has_rule(r), "{r}");
        }
        assert!(hilbert_lc().rule("ax12").is_some());
        assert!(hilbert_cl().rule("ax11").is_none());
    }

    #[test]
    fn horn_sentences() {
        assert_eq!(rule_to_horn(&modus_ponens()), "∀x∀y((D(x) & D(x→y)) ⇒ D(y))");
        assert_eq!(rule_to_horn(&axiom_schema(1).unwrap()), "∀x∀y D(x→(y→x))");
        assert_eq!(rule_to_horn(&StructuralRule::axiom("top", m("⊤"))), "D(⊤)");
        let dn = nd_rules().rule("b-iv").unwrap().clone();
        assert_eq!(rule_to_horn(&dn), "∀x(D(¬¬x) ⇒ D(x))");
    }

    #[test]
    fn bad_name() {
        assert!(matches!(builtin_calculus("hilbert_xyz"), Err(CalculusError::BadName(_))));
    }
}
