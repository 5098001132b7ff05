//! Monotone Kripke models and forcing.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::KripkeError;
use crate::heyting::{FinitePoset, Set};
use crate::language::{Formula, Sym, AND, BOT, IFF, IMP, NOT, OR, TOP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    frame: FinitePoset,
    valuation: BTreeMap<Sym, Set>,
}

impl KripkeModel {
    /// Fails unless every variable's extension is up-closed.
    pub fn new(frame: FinitePoset, valuation: BTreeMap<Sym, Set>) -> Result<Self, KripkeError> {
        let all: Set = if frame.len() == 32 { Set::MAX } else { (1 << frame.len()) - 1 };
        for (v, &s) in &valuation {
            if s & !all != 0 {
                return Err(KripkeError::BadModel(format!("`{v}` is true outside the frame")));
            }
            if !frame.is_up_set(s) {
                return Err(KripkeError::NotPersistent(v.to_string()));
            }
        }
        Ok(KripkeModel { frame, valuation })
    }

    pub fn frame(&self) -> &FinitePoset {
        &self.frame
    }

    pub fn valuation(&self) -> &BTreeMap<Sym, Set> {
        &self.valuation
    }

    /// Worlds where `v` holds; none if unassigned.
    pub fn truth_set(&self, v: &str) -> Set {
        self.valuation.get(v).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let names = self.frame.names();
        let worlds = |s: Set| (0..names.len()).filter(|&w| s >> w & 1 == 1).map(|w| names[w].clone()).collect::<Vec<_>>();
        let order: Vec<Value> = self.frame.covers().iter().map(|&(a, b)| json!([names[a], names[b]])).collect();
        let valuation: serde_json::Map<String, Value> =
            self.valuation.iter().map(|(v, &s)| (v.to_string(), json!(worlds(s)))).collect();
        json!({"worlds": names, "order": order, "valuation": valuation})
    }

    pub fn from_json(v: &Value) -> Result<Self, KripkeError> {
        let bad = |m: &str| KripkeError::BadModel(m.to_string());
        let names: Vec<String> = v["worlds"]
            .as_array()
            .ok_or_else(|| bad("`worlds` must be a list"))?
            .iter()
            .map(|w| w.as_str().map(str::to_string).ok_or_else(|| bad("world names must be strings")))
            .collect::<Result<_, _>>()?;
        let index = |w: &Value| -> Result<usize, KripkeError> {
            let s = w.as_str().ok_or_else(|| bad("world names must be strings"))?;
            names.iter().position(|n| n == s).ok_or_else(|| bad(&format!("unknown world {s}")))
        };
        let mut less = Vec::new();
        for pair in v["order"].as_array().into_iter().flatten() {
            let p = pair.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("order entries are pairs"))?;
            less.push((index(&p[0])?, index(&p[1])?));
        }
        let frame = FinitePoset::named(names.clone(), &less)?;
        let mut valuation = BTreeMap::new();
        if let Some(obj) = v["valuation"].as_object() {
            for (var, ws) in obj {
                let mut s = 0;
                for w in ws.as_array().ok_or_else(|| bad("valuation entries are lists"))? {
                    s |= 1 << index(w)?;
                }
                valuation.insert(Sym::from(var.as_str()), s);
            }
        }
        Self::new(frame, valuation)
    }

    /// DOT drawing with later worlds higher; `point` is boxed.
    pub fn to_dot(&self, point: Option<usize>) -> String {
        let names = self.frame.names();
        let mut out = String::from("digraph model {\n  rankdir=BT;\n  edge [arrowhead=none];\n");
        for (w, name) in names.iter().enumerate() {
            let true_here: Vec<&str> =
                self.valuation.iter().filter(|(_, &s)| s >> w & 1 == 1).map(|(v, _)| &**v).collect();
            let shape = if point == Some(w) { "box" } else { "ellipse" };
            out.push_str(&format!("  {name} [shape={shape}, label=\"{name}: {}\"];\n", true_here.join(",")));
        }
        for (a, b) in self.frame.covers() {
            out.push_str(&format!("  {} -> {};\n", names[a], names[b]));
        }
        out.push_str("}\n");
        out
    }
}

fn unsupported(f: &Formula) -> KripkeError {
    KripkeError::Unsupported(f.op().unwrap_or("?").to_string())
}

/// `w ⊩ f` by the forcing clauses.
pub fn forces(m: &KripkeModel, w: usize, f: &Formula) -> Result<bool, KripkeError> {
    let later = |w: usize| (0..m.frame.len()).filter(move |&u| m.frame.leq(w, u));
    Ok(match f {
        Formula::Var(v) => m.truth_set(v) >> w & 1 == 1,
        Formula::Const(c) if &**c == TOP => true,
        Formula::Const(c) if &**c == BOT => false,
        Formula::Const(c) => return Err(KripkeError::Unsupported(c.to_string())),
        Formula::App(op, args) => match (&**op, &args[..]) {
            (AND, [a, b]) => forces(m, w, a)? && forces(m, w, b)?,
            (OR, [a, b]) => forces(m, w, a)? || forces(m, w, b)?,
            (IMP, [a, b]) => {
                for u in later(w) {
                    if forces(m, u, a)? && !forces(m, u, b)? {
                        return Ok(false);
                    }
                }
                true
            }
            (NOT, [a]) => {
                for u in later(w) {
                    if forces(m, u, a)? {
                        return Ok(false);
                    }
                }
                true
            }
            (IFF, [a, b]) => {
                for u in later(w) {
                    if forces(m, u, a)? != forces(m, u, b)? {
                        return Ok(false);
                    }
                }
                true
            }
            _ => return Err(unsupported(f)),
        },
    })
}

/// Worlds forcing `f`, computed on bit sets.
pub fn extension(m: &KripkeModel, f: &Formula) -> Result<Set, KripkeError> {
    let n = m.frame.len();
    let above: Vec<Set> = (0..n).map(|w| m.frame.above(w)).collect();
    extension_in(&above, &|v| m.truth_set(v), f)
}

pub(crate) fn extension_in(above: &[Set], val: &dyn Fn(&str) -> Set, f: &Formula) -> Result<Set, KripkeError> {
    let all: Set = above.iter().fold(0, |acc, &s| acc | s);
    let boxed = |bad: Set| (0..above.len()).filter(|&w| above[w] & bad == 0).fold(0 as Set, |acc, w| acc | 1 << w);
    Ok(match f {
        Formula::Var(v) => val(v),
        Formula::Const(c) if &**c == TOP => all,
        Formula::Const(c) if &**c == BOT => 0,
        Formula::Const(c) => return Err(KripkeError::Unsupported(c.to_string())),
        Formula::App(op, args) => {
            let ext = |g: &Formula| extension_in(above, val, g);
            match (&**op, &args[..]) {
                (AND, [a, b]) => ext(a)? & ext(b)?,
                (OR, [a, b]) => ext(a)? | ext(b)?,
                (IMP, [a, b]) => boxed(ext(a)? & !ext(b)?),
                (NOT, [a]) => boxed(ext(a)?),
                (IFF, [a, b]) => boxed(ext(a)? ^ ext(b)?),
                _ => return Err(unsupported(f)),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::f;

    fn model(frame: FinitePoset, pairs: &[(&str, Set)]) -> KripkeModel {
        KripkeModel::new(frame, pairs.iter().map(|&(v, s)| (Sym::from(v), s)).collect()).unwrap()
    }

    #[test]
    fn single_world() {
        let m = model(FinitePoset::chain(1), &[("p", 1)]);
        assert!(forces(&m, 0, &f("(p∨¬p)")).unwrap());
    }

    #[test]
    fn two_chain_refutes_excluded_middle() {
        let m = model(FinitePoset::chain(2), &[("p", 0b10)]);
        assert!(!forces(&m, 0, &f("(p∨¬p)")).unwrap());
        assert!(forces(&m, 1, &f("(p∨¬p)")).unwrap());
        assert_eq!(extension(&m, &f("(p∨¬p)")).unwrap(), 0b10);
        assert_eq!(extension(&m, &f("¬¬p")).unwrap(), 0b11);
    }

    #[test]
    fn persistence_is_enforced() {
        let bad = KripkeModel::new(FinitePoset::chain(2), [(Sym::from("p"), 0b01)].into_iter().collect());
        assert!(matches!(bad, Err(KripkeError::NotPersistent(_))));
    }

    #[test]
    fn json_roundtrip_and_dot() {
        let m = model(FinitePoset::fork(2), &[("p", 0b010), ("q", 0b110)]);
        let back = KripkeModel::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
        assert!(m.to_dot(Some(0)).contains("w0 [shape=box"));
    }
}
