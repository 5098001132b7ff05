//! Substitutions, metaformula instantiation and matching.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

use crate::language::{formula_from_json, formula_to_json, Formula, Metaformula, Sym};

/// Finite-support variable map; variables outside the support are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Substitution {
    map: BTreeMap<Sym, Formula>,
}

impl Substitution {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds from bindings, dropping any `p ↦ p`.
    pub fn from_pairs<I: IntoIterator<Item = (Sym, Formula)>>(pairs: I) -> Self {
        let map = pairs
            .into_iter()
            .filter(|(v, f)| !matches!(f, Formula::Var(w) if w == v))
            .collect();
        Substitution { map }
    }

    pub fn unary(p: &str, a: Formula) -> Self {
        Self::from_pairs([(Arc::from(p), a)])
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = (&Sym, &Formula)> {
        self.map.iter()
    }

    pub fn get(&self, v: &str) -> Formula {
        self.map.get(v).cloned().unwrap_or_else(|| Formula::var(v))
    }

    pub fn apply(&self, f: &Formula) -> Formula {
        if self.map.is_empty() {
            return f.clone();
        }
        match f {
            Formula::Var(v) => self.map.get(v).cloned().unwrap_or_else(|| f.clone()),
            Formula::Const(_) => f.clone(),
            Formula::App(op, args) => {
                Formula::App(op.clone(), args.iter().map(|a| self.apply(a)).collect::<Vec<_>>().into())
            }
        }
    }

    /// `compose(s1, s2)` applies `s2` first, then `s1`.
    pub fn compose(s1: &Substitution, s2: &Substitution) -> Substitution {
        let mut pairs: Vec<(Sym, Formula)> = s2.map.iter().map(|(v, f)| (v.clone(), s1.apply(f))).collect();
        pairs.extend(s1.map.iter().filter(|(v, _)| !s2.map.contains_key(*v)).map(|(v, f)| (v.clone(), f.clone())));
        Substitution::from_pairs(pairs)
    }

    pub fn image<'a, I: IntoIterator<Item = &'a Formula>>(&self, xs: I) -> BTreeSet<Formula> {
        xs.into_iter().map(|f| self.apply(f)).collect()
    }

    /// Members of `universe` whose image lies in `xs`.
    pub fn preimage<'a, I: IntoIterator<Item = &'a Formula>>(
        &self,
        xs: &BTreeSet<Formula>,
        universe: I,
    ) -> BTreeSet<Formula> {
        universe.into_iter().filter(|f| xs.contains(&self.apply(f))).cloned().collect()
    }

    /// Variables mentioned by the support: bound variables and those in images.
    pub fn variables(&self) -> BTreeSet<Sym> {
        let mut out = BTreeSet::new();
        for (v, f) in &self.map {
            out.insert(v.clone());
            out.extend(f.variables());
        }
        out
    }
}

/// A variable name not in `avoid`.
pub fn fresh_variable(avoid: &BTreeSet<Sym>) -> Sym {
    (1..).map(|i| format!("r{i}")).find(|n| !avoid.contains(n.as_str())).map(Arc::from).expect("infinite family")
}

/// Splits a simultaneous substitution on `f` into a chain of unary ones,
/// returned in application order: first every bound variable is renamed
/// to a fresh one, then each fresh variable receives its image.
pub fn unary_chain(s: &Substitution, f: &Formula) -> Vec<Substitution> {
    let mut avoid = f.variables();
    avoid.extend(s.variables());
    let mut renames = Vec::new();
    let mut fills = Vec::new();
    for (v, img) in s.support() {
        let r = fresh_variable(&avoid);
        avoid.insert(r.clone());
        renames.push(Substitution::unary(v, Formula::Var(r.clone())));
        fills.push(Substitution::unary(&r, img.clone()));
    }
    renames.extend(fills);
    renames
}

impl Serialize for Substitution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let obj: serde_json::Map<String, Value> =
            self.map.iter().map(|(k, v)| (k.to_string(), formula_to_json(v))).collect();
        obj.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Substitution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let obj = serde_json::Map::<String, Value>::deserialize(d)?;
        let pairs = obj
            .iter()
            .map(|(k, v)| formula_from_json(v).map(|f| (Arc::from(k.as_str()), f)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Ok(Substitution::from_pairs(pairs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("metavariable `{0}` is not bound")]
pub struct UnboundMetavariable(pub String);

/// Finite map from metavariables to formulas.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Instantiation {
    map: BTreeMap<Sym, Formula>,
}

impl Instantiation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Sym, Formula)>>(pairs: I) -> Self {
        Instantiation { map: pairs.into_iter().collect() }
    }

    pub fn get(&self, m: &str) -> Option<&Formula> {
        self.map.get(m)
    }

    pub fn insert(&mut self, m: Sym, f: Formula) {
        self.map.insert(m, f);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Sym, &Formula)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Keeps only bindings for the given metavariables.
    pub fn restrict(&self, keep: &[Sym]) -> Instantiation {
        Instantiation { map: self.map.iter().filter(|(k, _)| keep.contains(k)).map(|(k, v)| (k.clone(), v.clone())).collect() }
    }

    /// Post-composes with a substitution.
    pub fn then(&self, s: &Substitution) -> Instantiation {
        Instantiation { map: self.map.iter().map(|(k, v)| (k.clone(), s.apply(v))).collect() }
    }
}

impl Serialize for Instantiation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let obj: serde_json::Map<String, Value> =
            self.map.iter().map(|(k, v)| (k.to_string(), formula_to_json(v))).collect();
        obj.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Instantiation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let obj = serde_json::Map::<String, Value>::deserialize(d)?;
        let pairs = obj
            .iter()
            .map(|(k, v)| formula_from_json(v).map(|f| (Arc::from(k.as_str()), f)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Ok(Instantiation::from_pairs(pairs))
    }
}

pub fn instantiate(m: &Metaformula, i: &Instantiation) -> Result<Formula, UnboundMetavariable> {
    match m {
        Metaformula::Meta(v) => i.map.get(v).cloned().ok_or_else(|| UnboundMetavariable(v.to_string())),
        Metaformula::Const(c) => Ok(Formula::Const(c.clone())),
        Metaformula::App(op, args) => Ok(Formula::App(
            op.clone(),
            args.iter().map(|a| instantiate(a, i)).collect::<Result<Vec<_>, _>>()?.into(),
        )),
    }
}

/// Extends `acc` so that `m` instantiates to `f`; false on conflict.
/// On failure `acc` may hold partial bindings.
pub fn match_into(m: &Metaformula, f: &Formula, acc: &mut Instantiation) -> bool {
    match (m, f) {
        (Metaformula::Meta(v), _) => match acc.map.get(v) {
            Some(bound) => bound == f,
            None => {
                acc.map.insert(v.clone(), f.clone());
                true
            }
        },
        (Metaformula::Const(c), Formula::Const(d)) => c == d,
        (Metaformula::App(op, margs), Formula::App(fop, fargs)) => {
            op == fop && margs.len() == fargs.len() && margs.iter().zip(fargs.iter()).all(|(a, b)| match_into(a, b, acc))
        }
        _ => false,
    }
}

/// The unique instantiation taking `m` to `f`, if any.
pub fn match_instance(m: &Metaformula, f: &Formula) -> Option<Instantiation> {
    let mut acc = Instantiation::new();
    match_into(m, f, &mut acc).then_some(acc)
}

/// The metaformula obtained by reading each variable `x` of `f` as the metavariable `name(x)`.
pub fn schematize(f: &Formula, name: &dyn Fn(&str) -> String) -> Metaformula {
    match f {
        Formula::Var(v) => Metaformula::meta(&name(v)),
        Formula::Const(c) => Metaformula::Const(c.clone()),
        Formula::App(op, args) => {
            Metaformula::App(op.clone(), args.iter().map(|a| schematize(a, name)).collect::<Vec<_>>().into())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::{f, m, parse, Notation, Signature};

    fn fig_sig() -> Signature {
        Signature::new(vec![("Fi".into(), 2), ("Fj".into(), 2), ("¬".into(), 1), ("→".into(), 2)], vec!["a".into()])
            .unwrap()
    }

    #[test]
    fn identity_fixes_everything() {
        let g = f("((p→q)∨¬r)");
        assert_eq!(Substitution::identity().apply(&g), g);
        assert!(Substitution::unary("p", f("p")).is_identity());
    }

    #[test]
    fn simultaneous_substitution_on_figure_formula() {
        let sig = fig_sig();
        let base = parse("FiFjapq", &sig, Notation::Prefix).unwrap();
        let alpha = parse("¬q", &sig, Notation::Infix).unwrap();
        let beta = parse("(p→q)", &sig, Notation::Infix).unwrap();
        let s = Substitution::from_pairs([(Arc::from("p"), alpha.clone()), (Arc::from("q"), beta.clone())]);
        let expected = Formula::app(
            "Fi",
            vec![Formula::app("Fj", vec![Formula::constant("a"), alpha.clone()]), beta.clone()],
        );
        assert_eq!(s.apply(&base), expected);
        // the unary chain with a fresh r gives the same result
        let chain = Substitution::compose(
            &Substitution::unary("r", beta.clone()),
            &Substitution::compose(&Substitution::unary("p", alpha.clone()), &Substitution::unary("q", f("r"))),
        );
        assert_eq!(chain.apply(&base), expected);
        let mut g = base.clone();
        for u in unary_chain(&s, &base) {
            g = u.apply(&g);
        }
        assert_eq!(g, expected);
    }

    #[test]
    fn unary_clauses() {
        let s = Substitution::unary("p", f("(q∧r)"));
        assert_eq!(s.apply(&f("p")), f("(q∧r)"));
        assert_eq!(s.apply(&f("q")), f("q"));
    }

    #[test]
    fn compose_swap() {
        let s = Substitution::compose(&Substitution::unary("q", f("p")), &Substitution::unary("p", f("q")));
        assert_eq!(s.apply(&f("p")), f("p"));
        assert_eq!(Substitution::compose(&Substitution::identity(), &s), s);
    }

    #[test]
    fn empty_image_and_preimage() {
        let s = Substitution::unary("p", f("¬q"));
        assert!(s.image(&[]).is_empty());
        assert!(s.preimage(&BTreeSet::new(), &[f("p"), f("q")]).is_empty());
    }

    #[test]
    fn instantiation_and_matching() {
        let ax1 = m("(α→(β→α))");
        let i = Instantiation::from_pairs([(Arc::from("α"), f("p")), (Arc::from("β"), f("q"))]);
        assert_eq!(instantiate(&ax1, &i).unwrap(), f("(p→(q→p))"));
        assert!(matches!(instantiate(&ax1, &Instantiation::new()), Err(UnboundMetavariable(_))));
        assert_eq!(instantiate(&m("(⊤→⊥)"), &Instantiation::new()).unwrap(), f("(⊤→⊥)"));

        let id = m("(α→α)");
        let got = match_instance(&id, &f("((p∨q)→(p∨q))")).unwrap();
        assert_eq!(got.get("α"), Some(&f("(p∨q)")));
        assert!(match_instance(&id, &f("(p→q)")).is_none());
    }

    #[test]
    fn substitution_json() {
        let s = Substitution::unary("p", f("¬q"));
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"p":{"app":{"op":"¬","args":[{"var":"q"}]}}}"#);
        let back: Substitution = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
