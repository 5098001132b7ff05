use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::formula::Formula;
use super::meta::Metaformula;
use super::parse::parse_infix;
use super::signature::Signature;

pub fn formula_to_json(f: &Formula) -> Value {
    match f {
        Formula::Var(v) => json!({ "var": &**v }),
        Formula::Const(c) => json!({ "const": &**c }),
        Formula::App(op, args) => json!({
            "app": { "op": &**op, "args": args.iter().map(formula_to_json).collect::<Vec<_>>() }
        }),
    }
}

/// Reads formula JSON. A bare string is read as infix text over the modal signature.
pub fn formula_from_json(v: &Value) -> Result<Formula, String> {
    if let Some(s) = v.as_str() {
        return parse_infix(s, &Signature::modal()).map_err(|e| e.to_string());
    }
    let obj = v.as_object().ok_or_else(|| format!("expected a formula object, found {v}"))?;
    if obj.len() != 1 {
        return Err(format!("formula object must have exactly one key: {v}"));
    }
    let (k, inner) = obj.iter().next().expect("one key");
    match k.as_str() {
        "var" => inner.as_str().map(Formula::var).ok_or_else(|| "var name must be a string".into()),
        "const" => inner.as_str().map(Formula::constant).ok_or_else(|| "const name must be a string".into()),
        "app" => {
            let op = inner.get("op").and_then(Value::as_str).ok_or("app needs a string `op`")?;
            let args = inner.get("args").and_then(Value::as_array).ok_or("app needs an `args` array")?;
            if args.is_empty() {
                return Err(format!("connective `{op}` applied to no arguments"));
            }
            let args = args.iter().map(formula_from_json).collect::<Result<Vec<_>, _>>()?;
            Ok(Formula::app(op, args))
        }
        other => Err(format!("unknown formula key `{other}`")),
    }
}

pub fn metaformula_to_json(m: &Metaformula) -> Value {
    match m {
        Metaformula::Meta(v) => json!({ "meta": &**v }),
        Metaformula::Const(c) => json!({ "const": &**c }),
        Metaformula::App(op, args) => json!({
            "app": { "op": &**op, "args": args.iter().map(metaformula_to_json).collect::<Vec<_>>() }
        }),
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        formula_to_json(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        formula_from_json(&v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_shape() {
        let f = Formula::imp(Formula::var("p"), Formula::constant("⊥"));
        let v = formula_to_json(&f);
        assert_eq!(
            v,
            json!({"app":{"op":"→","args":[{"var":"p"},{"const":"⊥"}]}})
        );
        assert_eq!(formula_from_json(&v).unwrap(), f);
    }

    #[test]
    fn strings_parse_as_infix() {
        let f: Formula = serde_json::from_str("\"(p -> q)\"").unwrap();
        assert_eq!(f.to_infix(), "(p→q)");
    }

    #[test]
    fn rejects_malformed() {
        assert!(formula_from_json(&json!({"var": 3})).is_err());
        assert!(formula_from_json(&json!({"app": {"op": "¬", "args": []}})).is_err());
        assert!(formula_from_json(&json!({"x": "p"})).is_err());
    }
}
