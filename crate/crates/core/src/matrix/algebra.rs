use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use super::MatrixError;
use crate::language::{Signature, Sym};

/// Total operation table; entry index is the mixed-radix number of the
/// argument tuple with the first argument most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpTable {
    pub arity: usize,
    pub table: Vec<u32>,
}

impl OpTable {
    pub fn from_fn(n: usize, arity: usize, f: impl Fn(&[usize]) -> usize) -> Self {
        let mut table = Vec::with_capacity(n.pow(arity as u32));
        let mut args = vec![0usize; arity];
        loop {
            table.push(f(&args) as u32);
            if !advance(&mut args, n) {
                break;
            }
        }
        OpTable { arity, table }
    }

    #[inline]
    pub fn get(&self, n: usize, args: &[usize]) -> usize {
        let idx = args.iter().fold(0usize, |acc, &a| acc * n + a);
        self.table[idx] as usize
    }
}

/// Odometer step over `n`-ary digits, last digit fastest. False after wrapping.
pub(crate) fn advance(digits: &mut [usize], n: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < n {
            return true;
        }
        *d = 0;
    }
    false
}

/// Finite algebra: named elements in a fixed order, total operation tables,
/// and an element per constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    elements: Vec<String>,
    ops: Vec<(Sym, OpTable)>,
    consts: Vec<(Sym, usize)>,
    signature: Signature,
}

impl FiniteAlgebra {
    pub fn new(
        elements: Vec<String>,
        ops: Vec<(String, OpTable)>,
        consts: Vec<(String, usize)>,
    ) -> Result<Self, MatrixError> {
        let n = elements.len();
        if n == 0 {
            return Err(MatrixError::Malformed("algebra has no elements".into()));
        }
        let mut names = elements.clone();
        names.sort();
        names.dedup();
        if names.len() != n {
            return Err(MatrixError::Malformed("element names must be distinct".into()));
        }
        for (name, t) in &ops {
            if t.table.len() != n.pow(t.arity as u32) {
                return Err(MatrixError::Malformed(format!("table for `{name}` is not total")));
            }
            if t.table.iter().any(|&e| e as usize >= n) {
                return Err(MatrixError::Malformed(format!("table for `{name}` leaves the carrier")));
            }
        }
        if consts.iter().any(|(_, e)| *e >= n) {
            return Err(MatrixError::Malformed("constant outside the carrier".into()));
        }
        let signature = Signature::new(
            ops.iter().map(|(name, t)| (name.clone(), t.arity)),
            consts.iter().map(|(c, _)| c.clone()),
        )
        .map_err(|e| MatrixError::Malformed(e.to_string()))?;
        Ok(FiniteAlgebra {
            elements,
            ops: ops.into_iter().map(|(k, t)| (Arc::from(k.as_str()), t)).collect(),
            consts: consts.into_iter().map(|(k, e)| (Arc::from(k.as_str()), e)).collect(),
            signature,
        })
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_name(&self, e: usize) -> &str {
        &self.elements[e]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn ops(&self) -> &[(Sym, OpTable)] {
        &self.ops
    }

    pub fn consts(&self) -> &[(Sym, usize)] {
        &self.consts
    }

    pub fn op_index(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|(n, _)| &**n == name)
    }

    pub fn table(&self, name: &str) -> Option<&OpTable> {
        self.ops.iter().find(|(n, _)| &**n == name).map(|(_, t)| t)
    }

    pub fn constant(&self, name: &str) -> Option<usize> {
        self.consts.iter().find(|(n, _)| &**n == name).map(|(_, e)| *e)
    }

    /// Applies the named operation. Panics if it is not in the signature.
    pub fn apply(&self, name: &str, args: &[usize]) -> usize {
        let t = self.table(name).unwrap_or_else(|| panic!("no operation `{name}`"));
        t.get(self.size(), args)
    }

    /// The algebra restricted to the listed operations and constants.
    pub fn reduct(&self, ops: &[&str], consts: &[&str]) -> Result<FiniteAlgebra, MatrixError> {
        let pick = |name: &&str| -> Result<(String, OpTable), MatrixError> {
            self.table(name)
                .map(|t| (name.to_string(), t.clone()))
                .ok_or_else(|| MatrixError::BadParameter(format!("no operation `{name}`")))
        };
        let ops = ops.iter().map(pick).collect::<Result<Vec<_>, _>>()?;
        let consts = consts
            .iter()
            .map(|c| {
                self.constant(c)
                    .map(|e| (c.to_string(), e))
                    .ok_or_else(|| MatrixError::BadParameter(format!("no constant `{c}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        FiniteAlgebra::new(self.elements.clone(), ops, consts)
    }

    /// Adds (or replaces) an operation given pointwise.
    pub fn with_op(&self, name: &str, arity: usize, f: impl Fn(&[usize]) -> usize) -> Result<FiniteAlgebra, MatrixError> {
        let mut ops: Vec<(String, OpTable)> =
            self.ops.iter().filter(|(n, _)| &**n != name).map(|(n, t)| (n.to_string(), t.clone())).collect();
        ops.push((name.to_string(), OpTable::from_fn(self.size(), arity, f)));
        let consts = self.consts.iter().map(|(n, e)| (n.to_string(), *e)).collect();
        FiniteAlgebra::new(self.elements.clone(), ops, consts)
    }

    pub fn with_constant(&self, name: &str, e: usize) -> Result<FiniteAlgebra, MatrixError> {
        let ops = self.ops.iter().map(|(n, t)| (n.to_string(), t.clone())).collect();
        let mut consts: Vec<(String, usize)> =
            self.consts.iter().filter(|(n, _)| &**n != name).map(|(n, e)| (n.to_string(), *e)).collect();
        consts.push((name.to_string(), e));
        FiniteAlgebra::new(self.elements.clone(), ops, consts)
    }

    fn table_json(&self, t: &OpTable) -> Value {
        fn nest(alg: &FiniteAlgebra, t: &OpTable, prefix: &mut Vec<usize>) -> Value {
            if prefix.len() == t.arity {
                return json!(alg.element_name(t.get(alg.size(), prefix)));
            }
            let mut row = Vec::new();
            for e in 0..alg.size() {
                prefix.push(e);
                row.push(nest(alg, t, prefix));
                prefix.pop();
            }
            Value::Array(row)
        }
        nest(self, t, &mut Vec::new())
    }
}

/// Logical matrix: an algebra with a designated subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    name: String,
    algebra: FiniteAlgebra,
    designated: Vec<bool>,
}

impl Matrix {
    pub fn new(name: &str, algebra: FiniteAlgebra, designated: &[usize]) -> Result<Self, MatrixError> {
        Self::build(name, algebra, designated, false)
    }

    /// Permits a one-element carrier.
    pub fn degenerate(name: &str, algebra: FiniteAlgebra, designated: &[usize]) -> Result<Self, MatrixError> {
        Self::build(name, algebra, designated, true)
    }

    fn build(name: &str, algebra: FiniteAlgebra, designated: &[usize], allow_trivial: bool) -> Result<Self, MatrixError> {
        if algebra.size() < 2 && !allow_trivial {
            return Err(MatrixError::Malformed("matrix algebra needs at least two elements".into()));
        }
        let mut d = vec![false; algebra.size()];
        for &e in designated {
            *d.get_mut(e).ok_or_else(|| MatrixError::Malformed("designated element outside carrier".into()))? = true;
        }
        Ok(Matrix { name: name.to_string(), algebra, designated: d })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn is_designated(&self, e: usize) -> bool {
        self.designated[e]
    }

    pub fn designated(&self) -> Vec<usize> {
        (0..self.algebra.size()).filter(|&e| self.designated[e]).collect()
    }

    pub fn with_designated(&self, name: &str, designated: &[usize]) -> Result<Matrix, MatrixError> {
        Matrix::build(name, self.algebra.clone(), designated, self.algebra.size() < 2)
    }

    pub fn to_json(&self) -> Value {
        let a = &self.algebra;
        let mut ops = serde_json::Map::new();
        for (name, t) in a.ops() {
            ops.insert(name.to_string(), json!({ "arity": t.arity, "table": a.table_json(t) }));
        }
        let consts: serde_json::Map<String, Value> =
            a.consts().iter().map(|(c, e)| (c.to_string(), json!(a.element_name(*e)))).collect();
        json!({
            "name": self.name,
            "elements": a.elements(),
            "designated": self.designated().iter().map(|&e| a.element_name(e)).collect::<Vec<_>>(),
            "ops": ops,
            "consts": consts,
        })
    }

    pub fn from_json(v: &Value) -> Result<Matrix, MatrixError> {
        let bad = |m: &str| MatrixError::Malformed(m.to_string());
        let elements: Vec<String> = v
            .get("elements")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `elements` array"))?
            .iter()
            .map(|e| e.as_str().map(str::to_string).ok_or_else(|| bad("element names must be strings")))
            .collect::<Result<_, _>>()?;
        let index: BTreeMap<&str, usize> = elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        let lookup = |x: &Value| -> Result<usize, MatrixError> {
            x.as_str()
                .and_then(|s| index.get(s).copied())
                .ok_or_else(|| MatrixError::UnknownElement(x.to_string()))
        };
        let n = elements.len();
        let mut ops = Vec::new();
        if let Some(obj) = v.get("ops") {
            for (name, spec) in obj.as_object().ok_or_else(|| bad("`ops` must be an object"))? {
                let arity = spec.get("arity").and_then(Value::as_u64).ok_or_else(|| bad("op needs `arity`"))? as usize;
                let mut flat = Vec::with_capacity(n.pow(arity as u32));
                fn walk(
                    v: &Value,
                    depth: usize,
                    n: usize,
                    out: &mut Vec<u32>,
                    lookup: &dyn Fn(&Value) -> Result<usize, MatrixError>,
                ) -> Result<(), MatrixError> {
                    if depth == 0 {
                        out.push(lookup(v)? as u32);
                        return Ok(());
                    }
                    let row = v
                        .as_array()
                        .filter(|r| r.len() == n)
                        .ok_or_else(|| MatrixError::Malformed("table row has wrong length".into()))?;
                    row.iter().try_for_each(|x| walk(x, depth - 1, n, out, lookup))
                }
                let table = spec.get("table").ok_or_else(|| bad("op needs `table`"))?;
                walk(table, arity, n, &mut flat, &lookup)?;
                ops.push((name.clone(), OpTable { arity, table: flat }));
            }
        }
        let mut consts = Vec::new();
        if let Some(obj) = v.get("consts") {
            for (c, e) in obj.as_object().ok_or_else(|| bad("`consts` must be an object"))? {
                consts.push((c.clone(), lookup(e)?));
            }
        }
        let designated = v
            .get("designated")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `designated` array"))?
            .iter()
            .map(&lookup)
            .collect::<Result<Vec<_>, _>>()?;
        let name = v.get("name").and_then(Value::as_str).unwrap_or("custom");
        let algebra = FiniteAlgebra::new(elements, ops, consts)?;
        let degenerate = v.get("degenerate").and_then(Value::as_bool).unwrap_or(false);
        Matrix::build(name, algebra, &designated, degenerate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odometer_enumerates_all_tuples() {
        let mut d = vec![0, 0];
        let mut seen = vec![d.clone()];
        while advance(&mut d, 3) {
            seen.push(d.clone());
        }
        assert_eq!(seen.len(), 9);
        assert_eq!(seen[1], vec![0, 1]);
        assert_eq!(d, vec![0, 0]);
    }

    #[test]
    fn table_indexing_first_argument_major() {
        let t = OpTable::from_fn(3, 2, |a| a[0]);
        assert_eq!(t.get(3, &[2, 0]), 2);
        assert_eq!(t.table[3], 1);
    }

    #[test]
    fn rejects_partial_tables() {
        let t = OpTable { arity: 2, table: vec![0, 1, 1] };
        assert!(FiniteAlgebra::new(vec!["0".into(), "1".into()], vec![("∧".into(), t)], vec![]).is_err());
    }

    #[test]
    fn trivial_matrix_needs_flag() {
        let a = FiniteAlgebra::new(vec!["*".into()], vec![], vec![]).unwrap();
        assert!(Matrix::new("t", a.clone(), &[0]).is_err());
        assert!(Matrix::degenerate("t", a, &[0]).is_ok());
    }
}
