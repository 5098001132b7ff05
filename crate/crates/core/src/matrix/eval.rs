use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::algebra::{advance, FiniteAlgebra, Matrix};
use super::MatrixError;
use crate::language::{Formula, SignatureMismatch, Sym};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Assignment of elements (by index) to variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation(pub BTreeMap<Sym, usize>);

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(mut self, var: &str, e: usize) -> Self {
        self.0.insert(Arc::from(var), e);
        self
    }

    pub fn get(&self, var: &str) -> Option<usize> {
        self.0.get(var).copied()
    }

    /// Builds from element names.
    pub fn from_names(alg: &FiniteAlgebra, pairs: &[(&str, &str)]) -> Result<Self, MatrixError> {
        let mut v = Valuation::new();
        for (var, e) in pairs {
            let idx = alg.element(e).ok_or_else(|| MatrixError::UnknownElement(e.to_string()))?;
            v = v.set(var, idx);
        }
        Ok(v)
    }

    pub fn to_json(&self, alg: &FiniteAlgebra) -> Value {
        let obj: serde_json::Map<String, Value> =
            self.0.iter().map(|(k, &e)| (k.to_string(), json!(alg.element_name(e)))).collect();
        Value::Object(obj)
    }

    pub fn from_json(alg: &FiniteAlgebra, v: &Value) -> Result<Self, MatrixError> {
        let obj = v.as_object().ok_or_else(|| MatrixError::Malformed("valuation must be an object".into()))?;
        let mut out = Valuation::new();
        for (k, e) in obj {
            let name = e.as_str().ok_or_else(|| MatrixError::UnknownElement(e.to_string()))?;
            let idx = alg.element(name).ok_or_else(|| MatrixError::UnknownElement(name.to_string()))?;
            out = out.set(k, idx);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy)]
enum Ins {
    Var(usize),
    Elem(usize),
    Op(usize),
}

/// Postfix code for evaluating a formula in a fixed algebra.
#[derive(Debug, Clone)]
pub struct Program {
    code: Vec<Ins>,
}

impl Program {
    /// Compiles `f`; `vars` fixes the slot of each variable.
    pub fn compile(alg: &FiniteAlgebra, f: &Formula, vars: &[Sym]) -> Result<Program, MatrixError> {
        let mut code = Vec::with_capacity(f.size());
        fn go(alg: &FiniteAlgebra, f: &Formula, vars: &[Sym], code: &mut Vec<Ins>) -> Result<(), MatrixError> {
            match f {
                Formula::Var(v) => {
                    let slot = vars
                        .iter()
                        .position(|w| w == v)
                        .ok_or_else(|| MatrixError::UnassignedVariable(v.to_string()))?;
                    code.push(Ins::Var(slot));
                }
                Formula::Const(c) => {
                    let e = alg
                        .constant(c)
                        .ok_or_else(|| MatrixError::SignatureMismatch(SignatureMismatch::UnknownConstant(c.to_string())))?;
                    code.push(Ins::Elem(e));
                }
                Formula::App(op, args) => {
                    let idx = alg.op_index(op).ok_or_else(|| {
                        MatrixError::SignatureMismatch(SignatureMismatch::UnknownConnective(op.to_string()))
                    })?;
                    let arity = alg.ops()[idx].1.arity;
                    if arity != args.len() {
                        return Err(MatrixError::SignatureMismatch(SignatureMismatch::WrongArity {
                            op: op.to_string(),
                            expected: arity,
                            found: args.len(),
                        }));
                    }
                    for a in args.iter() {
                        go(alg, a, vars, code)?;
                    }
                    code.push(Ins::Op(idx));
                }
            }
            Ok(())
        }
        go(alg, f, vars, &mut code)?;
        Ok(Program { code })
    }

    #[inline]
    pub fn run(&self, alg: &FiniteAlgebra, vals: &[usize], stack: &mut Vec<usize>) -> usize {
        stack.clear();
        let n = alg.size();
        let ops = alg.ops();
        for ins in &self.code {
            match *ins {
                Ins::Var(s) => stack.push(vals[s]),
                Ins::Elem(e) => stack.push(e),
                Ins::Op(i) => {
                    let t = &ops[i].1;
                    let base = stack.len() - t.arity;
                    let idx = stack[base..].iter().fold(0usize, |acc, &a| acc * n + a);
                    stack.truncate(base);
                    stack.push(t.table[idx] as usize);
                }
            }
        }
        stack[0]
    }
}

pub fn evaluate_in(alg: &FiniteAlgebra, v: &Valuation, f: &Formula) -> Result<usize, MatrixError> {
    let vars: Vec<Sym> = f.variables().into_iter().collect();
    let vals = vars
        .iter()
        .map(|x| v.get(x).ok_or_else(|| MatrixError::UnassignedVariable(x.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    if vals.iter().any(|&e| e >= alg.size()) {
        return Err(MatrixError::UnknownElement("valuation value outside carrier".into()));
    }
    let p = Program::compile(alg, f, &vars)?;
    Ok(p.run(alg, &vals, &mut Vec::new()))
}

pub fn evaluate(m: &Matrix, v: &Valuation, f: &Formula) -> Result<usize, MatrixError> {
    evaluate_in(m.algebra(), v, f)
}

/// Value of `f` under every valuation of `vars`, in lexicographic order.
pub fn value_table(alg: &FiniteAlgebra, f: &Formula, vars: &[Sym]) -> Result<Vec<usize>, MatrixError> {
    let p = Program::compile(alg, f, vars)?;
    let n = alg.size();
    let mut vals = vec![0usize; vars.len()];
    let mut stack = Vec::new();
    let mut out = Vec::with_capacity(n.pow(vars.len() as u32));
    loop {
        out.push(p.run(alg, &vals, &mut stack));
        if !advance(&mut vals, n) {
            break;
        }
    }
    Ok(out)
}

/// Result of an exhaustive search: the least counterexample, if any, and
/// the number of valuations examined up to and including it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Search {
    pub witness: Option<Valuation>,
    pub evaluations: u64,
}

fn count(n: usize, k: usize, budget: u64) -> Result<u64, MatrixError> {
    let total = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(MatrixError::BudgetExceeded { needed: total, budget });
    }
    Ok(total as u64)
}

const CHUNK: u64 = 1 << 12;

/// Least valuation designating every premise but not the goal.
pub fn consequence_search(m: &Matrix, premises: &[Formula], goal: &Formula, budget: u64) -> Result<Search, MatrixError> {
    let alg = m.algebra();
    let mut vs: BTreeSet<Sym> = goal.variables();
    for x in premises {
        vs.extend(x.variables());
    }
    let vars: Vec<Sym> = vs.into_iter().collect();
    let n = alg.size();
    let total = count(n, vars.len(), budget)?;
    let progs = premises
        .iter()
        .map(|x| Program::compile(alg, x, &vars))
        .collect::<Result<Vec<_>, _>>()?;
    let goal_p = Program::compile(alg, goal, &vars)?;
    let scan = |start: u64, end: u64| -> Option<(u64, Vec<usize>)> {
        let mut vals = vec![0usize; vars.len()];
        let mut rest = start;
        for d in vals.iter_mut().rev() {
            *d = (rest % n as u64) as usize;
            rest /= n as u64;
        }
        let mut stack = Vec::new();
        for i in start..end {
            let refutes = !m.is_designated(goal_p.run(alg, &vals, &mut stack))
                && progs.iter().all(|p| m.is_designated(p.run(alg, &vals, &mut stack)));
            if refutes {
                return Some((i, vals));
            }
            advance(&mut vals, n);
        }
        None
    };
    let found = if total <= 4 * CHUNK {
        scan(0, total)
    } else {
        let chunks = total.div_ceil(CHUNK);
        (0..chunks)
            .into_par_iter()
            .find_map_first(|c| scan(c * CHUNK, ((c + 1) * CHUNK).min(total)))
    };
    Ok(match found {
        Some((i, vals)) => Search {
            witness: Some(Valuation(vars.iter().cloned().zip(vals).collect())),
            evaluations: i + 1,
        },
        None => Search { witness: None, evaluations: total },
    })
}

pub fn validity_search(m: &Matrix, f: &Formula, budget: u64) -> Result<Search, MatrixError> {
    consequence_search(m, &[], f, budget)
}

pub fn find_refutation(m: &Matrix, f: &Formula) -> Result<Option<Valuation>, MatrixError> {
    Ok(validity_search(m, f, DEFAULT_BUDGET)?.witness)
}

pub fn is_valid(m: &Matrix, f: &Formula) -> Result<bool, MatrixError> {
    Ok(find_refutation(m, f)?.is_none())
}

/// `X ⊨_M f`.
pub fn matrix_consequence(m: &Matrix, premises: &[Formula], f: &Formula) -> Result<bool, MatrixError> {
    Ok(consequence_search(m, premises, f, DEFAULT_BUDGET)?.witness.is_none())
}

/// Consequence relative to a class of matrices: holds in every member.
pub fn class_consequence(ms: &[Matrix], premises: &[Formula], f: &Formula) -> Result<bool, MatrixError> {
    for m in ms {
        if !matrix_consequence(m, premises, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::f;
    use crate::matrix::builtin;

    #[test]
    fn lowest_witness_is_lexicographic() {
        let l3 = builtin("l3").unwrap();
        let s = validity_search(&l3, &f("(p∨q)"), DEFAULT_BUDGET).unwrap();
        let w = s.witness.unwrap();
        assert_eq!(w.get("p"), Some(0));
        assert_eq!(w.get("q"), Some(0));
        assert_eq!(s.evaluations, 1);
    }

    #[test]
    fn parallel_scan_matches_sequential() {
        let g = builtin("godel(8)").unwrap();
        let h = f("¬(((p∧q)∧r)∧(s∧p1))");
        let fast = validity_search(&g, &h, DEFAULT_BUDGET).unwrap();
        let vars: Vec<Sym> = h.variables().into_iter().collect();
        let table = value_table(g.algebra(), &h, &vars).unwrap();
        let first = table.iter().position(|&e| !g.is_designated(e)).unwrap();
        assert_eq!(fast.evaluations, first as u64 + 1);
    }

    #[test]
    fn budget_is_enforced() {
        let g = builtin("godel(8)").unwrap();
        let err = validity_search(&g, &f("((p∨q)∨r)"), 100).unwrap_err();
        assert!(matches!(err, MatrixError::BudgetExceeded { needed: 512, budget: 100 }));
    }

    #[test]
    fn unassigned_and_foreign_symbols() {
        let b2 = builtin("b2").unwrap();
        assert!(matches!(
            evaluate(&b2, &Valuation::new(), &f("p")),
            Err(MatrixError::UnassignedVariable(_))
        ));
        assert!(matches!(
            evaluate(&b2, &Valuation::new().set("p", 1), &f("□p")),
            Err(MatrixError::SignatureMismatch(_))
        ));
    }
}
