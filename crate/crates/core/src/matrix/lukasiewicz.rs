use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::MatrixError;
use crate::language::{Formula, SignatureMismatch, Sym, AND, BOT, IFF, IMP, NOT, OR, TOP};

pub type RationalValuation = BTreeMap<Sym, BigRational>;

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact value in the rational Łukasiewicz algebra:
/// ¬x = 1−x, x→y = min(1, 1−x+y), ∧ = min, ∨ = max.
pub fn lukasiewicz_eval(v: &RationalValuation, f: &Formula) -> Result<BigRational, MatrixError> {
    let one = BigRational::one();
    let zero = BigRational::zero();
    let imp = |x: &BigRational, y: &BigRational| (&one - x + y).min(one.clone());
    match f {
        Formula::Var(x) => {
            let val = v.get(x).ok_or_else(|| MatrixError::UnassignedVariable(x.to_string()))?;
            if *val < zero || *val > one {
                return Err(MatrixError::OutOfRange(format!("{x} = {val}")));
            }
            Ok(val.clone())
        }
        Formula::Const(c) if &**c == TOP => Ok(one),
        Formula::Const(c) if &**c == BOT => Ok(zero),
        Formula::Const(c) => Err(MatrixError::SignatureMismatch(SignatureMismatch::UnknownConstant(c.to_string()))),
        Formula::App(op, args) => {
            let vals = args.iter().map(|a| lukasiewicz_eval(v, a)).collect::<Result<Vec<_>, _>>()?;
            match (&**op, vals.as_slice()) {
                (NOT, [x]) => Ok(&one - x),
                (IMP, [x, y]) => Ok(imp(x, y)),
                (AND, [x, y]) => Ok(x.clone().min(y.clone())),
                (OR, [x, y]) => Ok(x.clone().max(y.clone())),
                (IFF, [x, y]) => Ok(imp(x, y).min(imp(y, x))),
                _ => Err(MatrixError::SignatureMismatch(SignatureMismatch::UnknownConnective(op.to_string()))),
            }
        }
    }
}

/// Rationals in [0,1] with denominator at most `d`, ascending.
pub fn grid(d: u32) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = (1..=d as i64)
        .flat_map(|b| (0..=b).map(move |a| ratio(a, b)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Least grid valuation (lexicographic in variable order, ascending values)
/// giving `f` a value below 1.
pub fn grid_refute(f: &Formula, d: u32, budget: u64) -> Result<Option<RationalValuation>, MatrixError> {
    if d == 0 {
        return Err(MatrixError::BadParameter("denominator bound must be positive".into()));
    }
    let pts = grid(d);
    let vars: Vec<Sym> = f.variables().into_iter().collect();
    let total = (pts.len() as u128).checked_pow(vars.len() as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(MatrixError::BudgetExceeded { needed: total, budget });
    }
    let mut idx = vec![0usize; vars.len()];
    loop {
        let v: RationalValuation = vars.iter().cloned().zip(idx.iter().map(|&i| pts[i].clone())).collect();
        if !lukasiewicz_eval(&v, f)?.is_one() {
            return Ok(Some(v));
        }
        if !super::algebra::advance(&mut idx, pts.len()) {
            return Ok(None);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::f;
    use std::sync::Arc;

    fn val(pairs: &[(&str, BigRational)]) -> RationalValuation {
        pairs.iter().map(|(k, v)| (Arc::from(*k), v.clone())).collect()
    }

    #[test]
    fn implication_and_negation() {
        let v = val(&[("p", ratio(1, 2)), ("q", ratio(1, 3))]);
        assert_eq!(lukasiewicz_eval(&v, &f("(p→q)")).unwrap(), ratio(5, 6));
        assert_eq!(lukasiewicz_eval(&v, &f("¬p")).unwrap(), ratio(1, 2));
    }

    #[test]
    fn grid_refutes_excluded_middle_at_half() {
        let w = grid_refute(&f("(p∨¬p)"), 2, 1000).unwrap().unwrap();
        assert_eq!(w.get("p"), Some(&ratio(1, 2)));
        assert!(grid_refute(&f("(p→(q→p))"), 5, 10_000).unwrap().is_none());
    }

    #[test]
    fn out_of_range() {
        let v = val(&[("p", ratio(3, 2))]);
        assert!(matches!(lukasiewicz_eval(&v, &f("p")), Err(MatrixError::OutOfRange(_))));
    }

    #[test]
    fn grid_points() {
        assert_eq!(grid(3).len(), 5);
    }
}
