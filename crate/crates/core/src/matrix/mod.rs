//! Finite algebras, logical matrices, evaluation, validity and matrix consequence.

mod algebra;
mod builtin;
mod eval;
mod hom;
mod lukasiewicz;

use thiserror::Error;

use crate::language::{Formula, SignatureMismatch};

pub use algebra::{FiniteAlgebra, Matrix, OpTable};
pub use builtin::{b2, builtin, g3_prime, godel, godel_algebra, godel_names, l3, l3_modal, l3_tau, BUILTIN_NAMES};
pub use eval::{
    class_consequence, consequence_search, evaluate, evaluate_in, find_refutation, is_valid, matrix_consequence,
    validity_search, value_table, Program, Search, Valuation, DEFAULT_BUDGET,
};
pub use hom::{check_hom_filter, is_homomorphism, subuniverse_closure};
pub use lukasiewicz::{grid, grid_refute, lukasiewicz_eval, ratio, RationalValuation};

pub(crate) use algebra::advance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("signature mismatch: {0}")]
    SignatureMismatch(#[from] SignatureMismatch),
    #[error("variable `{0}` has no value")]
    UnassignedVariable(String),
    #[error("enumeration needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("malformed matrix: {0}")]
    Malformed(String),
}

/// Outcome of the LC decision: the chain used and the least refutation in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcVerdict {
    pub chain: usize,
    pub search: Search,
}

impl LcVerdict {
    pub fn valid(&self) -> bool {
        self.search.witness.is_none()
    }
}

/// Decides membership in the logic of all finite Gödel chains by
/// evaluating in the chain with |Sub(f)| + 2 elements.
pub fn lc_decide(f: &Formula, budget: u64) -> Result<LcVerdict, MatrixError> {
    let chain = f.subformulas().len() + 2;
    let search = validity_search(&godel(chain)?, f, budget)?;
    Ok(LcVerdict { chain, search })
}

pub fn lc_is_valid(f: &Formula) -> Result<bool, MatrixError> {
    Ok(lc_decide(f, DEFAULT_BUDGET)?.valid())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::f;

    #[test]
    fn lc_examples() {
        let v = lc_decide(&f("((p→q)∨(q→p))"), DEFAULT_BUDGET).unwrap();
        assert!(v.valid());
        assert_eq!(v.chain, 7);
        assert!(!lc_is_valid(&f("(((p→q)→p)→p)")).unwrap());
        assert!(!is_valid(&godel(3).unwrap(), &f("(((p→q)→p)→p)")).unwrap());
    }
}
