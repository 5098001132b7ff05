//! Finite lattices, Boolean and Heyting algebras: identity suites, up-set
//! algebras of posets, normal forms and Hasse diagrams.

mod identities;
mod normal;
mod poset;
mod upset;

use thiserror::Error;

pub use identities::{check_identities, counterexample, Identity, IdentityReport, IdentityResult, Law, Suite};
pub use normal::{normal_form, normal_form_of_table, truth_table, NormalForm, MAX_GENERATORS};
pub use poset::{FinitePoset, Set};
pub use upset::{upset_algebra, UpsetAlgebra, MAX_POSET};

use crate::language::{AND, IFF, IMP, NOT, OR, TOP};
use crate::matrix::{FiniteAlgebra, MatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeytingError {
    #[error("{0} elements is too many")]
    TooLarge(usize),
    #[error("bad poset: {0}")]
    BadPoset(String),
    #[error("not a Boolean algebra: {0} fails")]
    NotBoolean(String),
    #[error("normal forms need 1 to 3 generators, got {0}")]
    TooManyVariables(usize),
    #[error("variable `{0}` is not a generator")]
    UnknownGenerator(String),
    #[error("algebra lacks `{0}`")]
    MissingOperation(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Adds `x → y := ¬x ∨ y` (and the matching ↔) to a Boolean algebra.
pub fn boolean_to_heyting(b: &FiniteAlgebra) -> Result<FiniteAlgebra, HeytingError> {
    for op in [AND, OR, NOT] {
        if b.table(op).is_none() {
            return Err(HeytingError::MissingOperation(op.into()));
        }
    }
    if b.constant(TOP).is_none() {
        return Err(HeytingError::MissingOperation(TOP.into()));
    }
    for suite in [Suite::LatticeL1L4, Suite::BoundedB1, Suite::BooleanB2] {
        let r = check_identities(b, suite)?;
        if let Some(bad) = r.results.iter().find(|r| !r.holds()) {
            return Err(HeytingError::NotBoolean(bad.name.clone()));
        }
    }
    let imp = |x: usize, y: usize| b.apply(OR, &[b.apply(NOT, &[x]), y]);
    Ok(b.with_op(IMP, 2, |a| imp(a[0], a[1]))?.with_op(IFF, 2, |a| b.apply(AND, &[imp(a[0], a[1]), imp(a[1], a[0])]))?)
}

/// `x ≤ y` iff `x ∧ y = x`.
pub fn order(alg: &FiniteAlgebra) -> Result<Vec<Vec<bool>>, HeytingError> {
    if alg.table(AND).is_none() {
        return Err(HeytingError::MissingOperation(AND.into()));
    }
    let n = alg.size();
    let leq: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| alg.apply(AND, &[x, y]) == x).collect()).collect();
    let partial = (0..n).all(|x| leq[x][x])
        && (0..n).all(|x| (0..n).all(|y| x == y || !(leq[x][y] && leq[y][x])))
        && (0..n).all(|x| (0..n).all(|y| !leq[x][y] || (0..n).all(|z| !leq[y][z] || leq[x][z])));
    if !partial {
        return Err(HeytingError::MissingOperation("a semilattice ∧".into()));
    }
    Ok(leq)
}

/// Covering pairs of a partial order matrix.
pub fn covers(leq: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = leq.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && leq[a][b] && !(0..n).any(|c| c != a && c != b && leq[a][c] && leq[c][b]) {
                out.push((a, b));
            }
        }
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT graph of the covering relation, greater elements drawn higher.
pub fn hasse_dot(leq: &[Vec<bool>], labels: &[String]) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n  edge [arrowhead=none];\n");
    for (i, l) in labels.iter().enumerate() {
        out.push_str(&format!("  n{i} [label={}];\n", quote(l)));
    }
    for (a, b) in covers(leq) {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of an algebra ordered through its meet.
pub fn algebra_dot(alg: &FiniteAlgebra) -> Result<String, HeytingError> {
    Ok(hasse_dot(&order(alg)?, alg.elements()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{b2, godel_algebra};

    #[test]
    fn boolean_expansion() {
        let bare = b2().algebra().reduct(&[AND, OR, NOT], &[TOP]).unwrap();
        let h = boolean_to_heyting(&bare).unwrap();
        assert_eq!(h.table(IMP), b2().algebra().table(IMP));
        assert!(check_identities(&h, Suite::HeytingH1H6).unwrap().passed());
    }

    #[test]
    fn square_boolean_algebra() {
        let sq = upset_algebra(&FinitePoset::antichain(2)).unwrap();
        let bare = sq.algebra().reduct(&[AND, OR, NOT], &[TOP]).unwrap();
        let h = boolean_to_heyting(&bare).unwrap();
        assert_eq!(h.table(IMP), sq.algebra().table(IMP));
        let r = counterexample(&h, &Law::Eq(crate::language::f("(¬¬x→x)"), crate::language::f("⊤"))).unwrap();
        assert!(r.is_none());
    }

    #[test]
    fn chains_are_not_boolean() {
        let g = godel_algebra(3).unwrap();
        assert!(matches!(boolean_to_heyting(&g), Err(HeytingError::NotBoolean(n)) if n == "b2-ii"));
    }

    #[test]
    fn order_via_meet_and_dot() {
        let g = godel_algebra(3).unwrap();
        let leq = order(&g).unwrap();
        assert_eq!(covers(&leq), vec![(0, 1), (1, 2)]);
        let dot = algebra_dot(&g).unwrap();
        assert!(dot.contains("n0 -> n1") && dot.contains("rankdir=BT"));
    }

    #[test]
    fn order_matches_implication() {
        for p in [FinitePoset::fork(2), FinitePoset::chain(3), FinitePoset::antichain(2)] {
            let u = upset_algebra(&p).unwrap();
            let a = u.algebra();
            let top = a.size() - 1;
            let leq = order(a).unwrap();
            for (x, row) in leq.iter().enumerate() {
                for (y, &below) in row.iter().enumerate() {
                    assert_eq!(below, a.apply(IMP, &[x, y]) == top);
                }
            }
        }
    }
}
