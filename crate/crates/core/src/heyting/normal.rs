//! Full disjunctive and conjunctive normal forms over a generator list.

use super::HeytingError;
use crate::language::{Formula, Sym};
use crate::matrix::{b2, value_table};

pub const MAX_GENERATORS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalForm {
    Dnf,
    Cnf,
}

/// Truth table of `f` over `gens`: bit `r` is the value at row `r`, where
/// generator `i` takes bit `k-1-i` of `r`.
pub fn truth_table(f: &Formula, gens: &[Sym]) -> Result<u64, HeytingError> {
    if gens.len() > 6 {
        return Err(HeytingError::TooManyVariables(gens.len()));
    }
    if let Some(v) = f.variables().into_iter().find(|v| !gens.contains(v)) {
        return Err(HeytingError::UnknownGenerator(v.to_string()));
    }
    let b = b2();
    let values = value_table(b.algebra(), f, gens)?;
    Ok(values.iter().enumerate().filter(|(_, &v)| b.is_designated(v)).fold(0, |acc, (r, _)| acc | 1 << r))
}

fn fold(op: fn(Formula, Formula) -> Formula, parts: Vec<Formula>) -> Option<Formula> {
    parts.into_iter().reduce(op)
}

/// Normal form of the Boolean function with table `bits`. Rows run from
/// all-true down to all-false; literals follow generator order. The empty
/// disjunction is `p∧¬p` and the empty conjunction `p∨¬p`, `p` the first
/// generator.
pub fn normal_form_of_table(bits: u64, gens: &[Sym], kind: NormalForm) -> Result<Formula, HeytingError> {
    let k = gens.len();
    if k == 0 {
        return Err(HeytingError::TooManyVariables(0));
    }
    if k > MAX_GENERATORS {
        return Err(HeytingError::TooManyVariables(k));
    }
    let first = Formula::Var(gens[0].clone());
    let literal = |i: usize, positive: bool| {
        let v = Formula::Var(gens[i].clone());
        if positive { v } else { Formula::not(v) }
    };
    let rows = (0..1u64 << k).rev();
    let value = |r: u64, i: usize| r >> (k - 1 - i) & 1 == 1;
    let out = match kind {
        NormalForm::Dnf => {
            let terms: Vec<Formula> = rows
                .filter(|r| bits >> r & 1 == 1)
                .map(|r| fold(Formula::and, (0..k).map(|i| literal(i, value(r, i))).collect()).expect("k ≥ 1"))
                .collect();
            fold(Formula::or, terms).unwrap_or_else(|| Formula::and(first.clone(), Formula::not(first)))
        }
        NormalForm::Cnf => {
            let clauses: Vec<Formula> = rows
                .filter(|r| bits >> r & 1 == 0)
                .map(|r| fold(Formula::or, (0..k).map(|i| literal(i, !value(r, i))).collect()).expect("k ≥ 1"))
                .collect();
            fold(Formula::and, clauses).unwrap_or_else(|| Formula::or(first.clone(), Formula::not(first)))
        }
    };
    Ok(out)
}

pub fn normal_form(f: &Formula, gens: &[Sym], kind: NormalForm) -> Result<Formula, HeytingError> {
    if gens.len() > MAX_GENERATORS {
        return Err(HeytingError::TooManyVariables(gens.len()));
    }
    normal_form_of_table(truth_table(f, gens)?, gens, kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::f;

    fn gens(names: &[&str]) -> Vec<Sym> {
        names.iter().map(|&n| Sym::from(n)).collect()
    }

    #[test]
    fn expands_over_all_generators() {
        let pq = gens(&["p", "q"]);
        assert_eq!(normal_form(&f("p"), &pq, NormalForm::Dnf).unwrap(), f("((p∧q)∨(p∧¬q))"));
        assert_eq!(normal_form(&f("p"), &pq, NormalForm::Cnf).unwrap(), f("((p∨¬q)∧(p∨q))"));
        assert_eq!(normal_form(&f("(p∧¬p)"), &pq, NormalForm::Dnf).unwrap(), f("(p∧¬p)"));
        assert_eq!(normal_form(&f("(q∨¬q)"), &pq, NormalForm::Cnf).unwrap(), f("(p∨¬p)"));
    }

    #[test]
    fn three_generators_and_limits() {
        let pqr = gens(&["p", "q", "r"]);
        let d = normal_form(&f("((p∧q)∧r)"), &pqr, NormalForm::Dnf).unwrap();
        assert_eq!(d, f("((p∧q)∧r)"));
        assert!(matches!(
            normal_form(&f("p"), &gens(&["p", "q", "r", "s"]), NormalForm::Dnf),
            Err(HeytingError::TooManyVariables(4))
        ));
        assert!(matches!(normal_form(&f("s"), &pqr, NormalForm::Dnf), Err(HeytingError::UnknownGenerator(_))));
    }
}
