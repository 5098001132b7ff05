//! The Heyting algebra of up-sets of a finite poset.

use std::collections::HashMap;

use super::poset::{FinitePoset, Set};
use super::HeytingError;
use crate::language::{AND, BOT, IFF, IMP, NOT, OR, TOP};
use crate::matrix::{FiniteAlgebra, Matrix, OpTable};

pub const MAX_POSET: usize = 12;

/// Up-sets of `poset` ordered by size, with ∩, ∪, relative
/// pseudo-complement and pseudo-complement as operations.
#[derive(Clone, Debug)]
pub struct UpsetAlgebra {
    poset: FinitePoset,
    sets: Vec<Set>,
    index: HashMap<Set, usize>,
    algebra: FiniteAlgebra,
}

impl UpsetAlgebra {
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    /// Designates the full set.
    pub fn matrix(&self) -> Matrix {
        let name = format!("upsets({} worlds)", self.poset.len());
        Matrix::degenerate(&name, self.algebra.clone(), &[self.sets.len() - 1]).expect("nonempty carrier")
    }

    pub fn set(&self, e: usize) -> Set {
        self.sets[e]
    }

    pub fn element(&self, s: Set) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn sets(&self) -> &[Set] {
        &self.sets
    }
}

fn set_name(p: &FinitePoset, s: Set) -> String {
    if s == 0 {
        return "∅".into();
    }
    let members: Vec<&str> = (0..p.len()).filter(|&i| s >> i & 1 == 1).map(|i| p.names()[i].as_str()).collect();
    format!("{{{}}}", members.join(","))
}

/// Largest up-set `W` with `W ∩ u ⊆ v`.
fn relative(p: &FinitePoset, u: Set, v: Set) -> Set {
    (0..p.len()).filter(|&w| p.above(w) & u & !v == 0).fold(0, |acc, w| acc | 1 << w)
}

pub fn upset_algebra(p: &FinitePoset) -> Result<UpsetAlgebra, HeytingError> {
    if p.len() > MAX_POSET {
        return Err(HeytingError::TooLarge(p.len()));
    }
    let sets = p.up_sets();
    let index: HashMap<Set, usize> = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let n = sets.len();
    let at = |s: Set| index[&s];
    let imp = |a: usize, b: usize| at(relative(p, sets[a], sets[b]));
    let ops = vec![
        (AND.to_string(), OpTable::from_fn(n, 2, |a| at(sets[a[0]] & sets[a[1]]))),
        (OR.to_string(), OpTable::from_fn(n, 2, |a| at(sets[a[0]] | sets[a[1]]))),
        (IMP.to_string(), OpTable::from_fn(n, 2, |a| imp(a[0], a[1]))),
        (NOT.to_string(), OpTable::from_fn(n, 1, |a| imp(a[0], 0))),
        (IFF.to_string(), OpTable::from_fn(n, 2, |a| at(sets[imp(a[0], a[1])] & sets[imp(a[1], a[0])]))),
    ];
    let names = sets.iter().map(|&s| set_name(p, s)).collect();
    let algebra = FiniteAlgebra::new(names, ops, vec![(TOP.to_string(), n - 1), (BOT.to_string(), 0)])?;
    Ok(UpsetAlgebra { poset: p.clone(), sets, index, algebra })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::f;
    use crate::matrix::{godel_algebra, is_valid};

    fn same_tables(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
        a.size() == b.size()
            && [AND, OR, IMP, NOT, IFF].iter().all(|op| a.table(op).map(|t| t.table.clone()) == b.table(op).map(|t| t.table.clone()))
    }

    #[test]
    fn single_point_is_boolean() {
        let u = upset_algebra(&FinitePoset::antichain(1)).unwrap();
        assert_eq!(u.algebra().size(), 2);
        assert!(is_valid(&u.matrix(), &f("(p∨¬p)")).unwrap());
    }

    #[test]
    fn chains_give_godel_chains() {
        for n in 1..=5 {
            let u = upset_algebra(&FinitePoset::chain(n)).unwrap();
            assert!(same_tables(u.algebra(), &godel_algebra(n + 1).unwrap()), "n = {n}");
        }
    }

    #[test]
    fn fork_refutes_double_negation() {
        let u = upset_algebra(&FinitePoset::fork(2)).unwrap();
        assert_eq!(u.algebra().size(), 5);
        assert!(!is_valid(&u.matrix(), &f("(¬¬p→p)")).unwrap());
        assert!(is_valid(&u.matrix(), &f("(p→(q→p))")).unwrap());
    }

    #[test]
    fn size_limit() {
        assert!(matches!(upset_algebra(&FinitePoset::antichain(13)), Err(HeytingError::TooLarge(13))));
    }
}
