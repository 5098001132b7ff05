//! Free Boolean algebras as truth tables over the generators.

use super::{LtError, QuotientAlgebra, QuotientClass, Semantics, OPERATIONS};
use crate::heyting::{normal_form_of_table, truth_table, NormalForm};
use crate::language::{nth_variable, Formula, Sym, AND, BOT, IFF, IMP, NOT, OR, TOP};

pub const MAX_RANK: usize = 3;

pub(crate) fn table_of(f: &Formula, gens: &[Sym]) -> Result<u64, LtError> {
    Ok(truth_table(f, gens)?)
}

/// The free Boolean algebra on `k` generators `p, q, r`. Class `i` is the
/// Boolean function whose truth table is `i`, so `𝟎` comes first and `𝟏`
/// last; representatives are full disjunctive normal forms.
pub fn lt_classical(k: usize) -> Result<QuotientAlgebra, LtError> {
    if k > MAX_RANK {
        return Err(LtError::BadRank(k));
    }
    let generators: Vec<Sym> = (0..k).map(|i| Sym::from(nth_variable(i).as_str())).collect();
    let rows = 1usize << k;
    let n = 1usize << rows;
    let full = n - 1;
    let classes = (0..n)
        .map(|bits| {
            let representative = if k == 0 {
                Formula::constant(if bits == 0 { BOT } else { TOP })
            } else {
                normal_form_of_table(bits as u64, &generators, NormalForm::Dnf)?
            };
            let key = (0..rows).map(|r| if bits >> r & 1 == 1 { '1' } else { '0' }).collect();
            Ok(QuotientClass { key, representative })
        })
        .collect::<Result<Vec<_>, LtError>>()?;
    let table = |op: &str, arity: usize| -> Vec<Option<usize>> {
        let cells = n.pow(arity as u32);
        (0..cells)
            .map(|c| {
                let (a, b) = if arity == 1 { (c, 0) } else { (c / n, c % n) };
                Some(match op {
                    AND => a & b,
                    OR => a | b,
                    IMP => (full & !a) | b,
                    NOT => full & !a,
                    IFF => full & !(a ^ b),
                    _ => unreachable!("fixed signature"),
                })
            })
            .collect()
    };
    let tables = OPERATIONS.iter().map(|&(op, arity)| (Sym::from(op), arity, table(op, arity))).collect();
    let leq = (0..n).map(|a| (0..n).map(|b| a & !b == 0).collect()).collect();
    Ok(QuotientAlgebra {
        name: format!("LT_Cl({k})"),
        generators,
        classes,
        tables,
        zero: 0,
        unit: full,
        leq,
        unresolved: Vec::new(),
        semantics: Semantics::Boolean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heyting::covers;
    use crate::language::f;
    use crate::lindenbaum_tarski::class_of;

    #[test]
    fn sizes() {
        let sizes: Vec<usize> = (0..=3).map(|k| lt_classical(k).unwrap().len()).collect();
        assert_eq!(sizes, vec![2, 4, 16, 256]);
        assert_eq!(lt_classical(4).unwrap_err(), LtError::BadRank(4));
    }

    #[test]
    fn rank_one_is_a_diamond() {
        let q = lt_classical(1).unwrap();
        let labels: Vec<String> = (0..4).map(|i| q.label(i)).collect();
        assert_eq!(labels, vec!["𝟎=[p∧¬p]", "[¬p]", "[p]", "𝟏=[p∨¬p]"]);
        assert_eq!(covers(q.order()), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(q.to_dot().contains("𝟏=[p∨¬p]"));
    }

    #[test]
    fn quotient_map() {
        let q1 = lt_classical(1).unwrap();
        assert_eq!(class_of(&q1, &f("¬¬p")).unwrap(), class_of(&q1, &f("p")).unwrap());
        assert_eq!(class_of(&q1, &f("(p∧¬p)")).unwrap(), q1.zero());
        assert_eq!(class_of(&q1, &f("q")), Err(LtError::RankExceeded("q".into())));
        let q2 = lt_classical(2).unwrap();
        assert_eq!(class_of(&q2, &f("(p→q)")).unwrap(), class_of(&q2, &f("(¬p∨q)")).unwrap());
        let q0 = lt_classical(0).unwrap();
        assert_eq!(class_of(&q0, &f("(⊤→⊥)")).unwrap(), q0.zero());
    }

    #[test]
    fn representatives_land_in_their_class() {
        let q = lt_classical(2).unwrap();
        for (i, c) in q.classes().iter().enumerate() {
            assert_eq!(class_of(&q, &c.representative).unwrap(), i);
        }
        let a = q.to_algebra().unwrap();
        assert_eq!(a.size(), 16);
    }
}
