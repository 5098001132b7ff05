//! The prefix `P_0 … P_n` of the one-variable intuitionistic lattice.

use super::{LtError, QuotientAlgebra, QuotientClass, Semantics, OPERATIONS};
use crate::kripke::{rn_top, Fingerprint, RnClass, RnTable, DEFAULT_WORLDS};
use crate::language::{Formula, Sym};

pub const MAX_PREFIX: usize = 13;

/// Covering pairs `P_a ⋖ P_b` among `P_0 … P_12`.
pub const RN_COVERS: [(usize, usize); 17] = [
    (0, 1),
    (0, 2),
    (2, 3),
    (1, 4),
    (2, 4),
    (4, 5),
    (3, 6),
    (4, 6),
    (6, 7),
    (5, 8),
    (6, 8),
    (8, 9),
    (7, 10),
    (8, 10),
    (10, 11),
    (9, 12),
    (10, 12),
];

/// `P_0 … P_n` and `𝟏 = [p→p]`, compared over every rooted Kripke model of
/// at most six worlds. `P_i ≤ P_j` when no such model refutes `P_i→P_j`;
/// pairs that no model tells apart are listed as unresolved. Table entries
/// are the classes of the combined formulas, `None` past the prefix.
pub fn rn_lattice(n: usize) -> Result<QuotientAlgebra, LtError> {
    if n > MAX_PREFIX {
        return Err(LtError::PrefixTooLong(n));
    }
    let table = RnTable::new(n, DEFAULT_WORLDS)?;
    let unit = n + 1;
    let mut classes: Vec<QuotientClass> =
        table.formulas.iter().enumerate().map(|(i, p)| QuotientClass { key: format!("P{i}"), representative: p.clone() }).collect();
    classes.push(QuotientClass { key: "1".into(), representative: rn_top() });
    let prints: Vec<&Fingerprint> = table.prints.iter().chain(std::iter::once(&table.top)).collect();
    let size = prints.len();
    let leq: Vec<Vec<bool>> = (0..size).map(|a| (0..size).map(|b| table.bank.below(prints[a], prints[b])).collect()).collect();
    let unresolved = (0..size).flat_map(|a| (a + 1..size).map(move |b| (a, b))).filter(|&(a, b)| leq[a][b] && leq[b][a]).collect();
    let locate = |fp: &Fingerprint| match table.classify_print(fp) {
        RnClass::P(k) => Some(k),
        RnClass::Top => Some(unit),
        RnClass::Unresolved(_) => None,
    };
    let mut tables = Vec::new();
    for (op, arity) in OPERATIONS {
        let cells = size.pow(arity as u32);
        let out = (0..cells)
            .map(|c| {
                let args: Vec<&Fingerprint> = if arity == 1 { vec![prints[c]] } else { vec![prints[c / size], prints[c % size]] };
                Ok(locate(&table.bank.combine(op, &args)?))
            })
            .collect::<Result<Vec<_>, LtError>>()?;
        tables.push((Sym::from(op), arity, out));
    }
    Ok(QuotientAlgebra {
        name: format!("LT_Int(1)[P0..P{n}]"),
        generators: vec![Sym::from("p")],
        classes,
        tables,
        zero: 0,
        unit,
        leq,
        unresolved,
        semantics: Semantics::Kripke(Box::new(table)),
    })
}

pub(crate) fn class_in(q: &QuotientAlgebra, t: &RnTable, f: &Formula) -> Result<usize, LtError> {
    match t.classify(f)? {
        RnClass::P(k) => Ok(k),
        RnClass::Top => Ok(q.unit()),
        RnClass::Unresolved(_) => Err(LtError::Unresolved(f.to_infix())),
    }
}
