//! Finite-rank Lindenbaum–Tarski quotients: free Boolean algebras of rank
//! at most three and a prefix of the one-variable intuitionistic lattice.

mod classical;
mod rieger;
mod verify;

use serde_json::{json, Value};
use thiserror::Error;

use crate::heyting::{hasse_dot, HeytingError};
use crate::kripke::{KripkeError, RnTable};
use crate::language::{Formula, Sym, AND, BOT, IFF, IMP, NOT, OR, TOP};
use crate::matrix::{FiniteAlgebra, MatrixError, OpTable};

pub use classical::{lt_classical, MAX_RANK};
pub use rieger::{rn_lattice, MAX_PREFIX, RN_COVERS};
pub use verify::{lindenbaum_corpus, verify_quotient, PartialCheck, QuotientReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LtError {
    #[error("rank {0} is outside 0..=3")]
    BadRank(usize),
    #[error("variable `{0}` is beyond the rank")]
    RankExceeded(String),
    #[error("prefix length {0} exceeds 13")]
    PrefixTooLong(usize),
    #[error("`{0}` has no unique class in the quotient")]
    Unresolved(String),
    #[error(transparent)]
    Heyting(#[from] HeytingError),
    #[error(transparent)]
    Kripke(#[from] KripkeError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientClass {
    /// Truth-table bits for Boolean quotients, `P<i>` or `1` otherwise.
    pub key: String,
    pub representative: Formula,
}

/// How formulas are sent to classes.
#[derive(Clone, Debug)]
pub(crate) enum Semantics {
    /// Class index is the truth table over the generators.
    Boolean,
    Kripke(Box<RnTable>),
}

/// Equivalence classes of formulas with operation tables, possibly partial,
/// and the order `a ≤ b` iff `a→b` lies in the unit class.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    name: String,
    generators: Vec<Sym>,
    classes: Vec<QuotientClass>,
    /// `(operation, arity, table)`; `None` where the result is not a class here.
    tables: Vec<(Sym, usize, Vec<Option<usize>>)>,
    zero: usize,
    unit: usize,
    leq: Vec<Vec<bool>>,
    unresolved: Vec<(usize, usize)>,
    semantics: Semantics,
}

impl QuotientAlgebra {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Sym] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[QuotientClass] {
        &self.classes
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn order(&self) -> &[Vec<bool>] {
        &self.leq
    }

    /// Distinct classes that no countermodel separated.
    pub fn unresolved(&self) -> &[(usize, usize)] {
        &self.unresolved
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.key == key)
    }

    /// Result of `op` on classes, `None` when it falls outside.
    pub fn apply(&self, op: &str, args: &[usize]) -> Option<usize> {
        let (_, arity, table) = self.tables.iter().find(|(o, _, _)| &**o == op)?;
        if args.len() != *arity {
            return None;
        }
        let n = self.len();
        table[args.iter().fold(0, |acc, &a| acc * n + a)]
    }

    pub fn operations(&self) -> impl Iterator<Item = (&str, usize)> {
        self.tables.iter().map(|(o, a, _)| (&**o, *a))
    }

    pub fn is_total(&self) -> bool {
        self.tables.iter().all(|(_, _, t)| t.iter().all(Option::is_some))
    }

    /// `[r]` for a representative `r`, with `𝟎=` and `𝟏=` marking the bounds;
    /// `P<i>` and `𝟏` in the one-variable lattice.
    pub fn label(&self, i: usize) -> String {
        if let Semantics::Kripke(_) = self.semantics {
            return if i == self.unit { "𝟏".into() } else { self.classes[i].key.clone() };
        }
        let r = self.classes[i].representative.to_infix();
        let bare = match r.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
            Some(inner) if balanced(inner) => inner.to_string(),
            _ => r,
        };
        let mark = if i == self.zero {
            "𝟎="
        } else if i == self.unit {
            "𝟏="
        } else {
            ""
        };
        format!("{mark}[{bare}]")
    }

    /// The classes as a [`FiniteAlgebra`] named by label, if every table is total.
    pub fn to_algebra(&self) -> Option<FiniteAlgebra> {
        if !self.is_total() {
            return None;
        }
        let n = self.len();
        let ops = self
            .tables
            .iter()
            .map(|(o, arity, t)| {
                let table = OpTable::from_fn(n, *arity, |a| t[a.iter().fold(0, |acc, &x| acc * n + x)].expect("total"));
                (o.to_string(), table)
            })
            .collect();
        let labels = (0..n).map(|i| self.label(i)).collect();
        FiniteAlgebra::new(labels, ops, vec![(TOP.into(), self.unit), (BOT.into(), self.zero)]).ok()
    }

    pub fn to_dot(&self) -> String {
        let labels: Vec<String> = (0..self.len()).map(|i| self.label(i)).collect();
        hasse_dot(&self.leq, &labels)
    }

    pub fn to_json(&self) -> Value {
        let n = self.len();
        json!({
            "name": self.name,
            "generators": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "classes": self.classes.iter().enumerate().map(|(i, c)| json!({
                "key": c.key,
                "representative": c.representative.to_infix(),
                "label": self.label(i),
            })).collect::<Vec<_>>(),
            "zero": self.zero,
            "unit": self.unit,
            "covers": crate::heyting::covers(&self.leq),
            "unresolved": self.unresolved,
            "tables": self.tables.iter().map(|(o, a, t)| json!({
                "op": o.to_string(),
                "arity": a,
                "table": t,
            })).collect::<Vec<_>>(),
            "total": self.is_total(),
            "size": n,
        })
    }
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

/// Class of `f` under the quotient map.
pub fn class_of(q: &QuotientAlgebra, f: &Formula) -> Result<usize, LtError> {
    if let Some(v) = f.variables().into_iter().find(|v| !q.generators.contains(v)) {
        return Err(LtError::RankExceeded(v.to_string()));
    }
    match &q.semantics {
        Semantics::Boolean => classical::table_of(f, &q.generators).map(|bits| bits as usize),
        Semantics::Kripke(t) => rieger::class_in(q, t, f),
    }
}

pub(crate) const OPERATIONS: [(&str, usize); 5] = [(AND, 2), (OR, 2), (IMP, 2), (NOT, 1), (IFF, 2)];
