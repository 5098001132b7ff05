//! Operators on the subsets of a finite universe, closure systems, and the
//! dagger axioms with their interconnections.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::ConsequenceError;
use crate::language::{nth_variable, Formula};

/// Subset of a universe of at most [`MAX_UNIVERSE`] members, bit `i` for member `i`.
pub type Mask = u32;

pub const MAX_UNIVERSE: usize = 5;

fn subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

fn check_size(n: usize) -> Result<(), ConsequenceError> {
    if n > MAX_UNIVERSE {
        return Err(ConsequenceError::UniverseTooLarge(n));
    }
    Ok(())
}

/// `p, q, r, …` as a stand-in universe of size `n`.
pub fn abstract_universe(n: usize) -> Vec<Formula> {
    (0..n).map(|i| Formula::var(&nth_variable(i))).collect()
}

fn mask_of(universe: &[Formula], xs: &BTreeSet<Formula>) -> Result<Mask, ConsequenceError> {
    xs.iter().try_fold(0, |acc, x| match universe.iter().position(|u| u == x) {
        Some(i) => Ok(acc | 1 << i),
        None => Err(ConsequenceError::NotInUniverse(x.to_string())),
    })
}

fn set_of(universe: &[Formula], m: Mask) -> BTreeSet<Formula> {
    universe.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, f)| f.clone()).collect()
}

/// A family of subsets containing the universe and closed under
/// intersections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteClosureSystem {
    universe: Vec<Formula>,
    family: BTreeSet<Mask>,
}

impl FiniteClosureSystem {
    pub fn new(universe: Vec<Formula>, family: impl IntoIterator<Item = Mask>) -> Result<Self, ConsequenceError> {
        check_size(universe.len())?;
        let full = (1 << universe.len()) - 1;
        let family: BTreeSet<Mask> = family.into_iter().collect();
        if let Some(m) = family.iter().find(|&&m| !subset(m, full)) {
            return Err(ConsequenceError::NotClosureSystem(format!("member {m:#b} leaves the universe")));
        }
        if !family.contains(&full) {
            return Err(ConsequenceError::NotClosureSystem("the universe is not a member".into()));
        }
        for &a in &family {
            for &b in &family {
                if !family.contains(&(a & b)) {
                    return Err(ConsequenceError::NotClosureSystem(format!(
                        "{} ∩ {} is not a member",
                        fmt_set(&set_of(&universe, a)),
                        fmt_set(&set_of(&universe, b))
                    )));
                }
            }
        }
        Ok(FiniteClosureSystem { universe, family })
    }

    pub fn from_sets(universe: Vec<Formula>, sets: &[BTreeSet<Formula>]) -> Result<Self, ConsequenceError> {
        let family = sets.iter().map(|s| mask_of(&universe, s)).collect::<Result<Vec<_>, _>>()?;
        Self::new(universe, family)
    }

    /// Every closure system over a universe of size `n`.
    pub fn all(n: usize) -> Result<Vec<Self>, ConsequenceError> {
        if n > 4 {
            return Err(ConsequenceError::UniverseTooLarge(n));
        }
        let subsets = 1usize << n;
        let full = (subsets - 1) as Mask;
        let others: Vec<Mask> = (0..full).collect();
        let universe = abstract_universe(n);
        let mut out = Vec::new();
        for pick in 0u64..1 << others.len() {
            let family: BTreeSet<Mask> = others
                .iter()
                .enumerate()
                .filter(|(i, _)| pick >> i & 1 == 1)
                .map(|(_, &m)| m)
                .chain([full])
                .collect();
            if family.iter().all(|&a| family.iter().all(|&b| family.contains(&(a & b)))) {
                out.push(FiniteClosureSystem { universe: universe.clone(), family });
            }
        }
        Ok(out)
    }

    pub fn universe(&self) -> &[Formula] {
        &self.universe
    }

    pub fn members(&self) -> impl Iterator<Item = Mask> + '_ {
        self.family.iter().copied()
    }

    /// Least member containing `x`.
    pub fn closure(&self, x: Mask) -> Mask {
        self.family.iter().filter(|&&y| subset(x, y)).fold((1 << self.universe.len()) - 1, |acc, y| acc & y)
    }

    pub fn to_operator(&self) -> ExtensionalOperator {
        let table = (0..1 << self.universe.len()).map(|x| self.closure(x)).collect();
        ExtensionalOperator { universe: self.universe.clone(), table }
    }
}

/// `Cn_A(X)`: the intersection of the members of `cs` that include `x`.
pub fn cn_from_closure_system(
    cs: &FiniteClosureSystem,
    x: &BTreeSet<Formula>,
) -> Result<BTreeSet<Formula>, ConsequenceError> {
    Ok(set_of(&cs.universe, cs.closure(mask_of(&cs.universe, x)?)))
}

fn fmt_set(s: &BTreeSet<Formula>) -> String {
    let parts: Vec<String> = s.iter().map(|f| f.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// An arbitrary map on the subsets of a finite universe, given by its table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionalOperator {
    universe: Vec<Formula>,
    table: Vec<Mask>,
}

impl ExtensionalOperator {
    pub fn new(universe: Vec<Formula>, table: Vec<Mask>) -> Result<Self, ConsequenceError> {
        check_size(universe.len())?;
        let subsets = 1usize << universe.len();
        if table.len() != subsets {
            return Err(ConsequenceError::BadTable(format!("{} entries, expected {subsets}", table.len())));
        }
        if table.iter().any(|&y| y as usize >= subsets) {
            return Err(ConsequenceError::BadTable("an entry leaves the universe".into()));
        }
        Ok(ExtensionalOperator { universe, table })
    }

    pub fn identity(universe: Vec<Formula>) -> Result<Self, ConsequenceError> {
        let table = (0..1 << universe.len()).collect();
        Self::new(universe, table)
    }

    pub fn constant(universe: Vec<Formula>, value: Mask) -> Result<Self, ConsequenceError> {
        let table = vec![value; 1 << universe.len()];
        Self::new(universe, table)
    }

    pub fn universe(&self) -> &[Formula] {
        &self.universe
    }

    pub fn table(&self) -> &[Mask] {
        &self.table
    }

    pub fn apply(&self, x: Mask) -> Mask {
        self.table[x as usize]
    }

    pub fn apply_set(&self, x: &BTreeSet<Formula>) -> Result<BTreeSet<Formula>, ConsequenceError> {
        Ok(set_of(&self.universe, self.apply(mask_of(&self.universe, x)?)))
    }

    /// Sets `X` with `Cn(X) = X`.
    pub fn closed_sets(&self) -> BTreeSet<Mask> {
        (0..self.table.len() as Mask).filter(|&x| self.apply(x) == x).collect()
    }

    pub fn satisfies(&self, ax: OperatorAxiom) -> bool {
        let s = self.table.len() as Mask;
        let c = |x: Mask| self.apply(x);
        let all = |p: &dyn Fn(Mask) -> bool| (0..s).all(p);
        let pairs = |p: &dyn Fn(Mask, Mask) -> bool| (0..s).all(|x| (0..s).all(|y| p(x, y)));
        // union of Cn over subsets of x, optionally only the nonempty ones
        let below = |x: Mask, nonempty: bool| {
            (0..s).filter(|&y| subset(y, x) && (!nonempty || y != 0)).fold(0, |acc, y| acc | c(y))
        };
        match ax {
            OperatorAxiom::A => all(&|x| subset(x, c(x))),
            OperatorAxiom::B => pairs(&|x, y| !subset(x, y) || subset(c(x), c(y))),
            OperatorAxiom::C => all(&|x| subset(c(c(x)), c(x))),
            OperatorAxiom::D => all(&|x| subset(c(x), below(x, false))),
            OperatorAxiom::E => pairs(&|x, y| !subset(x, c(y)) || subset(c(x), c(y))),
            OperatorAxiom::F => pairs(&|x, y| !subset(x, c(y)) || subset(c(x | y), c(y))),
            OperatorAxiom::G => pairs(&|x, y| !(subset(x, y) && subset(y, c(x))) || subset(c(y), c(x))),
            OperatorAxiom::H => all(&|x| subset(below(x, false), c(x))),
            OperatorAxiom::I => all(&|x| x == 0 || subset(c(x), below(x, true))),
            OperatorAxiom::J => all(&|x| {
                (0..self.universe.len()).filter(|&a| c(x) >> a & 1 == 0).all(|a| {
                    let avoids = |y: Mask| subset(x, y) && c(y) >> a & 1 == 0;
                    (0..s).any(|y| avoids(y) && (0..s).all(|z| !(avoids(z) && subset(y, z) && z != y)))
                })
            }),
        }
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.table.len() as Mask)
            .map(|x| {
                json!({
                    "set": set_of(&self.universe, x).iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    "cn": set_of(&self.universe, self.apply(x)).iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "universe": self.universe.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "table": rows,
        })
    }
}

impl fmt::Display for ExtensionalOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.table.len() as Mask)
            .map(|x| format!("{} ↦ {}", fmt_set(&set_of(&self.universe, x)), fmt_set(&set_of(&self.universe, self.apply(x)))))
            .collect();
        write!(f, "{}", rows.join("; "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OperatorAxiom {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
}

impl OperatorAxiom {
    pub const ALL: [OperatorAxiom; 10] = [
        OperatorAxiom::A,
        OperatorAxiom::B,
        OperatorAxiom::C,
        OperatorAxiom::D,
        OperatorAxiom::E,
        OperatorAxiom::F,
        OperatorAxiom::G,
        OperatorAxiom::H,
        OperatorAxiom::I,
        OperatorAxiom::J,
    ];

    pub fn name(self) -> &'static str {
        ["a†", "b†", "c†", "d†", "e†", "f†", "g†", "h†", "i†", "j†"][self as usize]
    }

    pub fn describe(self) -> &'static str {
        match self {
            OperatorAxiom::A => "reflexivity",
            OperatorAxiom::B => "monotonicity",
            OperatorAxiom::C => "closedness",
            OperatorAxiom::D => "finitariness",
            OperatorAxiom::E => "cumulative transitivity",
            OperatorAxiom::F => "strong cumulative transitivity",
            OperatorAxiom::G => "weak cumulative transitivity",
            OperatorAxiom::H => "finitary inclusion",
            OperatorAxiom::I => "strong finitariness",
            OperatorAxiom::J => "maximalizability",
        }
    }
}

/// Which axioms an operator satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomReport([bool; 10]);

impl AxiomReport {
    pub fn holds(&self, ax: OperatorAxiom) -> bool {
        self.0[ax as usize]
    }

    pub fn to_json(&self) -> Value {
        Value::Object(OperatorAxiom::ALL.iter().map(|&a| (a.name().to_string(), json!(self.holds(a)))).collect())
    }
}

pub fn check_operator_axioms(op: &ExtensionalOperator) -> AxiomReport {
    AxiomReport(OperatorAxiom::ALL.map(|a| op.satisfies(a)))
}

/// One implication between axiom sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Connection {
    pub label: &'static str,
    pub from: &'static [OperatorAxiom],
    pub to: OperatorAxiom,
}

impl Connection {
    pub fn holds_for(&self, r: &AxiomReport) -> bool {
        !self.applies(r) || r.holds(self.to)
    }

    pub fn applies(&self, r: &AxiomReport) -> bool {
        self.from.iter().all(|&a| r.holds(a))
    }
}

impl fmt::Display for Connection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let from: Vec<&str> = self.from.iter().map(|a| a.name()).collect();
        write!(f, "({}) {} ⇒ {}", self.label, from.join(" ∧ "), self.to.name())
    }
}

use OperatorAxiom as X;

pub const CONNECTIONS: [Connection; 12] = [
    Connection { label: "i", from: &[X::A, X::G], to: X::C },
    Connection { label: "ii", from: &[X::B, X::C], to: X::E },
    Connection { label: "iii", from: &[X::E], to: X::G },
    Connection { label: "iv", from: &[X::F], to: X::G },
    Connection { label: "v", from: &[X::A, X::G], to: X::F },
    Connection { label: "vi", from: &[X::A, X::F], to: X::C },
    Connection { label: "vii", from: &[X::A, X::B, X::C], to: X::F },
    Connection { label: "viii", from: &[X::I], to: X::D },
    Connection { label: "ix", from: &[X::B, X::D], to: X::I },
    Connection { label: "x", from: &[X::B], to: X::H },
    Connection { label: "xi", from: &[X::B, X::D], to: X::J },
    Connection { label: "xii", from: &[X::D, X::H], to: X::B },
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectionsVerdict {
    /// `applied[k]` counts operators meeting the hypotheses of implication `k`.
    AllHold { operators: u64, exhaustive: bool, applied: [u64; 12] },
    Counterexample { connection: Connection, operator: ExtensionalOperator },
}

impl ConnectionsVerdict {
    pub fn all_hold(&self) -> bool {
        matches!(self, ConnectionsVerdict::AllHold { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            ConnectionsVerdict::AllHold { operators, exhaustive, applied } => json!({
                "verdict": "AllHold",
                "operators": operators,
                "exhaustive": exhaustive,
                "applied": CONNECTIONS.iter().zip(applied).map(|(c, n)| (c.label.to_string(), json!(n))).collect::<serde_json::Map<_, _>>(),
            }),
            ConnectionsVerdict::Counterexample { connection, operator } => json!({
                "verdict": "Counterexample",
                "implication": connection.to_string(),
                "operator": operator.to_json(),
            }),
        }
    }
}

/// Checks every implication on operators over a universe of size `n`:
/// all of them when there are at most `budget`, otherwise `budget` seeded
/// samples, half uniform and half forced to be reflexive.
pub fn verify_con_connections(n: usize, budget: u64, seed: u64) -> Result<ConnectionsVerdict, ConsequenceError> {
    if n > 3 {
        return Err(ConsequenceError::UniverseTooLarge(n));
    }
    let universe = abstract_universe(n);
    let subsets = 1usize << n;
    let total = (subsets as u128).pow(subsets as u32);
    let mut applied = [0u64; 12];
    let mut visit = |table: Vec<Mask>| -> Option<ConnectionsVerdict> {
        let op = ExtensionalOperator { universe: universe.clone(), table };
        let r = check_operator_axioms(&op);
        for (k, c) in CONNECTIONS.iter().enumerate() {
            if c.applies(&r) {
                applied[k] += 1;
            }
            if !c.holds_for(&r) {
                return Some(ConnectionsVerdict::Counterexample { connection: *c, operator: op });
            }
        }
        None
    };
    let exhaustive = total <= budget as u128;
    let operators = if exhaustive {
        let mut digits = vec![0usize; subsets];
        loop {
            if let Some(v) = visit(digits.iter().map(|&d| d as Mask).collect()) {
                return Ok(v);
            }
            if !crate::matrix::advance(&mut digits, subsets) {
                break total as u64;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..budget {
            let reflexive = i % 2 == 1;
            let table = (0..subsets as Mask)
                .map(|x| {
                    let y = rng.gen_range(0..subsets as Mask);
                    if reflexive { x | y } else { y }
                })
                .collect();
            if let Some(v) = visit(table) {
                return Ok(v);
            }
        }
        budget
    };
    Ok(ConnectionsVerdict::AllHold { operators, exhaustive, applied })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[&str]) -> BTreeSet<Formula> {
        xs.iter().map(|x| Formula::var(x)).collect()
    }

    #[test]
    fn trivial_and_discrete_systems() {
        let u = abstract_universe(3);
        let only = FiniteClosureSystem::new(u.clone(), [0b111]).unwrap();
        assert_eq!(cn_from_closure_system(&only, &set(&["p"])).unwrap(), set(&["p", "q", "r"]));
        let discrete = FiniteClosureSystem::new(u, 0..8).unwrap();
        assert_eq!(cn_from_closure_system(&discrete, &set(&["q"])).unwrap(), set(&["q"]));
    }

    #[test]
    fn rejects_non_systems() {
        let u = abstract_universe(2);
        assert!(FiniteClosureSystem::new(u.clone(), [0b01]).is_err());
        assert!(FiniteClosureSystem::new(u, [0b01, 0b10, 0b11]).is_err());
        assert!(matches!(
            ExtensionalOperator::identity(abstract_universe(6)),
            Err(ConsequenceError::UniverseTooLarge(6))
        ));
    }

    #[test]
    fn closed_sets_recover_the_system() {
        for n in 0..=4 {
            for cs in FiniteClosureSystem::all(n).unwrap() {
                let op = cs.to_operator();
                assert_eq!(op.closed_sets(), cs.members().collect::<BTreeSet<_>>());
                assert!((0..1 << n).all(|x| op.apply(op.apply(x)) == op.apply(x)));
            }
        }
    }

    #[test]
    fn closure_system_counts() {
        let counts: Vec<usize> = (0..=3).map(|n| FiniteClosureSystem::all(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 61]);
    }

    #[test]
    fn closure_operators_meet_the_first_three() {
        for cs in FiniteClosureSystem::all(3).unwrap() {
            let r = check_operator_axioms(&cs.to_operator());
            assert!(r.holds(X::A) && r.holds(X::B) && r.holds(X::C));
        }
    }

    #[test]
    fn identity_and_constant() {
        let u = abstract_universe(3);
        let id = check_operator_axioms(&ExtensionalOperator::identity(u.clone()).unwrap());
        assert!(OperatorAxiom::ALL.iter().all(|&a| id.holds(a)));
        let top = check_operator_axioms(&ExtensionalOperator::constant(u.clone(), 0b111).unwrap());
        assert!(top.holds(X::A) && top.holds(X::B) && top.holds(X::C));
        let empty = check_operator_axioms(&ExtensionalOperator::constant(u, 0).unwrap());
        assert!(!empty.holds(X::A));
    }

    #[test]
    fn non_monotone_operator() {
        // {p} ↦ {p, q} while {p, q} ↦ {q}
        let op = ExtensionalOperator::new(abstract_universe(2), vec![0b00, 0b11, 0b10, 0b10]).unwrap();
        let r = check_operator_axioms(&op);
        assert!(!r.holds(X::B));
        assert!(!r.holds(X::A));
    }

    #[test]
    fn connections_exhaustive_on_two() {
        let v = verify_con_connections(2, 1_000, 0).unwrap();
        match v {
            ConnectionsVerdict::AllHold { operators, exhaustive, applied } => {
                assert_eq!(operators, 256);
                assert!(exhaustive);
                assert!(applied.iter().all(|&k| k > 0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn connections_sampled_on_three() {
        let v = verify_con_connections(3, 5_000, 11).unwrap();
        assert!(v.all_hold());
        assert_eq!(v.to_json()["exhaustive"], json!(false));
    }
}
