use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

use super::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("not a formula tree: {0}")]
    NotATree(NotATreeReason),
    #[error("path {0:?} does not address a node")]
    BadPath(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotATreeReason {
    #[error("no pair carries the root id 2")]
    MissingRoot,
    #[error("id {0} occurs more than once")]
    DuplicateId(BigUint),
    #[error("id {0} has no parent in the tree")]
    OrphanId(BigUint),
    #[error("node {id} is labeled {found}, its parent requires {expected}")]
    LabelMismatch { id: BigUint, expected: Formula, found: Formula },
    #[error("node {0} is missing")]
    MissingNode(BigUint),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub id: BigUint,
    pub formula: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeEdge {
    pub parent: BigUint,
    pub child: BigUint,
    pub weight: usize,
}

/// Formula tree with prime-product node ids: the root is 2 and the i-th
/// child of a node whose greatest prime factor is the j-th prime gets
/// the node id times the (j+i)-th prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaTree {
    pub nodes: Vec<TreeNode>,
    pub edges: Vec<TreeEdge>,
}

/// Primes in increasing order, grown on demand.
struct Primes(Vec<u64>);

impl Primes {
    fn new() -> Self {
        Primes(vec![2])
    }

    /// The k-th prime, 1-based.
    fn nth(&mut self, k: usize) -> u64 {
        while self.0.len() < k {
            let mut c = self.0.last().unwrap() + 1;
            while self.0.iter().take_while(|&&p| p * p <= c).any(|&p| c.is_multiple_of(p)) {
                c += 1;
            }
            self.0.push(c);
        }
        self.0[k - 1]
    }
}

impl FormulaTree {
    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn get(&self, id: &BigUint) -> Option<&Formula> {
        self.nodes.iter().find(|n| &n.id == id).map(|n| &n.formula)
    }

    pub fn pairs(&self) -> Vec<(BigUint, Formula)> {
        self.nodes.iter().map(|n| (n.id.clone(), n.formula.clone())).collect()
    }
}

pub fn build_tree(f: &Formula) -> FormulaTree {
    let mut primes = Primes::new();
    let mut tree = FormulaTree { nodes: Vec::new(), edges: Vec::new() };
    // (formula, id, index of its greatest prime factor)
    let mut stack = vec![(f.clone(), BigUint::from(2u32), 1usize)];
    while let Some((g, id, j)) = stack.pop() {
        for (i, a) in g.args().iter().enumerate().rev() {
            let child = &id * primes.nth(j + i + 1);
            tree.edges.push(TreeEdge { parent: id.clone(), child: child.clone(), weight: i + 1 });
            stack.push((a.clone(), child, j + i + 1));
        }
        tree.nodes.push(TreeNode { id, formula: g });
    }
    tree.edges.sort_by(|a, b| a.parent.cmp(&b.parent).then(a.weight.cmp(&b.weight)));
    tree
}

/// Rebuilds the tree from its node pairs, in any order.
pub fn assemble_tree(pairs: &[(BigUint, Formula)]) -> Result<FormulaTree, TreeError> {
    let mut given: BTreeMap<&BigUint, &Formula> = BTreeMap::new();
    for (id, f) in pairs {
        if given.insert(id, f).is_some() {
            return Err(TreeError::NotATree(NotATreeReason::DuplicateId(id.clone())));
        }
    }
    let two = BigUint::from(2u32);
    let root = given.get(&two).ok_or(TreeError::NotATree(NotATreeReason::MissingRoot))?;
    let expected = build_tree(root);
    for node in &expected.nodes {
        match given.get(&node.id) {
            Some(found) if **found == node.formula => {}
            Some(found) => {
                return Err(TreeError::NotATree(NotATreeReason::LabelMismatch {
                    id: node.id.clone(),
                    expected: node.formula.clone(),
                    found: (*found).clone(),
                }))
            }
            None => return Err(TreeError::NotATree(NotATreeReason::MissingNode(node.id.clone()))),
        }
    }
    if let Some((id, _)) = given.iter().find(|(id, _)| expected.get(id).is_none()) {
        return Err(TreeError::NotATree(NotATreeReason::OrphanId((*id).clone())));
    }
    Ok(expected)
}

/// Subformula occurrence addressed by a path of 1-based edge weights.
pub fn subformula_at<'a>(f: &'a Formula, path: &[usize]) -> Result<&'a Formula, TreeError> {
    let mut cur = f;
    for &w in path {
        cur = w
            .checked_sub(1)
            .and_then(|i| cur.args().get(i))
            .ok_or_else(|| TreeError::BadPath(path.to_vec()))?;
    }
    Ok(cur)
}

/// Replaces the occurrence at `path` by `g`.
pub fn replace_at(f: &Formula, path: &[usize], g: &Formula) -> Result<Formula, TreeError> {
    fn go(f: &Formula, path: &[usize], g: &Formula) -> Option<Formula> {
        let Some((&w, rest)) = path.split_first() else {
            return Some(g.clone());
        };
        let Formula::App(op, args) = f else { return None };
        let i = w.checked_sub(1).filter(|&i| i < args.len())?;
        let mut new_args: Vec<Formula> = args.to_vec();
        new_args[i] = go(&args[i], rest, g)?;
        Some(Formula::App(op.clone(), Arc::from(new_args)))
    }
    go(f, path, g).ok_or_else(|| TreeError::BadPath(path.to_vec()))
}

/// All node paths in pre-order.
pub fn paths(f: &Formula) -> Vec<Vec<usize>> {
    fn go(f: &Formula, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(prefix.clone());
        for (i, a) in f.args().iter().enumerate() {
            prefix.push(i + 1);
            go(a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(f, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::{parse, Notation, Signature};

    fn fig_signature() -> Signature {
        Signature::new(vec![("Fi".into(), 2), ("Fj".into(), 2)], vec!["a".into()]).unwrap()
    }

    #[test]
    fn atom_tree_is_single_node() {
        let t = build_tree(&Formula::var("p"));
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(t.root().id, BigUint::from(2u32));
        assert!(t.edges.is_empty());
    }

    #[test]
    fn prime_ids_follow_the_scheme() {
        let f = parse("FiFjapp", &fig_signature(), Notation::Prefix).unwrap();
        let t = build_tree(&f);
        assert_eq!(t.nodes.len(), 5);
        let ids: Vec<u32> = {
            let mut v: Vec<u32> = t.nodes.iter().map(|n| n.id.to_u32_digits()[0]).collect();
            v.sort();
            v
        };
        assert_eq!(ids, vec![2, 6, 10, 30, 42]);
        let leaves_p: Vec<&TreeNode> = t.nodes.iter().filter(|n| n.formula == Formula::var("p")).collect();
        assert_eq!(leaves_p.len(), 2);
        assert_ne!(leaves_p[0].id, leaves_p[1].id);
    }

    #[test]
    fn assemble_round_trip_and_missing_node() {
        let f = parse("¬p", &Signature::basic(), Notation::Infix).unwrap();
        let t = build_tree(&f);
        assert_eq!(assemble_tree(&t.pairs()).unwrap(), t);
        let mut pairs = build_tree(&parse("((p→q)∨¬q)", &Signature::basic(), Notation::Infix).unwrap()).pairs();
        pairs.remove(2);
        assert!(matches!(
            assemble_tree(&pairs),
            Err(TreeError::NotATree(NotATreeReason::MissingNode(_)))
        ));
    }

    #[test]
    fn assemble_detects_orphans_and_mislabels() {
        let f = parse("(p∧q)", &Signature::basic(), Notation::Infix).unwrap();
        let mut pairs = build_tree(&f).pairs();
        pairs.push((BigUint::from(14u32), Formula::var("r")));
        assert!(matches!(
            assemble_tree(&pairs),
            Err(TreeError::NotATree(NotATreeReason::OrphanId(_)))
        ));
        let mut pairs = build_tree(&f).pairs();
        let i = pairs.iter().position(|(id, _)| *id == BigUint::from(6u32)).unwrap();
        pairs[i].1 = Formula::var("r");
        assert!(matches!(
            assemble_tree(&pairs),
            Err(TreeError::NotATree(NotATreeReason::LabelMismatch { .. }))
        ));
        assert!(matches!(
            assemble_tree(&[(BigUint::from(6u32), Formula::var("p"))]),
            Err(TreeError::NotATree(NotATreeReason::MissingRoot))
        ));
    }

    #[test]
    fn replacing_the_mirrored_occurrence() {
        let sig = fig_signature();
        let f = parse("FiFjapp", &sig, Notation::Prefix).unwrap();
        let beta = Formula::var("q");
        let g = replace_at(&f, &[2], &beta).unwrap();
        assert_eq!(g, parse("FiFjapq", &sig, Notation::Prefix).unwrap());
        assert_eq!(replace_at(&f, &[], &beta).unwrap(), beta);
        assert!(matches!(replace_at(&f, &[3], &beta), Err(TreeError::BadPath(_))));
        assert!(matches!(replace_at(&f, &[2, 1], &beta), Err(TreeError::BadPath(_))));
    }

    #[test]
    fn deep_ids_do_not_overflow() {
        let mut f = Formula::var("p");
        for _ in 0..40 {
            f = Formula::imp(Formula::var("q"), f);
        }
        let t = build_tree(&f);
        assert_eq!(t.nodes.len(), 81);
        assert_eq!(assemble_tree(&t.pairs()).unwrap(), t);
    }
}
