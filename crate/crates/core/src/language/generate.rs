use rand::seq::SliceRandom;
use rand::Rng;

use super::formula::{Formula, Sym};

/// Formulas over given atoms and connectives, grouped by exact degree.
pub fn enumerate_by_degree(atoms: &[Formula], connectives: &[(Sym, usize)], max_degree: usize) -> Vec<Vec<Formula>> {
    let mut by: Vec<Vec<Formula>> = vec![atoms.to_vec()];
    for d in 1..=max_degree {
        let mut layer = Vec::new();
        for (op, arity) in connectives {
            // distribute d-1 connective occurrences among `arity` arguments
            let mut split = vec![0usize; *arity];
            fill(&by, op, &mut split, 0, d - 1, &mut Vec::new(), &mut layer);
        }
        by.push(layer);
    }
    by
}

fn fill(
    by: &[Vec<Formula>],
    op: &Sym,
    split: &mut Vec<usize>,
    pos: usize,
    left: usize,
    acc: &mut Vec<Formula>,
    out: &mut Vec<Formula>,
) {
    let arity = split.len();
    if pos == arity {
        if left == 0 {
            out.push(Formula::App(op.clone(), acc.clone().into()));
        }
        return;
    }
    let range: Vec<usize> = if pos + 1 == arity { vec![left] } else { (0..=left).collect() };
    for k in range {
        split[pos] = k;
        for a in &by[k] {
            acc.push(a.clone());
            fill(by, op, split, pos + 1, left - k, acc, out);
            acc.pop();
        }
    }
}

/// All formulas up to `max_degree`, in increasing degree.
pub fn enumerate(atoms: &[Formula], connectives: &[(Sym, usize)], max_degree: usize) -> Vec<Formula> {
    enumerate_by_degree(atoms, connectives, max_degree).into_iter().flatten().collect()
}

/// Random formula with at most `max_depth` nesting; leaves drawn from `atoms`.
pub fn random_formula<R: Rng + ?Sized>(
    rng: &mut R,
    atoms: &[Formula],
    connectives: &[(Sym, usize)],
    max_depth: usize,
) -> Formula {
    if max_depth == 0 || connectives.is_empty() || rng.gen_bool(0.3) {
        return atoms.choose(rng).expect("at least one atom").clone();
    }
    let (op, arity) = connectives.choose(rng).expect("nonempty");
    let args: Vec<Formula> = (0..*arity).map(|_| random_formula(rng, atoms, connectives, max_depth - 1)).collect();
    Formula::App(op.clone(), args.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::Signature;

    fn basic_ops() -> Vec<(Sym, usize)> {
        Signature::basic().connectives().to_vec()
    }

    #[test]
    fn counts_over_two_variables() {
        let atoms = [Formula::var("p"), Formula::var("q")];
        let by = enumerate_by_degree(&atoms, &basic_ops(), 4);
        let counts: Vec<usize> = by.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![2, 14, 182, 2954, 53690]);
    }

    #[test]
    fn degrees_are_exact_and_distinct() {
        let atoms = [Formula::var("p")];
        let by = enumerate_by_degree(&atoms, &basic_ops(), 3);
        for (d, layer) in by.iter().enumerate() {
            assert!(layer.iter().all(|f| f.degree() == d));
            let set: std::collections::BTreeSet<_> = layer.iter().collect();
            assert_eq!(set.len(), layer.len());
        }
    }
}
