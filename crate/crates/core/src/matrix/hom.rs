use std::collections::BTreeSet;

use super::algebra::{advance, FiniteAlgebra, Matrix};

/// True iff `h` maps the algebra of `m1` onto that of `m2`, commutes with
/// every operation and constant, and sends designated elements to designated ones.
pub fn check_hom_filter(h: &[usize], m1: &Matrix, m2: &Matrix) -> bool {
    let (a1, a2) = (m1.algebra(), m2.algebra());
    if h.len() != a1.size() || h.iter().any(|&y| y >= a2.size()) {
        return false;
    }
    let image: BTreeSet<usize> = h.iter().copied().collect();
    if image.len() != a2.size() {
        return false;
    }
    if m1.designated().iter().any(|&d| !m2.is_designated(h[d])) {
        return false;
    }
    is_homomorphism(h, a1, a2)
}

pub fn is_homomorphism(h: &[usize], a1: &FiniteAlgebra, a2: &FiniteAlgebra) -> bool {
    if a1.signature() != a2.signature() {
        let same_ops = a1.ops().len() == a2.ops().len()
            && a1.ops().iter().all(|(n, t)| a2.table(n).is_some_and(|u| u.arity == t.arity))
            && a1.consts().len() == a2.consts().len()
            && a1.consts().iter().all(|(c, _)| a2.constant(c).is_some());
        if !same_ops {
            return false;
        }
    }
    for (c, e) in a1.consts() {
        if a2.constant(c) != Some(h[*e]) {
            return false;
        }
    }
    for (name, t) in a1.ops() {
        let t2 = a2.table(name).expect("checked above");
        let mut args = vec![0usize; t.arity];
        let mut mapped = vec![0usize; t.arity];
        loop {
            for (m, &a) in mapped.iter_mut().zip(&args) {
                *m = h[a];
            }
            if h[t.get(a1.size(), &args)] != t2.get(a2.size(), &mapped) {
                return false;
            }
            if !advance(&mut args, a1.size()) {
                break;
            }
        }
    }
    true
}

/// Least subset containing `seed` and every constant, closed under all operations.
pub fn subuniverse_closure(alg: &FiniteAlgebra, seed: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = seed.iter().copied().collect();
    set.extend(alg.consts().iter().map(|(_, e)| *e));
    loop {
        let members: Vec<usize> = set.iter().copied().collect();
        let before = set.len();
        for (_, t) in alg.ops() {
            let k = members.len();
            if k == 0 {
                break;
            }
            let mut pick = vec![0usize; t.arity];
            let mut args = vec![0usize; t.arity];
            loop {
                for (a, &i) in args.iter_mut().zip(&pick) {
                    *a = members[i];
                }
                set.insert(t.get(alg.size(), &args));
                if !advance(&mut pick, k) {
                    break;
                }
            }
        }
        if set.len() == before {
            return set;
        }
    }
}
