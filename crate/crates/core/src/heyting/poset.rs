//! Finite partial orders given by covering pairs.

use serde_json::{json, Value};

use super::HeytingError;

/// Up-sets and other subsets of a poset, bit `i` for element `i`.
pub type Set = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Order generated by `a < b` for each pair; elements named `w0, w1, …`.
    pub fn new(n: usize, less: &[(usize, usize)]) -> Result<Self, HeytingError> {
        Self::named((0..n).map(|i| format!("w{i}")).collect(), less)
    }

    pub fn named(names: Vec<String>, less: &[(usize, usize)]) -> Result<Self, HeytingError> {
        let n = names.len();
        if n > 32 {
            return Err(HeytingError::TooLarge(n));
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in less {
            if a >= n || b >= n {
                return Err(HeytingError::BadPoset(format!("pair ({a}, {b}) outside {n} elements")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    let row = leq[k].clone();
                    for (j, &above) in row.iter().enumerate() {
                        if above {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some((a, b)) = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| a != b && leq[a][b] && leq[b][a]) {
            return Err(HeytingError::BadPoset(format!("cycle through {} and {}", names[a], names[b])));
        }
        Ok(FinitePoset { names, leq })
    }

    /// `w0 < w1 < … < w(n-1)`.
    pub fn chain(n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &pairs).expect("chain")
    }

    pub fn antichain(n: usize) -> Self {
        Self::new(n, &[]).expect("antichain")
    }

    /// A root `w0` below `k` pairwise incomparable elements.
    pub fn fork(k: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (1..=k).map(|i| (0, i)).collect();
        Self::new(k + 1, &pairs).expect("fork")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// Elements above `a`, including `a`.
    pub fn above(&self, a: usize) -> Set {
        (0..self.len()).filter(|&b| self.leq[a][b]).fold(0, |acc, b| acc | 1 << b)
    }

    /// Covering pairs `a ⋖ b`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq[a][b] && !(0..n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b]) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_up_set(&self, s: Set) -> bool {
        (0..self.len()).filter(|&a| s >> a & 1 == 1).all(|a| self.above(a) & !s == 0)
    }

    /// Every up-set, by increasing size and then by bit pattern.
    pub fn up_sets(&self) -> Vec<Set> {
        let mut out: Vec<Set> = Vec::new();
        // grow from the empty set by adding elements whose strict up-set is already present
        let mut frontier = vec![0 as Set];
        let mut seen = std::collections::HashSet::new();
        seen.insert(0);
        while let Some(s) = frontier.pop() {
            out.push(s);
            for a in 0..self.len() {
                let t = s | 1 << a;
                if t != s && self.above(a) & !t == 0 && seen.insert(t) {
                    frontier.push(t);
                }
            }
        }
        out.sort_by_key(|&s| (s.count_ones(), s));
        out
    }

    /// Relabels by `perm`: element `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.len();
        let mut leq = vec![vec![false; n]; n];
        for a in 0..n {
            for b in 0..n {
                leq[perm[a]][perm[b]] = self.leq[a][b];
            }
        }
        FinitePoset { names: self.names.clone(), leq }
    }

    /// Lexicographically least adjacency bit string over all relabelings;
    /// equal for isomorphic posets.
    pub fn canonical_key(&self) -> Vec<bool> {
        let n = self.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<bool>> = None;
        loop {
            let mut key = Vec::with_capacity(n * n);
            let mut inv = vec![0; n];
            for (i, &p) in perm.iter().enumerate() {
                inv[p] = i;
            }
            for a in 0..n {
                for b in 0..n {
                    key.push(self.leq[inv[a]][inv[b]]);
                }
            }
            if best.as_ref().is_none_or(|k| key < *k) {
                best = Some(key);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best.unwrap_or_default()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "elements": self.names,
            "order": self.covers().iter().map(|&(a, b)| json!([self.names[a], self.names[b]])).collect::<Vec<_>>(),
        })
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_covers() {
        let p = FinitePoset::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
        assert!(FinitePoset::new(2, &[(0, 1), (1, 0)]).is_err());
        assert!(FinitePoset::new(2, &[(0, 5)]).is_err());
    }

    #[test]
    fn up_set_counts() {
        assert_eq!(FinitePoset::chain(3).up_sets().len(), 4);
        assert_eq!(FinitePoset::antichain(3).up_sets().len(), 8);
        assert_eq!(FinitePoset::fork(2).up_sets(), vec![0b000, 0b010, 0b100, 0b110, 0b111]);
    }

    #[test]
    fn isomorphic_posets_share_keys() {
        let a = FinitePoset::new(3, &[(0, 1), (0, 2)]).unwrap();
        let b = FinitePoset::new(3, &[(2, 0), (2, 1)]).unwrap();
        let c = FinitePoset::new(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(a.canonical_key(), b.canonical_key());
        assert_ne!(a.canonical_key(), c.canonical_key());
    }
}
