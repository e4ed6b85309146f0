use std::collections::BTreeSet;

use super::EnumerationError;

/// Largest element count accepted by [`enumerate_interval_orders`].
pub const MAX_POSET_SIZE: usize = 6;

/// A finite strict order; `below[a]` has bit `b` set when `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    below: Vec<u32>,
}

impl Poset {
    /// Builds the transitive closure of the given strict relations.
    /// Fails if the closure is not irreflexive.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Option<Self> {
        assert!(n <= 32, "at most 32 elements");
        let mut below = vec![0u32; n];
        for &(a, b) in pairs {
            below[a] |= 1 << b;
        }
        // Warshall
        for k in 0..n {
            for a in 0..n {
                if below[a] >> k & 1 == 1 {
                    below[a] |= below[k];
                }
            }
        }
        let p = Poset { n, below };
        (0..n).all(|a| !p.less(a, a)).then_some(p)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[a] >> b & 1 == 1
    }

    fn comparable(&self, a: usize, b: usize) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    pub fn minimal_count(&self) -> usize {
        (0..self.n).filter(|&b| (0..self.n).all(|a| !self.less(a, b))).count()
    }

    pub fn maximal_count(&self) -> usize {
        (0..self.n).filter(|&a| self.below[a] == 0).count()
    }

    /// No `a < b`, `c < d` with `a, b` both incomparable to `c, d`.
    pub fn is_two_plus_two_free(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                if !self.less(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.comparable(a, c) || self.comparable(b, c) {
                        continue;
                    }
                    for d in 0..n {
                        if self.less(c, d) && !self.comparable(a, d) && !self.comparable(b, d) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn dual(&self) -> Poset {
        let mut below = vec![0u32; self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                if self.less(a, b) {
                    below[b] |= 1 << a;
                }
            }
        }
        Poset { n: self.n, below }
    }

    fn relabeled_key(&self, perm: &[usize]) -> u64 {
        // row-major, (0,0) in the most significant position
        let n = self.n;
        let mut key = 0u64;
        for a in 0..n {
            for b in 0..n {
                key <<= 1;
                if self.less(perm[a], perm[b]) {
                    key |= 1;
                }
            }
        }
        key
    }

    /// Lexicographically minimal relation matrix over all relabelings,
    /// packed row-major into a `u64` (so at most 8 elements).
    pub fn canonical_form(&self) -> u64 {
        assert!(self.n <= 8, "canonical form is brute force");
        permutations(self.n)
            .iter()
            .map(|p| self.relabeled_key(p))
            .min()
            .unwrap_or(0)
    }

    pub fn is_self_dual(&self) -> bool {
        self.canonical_form() == self.dual().canonical_form()
    }

    /// Adds a new element above exactly the elements of the down-set `down`.
    fn extend(&self, down: u32) -> Poset {
        let z = self.n;
        let mut below = self.below.clone();
        for (a, row) in below.iter_mut().enumerate() {
            if down >> a & 1 == 1 {
                *row |= 1 << z;
            }
        }
        below.push(0);
        Poset { n: z + 1, below }
    }

    fn is_down_closed(&self, set: u32) -> bool {
        (0..self.n)
            .filter(|&b| set >> b & 1 == 1)
            .all(|b| (0..self.n).all(|a| !self.less(a, b) || set >> a & 1 == 1))
    }
}

/// An unlabeled interval order with its cached statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalOrder {
    pub poset: Poset,
    pub canonical: u64,
    pub minimal: usize,
    pub maximal: usize,
    pub self_dual: bool,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Unlabeled 2+2-free posets on `n` elements, ordered by canonical form.
///
/// Every poset on `k+1` elements arises from one on `k` elements by adding
/// a maximal element above a down-set; 2+2-freeness is inherited by induced
/// subposets, so filtering level by level loses nothing.
pub fn enumerate_interval_orders(n: usize) -> Result<Vec<IntervalOrder>, EnumerationError> {
    if n > MAX_POSET_SIZE {
        return Err(EnumerationError::PosetBound {
            n,
            max: MAX_POSET_SIZE,
        });
    }
    let mut level = vec![Poset {
        n: 0,
        below: Vec::new(),
    }];
    for k in 0..n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for p in &level {
            for down in 0..1u32 << k {
                if !p.is_down_closed(down) {
                    continue;
                }
                let q = p.extend(down);
                if !q.is_two_plus_two_free() {
                    continue;
                }
                let key = q.canonical_form();
                if seen.insert(key) {
                    next.push((key, q));
                }
            }
        }
        next.sort_by_key(|(k, _)| *k);
        level = next.into_iter().map(|(_, q)| q).collect();
    }
    Ok(level
        .into_iter()
        .map(|poset| IntervalOrder {
            canonical: poset.canonical_form(),
            minimal: poset.minimal_count(),
            maximal: poset.maximal_count(),
            self_dual: poset.is_self_dual(),
            poset,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_plus_two_is_detected() {
        let p = Poset::from_relations(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!p.is_two_plus_two_free());
        let chain = Poset::from_relations(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(chain.is_two_plus_two_free());
        assert_eq!(chain.minimal_count(), 1);
        assert_eq!(chain.maximal_count(), 1);
    }

    #[test]
    fn cycles_are_rejected() {
        assert!(Poset::from_relations(2, &[(0, 1), (1, 0)]).is_none());
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let a = Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap();
        let b = Poset::from_relations(3, &[(2, 0), (2, 1)]).unwrap();
        assert_eq!(a.canonical_form(), b.canonical_form());
        assert!(!a.is_self_dual());
        assert_eq!(a.dual().canonical_form(), Poset::from_relations(3, &[(1, 0), (2, 0)]).unwrap().canonical_form());
    }

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| enumerate_interval_orders(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 53]);
        assert!(matches!(
            enumerate_interval_orders(7),
            Err(EnumerationError::PosetBound { n: 7, max: 6 })
        ));
    }
}
