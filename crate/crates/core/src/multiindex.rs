//! Strictly increasing index sequences labelling exterior monomials.

use std::fmt;

/// A strictly increasing sequence of generator indices in `1..=n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiIndex(Vec<u8>);

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    /// Builds from a strictly increasing slice; `None` if not strictly increasing.
    pub fn new(indices: &[u8]) -> Option<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        Some(MultiIndex(indices.to_vec()))
    }

    /// Sorts an arbitrary index list, returning the canonical multi-index and
    /// the permutation sign, or `None` when an index repeats.
    pub fn sort_with_sign(indices: &[u8]) -> Option<(Self, i32)> {
        let mut v = indices.to_vec();
        let mut sign = 1i32;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((MultiIndex(v), sign))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn contains(&self, idx: u8) -> bool {
        self.0.binary_search(&idx).is_ok()
    }

    pub fn position(&self, idx: u8) -> Option<usize> {
        self.0.binary_search(&idx).ok()
    }

    pub fn max(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// Merges two disjoint multi-indices, returning the shuffle sign;
    /// `None` when they share an index.
    pub fn merge(&self, other: &MultiIndex) -> Option<(MultiIndex, i32)> {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0usize, 0usize);
        let mut inversions = 0usize;
        while i < a.len() && j < b.len() {
            if a[i] == b[j] {
                return None;
            }
            if a[i] < b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                // b[j] jumps over the remaining a-elements
                inversions += a.len() - i;
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((MultiIndex(out), sign))
    }

    /// Removes `idx`, returning the remainder and the antiderivation sign
    /// `(-1)^pos`; `None` when absent.
    pub fn remove(&self, idx: u8) -> Option<(MultiIndex, i32)> {
        let pos = self.position(idx)?;
        let mut v = self.0.clone();
        v.remove(pos);
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        Some((MultiIndex(v), sign))
    }

    pub fn push_sorted(&self, idx: u8) -> Option<(MultiIndex, i32)> {
        self.merge(&MultiIndex(vec![idx]))
    }

    /// The full index range `1..=n`.
    pub fn full(n: u8) -> Self {
        MultiIndex((1..=n).collect())
    }

    /// All multi-indices of length `k` drawn from `1..=n`, in lexicographic order.
    pub fn all(n: u8, k: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = Vec::new();
        fn rec(n: u8, k: usize, start: u8, cur: &mut Vec<u8>, out: &mut Vec<MultiIndex>) {
            if cur.len() == k {
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for i in start..=n {
                cur.push(i);
                rec(n, k, i + 1, cur, out);
                cur.pop();
            }
        }
        rec(n, k, 1, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}
