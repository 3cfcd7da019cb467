//! Young diagrams, box moves, symmetric-group dimensions and cycle types.
//!
//! Diagrams are stored as weakly decreasing part lists in English notation.
//! The canonical order used everywhere (level enumerations, exports,
//! vertex orderings) is: smaller size first, then lexicographically
//! decreasing part sequences within a size, so `(4) < (3,1) < (2,2) <
//! (2,1,1) < (1,1,1,1)`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::BigCount;

/// An integer partition drawn as a Young diagram.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct YoungDiagram {
    parts: Vec<u32>,
}

impl YoungDiagram {
    /// Validates that `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(YoungDiagram { parts })
    }

    /// The empty diagram.
    pub fn empty() -> Self {
        YoungDiagram { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of boxes.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Column lengths: `conjugate()[j]` is the number of rows with more
    /// than `j` boxes.
    fn conjugate(&self) -> Vec<u32> {
        let width = self.parts.first().copied().unwrap_or(0) as usize;
        let mut cols = vec![0u32; width];
        for &p in &self.parts {
            for c in cols.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        cols
    }

    /// All diagrams obtained by adding one box, in canonical order.
    pub fn successors(&self) -> Vec<YoungDiagram> {
        let mut out = Vec::with_capacity(self.parts.len() + 1);
        for i in 0..self.parts.len() {
            if i == 0 || self.parts[i - 1] > self.parts[i] {
                let mut parts = self.parts.clone();
                parts[i] += 1;
                out.push(YoungDiagram { parts });
            }
        }
        let mut parts = self.parts.clone();
        parts.push(1);
        out.push(YoungDiagram { parts });
        out
    }

    /// All diagrams obtained by removing one box, top row first.
    pub fn predecessors(&self) -> Vec<YoungDiagram> {
        let mut out = Vec::new();
        for i in 0..self.parts.len() {
            if i + 1 == self.parts.len() || self.parts[i] > self.parts[i + 1] {
                let mut parts = self.parts.clone();
                parts[i] -= 1;
                if parts[i] == 0 {
                    parts.remove(i);
                }
                out.push(YoungDiagram { parts });
            }
        }
        out
    }

    /// Number of root-to-`self` paths in the Young graph, through the hook
    /// length formula.
    pub fn dim(&self) -> BigCount {
        let n = u64::from(self.size());
        let mut numerator = BigCount::one();
        for v in 2..=n {
            numerator *= v;
        }
        let conjugate = self.conjugate();
        let mut denominator = BigCount::one();
        for (i, &p) in self.parts.iter().enumerate() {
            for (j, &column) in conjugate.iter().enumerate().take(p as usize) {
                let hook = u64::from(p) + u64::from(column) - i as u64 - j as u64 - 1;
                denominator *= hook;
            }
        }
        numerator / denominator
    }

    /// The same count through the remove-a-box recursion, memoised.
    /// Independent of the hook formula; the two must agree.
    pub fn dim_by_recursion(&self) -> BigCount {
        fn go(d: &YoungDiagram, memo: &mut HashMap<YoungDiagram, BigCount>) -> BigCount {
            if d.is_empty() {
                return BigCount::one();
            }
            if let Some(v) = memo.get(d) {
                return v.clone();
            }
            let mut total = BigCount::from(0u32);
            for p in d.predecessors() {
                total += go(&p, memo);
            }
            memo.insert(d.clone(), total.clone());
            total
        }
        go(self, &mut HashMap::new())
    }
}

impl Ord for YoungDiagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            // within a size, lexicographically decreasing parts come first
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for YoungDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Diagrams serialise as bare arrays of parts; ∅ is [].
impl Serialize for YoungDiagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for YoungDiagram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        YoungDiagram::new(parts).map_err(D::Error::custom)
    }
}

/// All partitions of `n` in canonical order, `(n)` first, `(1,…,1)` last.
pub fn enumerate_partitions(n: u32) -> Vec<YoungDiagram> {
    fn go(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
        if remaining == 0 {
            out.push(YoungDiagram {
                parts: current.clone(),
            });
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            current.push(p);
            go(remaining - p, p, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// A permutation of `{1..k}` stored as 0-based images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Reads one-line notation over `{1..k}`, e.g. `[2,1,3]`.
    pub fn from_one_line(line: &[usize]) -> Result<Self> {
        let degree = line.len();
        let mut seen = vec![false; degree];
        for &x in line {
            if x == 0 || x > degree {
                return Err(Error::InvalidPermutation {
                    degree,
                    reason: format!("image {x} out of range"),
                });
            }
            if seen[x - 1] {
                return Err(Error::InvalidPermutation {
                    degree,
                    reason: format!("image {x} repeated"),
                });
            }
            seen[x - 1] = true;
        }
        Ok(Permutation {
            images: line.iter().map(|&x| x - 1).collect(),
        })
    }

    /// One-line notation over `{1..k}`.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of a 0-based point.
    pub fn apply(&self, i: usize) -> usize {
        if i < self.images.len() {
            self.images[i]
        } else {
            i
        }
    }

    /// The transposition of 0-based points `a` and `b` inside `S_degree`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..degree).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// `self ∘ other`: `other` acts first. Degrees may differ; the smaller
    /// permutation is extended by fixed points.
    pub fn compose(&self, other: &Self) -> Self {
        let degree = self.degree().max(other.degree());
        let images = (0..degree).map(|i| self.apply(other.apply(i))).collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Cycles including fixed points, each starting at its least element,
    /// ordered by least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut cycles = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut point = start;
            while !seen[point] {
                seen[point] = true;
                cycle.push(point);
                point = self.images[point];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Sorted cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> CycleType {
        let mut lengths: Vec<u32> = self.cycles().iter().map(|c| c.len() as u32).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(YoungDiagram { parts: lengths })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The cycle type of a permutation, recorded as a Young diagram.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycleType(YoungDiagram);

impl CycleType {
    pub fn diagram(&self) -> &YoungDiagram {
        &self.0
    }

    pub fn parts(&self) -> &[u32] {
        self.0.parts()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(parts: &[u32]) -> YoungDiagram {
        YoungDiagram::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn make_diagram_validates() {
        assert_eq!(d(&[]).size(), 0);
        assert_eq!(d(&[2, 1]).size(), 3);
        assert!(YoungDiagram::new(vec![1, 2]).is_err());
        assert!(YoungDiagram::new(vec![2, 0]).is_err());
    }

    #[test]
    fn successor_lists() {
        assert_eq!(YoungDiagram::empty().successors(), vec![d(&[1])]);
        assert_eq!(d(&[1]).successors(), vec![d(&[2]), d(&[1, 1])]);
        assert_eq!(
            d(&[2, 1]).successors(),
            vec![d(&[3, 1]), d(&[2, 2]), d(&[2, 1, 1])]
        );
    }

    #[test]
    fn predecessor_lists() {
        assert!(YoungDiagram::empty().predecessors().is_empty());
        assert_eq!(d(&[1]).predecessors(), vec![YoungDiagram::empty()]);
        assert_eq!(d(&[2, 1]).predecessors(), vec![d(&[1, 1]), d(&[2])]);
    }

    #[test]
    fn hook_dimension_spot_values() {
        assert_eq!(YoungDiagram::empty().dim(), BigCount::from(1u32));
        // hooks of (2,1) are 3,1,1, so dim = 3!/3 = 2
        assert_eq!(d(&[2, 1]).dim(), BigCount::from(2u32));
        assert_eq!(d(&[3, 2]).dim(), BigCount::from(5u32));
    }

    #[test]
    fn plancherel_identity_degree_five() {
        // sum of dim^2 over partitions of 5 is 5! = 120
        let total: BigCount = enumerate_partitions(5)
            .iter()
            .map(|p| {
                let v = p.dim();
                &v * &v
            })
            .sum();
        assert_eq!(total, BigCount::from(120u32));
    }

    #[test]
    fn hook_formula_matches_recursion() {
        for n in 0..=8u32 {
            for p in enumerate_partitions(n) {
                assert_eq!(p.dim(), p.dim_by_recursion(), "mismatch at {p}");
            }
        }
    }

    #[test]
    fn branching_dimension_identities() {
        // sum over predecessors equals dim; sum over successors is (n+1)·dim
        for n in 0..=6u32 {
            for p in enumerate_partitions(n) {
                let dim = p.dim();
                if n > 0 {
                    let down: BigCount = p.predecessors().iter().map(|q| q.dim()).sum();
                    assert_eq!(down, dim);
                }
                let up: BigCount = p.successors().iter().map(|q| q.dim()).sum();
                assert_eq!(up, dim * BigCount::from(n + 1));
            }
        }
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_partitions(0), vec![YoungDiagram::empty()]);
        assert_eq!(
            enumerate_partitions(4),
            vec![
                d(&[4]),
                d(&[3, 1]),
                d(&[2, 2]),
                d(&[2, 1, 1]),
                d(&[1, 1, 1, 1])
            ]
        );
        assert_eq!(enumerate_partitions(10).len(), 42);
    }

    #[test]
    fn canonical_order_is_size_then_reverse_lex() {
        let mut v = vec![d(&[1, 1]), d(&[2]), YoungDiagram::empty(), d(&[1])];
        v.sort();
        assert_eq!(v, vec![YoungDiagram::empty(), d(&[1]), d(&[2]), d(&[1, 1])]);
    }

    #[test]
    fn cycle_types() {
        let id3 = Permutation::identity(3);
        assert_eq!(id3.cycle_type().parts(), &[1, 1, 1]);
        let swap = Permutation::from_one_line(&[2, 1, 3]).unwrap();
        assert_eq!(swap.cycle_type().parts(), &[2, 1]);
        let mixed = Permutation::from_one_line(&[2, 3, 1, 5, 4]).unwrap();
        assert_eq!(mixed.cycle_type().parts(), &[3, 2]);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_one_line(&[1, 1, 3]).is_err());
        assert!(Permutation::from_one_line(&[0, 2]).is_err());
        assert!(Permutation::from_one_line(&[3, 1]).is_err());
    }

    #[test]
    fn composition_and_inverse() {
        let a = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        let b = Permutation::from_one_line(&[2, 1, 3]).unwrap();
        // a∘b acts with b first: 1 -> 2 -> 3
        assert_eq!(a.compose(&b).one_line(), vec![3, 2, 1]);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn serde_round_trip() {
        let p = d(&[3, 1]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[3,1]");
        let back: YoungDiagram = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<YoungDiagram>("[1,2]").is_err());
    }
}
