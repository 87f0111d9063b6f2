//! Integer partitions, with and without zero parts.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::factorial;

/// A partition `α_1 ≥ … ≥ α_n ≥ 1`.
///
/// Parts are sorted on construction, so two partitions with the same multiset
/// of parts compare equal and hash identically.
///
/// The `Ord` implementation is the canonical (graded reverse-lexicographic)
/// order: first by degree, then lexicographically *descending* on parts, so
/// that `(3) < (2,1) < (1,1,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidDomain(format!(
                "partition parts must be positive: {parts:?}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Caller guarantees `parts` is weakly decreasing and positive.
    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Degree `d = Σ α_i`.
    pub fn degree(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts `n`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Distinct part values with their multiplicities, largest value first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn multiplicity(&self, part: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == part).count() as u32
    }

    /// `|Aut α| = ∏_j m_j!`.
    pub fn aut_order(&self) -> BigInt {
        self.multiplicities()
            .iter()
            .map(|&(_, m)| factorial(m))
            .product()
    }

    /// `∏_i α_i`.
    pub fn part_product(&self) -> BigInt {
        self.parts.iter().map(|&p| BigInt::from(p)).product()
    }

    /// Size of the conjugacy class of cycle type `α` in `S_d`:
    /// `d! / (∏ α_i · ∏ m_j!)`.
    pub fn class_size(&self) -> BigInt {
        factorial(self.degree()) / (self.part_product() * self.aut_order())
    }

    /// `r = d + n + 2g − 2`; negative values mean no such cover exists.
    pub fn transposition_count(&self, g: u32) -> i64 {
        transposition_count(g, self)
    }

    /// Returns the partition with one copy of `part` removed.
    pub fn without(&self, part: u32) -> Option<Partition> {
        let idx = self.parts.iter().position(|&p| p == part)?;
        let mut parts = self.parts.clone();
        parts.remove(idx);
        Some(Partition { parts })
    }

    /// Returns the partition with `part` inserted.
    pub fn with(&self, part: u32) -> Partition {
        debug_assert!(part > 0);
        let idx = self.parts.partition_point(|&p| p >= part);
        let mut parts = self.parts.clone();
        parts.insert(idx, part);
        Partition { parts }
    }

    /// Multiset union of two partitions.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.parts);
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Every sub-multiset of the parts, paired with its complement.
    ///
    /// Yields `∏ (m_j + 1)` pairs, one per choice of how many copies of each
    /// distinct part go to the first side.
    pub fn sub_multisets(&self) -> Vec<(Partition, Partition)> {
        let mults = self.multiplicities();
        let mut out = vec![(Vec::new(), Vec::new())];
        for &(value, m) in &mults {
            let mut next = Vec::with_capacity(out.len() * (m as usize + 1));
            for (left, right) in &out {
                for take in 0..=m {
                    let mut l: Vec<u32> = left.clone();
                    let mut r: Vec<u32> = right.clone();
                    l.extend(std::iter::repeat_n(value, take as usize));
                    r.extend(std::iter::repeat_n(value, (m - take) as usize));
                    next.push((l, r));
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|(l, r)| (Partition::from_sorted(l), Partition::from_sorted(r)))
            .collect()
    }

    /// The same parts as a zero-padded partition of length `len()`.
    pub fn to_padded(&self) -> ZeroPaddedPartition {
        ZeroPaddedPartition::from_sorted(self.parts.clone())
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
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

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Parses `2,1`, `(2,1)` or `2 1`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.is_empty() {
            return Err(Error::Parse(format!("empty partition {s:?}")));
        }
        Partition::new(parts)
    }
}

/// `r = d + n + 2g − 2` for genus `g` and branching `α` over infinity.
pub fn transposition_count(g: u32, alpha: &Partition) -> i64 {
    alpha.degree() as i64 + alpha.len() as i64 + 2 * g as i64 - 2
}

/// A weakly decreasing sequence of non-negative integers with an explicit
/// length; zero parts are allowed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ZeroPaddedPartition {
    parts: Vec<u32>,
}

impl ZeroPaddedPartition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        ZeroPaddedPartition { parts }
    }

    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        ZeroPaddedPartition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `|Aut β| = ∏_v (multiplicity of v)!`, counting the value 0 as well.
    pub fn aut_order(&self) -> BigInt {
        let mut acc = BigInt::one();
        let mut run = 0u32;
        for (i, &p) in self.parts.iter().enumerate() {
            run = if i > 0 && self.parts[i - 1] == p { run + 1 } else { 1 };
            acc *= run;
        }
        acc
    }

    /// Positive parts only.
    pub fn nonzero(&self) -> Partition {
        Partition::from_sorted(self.parts.iter().copied().filter(|&p| p > 0).collect())
    }
}

impl fmt::Display for ZeroPaddedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
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

impl fmt::Debug for ZeroPaddedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Optional filters for [`enumerate_partitions`].
#[derive(Clone, Copy, Debug, Default)]
pub struct PartitionConstraints {
    pub max_parts: Option<usize>,
    pub exact_parts: Option<usize>,
    pub max_part: Option<u32>,
}

impl PartitionConstraints {
    pub fn exact_parts(n: usize) -> Self {
        PartitionConstraints {
            exact_parts: Some(n),
            ..Default::default()
        }
    }

    pub fn max_parts(n: usize) -> Self {
        PartitionConstraints {
            max_parts: Some(n),
            ..Default::default()
        }
    }
}

/// All partitions of every `d ≤ d_max` meeting `constraints`, in canonical
/// order (degree ascending, then parts lexicographically descending).
pub fn enumerate_partitions(d_max: u32, constraints: PartitionConstraints) -> Vec<Partition> {
    let mut out = Vec::new();
    for d in 0..=d_max {
        partitions_of(d, constraints, &mut out);
    }
    out
}

fn partitions_of(d: u32, c: PartitionConstraints, out: &mut Vec<Partition>) {
    let max_len = match (c.exact_parts, c.max_parts) {
        (Some(e), Some(m)) => e.min(m),
        (Some(e), None) => e,
        (None, Some(m)) => m,
        (None, None) => d as usize,
    };
    let min_len = c.exact_parts.unwrap_or(0);
    if min_len > max_len {
        return;
    }
    let cap = c.max_part.unwrap_or(d).min(d);
    let mut current = Vec::new();
    fill(d, cap, min_len, max_len, &mut current, out);
}

fn fill(
    remaining: u32,
    cap: u32,
    min_len: usize,
    max_len: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        if current.len() >= min_len {
            out.push(Partition::from_sorted(current.clone()));
        }
        return;
    }
    if current.len() == max_len {
        return;
    }
    let slots = (max_len - current.len()) as u64;
    for part in (1..=cap.min(remaining)).rev() {
        // the remaining slots cannot absorb what is left
        if part as u64 * slots < remaining as u64 {
            break;
        }
        current.push(part);
        fill(remaining - part, part, min_len, max_len, current, out);
        current.pop();
    }
}

/// All `β ⊢₀ k` with exactly `n` parts (zeros allowed), parts descending
/// lexicographically.
pub fn zero_padded_partitions(k: u32, n: usize) -> Vec<ZeroPaddedPartition> {
    let mut out = Vec::new();
    for p in enumerate_partitions_of(k, PartitionConstraints::max_parts(n)) {
        let mut parts = p.parts;
        parts.resize(n, 0);
        out.push(ZeroPaddedPartition::from_sorted(parts));
    }
    out
}

/// Partitions of exactly `d`.
pub fn enumerate_partitions_of(d: u32, constraints: PartitionConstraints) -> Vec<Partition> {
    let mut out = Vec::new();
    partitions_of(d, constraints, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn transposition_counts() {
        assert_eq!(transposition_count(0, &p(&[1])), 0);
        assert_eq!(transposition_count(0, &p(&[3])), 2);
        assert_eq!(transposition_count(1, &p(&[2])), 3);
    }

    #[test]
    fn class_sizes() {
        assert_eq!(p(&[1, 1, 1]).class_size(), BigInt::from(1));
        assert_eq!(p(&[2, 1]).class_size(), BigInt::from(3));
        assert_eq!(p(&[3]).class_size(), BigInt::from(2));
    }

    #[test]
    fn padded_aut_orders() {
        let z = |v: &[u32]| ZeroPaddedPartition::new(v.to_vec());
        assert_eq!(z(&[1, 1, 1]).aut_order(), BigInt::from(6));
        assert_eq!(z(&[2, 1, 0]).aut_order(), BigInt::from(1));
        assert_eq!(z(&[3, 1, 1, 0, 0]).aut_order(), BigInt::from(4));
    }

    #[test]
    fn enumeration_examples() {
        let all = enumerate_partitions(4, PartitionConstraints::default());
        assert_eq!(all.iter().filter(|q| q.degree() == 4).count(), 5);
        assert_eq!(
            enumerate_partitions(0, PartitionConstraints::default()),
            vec![Partition::empty()]
        );
        assert!(enumerate_partitions(0, PartitionConstraints::exact_parts(2)).is_empty());

        let two = enumerate_partitions(6, PartitionConstraints::exact_parts(2));
        let expect: Vec<Partition> = [
            &[1, 1][..],
            &[2, 1],
            &[3, 1],
            &[2, 2],
            &[4, 1],
            &[3, 2],
            &[5, 1],
            &[4, 2],
            &[3, 3],
        ]
        .iter()
        .map(|v| p(v))
        .collect();
        assert_eq!(two, expect);
    }

    #[test]
    fn enumeration_respects_max_part() {
        let c = PartitionConstraints {
            max_part: Some(2),
            ..Default::default()
        };
        let got = enumerate_partitions_of(4, c);
        assert_eq!(got, vec![p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]);
    }

    #[test]
    fn canonical_order() {
        let mut v = vec![p(&[1, 1, 1]), p(&[3]), p(&[2, 1]), p(&[1])];
        v.sort();
        assert_eq!(v, vec![p(&[1]), p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
    }

    #[test]
    fn sub_multisets_count() {
        let a = p(&[2, 2, 1]);
        let subs = a.sub_multisets();
        assert_eq!(subs.len(), 6);
        for (l, r) in &subs {
            assert_eq!(l.union(r), a);
        }
    }

    #[test]
    fn parse_and_edit() {
        let a: Partition = "1,2".parse().unwrap();
        assert_eq!(a, p(&[2, 1]));
        assert!("0,1".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
        assert_eq!(a.with(3), p(&[3, 2, 1]));
        assert_eq!(a.with(1).without(2), Some(p(&[1, 1])));
        assert_eq!(a.without(5), None);
    }

    #[test]
    fn zero_padded_enumeration() {
        let got = zero_padded_partitions(2, 3);
        assert_eq!(
            got,
            vec![
                ZeroPaddedPartition::new(vec![2, 0, 0]),
                ZeroPaddedPartition::new(vec![1, 1, 0])
            ]
        );
    }

    fn distinct_rearrangements(parts: &[u32]) -> usize {
        let mut seen = std::collections::HashSet::new();
        permute(&mut parts.to_vec(), 0, &mut seen);
        seen.len()
    }

    fn permute(v: &mut Vec<u32>, k: usize, seen: &mut std::collections::HashSet<Vec<u32>>) {
        if k == v.len() {
            seen.insert(v.clone());
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, seen);
            v.swap(k, i);
        }
    }

    proptest! {
        #[test]
        fn aut_times_orbit_is_factorial(parts in prop::collection::vec(0u32..4, 0..=6)) {
            let beta = ZeroPaddedPartition::new(parts.clone());
            let orbit = distinct_rearrangements(&parts);
            prop_assert_eq!(beta.aut_order() * orbit, factorial(parts.len() as u32));
        }

        #[test]
        fn enumeration_is_duplicate_free(d_max in 0u32..12, parts in 1usize..5) {
            let c = PartitionConstraints::max_parts(parts);
            let a = enumerate_partitions(d_max, c);
            let b = enumerate_partitions(d_max, c);
            prop_assert_eq!(&a, &b);
            let set: std::collections::HashSet<_> = a.iter().cloned().collect();
            prop_assert_eq!(set.len(), a.len());
            prop_assert!(a.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(a.iter().all(|q| q.len() <= parts));
        }
    }
}
