//! Permutations as finite sequences of distinct integers.
//!
//! A [`Permutation`] here is *not* a group element: it is a word of distinct
//! integers such as `2894`. Two permutations of the same size are equivalent
//! when they have the same relative order, and every permutation is
//! equivalent to exactly one permutation of `1..=n` (its standardization).
//!
//! All positions that leave this module are 1-based.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;

/// A finite sequence of pairwise distinct integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<i64>,
}

impl Permutation {
    /// Builds a permutation, rejecting repeated entries.
    pub fn new(entries: Vec<i64>) -> Result<Self, Error> {
        let mut seen = HashSet::with_capacity(entries.len());
        for &e in &entries {
            if !seen.insert(e) {
                return Err(Error::DuplicateEntry(e));
            }
        }
        Ok(Self { entries })
    }

    /// Caller guarantees the entries are distinct.
    pub(crate) fn from_distinct(entries: Vec<i64>) -> Self {
        debug_assert!(Self::new(entries.clone()).is_ok());
        Self { entries }
    }

    pub(crate) fn entries_mut(&mut self) -> &mut Vec<i64> {
        &mut self.entries
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The identity `12…n`.
    pub fn identity(n: usize) -> Self {
        Self {
            entries: (1..=n as i64).collect(),
        }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first(&self) -> Option<i64> {
        self.entries.first().copied()
    }

    /// Replaces each entry by its rank among all entries.
    pub fn standardize(&self) -> Permutation {
        let mut order: Vec<usize> = (0..self.entries.len()).collect();
        order.sort_unstable_by_key(|&i| self.entries[i]);
        let mut out = vec![0; self.entries.len()];
        for (rank, &i) in order.iter().enumerate() {
            out[i] = rank as i64 + 1;
        }
        Permutation { entries: out }
    }

    pub fn is_standard(&self) -> bool {
        let n = self.entries.len() as i64;
        self.entries.iter().all(|&e| (1..=n).contains(&e))
    }

    /// Same size and same relative order.
    pub fn equivalent(&self, other: &Permutation) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let n = self.size();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                (self.entries[i] < self.entries[j]) == (other.entries[i] < other.entries[j])
            })
        })
    }

    pub fn descent_set(&self) -> DescentSet {
        let positions = self
            .entries
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect();
        DescentSet { positions }
    }

    pub fn inversion_set(&self) -> InversionSet {
        let n = self.entries.len();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.entries[i] > self.entries[j] {
                    pairs.push((i + 1, j + 1));
                }
            }
        }
        InversionSet { pairs }
    }

    /// True iff no integer occurs in both permutations.
    pub fn is_disjoint(&self, other: &Permutation) -> bool {
        let (small, large) = if self.size() <= other.size() {
            (self, other)
        } else {
            (other, self)
        };
        let set: HashSet<i64> = small.entries.iter().copied().collect();
        !large.entries.iter().any(|e| set.contains(e))
    }

    /// True iff `sub` occurs in `self` as a (not necessarily contiguous) subsequence.
    pub fn contains_subsequence(&self, sub: &Permutation) -> bool {
        let mut it = self.entries.iter();
        sub.entries.iter().all(|s| it.any(|e| e == s))
    }

    /// All `n!` permutations of `1..=n` in lexicographic order.
    pub fn all_standard(n: usize) -> Arrangements {
        Arrangements::new((1..=n as i64).collect())
    }

    /// Rearranges the entries into the next lexicographically larger word.
    /// Returns `false` (and leaves `self` sorted ascending) after the last one.
    pub(crate) fn advance_lexicographic(entries: &mut [i64]) -> bool {
        let n = entries.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && entries[i - 1] >= entries[i] {
            i -= 1;
        }
        if i == 0 {
            entries.reverse();
            return false;
        }
        let mut j = n - 1;
        while entries[j] <= entries[i - 1] {
            j -= 1;
        }
        entries.swap(i - 1, j);
        entries[i..].reverse();
        true
    }
}

pub fn standardize(p: &Permutation) -> Permutation {
    p.standardize()
}

pub fn equivalent(p: &Permutation, q: &Permutation) -> bool {
    p.equivalent(q)
}

pub fn descent_set(p: &Permutation) -> DescentSet {
    p.descent_set()
}

pub fn inversion_set(p: &Permutation) -> InversionSet {
    p.inversion_set()
}

pub fn disjoint(p: &Permutation, q: &Permutation) -> bool {
    p.is_disjoint(q)
}

/// Every ordering of a fixed set of distinct integers, lexicographically.
#[derive(Clone, Debug)]
pub struct Arrangements {
    current: Vec<i64>,
    done: bool,
}

impl Arrangements {
    /// `values` must be distinct; they are sorted first.
    pub fn new(mut values: Vec<i64>) -> Self {
        values.sort_unstable();
        Self {
            current: values,
            done: false,
        }
    }
}

impl Iterator for Arrangements {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = Permutation::from_distinct(self.current.clone());
        self.done = !Permutation::advance_lexicographic(&mut self.current);
        Some(out)
    }
}

/// 1-based descent positions, ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DescentSet {
    positions: Vec<usize>,
}

impl DescentSet {
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// 1-based inversion position pairs `(i, j)`, `i < j`, ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InversionSet {
    pairs: Vec<(usize, usize)>,
}

impl InversionSet {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl fmt::Display for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.positions.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for InversionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (i, j)) in self.pairs.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "({i},{j})")?;
        }
        f.write_str("}")
    }
}

/// Compact digit string when every entry is in `1..=9`, otherwise a
/// comma-separated list. A single non-compact entry gets a trailing comma so
/// the output always parses back to the same permutation.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.iter().all(|e| (1..=9).contains(e)) {
            for e in &self.entries {
                write!(f, "{e}")?;
            }
            return Ok(());
        }
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        if self.entries.len() == 1 {
            f.write_str(",")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Permutation::empty());
        }
        let bad = || Error::Parse(s.to_string());
        let entries = if s.contains(',') || s.starts_with('-') {
            let s = s.strip_suffix(',').unwrap_or(s);
            s.split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(i64::from).ok_or_else(bad))
                .collect::<Result<Vec<_>, _>>()?
        };
        Permutation::new(entries)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Serialize for DescentSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
