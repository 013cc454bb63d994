//! Shuffles of two disjoint permutations and multisets of statistic values.
//!
//! A shuffle of `sigma` and `phi` is chosen by the set of positions that
//! `sigma`'s entries occupy. Position sets are visited in lexicographic
//! order, so enumeration is deterministic and, since the inputs are
//! disjoint, free of duplicates.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::stats::{StatValue, Statistic};

/// Largest total size [`shuffle`] will materialize.
pub const DEFAULT_EAGER_BOUND: usize = 12;

/// Streaming enumeration of `sigma ⧢ phi` (or only the shuffles starting
/// with `sigma`'s first entry when `left` is set).
#[derive(Clone, Debug)]
pub struct Shuffles<'a> {
    sigma: &'a [i64],
    phi: &'a [i64],
    positions: Vec<usize>,
    left: bool,
    done: bool,
}

impl<'a> Shuffles<'a> {
    pub(crate) fn new(sigma: &'a Permutation, phi: &'a Permutation, left: bool) -> Self {
        Self {
            sigma: sigma.entries(),
            phi: phi.entries(),
            positions: (0..sigma.size()).collect(),
            left,
            done: false,
        }
    }

    /// Writes the next shuffle into `out`, reusing its allocation.
    pub fn next_into(&mut self, out: &mut Permutation) -> bool {
        if self.done {
            return false;
        }
        let total = self.sigma.len() + self.phi.len();
        let buf = out.entries_mut();
        buf.clear();
        let (mut i, mut j) = (0, 0);
        for k in 0..total {
            if i < self.positions.len() && self.positions[i] == k {
                buf.push(self.sigma[i]);
                i += 1;
            } else {
                buf.push(self.phi[j]);
                j += 1;
            }
        }
        self.done = !self.advance(total);
        true
    }

    fn advance(&mut self, total: usize) -> bool {
        let m = self.positions.len();
        let mut i = m;
        while i > 0 {
            i -= 1;
            if self.positions[i] < total - m + i {
                if self.left && i == 0 {
                    return false;
                }
                self.positions[i] += 1;
                for k in i + 1..m {
                    self.positions[k] = self.positions[k - 1] + 1;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Shuffles<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let mut out = Permutation::empty();
        self.next_into(&mut out).then_some(out)
    }
}

fn require_disjoint(sigma: &Permutation, phi: &Permutation) -> Result<()> {
    if sigma.is_disjoint(phi) {
        Ok(())
    } else {
        Err(Error::NotDisjoint(sigma.to_string(), phi.to_string()))
    }
}

/// Streams `sigma ⧢ phi` without materializing it.
pub fn shuffles<'a>(sigma: &'a Permutation, phi: &'a Permutation) -> Result<Shuffles<'a>> {
    require_disjoint(sigma, phi)?;
    Ok(Shuffles::new(sigma, phi, false))
}

/// Streams the shuffles whose first entry is `sigma`'s first entry.
pub fn left_shuffles<'a>(sigma: &'a Permutation, phi: &'a Permutation) -> Result<Shuffles<'a>> {
    require_disjoint(sigma, phi)?;
    if sigma.is_empty() {
        return Err(Error::EmptyLeft);
    }
    Ok(Shuffles::new(sigma, phi, true))
}

/// `sigma ⧢ phi`, materialized, for total size up to [`DEFAULT_EAGER_BOUND`].
pub fn shuffle(sigma: &Permutation, phi: &Permutation) -> Result<ShuffleSet> {
    shuffle_bounded(sigma, phi, DEFAULT_EAGER_BOUND)
}

pub fn shuffle_bounded(sigma: &Permutation, phi: &Permutation, bound: usize) -> Result<ShuffleSet> {
    let it = shuffles(sigma, phi)?;
    check_eager(sigma, phi, bound)?;
    Ok(ShuffleSet {
        elements: it.collect(),
    })
}

/// The shuffles of `sigma` and `phi` whose first entry is `sigma`'s first.
pub fn left_shuffle(sigma: &Permutation, phi: &Permutation) -> Result<ShuffleSet> {
    let it = left_shuffles(sigma, phi)?;
    check_eager(sigma, phi, DEFAULT_EAGER_BOUND)?;
    Ok(ShuffleSet {
        elements: it.collect(),
    })
}

fn check_eager(sigma: &Permutation, phi: &Permutation, bound: usize) -> Result<()> {
    let size = sigma.size() + phi.size();
    if size > bound {
        return Err(Error::TooLargeToMaterialize { size, bound });
    }
    Ok(())
}

/// `binomial(m + n, m)`, the number of shuffles of disjoint permutations of
/// sizes `m` and `n`.
pub fn shuffle_count(m: u64, n: u64) -> Result<u64> {
    let total = m.checked_add(n).ok_or(Error::Overflow(u64::MAX, m))?;
    let k = m.min(n);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (total - i) / (i + 1) stays integral at every step.
        acc = acc * u128::from(total - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return Err(Error::Overflow(total, m));
        }
    }
    Ok(acc as u64)
}

/// A materialized set of shuffles, in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleSet {
    elements: Vec<Permutation>,
}

impl ShuffleSet {
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn sorted(&self) -> Vec<Permutation> {
        let mut v = self.elements.clone();
        v.sort();
        v
    }

    /// Equality as sets, ignoring enumeration order.
    pub fn same_elements(&self, other: &ShuffleSet) -> bool {
        self.sorted() == other.sorted()
    }

    pub fn value_multiset(&self, st: &Statistic) -> Result<ValueMultiset> {
        value_multiset(self, st)
    }
}

impl IntoIterator for ShuffleSet {
    type Item = Permutation;
    type IntoIter = std::vec::IntoIter<Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.into_iter()
    }
}

impl Serialize for ShuffleSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.sorted().iter().map(|p| p.to_string()))
    }
}

/// A multiset of statistic values, stored as a sorted sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueMultiset {
    items: Vec<StatValue>,
}

impl ValueMultiset {
    pub fn new(mut items: Vec<StatValue>) -> Self {
        items.sort_unstable();
        Self { items }
    }

    pub fn items(&self) -> &[StatValue] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn count(&self, value: &StatValue) -> usize {
        self.items.iter().filter(|v| *v == value).count()
    }
}

impl FromIterator<StatValue> for ValueMultiset {
    fn from_iter<I: IntoIterator<Item = StatValue>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl fmt::Display for ValueMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{{")?;
        for (k, v) in self.items.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}}")
    }
}

impl Serialize for ValueMultiset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn value_multiset(set: &ShuffleSet, st: &Statistic) -> Result<ValueMultiset> {
    set.elements
        .iter()
        .map(|g| st.eval(g))
        .collect::<Result<Vec<_>>>()
        .map(ValueMultiset::new)
}

/// Multiset of `st` over a shuffle stream, without materializing the shuffles.
pub(crate) fn stream_multiset(mut it: Shuffles<'_>, st: &Statistic) -> Result<ValueMultiset> {
    let mut buf = Permutation::empty();
    let mut items = Vec::new();
    while it.next_into(&mut buf) {
        items.push(st.eval(&buf)?);
    }
    Ok(ValueMultiset::new(items))
}
