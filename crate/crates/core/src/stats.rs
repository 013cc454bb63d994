//! Statistic values, the [`Statistic`] abstraction, and the built-in
//! statistics.
//!
//! Built-ins:
//!
//! | name     | value            | defined on  |
//! |----------|------------------|-------------|
//! | `one`    | `1`              | every size  |
//! | `des`    | descent set      | every size  |
//! | `inv`    | inversion set    | every size  |
//! | `inv12`  | `±1`             | size 4 only |
//! | `adj34`  | `±1`             | size 4 only |
//! | `lambda` | `inv12 * adj34`  | size 4 only |
//! | `psi`    | `lambda` at size 4, `1` elsewhere | every size |
//!
//! `inv12` is `+1` when the smallest entry lies left of the second smallest.
//! `adj34` is `+1` when the two largest entries sit in adjacent positions.
//! `psi` is shuffle compatible but not a descent statistic.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Value of a statistic. Variants order as `Int < IntSet < PairSet`;
/// sets are kept sorted and compare lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StatValue {
    Int(i64),
    IntSet(Vec<i64>),
    PairSet(Vec<(i64, i64)>),
}

impl StatValue {
    pub fn int_set(mut items: Vec<i64>) -> Self {
        items.sort_unstable();
        items.dedup();
        StatValue::IntSet(items)
    }

    pub fn pair_set(mut items: Vec<(i64, i64)>) -> Self {
        items.sort_unstable();
        items.dedup();
        StatValue::PairSet(items)
    }

    pub fn kind(&self) -> ValueKind {
        match self {
            StatValue::Int(_) => ValueKind::Int,
            StatValue::IntSet(_) => ValueKind::IntSet,
            StatValue::PairSet(_) => ValueKind::PairSet,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            StatValue::Int(v) => Some(*v),
            _ => None,
        }
    }
}

impl fmt::Display for StatValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatValue::Int(v) => write!(f, "{v}"),
            StatValue::IntSet(items) => {
                f.write_str("{")?;
                for (k, v) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("}")
            }
            StatValue::PairSet(items) => {
                f.write_str("{")?;
                for (k, (a, b)) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "({a},{b})")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl Serialize for StatValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValueKind {
    Int,
    IntSet,
    PairSet,
}

impl ValueKind {
    pub fn name(self) -> &'static str {
        match self {
            ValueKind::Int => "int",
            ValueKind::IntSet => "int-set",
            ValueKind::PairSet => "pair-set",
        }
    }
}

pub type EvalFn = dyn Fn(&Permutation) -> Result<StatValue> + Send + Sync;

/// A named map from permutations to [`StatValue`]s that must be constant on
/// equivalence classes.
#[derive(Clone)]
pub struct Statistic {
    name: String,
    kind: ValueKind,
    eval: Arc<EvalFn>,
}

impl fmt::Debug for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Statistic")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .finish_non_exhaustive()
    }
}

impl Statistic {
    pub fn new<F>(name: impl Into<String>, kind: ValueKind, eval: F) -> Self
    where
        F: Fn(&Permutation) -> Result<StatValue> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            kind,
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> ValueKind {
        self.kind
    }

    #[inline]
    pub fn eval(&self, p: &Permutation) -> Result<StatValue> {
        (self.eval)(p)
    }

    pub fn one() -> Self {
        Self::new("one", ValueKind::Int, |p| Ok(stat_one(p)))
    }

    pub fn des() -> Self {
        Self::new("des", ValueKind::IntSet, |p| Ok(stat_des(p)))
    }

    pub fn inv() -> Self {
        Self::new("inv", ValueKind::PairSet, |p| Ok(stat_inv(p)))
    }

    pub fn inv12() -> Self {
        Self::new("inv12", ValueKind::Int, stat_inv12)
    }

    pub fn adj34() -> Self {
        Self::new("adj34", ValueKind::Int, stat_adj34)
    }

    pub fn lambda() -> Self {
        Self::new("lambda", ValueKind::Int, stat_lambda)
    }

    pub fn psi() -> Self {
        Self::new("psi", ValueKind::Int, |p| Ok(stat_psi(p)))
    }

    /// Looks for two equivalent permutations with different values by
    /// relabeling random standard permutations of sizes `0..=max_size` with
    /// random increasing integer sequences. Sizes where the statistic is
    /// undefined are skipped.
    pub fn find_invariance_violation(
        &self,
        max_size: usize,
        samples_per_size: usize,
        seed: u64,
    ) -> Result<Option<Error>> {
        let mut rng = StdRng::seed_from_u64(seed);
        for n in 0..=max_size {
            for _ in 0..samples_per_size {
                let mut base: Vec<i64> = (1..=n as i64).collect();
                base.shuffle(&mut rng);
                let base = Permutation::from_distinct(base);
                let expected = match self.eval(&base) {
                    Ok(v) => v,
                    Err(Error::UndefinedSize { .. }) => break,
                    Err(e) => return Err(e),
                };
                if expected.kind() != self.kind {
                    return Err(Error::WrongValueKind {
                        name: self.name.clone(),
                        declared: self.kind.name(),
                        got: expected.kind().name(),
                    });
                }
                let relabeled = random_relabeling(&base, &mut rng);
                let got = self.eval(&relabeled)?;
                if got != expected {
                    return Ok(Some(Error::NotInvariant {
                        name: self.name.clone(),
                        a: base.to_string(),
                        b: relabeled.to_string(),
                        va: expected.to_string(),
                        vb: got.to_string(),
                    }));
                }
            }
        }
        Ok(None)
    }
}

/// Maps rank `k` of a standard permutation to the `k`-th smallest of `n`
/// distinct random integers.
pub(crate) fn random_relabeling<R: Rng>(standard: &Permutation, rng: &mut R) -> Permutation {
    let n = standard.size();
    let mut labels = std::collections::BTreeSet::new();
    while labels.len() < n {
        labels.insert(rng.gen_range(-1000i64..=1000));
    }
    let labels: Vec<i64> = labels.into_iter().collect();
    Permutation::from_distinct(
        standard
            .entries()
            .iter()
            .map(|&r| labels[(r - 1) as usize])
            .collect(),
    )
}

pub fn stat_one(_p: &Permutation) -> StatValue {
    StatValue::Int(1)
}

pub fn stat_des(p: &Permutation) -> StatValue {
    StatValue::IntSet(
        p.descent_set()
            .positions()
            .iter()
            .map(|&i| i as i64)
            .collect(),
    )
}

pub fn stat_inv(p: &Permutation) -> StatValue {
    StatValue::PairSet(
        p.inversion_set()
            .pairs()
            .iter()
            .map(|&(i, j)| (i as i64, j as i64))
            .collect(),
    )
}

/// Positions of the entries in increasing order of value, for size 4.
fn value_positions(name: &str, p: &Permutation) -> Result<[usize; 4]> {
    if p.size() != 4 {
        return Err(Error::UndefinedSize {
            name: name.to_string(),
            expected: 4,
            got: p.size(),
        });
    }
    let mut pos = [0, 1, 2, 3];
    pos.sort_unstable_by_key(|&i| p.entries()[i]);
    Ok(pos)
}

fn sign(b: bool) -> i64 {
    if b {
        1
    } else {
        -1
    }
}

fn inv12_sign(pos: &[usize; 4]) -> i64 {
    sign(pos[0] < pos[1])
}

fn adj34_sign(pos: &[usize; 4]) -> i64 {
    sign(pos[2].abs_diff(pos[3]) == 1)
}

pub fn stat_inv12(p: &Permutation) -> Result<StatValue> {
    let pos = value_positions("inv12", p)?;
    Ok(StatValue::Int(inv12_sign(&pos)))
}

pub fn stat_adj34(p: &Permutation) -> Result<StatValue> {
    let pos = value_positions("adj34", p)?;
    Ok(StatValue::Int(adj34_sign(&pos)))
}

pub fn stat_lambda(p: &Permutation) -> Result<StatValue> {
    let pos = value_positions("lambda", p)?;
    Ok(StatValue::Int(inv12_sign(&pos) * adj34_sign(&pos)))
}

pub fn stat_psi(p: &Permutation) -> StatValue {
    match value_positions("psi", p) {
        Ok(pos) => StatValue::Int(inv12_sign(&pos) * adj34_sign(&pos)),
        Err(_) => StatValue::Int(1),
    }
}

pub const BUILTIN_NAMES: [&str; 7] = ["one", "des", "inv", "inv12", "adj34", "lambda", "psi"];

/// Name-indexed statistics. Fill it, then share it read-only.
#[derive(Clone, Debug)]
pub struct Registry {
    stats: BTreeMap<String, Statistic>,
}

impl Default for Registry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl Registry {
    pub fn builtin() -> Self {
        let stats = [
            Statistic::one(),
            Statistic::des(),
            Statistic::inv(),
            Statistic::inv12(),
            Statistic::adj34(),
            Statistic::lambda(),
            Statistic::psi(),
        ]
        .into_iter()
        .map(|s| (s.name().to_string(), s))
        .collect();
        Self { stats }
    }

    /// Adds a custom statistic after a sampled equivalence-invariance and
    /// value-kind check on sizes up to 6.
    pub fn register(&mut self, stat: Statistic) -> Result<()> {
        if self.stats.contains_key(stat.name()) {
            return Err(Error::DuplicateStatistic(stat.name().to_string()));
        }
        if let Some(violation) = stat.find_invariance_violation(6, 32, 0x5eed)? {
            return Err(violation);
        }
        self.stats.insert(stat.name().to_string(), stat);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&Statistic> {
        self.stats.get(name).ok_or_else(|| Error::UnknownStatistic {
            name: name.to_string(),
            available: self.names(),
        })
    }

    pub fn names(&self) -> Vec<String> {
        self.stats.keys().cloned().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Statistic> {
        self.stats.values()
    }
}

/// Looks up a built-in statistic by name.
pub fn registry_lookup(name: &str) -> Result<Statistic> {
    Registry::builtin().get(name).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn int(v: i64) -> StatValue {
        StatValue::Int(v)
    }

    #[test]
    fn one_is_constant() {
        for s in ["2413", "", "312"] {
            assert_eq!(stat_one(&p(s)), int(1));
        }
    }

    #[test]
    fn des_and_inv_values() {
        assert_eq!(stat_des(&p("2413")).to_string(), "{2}");
        assert_eq!(stat_des(&p("1234")).to_string(), "{}");
        assert_eq!(stat_des(&p("21")).to_string(), "{1}");
        assert_eq!(stat_inv(&p("312")).to_string(), "{(1,2),(1,3)}");
        assert_eq!(stat_inv(&p("123")).to_string(), "{}");
    }

    #[test]
    fn size_four_signs() {
        assert_eq!(stat_inv12(&p("2413")).unwrap(), int(-1));
        assert_eq!(stat_inv12(&p("1423")).unwrap(), int(1));
        assert_eq!(stat_inv12(&p("1234")).unwrap(), int(1));

        assert_eq!(stat_adj34(&p("2413")).unwrap(), int(-1));
        assert_eq!(stat_adj34(&p("1234")).unwrap(), int(1));
        assert_eq!(stat_adj34(&p("1342")).unwrap(), int(1));
        assert_eq!(stat_adj34(&p("1423")).unwrap(), int(-1));

        assert_eq!(stat_lambda(&p("2413")).unwrap(), int(1));
        assert_eq!(stat_lambda(&p("1423")).unwrap(), int(-1));
        assert_eq!(stat_lambda(&p("1234")).unwrap(), int(1));
    }

    #[test]
    fn size_four_only_statistics_reject_other_sizes() {
        for f in [stat_inv12, stat_adj34, stat_lambda] {
            assert!(matches!(
                f(&p("123")),
                Err(Error::UndefinedSize { expected: 4, got: 3, .. })
            ));
            assert!(f(&Permutation::empty()).is_err());
        }
    }

    #[test]
    fn psi_values() {
        assert_eq!(stat_psi(&p("2413")), int(1));
        assert_eq!(stat_psi(&p("1423")), int(-1));
        assert_eq!(stat_psi(&p("12345")), int(1));
        assert_eq!(stat_psi(&Permutation::empty()), int(1));
    }

    #[test]
    fn psi_agrees_with_lambda_and_is_one_elsewhere() {
        for q in Permutation::all_standard(4) {
            assert_eq!(stat_psi(&q), stat_lambda(&q).unwrap());
        }
        for n in [0, 1, 2, 3, 5] {
            for q in Permutation::all_standard(n) {
                assert_eq!(stat_psi(&q), int(1));
            }
        }
    }

    #[test]
    fn lambda_splits_size_four_evenly() {
        // Brute force over all 24, counted directly from the definitions.
        let mut plus = 0;
        let mut inv12_plus = 0;
        let mut adj34_plus = 0;
        for q in Permutation::all_standard(4) {
            let e = q.entries();
            let at = |v: i64| e.iter().position(|&x| x == v).unwrap();
            let i = at(1) < at(2);
            let a = at(3).abs_diff(at(4)) == 1;
            inv12_plus += i as usize;
            adj34_plus += a as usize;
            plus += (i == a) as usize;
            assert_eq!(stat_lambda(&q).unwrap(), int(if i == a { 1 } else { -1 }));
        }
        assert_eq!((inv12_plus, adj34_plus, plus), (12, 12, 12));
    }

    #[test]
    fn psi_symmetric_in_three_and_four() {
        for q in Permutation::all_standard(4) {
            let swapped = Permutation::new(
                q.entries()
                    .iter()
                    .map(|&e| match e {
                        3 => 4,
                        4 => 3,
                        e => e,
                    })
                    .collect(),
            )
            .unwrap();
            assert_eq!(stat_psi(&q), stat_psi(&swapped), "{q}");
        }
    }

    #[test]
    fn value_order_and_format() {
        let mut vals = [
            StatValue::pair_set(vec![(1, 2)]),
            StatValue::int_set(vec![3, 2]),
            int(1),
            int(-1),
            StatValue::int_set(vec![]),
        ];
        vals.sort();
        let shown: Vec<_> = vals.iter().map(|v| v.to_string()).collect();
        assert_eq!(shown, ["-1", "1", "{}", "{2,3}", "{(1,2)}"]);
    }

    #[test]
    fn registry() {
        let reg = Registry::builtin();
        assert_eq!(reg.get("psi").unwrap().name(), "psi");
        assert_eq!(reg.get("des").unwrap().kind(), ValueKind::IntSet);
        let err = reg.get("nope").unwrap_err();
        assert!(err.to_string().contains("psi"), "{err}");
        assert_eq!(reg.names().len(), BUILTIN_NAMES.len());
    }

    #[test]
    fn register_custom() {
        let mut reg = Registry::builtin();
        let inv_count = Statistic::new("inv_count", ValueKind::Int, |p| {
            Ok(StatValue::Int(p.inversion_set().len() as i64))
        });
        reg.register(inv_count).unwrap();
        assert!(reg.get("inv_count").is_ok());

        // First entry is not a statistic.
        let first = Statistic::new("first", ValueKind::Int, |p| {
            Ok(StatValue::Int(p.first().unwrap_or(0)))
        });
        assert!(matches!(reg.register(first), Err(Error::NotInvariant { .. })));

        let lying = Statistic::new("lying", ValueKind::IntSet, |_| Ok(StatValue::Int(0)));
        assert!(matches!(reg.register(lying), Err(Error::WrongValueKind { .. })));

        assert!(matches!(
            reg.register(Statistic::psi()),
            Err(Error::DuplicateStatistic(_))
        ));
    }
}
