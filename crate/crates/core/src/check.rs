//! Bounded, exhaustive checks of shuffle compatibility, left shuffle
//! compatibility, and the descent-statistic property.
//!
//! For shuffle-type checks, only pairs whose entries together form
//! `{1, …, m+n}` are visited: jointly relabeling `(sigma, phi)` by an
//! order-preserving bijection relabels every shuffle to an equivalent
//! permutation, so the value multiset of a statistic cannot change.
//!
//! Enumeration order, which fixes the reported witness:
//! size pairs by total then by `m`; `sigma`'s value set lexicographically;
//! arrangements of `sigma` then of `phi` lexicographically.
//!
//! Value sets of one size pair are processed in parallel. Each worker
//! reports, per group, its first pair and its first internal mismatch; the
//! merge walks workers in enumeration order, so the witness is the one a
//! sequential scan would find.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{Arrangements, DescentSet, Permutation};
use crate::shuffle::{stream_multiset, Shuffles, ValueMultiset};
use crate::stats::{StatValue, Statistic};

pub const DEFAULT_HARD_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Shuffle,
    LeftShuffle,
    Descent,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Shuffle => "shuffle",
            Mode::LeftShuffle => "left-shuffle",
            Mode::Descent => "descent",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "shuffle" => Ok(Mode::Shuffle),
            "left" | "left-shuffle" => Ok(Mode::LeftShuffle),
            "descent" => Ok(Mode::Descent),
            other => Err(format!(
                "unknown mode {other:?}; expected shuffle, left or descent"
            )),
        }
    }
}

impl Serialize for Mode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckConfig {
    /// Largest accepted total size (shuffle modes) or size (descent mode).
    pub hard_cap: usize,
    /// Worker threads; `None` uses every available core.
    pub jobs: Option<usize>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            hard_cap: DEFAULT_HARD_CAP,
            jobs: None,
        }
    }
}

impl CheckConfig {
    pub fn with_jobs(jobs: usize) -> Self {
        Self {
            jobs: Some(jobs),
            ..Self::default()
        }
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs.unwrap_or(0))
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))
    }

    fn admit(&self, bound: usize) -> Result<()> {
        if bound > self.hard_cap {
            return Err(Error::BoundTooLarge {
                bound,
                cap: self.hard_cap,
            });
        }
        Ok(())
    }
}

/// What a compatible statistic's multiset may depend on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupKey {
    pub st_sigma: StatValue,
    pub st_phi: StatValue,
    pub size_sigma: usize,
    pub size_phi: usize,
}

impl fmt::Display for GroupKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.st_sigma, self.st_phi, self.size_sigma, self.size_phi
        )
    }
}

/// One `(sigma, phi)` pair with the value multiset over its shuffles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledPair {
    pub sigma: Permutation,
    pub phi: Permutation,
    pub multiset: ValueMultiset,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Two pairs with equal keys and different multisets. `first` is the
    /// group's first pair in enumeration order.
    Pairs {
        key: GroupKey,
        first: LabeledPair,
        second: LabeledPair,
    },
    /// Two permutations of one size with one descent set and different
    /// values. `class` lists every permutation of `1..=size` with that
    /// descent set.
    Descent {
        size: usize,
        descent_set: DescentSet,
        first: Permutation,
        first_value: StatValue,
        second: Permutation,
        second_value: StatValue,
        class: Vec<Permutation>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    CompatibleUpToBound,
    Violated,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::CompatibleUpToBound => "compatible-up-to-bound",
            Verdict::Violated => "violated",
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Outcome of one bounded check. `compatible-up-to-bound` says nothing
/// about sizes beyond `bound`.
#[derive(Clone, Debug, Serialize)]
pub struct CompatReport {
    pub statistic: String,
    pub mode: Mode,
    pub bound: usize,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub groups_examined: usize,
    /// Pairs (shuffle modes) or permutations (descent mode) evaluated.
    pub items_examined: u64,
    #[serde(rename = "wall_time_ms", serialize_with = "as_millis")]
    pub wall_time: Duration,
}

fn as_millis<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64((d.as_secs_f64() * 1e6).round() / 1e3)
}

impl CompatReport {
    pub fn is_violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }
}

pub fn check(st: &Statistic, mode: Mode, bound: usize, cfg: &CheckConfig) -> Result<CompatReport> {
    match mode {
        Mode::Shuffle => check_shuffle_compatible(st, bound, cfg),
        Mode::LeftShuffle => check_left_shuffle_compatible(st, bound, cfg),
        Mode::Descent => check_descent_statistic(st, bound, cfg),
    }
}

pub fn check_shuffle_compatible(
    st: &Statistic,
    max_total_size: usize,
    cfg: &CheckConfig,
) -> Result<CompatReport> {
    check_pairs(st, Mode::Shuffle, max_total_size, cfg)
}

/// Pairs with empty `sigma` are skipped.
pub fn check_left_shuffle_compatible(
    st: &Statistic,
    max_total_size: usize,
    cfg: &CheckConfig,
) -> Result<CompatReport> {
    check_pairs(st, Mode::LeftShuffle, max_total_size, cfg)
}

pub fn find_witness(
    st: &Statistic,
    mode: Mode,
    bound: usize,
    cfg: &CheckConfig,
) -> Result<Option<Witness>> {
    Ok(check(st, mode, bound, cfg)?.witness)
}

/// Position `(chunk, local)` of a pair in enumeration order.
type Index = (usize, usize);

#[derive(Debug)]
struct Occurrence {
    local: usize,
    sigma: Permutation,
    phi: Permutation,
    multiset: ValueMultiset,
}

#[derive(Debug)]
struct GroupSummary {
    key: GroupKey,
    first: Occurrence,
    mismatch: Option<Occurrence>,
}

struct ChunkSummary {
    groups: Vec<GroupSummary>,
    pairs: u64,
}

/// The `m`-subsets of `1..=total` in lexicographic order.
pub(crate) fn value_subsets(total: usize, m: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current: Vec<i64> = (1..=m as i64).collect();
    loop {
        out.push(current.clone());
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < (total - m + i + 1) as i64 {
                current[i] += 1;
                for k in i + 1..m {
                    current[k] = current[k - 1] + 1;
                }
                break;
            }
        }
    }
}

fn pair_multiset(
    st: &Statistic,
    sigma: &Permutation,
    phi: &Permutation,
    left: bool,
) -> Result<ValueMultiset> {
    stream_multiset(Shuffles::new(sigma, phi, left), st)
}

fn summarize_chunk(st: &Statistic, sigma_values: &[i64], total: usize, left: bool) -> Result<ChunkSummary> {
    let m = sigma_values.len();
    let phi_values: Vec<i64> = (1..=total as i64)
        .filter(|v| !sigma_values.contains(v))
        .collect();
    let phis = Arrangements::new(phi_values)
        .map(|phi| st.eval(&phi).map(|v| (phi, v)))
        .collect::<Result<Vec<_>>>()?;

    let mut groups: Vec<GroupSummary> = Vec::new();
    let mut index: HashMap<GroupKey, usize> = HashMap::new();
    let mut local = 0;
    for sigma in Arrangements::new(sigma_values.to_vec()) {
        let st_sigma = st.eval(&sigma)?;
        for (phi, st_phi) in &phis {
            let key = GroupKey {
                st_sigma: st_sigma.clone(),
                st_phi: st_phi.clone(),
                size_sigma: m,
                size_phi: total - m,
            };
            let multiset = pair_multiset(st, &sigma, phi, left)?;
            let occ = Occurrence {
                local,
                sigma: sigma.clone(),
                phi: phi.clone(),
                multiset,
            };
            match index.get(&key) {
                Some(&g) => {
                    let g = &mut groups[g];
                    if g.mismatch.is_none() && g.first.multiset != occ.multiset {
                        g.mismatch = Some(occ);
                    }
                }
                None => {
                    index.insert(key.clone(), groups.len());
                    groups.push(GroupSummary {
                        key,
                        first: occ,
                        mismatch: None,
                    });
                }
            }
            local += 1;
        }
    }
    Ok(ChunkSummary {
        groups,
        pairs: local as u64,
    })
}

fn labeled(o: &Occurrence) -> LabeledPair {
    LabeledPair {
        sigma: o.sigma.clone(),
        phi: o.phi.clone(),
        multiset: o.multiset.clone(),
    }
}

fn check_pairs(st: &Statistic, mode: Mode, bound: usize, cfg: &CheckConfig) -> Result<CompatReport> {
    cfg.admit(bound)?;
    let left = mode == Mode::LeftShuffle;
    let started = Instant::now();
    let pool = cfg.pool()?;

    let mut groups_examined = 0;
    let mut items_examined = 0;
    let mut witness = None;

    'sizes: for total in 0..=bound {
        for m in 0..=total {
            if left && m == 0 {
                continue;
            }
            let subsets = value_subsets(total, m);
            let chunks: Vec<ChunkSummary> = pool.install(|| {
                subsets
                    .par_iter()
                    .map(|s| summarize_chunk(st, s, total, left))
                    .collect::<Result<Vec<_>>>()
            })?;

            // Representative pair of each group seen so far in this size pair.
            let mut reps: HashMap<GroupKey, Occurrence> = HashMap::new();
            let mut first_violation: Option<(Index, Witness)> = None;
            for (c, chunk) in chunks.into_iter().enumerate() {
                items_examined += chunk.pairs;
                for g in chunk.groups {
                    let rep = reps.get(&g.key);
                    let candidate = match rep {
                        Some(r) if r.multiset != g.first.multiset => Some((r, &g.first)),
                        Some(r) => g.mismatch.as_ref().map(|mm| (r, mm)),
                        None => g.mismatch.as_ref().map(|mm| (&g.first, mm)),
                    };
                    if let Some((r, bad)) = candidate {
                        let idx = (c, bad.local);
                        if first_violation.as_ref().is_none_or(|(best, _)| idx < *best) {
                            let w = Witness::Pairs {
                                key: g.key.clone(),
                                first: labeled(r),
                                second: labeled(bad),
                            };
                            first_violation = Some((idx, w));
                        }
                    }
                    if rep.is_none() {
                        reps.insert(g.key, g.first);
                    }
                }
            }
            groups_examined += reps.len();
            if let Some((_, w)) = first_violation {
                witness = Some(w);
                break 'sizes;
            }
        }
    }

    Ok(CompatReport {
        statistic: st.name().to_string(),
        mode,
        bound,
        verdict: if witness.is_some() {
            Verdict::Violated
        } else {
            Verdict::CompatibleUpToBound
        },
        witness,
        groups_examined,
        items_examined,
        wall_time: started.elapsed(),
    })
}

/// Partitions the permutations of `1..=n`, for each `n <= max_size`, by
/// descent set and looks for a class on which `st` is not constant.
pub fn check_descent_statistic(
    st: &Statistic,
    max_size: usize,
    cfg: &CheckConfig,
) -> Result<CompatReport> {
    if max_size < 1 {
        return Err(Error::BoundTooSmall {
            min: 1,
            got: max_size,
        });
    }
    cfg.admit(max_size)?;
    let started = Instant::now();
    let mut groups_examined = 0;
    let mut items_examined = 0;
    let mut witness = None;

    for n in 0..=max_size {
        // Descent set -> (first member, its value, all members).
        let mut classes: HashMap<DescentSet, (Permutation, StatValue, Vec<Permutation>)> =
            HashMap::new();
        let mut violation: Option<(DescentSet, Permutation, StatValue)> = None;
        for q in Permutation::all_standard(n) {
            items_examined += 1;
            let value = st.eval(&q)?;
            let des = q.descent_set();
            match classes.get_mut(&des) {
                Some((_, first_value, members)) => {
                    if violation.is_none() && *first_value != value {
                        violation = Some((des, q.clone(), value));
                    }
                    members.push(q);
                }
                None => {
                    classes.insert(des, (q.clone(), value, vec![q]));
                }
            }
        }
        groups_examined += classes.len();
        if let Some((des, second, second_value)) = violation {
            let (first, first_value, class) = classes.remove(&des).expect("class exists");
            witness = Some(Witness::Descent {
                size: n,
                descent_set: des,
                first,
                first_value,
                second,
                second_value,
                class,
            });
            break;
        }
    }

    Ok(CompatReport {
        statistic: st.name().to_string(),
        mode: Mode::Descent,
        bound: max_size,
        verdict: if witness.is_some() {
            Verdict::Violated
        } else {
            Verdict::CompatibleUpToBound
        },
        witness,
        groups_examined,
        items_examined,
        wall_time: started.elapsed(),
    })
}

/// Every distinct multiset seen in each group of the size pair `(m, n)`.
/// A compatible statistic has exactly one per group.
pub fn group_multisets(
    st: &Statistic,
    m: usize,
    n: usize,
    left: bool,
) -> Result<BTreeMap<GroupKey, BTreeSet<ValueMultiset>>> {
    if left && m == 0 {
        return Err(Error::EmptyLeft);
    }
    let mut out: BTreeMap<GroupKey, BTreeSet<ValueMultiset>> = BTreeMap::new();
    for sigma_values in value_subsets(m + n, m) {
        let phi_values: Vec<i64> = (1..=(m + n) as i64)
            .filter(|v| !sigma_values.contains(v))
            .collect();
        for sigma in Arrangements::new(sigma_values.clone()) {
            for phi in Arrangements::new(phi_values.clone()) {
                let key = GroupKey {
                    st_sigma: st.eval(&sigma)?,
                    st_phi: st.eval(&phi)?,
                    size_sigma: m,
                    size_phi: n,
                };
                let ms = pair_multiset(st, &sigma, &phi, left)?;
                out.entry(key).or_default().insert(ms);
            }
        }
    }
    Ok(out)
}

/// Group key and multiset of one explicit pair, for inspecting witnesses.
pub fn pair_summary(
    st: &Statistic,
    sigma: &Permutation,
    phi: &Permutation,
    left: bool,
) -> Result<(GroupKey, ValueMultiset)> {
    let it = if left {
        crate::shuffle::left_shuffles(sigma, phi)?
    } else {
        crate::shuffle::shuffles(sigma, phi)?
    };
    let key = GroupKey {
        st_sigma: st.eval(sigma)?,
        st_phi: st.eval(phi)?,
        size_sigma: sigma.size(),
        size_phi: phi.size(),
    };
    Ok((key, stream_multiset(it, st)?))
}
