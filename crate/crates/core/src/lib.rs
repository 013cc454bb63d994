//! Permutation statistics, shuffles of disjoint permutations, and bounded
//! exhaustive checks of shuffle compatibility.
//!
//! ```
//! use shufflecheck::{check_descent_statistic, CheckConfig, Permutation, Statistic};
//!
//! let psi = Statistic::psi();
//! let sigma: Permutation = "2413".parse().unwrap();
//! assert_eq!(psi.eval(&sigma).unwrap().to_string(), "1");
//!
//! let report = check_descent_statistic(&psi, 4, &CheckConfig::default()).unwrap();
//! assert!(report.is_violated());
//! ```

pub mod check;
pub mod claims;
pub mod error;
pub mod fixtures;
pub mod perm;
pub mod shuffle;
pub mod stats;

pub use check::{
    check, check_descent_statistic, check_left_shuffle_compatible, check_shuffle_compatible,
    find_witness, group_multisets, pair_summary, CheckConfig, CompatReport, GroupKey, LabeledPair,
    Mode, Verdict, Witness, DEFAULT_HARD_CAP,
};
pub use claims::{run_claims, run_claims_with_table, witness_reproduces, ClaimOutcome};
pub use error::{Error, Result};
pub use fixtures::{
    table1_rows, verify_prop1_identities, verify_size3_identities, verify_table, verify_table1,
    TableCheck, TableRow,
};
pub use perm::{descent_set, disjoint, equivalent, inversion_set, standardize, DescentSet, InversionSet, Permutation};
pub use shuffle::{
    left_shuffle, left_shuffles, shuffle, shuffle_bounded, shuffle_count, shuffles, value_multiset,
    ShuffleSet, Shuffles, ValueMultiset, DEFAULT_EAGER_BOUND,
};
pub use stats::{registry_lookup, Registry, StatValue, Statistic, ValueKind, BUILTIN_NAMES};
