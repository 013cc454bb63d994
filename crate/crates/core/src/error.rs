use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("entry {0} occurs more than once")]
    DuplicateEntry(i64),

    #[error("cannot parse permutation {0:?}: expected digits like 2413 or a comma-separated list like 12,9,40")]
    Parse(String),

    #[error("permutations {0} and {1} share an entry")]
    NotDisjoint(String, String),

    #[error("left shuffle needs a nonempty first permutation")]
    EmptyLeft,

    #[error("binomial({0}, {1}) does not fit in 64 bits")]
    Overflow(u64, u64),

    #[error("shuffle of total size {size} exceeds the eager bound {bound}; iterate with `shuffles` instead")]
    TooLargeToMaterialize { size: usize, bound: usize },

    #[error("statistic {name} is only defined on permutations of size {expected}, got size {got}")]
    UndefinedSize {
        name: String,
        expected: usize,
        got: usize,
    },

    #[error("unknown statistic {name:?}; available: {}", available.join(", "))]
    UnknownStatistic {
        name: String,
        available: Vec<String>,
    },

    #[error("statistic {0:?} is already registered")]
    DuplicateStatistic(String),

    #[error("statistic {name} declared {declared} values but produced {got}")]
    WrongValueKind {
        name: String,
        declared: &'static str,
        got: &'static str,
    },

    #[error("{name} is not a permutation statistic: {a} and {b} are equivalent but give {va} and {vb}")]
    NotInvariant {
        name: String,
        a: String,
        b: String,
        va: String,
        vb: String,
    },

    #[error("bound {bound} exceeds the hard cap {cap} (one size pair of total n costs n! * binomial(n, m) evaluations)")]
    BoundTooLarge { bound: usize, cap: usize },

    #[error("bound must be at least {min}, got {got}")]
    BoundTooSmall { min: usize, got: usize },

    #[error("could not build worker pool: {0}")]
    ThreadPool(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
