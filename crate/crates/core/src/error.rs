use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {elem} is outside the ground set [1, {n}]")]
    ElementOutOfRange { elem: usize, n: usize },
    #[error("ground set size {0} exceeds the supported maximum of 63")]
    GroundTooLarge(usize),
    #[error("cardinality mismatch: {0} vs {1}")]
    CardinalityMismatch(usize, usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("empty collection")]
    Empty,
    #[error("no unique minimum in the {pivot}-Gale order")]
    NoUniqueMinimum { pivot: usize },
    #[error("not a permutation: {0:?}")]
    NotPermutation(Vec<usize>),
    #[error("{u:?} is not below {v:?} in Bruhat order")]
    NotBruhatLeq { u: Vec<usize>, v: Vec<usize> },
    #[error("basis collection violates the exchange axiom")]
    NotMatroid,
    #[error("sequence is not a flag matroid")]
    NotFlagMatroid,
    #[error("ranks must be strictly increasing, got {0:?}")]
    RanksNotIncreasing(Vec<usize>),
    #[error("ranks must be consecutive, got {0:?}")]
    RanksNotConsecutive(Vec<usize>),
    #[error("matroid is not a positroid")]
    NotPositroid,
    #[error("invalid Grassmann necklace: {0}")]
    InvalidNecklace(String),
    #[error("element {0} is a loop or coloop")]
    LoopOrColoop(usize),
    #[error("invalid minor: {0}")]
    InvalidMinor(String),
    #[error("invalid rank {rank} for ground set size {n}")]
    InvalidRank { rank: usize, n: usize },
    #[error("tropical vector is identically infinite")]
    AllInfinite,
    #[error("cannot parse tropical value {0:?}")]
    ParseValue(String),
    #[error("affine dimension {0} exceeds the cap of {1}")]
    DimensionCap(usize, usize),
    #[error("inconsistent flag labels: {0}")]
    InconsistentLabels(String),
    #[error("certifiers disagree: {0}")]
    CertifierDisagreement(String),
    #[error("flag is not complete")]
    NotComplete,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
