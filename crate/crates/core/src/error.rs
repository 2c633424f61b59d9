use thiserror::Error;

/// Errors raised by basket construction, evaluation and the ladder.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("entry ({b}, {r}) x{mult}: values must be positive with b < r")]
    InvalidPair { b: u32, r: u32, mult: u32 },

    #[error("entry ({b}, {r}) has slope above 1/2 after reduction")]
    SlopeAboveHalf { b: u32, r: u32 },

    #[error("entry ({b}, {r}) is not present with sufficient multiplicity")]
    MissingEntry { b: u32, r: u32 },

    #[error("slope {b}/{r} lies below the level cutoff 1/{cutoff}")]
    BelowCutoff { b: u32, r: u32, cutoff: u32 },

    #[error("chi_{m} is not an integer ({value})")]
    NonInteger { m: u32, value: String },

    #[error("epsilon_{n} disagrees: entry count {count}, delta drop {drop}")]
    EpsilonMismatch { n: u32, count: i64, drop: i64 },

    #[error("negative coefficient {value} for ({b}, {r}) at level {level}")]
    NegativeCoefficient { level: u32, b: u32, r: u32, value: i64 },

    #[error("levels above 7 need chi_2 = 0 and an empty tail beyond r = 5")]
    AssumptionViolated,

    #[error("chi vector needs values through chi_{needed}, has chi_{have}")]
    ShortChiVector { needed: u32, have: u32 },

    #[error("weighted hypersurface: {0}")]
    Hypersurface(String),

    #[error("search found {} violation(s)", .0.violations.len())]
    Counterexample(Box<crate::enumerate::SearchReport>),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
