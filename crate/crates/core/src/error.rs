use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("group order {p}^{v} exceeds the supported maximum {max}")]
    OrderTooLarge { p: u32, v: u32, max: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("subgroup exponent {w} exceeds group exponent {v}")]
    SubgroupOutOfRange { w: u32, v: u32 },
    #[error("level {level} out of range 0..={v}")]
    LevelOutOfRange { level: u32, v: u32 },
    #[error("the trivial group has no proper restriction step")]
    TrivialGroup,
    #[error("expected a vector in the {expected:?} basis, got {found:?}")]
    WrongBasis {
        expected: crate::cyclic_rep::Basis,
        found: crate::cyclic_rep::Basis,
    },
    #[error("vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("negative multiplicity {value} for V_{index}: the class is virtual")]
    NegativeMultiplicity { index: usize, value: i64 },
    #[error("invalid orbit `{id}`: {reason}")]
    InvalidOrbit { id: String, reason: String },
    #[error("duplicate orbit id `{0}`")]
    DuplicateOrbit(String),
    #[error("unknown orbit id `{0}`")]
    UnknownOrbit(String),
    #[error("base genus must be nonnegative, got {0}")]
    NegativeBaseGenus(i64),
    #[error("genus of level {level} is not an integer")]
    NonIntegralGenus { level: u32 },
    #[error("genus of level {level} is negative ({genus})")]
    NegativeGenus { level: u32, genus: i64 },
    #[error("divisor belongs to level {found}, expected level {expected}")]
    LevelMismatch { expected: u32, found: u32 },
    #[error("twist exponent {alpha} out of range 0..{p}")]
    AlphaOutOfRange { alpha: u32, p: u32 },
    #[error("divisor degree {degree} does not exceed 2g_X - 2 = {bound}")]
    DegreeTooSmall { degree: i64, bound: i64 },
    #[error("{what} magnitude {value} exceeds the supported bound {max}")]
    Magnitude {
        what: &'static str,
        value: i64,
        max: i64,
    },
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
}
