use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    EmptyInput,
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    DegenerateRay,
    NegativeScalar,
    OriginNotInterior,
    NotNormallyEquivalent,
    NotGeneralPosition,
    /// Sign constraints on weights after the first layer were violated.
    InvalidNetwork(Vec<String>),
    WrongDepth {
        expected: usize,
        found: usize,
    },
    ZeroWeight,
    WordLength {
        expected: usize,
        found: usize,
    },
    TooManyWords(usize),
    CannotNormalize,
    InvalidColoring,
    EvenDimension(usize),
    Shape(String),
    InvalidArgument(String),
    Exhausted(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyInput => f.write_str("empty input"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::DegenerateRay => f.write_str("degenerate ray"),
            Error::NegativeScalar => f.write_str("negative scalar"),
            Error::OriginNotInterior => f.write_str("origin not interior"),
            Error::NotNormallyEquivalent => f.write_str("polytopes are not normally equivalent"),
            Error::NotGeneralPosition => f.write_str("polytopes are not in general position"),
            Error::InvalidNetwork(v) => write!(f, "invalid network: {}", v.join("; ")),
            Error::WrongDepth { expected, found } => {
                write!(
                    f,
                    "wrong depth: expected {expected} hidden layers, found {found}"
                )
            }
            Error::ZeroWeight => f.write_str("zero weight"),
            Error::WordLength { expected, found } => {
                write!(
                    f,
                    "word length mismatch: expected {expected}, found {found}"
                )
            }
            Error::TooManyWords(m) => {
                write!(f, "word enumeration over 2^{m} words exceeds the cap 2^20")
            }
            Error::CannotNormalize => f.write_str("cannot normalize"),
            Error::InvalidColoring => f.write_str("invalid bicoloring"),
            Error::EvenDimension(d) => write!(f, "dimension {d} must be odd"),
            Error::Shape(s) => write!(f, "shape error: {s}"),
            Error::InvalidArgument(s) => write!(f, "invalid argument: {s}"),
            Error::Exhausted(s) => write!(f, "retries exhausted: {s}"),
        }
    }
}

impl core::error::Error for Error {}
