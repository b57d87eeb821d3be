use alloc::string::String;
use core::fmt;

/// Failure modes shared by every operation in the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    ZeroConstantTerm,
    FieldMismatch,
    InconsistentInitialSegment { index: usize },
    UnderdeterminedInput { needed: usize, given: usize },
    InsufficientPrecision { needed: usize, given: usize },
    DegenerateEquation,
    PolynomialInput,
    PrecisionExhausted,
    ConstantTermNotOne,
    MultiplicativelyDependent,
    InvalidExponents,
    DegreeBoundOverflow,
    PurelyPeriodicOrbit,
    BaseMismatch,
    BadPrime { p: u64 },
    NotPrime { p: u64 },
    FactorVanishes,
    UnknownName(String),
    VerificationFailed { index: usize },
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroConstantTerm => write!(f, "series has zero constant term"),
            Error::FieldMismatch => write!(f, "operands live over different fields"),
            Error::InconsistentInitialSegment { index } => {
                write!(f, "initial segment contradicts the recursion at index {index}")
            }
            Error::UnderdeterminedInput { needed, given } => {
                write!(f, "need {needed} initial terms, got {given}")
            }
            Error::InsufficientPrecision { needed, given } => {
                write!(f, "need precision {needed}, got {given}")
            }
            Error::DegenerateEquation => write!(f, "relation collapses to 0 = 0"),
            Error::PolynomialInput => write!(f, "series is a polynomial within its precision"),
            Error::PrecisionExhausted => write!(f, "not enough precision left for this step"),
            Error::ConstantTermNotOne => write!(f, "P0(0) must equal 1"),
            Error::MultiplicativelyDependent => write!(f, "bases are multiplicatively dependent"),
            Error::InvalidExponents => write!(f, "k^a * l^b is not an integer >= 2"),
            Error::DegreeBoundOverflow => write!(f, "Cartier module element left its degree bound"),
            Error::PurelyPeriodicOrbit => write!(f, "orbit of a under x -> x^k is purely periodic"),
            Error::BaseMismatch => write!(f, "bases differ"),
            Error::BadPrime { p } => write!(f, "prime {p} divides a denominator"),
            Error::NotPrime { p } => write!(f, "{p} is not prime"),
            Error::FactorVanishes => write!(f, "a product factor is numerically zero"),
            Error::UnknownName(name) => write!(f, "unknown name `{name}`"),
            Error::VerificationFailed { index } => {
                write!(f, "equation residual is nonzero at index {index}")
            }
            Error::InvalidInput(msg) => write!(f, "{msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
