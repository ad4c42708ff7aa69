use thiserror::Error;

/// Largest accepted input magnitude.
pub const INPUT_CAP: u64 = 1 << 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no 2-adic order")]
    ZeroInput,
    #[error("{0} exceeds the input cap 2^62")]
    InputTooLarge(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus {0} must be odd and positive")]
    EvenModulus(u64),
    #[error("left operand of the residue relation must be nonzero")]
    ZeroResidueOperand,
    #[error("arithmetic overflow")]
    Overflow,

    #[error("form syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("form must have between 1 and 8 terms, got {0}")]
    Arity(usize),
    #[error("invalid constraint on variable {var}: {message}")]
    Constraint { var: usize, message: String },

    #[error("{n} = 4^{s}(8*{m}+7) is not a sum of three squares")]
    IneligibleNumber { n: u64, s: u32, m: u64 },
    #[error("scan bound {bound} exceeds the ceiling {ceiling}")]
    ResourceLimit { bound: u64, ceiling: u64 },
    #[error("coefficients {0:?} are not coprime")]
    NotPrimitive(Vec<u64>),
    #[error("criterion needs exactly three terms, got {0}")]
    TernaryRequired(usize),
    #[error("criteria apply to unconstrained forms only")]
    ConstrainedForm,
    #[error("no asymptotic criterion covers the pattern {0}")]
    UncoveredPattern(String),
    #[error("coefficient list is empty")]
    EmptyCoefficients,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_cap(n: u64) -> Result<u64> {
    if n > INPUT_CAP {
        Err(Error::InputTooLarge(n))
    } else {
        Ok(n)
    }
}
