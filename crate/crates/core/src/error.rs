use thiserror::Error;

/// Errors raised by field construction, function analysis and the
/// construction builders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {0} out of range 1..=20")]
    DegreeOutOfRange(u32),
    #[error("modulus {0:#x} does not have degree {1}")]
    WrongModulusDegree(u64, u32),
    #[error("not irreducible: modulus {0:#x}")]
    NotIrreducible(u64),
    #[error("not primitive: modulus {0:#x}")]
    NotPrimitive(u64),
    #[error("zero inverse")]
    ZeroInverse,
    #[error("{0} does not divide {1}")]
    NotDivisor(u64, u64),
    #[error("field of degree {0} is not a quadratic extension")]
    OddDegree(u32),
    #[error("precondition violated: Tr(b/a^2) != 0 or a, b not both nonzero")]
    LemmaPrecondition,
    #[error("zero has index ∞")]
    ZeroIndex,
    #[error("not bent")]
    NotBent,
    #[error("mixed criterion inapplicable: exponent {0} is neither 0 nor a power of two mod q-1")]
    MixedInapplicable(u64),
    #[error("not Dillon type: {0}")]
    NotDillonType(String),
    #[error("coverage condition fails")]
    CoverageFails,
    #[error("1/d undefined: index {0} is even")]
    EvenIndex(u64),
    #[error("not Dillon/Niho pure: exponent {0}")]
    NotPureShape(u64),
    #[error("expansion exceeds cap of {0} terms")]
    ExpansionCap(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
