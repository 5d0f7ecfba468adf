use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier must contain at least one point")]
    EmptyCarrier,
    #[error("carrier of {0} points exceeds the cap of {max}", max = crate::bits::MAX_POINTS)]
    CarrierTooLarge(usize),
    #[error("subset {subset:#x} has points outside a carrier of {n} points")]
    SubsetOutOfRange { n: usize, subset: u32 },
    #[error("point {point} is outside a carrier of {n} points")]
    PointOutOfRange { n: usize, point: usize },
    #[error("family of opens is not closed under union and intersection (missing {missing:#x})")]
    NotLatticeClosed { missing: u32 },
    #[error("relation row {0} does not contain its own point")]
    MissingDiagonal(usize),
    #[error("carrier sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("dyadic value {num}/2^{exp} is out of range")]
    OutOfRange { num: u64, exp: u32 },
    #[error("expansion indices must be strictly increasing positive integers below 63")]
    NotIncreasing,
    #[error("list must not be empty")]
    EmptyList,
    #[error("members {0} and {1} violate the intersection axiom")]
    AxiomU1Violated(usize, usize),
    #[error("member {0} has no halving member")]
    AxiomU2Violated(usize),
    #[error("target entourage contains no member of the base")]
    TargetNotInUniformity,
    #[error("no member V satisfies V∘V ⊆ W for the current link")]
    NoHalving,
    #[error("chain of length {0} is too long for exact grid evaluation")]
    ChainTooLong(usize),
    #[error("set must not be empty")]
    EmptySet,
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit law fails at {0}")]
    UnitLawFails(usize),
    #[error("multiplication is discontinuous at ({0}, {1})")]
    MultiplicationDiscontinuous(usize, usize),
    #[error("Cayley table must be {0}x{0} with entries below {0}")]
    BadTable(usize),
    #[error("the unit does not support this construction: {0}")]
    UnitKindUnsupported(String),
    #[error("not a base: {0}")]
    NotABase(String),
    #[error("not a group: element {0} has no inverse")]
    NotAGroup(usize),
    #[error("enumeration is limited to 1..={max} points, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("predicate error: {0}")]
    Predicate(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
