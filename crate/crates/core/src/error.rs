use thiserror::Error;

/// Errors raised by poset construction, the verifiers and the report pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("relation contains a cycle through element {0}")]
    CycleDetected(usize),
    #[error("index {index} out of range for a poset of {len} elements")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("elements {0} and {1} are not comparable in the required direction")]
    NotComparable(usize, usize),
    #[error("poset has no top or no bottom element")]
    MissingBound,
    #[error("poset has no top element")]
    MissingTop,
    #[error("map is not an automorphism of the poset")]
    NotAutomorphism,
    #[error("map length {found} does not match poset size {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("matching is not a special partial matching: {0}")]
    NotAnSpm(String),
    #[error("orbit of element {0} has no unique {1}")]
    ExtremeNotUnique(usize, &'static str),
    #[error("claim {claim} violated: {detail}")]
    ClaimViolation { claim: u8, detail: String },
    #[error("inputs are equal")]
    EqualInputs,
    #[error("no covering index candidate for the given pair")]
    NoCandidate,
    #[error("cover ({0}, {1}) has no label")]
    MissingLabel(usize, usize),
    #[error("poset is not bounded")]
    NotBounded,
    #[error("poset is not graded")]
    NotGraded,
    #[error("interval ({x}, {y}) has {count} decreasing chains, expected exactly one")]
    NonUniqueDecreasing { x: usize, y: usize, count: usize },
    #[error("complex is not pure")]
    NotPure,
    #[error("dimension formulas disagree for n = {n}: closed form {closed}, rank difference {ranked}")]
    FormulaMismatch { n: usize, closed: i64, ranked: i64 },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable name used in error JSON and certificates.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::CycleDetected(_) => "CycleDetected",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotComparable(..) => "NotComparable",
            Error::MissingBound => "MissingBound",
            Error::MissingTop => "MissingTop",
            Error::NotAutomorphism => "NotAutomorphism",
            Error::SizeMismatch { .. } => "SizeMismatch",
            Error::NotAnSpm(_) => "NotAnSpm",
            Error::ExtremeNotUnique(..) => "ExtremeNotUnique",
            Error::ClaimViolation { .. } => "ClaimViolation",
            Error::EqualInputs => "EqualInputs",
            Error::NoCandidate => "NoCandidate",
            Error::MissingLabel(..) => "MissingLabel",
            Error::NotBounded => "NotBounded",
            Error::NotGraded => "NotGraded",
            Error::NonUniqueDecreasing { .. } => "NonUniqueDecreasing",
            Error::NotPure => "NotPure",
            Error::FormulaMismatch { .. } => "FormulaMismatch",
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::InvalidInput(_) => "InvalidInput",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::InvalidInput(e.to_string())
    }
}
