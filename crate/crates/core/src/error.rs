use thiserror::Error;

/// Errors raised by the library. The variant name doubles as the stable
/// error identifier printed by the command-line tool.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for type {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("stability vector and root-lattice vector belong to different root systems")]
    MismatchedRootSystem,
    #[error("character multiplicity {value} is not within 1e-6 of an integer")]
    RoundingFailure { value: f64 },
    #[error("no vertex matching between the McKay graph and the affine diagram")]
    NoIsomorphism,
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("point {0} has a nontrivial stabilizer")]
    NonFreeOrbit(String),
    #[error("points {0} and {1} lie in the same orbit")]
    DuplicateOrbit(String, String),
    #[error("unsupported Dynkin type {0}")]
    UnsupportedType(String),
    #[error("more than one summand carries the framing vertex")]
    MultipleFramings,
    #[error("empty input")]
    EmptyInput,
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("stability context is not a multiple of delta: {0}")]
    ContextMismatch(String),
    #[error("vertex subset must contain 0: {0}")]
    BadSubset(String),
    #[error("hyperplane {0} contains the slice plane")]
    DegeneratePlane(String),
    #[error("module of total dimension {dim} exceeds the lattice cap {cap} over F_{p}")]
    LatticeTooLarge { dim: usize, cap: usize, p: u32 },
    #[error("module has no framing vertex")]
    NoFraming,
    #[error("representation violates the preprojective relations")]
    NotAModule,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Variant name, e.g. `"InvalidRank"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidRank { .. } => "InvalidRank",
            Error::MismatchedRootSystem => "MismatchedRootSystem",
            Error::RoundingFailure { .. } => "RoundingFailure",
            Error::NoIsomorphism => "NoIsomorphism",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NonFreeOrbit(_) => "NonFreeOrbit",
            Error::DuplicateOrbit(..) => "DuplicateOrbit",
            Error::UnsupportedType(_) => "UnsupportedType",
            Error::MultipleFramings => "MultipleFramings",
            Error::EmptyInput => "EmptyInput",
            Error::IndexMismatch(_) => "IndexMismatch",
            Error::ContextMismatch(_) => "ContextMismatch",
            Error::BadSubset(_) => "BadSubset",
            Error::DegeneratePlane(_) => "DegeneratePlane",
            Error::LatticeTooLarge { .. } => "LatticeTooLarge",
            Error::NoFraming => "NoFraming",
            Error::NotAModule => "NotAModule",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
