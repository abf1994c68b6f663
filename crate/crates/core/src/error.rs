use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. Variant names are stable and are
/// surfaced verbatim by the command-line tool.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not unit upper-triangular")]
    NotUnitUpperTriangular,
    #[error("vector is not a root: I0(a,a) = {0}, expected 2")]
    NotARoot(String),
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("polynomial is not a product of cyclotomic polynomials")]
    NotQuasiunipotent,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("eigenvalue -1 has odd multiplicity {0}")]
    OddMinusOneMultiplicity(u32),
    #[error("root 1 has odd multiplicity {0}")]
    OddUnitMultiplicity(u32),
    #[error("form is not positive (semi)definite")]
    NotSemidefinite,
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("form is not positive semidefinite with nontrivial radical")]
    NotSemidefiniteDegenerate,
    #[error("Coxeter-Dynkin diagram is not connected")]
    Disconnected,
    #[error("not a root lattice: rank {rank}, determinant {det}")]
    NotARootLattice { rank: usize, det: String },
    #[error("no conjugacy class of quasi-Coxeter elements matches characteristic polynomial {0}")]
    UnknownClass(String),
    #[error("no row of the trace table matches: {0}")]
    NoRowMatches(String),
    #[error("variance inequality holds but no tubular row matches: {0}")]
    VarianceHoldsButNoRow(String),
    #[error("polynomial is not palindromic for b = {0}")]
    NotPalindromic(u8),
    #[error("b = 2 requires a root at 1")]
    MissingRootAtOne,
    #[error("spectrum symmetry violated: {0}")]
    SymmetryViolated(String),
    #[error("exact division failed: {0}")]
    InexactDivision(String),
    #[error("invalid chain exponents: {0}")]
    InvalidExponents(String),
    #[error("weight {0} outside (0, 1/2]")]
    WeightOutOfRange(String),
    #[error("nu must not be a non-positive integer (got {0})")]
    NonpositiveIntegerNu(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotSquare { .. } => "NotSquare",
            Error::NotSymmetric => "NotSymmetric",
            Error::NotUnitUpperTriangular => "NotUnitUpperTriangular",
            Error::NotARoot(_) => "NotARoot",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotQuasiunipotent => "NotQuasiunipotent",
            Error::NotMonic => "NotMonic",
            Error::OddMinusOneMultiplicity(_) => "OddMinusOneMultiplicity",
            Error::OddUnitMultiplicity(_) => "OddUnitMultiplicity",
            Error::NotSemidefinite => "NotSemidefinite",
            Error::NotPositiveDefinite => "NotPositiveDefinite",
            Error::NotSemidefiniteDegenerate => "NotSemidefiniteDegenerate",
            Error::Disconnected => "Disconnected",
            Error::NotARootLattice { .. } => "NotARootLattice",
            Error::UnknownClass(_) => "UnknownClass",
            Error::NoRowMatches(_) => "NoRowMatches",
            Error::VarianceHoldsButNoRow(_) => "VarianceHoldsButNoRow",
            Error::NotPalindromic(_) => "NotPalindromic",
            Error::MissingRootAtOne => "MissingRootAtOne",
            Error::SymmetryViolated(_) => "SymmetryViolated",
            Error::InexactDivision(_) => "InexactDivision",
            Error::InvalidExponents(_) => "InvalidExponents",
            Error::WeightOutOfRange(_) => "WeightOutOfRange",
            Error::NonpositiveIntegerNu(_) => "NonpositiveIntegerNu",
            Error::Precondition(_) => "Precondition",
            Error::Parse(_) => "Parse",
            Error::Internal(_) => "Internal",
        }
    }
}
