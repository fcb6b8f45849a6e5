use thiserror::Error;

/// Errors for torsion computations and the algebra underneath them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("group ring modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("representation is incompatible with Z[Z_{modulus}]: {reason}")]
    IncompatibleRepresentation { modulus: u64, reason: String },

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("torsion class ambiguity descriptors differ")]
    AmbiguityMismatch,

    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),

    #[error("boundary squared is nonzero at degree {degree}")]
    BoundarySquared { degree: usize },

    #[error("matrix dimension mismatch at degree {degree}: {detail}")]
    DimensionMismatch { degree: usize, detail: String },

    #[error("complex is not acyclic (homology in degree {degree}) and no homology basis was supplied")]
    NonAcyclic { degree: usize },

    #[error("homology basis invalid in degree {degree}: {reason}")]
    BadHomologyBasis { degree: usize, reason: String },

    #[error("sequence of complexes is not exact: {0}")]
    NotExact(String),

    #[error("invalid lens space parameters: {0}")]
    InvalidLens(String),

    #[error("no admissible witness m exists")]
    NoWitness,

    #[error("hurwitz zeta has a pole at s = 1")]
    ZetaPole,

    #[error("flat circle bundle with trivial holonomy is not acyclic")]
    TrivialHolonomy,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cross-check disagreement: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
