use alloc::string::String;

/// Every failure the core can report.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("tensor degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("cannot parse scalar `{0}`")]
    ScalarParse(String),

    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("relation is not homogeneous of degree 2")]
    NotQuadratic,
    #[error("degree {requested} exceeds the configured bound {bound}")]
    BoundExceeded { requested: usize, bound: usize },

    #[error("relations cannot be oriented: elimination produced a constant")]
    NotOrientable,
    #[error("completion exceeded the cap of {cap} rules")]
    CompletionDiverged { cap: usize },
    #[error("element of degree {degree} exceeds the confluence bound {bound}")]
    DegreeExceedsConfluence { degree: usize, bound: usize },
    #[error("more than {cap} normal words")]
    InfiniteDimensional { cap: usize },
    #[error("rewriting system is not confluent far enough to multiply normal words")]
    NotConfluent,

    #[error("matrix homomorphism is not invertible")]
    NotInvertible,
    #[error("defining relation {0} does not map to zero")]
    RelationViolated(usize),
    #[error("scale factor is zero")]
    ZeroScale,
    #[error("element is not an idempotent")]
    NotIdempotent,
    #[error("semisimple but a module fails the Burnside test over K")]
    NotSplitOverK,

    #[error("compatibility condition of the Clifford map fails")]
    CompatibilityFailed,
    #[error("z is not central")]
    NotCentral,
    #[error("double Ore data invalid: {0}")]
    InvalidDoubleOre(String),
    #[error("dimension {found} differs from the predicted {expected}")]
    PbwDimensionMismatch { expected: usize, found: usize },
    #[error("p12/p11 do not fit this case")]
    WrongP,
    #[error("1 + p11^2/4 has no square root in K")]
    NotRepresentableInK,
    #[error("p11 = +-2i is degenerate")]
    DegenerateP11,

    #[error("graded basis of M2 is singular")]
    SingularBasis,
    #[error("not a twisting system: {0}")]
    NotTwistingSystem(String),
    #[error("psi is not balanced")]
    PsiNotBalanced,
    #[error("psi is not a bimodule map")]
    PsiNotBimodule,
    #[error("mu is not an involutive automorphism")]
    MuNotInvolution,

    #[error("isomorphism check failed: {0}")]
    IsoFailed(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = core::result::Result<T, Error>;
