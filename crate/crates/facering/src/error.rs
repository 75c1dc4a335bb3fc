use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the specialization point")]
    PoleAtPoint,
    #[error("wrong characteristic: expected {expected}, found {found}")]
    WrongCharacteristic { expected: String, found: u64 },
    #[error("field has no distinguished variable")]
    NoDistinguishedVariable,
    #[error("{0:?} is not a face")]
    NotAFace(Vec<u32>),
    #[error("{0:?} is not an edge")]
    NotAnEdge(Vec<u32>),
    #[error("vertex sets intersect at {0:?}")]
    VertexClash(Vec<u32>),
    #[error("complex is not pure")]
    NotPure,
    #[error("complex is not a homology manifold with boundary")]
    NotAManifold,
    #[error("complex is not orientable")]
    NonOrientable,
    #[error("complex is not a connected pseudomanifold")]
    NotPseudomanifold,
    #[error("degree {degree}: computed dimension {found}, expected {expected}")]
    DimensionMismatch { degree: usize, expected: i64, found: usize },
    #[error("minor A_F({vertex:?}) vanishes on facet {facet:?}")]
    UnsatisfiedMinor { facet: Vec<u32>, vertex: Option<u32> },
    #[error("top degree is odd")]
    OddTopDegree,
    #[error("complex is not a homology sphere")]
    NotASphere,
    #[error("middle dimension {0} exceeds 2")]
    RankTooLarge(usize),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not a linear system of parameters")]
    NotLsop,
    #[error("computation budget exceeded: {0}")]
    BudgetExceeded(String),
}
