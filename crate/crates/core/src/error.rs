use thiserror::Error;

pub type Result<T> = std::result::Result<T, SpliceError>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpliceError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("structural error at {location}: {message}")]
    Structure { location: String, message: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` is not a node")]
    NotANode(String),
    #[error("vertex `{0}` is not a leaf")]
    NotALeaf(String),
    #[error("`{0}`-`{1}` is not an internal edge")]
    NotInternal(String, String),
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generators must be positive")]
    NonPositiveGenerator,
    #[error("residue table of size {0} exceeds the supported limit")]
    TableTooLarge(String),
    #[error("semigroup condition fails at node `{node}` toward `{toward}`")]
    SemigroupCondition { node: String, toward: String },
    #[error("edge determinant condition fails on `{0}`-`{1}`")]
    DeterminantCondition(String, String),
    #[error("Hamm condition fails at {context}: vanishing minor on columns {columns:?}")]
    Hamm { context: String, columns: Vec<usize> },
    #[error("matrix has {rows} rows and {cols} columns; need rows <= columns")]
    MatrixShape { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("invalid coefficients: {0}")]
    Coefficients(String),
    #[error("invalid exponent choice: {0}")]
    Exponent(String),
    #[error("exponent {0} does not fit in 64 bits")]
    ExponentOverflow(String),
    #[error("empty interval ({lower}, {upper}) for the root decorations")]
    EmptyInterval { lower: String, upper: String },
    #[error("invalid adapted triple: {0}")]
    Triple(String),
    #[error("deformation coefficient for `{node}` equation {index} is zero")]
    ZeroCoefficient { node: String, index: usize },
    #[error("ray is not in the support of the fan")]
    OutsideSupport,
    #[error("cone index {0} out of range")]
    ConeIndex(usize),
    #[error("zero vector cannot generate a ray")]
    ZeroRay,
    #[error("invalid document: {0}")]
    Document(String),
}

impl SpliceError {
    pub(crate) fn structure(location: impl Into<String>, message: impl Into<String>) -> Self {
        SpliceError::Structure {
            location: location.into(),
            message: message.into(),
        }
    }
}
