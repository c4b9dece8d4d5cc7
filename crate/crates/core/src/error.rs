use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {0:?}: expected p/q in lowest terms with q > 0")]
pub struct ParseRationalError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
}

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("bimodule is over a {module_over}-dimensional algebra, expected {algebra}")]
    DimensionMismatch { algebra: usize, module_over: usize },
    #[error("grading has {got} degrees for a {expected}-dimensional space")]
    GradingLength { expected: usize, got: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("algebra is not a Lie algebra: {0}")]
    NotLie(String),
    #[error("bimodule axioms fail on {0} basis triples")]
    ModuleAxioms(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: duplicate product record ({left}, {right}, {result})")]
    Duplicate { line: usize, left: usize, right: usize, result: usize },
    #[error("dimension {0} exceeds the supported maximum of {max}", max = crate::catalog::MAX_FILE_DIM)]
    DimensionOverflow(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error("cochain degree {0} not supported (maximum {max})", max = crate::cochain::MAX_DEGREE)]
    DegreeTooHigh(usize),
    #[error("grading is not compatible with the bracket")]
    InvalidGrading,
    #[error("coboundary does not preserve the gradation: entry at ({row}, {col}) leaves degree {degree}")]
    GradationBroken { row: usize, col: usize, degree: i32 },
    #[error("block {block} is not a degree-{degree} block")]
    InvalidBlock { block: String, degree: i32 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Error)]
pub enum DerivationError {
    #[error("generators R_a, P_I and the G->I maps are linearly dependent (rank {rank} of {count})")]
    DependentGenerators { rank: usize, count: usize },
    #[error("matrix is {rows}x{cols}, expected {dim}x{dim}")]
    Shape { rows: usize, cols: usize, dim: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
