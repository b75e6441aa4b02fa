use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported root system {family}{rank}")]
    UnsupportedRootSystem { family: char, rank: usize },

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("rank mismatch: expected {expected}, got {actual}")]
    RankMismatch { expected: usize, actual: usize },

    #[error("family mismatch: {0} vs {1}")]
    FamilyMismatch(char, char),

    #[error("target rank {target} is smaller than source rank {source_rank}")]
    RankDecrease { source_rank: usize, target: usize },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("central parameter t must be nonzero")]
    ZeroCentralParameter,

    #[error("index {index:?} exceeds cutoff {cutoff}")]
    IndexBeyondCutoff { index: Vec<usize>, cutoff: usize },

    #[error("cutoff {cutoff} too small: estimated truncation error {estimate:e}")]
    CutoffTooSmall { cutoff: usize, estimate: f64 },

    #[error("quadrature did not converge after order {order}: residual {residual:e}")]
    QuadratureNonconvergence { order: usize, residual: f64 },

    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkew(usize, usize),

    #[error("degenerate form: Pfaffian vanishes at the given point")]
    DegenerateForm,

    #[error("matrix exponential overflow: norm {0:e}")]
    ExpOverflow(f64),

    #[error("unknown table row `{0}`")]
    UnknownRow(String),

    #[error("unsupported construction: {0}")]
    UnsupportedConstruction(String),

    #[error("rows `{0}` and `{1}` belong to different families")]
    RowMismatch(String, String),

    #[error("unsupported symmetric pair: family {family}, {detail}")]
    UnsupportedPair { family: u8, detail: String },

    #[error("axis is not fixed by the isotropy group")]
    AxisNotFixed,

    #[error("degree {degree} exceeds basis cutoff {cutoff}")]
    DegreeBeyondCutoff { degree: usize, cutoff: usize },

    #[error("level {0} not present in ladder")]
    MissingLevel(usize),

    #[error("level order violated: {from} -> {to}")]
    LevelOrder { from: usize, to: usize },

    #[error("backend mismatch: {0} vs {1}")]
    BackendMismatch(String, String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
