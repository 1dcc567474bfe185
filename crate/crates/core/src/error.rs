use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cartan matrix must be square with one row per node: {0}")]
    Shape(String),
    #[error("duplicate node identifier {0:?}")]
    DuplicateNode(String),
    #[error("diagonal entry a[{node}][{node}] = {value}, expected 2")]
    Diagonal { node: String, value: i64 },
    #[error("positive off-diagonal entry a[{row}][{col}] = {value}")]
    PositiveOffDiagonal { row: String, col: String, value: i64 },
    #[error("a[{row}][{col}] = 0 but a[{col}][{row}] = {value}")]
    ZeroAsymmetry { row: String, col: String, value: i64 },
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("partner map is not an involution on K: {0}")]
    NotInvolution(String),
    #[error("gluing is inconsistent: a[{0}][{1}] != a[{2}][{3}]")]
    InconsistentGluing(String, String, String, String),
    #[error("element cap of {cap} exceeded while {context}")]
    CapExceeded { cap: usize, context: String },
    #[error("parabolic subgroup on {{{0}}} is not finite")]
    ParabolicNotFinite(String),
    #[error("not a real root: {0}")]
    NotARealRoot(String),
    #[error("matrix is not a group element: {0}")]
    CorruptElement(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("reflection order validation failed after {attempts} attempts: {detail}")]
    ReflectionOrder { attempts: usize, detail: String },
    #[error("chain cap of {cap} exceeded in interval {interval}")]
    ChainCapExceeded { cap: usize, interval: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Whether the failure came from an enumeration or chain cap rather than
    /// from bad input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::ChainCapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
