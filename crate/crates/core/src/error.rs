use alloc::string::String;

/// Errors raised by the algorithmic core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires dimension {required}, got {found}")]
    UnsupportedDimension { required: usize, found: usize },

    #[error("degenerate simplex: vertices are affinely dependent")]
    DegenerateSimplex,

    #[error("point set is not in general position")]
    NotGeneralPosition,

    #[error("embedding has {points} points for {vertices} vertices")]
    EmbeddingMismatch { vertices: usize, points: usize },

    #[error("query point coincides with an input point")]
    CoincidentPoint,

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is not regular")]
    NotRegular,

    #[error("graph contains a 4-cycle")]
    HasQuadrilateral,

    #[error("generating set is not closed under inverses")]
    NotSymmetric,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("retry limit exceeded after {attempts} attempts")]
    RetryLimit { attempts: usize },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("sector search failed; best imbalance {best_imbalance}")]
    SearchFailed { best_imbalance: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
