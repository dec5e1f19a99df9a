use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("profile breakpoints underflow at depth {depth}")]
    DepthUnderflow { depth: usize },

    #[error("empty sweep grid: eps_lo={eps_lo}, eps_hi={eps_hi}")]
    EmptyGrid { eps_lo: f64, eps_hi: f64 },

    #[error("profile is not self-similar with ratio {ratio}")]
    NotSelfSimilar { ratio: f64 },

    #[error("degenerate lambda grid for beta={beta}")]
    DegenerateGrid { beta: f64 },

    #[error("no feasible fan size below pi - {beta_step}")]
    InfeasibleScan { beta_step: f64 },

    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("solver did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged {
        iterations: usize,
        residual: f64,
        history: Vec<f64>,
    },

    #[error("linear solve failed: {0}")]
    LinearSolve(String),

    #[error("incompatible Neumann data: flux imbalance {imbalance:e}")]
    IncompatibleData { imbalance: f64 },

    #[error("field is not converged")]
    Unconverged,

    #[error("fan structure could not be classified: {0}")]
    Unclassified(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
