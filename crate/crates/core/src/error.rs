//! Error taxonomy for the certification pipeline.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum CcError {
    #[error("interval division by an interval containing zero")]
    DivisionByZeroInterval,

    #[error("square root of an interval with negative lower bound {lo}")]
    NegativeDomain { lo: f64 },

    #[error("box touches a collision set (squared distance lower bound {dist_sq_lo} < {threshold})")]
    CollisionBox { dist_sq_lo: f64, threshold: f64 },

    #[error("midpoint Jacobian is numerically singular (condition estimate {cond:.3e})")]
    SingularMidpointJacobian { cond: f64 },

    #[error("Neumann series bound failed: ||I - C*A|| = {norm} >= 1")]
    NeumannBoundFails { norm: f64 },

    #[error("computed radius is not positive: r = {r}, eps = {eps}")]
    NonpositiveRadius { r: f64, eps: f64 },

    #[error("more than one certified solution box survived ({count}); proof fails")]
    MultipleCandidates { count: usize },

    #[error("all candidate boxes were refuted; no solution in the search region")]
    NoSolutionFound,

    #[error("bisection budget exhausted with undecided boxes remaining (depth {depth})")]
    BudgetExhausted { depth: usize },

    #[error("mass component out of range: {0}")]
    InvalidMass(String),

    #[error("journal is corrupt: {0}")]
    CorruptJournal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for CcError {
    fn from(e: std::io::Error) -> Self {
        CcError::Io(e.to_string())
    }
}
