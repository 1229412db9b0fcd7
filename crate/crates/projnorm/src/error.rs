use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by a jet with zero constant term")]
    DivisionByZeroValue,
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("requested derivative order {requested} exceeds jet order {order}")]
    OrderExceeded { requested: usize, order: usize },
    #[error("jet order or scalar kind mismatch ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("metric is singular at the evaluation point")]
    SingularMetric,
    #[error("Liouville section is degenerate at the evaluation point")]
    DegenerateSection,
    #[error("Jacobian of the map is singular")]
    SingularJacobian,
    #[error("point ({x}, {y}) outside the domain")]
    OutOfDomain { x: f64, y: f64 },
    #[error("combination is degenerate at the evaluation point")]
    DegenerateCombination,
    #[error("sampled basis is rank deficient (rank {rank} < {expected})")]
    RankDeficientBasis { rank: usize, expected: usize },
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("value {0} is a pole of the map")]
    PoleOfMap(f64),
    #[error("origin is excluded")]
    OriginExcluded,
    #[error("integration path crosses a branch point")]
    BranchCrossing,
    #[error("adaptive quadrature failed to reach tolerance")]
    QuadratureFailure,
    #[error("unknown map '{0}'")]
    UnknownMap(String),
    #[error("flow leaves the domain window")]
    DomainWindowExceeded,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
