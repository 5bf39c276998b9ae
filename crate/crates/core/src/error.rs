use thiserror::Error;

/// Errors raised by the algebra kernels and engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("evaluation point lies on a pole of the rational function")]
    PoleAtPoint,
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("coupling mismatch: `{0}` vs `{1}`")]
    CouplingMismatch(String, String),
    #[error("series constant term must be 1")]
    BadConstantTerm,
    #[error("series constant term must be 0")]
    NonzeroConstantTerm,
    #[error("star product does not terminate: {0}")]
    NonTerminating(String),
    #[error("exponent mixes x and p; check the series order by order instead")]
    MixedExponent,
    #[error("exponent has (x,p)-degree above 2")]
    ExponentNotQuadratic,
    #[error("perturbative system is inconsistent at order {order}")]
    UnsolvableOrder { order: usize },
    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),
    #[error("linear system is rank deficient (rank {rank} < {needed})")]
    RankDeficient { rank: usize, needed: usize },
    #[error("linear system is inconsistent (residual {0:e})")]
    Inconsistent(f64),
    #[error("exact linear system has no solution")]
    NoExactSolution,
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
