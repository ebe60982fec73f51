use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("quantum integer [{0}] is undefined for n <= 0")]
    NonPositiveQuantumInteger(i64),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("{dividend} is not divisible by {divisor} in Z[v, v^-1]")]
    DivisionNotExact { dividend: String, divisor: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("level mismatch: expected {expected}, found {found}")]
    LevelMismatch { expected: usize, found: usize },

    #[error("{mu} is not {lambda} plus the node {node}")]
    InvalidPair { lambda: String, mu: String, node: String },

    #[error("{0} is not a vertex of the crystal")]
    NotInCrystal(String),

    #[error("divided-power monomial for {label} has coefficient {coeff} at its label")]
    PeelingUnitriangularityViolated { label: String, coeff: String },

    #[error("no canonical basis vector computed for {offender} while reducing {label}")]
    MissingPredecessor { label: String, offender: String },

    #[error("circular dependency: reducing {label} needs {offender} and vice versa")]
    OrderViolation { label: String, offender: String },

    #[error("{0} appears in the relative expansion but is not in the e = infinity crystal")]
    NotInBInfinity(String),

    #[error("relative expansion of {0} did not terminate")]
    NonTermination(String),

    #[error("inconsistent triangular system at row {row}, column {col}")]
    InconsistentSystem { row: String, col: String },

    #[error("incompatible inputs: {0}")]
    Incompatible(String),

    #[error("r = {r} truncates nonzero parts; use r >= {suggested}")]
    RTooSmall { r: usize, suggested: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
