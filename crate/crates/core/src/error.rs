use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("group of order {order} exceeds the closure cap {cap}")]
    ClosureCapExceeded { order: usize, cap: usize },
    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("central product needs cyclic centers of equal order (got {left} and {right})")]
    CentralProductMismatch { left: String, right: String },
    #[error("subgroups belong to different parent groups")]
    ParentMismatch,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("bottom is not contained in top")]
    NotNested,
    #[error("node set is not closed under join and meet")]
    NotClosed,
    #[error("group order {0} is not a prime power")]
    NotPrimePower(usize),
    #[error("group is trivial")]
    TrivialGroup,
    #[error("factor orders are not pairwise coprime: {0}")]
    CoprimalityViolated(String),
    #[error("factor condition violated: {0}")]
    ConditionViolated(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

/// Coarse error classes, used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Cap,
    Precondition,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Parse => 2,
            ErrorClass::Cap => 3,
            ErrorClass::Precondition => 4,
        }
    }
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse { .. } | Error::Range(_) | Error::InvalidPermutation(_) => ErrorClass::Parse,
            Error::ClosureCapExceeded { .. } | Error::OrderCapExceeded { .. } | Error::UnsupportedParameter(_) => {
                ErrorClass::Cap
            }
            _ => ErrorClass::Precondition,
        }
    }
}
