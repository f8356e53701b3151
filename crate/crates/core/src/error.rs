use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set size {0} exceeds the supported maximum of {max}", max = crate::kset::MAX_N)]
    GroundSetTooLarge(usize),
    #[error("element {elem} is outside the ground set [1, {n}]")]
    ElementOutOfRange { elem: usize, n: usize },
    #[error("member has {found} elements, expected {expected}")]
    WrongCardinality { expected: usize, found: usize },
    #[error("duplicate member {0:?}")]
    Duplicate(Vec<usize>),
    #[error("member {0:?} is not strictly increasing")]
    NotIncreasing(Vec<usize>),
    #[error("families live on different ground sets ({0} vs {1})")]
    MismatchedGroundSets(usize, usize),
    #[error("family is not intersecting")]
    NotIntersecting,
    #[error("operation undefined on the empty family")]
    EmptyFamily,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot parse rational {0:?}: expected p/q")]
    RationalParse(String),
    #[error("instance too large for exhaustive search: {0}")]
    GuardExceeded(String),
    #[error("node budget of {0} exhausted")]
    BudgetExceeded(u64),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
