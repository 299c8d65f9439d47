use thiserror::Error;

pub type Result<T, E = GroupError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid degree {0}")]
    InvalidDegree(usize),

    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("images do not form a bijection: {0}")]
    NotBijective(String),

    #[error("malformed cycle notation: {0}")]
    CycleSyntax(String),

    #[error("group order does not fit in 128 bits")]
    OrderOverflow,

    #[error("{what} cap exceeded: order {order} > {cap}")]
    CapExceeded {
        what: &'static str,
        order: u128,
        cap: u128,
    },

    #[error("not a subgroup of the ambient group")]
    NotSubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroups live in different ambient groups")]
    AmbientMismatch,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("not a {0}-group")]
    NotPGroup(u64),

    #[error("trivial group where a nontrivial one is required")]
    TrivialGroup,
}
