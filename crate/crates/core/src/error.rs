use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("direct product of order {order} exceeds table limit {limit}")]
    OrderOverflow { order: u64, limit: u64 },
    #[error("{what}: {value} exceeds limit {limit}")]
    BoundExceeded { what: &'static str, value: u64, limit: u64 },
    #[error("search budget of {budget} nodes exhausted")]
    SearchBudgetExceeded { budget: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("ring axiom violated: {0}")]
    RingAxiomViolation(String),
    #[error("algebra axiom violated: {0}")]
    AlgebraAxiomViolation(String),
    #[error("algebra `{0}` has no multiplicative identity")]
    NotUnital(String),
    #[error("algebras are defined over different rings ({0} vs {1})")]
    RingMismatch(String, String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("no witness found within budget of {budget} candidates")]
    NotFound { budget: u64 },
    #[error("certificate has no positively weighted term")]
    EmptyPositivePart,
    #[error("{0} is not a perfect {1}-th power")]
    NotPerfectPower(String, u32),
    #[error("{1} does not divide {0}")]
    NonDivisible(String, String),
    #[error("group `{0}` is not abelian, of class two and exponent p, or of class two and exponent four")]
    UnsupportedClass(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn bound(what: &'static str, value: impl TryInto<u64>, limit: impl TryInto<u64>) -> Self {
        Error::BoundExceeded {
            what,
            value: value.try_into().unwrap_or(u64::MAX),
            limit: limit.try_into().unwrap_or(u64::MAX),
        }
    }
}
