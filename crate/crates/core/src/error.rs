use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a tournament on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("pair {{{0}, {1}}} listed more than once")]
    DuplicatePair(usize, usize),
    #[error("pair {{{0}, {1}}} is not oriented")]
    MissingPair(usize, usize),
    #[error("tournament needs at least one vertex")]
    Empty,
    #[error("tournament too large: {0} vertices (limit {limit})", limit = crate::tournament::MAX_VERTICES)]
    TooLarge(usize),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex sets overlap at vertex {0}")]
    Overlap(usize),
    #[error("vertex set is empty")]
    EmptySet,

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("tournament is not strong: components of sizes {sizes:?}, the first dominating the rest")]
    NotStrong { sizes: Vec<usize> },
    #[error("cycle length {len} outside the range 3..={n}")]
    LengthOutOfRange { len: usize, n: usize },
    #[error("cycle is already Hamiltonian")]
    AlreadyHamiltonian,

    #[error("cycle of length {len} is too short: need at least {min}")]
    CycleTooShort { len: usize, min: usize },
    #[error("vertex {0} is not on the cycle")]
    NotOnCycle(usize),
    #[error("vertex {0} already lies on the cycle")]
    OnCycle(usize),
    #[error("vertex {0} dominates the cycle")]
    DominatesCycle(usize),
    #[error("vertex {0} is dominated by the cycle")]
    DominatedByCycle(usize),
    #[error("missing arc {0} -> {1}")]
    MissingArc(usize, usize),
    #[error("no listed vertex has low out-degree into the cycle")]
    NoLowVertex,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cycle enumeration exceeded the cap of {cap} cycles")]
    CapExceeded { cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
