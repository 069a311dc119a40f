use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("terminal pairs {0} and {1} coincide")]
    DuplicatePair(usize, usize),
    #[error("terminal pair {0} has identical endpoints")]
    DegeneratePair(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not AT-free: ({0}, {1}, {2}) is an asteroidal triple")]
    NotATFree(usize, usize, usize),
    #[error("graph is not a tree")]
    NotATree,
    #[error("vertex sequence is not a cycle of the graph")]
    NotACycle,
    #[error("pairs {0} and {1} lie in the same component of the auxiliary graph")]
    SameComponent(usize, usize),
    #[error("interference graph is not a disjoint union of paths")]
    NotUnionOfPaths,
    #[error("no set of at most two terminals of component {0} covers its conflict vertices")]
    NoCover(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("instance has {n} vertices, above the exact-search limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error("pattern has {size} vertices, above the budget {budget}")]
    BudgetExceeded { size: usize, budget: usize },
    #[error("generator gave up after {0} attempts")]
    GenerationFailed(usize),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code for this error: 2 usage/parse, 3 precondition,
    /// 4 internal invariant violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::OutOfRange { .. } | Error::SelfLoop(_) => 2,
            Error::DuplicatePair(..)
            | Error::DegeneratePair(_)
            | Error::Disconnected
            | Error::NotATFree(..)
            | Error::NotATree
            | Error::NotACycle
            | Error::SameComponent(..)
            | Error::PreconditionViolated(_)
            | Error::TooLarge { .. }
            | Error::BudgetExceeded { .. }
            | Error::GenerationFailed(_) => 3,
            Error::NotUnionOfPaths | Error::NoCover(_) | Error::Internal(_) => 4,
        }
    }
}
