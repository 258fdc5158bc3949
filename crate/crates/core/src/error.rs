use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("multi-index has a negative entry")]
    NegativeEntry,
    #[error("variable X{0} does not occur in the word")]
    MarkedNotInWord(usize),
    #[error("invalid permutation of length {0}")]
    InvalidPermutation(usize),
    #[error("multi-index {0} is not a composition of the stated order")]
    NotInCompositionSet(String),
    #[error("generator kind does not match polynomial kind")]
    KindMismatch,
    #[error("index {index} out of range for {n} variables")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("operation needs at least two variables")]
    TooFewVariables,
    #[error("empty coefficient set")]
    EmptyCoefficients,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("product of an empty family of algebras")]
    EmptyProduct,
    #[error("degree precondition violated: {0}")]
    Degree(String),
}
