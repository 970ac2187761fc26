use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty permutation")]
    Empty,
    #[error("invalid token {0:?} in permutation")]
    InvalidToken(String),
    #[error("mixed notation: use either whitespace-separated values or a single digit string")]
    MixedFormat,
    #[error("not a permutation of 1..={n}: {reason}")]
    NotBijection { n: usize, reason: String },
    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },
    #[error("pair ({0}, {1}) is not of the form 1 <= i < j <= n")]
    InvalidPair(usize, usize),
    #[error("pair set is not the inversion set of any permutation")]
    NotInversionSet,
    #[error("interval [{lo}, {hi}] out of range for size {n}")]
    IntervalOutOfRange { lo: usize, hi: usize, n: usize },
    #[error("interval [{lo}, {hi}] is not a block")]
    NotABlock { lo: usize, hi: usize },
    #[error("a singleton block has no kind beyond the leaf convention")]
    SingletonBlock,
    #[error("empty vertex set")]
    EmptyVertexSet,
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("malformed substitution tree: {0}")]
    MalformedTree(String),
    #[error("inflation arity mismatch: skeleton of size {skeleton} with {parts} parts")]
    ArityMismatch { skeleton: usize, parts: usize },
    #[error("invalid decomposition choice: {0}")]
    InvalidChoice(String),
    #[error("choice yields a trivial decomposition (one part is the identity)")]
    TrivialChoice,
    #[error("not a valid inv-decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("parts do not partition the inversion set")]
    InvalidPartition,
    #[error("part index {index} out of range for {len} parts")]
    PartIndex { index: usize, len: usize },
    #[error("cannot merge a part with itself")]
    SamePart,
    #[error("adjacency of the identity to itself is undefined")]
    IdentityVertex,
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("decomposition count overflows u128")]
    CountOverflow,
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
