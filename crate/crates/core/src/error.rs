use thiserror::Error;

/// Errors raised by graph construction, searches and solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a structure on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} has no loop; the structure is not reflexive")]
    NotReflexive(usize),
    #[error("vertices {0} and {1} are not joined; the structure is not complete")]
    NotComplete(usize, usize),
    #[error("matrix is not symmetric at ({0}, {1})")]
    AsymmetricMatrix(usize, usize),
    #[error("matrix row {row} has {len} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("invalid matrix entry {0:?}; expected \"0\", \"1\" or \"*\"")]
    InvalidEntry(String),
    #[error("graph has a loop at vertex {0} where none is allowed")]
    UnexpectedLoop(usize),
    #[error("{what} of size {size} exceeds the limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("arity must be at least {min}, got {got}")]
    Arity { got: usize, min: usize },
    #[error("{0} is not a prime")]
    NotPrime(usize),
    #[error("prime {p} must exceed the template size {n}")]
    PrimeTooSmall { p: usize, n: usize },
    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
    #[error("vertex {0} carries a *-loop")]
    StarLoop(usize),
    #[error("vertex set {0:?} is not homogeneous in the template")]
    NotHomogeneous(Vec<usize>),
    #[error("vertex set {0:?} is not an alternating component")]
    NotAlternatingComponent(Vec<usize>),
    #[error("vertex set must be nonempty")]
    EmptySet,
    #[error("{0}")]
    Precondition(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("template is NP-complete; pass the oracle flag to use exponential search")]
    Intractable,
    #[error("list restrictions on this non-decomposable template fall outside the known polynomial cases; oracle only")]
    OpenListRegime,
    #[error("list of vertex {vertex} mentions template vertex {value}, but the template has {n} vertices")]
    InvalidList {
        vertex: usize,
        value: usize,
        n: usize,
    },
    #[error("template has {0} vertices; list domains support at most 64")]
    TemplateTooLarge(usize),
    #[error("mandatory edge {0}-{1} is not allowed")]
    MandatoryNotAllowed(usize, usize),
    #[error("invalid graph code {0:?}")]
    InvalidCode(String),
    #[error("map is not a full homomorphism: {0}")]
    NotFullHom(String),
}

pub type Result<T> = std::result::Result<T, Error>;
