use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree {degree} outside stored range {lo}..={hi}")]
    DegreeOutOfRange { degree: i64, lo: i64, hi: i64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("differential does not square to zero in degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("not a chain map in degree {degree}: basis element {witness} violates f∘d = d∘f")]
    NotAChainMap { degree: i64, witness: String },
    #[error("unknown simplex {0:?}")]
    UnknownSimplex(String),
    #[error("index {index} out of range for a simplex of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("simplicial identity d_{i} d_{j} = d_{j_minus_1} d_{i} fails on {simplex}", j_minus_1 = .j - 1)]
    SimplicialIdentity { i: usize, j: usize, simplex: String },
    #[error("malformed simplicial set: {0}")]
    Malformed(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("coalgebra is not connected: degree 0 has {0} basis elements")]
    NotConnected(usize),
    #[error("expected a single vertex, found {0}")]
    NotOneVertex(usize),
    #[error("reduced coproduct did not vanish within {0} iterations")]
    TruncationExceeded(usize),
    #[error("module violation: {0}")]
    ModuleViolation(String),
    #[error("module and coalgebra do not match: {0}")]
    Mismatch(String),
    #[error("endpoints do not match: {0}")]
    EndpointMismatch(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("element is not in the kernel of the comparison map")]
    NotInKernel,
    #[error("map is not a strict module map: {0}")]
    NotStrict(String),
    #[error("matrix is singular")]
    Singular,
    #[error("window too small: {0}")]
    Window(String),
    #[error("schema violation at {pointer}: {message}")]
    Schema { pointer: String, message: String },
}
