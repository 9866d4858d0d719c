use alloc::string::String;

use thiserror::Error;

/// Errors raised by graph construction and spectral analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph family `{family}` needs size >= {min}, got {got}")]
    InvalidSize {
        family: &'static str,
        min: usize,
        got: usize,
    },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph spec `file:{0}` cannot be built without a file loader")]
    NeedsLoader(String),
    #[error("matrix is not symmetric: |M[{row}][{col}] - M[{col}][{row}]| = {deviation:e}")]
    NotSymmetric { row: usize, col: usize, deviation: f64 },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimension must be in 1..={max}, got {got}")]
    BadDimension { got: usize, max: usize },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal {off:e})")]
    NotConverged { sweeps: usize, off: f64 },
    #[error("square-free part needs N >= 1")]
    ZeroInput,
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("p-adic norm of zero is undefined")]
    ZeroNorm,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("gcd of an all-zero list is undefined")]
    AllZero,
    #[error("H is not regular")]
    NotRegular,
    #[error("H is disconnected; closed forms need a connected regular H")]
    Disconnected,
    #[error("G must have at least {min} vertices, got {got}")]
    TooFewVertices { min: usize, got: usize },
    #[error("eigenvalue support is empty")]
    EmptySupport,
    #[error("vertices must be distinct")]
    SameVertex,
    #[error("decomposition dimension {got} does not match graph order {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
