use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A register label was used twice.
    #[error("duplicate subsystem label '{0}'")]
    DuplicateLabel(String),

    /// A label was requested that the register does not contain.
    #[error("unknown subsystem label '{0}'")]
    UnknownLabel(String),

    /// A subsystem dimension outside the supported set was requested.
    #[error("unsupported local dimension {0}, only 2 and 3 are supported")]
    UnsupportedDimension(usize),

    /// Vector or matrix size does not match the register layout.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// An amplitude collection failed its normalization check.
    #[error("state not normalized: |norm - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    /// A matrix expected to be Hermitian was not.
    #[error("matrix not Hermitian: max |m - m^dag| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    /// A density matrix trace strayed from one.
    #[error("trace not unity: |tr - 1| = {deviation:.3e}")]
    TraceNotUnit { deviation: f64 },

    /// A density matrix had a significantly negative eigenvalue.
    #[error("matrix not positive semidefinite: min eigenvalue = {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    /// A collection of vectors failed an orthonormality check.
    #[error("basis not orthonormal: max deviation {deviation:.3e}")]
    NotOrthonormal { deviation: f64 },

    /// A basis does not span the space it must resolve.
    #[error("basis incomplete: {got} vectors for dimension {need}")]
    IncompleteBasis { got: usize, need: usize },

    /// A state left the subspace an operation is defined on.
    #[error("state outside supported span: residual norm {residual:.3e}")]
    SpanViolation { residual: f64 },

    /// A bipartite cut kept everything or nothing.
    #[error("trivial cut: one side of the partition is empty")]
    TrivialCut,

    /// Operation input outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Problem size beyond what the numerical routines accept.
    #[error("dimension {0} too large, limit is {1}")]
    TooLarge(usize, usize),

    /// Iterative search stopped on its iteration cap before converging.
    #[error("optimizer did not converge within {0} sweeps")]
    NoConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
