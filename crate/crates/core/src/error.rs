use thiserror::Error;

/// Errors raised by torsionlab computations and file loaders.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("inadmissible shape or betti string: {0}")]
    Admissibility(String),
    #[error("complex is not acyclic (betti numbers {0:?})")]
    NotAcyclic(Vec<usize>),
    #[error("complex lies on the singular locus: det P_{0} = 0")]
    OnSigma(usize),
    #[error("eigenvalue {eigenvalue} lies too close to the splitting circle |z| = {radius}")]
    SplitTooClose { eigenvalue: String, radius: f64 },
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("sample point {0} is a zero or pole")]
    SingularSample(String),
    #[error("path could not be resolved between {0} and {1}")]
    PathResolution(String, String),
    #[error("matrix is not hyperbolic (|trace| = {0} <= 2)")]
    NotNct(i64),
    #[error("zero factor: det(id - (-1)^e rho(a)^-1) vanishes for orbit {0}")]
    ZeroFactor(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid file: {0}")]
    Format(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Input errors (malformed files, bad arguments) as opposed to
    /// mathematical failures on well-formed input.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Format(_) | Error::Io(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
