use thiserror::Error;

/// Error type shared by the whole pipeline.
#[derive(Debug, Error)]
pub enum CxrError {
    /// Tensor shapes do not match what an operation requires.
    #[error("shape error: {0}")]
    Shape(String),

    /// A hyperparameter or configuration value is out of its documented range.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Input data violates a documented precondition (e.g. mask outside [0,1]).
    #[error("validation error: {0}")]
    Validation(String),

    /// A file is not in the expected on-disk format.
    #[error("format error: {0}")]
    Format(String),

    /// Training or inference produced non-finite values.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Masked pooling was asked to average over zero included positions.
    #[error("empty pooling region")]
    EmptyPoolingRegion,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CxrError>;

impl CxrError {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            CxrError::Shape(_)
            | CxrError::Validation(_)
            | CxrError::Format(_)
            | CxrError::Io(_)
            | CxrError::EmptyPoolingRegion => 3,
            CxrError::Parameter(_) => 2,
            CxrError::Numerical(_) => 4,
        }
    }
}
