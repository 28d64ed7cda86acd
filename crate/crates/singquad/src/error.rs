use thiserror::Error;

/// Library-wide error type.
#[derive(Error, Debug)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Array shapes or grids do not conform.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A consistency check failed (e.g. imaginary residue of a real
    /// quantity exceeded its bound), signalling a construction bug.
    #[error("consistency check failed: {0}")]
    Consistency(String),

    /// Iterative solver did not reach the requested tolerance.
    #[error("solver did not converge: residual {residual:.3e} after {iterations} iterations")]
    NonConvergence { residual: f64, iterations: usize },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("adaptive quadrature failed: {0}")]
    Quadrature(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invalid file format: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
