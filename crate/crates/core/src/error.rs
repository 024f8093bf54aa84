use thiserror::Error;

use crate::numerics::EnclosedValue;

/// Errors surfaced by input validation and by quadrature refinement limits.
#[derive(Debug, Error)]
pub enum Error {
    #[error("precision {got} bits is below the minimum of {min}")]
    PrecisionTooLow { got: u32, min: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("exponents must satisfy 1 <= l < s < m (with s finite): {0}")]
    ExponentOrder(String),

    #[error("sequences must share length and weights")]
    MismatchedSequences,

    #[error("s = {0} is too close to 1 for a rigorous tail bound")]
    TooCloseToOne(String),

    #[error("quadrature did not converge to the requested tolerance")]
    QuadratureNoConvergence { best: EnclosedValue },

    #[error("could not parse {0:?} as a number")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
