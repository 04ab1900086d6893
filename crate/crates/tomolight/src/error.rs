use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("required Fock cutoff {required} exceeds the hard maximum {max}")]
    CutoffOverflow { required: usize, max: usize },

    #[error("cat state with l={l}, h={h} has zero norm at |alpha|^2={abs_alpha_sq}")]
    DegenerateCat {
        l: usize,
        h: usize,
        abs_alpha_sq: f64,
    },

    #[error("vectors have different cutoffs ({left} vs {right})")]
    CutoffMismatch { left: usize, right: usize },

    #[error("tomogram value {min} is negative beyond tolerance")]
    NegativeTomogram { min: f64 },

    #[error("conditional probability {probability} at the measured quadrature is too small")]
    ZeroProbabilitySlice { probability: f64 },

    #[error("density integrates to {integral}, not 1")]
    NonNormalizedDensity { integral: f64 },

    #[error("density matrix has eigenvalue {min_eigenvalue} below tolerance")]
    NonPositiveDensity { min_eigenvalue: f64 },

    #[error("operation needs a pure two-mode state")]
    RequiresPureState,

    #[error("grid with {entries} entries exceeds the materialisation limit {limit}")]
    GridTooLarge { entries: usize, limit: usize },

    #[error("eigen-solver did not converge for a {dim}x{dim} matrix")]
    EigenFailure { dim: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// True for errors caused by invalid inputs rather than numerical breakdown.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::CutoffMismatch { .. }
                | Error::RequiresPureState
                | Error::GridTooLarge { .. }
                | Error::CutoffOverflow { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
