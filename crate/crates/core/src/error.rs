use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input violated a precondition; `field` names the offending input.
    #[error("invalid argument `{field}`: {reason}")]
    Argument { field: &'static str, reason: String },

    /// A momentum class or index fell outside the lattice.
    #[error("momentum class {class} outside lattice [{n_min}, {n_max}]")]
    Range { class: i64, n_min: i64, n_max: i64 },

    /// Probability leaked past the lattice edges.
    #[error("lattice [{n_min}, {n_max}] too small: {leakage:e} probability leaked past the edges")]
    Truncation { leakage: f64, n_min: i64, n_max: i64 },

    /// The angle grid of the quadrature oracle cannot resolve the lattice.
    #[error("angle grid of {grid_points} points aliases a lattice of {lattice_size} sites (need >= {required})")]
    Aliasing {
        grid_points: usize,
        lattice_size: usize,
        required: usize,
    },

    #[error("step index {requested} exceeds the configured maximum {max}")]
    Size { requested: usize, max: usize },

    /// Values outside a function's mathematical domain (e.g. log of a nonpositive energy).
    #[error("domain error: {0}")]
    Domain(String),

    /// An ensemble member failed; carries the sample index and its quasimomentum.
    #[error("ensemble sample {index} (beta = {beta}) failed: {source}")]
    Sample {
        index: usize,
        beta: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn argument(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Argument {
            field,
            reason: reason.into(),
        }
    }

    /// The innermost error, looking through ensemble-sample wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Sample { source, .. } => source.root(),
            other => other,
        }
    }
}
