//! Error type shared by every stage of the toolkit.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad failure family, used to pick a process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Usage,
    Parse,
    Model,
    Numeric,
    Io,
}

impl Category {
    pub fn exit_code(self) -> i32 {
        match self {
            Category::Usage => 2,
            Category::Parse => 3,
            Category::Model => 4,
            Category::Numeric => 5,
            Category::Io => 6,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("singular matrix at frequency sample {sample} (condition estimate {condition:.3e})")]
    Singular { sample: usize, condition: f64 },

    #[error("total reflection at frequency sample {sample}: I - S is singular (open-circuit limit)")]
    TotalReflection { sample: usize },

    #[error("resonant singularity in cascade at frequency sample {sample} (condition estimate {condition:.3e})")]
    CascadeSingular { sample: usize, condition: f64 },

    #[error("model mismatch: {0}")]
    ModelMismatch(String),

    #[error("non-physical data: mode {mode} has Re(lambda) = {resistance:.6e} <= 0 at sample {sample}")]
    NonPhysical {
        mode: usize,
        sample: usize,
        resistance: f64,
    },

    #[error("no reactance zero-crossing in fit band [{lo}, {hi}]")]
    NoResonance { lo: f64, hi: f64 },

    #[error("RLC fit failed: {0}")]
    FitFailure(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("cyclic-prefix violation: {taps} taps exceed {subcarriers} sub-carriers")]
    CyclicPrefix { taps: usize, subcarriers: usize },

    #[error("correlation matrix not PSD: eigenvalue {0:.3e} below -1e-10")]
    NotPsd(f64),

    #[error("insufficient samples: M*p = {0} < 1")]
    InsufficientSamples(f64),

    #[error("ill-conditioned noise covariance: {0}")]
    IllConditioned(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("realization {index}: {source}")]
    Realization {
        index: u64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn category(&self) -> Category {
        match self {
            Error::Config(_) => Category::Usage,
            Error::Parse { .. } => Category::Parse,
            Error::InvalidDimension(_)
            | Error::ModelMismatch(_)
            | Error::NonPhysical { .. }
            | Error::NoResonance { .. }
            | Error::FitFailure(_)
            | Error::Domain(_)
            | Error::CyclicPrefix { .. }
            | Error::NotPsd(_) => Category::Model,
            Error::Singular { .. }
            | Error::TotalReflection { .. }
            | Error::CascadeSingular { .. }
            | Error::InsufficientSamples(_)
            | Error::IllConditioned(_) => Category::Numeric,
            Error::Realization { source, .. } => source.category(),
            Error::Io(_) => Category::Io,
        }
    }
}
