use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("singular denominator: {0}")]
    Singularity(String),

    #[error("insufficient numerical resolution: {0}")]
    Resolution(String),

    #[error("perturbative model out of validity range: {0}")]
    ModelValidity(String),

    #[error("tomographically incomplete input set (smallest singular value {0:.3e})")]
    TomographicIncompleteness(f64),

    #[error("degenerate row {row}: computational-subspace weight {weight:.3e}")]
    DegenerateRow { row: usize, weight: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
