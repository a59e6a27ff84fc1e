use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "degenerate dimer: renormalized gap and coupling are both zero, mixing angle undefined"
    )]
    DegenerateDimer,

    #[error(
        "mode at {omega_k} cm^-1 is resonant with omega0 = {omega0} cm^-1; exclude or shift it"
    )]
    ResonantMode { omega_k: f64, omega0: f64 },

    #[error("step size {dt} fs exceeds the stability bound {max_dt} fs")]
    StepSize { dt: f64, max_dt: f64 },

    #[error("no interior minimum of 1/alpha found in |eta| in ({lo}, {hi}]")]
    NoMinimum { lo: f64, hi: f64 },

    #[error(
        "no positive real |eta| gives 1/alpha = {target}: the minimum of 1/alpha is {min_inverse_alpha} at |eta| = {eta_min}"
    )]
    NoSolution {
        target: f64,
        eta_min: f64,
        min_inverse_alpha: f64,
    },

    #[error("empty grid")]
    EmptyGrid,

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: String, reason: String },

    #[error("malformed mode list: {0}")]
    ModeList(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(field: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field: field.to_owned(),
            reason: reason.into(),
        }
    }
}
