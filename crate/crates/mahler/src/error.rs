//! Crate-wide error type and the exit-code contract used by the CLI.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("P(x,x^{0}) is identically zero")]
    IdenticallyZeroCurve(u64),

    #[error("degenerate resultant: {0}")]
    DegenerateResultant(String),

    #[error("P and P* share a factor; factor the input and rerun per factor")]
    SharedFactor,

    #[error("leading y-coefficient vanishes at the requested point")]
    LeadingCoeffVanishes,

    #[error("partial dP/dy vanishes at the requested point (critical point)")]
    VanishingPartialY,

    #[error("point is not on the zero set of P (residual {0})")]
    NotOnCurve(String),

    #[error("root collision within separation margin near angle {0}")]
    RootCollision(f64),

    #[error("undetermined crossing order: Re(b_k) below tolerance for all k <= {0}")]
    UndeterminedOrder(u32),

    #[error("hypothesis violated: critical point on the unit circle ({0})")]
    HypothesisFailed(String),

    #[error("numerical non-convergence: {0}")]
    NonConvergence(String),

    #[error("sign cross-validation mismatch: {0}")]
    SignMismatch(String),

    #[error("missing variable in assignment: {0}")]
    MissingVariable(String),

    #[error("missing coefficient table entry (r={r}, class={class})")]
    MissingEntry { r: u32, class: u64 },

    #[error("delta_n below noise floor; cannot fit an exponent")]
    BelowNoiseFloor,

    #[error("invalid argument: {0}")]
    InvalidArg(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit code contract: 0 ok, 2 hypothesis failure, 3 degenerate input,
    /// 4 numerical non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::HypothesisFailed(_) => 2,
            Error::NonConvergence(_) => 4,
            Error::Parse { .. }
            | Error::ZeroPolynomial
            | Error::IdenticallyZeroCurve(_)
            | Error::DegenerateResultant(_)
            | Error::SharedFactor
            | Error::LeadingCoeffVanishes
            | Error::VanishingPartialY
            | Error::NotOnCurve(_)
            | Error::RootCollision(_)
            | Error::UndeterminedOrder(_)
            | Error::SignMismatch(_)
            | Error::MissingVariable(_)
            | Error::MissingEntry { .. }
            | Error::BelowNoiseFloor
            | Error::InvalidArg(_) => 3,
            Error::Io(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
