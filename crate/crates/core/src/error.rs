use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("{poly} is reducible{}", factor.as_ref().map(|f| format!(" (factor {f})")).unwrap_or_default())]
    Reducible { poly: String, factor: Option<String> },
    #[error("precision-indeterminate divisor")]
    IndeterminateDivisor,
    #[error("insufficient precision: threshold {threshold} exceeds known precision {known_to}")]
    InsufficientPrecision { threshold: i64, known_to: i64 },
    #[error("context mismatch")]
    ContextMismatch,
    #[error("constant polynomial: geometric series does not converge")]
    ConstantPolynomial,
    #[error("not a root of the prime")]
    NotARoot,
    #[error("exponential terms do not decay within {depth} coefficients; increase exp_cache depth")]
    ExpNoDecay { depth: usize },
    #[error("singular system: working precision exhausted")]
    SingularSystem,
    #[error("analytic noise floor {floor} too low for threshold {threshold}; raise degree bound")]
    NoiseFloor { floor: i64, threshold: i64 },
    #[error("not separating: u'(t) = 0")]
    NotSeparating,
    #[error("leading coefficient is zero to precision")]
    DegenerateLeading,
    #[error("precision insufficient for rank decision")]
    RankIndeterminate,
    #[error("config: {0}")]
    Config(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Errors that mean "the working precision cannot decide this".
    pub fn is_precision(&self) -> bool {
        matches!(
            self,
            Error::InsufficientPrecision { .. }
                | Error::IndeterminateDivisor
                | Error::ExpNoDecay { .. }
                | Error::SingularSystem
                | Error::NoiseFloor { .. }
                | Error::DegenerateLeading
                | Error::RankIndeterminate
        )
    }
}
