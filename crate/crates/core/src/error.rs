use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("evaluation point {s_re}+{s_im}i is within {threshold:e} of a pole")]
    PoleProximity { s_re: f64, s_im: f64, threshold: f64 },

    #[error("cannot reach target accuracy {target:e} ({reason})")]
    AccuracyUnreachable { target: f64, reason: String },

    #[error("argument outside the supported domain: {0}")]
    DomainError(String),

    #[error("value would overflow at height t = {t}")]
    OverflowGuard { t: f64 },

    #[error("evaluation point is {distance:e} from the zero at gamma = {gamma}")]
    ZeroProximity { gamma: f64, distance: f64 },

    #[error("zero table covers [{have_lo}, {have_hi}] but [{need_lo}, {need_hi}] is required")]
    MissingZeroCoverage {
        need_lo: f64,
        need_hi: f64,
        have_lo: f64,
        have_hi: f64,
    },

    #[error("iteration did not converge: {0}")]
    NonConvergence(String),

    #[error("zero search on [{t_lo}, {t_hi}] is incomplete: found {found}, expected about {expected:.2}")]
    IncompleteSearch {
        t_lo: f64,
        t_hi: f64,
        found: usize,
        expected: f64,
    },

    #[error("parse error on line {line}: {message}")]
    ParseError { line: usize, message: String },

    #[error("ordinates not strictly increasing at line {line}")]
    OrderViolation { line: usize },

    #[error("ordinates failed validation: {ordinates:?}")]
    ValidationFailure { ordinates: Vec<f64> },

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("no witness prime in ({window_lo}, {window_hi}); max deviation seen {max_deviation}")]
    NoWitnessFound {
        window_lo: f64,
        window_hi: f64,
        max_deviation: f64,
    },

    #[error("prime range ({lo}, {hi}) is empty")]
    EmptyRange { lo: f64, hi: f64 },

    #[error("zero table is not complete on [{t_lo}, {t_hi}]")]
    IncompleteZeroTable { t_lo: f64, t_hi: f64 },

    #[error("evaluation failed: {0}")]
    EvaluationFailure(String),

    #[error("no zeros in the window [{lo}, {hi}]")]
    EmptyWindow { lo: f64, hi: f64 },

    #[error("quadrature error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    QuadratureFailure { estimate: f64, tolerance: f64 },

    #[error("no cached table for {0}")]
    CacheMiss(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable variant name, printed by the command-line front end.
    pub fn name(&self) -> &'static str {
        match self {
            Error::PoleProximity { .. } => "PoleProximity",
            Error::AccuracyUnreachable { .. } => "AccuracyUnreachable",
            Error::DomainError(_) => "DomainError",
            Error::OverflowGuard { .. } => "OverflowGuard",
            Error::ZeroProximity { .. } => "ZeroProximity",
            Error::MissingZeroCoverage { .. } => "MissingZeroCoverage",
            Error::NonConvergence(_) => "NonConvergence",
            Error::IncompleteSearch { .. } => "IncompleteSearch",
            Error::ParseError { .. } => "ParseError",
            Error::OrderViolation { .. } => "OrderViolation",
            Error::ValidationFailure { .. } => "ValidationFailure",
            Error::LimitExceeded(_) => "LimitExceeded",
            Error::NoWitnessFound { .. } => "NoWitnessFound",
            Error::EmptyRange { .. } => "EmptyRange",
            Error::IncompleteZeroTable { .. } => "IncompleteZeroTable",
            Error::EvaluationFailure(_) => "EvaluationFailure",
            Error::EmptyWindow { .. } => "EmptyWindow",
            Error::QuadratureFailure { .. } => "QuadratureFailure",
            Error::CacheMiss(_) => "CacheMiss",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
