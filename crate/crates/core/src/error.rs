use alloc::string::String;

/// Errors raised anywhere in the crate.
///
/// Variants map one-to-one onto the CLI exit codes (parse, speed, domain,
/// constraint), so callers can classify without string matching.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown function `{name}` at position {pos}")]
    UnknownFunction { name: String, pos: usize },

    #[error("`{name}` takes {expected} argument(s), got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("curve is not unit-speed at s = {s}: measured speed {speed} (min {min_speed}, max {max_speed} over the request)")]
    NotUnitSpeed {
        s: f64,
        speed: f64,
        min_speed: f64,
        max_speed: f64,
    },

    #[error("empty parameter range: {0}")]
    EmptyRange(String),

    #[error("constraint violation: {0}")]
    Constraint(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("argument out of supported range: {0}")]
    Range(String),

    #[error("step must be positive, got {0}")]
    Step(f64),

    #[error("series did not converge: {0}")]
    Convergence(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for the three curve-text errors (syntax, unknown function, arity).
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. } | Error::UnknownFunction { .. } | Error::Arity { .. }
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
