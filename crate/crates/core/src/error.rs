use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coordinate ({x}, {y}) is not finite")]
    NonFinite { x: f64, y: f64 },

    #[error("point ({x}, {y}) has modulus {modulus}, not on the unit circle")]
    NotOnUnitCircle { x: f64, y: f64, modulus: f64 },

    #[error("height {0} is outside the open interval (0, 1)")]
    HeightOutOfRange(f64),

    #[error("{name} = {value} is outside the domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("bisection bracket [{lo}, {hi}] has no sign change")]
    NoBracket { lo: f64, hi: f64 },

    #[error("bisection did not reach residual {tol} within {iterations} iterations")]
    NoConvergence { tol: f64, iterations: usize },

    #[error("invalid sampling plan: {0}")]
    InvalidPlan(String),

    #[error("sampling plan accepted no points of the region")]
    EmptySample,

    #[error("regions do not share a base point")]
    BaseMismatch,

    #[error("invalid figure: {0}")]
    InvalidFigure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, value: f64, domain: &'static str) -> Error {
    Error::Domain {
        name,
        value,
        domain,
    }
}
