use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// The variants are grouped the way the command line reports them:
/// domain and validation problems are caller mistakes, while precision and
/// verification problems mean the computation itself could not certify a
/// result.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty prime table: limit {0} is below 2")]
    EmptyTable(u64),

    #[error("character validation failed at residues ({m}, {n}): {reason}")]
    Validation { m: u64, n: u64, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precision error: {0}")]
    Precision(String),

    #[error("|F| = {modulus:e} below threshold {threshold:e} on the boundary near s = {re}{im:+}i")]
    BoundaryZero {
        re: f64,
        im: f64,
        modulus: f64,
        threshold: f64,
    },

    #[error("argument tracking did not converge after {0} bisection levels")]
    NonConvergence(u32),

    #[error("partition bracketing failed at p = {prime}: {reason}")]
    Partition { prime: u64, reason: String },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("closed-form and numeric slopes disagree at theta = {theta}: {closed_form} vs {numeric}")]
    FormulaMismatch {
        theta: f64,
        closed_form: f64,
        numeric: f64,
    },

    #[error("angle solve failed: {0}")]
    Solve(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by invalid input rather than failed numerics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::EmptyTable(_) | Error::Validation { .. } | Error::Domain(_) | Error::Parse(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
