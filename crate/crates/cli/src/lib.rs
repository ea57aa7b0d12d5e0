//! Command-line front end for `torsion-core` and the table-driven claim
//! verification harness.

pub mod claims;
pub mod commands;
pub mod harness;

use torsion_core::curve::{parse_curve_literal, EllipticCurve};
use torsion_core::arith::rational::Rational;
use torsion_core::families::{CurveDb, CURVE_DB_ENV};
use torsion_core::Error;

/// Exit status for runs where everything succeeded.
pub const EXIT_OK: i32 = 0;
/// Exit status when a computation or a claim failed.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for malformed command lines and unusable inputs.
pub const EXIT_USAGE: i32 = 2;

/// Errors surfaced by the CLI, split by exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::Singular
            | Error::InvalidInput(_)
            | Error::InvalidField(_)
            | Error::UnknownLabel(_)
            | Error::Inadmissible { .. }
            | Error::ReducibleCubic
            | Error::Database(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

/// Load the curve database: an explicit path wins over the environment
/// override, which wins over the shipped file.
pub fn load_db(path: Option<&std::path::Path>) -> Result<CurveDb, CliError> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Usage(format!("cannot read curve database {}: {e}", p.display())))?;
            Ok(CurveDb::parse(&text, &p.display().to_string())?)
        }
        None => CurveDb::from_env().map_err(|e| CliError::Usage(format!("{e} (from {CURVE_DB_ENV})"))),
    }
}

/// Whether a curve argument is a database label rather than a literal.
pub fn is_label(spec: &str) -> bool {
    !spec.trim_start().starts_with('[')
}

/// Resolve a curve argument: `[a1,a2,a3,a4,a6]`, `[A,B]`, or a label.
pub fn resolve_curve(spec: &str, db: &CurveDb) -> Result<EllipticCurve<Rational>, Error> {
    if is_label(spec) {
        Ok(db.get(spec.trim())?.curve.clone())
    } else {
        parse_curve_literal(spec)
    }
}
