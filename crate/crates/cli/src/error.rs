use std::fmt;

use hyplab_core::Error;

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_STRUCTURE: i32 = 3;
pub const EXIT_INFEASIBLE: i32 = 4;
pub const EXIT_OTHER: i32 = 1;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }

    pub fn structure(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_STRUCTURE,
            message: message.into(),
        }
    }

    pub fn io(e: std::io::Error) -> Self {
        CliError {
            code: EXIT_OTHER,
            message: e.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Domain(_) | Error::Precondition(_) | Error::Index(_) | Error::Json(_) => EXIT_CONFIG,
            Error::Structure(_) | Error::Verification(_) => EXIT_STRUCTURE,
            Error::Infeasible(_) => EXIT_INFEASIBLE,
            Error::Quadrature(_) | Error::Solver(_) => EXIT_OTHER,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError {
            code: EXIT_OTHER,
            message: e.to_string(),
        }
    }
}
