//! Reading formulas, premise lists, matrices and JSON files from flags.

use std::fs;
use std::path::Path;

use serde_json::Value;
use thiserror::Error;

use sentential::language::{parse, Formula, Notation, Signature};
use sentential::kripke::KripkeError;
use sentential::matrix::{builtin, Matrix, MatrixError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Failed(_) => 1,
            CliError::Budget(_) => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Budget(_) => "budget_exceeded",
            CliError::Failed(_) => "error",
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn lib_error(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

pub fn matrix_error(e: MatrixError) -> CliError {
    match e {
        MatrixError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        _ => CliError::Failed(e.to_string()),
    }
}

pub fn kripke_error(e: KripkeError) -> CliError {
    match e {
        KripkeError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        KripkeError::TooManyWorlds(_) => CliError::Usage(e.to_string()),
        _ => CliError::Failed(e.to_string()),
    }
}

pub fn formula(text: &str, notation: Notation) -> CliResult<Formula> {
    parse(text, &Signature::modal(), notation).map_err(|e| CliError::Usage(format!("cannot parse `{text}`: {e}")))
}

pub fn required<'a>(flag: &'a Option<String>, name: &str) -> CliResult<&'a str> {
    flag.as_deref().ok_or_else(|| CliError::Usage(format!("--{name} is required")))
}

/// A file of formulas (JSON array of strings, or one per line) or an inline
/// list separated by `;`.
pub fn premises(arg: Option<&str>, notation: Notation) -> CliResult<Vec<Formula>> {
    let Some(arg) = arg else { return Ok(Vec::new()) };
    let items: Vec<String> = if Path::new(arg).is_file() {
        let text = fs::read_to_string(arg).map_err(|e| CliError::Usage(format!("cannot read {arg}: {e}")))?;
        match serde_json::from_str::<Vec<String>>(&text) {
            Ok(list) => list,
            Err(_) => text.lines().map(str::to_string).collect(),
        }
    } else {
        arg.split(';').map(str::to_string).collect()
    };
    items.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).map(|s| formula(s, notation)).collect()
}

pub fn matrix(arg: &str) -> CliResult<Matrix> {
    if Path::new(arg).is_file() {
        Matrix::from_json(&json_file(arg)?).map_err(|e| CliError::Usage(format!("bad matrix file {arg}: {e}")))
    } else {
        builtin(arg).map_err(|e| CliError::Usage(e.to_string()))
    }
}

pub fn json_file(path: &str) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{path} is not JSON: {e}")))
}
