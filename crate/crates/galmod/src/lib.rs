//! Batch driver for `galmod-core`: JSON in, tables or JSON out.
//!
//! Exit codes: 0 ok, 1 property failure, 2 parse/usage, 3 validation,
//! 4 degree precondition.

pub mod check;
pub mod commands;
pub mod input;
pub mod report;

use std::fmt;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_DEGREE: i32 = 4;

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "GALMOD_THREADS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse(String),
    Usage(String),
    Validation(String),
    Degree(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => EXIT_USAGE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Degree(_) => EXIT_DEGREE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::Degree(m) => write!(f, "degree precondition: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<galmod_core::Error> for CliError {
    fn from(e: galmod_core::Error) -> Self {
        match e {
            galmod_core::Error::DegreeTooSmall { .. } => CliError::Degree(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

/// Text for stdout plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    pub fn ok(text: String) -> Self {
        Self {
            text,
            code: EXIT_OK,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
}

/// Worker pool sized by `GALMOD_THREADS` when set.
pub fn worker_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let n: usize = raw.trim().parse().map_err(|_| {
            CliError::Usage(format!("{THREADS_ENV}={raw} is not a positive integer"))
        })?;
        if n == 0 {
            return Err(CliError::Usage(format!("{THREADS_ENV} must be positive")));
        }
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

pub(crate) fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
