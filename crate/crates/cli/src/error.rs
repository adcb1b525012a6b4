use std::fmt;

use serde::Serialize;
use thiserror::Error;

use phasefuse::Error as CoreError;

/// Machine-readable error category reported on failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Category {
    UsageError,
    LoadError,
    DimensionMismatch,
    MethodError,
    IoFailure,
    InternalError,
}

impl Category {
    pub fn exit_code(self) -> i32 {
        match self {
            Category::UsageError => 1,
            Category::LoadError | Category::DimensionMismatch | Category::MethodError | Category::IoFailure => 2,
            Category::InternalError => 3,
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Error)]
#[error("{category}: {message}")]
pub struct CliError {
    pub category: Category,
    pub message: String,
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn new(category: Category, message: impl Into<String>) -> Self {
        Self { category, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(Category::UsageError, message)
    }

    pub fn exit_code(&self) -> i32 {
        self.category.exit_code()
    }

    /// Error raised while reading an input image.
    pub fn load(err: CoreError) -> Self {
        Self::new(Category::LoadError, err.to_string())
    }

    /// Error raised while writing an output file.
    pub fn save(err: CoreError) -> Self {
        let category = match err {
            CoreError::UnsupportedFormat(_) => Category::UsageError,
            CoreError::Io(_) => Category::IoFailure,
            _ => Category::MethodError,
        };
        Self::new(category, err.to_string())
    }

    pub fn io(err: std::io::Error) -> Self {
        Self::new(Category::IoFailure, err.to_string())
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        let category = match err {
            CoreError::DimensionMismatch(..) => Category::DimensionMismatch,
            CoreError::FileNotFound(_)
            | CoreError::MalformedImage(_)
            | CoreError::UnsupportedBitDepth(_)
            | CoreError::UnsupportedFormat(_) => Category::LoadError,
            CoreError::Io(_) => Category::IoFailure,
            _ => Category::MethodError,
        };
        Self::new(category, err.to_string())
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    category: Category,
    message: &'a str,
    exit_code: i32,
}

#[derive(Serialize)]
struct ErrorDocument<'a> {
    schema_version: u32,
    error: ErrorBody<'a>,
}

impl CliError {
    /// Single-line JSON document written to standard error.
    pub fn to_json(&self) -> String {
        let doc = ErrorDocument {
            schema_version: crate::report::SCHEMA_VERSION,
            error: ErrorBody { category: self.category, message: &self.message, exit_code: self.exit_code() },
        };
        serde_json::to_string(&doc).unwrap_or_else(|_| format!("{{\"error\":\"{}\"}}", self.category))
    }
}
