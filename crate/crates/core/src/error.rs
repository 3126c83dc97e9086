//! Error type shared by all library operations.

use alloc::string::String;
use core::fmt;

/// Why an operation refused to produce a value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    Domain(String),
    /// A query exceeded the range covered by a precomputed structure
    /// (queries are never silently truncated or extended).
    OutOfRange(String),
    /// A requested size exceeds the configured resource budget.
    Resource(String),
    /// The fast evaluation path would fold distinct frequencies onto the
    /// same output bin; the caller may force the direct path instead.
    Aliasing(String),
    /// The input is degenerate for the requested operation (constant
    /// polygon, coincident samples, zero-extent geometry).
    Degenerate(String),
}

impl Error {
    fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain error",
            Error::OutOfRange(_) => "out of range",
            Error::Resource(_) => "resource limit",
            Error::Aliasing(_) => "aliasing",
            Error::Degenerate(_) => "degenerate input",
        }
    }

    fn message(&self) -> &str {
        match self {
            Error::Domain(m)
            | Error::OutOfRange(m)
            | Error::Resource(m)
            | Error::Aliasing(m)
            | Error::Degenerate(m) => m,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind(), self.message())
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
