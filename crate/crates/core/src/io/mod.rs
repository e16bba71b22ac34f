//! Text formats and the benchmark runner.
//!
//! All formats are line-oriented: `#` starts a comment, blank lines are
//! ignored and ids are 1-based.

pub mod bench;
pub mod format;
pub mod solution;
pub mod sources;

use std::fmt;

pub use format::{parse_instance, serialize_instance};
pub use solution::{
    check_solution, parse_solution, serialize_solution, CheckError, CheckReport, SolutionFile,
};

/// A malformed input, with the 1-based line it was found on when one applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub reason: String,
}

impl ParseError {
    pub fn at(line: usize, reason: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            reason: reason.into(),
        }
    }

    pub fn whole(reason: impl Into<String>) -> Self {
        Self {
            line: None,
            reason: reason.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.reason),
            None => f.write_str(&self.reason),
        }
    }
}

impl std::error::Error for ParseError {}

/// Content lines as `(1-based line number, tokens)`, comments stripped.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub(crate) fn parse_int<T: std::str::FromStr>(
    line: usize,
    token: &str,
    what: &str,
) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::at(line, format!("{what} `{token}` is not an integer")))
}

/// Checks the token count and keyword of a content line.
pub(crate) fn expect_arity(line: usize, tokens: &[&str], arity: usize) -> Result<(), ParseError> {
    if tokens.len() != arity {
        return Err(ParseError::at(
            line,
            format!(
                "{} expects {} fields, found {}",
                tokens[0],
                arity - 1,
                tokens.len() - 1
            ),
        ));
    }
    Ok(())
}
