//! Problem formats and the JSON documents for proofs and models.

pub mod dimacs;
pub mod document;
pub mod tptp;

use std::fmt;

use thiserror::Error;

use crate::logic::{ClauseSet, LogicError};

pub use dimacs::{parse_dimacs, write_dimacs};
pub use document::{ModelDocument, ProofDocument, MODEL_FORMAT, PROOF_FORMAT};
pub use tptp::{parse_literal, parse_term, parse_tptp_cnf, write_tptp_cnf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dimacs,
    TptpCnf,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Dimacs => "dimacs",
            Format::TptpCnf => "tptp-cnf",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub format: Format,
    pub name: String,
    pub clauses: ClauseSet,
    /// Clause names and roles, TPTP only; index `i` belongs to clause id `i + 1`.
    pub annotations: Vec<(String, String)>,
    /// DIMACS header counts `(variables, clauses)`.
    pub declared: Option<(usize, usize)>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: unsupported feature: {feature}")]
    Unsupported { line: usize, column: usize, feature: String },
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("invalid document: {0}")]
    Document(String),
}

/// DIMACS when a `p cnf` header appears before any TPTP statement, TPTP otherwise.
pub fn detect_format(text: &str) -> Format {
    for line in text.lines().map(str::trim_start) {
        if line.starts_with("p ") || line == "p" {
            return Format::Dimacs;
        }
        let first = line.chars().next();
        if line.is_empty() || (first == Some('c') && !line.starts_with("cnf")) || first == Some('%') {
            continue;
        }
        if first.is_some_and(|c| c.is_ascii_digit() || c == '-') {
            return Format::Dimacs;
        }
        return Format::TptpCnf;
    }
    Format::TptpCnf
}

pub fn parse_problem(name: &str, text: &str) -> Result<ProblemFile, ParseError> {
    let mut problem = match detect_format(text) {
        Format::Dimacs => parse_dimacs(text)?,
        Format::TptpCnf => parse_tptp_cnf(text)?,
    };
    problem.name = name.to_string();
    Ok(problem)
}
