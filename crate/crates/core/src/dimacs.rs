//! DIMACS CNF reading and writing.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{Clause, CnfFormula, FormulaError, Literal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: malformed problem line: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("line {line}: clause data before the problem line")]
    MissingHeader { line: usize },
    #[error("no problem line found")]
    NoHeader,
    #[error("line {line}: duplicate problem line")]
    DuplicateHeader { line: usize },
    #[error("line {line}: invalid token `{token}`")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: literal {literal} exceeds the declared {variable_count} variables")]
    LiteralOutOfRange {
        line: usize,
        literal: i64,
        variable_count: usize,
    },
    #[error("line {line}: clause {clause} is tautological (contains {literal} and its negation)")]
    TautologicalClause {
        line: usize,
        clause: usize,
        literal: i64,
    },
    #[error("line {line}: clause {clause} is empty")]
    EmptyClause { line: usize, clause: usize },
}

impl DimacsError {
    pub fn line(&self) -> Option<usize> {
        match *self {
            DimacsError::NoHeader => None,
            DimacsError::MalformedHeader { line, .. }
            | DimacsError::MissingHeader { line }
            | DimacsError::DuplicateHeader { line }
            | DimacsError::InvalidToken { line, .. }
            | DimacsError::LiteralOutOfRange { line, .. }
            | DimacsError::TautologicalClause { line, .. }
            | DimacsError::EmptyClause { line, .. } => Some(line),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum DimacsWarning {
    /// The header announced a different number of clauses than were read.
    ClauseCountMismatch { declared: usize, actual: usize },
    /// The last clause was not terminated by `0`; it was kept.
    UnterminatedClause { line: usize },
}

impl std::fmt::Display for DimacsWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DimacsWarning::ClauseCountMismatch { declared, actual } => write!(
                f,
                "header declares {declared} clauses but {actual} were read; using {actual}"
            ),
            DimacsWarning::UnterminatedClause { line } => {
                write!(f, "line {line}: final clause not terminated by 0")
            }
        }
    }
}

/// A parsed file: the formula plus anything worth telling the user.
#[derive(Debug, Clone)]
pub struct Dimacs {
    pub formula: CnfFormula,
    pub warnings: Vec<DimacsWarning>,
}

/// Parses DIMACS CNF text.
///
/// Repeated literals inside a clause collapse to one. A clause holding a
/// literal and its negation is an error, as is a literal above the declared
/// variable count. A wrong clause count in the header only produces a
/// warning.
pub fn parse_dimacs(text: &str) -> Result<Dimacs, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut current_line = 0;
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            // SATLIB trailer
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::DuplicateHeader { line: line_no });
            }
            header = Some(parse_header(line, line_no)?);
            continue;
        }
        let (n, _) = header.ok_or(DimacsError::MissingHeader { line: line_no })?;
        for token in line.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| DimacsError::InvalidToken {
                line: line_no,
                token: token.to_string(),
            })?;
            if current.is_empty() {
                current_line = line_no;
            }
            if value == 0 {
                let ordinal = clauses.len() + 1;
                clauses.push(finish_clause(std::mem::take(&mut current), ordinal, line_no)?);
                continue;
            }
            if value.unsigned_abs() as usize > n {
                return Err(DimacsError::LiteralOutOfRange {
                    line: line_no,
                    literal: value,
                    variable_count: n,
                });
            }
            current.push(Literal::from_dimacs(value).expect("non-zero"));
        }
    }

    let (n, declared) = header.ok_or(DimacsError::NoHeader)?;
    if !current.is_empty() {
        warnings.push(DimacsWarning::UnterminatedClause { line: current_line });
        let ordinal = clauses.len() + 1;
        clauses.push(finish_clause(current, ordinal, current_line)?);
    }
    if declared != clauses.len() {
        warnings.push(DimacsWarning::ClauseCountMismatch {
            declared,
            actual: clauses.len(),
        });
    }
    let formula = CnfFormula::new(n, clauses).expect("literal bounds checked while parsing");
    Ok(Dimacs { formula, warnings })
}

fn parse_header(line: &str, line_no: usize) -> Result<(usize, usize), DimacsError> {
    let malformed = |reason: &str| DimacsError::MalformedHeader {
        line: line_no,
        reason: reason.to_string(),
    };
    let mut parts = line.split_whitespace();
    if parts.next() != Some("p") {
        return Err(malformed("expected `p cnf <variables> <clauses>`"));
    }
    if parts.next() != Some("cnf") {
        return Err(malformed("only the `cnf` format is supported"));
    }
    let n = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| malformed("variable count missing or not a number"))?;
    let m = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| malformed("clause count missing or not a number"))?;
    if parts.next().is_some() {
        return Err(malformed("trailing tokens"));
    }
    Ok((n, m))
}

fn finish_clause(literals: Vec<Literal>, ordinal: usize, line: usize) -> Result<Clause, DimacsError> {
    Clause::new(literals).map_err(|e| match e {
        FormulaError::Tautology(lit) => DimacsError::TautologicalClause {
            line,
            clause: ordinal,
            literal: lit.to_dimacs(),
        },
        _ => DimacsError::EmptyClause {
            line,
            clause: ordinal,
        },
    })
}

/// Writes a formula as DIMACS, one clause per line.
pub fn write_dimacs(formula: &CnfFormula) -> String {
    write_dimacs_with_comments(formula, &[])
}

/// Like [`write_dimacs`], with `c` comment lines ahead of the header.
pub fn write_dimacs_with_comments(formula: &CnfFormula, comments: &[String]) -> String {
    let mut out = String::new();
    for comment in comments {
        for line in comment.lines() {
            if line.is_empty() {
                out.push_str("c\n");
            } else {
                let _ = writeln!(out, "c {line}");
            }
        }
    }
    let _ = writeln!(out, "p cnf {} {}", formula.variable_count(), formula.clause_count());
    for clause in formula.clauses() {
        for lit in clause.literals() {
            let _ = write!(out, "{} ", lit.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}
