//! Plain-text 3x3 joint matrix.
//!
//! Three non-comment lines of three whitespace-separated decimals. Rows are
//! agent 1 (favor, neutral, oppose), columns agent 2 in the same order.
//! Anything after `#` on a line is a comment.

use std::fmt::Write as _;
use synergy_core::{Error as CoreError, JointDist, MarginalDist};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JointFileError {
    #[error("line {line}: expected 3 values for row {row}, found {found}")]
    WrongWidth { line: usize, row: usize, found: usize },

    #[error("line {line}: row {row}, column {col}: cannot parse {token:?} as a number")]
    BadNumber {
        line: usize,
        row: usize,
        col: usize,
        token: String,
    },

    #[error("line {line}: unexpected fourth row")]
    ExtraRow { line: usize },

    #[error("expected 3 rows, found {0}")]
    MissingRows(usize),

    #[error("row {row}, column {col}: {source}")]
    InvalidCell {
        row: usize,
        col: usize,
        source: CoreError,
    },

    #[error("{0}")]
    Invalid(CoreError),
}

/// Parses and validates a joint file. Row and column numbers in errors are
/// 1-based.
pub fn parse(text: &str) -> Result<JointDist, JointFileError> {
    let mut cells = [[0.0; 3]; 3];
    let mut rows = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if rows == 3 {
            return Err(JointFileError::ExtraRow { line });
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(JointFileError::WrongWidth {
                line,
                row: rows + 1,
                found: tokens.len(),
            });
        }
        for (col, token) in tokens.iter().enumerate() {
            cells[rows][col] = token.parse().map_err(|_| JointFileError::BadNumber {
                line,
                row: rows + 1,
                col: col + 1,
                token: (*token).to_owned(),
            })?;
        }
        rows += 1;
    }
    if rows != 3 {
        return Err(JointFileError::MissingRows(rows));
    }
    JointDist::new(cells).map_err(|e| match e {
        CoreError::NonFinite { row, col, .. } | CoreError::Negative { row, col, .. } => {
            JointFileError::InvalidCell {
                row: row + 1,
                col: col + 1,
                source: e,
            }
        }
        other => JointFileError::Invalid(other),
    })
}

fn write_marginal(out: &mut String, label: &str, m: &MarginalDist) {
    let [a, b, c] = m.to_array();
    let _ = writeln!(out, "# {label} marginal (favor neutral oppose): {a} {b} {c}");
}

/// Renders a joint in the file format. Values use the shortest decimal that
/// parses back to the same `f64`.
pub fn render(j: &JointDist, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        let _ = writeln!(out, "# {h}");
    }
    let (m1, m2) = j.marginals();
    write_marginal(&mut out, "agent 1", &m1);
    write_marginal(&mut out, "agent 2", &m2);
    out.push_str("# rows: agent 1 favor/neutral/oppose; columns: agent 2 favor/neutral/oppose\n");
    for row in j.cells() {
        let _ = writeln!(out, "{} {} {}", row[0], row[1], row[2]);
    }
    out
}
