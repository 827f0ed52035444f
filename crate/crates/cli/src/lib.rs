//! Command-line front end for `synergy-core`.
//!
//! Exit codes: 0 success, 1 verification found violations (or an internal
//! identity check failed), 2 unreadable or unwritable file and command-line
//! usage errors, 3 malformed or invalid input file, 4 invalid argument
//! value, 5 score file missing a class.

pub mod commands;
pub mod jointfile;
pub mod report;
pub mod scores;
