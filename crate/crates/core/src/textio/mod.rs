//! The line-based system and cover formats, and TSV output.
//!
//! ```text
//! system NAME
//! states ID+
//! inputs ID+
//! trans STATE INPUT -> STATE+        (one line per pair)
//!
//! cover NAME
//! over SYSTEMNAME
//! target STATE+
//! cell CELLID : STATE+ input INPUT   (one or more)
//! ```
//!
//! Ids match `[A-Za-z0-9_]+`; `#` starts a comment.

mod cover;
mod system;
mod tsv;

use std::fmt;

pub use cover::{parse_cover, parse_cover_named, serialize_cover, CoverFile};
pub use system::{parse_system, parse_system_named, serialize_system};
pub use tsv::{emit_tsv, interval_fields, log_fields, matrix_table, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagCode {
    Parse,
    DupTrans,
    NotStrict,
    UnknownId,
    EmptyImage,
}

impl DiagCode {
    pub const ALL: [DiagCode; 5] =
        [DiagCode::Parse, DiagCode::DupTrans, DiagCode::NotStrict, DiagCode::UnknownId, DiagCode::EmptyImage];

    pub fn as_str(self) -> &'static str {
        match self {
            DiagCode::Parse => "E_PARSE",
            DiagCode::DupTrans => "E_DUP_TRANS",
            DiagCode::NotStrict => "E_NOT_STRICT",
            DiagCode::UnknownId => "E_UNKNOWN_ID",
            DiagCode::EmptyImage => "E_EMPTY_IMAGE",
        }
    }
}

impl fmt::Display for DiagCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A located parse error. Lines and columns are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceDiagnostic {
    pub file: String,
    pub line: usize,
    pub column: usize,
    pub code: DiagCode,
    pub message: String,
}

impl fmt::Display for SourceDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}: {}: {}", self.file, self.line, self.column, self.code, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

/// Splits a line into whitespace-separated tokens, with `:` always standing
/// alone. Everything after `#` is dropped.
fn tokenize(line: &str) -> Vec<Token<'_>> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let col_of = |byte: usize| line[..byte].chars().count() + 1;
    let mut pending = Vec::new();
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() || ch == ':' {
            if let Some(s) = start.take() {
                pending.push((s, i));
            }
            if ch == ':' {
                pending.push((i, i + 1));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        pending.push((s, line.len()));
    }
    for (s, e) in pending {
        out.push(Token { text: &line[s..e], column: col_of(s) });
    }
    out
}

fn is_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Diags {
    file: String,
    list: Vec<SourceDiagnostic>,
}

impl Diags {
    fn new(file: &str) -> Self {
        Self { file: file.to_string(), list: Vec::new() }
    }

    fn push(&mut self, line: usize, column: usize, code: DiagCode, message: impl Into<String>) {
        self.list.push(SourceDiagnostic {
            file: self.file.clone(),
            line,
            column,
            code,
            message: message.into(),
        });
    }

    /// Checks that every token is an id, reporting the first offender.
    fn ids(&mut self, line: usize, toks: &[Token<'_>]) -> bool {
        match toks.iter().find(|t| !is_id(t.text)) {
            None => true,
            Some(t) => {
                self.push(line, t.column, DiagCode::Parse, format!("`{}` is not a valid id", t.text));
                false
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_columns() {
        let toks = tokenize("cell A1: 0 1 input a # note");
        let texts: Vec<&str> = toks.iter().map(|t| t.text).collect();
        assert_eq!(texts, ["cell", "A1", ":", "0", "1", "input", "a"]);
        assert_eq!(toks[1].column, 6);
        assert_eq!(toks[2].column, 8);
        assert!(tokenize("   # only a comment").is_empty());
    }

    #[test]
    fn diagnostic_rendering() {
        let d = SourceDiagnostic {
            file: "x.sys".into(),
            line: 3,
            column: 7,
            code: DiagCode::DupTrans,
            message: "second line".into(),
        };
        assert_eq!(d.to_string(), "x.sys:3:7: E_DUP_TRANS: second line");
    }
}
