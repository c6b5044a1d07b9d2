//! Matrix documents.
//!
//! Plain format: one row per line, whitespace-separated decimal integers,
//! `#` starts a comment, blank lines are ignored.
//!
//! Structured format: a JSON object `{"matrix": [[...], ...]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    Plain,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixDocument {
    pub format: MatrixFormat,
    pub matrix: IntMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonDocument {
    matrix: Vec<Vec<i64>>,
}

impl MatrixDocument {
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Ok(Self {
                format: MatrixFormat::Json,
                matrix: parse_json(text)?,
            })
        } else {
            Ok(Self {
                format: MatrixFormat::Plain,
                matrix: parse_plain(text)?,
            })
        }
    }

    pub fn serialize(&self) -> String {
        match self.format {
            MatrixFormat::Plain => format_plain(&self.matrix),
            MatrixFormat::Json => format_json(&self.matrix),
        }
    }
}

/// Parses either format, detected by a leading `{`.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    MatrixDocument::parse(text).map(|doc| doc.matrix)
}

fn parse_plain(text: &str) -> Result<IntMatrix> {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut first_line = 0;
    for (lineno, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        let mut rest = content;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let token_len = rest[start..]
                .find(char::is_whitespace)
                .unwrap_or(rest.len() - start);
            let token = &rest[start..start + token_len];
            let column = content.len() - rest.len() + start + 1;
            let value = token.parse::<i64>().map_err(|e| Error::Parse {
                line: lineno + 1,
                column,
                message: format!("invalid integer {token:?}: {e}"),
            })?;
            row.push(value);
            rest = &rest[start + token_len..];
        }
        if row.is_empty() {
            continue;
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse {
                    line: lineno + 1,
                    column: 1,
                    message: format!(
                        "row has {} entries but line {} has {}",
                        row.len(),
                        first_line,
                        first.len()
                    ),
                });
            }
        } else {
            first_line = lineno + 1;
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    IntMatrix::from_rows(&rows)
}

fn parse_json(text: &str) -> Result<IntMatrix> {
    let doc: JsonDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.matrix.is_empty() || doc.matrix[0].is_empty() {
        return Err(Error::EmptyInput);
    }
    IntMatrix::from_rows(&doc.matrix)
}

/// Space-separated rows with right-aligned entries.
pub fn format_plain(m: &IntMatrix) -> String {
    m.to_string()
}

pub fn format_json(m: &IntMatrix) -> String {
    serde_json::to_string(&JsonDocument { matrix: m.to_rows() }).expect("integers always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_examples() {
        let m = parse_matrix("0 1 1\n1 0 1\n1 1 0\n").unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[[0, 1, 1], [1, 0, 1], [1, 1, 0]]).unwrap());
        let g = parse_matrix("1 24\n1 25\n").unwrap();
        assert_eq!(g, IntMatrix::from_rows(&[[1, 24], [1, 25]]).unwrap());
    }

    #[test]
    fn comments_blank_lines_and_signs() {
        let text = "# g from the first example\n\n  1\t-24   # row 0\n\n-1 +25\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[[1, -24], [-1, 25]]).unwrap());
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = parse_matrix("1 2\n3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(parse_matrix(r#"{"matrix": [[1, 2], [3]]}"#).is_err());
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_matrix("1 2\n3 x4\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 3, .. }), "{err}");
    }

    #[test]
    fn empty_input() {
        assert_eq!(parse_matrix(""), Err(Error::EmptyInput));
        assert_eq!(parse_matrix("# nothing\n\n"), Err(Error::EmptyInput));
        assert_eq!(parse_matrix(r#"{"matrix": []}"#), Err(Error::EmptyInput));
    }

    #[test]
    fn json_documents() {
        let m = parse_matrix(r#"{"matrix": [[0, 1, 1], [1, 0, 1], [1, 1, 0]]}"#).unwrap();
        assert_eq!(format_json(&m), r#"{"matrix":[[0,1,1],[1,0,1],[1,1,0]]}"#);
        let err = parse_matrix("{\"matrix\": [[1, 2],\n [3, ]]}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(parse_matrix(r#"{"rows": [[1]]}"#).is_err());
    }
}
