//! Cone file formats.
//!
//! Structured (JSON):
//!
//! ```json
//! { "name": "square", "dim": 3, "normals": [[1,0,1], [-1,0,1], [0,1,1], [0,-1,1]] }
//! ```
//!
//! Integers may be JSON numbers of any size or decimal strings. `name` is
//! optional.
//!
//! Plain text: the first line is `n N`, followed by `N` lines of `n`
//! integers. Tokens are whitespace-separated and `#` starts a comment.

use std::path::Path;

use momentcone_core::{BigInt, ConeSpec};
use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON cone: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {message}")]
    Text { line: usize, message: String },
    #[error("{0}")]
    Shape(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StructuredCone {
    #[serde(default)]
    name: Option<String>,
    dim: usize,
    normals: Vec<Vec<Value>>,
}

fn parse_int(v: &Value) -> Result<BigInt, String> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => return Err(format!("expected an integer, found {other}")),
    };
    text.parse::<BigInt>()
        .map_err(|_| format!("expected an integer, found {text:?}"))
}

pub fn parse_json(input: &str) -> Result<ConeSpec, ParseError> {
    let raw: StructuredCone = serde_json::from_str(input)?;
    let mut normals = Vec::with_capacity(raw.normals.len());
    for (i, row) in raw.normals.iter().enumerate() {
        let parsed: Result<Vec<BigInt>, String> = row.iter().map(parse_int).collect();
        normals.push(parsed.map_err(|e| ParseError::Shape(format!("normal {}: {e}", i + 1)))?);
    }
    ConeSpec::new(raw.name, raw.dim, normals).map_err(|e| ParseError::Shape(e.to_string()))
}

pub fn parse_text(input: &str) -> Result<ConeSpec, ParseError> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let text_err = |line, message: String| ParseError::Text { line, message };
    let parse_line = |line: usize, l: &str| -> Result<Vec<BigInt>, ParseError> {
        l.split_whitespace()
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| text_err(line, format!("not an integer: {t:?}")))
            })
            .collect()
    };

    let (hline, header) = lines
        .next()
        .ok_or_else(|| text_err(1, "empty cone file".into()))?;
    let header = parse_line(hline, header)?;
    let [n, count] = header.as_slice() else {
        return Err(text_err(hline, "header must be `n N`".into()));
    };
    let to_count = |x: &BigInt| {
        usize::try_from(x).map_err(|_| text_err(hline, format!("invalid count {x}")))
    };
    let (n, count) = (to_count(n)?, to_count(count)?);

    let mut normals = Vec::with_capacity(count);
    for (line, l) in lines {
        if normals.len() == count {
            return Err(text_err(line, format!("expected {count} normals, found more")));
        }
        let row = parse_line(line, l)?;
        if row.len() != n {
            return Err(text_err(line, format!("expected {n} integers, found {}", row.len())));
        }
        normals.push(row);
    }
    if normals.len() != count {
        return Err(ParseError::Shape(format!(
            "expected {count} normals, found {}",
            normals.len()
        )));
    }
    ConeSpec::new(None, n, normals).map_err(|e| ParseError::Shape(e.to_string()))
}

/// Parses either format; JSON is recognized by a leading `{`.
pub fn parse_cone(input: &str) -> Result<ConeSpec, ParseError> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

pub fn read_cone(path: &Path) -> Result<ConeSpec, ParseError> {
    let input = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_cone(&input)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_agree() {
        let text = "# square cone\n3 4\n1 0 1\n-1 0 1 # second\n\n0 1 1\n0 -1 1\n";
        let json = r#"{"dim": 3, "normals": [[1,0,1],[-1,0,1],[0,1,1],["0","-1","1"]]}"#;
        assert_eq!(parse_cone(text).unwrap(), parse_cone(json).unwrap());
    }

    #[test]
    fn big_integers_parse_exactly() {
        let big = "123456789012345678901234567890";
        let json = format!(r#"{{"name": "big", "dim": 2, "normals": [[{big}, 1], [0, 1]]}}"#);
        let spec = parse_cone(&json).unwrap();
        assert_eq!(spec.normals()[0][0].to_string(), big);
        assert_eq!(spec.name(), Some("big"));

        let spec = parse_cone(&format!("2 2\n{big} 1\n0 1\n")).unwrap();
        assert_eq!(spec.normals()[0][0].to_string(), big);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_cone(""), Err(ParseError::Text { .. })));
        assert!(matches!(parse_cone("2\n1 0\n"), Err(ParseError::Text { line: 1, .. })));
        assert!(matches!(parse_cone("2 2\n1 0\n0 x\n"), Err(ParseError::Text { line: 3, .. })));
        assert!(matches!(parse_cone("2 2\n1 0 0\n0 1\n"), Err(ParseError::Text { line: 2, .. })));
        assert!(matches!(parse_cone("2 2\n1 0\n"), Err(ParseError::Shape(_))));
        assert!(matches!(parse_cone("2 1\n1 0\n0 1\n"), Err(ParseError::Text { line: 3, .. })));
        assert!(matches!(parse_cone("-2 1\n1 0\n"), Err(ParseError::Text { line: 1, .. })));
        assert!(matches!(parse_cone(r#"{"dim": 2, "normals": [[1.5, 0]]}"#), Err(ParseError::Shape(_))));
        assert!(matches!(parse_cone(r#"{"dim": 2, "normals": [[1, 0, 0]]}"#), Err(ParseError::Shape(_))));
        assert!(matches!(parse_cone(r#"{"dim": 2}"#), Err(ParseError::Json(_))));
        assert!(matches!(parse_cone(r#"{"dim": 2, "normals": [], "extra": 1}"#), Err(ParseError::Json(_))));
    }
}
