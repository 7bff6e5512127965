//! Relation file formats.
//!
//! * Text matrix: whitespace-separated `0`/`1` rows, with optional
//!   `#x: a b c` and `#y: d e f` header lines naming sources and targets.
//!   Other lines starting with `#` and blank lines are ignored. A square
//!   matrix without a `#y:` header is read as a self-relation.
//! * Edge list: one `source target` pair per line. The vertex set is the
//!   union of endpoints in order of first appearance, unless a
//!   `#vertices: a b c` header pins it. Always a self-relation.
//! * JSON: `{"source_labels":[...],"target_labels":[...],"rows":[[0,1],...]}`.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::{default_labels, Relation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Matrix,
    Edges,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matrix" | "txt" => Ok(Format::Matrix),
            "edges" | "edgelist" => Ok(Format::Edges),
            "json" => Ok(Format::Json),
            other => Err(Error::Precondition(format!("unknown format `{other}`"))),
        }
    }
}

/// Guesses the format from content: JSON starts with `{`, a `#vertices:`
/// header or any token other than `0`/`1` means an edge list.
pub fn detect_format(text: &str) -> Format {
    if text.trim_start().starts_with('{') {
        return Format::Json;
    }
    let mut all_binary = true;
    for line in text.lines().map(str::trim) {
        if line.starts_with("#vertices:") {
            return Format::Edges;
        }
        if line.starts_with('#') {
            continue;
        }
        if line.split_whitespace().any(|t| t != "0" && t != "1") {
            all_binary = false;
        }
    }
    if all_binary {
        Format::Matrix
    } else {
        Format::Edges
    }
}

pub fn parse(text: &str, format: Option<Format>) -> Result<Relation> {
    match format.unwrap_or_else(|| detect_format(text)) {
        Format::Matrix => parse_matrix(text),
        Format::Edges => parse_edges(text),
        Format::Json => parse_json(text),
    }
}

fn header<'a>(line: &'a str, key: &str) -> Option<Vec<String>> {
    let rest = line.strip_prefix('#')?.trim_start().strip_prefix(key)?;
    let rest: &'a str = rest.trim_start().strip_prefix(':')?;
    Some(rest.split_whitespace().map(str::to_string).collect())
}

pub fn parse_matrix(text: &str) -> Result<Relation> {
    let mut xs = None;
    let mut ys = None;
    let mut rows: Vec<Vec<bool>> = Vec::new();
    let mut width = None;
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if let Some(l) = header(line, "x") {
                xs = Some(l);
            } else if let Some(l) = header(line, "y") {
                ys = Some(l);
            }
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| match t {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected 0 or 1, found `{other}`"),
                }),
            })
            .collect::<Result<Vec<bool>>>()?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("row has {} entries, expected {w}", row.len()),
                })
            }
            _ => {}
        }
        rows.push(row);
    }
    // a square matrix without a `#y:` header is a self-relation
    if ys.is_none() && width.is_none_or(|w| w == rows.len()) {
        let labels = xs.unwrap_or_else(|| default_labels("x", rows.len()));
        return Relation::from_matrix(&rows, Some(labels.clone()), Some(labels));
    }
    Relation::from_matrix(&rows, xs, ys)
}

pub fn parse_edges(text: &str) -> Result<Relation> {
    let mut pinned: Option<Vec<String>> = None;
    let mut seen: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String, usize)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if let Some(v) = header(line, "vertices") {
                pinned = Some(v);
            }
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [a, b] = toks[..] else {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected `source target`, found {} tokens", toks.len()),
            });
        };
        for v in [a, b] {
            if !seen.iter().any(|s| s == v) {
                seen.push(v.to_string());
            }
        }
        edges.push((a.to_string(), b.to_string(), line_no));
    }
    let labels = pinned.unwrap_or(seen);
    for (a, b, line_no) in &edges {
        if let Some(v) = [a, b].into_iter().find(|v| !labels.contains(v)) {
            return Err(Error::Parse {
                line: *line_no,
                msg: format!("vertex `{v}` is not listed in #vertices"),
            });
        }
    }
    Relation::from_pairs(labels.clone(), labels, edges.iter().map(|(a, b, _)| (a, b)))
}

/// JSON relation file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFile {
    pub source_labels: Vec<String>,
    pub target_labels: Vec<String>,
    pub rows: Vec<Vec<u8>>,
}

impl From<&Relation> for RelationFile {
    fn from(r: &Relation) -> Self {
        RelationFile {
            source_labels: r.source_labels().to_vec(),
            target_labels: r.target_labels().to_vec(),
            rows: r
                .to_rows()
                .into_iter()
                .map(|row| row.into_iter().map(u8::from).collect())
                .collect(),
        }
    }
}

pub fn parse_json(text: &str) -> Result<Relation> {
    let file: RelationFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    let rows = file
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&b| match b {
                    0 => Ok(false),
                    1 => Ok(true),
                    other => Err(Error::Parse {
                        line: 0,
                        msg: format!("matrix entries must be 0 or 1, found {other}"),
                    }),
                })
                .collect()
        })
        .collect::<Result<Vec<Vec<bool>>>>()?;
    Relation::from_matrix(&rows, Some(file.source_labels), Some(file.target_labels))
}

pub fn to_json(r: &Relation) -> String {
    serde_json::to_string(&RelationFile::from(r)).expect("relation serializes")
}

/// Text matrix with `#x:` / `#y:` headers; parses back to the same relation.
pub fn to_matrix_text(r: &Relation) -> String {
    format!(
        "#x: {}\n#y: {}\n{}",
        r.source_labels().join(" "),
        r.target_labels().join(" "),
        r
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn matrix_with_headers() {
        let text = "#x: a b\n#y: p q r\n1 0 1\n0 1 0\n";
        let r = parse(text, None).unwrap();
        assert_eq!(r.source_labels(), ["a", "b"]);
        assert_eq!(r.target_labels(), ["p", "q", "r"]);
        assert!(r.get(0, 2) && r.get(1, 1) && !r.get(0, 1));
    }

    #[test]
    fn matrix_defaults_and_errors() {
        let r = parse("1 0 0 0 1\n0 0 1 1 0\n1 0 0 0 1\n1 1 0 0 0\n", None).unwrap();
        assert_eq!(r, fix_a());
        assert_eq!(
            parse_matrix("1 0\n1\n"),
            Err(Error::Parse {
                line: 2,
                msg: "row has 1 entries, expected 2".into()
            })
        );
        assert!(matches!(
            parse_matrix("1 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        let square = parse_matrix("0 1\n1 0\n").unwrap();
        assert_eq!(square.source_labels(), square.target_labels());
        assert_eq!(square.source_labels(), ["x1", "x2"]);
    }

    #[test]
    fn edge_list() {
        let r = parse("a b\nb c\nc a\n", None).unwrap();
        assert_eq!(r.source_labels(), ["a", "b", "c"]);
        assert_eq!(r.len(), 3);
        let pinned = parse("#vertices: c b a d\na b\n", None).unwrap();
        assert_eq!(pinned.source_labels(), ["c", "b", "a", "d"]);
        assert!(pinned.get(2, 1));
        assert!(matches!(
            parse("#vertices: a\na b\n", None),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edges("a b c\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let a = fix_a();
        let json = to_json(&a);
        assert!(json.starts_with(r#"{"source_labels":["x1","x2","x3","x4"]"#));
        assert_eq!(parse(&json, None).unwrap(), a);
        assert_eq!(parse(&to_matrix_text(&a), None).unwrap(), a);
        assert!(matches!(
            parse_json("{\"rows\": 3}"),
            Err(Error::Parse { .. })
        ));
    }
}
