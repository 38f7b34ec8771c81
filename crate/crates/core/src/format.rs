//! The shared hypergraph JSON format.
//!
//! Canonical form is compact JSON with edges in canonical order followed by a
//! single newline: `{"n":2,"edges":[[0],[1],[0,1]]}`.

use std::path::Path;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl From<&Hypergraph> for RawHypergraph {
    fn from(g: &Hypergraph) -> Self {
        RawHypergraph {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|e| e.vertices().to_vec()).collect(),
        }
    }
}

impl Serialize for Hypergraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawHypergraph::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawHypergraph::deserialize(deserializer)?;
        Hypergraph::new(raw.n, raw.edges).map_err(D::Error::custom)
    }
}

/// Canonical single-line JSON, newline-terminated.
pub fn to_canonical_json(g: &Hypergraph) -> String {
    let mut s = serde_json::to_string(&RawHypergraph::from(g)).expect("plain data serializes");
    s.push('\n');
    s
}

/// Parses the JSON format, validating vertices and duplicates. Errors carry
/// the line and column of the offending edge.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let raw: RawHypergraph = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Hypergraph::new(raw.n, raw.edges.iter().cloned()).map_err(|e| {
        let msg = e.to_string();
        match edge_index_in(&msg).and_then(|i| locate_edge(text, i)) {
            Some((line, col)) => Error::Parse(format!("{msg} at line {line} column {col}")),
            None => Error::Parse(msg),
        }
    })
}

pub fn parse_hypergraph_file(path: impl AsRef<Path>) -> Result<Hypergraph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_hypergraph(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn write_hypergraph_file(path: impl AsRef<Path>, g: &Hypergraph) -> Result<()> {
    std::fs::write(path, to_canonical_json(g))?;
    Ok(())
}

fn edge_index_in(msg: &str) -> Option<usize> {
    let rest = &msg[msg.find("edge #")? + 6..];
    let end = rest
        .find(|c: char| !c.is_ascii_digit())
        .unwrap_or(rest.len());
    rest[..end].parse().ok()
}

/// 1-based line and column of the `idx`-th inner array of `"edges"`.
fn locate_edge(text: &str, idx: usize) -> Option<(usize, usize)> {
    let start = text.find("\"edges\"")?;
    let mut depth = 0usize;
    let mut seen = 0usize;
    for (off, c) in text[start..].char_indices() {
        match c {
            '[' => {
                depth += 1;
                if depth == 2 {
                    if seen == idx {
                        let pos = start + off;
                        let line = text[..pos].matches('\n').count() + 1;
                        let col = pos - text[..pos].rfind('\n').map_or(0, |p| p + 1) + 1;
                        return Some((line, col));
                    }
                    seen += 1;
                }
            }
            ']' => {
                depth = depth.checked_sub(1)?;
                if depth == 0 {
                    return None;
                }
            }
            _ => {}
        }
    }
    None
}
