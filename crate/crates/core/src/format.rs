//! Text edge lists and JSON documents for hypergraphs.
//!
//! Text format: one edge per line as whitespace-separated vertex names,
//! `#` starts a comment line, and an optional `vertices: a b c` line fixes
//! the vertex list. Without it the vertices are the names in order of first
//! appearance. JSON format: `{"vertices": [...], "edges": [[...], ...]}`,
//! with `vertices` optional.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Validation(#[from] HypergraphError),
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonDoc {
    #[serde(default)]
    vertices: Option<Vec<String>>,
    edges: Vec<Vec<String>>,
}

/// Parses either format; a document whose first non-blank character is `{`
/// is read as JSON.
pub fn parse_hypergraph(input: &str) -> Result<Hypergraph, FormatError> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

fn push_unique(order: &mut Vec<String>, name: &str) {
    if !order.iter().any(|v| v == name) {
        order.push(name.to_string());
    }
}

fn check_edge(edge: &[String], line: usize) -> Result<(), FormatError> {
    for (i, v) in edge.iter().enumerate() {
        if edge[..i].contains(v) {
            return Err(FormatError::Parse {
                line,
                message: format!("vertex {v} repeated within an edge"),
            });
        }
    }
    Ok(())
}

pub fn parse_text(input: &str) -> Result<Hypergraph, FormatError> {
    let mut header: Option<Vec<String>> = None;
    let mut seen: Vec<String> = Vec::new();
    let mut edges: Vec<Vec<String>> = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let line = i + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        if let Some(rest) = text.strip_prefix("vertices:") {
            if header.is_some() {
                return Err(FormatError::Parse {
                    line,
                    message: "second vertices header".into(),
                });
            }
            if !edges.is_empty() {
                return Err(FormatError::Parse {
                    line,
                    message: "vertices header after the first edge".into(),
                });
            }
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if let Some(dup) = names
                .iter()
                .enumerate()
                .find(|(k, v)| names[..*k].contains(v))
            {
                return Err(FormatError::Parse {
                    line,
                    message: format!("vertex {} declared twice", dup.1),
                });
            }
            header = Some(names);
            continue;
        }
        let edge: Vec<String> = text.split_whitespace().map(str::to_string).collect();
        check_edge(&edge, line)?;
        if let Some(h) = &header {
            if let Some(v) = edge.iter().find(|v| !h.contains(v)) {
                return Err(FormatError::Parse {
                    line,
                    message: format!("vertex {v} is not declared"),
                });
            }
        }
        for v in &edge {
            push_unique(&mut seen, v);
        }
        edges.push(edge);
    }
    let vertices = header.unwrap_or(seen);
    Ok(Hypergraph::from_names(&vertices, edges)?)
}

pub fn parse_json(input: &str) -> Result<Hypergraph, FormatError> {
    let doc: JsonDoc = serde_json::from_str(input).map_err(|e| FormatError::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let vertices = match doc.vertices {
        Some(v) => v,
        None => {
            let mut seen = Vec::new();
            for v in doc.edges.iter().flatten() {
                push_unique(&mut seen, v);
            }
            seen
        }
    };
    for e in &doc.edges {
        check_edge(e, 1)?;
    }
    Ok(Hypergraph::from_names(&vertices, doc.edges)?)
}

/// Text form with an explicit vertices header, so isolated vertices and the
/// vertex order survive a round trip.
pub fn to_text(g: &Hypergraph) -> String {
    let mut out = format!("vertices: {}\n", g.vertex_names().join(" "));
    for e in g.edges() {
        out.push_str(&g.edge_names(e).join(" "));
        out.push('\n');
    }
    out
}

pub fn to_json(g: &Hypergraph) -> serde_json::Value {
    let doc = JsonDoc {
        vertices: Some(g.vertex_names()),
        edges: g.edges().iter().map(|e| g.edge_names(e)).collect(),
    };
    serde_json::to_value(doc).expect("plain strings serialize")
}
