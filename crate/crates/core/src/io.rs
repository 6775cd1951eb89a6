//! Graph files.
//!
//! Two input formats are accepted:
//!
//! * JSON: `{"n": 4, "edges": [[0, 1], [1, 2]], "coords": [[x, y], ...], "labels": [...]}`
//!   where `coords` and `labels` are optional and every edge is written `[u, v]` with `u < v`.
//! * Plain edge lists: one whitespace-separated `u v` pair per line, `#` starts a comment.
//!   Tokens are arbitrary labels mapped to dense ids (numeric order when every
//!   label is an integer, lexicographic otherwise).
//!
//! Saving always produces JSON; edge-list labels are kept in the `labels` field.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Coord, Graph, NodeId};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    n: usize,
    edges: Vec<[NodeId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coords: Option<Vec<Coord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_graph(&text)
}

pub fn save_graph(graph: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, graph_to_json(graph)).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

/// Parses either format, choosing JSON when the text starts with `{`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        parse_json_graph(text)
    } else {
        parse_edge_list(text)
    }
}

pub fn graph_to_json(graph: &Graph) -> String {
    let file = GraphFile {
        n: graph.node_count(),
        edges: graph.edges().iter().map(|&(u, v)| [u, v]).collect(),
        coords: graph.coords().map(<[_]>::to_vec),
        labels: graph.labels().map(<[_]>::to_vec),
    };
    let mut out = serde_json::to_string(&file).expect("graph serialization is infallible");
    out.push('\n');
    out
}

pub fn parse_json_graph(text: &str) -> Result<Graph> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| Error::schema("graph file", e.to_string()))?;
    for (index, &[u, v]) in file.edges.iter().enumerate() {
        if u == v {
            return Err(Error::schema(
                format!("edge #{index} [{u}, {v}]"),
                "self-loop",
            ));
        }
        if u > v {
            return Err(Error::schema(
                format!("edge #{index} [{u}, {v}]"),
                "endpoints must be written in ascending order",
            ));
        }
    }
    let mut graph = Graph::from_edges(file.n, file.edges.iter().map(|&[u, v]| (u, v)))?;
    if let Some(coords) = file.coords {
        graph = graph.with_coords(coords)?;
    }
    if let Some(labels) = file.labels {
        graph = graph.with_labels(labels)?;
    }
    Ok(graph)
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut pairs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::schema(
                format!("line {}", lineno + 1),
                format!("expected 2 fields, found {}", tokens.len()),
            ));
        }
        if tokens[0] == tokens[1] {
            return Err(Error::schema(
                format!("line {} '{}'", lineno + 1, line),
                "self-loop",
            ));
        }
        pairs.push((lineno + 1, tokens[0], tokens[1]));
    }

    let mut labels: Vec<&str> = pairs
        .iter()
        .flat_map(|&(_, a, b)| [a, b])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if labels.iter().all(|l| l.parse::<u64>().is_ok()) {
        labels.sort_by_key(|l| (l.parse::<u64>().unwrap(), *l));
    }
    let ids: HashMap<&str, NodeId> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let lookup = |token: &str| ids[token];

    let mut edges: Vec<(NodeId, NodeId, usize)> = pairs
        .iter()
        .map(|&(line, a, b)| {
            let (u, v) = (lookup(a), lookup(b));
            (u.min(v), u.max(v), line)
        })
        .collect();
    edges.sort_unstable();
    if let Some(w) = edges
        .windows(2)
        .find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1))
    {
        return Err(Error::schema(
            format!("line {} '{} {}'", w[1].2, labels[w[1].0], labels[w[1].1]),
            "duplicate edge",
        ));
    }
    let n = labels.len();
    let graph = Graph::from_canonical(n, edges.into_iter().map(|(u, v, _)| (u, v)).collect());
    let identity = labels.iter().enumerate().all(|(i, l)| *l == i.to_string());
    if identity {
        Ok(graph)
    } else {
        graph.with_labels(labels.into_iter().map(str::to_owned).collect())
    }
}
