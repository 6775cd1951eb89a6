use std::path::Path;

use serde::Serializer;
use simple_bundles::{load_graph, GeneratorConfig, Graph, NodeId, Stat};

use crate::{Failure, Lengths};

pub fn parse_stat(s: &str) -> Result<Stat, String> {
    s.parse()
        .map_err(|_| format!("unknown statistic '{s}' (expected mean, min, std or max)"))
}

pub fn serialize_stat<S: Serializer>(stat: &Stat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(stat.name())
}

/// `A-B` (inclusive), a comma list, or a single length; all at least 1.
pub fn parse_lengths(s: &str) -> Result<Lengths, String> {
    let number = |t: &str| {
        t.trim()
            .parse::<usize>()
            .ok()
            .filter(|&l| l >= 1)
            .ok_or_else(|| format!("invalid bundle length '{t}'"))
    };
    let lengths: Vec<usize> = match s.split_once('-') {
        Some((a, b)) => {
            let (a, b) = (number(a)?, number(b)?);
            if a > b {
                return Err(format!("empty length range '{s}'"));
            }
            (a..=b).collect()
        }
        None => s.split(',').map(number).collect::<Result<_, _>>()?,
    };
    Ok(Lengths(lengths))
}

/// Loads a graph file, or builds the graph a generator spec describes.
pub fn load_input(arg: &str, seed: u64) -> Result<Graph, Failure> {
    if Path::new(arg).exists() {
        return Ok(load_graph(arg)?);
    }
    match parse_spec(arg, seed) {
        Some(config) => Ok(config?.generate()?),
        None => Err(Failure::Usage(format!(
            "'{arg}' is neither a file nor a generator spec"
        ))),
    }
}

fn parse_spec(spec: &str, seed: u64) -> Option<Result<GeneratorConfig, Failure>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let kind = *parts.first()?;
    if !matches!(kind, "lattice" | "perturbed-delaunay" | "ws") {
        return None;
    }
    Some(
        spec_config(kind, &parts[1..], seed)
            .ok_or_else(|| Failure::Usage(format!("malformed generator spec '{spec}'"))),
    )
}

fn spec_config(kind: &str, rest: &[&str], seed: u64) -> Option<GeneratorConfig> {
    let (rows, cols) = rest.first()?.split_once('x')?;
    let mut config = GeneratorConfig::lattice(rows.parse().ok()?, cols.parse().ok()?, false);
    config.seed = seed;
    let periodic = |flag: Option<&&str>| match flag {
        None => Some(false),
        Some(&"periodic") => Some(true),
        Some(_) => None,
    };
    match (kind, rest.len()) {
        ("lattice", 1 | 2) => config.periodic = periodic(rest.get(1))?,
        ("perturbed-delaunay", 2) => config.delta = rest[1].parse().ok()?,
        ("ws", 2 | 3) => {
            config.rewire_p = rest[1].parse().ok()?;
            config.periodic = periodic(rest.get(2))?;
        }
        _ => return None,
    }
    Some(config)
}

/// A node given by label when the graph has labels, otherwise by id.
pub fn resolve_node(graph: &Graph, name: &str) -> Result<NodeId, Failure> {
    let node = match graph.labels() {
        Some(labels) => labels.iter().position(|l| l == name),
        None => name.parse().ok(),
    };
    let node = node.ok_or_else(|| Failure::Usage(format!("node '{name}' is not in the graph")))?;
    graph.check_node(node)?;
    Ok(node)
}

pub fn source_or_center(graph: &Graph, source: Option<&str>) -> Result<NodeId, Failure> {
    match source {
        Some(name) => resolve_node(graph, name),
        None => graph
            .central_node()
            .ok_or_else(|| Failure::Usage("graph has no coordinates; pass --source".into())),
    }
}

/// Node name for output: its label if present, otherwise its id.
pub fn node_name(graph: &Graph, node: NodeId) -> String {
    match graph.labels() {
        Some(labels) => labels[node].clone(),
        None => node.to_string(),
    }
}
