//! Undirected simple graphs and breadth-first hierarchy decomposition.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type NodeId = usize;

/// A planar position attached to a node.
pub type Coord = [f64; 2];

/// Immutable undirected simple graph over dense node ids `0..n`.
///
/// Adjacency lists are kept sorted so every traversal visits neighbors in
/// ascending id order.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    node_count: usize,
    edges: Vec<(NodeId, NodeId)>,
    adjacency: Vec<Vec<NodeId>>,
    coords: Option<Vec<Coord>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from an edge list. Each pair may be given in either
    /// orientation; self-loops, duplicates and out-of-range ids are rejected.
    pub fn from_edges(
        node_count: usize,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self> {
        let mut canonical = Vec::new();
        for (index, (u, v)) in edges.into_iter().enumerate() {
            let record = || format!("edge #{index} [{u}, {v}]");
            if u >= node_count || v >= node_count {
                return Err(Error::schema(
                    record(),
                    format!("node id out of range 0..{node_count}"),
                ));
            }
            if u == v {
                return Err(Error::schema(record(), "self-loop"));
            }
            canonical.push((u.min(v), u.max(v)));
        }
        canonical.sort_unstable();
        if let Some(w) = canonical.windows(2).find(|w| w[0] == w[1]) {
            let (u, v) = w[0];
            return Err(Error::schema(format!("edge [{u}, {v}]"), "duplicate edge"));
        }
        Ok(Self::from_canonical(node_count, canonical))
    }

    /// `edges` must already be sorted, unique, loop-free and oriented `u < v`.
    pub(crate) fn from_canonical(node_count: usize, edges: Vec<(NodeId, NodeId)>) -> Self {
        let mut adjacency = vec![Vec::new(); node_count];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            node_count,
            edges,
            adjacency,
            coords: None,
            labels: None,
        }
    }

    pub fn with_coords(mut self, coords: Vec<Coord>) -> Result<Self> {
        if coords.len() != self.node_count {
            return Err(Error::schema(
                "coords",
                format!(
                    "expected {} entries, found {}",
                    self.node_count,
                    coords.len()
                ),
            ));
        }
        if let Some(i) = coords
            .iter()
            .position(|c| !c[0].is_finite() || !c[1].is_finite())
        {
            return Err(Error::schema(
                format!("coords[{i}]"),
                "non-finite coordinate",
            ));
        }
        self.coords = Some(coords);
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.node_count {
            return Err(Error::schema(
                "labels",
                format!(
                    "expected {} entries, found {}",
                    self.node_count,
                    labels.len()
                ),
            ));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted ascending.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn neighbors(&self, node: NodeId) -> &[NodeId] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.adjacency[node].len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.node_count && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn coords(&self) -> Option<&[Coord]> {
        self.coords.as_deref()
    }

    /// External labels, when the graph was read from a labelled edge list.
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn check_node(&self, node: NodeId) -> Result<()> {
        if node < self.node_count {
            Ok(())
        } else {
            Err(Error::input(format!(
                "node {node} does not exist (graph has {} nodes)",
                self.node_count
            )))
        }
    }

    /// The node closest to the centroid of the coordinates, lowest id on ties.
    pub fn central_node(&self) -> Option<NodeId> {
        let coords = self.coords.as_ref()?;
        if coords.is_empty() {
            return None;
        }
        let n = coords.len() as f64;
        let cx = coords.iter().map(|c| c[0]).sum::<f64>() / n;
        let cy = coords.iter().map(|c| c[1]).sum::<f64>() / n;
        let dist = |c: &Coord| (c[0] - cx).powi(2) + (c[1] - cy).powi(2);
        let mut best = 0;
        for (i, c) in coords.iter().enumerate().skip(1) {
            if dist(c) < dist(&coords[best]) {
                best = i;
            }
        }
        Some(best)
    }
}

/// Breadth-first levels around a source node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchyDecomposition {
    source: NodeId,
    level: Vec<Option<usize>>,
    frontiers: Vec<Vec<NodeId>>,
}

impl HierarchyDecomposition {
    pub fn source(&self) -> NodeId {
        self.source
    }

    /// Distance from the source, `None` for unreachable nodes.
    pub fn level(&self, node: NodeId) -> Option<usize> {
        self.level.get(node).copied().flatten()
    }

    /// Nodes at each distance, ascending by id. `frontiers()[0] == [source]`.
    pub fn frontiers(&self) -> &[Vec<NodeId>] {
        &self.frontiers
    }

    pub fn frontier(&self, h: usize) -> &[NodeId] {
        self.frontiers.get(h).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Greatest level reached.
    pub fn eccentricity(&self) -> usize {
        self.frontiers.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.level.len()
    }

    pub fn reachable_count(&self) -> usize {
        self.frontiers.iter().map(Vec::len).sum()
    }
}

/// Assigns every node reachable from `source` its hop distance and groups
/// nodes into per-level frontiers.
pub fn bfs_hierarchy(graph: &Graph, source: NodeId) -> Result<HierarchyDecomposition> {
    graph.check_node(source)?;
    let mut level = vec![None; graph.node_count()];
    let mut frontiers: Vec<Vec<NodeId>> = vec![vec![source]];
    level[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let next = level[u].unwrap() + 1;
        for &v in graph.neighbors(u) {
            if level[v].is_none() {
                level[v] = Some(next);
                if frontiers.len() == next {
                    frontiers.push(Vec::new());
                }
                frontiers[next].push(v);
                queue.push_back(v);
            }
        }
    }
    for frontier in &mut frontiers {
        frontier.sort_unstable();
    }
    Ok(HierarchyDecomposition {
        source,
        level,
        frontiers,
    })
}
