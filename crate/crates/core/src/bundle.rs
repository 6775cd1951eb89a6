//! Leveled DAGs and the simple bundles extracted from them.
//!
//! Orienting every edge that joins consecutive BFS levels away from the source
//! (and dropping edges inside a level) yields a DAG whose source-to-`d` paths
//! are exactly the shortest paths. The simple bundle between the source and a
//! destination `d` at level `L` is the part of that DAG lying on such a path:
//! everything backward-reachable from `d`. Bundles are kept as leveled
//! sub-DAGs; explicit path lists are only produced on request.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bfs_hierarchy, Graph, HierarchyDecomposition, NodeId};

/// Directed link `(from, to)` with `level(to) == level(from) + 1`.
pub type Link = (NodeId, NodeId);

/// Enumeration cap used when callers have no better bound.
pub const DEFAULT_PATH_CAP: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct LeveledDag {
    hierarchy: HierarchyDecomposition,
    links: Vec<Link>,
    incoming: Vec<Vec<NodeId>>,
    outgoing: Vec<Vec<NodeId>>,
}

impl LeveledDag {
    pub fn hierarchy(&self) -> &HierarchyDecomposition {
        &self.hierarchy
    }

    pub fn source(&self) -> NodeId {
        self.hierarchy.source()
    }

    /// All links, sorted by `(level(from), from, to)`.
    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn incoming(&self, node: NodeId) -> &[NodeId] {
        &self.incoming[node]
    }

    pub fn outgoing(&self, node: NodeId) -> &[NodeId] {
        &self.outgoing[node]
    }
}

/// Orients the edges joining consecutive levels of `hierarchy` away from its source.
pub fn leveled_dag(graph: &Graph, hierarchy: &HierarchyDecomposition) -> Result<LeveledDag> {
    let n = graph.node_count();
    if hierarchy.node_count() != n {
        return Err(Error::input(format!(
            "hierarchy covers {} nodes but the graph has {n}",
            hierarchy.node_count()
        )));
    }
    if bfs_hierarchy(graph, hierarchy.source())? != *hierarchy {
        return Err(Error::input(format!(
            "hierarchy from node {} was not produced from this graph",
            hierarchy.source()
        )));
    }
    Ok(build_dag(graph, hierarchy.clone()))
}

fn build_dag(graph: &Graph, hierarchy: HierarchyDecomposition) -> LeveledDag {
    let n = graph.node_count();
    let mut links = Vec::new();
    let mut incoming = vec![Vec::new(); n];
    let mut outgoing = vec![Vec::new(); n];
    for (h, frontier) in hierarchy.frontiers().iter().enumerate() {
        for &u in frontier {
            for &v in graph.neighbors(u) {
                if hierarchy.level(v) == Some(h + 1) {
                    links.push((u, v));
                    outgoing[u].push(v);
                    incoming[v].push(u);
                }
            }
        }
    }
    LeveledDag {
        hierarchy,
        links,
        incoming,
        outgoing,
    }
}

/// Convenience: BFS from `source` followed by [`leveled_dag`].
pub fn dag_from(graph: &Graph, source: NodeId) -> Result<LeveledDag> {
    Ok(build_dag(graph, bfs_hierarchy(graph, source)?))
}

/// All hierarchy-descending paths from a source to one destination, merged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleBundle {
    source: NodeId,
    destination: NodeId,
    #[serde(rename = "levels")]
    level_nodes: Vec<Vec<NodeId>>,
    #[serde(rename = "links")]
    level_links: Vec<Vec<Link>>,
}

impl SimpleBundle {
    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn destination(&self) -> NodeId {
        self.destination
    }

    /// Number of hops `L` from source to destination.
    pub fn length(&self) -> usize {
        self.level_links.len()
    }

    /// Nodes per level, `0..=L`, each list ascending.
    pub fn level_nodes(&self) -> &[Vec<NodeId>] {
        &self.level_nodes
    }

    /// `level_links()[h - 1]` holds the links from level `h - 1` to level `h`,
    /// sorted by `(from, to)`.
    pub fn level_links(&self) -> &[Vec<Link>] {
        &self.level_links
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.level_nodes.iter().map(Vec::len).collect()
    }

    pub fn links_per_level(&self) -> Vec<usize> {
        self.level_links.iter().map(Vec::len).collect()
    }

    pub fn node_count(&self) -> usize {
        self.level_nodes.iter().map(Vec::len).sum()
    }

    pub fn links(&self) -> impl Iterator<Item = Link> + '_ {
        self.level_links.iter().flatten().copied()
    }

    pub fn contains_node(&self, node: NodeId) -> bool {
        self.level_nodes
            .iter()
            .any(|level| level.binary_search(&node).is_ok())
    }

    /// Successors of each non-destination node inside the bundle.
    pub(crate) fn successors(&self) -> HashMap<NodeId, Vec<NodeId>> {
        let mut out: HashMap<NodeId, Vec<NodeId>> = HashMap::new();
        for (u, v) in self.links() {
            out.entry(u).or_default().push(v);
        }
        out
    }
}

/// Extracts the bundle from the DAG's source to `destination`, or `None` when
/// the destination is unreachable.
pub fn extract_bundle(dag: &LeveledDag, destination: NodeId) -> Result<Option<SimpleBundle>> {
    let source = dag.source();
    if destination >= dag.hierarchy.node_count() {
        return Err(Error::input(format!(
            "destination {destination} does not exist"
        )));
    }
    if destination == source {
        return Err(Error::input(format!(
            "destination {destination} equals the source"
        )));
    }
    let Some(length) = dag.hierarchy.level(destination) else {
        return Ok(None);
    };

    let mut level_nodes = vec![Vec::new(); length + 1];
    let mut level_links = vec![Vec::new(); length];
    level_nodes[length].push(destination);
    for h in (1..=length).rev() {
        let mut previous = Vec::new();
        for &v in &level_nodes[h] {
            for &u in dag.incoming(v) {
                level_links[h - 1].push((u, v));
                previous.push(u);
            }
        }
        previous.sort_unstable();
        previous.dedup();
        level_links[h - 1].sort_unstable();
        level_nodes[h - 1] = previous;
    }
    debug_assert_eq!(level_nodes[0], [source]);
    Ok(Some(SimpleBundle {
        source,
        destination,
        level_nodes,
        level_links,
    }))
}

/// Bundles to every node at level `length` of the DAG, ordered by destination.
pub fn bundles_at(dag: &LeveledDag, length: usize) -> Result<Vec<SimpleBundle>> {
    if length == 0 {
        return Err(Error::input("bundle length must be at least 1"));
    }
    dag.hierarchy
        .frontier(length)
        .iter()
        .map(|&d| extract_bundle(dag, d).map(|b| b.expect("frontier nodes are reachable")))
        .collect()
}

pub fn all_bundles(graph: &Graph, source: NodeId, length: usize) -> Result<Vec<SimpleBundle>> {
    if length == 0 {
        return Err(Error::input("bundle length must be at least 1"));
    }
    bundles_at(&dag_from(graph, source)?, length)
}

/// Exact number of source-to-destination paths in the bundle.
pub fn count_paths(bundle: &SimpleBundle) -> Result<u128> {
    let mut counts: HashMap<NodeId, u128> = HashMap::from([(bundle.source, 1)]);
    for cut in &bundle.level_links {
        for &(u, v) in cut {
            let add = counts[&u];
            let entry = counts.entry(v).or_insert(0);
            *entry = entry.checked_add(add).ok_or(Error::Overflow)?;
        }
    }
    Ok(counts[&bundle.destination])
}

/// Lists every path, in lexicographic order, with an explicit depth-first
/// stack: at a branching node the first link continues the current path and
/// the remaining links are pushed for later.
pub fn enumerate_paths(bundle: &SimpleBundle, cap: usize) -> Result<Vec<Vec<NodeId>>> {
    if cap == 0 {
        return Err(Error::input("enumeration cap must be at least 1"));
    }
    let successors = bundle.successors();
    let mut paths = Vec::new();
    let mut path: Vec<NodeId> = Vec::with_capacity(bundle.length() + 1);
    let mut stack = vec![(0usize, bundle.source)];
    while let Some((depth, start)) = stack.pop() {
        path.truncate(depth);
        path.push(start);
        let mut node = start;
        while let Some(next) = successors.get(&node) {
            for &alternative in next[1..].iter().rev() {
                stack.push((path.len(), alternative));
            }
            node = next[0];
            path.push(node);
        }
        if paths.len() == cap {
            return Err(Error::CapacityExceeded {
                cap,
                found: paths.len() + 1,
            });
        }
        paths.push(path.clone());
    }
    paths.sort_unstable();
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::lattice;

    pub(crate) fn eleven_node_graph() -> Graph {
        Graph::from_edges(
            11,
            [(1, 4), (1, 5), (4, 7), (4, 8), (5, 7), (7, 10), (8, 10)],
        )
        .unwrap()
    }

    fn path_graph(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn eleven_node_dag_links() {
        let dag = dag_from(&eleven_node_graph(), 1).unwrap();
        assert_eq!(
            dag.links(),
            &[(1, 4), (1, 5), (4, 7), (4, 8), (5, 7), (7, 10), (8, 10)]
        );
    }

    #[test]
    fn path_dag_links() {
        let dag = dag_from(&path_graph(3), 0).unwrap();
        assert_eq!(dag.links(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn intra_level_edges_dropped() {
        // triangle 0-1-2: 1 and 2 share level 1
        let g = Graph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(dag_from(&g, 0).unwrap().links(), &[(0, 1), (0, 2)]);
    }

    #[test]
    fn mismatched_hierarchy() {
        let g = path_graph(4);
        let other = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let h = bfs_hierarchy(&other, 0).unwrap();
        assert!(leveled_dag(&g, &h).is_err());
        let small = bfs_hierarchy(&path_graph(3), 0).unwrap();
        assert!(leveled_dag(&g, &small).is_err());
    }

    #[test]
    fn lattice_link_count_matches_shell_edges() {
        let g = lattice(5, 5, false).unwrap();
        let dag = dag_from(&g, 12).unwrap();
        let manhattan = |v: usize| (v / 5).abs_diff(2) + (v % 5).abs_diff(2);
        let expected = g
            .edges()
            .iter()
            .filter(|&&(u, v)| manhattan(u).abs_diff(manhattan(v)) == 1)
            .count();
        assert_eq!(dag.links().len(), expected);
    }

    #[test]
    fn eleven_node_bundle() {
        let dag = dag_from(&eleven_node_graph(), 1).unwrap();
        let bundle = extract_bundle(&dag, 10).unwrap().unwrap();
        assert_eq!(bundle.length(), 3);
        assert_eq!(
            bundle.level_nodes(),
            &[vec![1], vec![4, 5], vec![7, 8], vec![10]]
        );
        assert_eq!(count_paths(&bundle).unwrap(), 3);
        let paths = enumerate_paths(&bundle, 10).unwrap();
        assert_eq!(
            paths,
            vec![vec![1, 4, 7, 10], vec![1, 4, 8, 10], vec![1, 5, 7, 10]]
        );
    }

    #[test]
    fn chain_bundle() {
        let dag = dag_from(&path_graph(4), 0).unwrap();
        let bundle = extract_bundle(&dag, 3).unwrap().unwrap();
        assert_eq!(bundle.links_per_level(), vec![1, 1, 1]);
        assert_eq!(enumerate_paths(&bundle, 1).unwrap(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn unreachable_and_invalid_destinations() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let dag = dag_from(&g, 0).unwrap();
        assert_eq!(extract_bundle(&dag, 3).unwrap(), None);
        assert!(extract_bundle(&dag, 0).is_err());
        assert!(extract_bundle(&dag, 9).is_err());
    }

    #[test]
    fn bundle_excludes_dead_ends() {
        // 2 is at level 2 but not on the way to 3
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (1, 4), (4, 3)]).unwrap();
        let dag = dag_from(&g, 0).unwrap();
        let b = extract_bundle(&dag, 3).unwrap().unwrap();
        assert!(!b.contains_node(2));
        assert_eq!(b.level_nodes(), &[vec![0], vec![1], vec![4], vec![3]]);
    }

    #[test]
    fn enumeration_cap() {
        let dag = dag_from(&eleven_node_graph(), 1).unwrap();
        let bundle = extract_bundle(&dag, 10).unwrap().unwrap();
        assert!(matches!(
            enumerate_paths(&bundle, 2),
            Err(Error::CapacityExceeded { cap: 2, found: 3 })
        ));
        assert_eq!(enumerate_paths(&bundle, 3).unwrap().len(), 3);
        assert!(enumerate_paths(&bundle, 0).is_err());
    }

    fn binomial(n: u128, k: u128) -> u128 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn lattice_counts_are_binomial() {
        let g = lattice(15, 15, false).unwrap();
        let center = 7 * 15 + 7;
        let dag = dag_from(&g, center).unwrap();
        for dx in 0..=7usize {
            for dy in 0..=(7 - dx) {
                if dx + dy == 0 {
                    continue;
                }
                let dest = (7 + dy) * 15 + 7 + dx;
                let b = extract_bundle(&dag, dest).unwrap().unwrap();
                let l = (dx + dy) as u128;
                assert_eq!(
                    count_paths(&b).unwrap(),
                    binomial(l, dx as u128),
                    "dx={dx} dy={dy}"
                );
            }
        }
    }

    #[test]
    fn count_overflow_detected() {
        // 130 stacked diamonds give 2^130 paths
        let mut edges = Vec::new();
        for k in 0..130 {
            let base = 3 * k;
            edges.extend([
                (base, base + 1),
                (base, base + 2),
                (base + 1, base + 3),
                (base + 2, base + 3),
            ]);
        }
        let g = Graph::from_edges(3 * 130 + 1, edges).unwrap();
        let dag = dag_from(&g, 0).unwrap();
        let b = extract_bundle(&dag, 3 * 130).unwrap().unwrap();
        assert!(matches!(count_paths(&b), Err(Error::Overflow)));
        let b = extract_bundle(&dag, 3 * 100).unwrap().unwrap();
        assert_eq!(count_paths(&b).unwrap(), 1u128 << 100);
    }

    #[test]
    fn all_bundles_shells() {
        let g = lattice(15, 15, false).unwrap();
        let bundles = all_bundles(&g, 112, 2).unwrap();
        let dests: Vec<_> = bundles.iter().map(SimpleBundle::destination).collect();
        let mut expected: Vec<_> = (0..225)
            .filter(|&v: &usize| (v / 15).abs_diff(7) + (v % 15).abs_diff(7) == 2)
            .collect();
        expected.sort_unstable();
        assert_eq!(dests, expected);
        assert_eq!(expected.len(), 8);

        assert!(all_bundles(&g, 112, 15).unwrap().is_empty());
        assert!(all_bundles(&g, 112, 0).is_err());

        let corner = all_bundles(&lattice(7, 7, false).unwrap(), 0, 12).unwrap();
        assert_eq!(corner.len(), 1);
        assert_eq!(corner[0].destination(), 48);
        assert_eq!(count_paths(&corner[0]).unwrap(), binomial(12, 6));
    }

    #[test]
    fn lattice_dihedral_symmetry() {
        // rotating/reflecting the 15x15 lattice about its center maps bundles
        // onto bundles with identical per-level link counts
        let g = lattice(15, 15, false).unwrap();
        let dag = dag_from(&g, 112).unwrap();
        let to_rc = |v: usize| ((v / 15) as i64 - 7, (v % 15) as i64 - 7);
        let from_rc = |(r, c): (i64, i64)| ((r + 7) * 15 + c + 7) as usize;
        type Symmetry = fn((i64, i64)) -> (i64, i64);
        let maps: [Symmetry; 8] = [
            |(r, c)| (r, c),
            |(r, c)| (c, -r),
            |(r, c)| (-r, -c),
            |(r, c)| (-c, r),
            |(r, c)| (r, -c),
            |(r, c)| (-r, c),
            |(r, c)| (c, r),
            |(r, c)| (-c, -r),
        ];
        for l in 1..=6 {
            for b in bundles_at(&dag, l).unwrap() {
                let links = b.links_per_level();
                for map in maps {
                    let image = from_rc(map(to_rc(b.destination())));
                    let other = extract_bundle(&dag, image).unwrap().unwrap();
                    assert_eq!(other.links_per_level(), links);
                }
            }
        }
    }
}
