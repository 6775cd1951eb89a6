//! Seeded model networks: orthogonal lattices, perturbed lattices joined by
//! Delaunay triangulation, and Watts-Strogatz style rewirings.
//!
//! All randomness comes from ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded with
//! `seed_from_u64`, one fresh stream per call, so outputs depend only on the
//! arguments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::delaunay::delaunay;
use crate::error::{Error, Result};
use crate::graph::{Coord, Graph, NodeId};

fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Orthogonal `rows x cols` lattice. Node `(r, c)` has id `r * cols + c` and
/// coordinates `(c, r)`. Periodic lattices wrap both directions into a torus.
pub fn lattice(rows: usize, cols: usize, periodic: bool) -> Result<Graph> {
    if rows < 2 || cols < 2 {
        return Err(Error::input(format!(
            "lattice needs at least 2x2 nodes, got {rows}x{cols}"
        )));
    }
    if periodic && (rows < 3 || cols < 3) {
        // a 2-wide torus would need parallel edges
        return Err(Error::input(format!(
            "periodic lattice needs at least 3x3 nodes, got {rows}x{cols}"
        )));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            } else if periodic {
                edges.push((id(r, 0), id(r, c)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            } else if periodic {
                edges.push((id(0, c), id(r, c)));
            }
        }
    }
    edges.sort_unstable();
    let coords = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| [c as f64, r as f64]))
        .collect();
    Graph::from_canonical(rows * cols, edges).with_coords(coords)
}

/// Offsets each coordinate component independently by a uniform draw in
/// `[-delta, delta]`.
pub fn perturb_coords(coords: &[Coord], delta: f64, seed: u64) -> Result<Vec<Coord>> {
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::input(format!(
            "perturbation delta must be finite and >= 0, got {delta}"
        )));
    }
    if delta == 0.0 {
        return Ok(coords.to_vec());
    }
    let mut rng = rng(seed);
    Ok(coords
        .iter()
        .map(|&[x, y]| {
            let dx = rng.random_range(-delta..=delta);
            let dy = rng.random_range(-delta..=delta);
            [x + dx, y + dy]
        })
        .collect())
}

/// Lattice coordinates perturbed by `delta`, then connected by their Delaunay
/// triangulation. The unperturbed lattice is cocircular everywhere, so
/// `delta == 0` is reported as degenerate.
pub fn perturbed_delaunay(rows: usize, cols: usize, delta: f64, seed: u64) -> Result<Graph> {
    let base = lattice(rows, cols, false)?;
    let coords = perturb_coords(base.coords().expect("lattice has coords"), delta, seed)?;
    delaunay(&coords)
}

/// Visits the edges `(u, v)`, `u < v`, in ascending order and rewires each with
/// probability `p`: `u` is kept and `v` is replaced by a node drawn uniformly
/// from those that are neither `u` nor currently adjacent to `u`.
///
/// Edge count and simplicity are preserved. An edge whose `u` is already
/// adjacent to every other node is left in place.
pub fn ws_rewire(graph: &Graph, p: f64, seed: u64) -> Result<Graph> {
    ws_rewire_logged(graph, p, seed).map(|(g, _)| g)
}

/// One endpoint replacement: edge `(kept, removed)` became `(kept, added)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rewiring {
    pub kept: NodeId,
    pub removed: NodeId,
    pub added: NodeId,
}

/// [`ws_rewire`] that also reports every replacement performed, in visiting order.
pub fn ws_rewire_logged(graph: &Graph, p: f64, seed: u64) -> Result<(Graph, Vec<Rewiring>)> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!(
            "rewiring probability must lie in [0, 1], got {p}"
        )));
    }
    let n = graph.node_count();
    let mut adjacency: Vec<Vec<bool>> = vec![vec![false; n]; n];
    for &(u, v) in graph.edges() {
        adjacency[u][v] = true;
        adjacency[v][u] = true;
    }
    let mut rng = rng(seed);
    let mut performed = Vec::new();
    for &(u, v) in graph.edges() {
        if rng.random::<f64>() >= p {
            continue;
        }
        let candidates: Vec<NodeId> = (0..n).filter(|&w| w != u && !adjacency[u][w]).collect();
        if candidates.is_empty() {
            log::warn!("edge ({u}, {v}) left unrewired: node {u} is adjacent to every other node");
            continue;
        }
        let w = candidates[rng.random_range(0..candidates.len())];
        adjacency[u][v] = false;
        adjacency[v][u] = false;
        adjacency[u][w] = true;
        adjacency[w][u] = true;
        performed.push(Rewiring {
            kept: u,
            removed: v,
            added: w,
        });
    }
    let edges = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .filter(|&(u, v)| adjacency[u][v])
        .collect();
    let rewired = Graph::from_canonical(n, edges);
    let rewired = match graph.coords() {
        Some(coords) => rewired.with_coords(coords.to_vec())?,
        None => rewired,
    };
    Ok((rewired, performed))
}

/// Parameters for one of the model families.
///
/// A nonzero `delta` selects the perturbed Delaunay lattice; otherwise the
/// orthogonal lattice is built and, if `rewire_p > 0`, rewired.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub rows: usize,
    pub cols: usize,
    pub periodic: bool,
    pub delta: f64,
    pub rewire_p: f64,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn lattice(rows: usize, cols: usize, periodic: bool) -> Self {
        GeneratorConfig {
            rows,
            cols,
            periodic,
            delta: 0.0,
            rewire_p: 0.0,
            seed: 0,
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        if self.delta != 0.0 && self.rewire_p != 0.0 {
            return Err(Error::input("perturbation and rewiring cannot be combined"));
        }
        if self.delta != 0.0 {
            if self.periodic {
                return Err(Error::input(
                    "perturbed Delaunay lattices are never periodic",
                ));
            }
            return perturbed_delaunay(self.rows, self.cols, self.delta, self.seed);
        }
        let base = lattice(self.rows, self.cols, self.periodic)?;
        if self.rewire_p != 0.0 {
            ws_rewire(&base, self.rewire_p, self.seed)
        } else {
            Ok(base)
        }
    }
}
