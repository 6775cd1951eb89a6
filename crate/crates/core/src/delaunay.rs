//! Delaunay triangulation of planar point sets.
//!
//! Triangulation is delegated to `spade`, which evaluates orientation and
//! in-circle tests with adaptive-precision predicates. Perturbations as small
//! as 1e-12 on unit-spaced lattices stay far above the f64 resolution of the
//! input coordinates, so the exact predicates always decide them. Point sets
//! with an exactly cocircular quadruple on an interior edge have no unique
//! triangulation and are rejected.

use spade::{DelaunayTriangulation, HasPosition, Point2, Triangulation as _};

use crate::error::{Error, Result};
use crate::graph::{Coord, Graph, NodeId};

#[derive(Debug, Clone, Copy)]
struct Site {
    index: usize,
    position: Point2<f64>,
}

impl HasPosition for Site {
    type Scalar = f64;

    fn position(&self) -> Point2<f64> {
        self.position
    }
}

/// Edges, triangles and hull of a planar triangulation, indexed by input point.
#[derive(Debug, Clone)]
pub struct Triangulation {
    pub edges: Vec<(NodeId, NodeId)>,
    /// Counter-clockwise triangles.
    pub triangles: Vec<[NodeId; 3]>,
    pub hull_size: usize,
}

/// Delaunay graph over `coords`, carrying the coordinates.
pub fn delaunay(coords: &[Coord]) -> Result<Graph> {
    let tri = triangulate(coords)?;
    Graph::from_canonical(coords.len(), tri.edges).with_coords(coords.to_vec())
}

pub fn triangulate(coords: &[Coord]) -> Result<Triangulation> {
    if coords.len() < 3 {
        return Err(Error::Degenerate(format!(
            "triangulation needs at least 3 points, got {}",
            coords.len()
        )));
    }
    let mut dt: DelaunayTriangulation<Site> = DelaunayTriangulation::new();
    for (index, &[x, y]) in coords.iter().enumerate() {
        let before = dt.num_vertices();
        dt.insert(Site {
            index,
            position: Point2::new(x, y),
        })
        .map_err(|e| Error::Degenerate(format!("point {index} ({x}, {y}) rejected: {e:?}")))?;
        if dt.num_vertices() == before {
            return Err(Error::Degenerate(format!(
                "point {index} ({x}, {y}) duplicates an earlier point"
            )));
        }
    }
    if dt.num_inner_faces() == 0 {
        return Err(Error::Degenerate("all points are collinear".into()));
    }

    let mut edges = Vec::with_capacity(dt.num_undirected_edges());
    for edge in dt.undirected_edges() {
        let [a, b] = edge.vertices().map(|v| v.data().index);
        edges.push((a.min(b), a.max(b)));
        let directed = edge.as_directed();
        if let (Some(c), Some(d)) = (directed.opposite_vertex(), directed.rev().opposite_vertex()) {
            let p = |v: spade::handles::VertexHandle<Site>| robust::Coord {
                x: v.position().x,
                y: v.position().y,
            };
            let [va, vb] = edge.vertices();
            if robust::incircle(p(va), p(vb), p(c), p(d)) == 0.0 {
                return Err(Error::Degenerate(format!(
                    "points {}, {}, {}, {} are exactly cocircular; perturb the coordinates",
                    a,
                    b,
                    c.data().index,
                    d.data().index
                )));
            }
        }
    }
    edges.sort_unstable();

    let triangles = dt
        .inner_faces()
        .map(|face| face.vertices().map(|v| v.data().index))
        .collect();
    Ok(Triangulation {
        edges,
        triangles,
        hull_size: dt.convex_hull_size(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{lattice, perturb_coords};

    #[test]
    fn single_triangle() {
        let tri = triangulate(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert_eq!(tri.edges, vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(tri.triangles.len(), 1);
    }

    #[test]
    fn perturbed_square_has_one_diagonal() {
        let square = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]];
        let coords = perturb_coords(&square, 1e-3, 5).unwrap();
        let g = delaunay(&coords).unwrap();
        // 3n - 3 - h with n = h = 4
        assert_eq!(g.edge_count(), 5);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            triangulate(&[[0.0, 0.0], [1.0, 1.0]]),
            Err(Error::Degenerate(_))
        ));
        let collinear = [[0.0, 0.0], [1.0, 1.0], [2.0, 2.0], [3.0, 3.0]];
        assert!(matches!(triangulate(&collinear), Err(Error::Degenerate(_))));
        let duplicate = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 0.0]];
        assert!(
            matches!(triangulate(&duplicate), Err(Error::Degenerate(m)) if m.contains("duplicates"))
        );
    }

    #[test]
    fn perfect_lattice_is_cocircular() {
        let g = lattice(4, 4, false).unwrap();
        let err = triangulate(g.coords().unwrap()).unwrap_err();
        assert!(matches!(err, Error::Degenerate(m) if m.contains("cocircular")));
    }
}
