//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the BFS, DAG or flow code under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simple_bundles::{Coord, Graph, NodeId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdos-Renyi style graph: each pair joined with probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.node_count();
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    for &(u, v) in g.edges() {
        d[u][v] = Some(1);
        d[v][u] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Every simple path from `s` to `t` with exactly `length` hops, by exhaustive DFS.
pub fn paths_of_length(g: &Graph, s: NodeId, t: NodeId, length: usize) -> Vec<Vec<NodeId>> {
    fn walk(
        g: &Graph,
        t: NodeId,
        length: usize,
        path: &mut Vec<NodeId>,
        out: &mut Vec<Vec<NodeId>>,
    ) {
        let last = *path.last().unwrap();
        if path.len() == length + 1 {
            if last == t {
                out.push(path.clone());
            }
            return;
        }
        for &v in g.neighbors(last) {
            if !path.contains(&v) {
                path.push(v);
                walk(g, t, length, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(g, t, length, &mut vec![s], &mut out);
    out.sort();
    out
}

/// Union of the given paths: nodes per position and the set of traversed links.
pub struct PathUnion {
    pub levels: Vec<BTreeSet<NodeId>>,
    pub links: BTreeSet<(NodeId, NodeId)>,
}

pub fn union_of(paths: &[Vec<NodeId>]) -> PathUnion {
    let length = paths[0].len() - 1;
    let mut levels = vec![BTreeSet::new(); length + 1];
    let mut links = BTreeSet::new();
    for p in paths {
        for (h, &v) in p.iter().enumerate() {
            levels[h].insert(v);
        }
        for w in p.windows(2) {
            links.insert((w[0], w[1]));
        }
    }
    PathUnion { levels, links }
}

/// Link flows as the total probability mass of the paths using each link,
/// where a path's mass is the product of `1 / outdegree` along it and
/// outdegrees are counted inside the union of the paths.
pub fn path_mass_flows(paths: &[Vec<NodeId>]) -> BTreeMap<(NodeId, NodeId), f64> {
    let union = union_of(paths);
    let mut outdeg: BTreeMap<NodeId, usize> = BTreeMap::new();
    for &(u, _) in &union.links {
        *outdeg.entry(u).or_default() += 1;
    }
    let mut flows = BTreeMap::new();
    for p in paths {
        let mass: f64 = p[..p.len() - 1]
            .iter()
            .map(|u| 1.0 / outdeg[u] as f64)
            .product();
        for w in p.windows(2) {
            *flows.entry((w[0], w[1])).or_insert(0.0) += mass;
        }
    }
    flows
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite coordinate")
}

/// Sign of the orientation of `(a, b, c)`. A floating-point evaluation is
/// trusted only when it clears a generous error bound; otherwise the
/// determinant is recomputed in exact rationals.
pub fn orient_exact(a: Coord, b: Coord, c: Coord) -> i32 {
    let left = (b[0] - a[0]) * (c[1] - a[1]);
    let right = (b[1] - a[1]) * (c[0] - a[0]);
    let det = left - right;
    if det.abs() > 1e-12 * (left.abs() + right.abs()) {
        return det.signum() as i32;
    }
    let [ax, ay, bx, by, cx, cy] = [a[0], a[1], b[0], b[1], c[0], c[1]].map(exact);
    let det = (&bx - &ax) * (&cy - &ay) - (&by - &ay) * (&cx - &ax);
    sign(&det)
}

/// Exact sign of the in-circle determinant; positive when `d` lies strictly
/// inside the circle through the counter-clockwise triangle `(a, b, c)`.
pub fn incircle_exact(a: Coord, b: Coord, c: Coord, d: Coord) -> i32 {
    {
        let row = |p: Coord| {
            let (x, y) = (p[0] - d[0], p[1] - d[1]);
            (x, y, x * x + y * y)
        };
        let (ax, ay, a2) = row(a);
        let (bx, by, b2) = row(b);
        let (cx, cy, c2) = row(c);
        let det = ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx);
        let permanent = ax.abs() * ((by * c2).abs() + (b2 * cy).abs())
            + ay.abs() * ((bx * c2).abs() + (b2 * cx).abs())
            + a2.abs() * ((bx * cy).abs() + (by * cx).abs());
        if det.abs() > 1e-12 * permanent {
            return det.signum() as i32;
        }
    }
    let [dx, dy] = [exact(d[0]), exact(d[1])];
    let row = |p: Coord| {
        let x = exact(p[0]) - &dx;
        let y = exact(p[1]) - &dy;
        let sq = &x * &x + &y * &y;
        (x, y, sq)
    };
    let (ax, ay, a2) = row(a);
    let (bx, by, b2) = row(b);
    let (cx, cy, c2) = row(c);
    let det = &ax * (&by * &c2 - &b2 * &cy) - &ay * (&bx * &c2 - &b2 * &cx)
        + &a2 * (&bx * &cy - &by * &cx);
    sign(&det)
}

fn sign(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Counts points that lie strictly inside some triangle's circumcircle.
pub fn empty_circle_violations(coords: &[Coord], triangles: &[[NodeId; 3]]) -> usize {
    let mut violations = 0;
    for t in triangles {
        let [a, b, c] = t.map(|i| coords[i]);
        let (a, b, c) = if orient_exact(a, b, c) > 0 {
            (a, b, c)
        } else {
            (a, c, b)
        };
        for (i, &p) in coords.iter().enumerate() {
            if !t.contains(&i) && incircle_exact(a, b, c, p) > 0 {
                violations += 1;
            }
        }
    }
    violations
}

/// Number of convex hull vertices (strictly convex corners), brute force.
pub fn hull_size(coords: &[Coord]) -> usize {
    let n = coords.len();
    let mut on_hull = vec![false; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            // (i, j) is a hull edge when every other point is strictly left of it
            let all_left = (0..n)
                .filter(|&k| k != i && k != j)
                .all(|k| orient_exact(coords[i], coords[j], coords[k]) > 0);
            if all_left {
                on_hull[i] = true;
                on_hull[j] = true;
            }
        }
    }
    on_hull.iter().filter(|&&h| h).count()
}

/// Exact big-integer binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}
