//! Simple-bundles networks: for a fixed length `L`, every pair of nodes at
//! distance `L` is linked with a weight summarizing the effective widths of the
//! two directed bundles between them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bundle::{bundles_at, dag_from, LeveledDag, SimpleBundle};
use crate::error::{Error, Result};
use crate::flow::{analyze, BundleSummary};
use crate::graph::{Graph, NodeId};

/// Which statistic of a bundle's per-level widths feeds the SBN weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stat {
    Mean,
    Min,
    Std,
    Max,
}

impl Stat {
    pub const ALL: [Stat; 4] = [Stat::Mean, Stat::Min, Stat::Std, Stat::Max];

    pub fn of(self, summary: &BundleSummary) -> f64 {
        match self {
            Stat::Mean => summary.mean_width,
            Stat::Min => summary.min_width,
            Stat::Std => summary.std_width,
            Stat::Max => summary.max_width,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Stat::Mean => "mean",
            Stat::Min => "min",
            Stat::Std => "std",
            Stat::Max => "max",
        }
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Stat::ALL
            .into_iter()
            .find(|stat| stat.name() == s)
            .ok_or_else(|| {
                Error::input(format!(
                    "unknown statistic '{s}' (expected mean, min, std or max)"
                ))
            })
    }
}

/// Weighted pair network over the nodes of `base`.
#[derive(Debug, Clone)]
pub struct SbnGraph<'g> {
    base: &'g Graph,
    length: usize,
    stat: Stat,
    weights: BTreeMap<(NodeId, NodeId), f64>,
}

impl<'g> SbnGraph<'g> {
    pub fn base(&self) -> &'g Graph {
        self.base
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn stat(&self) -> Stat {
        self.stat
    }

    /// Weights keyed by `(a, b)` with `a < b`.
    pub fn weights(&self) -> &BTreeMap<(NodeId, NodeId), f64> {
        &self.weights
    }

    pub fn weight(&self, a: NodeId, b: NodeId) -> Option<f64> {
        self.weights.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }
}

/// One leveled DAG per source node, shared by every SBN built on the graph.
pub struct AllPairs<'g> {
    graph: &'g Graph,
    dags: Vec<LeveledDag>,
}

impl<'g> AllPairs<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        let dags = (0..graph.node_count())
            .into_par_iter()
            .map(|s| dag_from(graph, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(AllPairs { graph, dags })
    }

    pub fn dag(&self, source: NodeId) -> &LeveledDag {
        &self.dags[source]
    }

    /// Summaries of every directed bundle of length `length`, as
    /// `(source, destination, summary)` ordered by source then destination.
    pub fn directed_summaries(
        &self,
        length: usize,
    ) -> Result<Vec<(NodeId, NodeId, BundleSummary)>> {
        let per_source = self
            .dags
            .par_iter()
            .map(|dag| {
                bundles_at(dag, length)?
                    .iter()
                    .map(|b| Ok((b.source(), b.destination(), analyze(b)?.summary)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(per_source.into_iter().flatten().collect())
    }

    pub fn sbn(&self, length: usize, stat: Stat) -> Result<SbnGraph<'g>> {
        Ok(self
            .sbn_many(length, &[stat])?
            .pop()
            .expect("one stat requested"))
    }

    /// SBNs for several statistics sharing one pass over the bundles.
    pub fn sbn_many(&self, length: usize, stats: &[Stat]) -> Result<Vec<SbnGraph<'g>>> {
        let directed: BTreeMap<(NodeId, NodeId), BundleSummary> = self
            .directed_summaries(length)?
            .into_iter()
            .map(|(s, d, summary)| ((s, d), summary))
            .collect();
        Ok(stats
            .iter()
            .map(|&stat| {
                let weights = directed
                    .iter()
                    .filter(|((a, b), _)| a < b)
                    .map(|(&(a, b), forward)| {
                        let backward = &directed[&(b, a)];
                        ((a, b), (stat.of(forward) + stat.of(backward)) / 2.0)
                    })
                    .collect();
                SbnGraph {
                    base: self.graph,
                    length,
                    stat,
                    weights,
                }
            })
            .collect())
    }
}

/// SBN of `graph` for bundle length `length`: pairs at distance exactly
/// `length`, weighted by the average of the two directed bundles' statistic.
pub fn build_sbn(graph: &Graph, length: usize, stat: Stat) -> Result<SbnGraph<'_>> {
    if length == 0 {
        return Err(Error::input("bundle length must be at least 1"));
    }
    AllPairs::new(graph)?.sbn(length, stat)
}

/// Mean and population standard deviation of the SBN weights at one length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignatureRow {
    pub length: usize,
    pub edge_count: usize,
    pub mean_weight: Option<f64>,
    pub std_weight: Option<f64>,
}

impl SignatureRow {
    pub fn from_sbn(sbn: &SbnGraph<'_>) -> Self {
        let values: Vec<f64> = sbn.weights.values().copied().collect();
        let (mean, std) = mean_std(&values).unzip();
        SignatureRow {
            length: sbn.length,
            edge_count: values.len(),
            mean_weight: mean,
            std_weight: std,
        }
    }
}

pub fn signature(graph: &Graph, lengths: &[usize], stat: Stat) -> Result<Vec<SignatureRow>> {
    if lengths.is_empty() {
        return Err(Error::input("no bundle lengths requested"));
    }
    if lengths.contains(&0) {
        return Err(Error::input("bundle length must be at least 1"));
    }
    let pairs = AllPairs::new(graph)?;
    lengths
        .iter()
        .map(|&l| Ok(SignatureRow::from_sbn(&pairs.sbn(l, stat)?)))
        .collect()
}

/// All bundles leaving `source`, for each requested length.
#[derive(Debug, Clone, Serialize)]
pub struct Morphology {
    pub length: usize,
    pub bundles: Vec<SimpleBundle>,
}

pub fn bundle_morphology(
    graph: &Graph,
    source: NodeId,
    lengths: &[usize],
) -> Result<Vec<Morphology>> {
    let dag = dag_from(graph, source)?;
    lengths
        .iter()
        .map(|&length| {
            Ok(Morphology {
                length,
                bundles: bundles_at(&dag, length)?,
            })
        })
        .collect()
}

/// Mean and population standard deviation, `None` for an empty slice.
pub fn mean_std(values: &[f64]) -> Option<(f64, f64)> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    Some((mean, var.sqrt()))
}

/// Spearman rank correlation with average ranks for ties. `None` when the
/// inputs differ in length, have fewer than two entries, or one of them is
/// constant.
pub fn spearman(a: &[f64], b: &[f64]) -> Option<f64> {
    if a.len() != b.len() || a.len() < 2 {
        return None;
    }
    let (ra, rb) = (ranks(a), ranks(b));
    let (ma, sa) = mean_std(&ra)?;
    let (mb, sb) = mean_std(&rb)?;
    if sa == 0.0 || sb == 0.0 {
        return None;
    }
    let cov = ra
        .iter()
        .zip(&rb)
        .map(|(x, y)| (x - ma) * (y - mb))
        .sum::<f64>()
        / a.len() as f64;
    Some(cov / (sa * sb))
}

fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::lattice;

    fn distinct(values: impl Iterator<Item = f64>) -> Vec<f64> {
        let mut v: Vec<f64> = values.map(|w| (w * 1e9).round() / 1e9).collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    #[test]
    fn lattice_l3_has_two_weights() {
        let g = lattice(7, 7, false).unwrap();
        let sbn = build_sbn(&g, 3, Stat::Mean).unwrap();
        let values = distinct(sbn.weights().values().copied());
        assert_eq!(values.len(), 2);
        assert_eq!(values[0], 1.0);
        assert!((values[1] - 2.1944).abs() < 1e-4);
    }

    #[test]
    fn lattice_l2_weights() {
        let g = lattice(7, 7, false).unwrap();
        let sbn = build_sbn(&g, 2, Stat::Mean).unwrap();
        assert_eq!(distinct(sbn.weights().values().copied()), vec![1.0, 2.0]);
    }

    #[test]
    fn path_graph_weights_are_one() {
        let g = Graph::from_edges(8, (1..8).map(|i| (i - 1, i))).unwrap();
        for l in 1..8 {
            let sbn = build_sbn(&g, l, Stat::Mean).unwrap();
            assert_eq!(sbn.edge_count(), 8 - l);
            assert!(sbn.weights().values().all(|&w| w == 1.0));
        }
    }

    #[test]
    fn l1_reproduces_base_edges() {
        let g = lattice(5, 6, true).unwrap();
        let sbn = build_sbn(&g, 1, Stat::Mean).unwrap();
        assert!(sbn.weights().keys().copied().eq(g.edges().iter().copied()));
        assert!(sbn.weights().values().all(|&w| w == 1.0));
    }

    #[test]
    fn weights_exist_exactly_at_distance() {
        let g = lattice(6, 5, false).unwrap();
        let sbn = build_sbn(&g, 4, Stat::Min).unwrap();
        for a in 0..30usize {
            for b in (a + 1)..30 {
                let d = (a / 5).abs_diff(b / 5) + (a % 5).abs_diff(b % 5);
                assert_eq!(sbn.weight(a, b).is_some(), d == 4);
            }
        }
        assert!(build_sbn(&g, 0, Stat::Mean).is_err());
        assert_eq!(build_sbn(&g, 40, Stat::Mean).unwrap().edge_count(), 0);
    }

    #[test]
    fn torus_directions_agree() {
        let g = lattice(6, 6, true).unwrap();
        let pairs = AllPairs::new(&g).unwrap();
        let directed: BTreeMap<_, _> = pairs
            .directed_summaries(3)
            .unwrap()
            .into_iter()
            .map(|(s, d, sum)| ((s, d), sum.mean_width))
            .collect();
        for (&(a, b), &w) in &directed {
            assert!((w - directed[&(b, a)]).abs() < 1e-12);
        }
    }

    #[test]
    fn stat_ordering() {
        let g = lattice(7, 7, false).unwrap();
        let pairs = AllPairs::new(&g).unwrap();
        for l in 2..=6 {
            let [mean, min, max] = <[_; 3]>::try_from(
                pairs
                    .sbn_many(l, &[Stat::Mean, Stat::Min, Stat::Max])
                    .unwrap(),
            )
            .unwrap();
            for (k, w) in mean.weights() {
                assert!(min.weights()[k] <= w + 1e-12 && *w <= max.weights()[k] + 1e-12);
            }
        }
    }

    #[test]
    fn signature_rows() {
        let g = lattice(7, 7, false).unwrap();
        let rows = signature(&g, &[3, 20], Stat::Mean).unwrap();
        assert_eq!(rows.len(), 2);
        let m = rows[0].mean_weight.unwrap();
        assert!(m > 1.0 && m < 2.1944);
        assert_eq!(rows[1].edge_count, 0);
        assert_eq!(rows[1].mean_weight, None);
        assert!(signature(&g, &[], Stat::Mean).is_err());
    }

    #[test]
    fn morphology_from_corner() {
        let g = lattice(5, 5, false).unwrap();
        let m = bundle_morphology(&g, 0, &[1, 9]).unwrap();
        assert_eq!(m[0].bundles.len(), 2);
        for b in &m[0].bundles {
            assert_eq!(analyze(b).unwrap().summary.mean_width, 1.0);
        }
        assert!(m[1].bundles.is_empty());
    }

    #[test]
    fn stat_parsing() {
        assert_eq!("min".parse::<Stat>().unwrap(), Stat::Min);
        assert!("median".parse::<Stat>().is_err());
    }

    #[test]
    fn spearman_basics() {
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[10.0, 20.0, 30.0]), Some(1.0));
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]), Some(-1.0));
        assert_eq!(spearman(&[1.0, 1.0], &[1.0, 2.0]), None);
        // ties get the average rank
        let r = spearman(&[1.0, 1.0, 2.0, 3.0], &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!((r - 0.9486832980505138).abs() < 1e-12);
    }
}
