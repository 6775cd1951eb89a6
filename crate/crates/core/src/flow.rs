//! Equilibrium diffusion flow through a bundle and its effective widths.
//!
//! Every node splits the flow it receives evenly over its outgoing bundle
//! links. Starting from a unit at the source, the flow crossing the cut between
//! levels `h - 1` and `h` is a probability distribution over that cut's links;
//! the exponential of its Shannon entropy is the effective width `E_h`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::bundle::{count_paths, Link, SimpleBundle};
use crate::error::{Error, Result};
use crate::graph::NodeId;

/// Tolerance on `sum(p) == 1` accepted by [`exp_entropy`].
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// `exp(-sum p ln p)` with `0 ln 0 = 0`, the effective number of choices
/// among the outcomes of `p`, between 1 and `p.len()`.
pub fn exp_entropy(p: &[f64]) -> Result<f64> {
    if p.is_empty() {
        return Err(Error::input("empty probability list"));
    }
    if let Some(bad) = p.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
        return Err(Error::input(format!("invalid probability {bad}")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::input(format!("probabilities sum to {total}, not 1")));
    }
    let entropy: f64 = p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum();
    Ok(snap_to_bounds(entropy.exp(), p.len() as f64))
}

/// Pulls values within rounding distance of `[1, upper]` onto the bound;
/// anything further out is returned unchanged.
fn snap_to_bounds(value: f64, upper: f64) -> f64 {
    const ROUNDING: f64 = 1e-12;
    if value < 1.0 && value > 1.0 - ROUNDING {
        1.0
    } else if value > upper && value < upper * (1.0 + ROUNDING) {
        upper
    } else {
        value
    }
}

/// Uniform split `1 / outdegree` on every bundle link, grouped by cut.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransitionMatrix {
    levels: Vec<Vec<(Link, f64)>>,
}

impl TransitionMatrix {
    /// Probabilities of the links leaving level `h - 1`, at index `h - 1`.
    pub fn levels(&self) -> &[Vec<(Link, f64)>] {
        &self.levels
    }

    pub fn prob(&self, from: NodeId, to: NodeId) -> Option<f64> {
        self.levels
            .iter()
            .flatten()
            .find(|((u, v), _)| *u == from && *v == to)
            .map(|&(_, p)| p)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Link, f64)> + '_ {
        self.levels.iter().flatten().copied()
    }
}

pub fn transition_matrix(bundle: &SimpleBundle) -> TransitionMatrix {
    let levels = bundle
        .level_links()
        .iter()
        .map(|cut| {
            // links are sorted by origin, so each node's out-links are contiguous
            let mut row = Vec::with_capacity(cut.len());
            for group in cut.chunk_by(|a, b| a.0 == b.0) {
                let p = 1.0 / group.len() as f64;
                row.extend(group.iter().map(|&link| (link, p)));
            }
            row
        })
        .collect();
    TransitionMatrix { levels }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowResult {
    node_flow: BTreeMap<NodeId, f64>,
    link_flow: Vec<Vec<(Link, f64)>>,
    widths: Vec<f64>,
}

impl FlowResult {
    /// Equilibrium flow through each bundle node.
    pub fn node_flow(&self) -> &BTreeMap<NodeId, f64> {
        &self.node_flow
    }

    /// Link flows grouped by cut, in the bundle's link order.
    pub fn link_flow(&self) -> &[Vec<(Link, f64)>] {
        &self.link_flow
    }

    pub fn flow_on(&self, from: NodeId, to: NodeId) -> Option<f64> {
        self.link_flow
            .iter()
            .flatten()
            .find(|((u, v), _)| *u == from && *v == to)
            .map(|&(_, w)| w)
    }

    /// Effective widths `E_1..E_L`.
    pub fn widths(&self) -> &[f64] {
        &self.widths
    }

    /// Total flow crossing each cut; 1 up to rounding.
    pub fn cut_sums(&self) -> Vec<f64> {
        self.link_flow
            .iter()
            .map(|cut| cut.iter().map(|(_, w)| w).sum())
            .collect()
    }
}

/// Propagates a unit of flow from the source level by level:
/// `phi_h = T phi_{h-1}`, `phi = sum_h phi_h`, link flow `w(u->v) = phi(u) T(u->v)`.
pub fn equilibrium_flow(
    bundle: &SimpleBundle,
    transition: &TransitionMatrix,
) -> Result<FlowResult> {
    let matches = transition.levels.len() == bundle.length()
        && transition
            .levels
            .iter()
            .zip(bundle.level_links())
            .all(|(row, cut)| {
                row.len() == cut.len() && row.iter().zip(cut).all(|((l, _), c)| l == c)
            });
    if !matches {
        return Err(Error::input(
            "transition matrix was not built from this bundle",
        ));
    }

    let mut phi: HashMap<NodeId, f64> = HashMap::from([(bundle.source(), 1.0)]);
    let mut link_flow = Vec::with_capacity(bundle.length());
    let mut widths = Vec::with_capacity(bundle.length());
    for row in &transition.levels {
        let mut cut = Vec::with_capacity(row.len());
        for &((u, v), p) in row {
            let w = phi[&u] * p;
            *phi.entry(v).or_insert(0.0) += w;
            cut.push(((u, v), w));
        }
        let flows: Vec<f64> = cut.iter().map(|&(_, w)| w).collect();
        widths.push(exp_entropy(&flows)?);
        link_flow.push(cut);
    }
    Ok(FlowResult {
        node_flow: phi.into_iter().collect(),
        link_flow,
        widths,
    })
}

/// Path count plus mean, population standard deviation, minimum and maximum
/// of the per-level effective widths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BundleSummary {
    pub path_count: u128,
    pub mean_width: f64,
    pub std_width: f64,
    pub min_width: f64,
    pub max_width: f64,
}

pub fn summarize(bundle: &SimpleBundle, flow: &FlowResult) -> Result<BundleSummary> {
    let widths = flow.widths();
    if widths.len() != bundle.length() || widths.is_empty() {
        return Err(Error::input("flow result does not belong to this bundle"));
    }
    let n = widths.len() as f64;
    let mean = widths.iter().sum::<f64>() / n;
    let variance = widths.iter().map(|w| (w - mean).powi(2)).sum::<f64>() / n;
    Ok(BundleSummary {
        path_count: count_paths(bundle)?,
        mean_width: mean,
        std_width: variance.sqrt(),
        min_width: widths.iter().copied().fold(f64::INFINITY, f64::min),
        max_width: widths.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}

/// Transition matrix, flow and summary of one bundle.
#[derive(Debug, Clone, Serialize)]
pub struct BundleAnalysis {
    pub transition: TransitionMatrix,
    pub flow: FlowResult,
    pub summary: BundleSummary,
}

pub fn analyze(bundle: &SimpleBundle) -> Result<BundleAnalysis> {
    let transition = transition_matrix(bundle);
    let flow = equilibrium_flow(bundle, &transition)?;
    let summary = summarize(bundle, &flow)?;
    Ok(BundleAnalysis {
        transition,
        flow,
        summary,
    })
}
