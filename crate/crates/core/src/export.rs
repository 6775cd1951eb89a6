//! SBN and signature exporters.
//!
//! Real numbers are written with 17 significant digits in scientific
//! notation (`2.1944035651254262e0`), which round-trips every f64 exactly.
//!
//! * SBN CSV: header `a,b,weight`, one row per pair with `a < b`, ascending.
//! * Signature CSV: header `L,edge_count,mean,std`; `mean` and `std` are empty
//!   when no pair lies at distance `L`.
//! * GraphML: undirected graph, nodes `n0..n{N-1}` with optional `x`/`y`
//!   doubles, edges carrying a `weight` double; graph-level `L` and `stat`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use quick_xml::events::Event;
use quick_xml::Reader;

use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::sbn::{SbnGraph, SignatureRow};

pub type WeightMap = BTreeMap<(NodeId, NodeId), f64>;

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_error(e: csv::Error) -> Error {
    Error::schema("csv", e.to_string())
}

pub fn sbn_to_csv(sbn: &SbnGraph<'_>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["a", "b", "weight"])
        .expect("in-memory write");
    for (&(a, b), &weight) in sbn.weights() {
        w.write_record([a.to_string(), b.to_string(), fmt_f64(weight)])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn parse_sbn_csv(text: &str) -> Result<WeightMap> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(csv_error)?;
    if header != vec!["a", "b", "weight"] {
        return Err(Error::schema("csv header", "expected a,b,weight"));
    }
    let mut weights = WeightMap::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(csv_error)?;
        let bad =
            |what: &str| Error::schema(format!("csv row {}", row + 1), format!("invalid {what}"));
        let a: NodeId = record[0].parse().map_err(|_| bad("a"))?;
        let b: NodeId = record[1].parse().map_err(|_| bad("b"))?;
        let w: f64 = record[2].parse().map_err(|_| bad("weight"))?;
        weights.insert((a.min(b), a.max(b)), w);
    }
    Ok(weights)
}

pub fn signature_to_csv(rows: &[SignatureRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["L", "edge_count", "mean", "std"])
        .expect("in-memory write");
    for row in rows {
        w.write_record([
            row.length.to_string(),
            row.edge_count.to_string(),
            row.mean_weight.map(fmt_f64).unwrap_or_default(),
            row.std_weight.map(fmt_f64).unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn sbn_to_graphml(sbn: &SbnGraph<'_>) -> String {
    let base = sbn.base();
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    out.push_str("  <key id=\"L\" for=\"graph\" attr.name=\"L\" attr.type=\"int\"/>\n");
    out.push_str("  <key id=\"stat\" for=\"graph\" attr.name=\"stat\" attr.type=\"string\"/>\n");
    if base.coords().is_some() {
        out.push_str("  <key id=\"x\" for=\"node\" attr.name=\"x\" attr.type=\"double\"/>\n");
        out.push_str("  <key id=\"y\" for=\"node\" attr.name=\"y\" attr.type=\"double\"/>\n");
    }
    out.push_str("  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n");
    out.push_str("  <graph id=\"sbn\" edgedefault=\"undirected\">\n");
    let _ = writeln!(out, "    <data key=\"L\">{}</data>", sbn.length());
    let _ = writeln!(out, "    <data key=\"stat\">{}</data>", sbn.stat());
    for node in 0..base.node_count() {
        match base.coords() {
            Some(coords) => {
                let [x, y] = coords[node];
                let _ = writeln!(
                    out,
                    "    <node id=\"n{node}\"><data key=\"x\">{}</data><data key=\"y\">{}</data></node>",
                    fmt_f64(x),
                    fmt_f64(y)
                );
            }
            None => {
                let _ = writeln!(out, "    <node id=\"n{node}\"/>");
            }
        }
    }
    for (&(a, b), &w) in sbn.weights() {
        let _ = writeln!(
            out,
            "    <edge source=\"n{a}\" target=\"n{b}\"><data key=\"weight\">{}</data></edge>",
            fmt_f64(w)
        );
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

/// Reads the edge weights back from GraphML written by [`sbn_to_graphml`].
pub fn parse_sbn_graphml(text: &str) -> Result<WeightMap> {
    let xml_err = |e: &dyn std::fmt::Display| Error::schema("graphml", e.to_string());
    let node_id = |raw: &[u8]| -> Result<NodeId> {
        std::str::from_utf8(raw)
            .ok()
            .and_then(|s| s.strip_prefix('n'))
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| {
                Error::schema(
                    "graphml edge",
                    format!("bad node id {:?}", String::from_utf8_lossy(raw)),
                )
            })
    };

    let mut reader = Reader::from_str(text);
    let mut weights = WeightMap::new();
    let mut edge: Option<(NodeId, NodeId)> = None;
    let mut in_weight = false;
    loop {
        match reader.read_event().map_err(|e| xml_err(&e))? {
            Event::Start(e) if e.name().as_ref() == b"edge" => {
                let (mut source, mut target) = (None, None);
                for attr in e.attributes() {
                    let attr = attr.map_err(|e| xml_err(&e))?;
                    match attr.key.as_ref() {
                        b"source" => source = Some(node_id(&attr.value)?),
                        b"target" => target = Some(node_id(&attr.value)?),
                        _ => {}
                    }
                }
                match (source, target) {
                    (Some(a), Some(b)) => edge = Some((a.min(b), a.max(b))),
                    _ => return Err(Error::schema("graphml edge", "missing source or target")),
                }
            }
            Event::Start(e) if e.name().as_ref() == b"data" && edge.is_some() => {
                in_weight = e
                    .attributes()
                    .flatten()
                    .any(|a| a.key.as_ref() == b"key" && a.value.as_ref() == b"weight");
            }
            Event::Text(t) if in_weight => {
                let key = edge.expect("inside an edge");
                let raw = std::str::from_utf8(t.as_ref()).map_err(|e| xml_err(&e))?;
                let w: f64 = raw.trim().parse().map_err(|_| {
                    Error::schema(
                        format!("graphml edge {key:?}"),
                        format!("bad weight {raw:?}"),
                    )
                })?;
                weights.insert(key, w);
            }
            Event::End(e) if e.name().as_ref() == b"data" => in_weight = false,
            Event::End(e) if e.name().as_ref() == b"edge" => edge = None,
            Event::Eof => break,
            _ => {}
        }
    }
    Ok(weights)
}
