use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Serialize;
use simple_bundles::export::{fmt_f64, sbn_to_csv, sbn_to_graphml, signature_to_csv};
use simple_bundles::io::graph_to_json;
use simple_bundles::sbn::mean_std;
use simple_bundles::{
    analyze, bfs_hierarchy, bundle_morphology, bundles_at, dag_from, enumerate_paths,
    extract_bundle, signature, AllPairs, GeneratorConfig, Graph, NodeId,
};

use crate::input::{load_input, node_name, resolve_node, source_or_center};
use crate::{
    svg, BundleArgs, Cli, Command, Failure, Format, HistArgs, Model, MorphologyArgs, SbnArgs,
    SignatureArgs,
};

/// Files produced by one run, written together once the run has succeeded.
struct Outputs {
    files: Vec<(String, String)>,
}

impl Outputs {
    fn new() -> Self {
        Outputs { files: Vec::new() }
    }

    fn add(&mut self, name: impl Into<String>, contents: String) {
        self.files.push((name.into(), contents));
    }

    fn write(self, cli: &Cli) -> Result<Vec<PathBuf>, Failure> {
        let io = |path: &std::path::Path, e: std::io::Error| {
            Failure::Usage(format!("{}: {e}", path.display()))
        };
        std::fs::create_dir_all(&cli.out_dir).map_err(|e| io(&cli.out_dir, e))?;
        self.files
            .into_iter()
            .map(|(name, contents)| {
                let path = cli.out_dir.join(name);
                std::fs::write(&path, contents).map_err(|e| io(&path, e))?;
                Ok(path)
            })
            .collect()
    }
}

#[derive(Serialize)]
struct Metadata<'a> {
    tool: &'static str,
    version: &'static str,
    seed: u64,
    formats: &'a [Format],
    command: &'a Command,
}

fn metadata(cli: &Cli, formats: &[Format]) -> String {
    let meta = Metadata {
        tool: "sbundle",
        version: env!("CARGO_PKG_VERSION"),
        seed: cli.seed,
        formats,
        command: &cli.command,
    };
    serde_json::to_string_pretty(&meta).expect("metadata serializes") + "\n"
}

/// Requested formats, or the default when none were given.
fn formats(cli: &Cli, allowed: &[Format], default: &[Format]) -> Result<Vec<Format>, Failure> {
    if cli.format.is_empty() {
        return Ok(default.to_vec());
    }
    match cli.format.iter().find(|f| !allowed.contains(f)) {
        Some(bad) => Err(Failure::Usage(format!(
            "format {bad:?} is not available for this command (choose from {allowed:?})"
        ))),
        None => Ok(cli.format.clone()),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes") + "\n"
}

pub fn run(cli: &Cli) -> Result<Vec<PathBuf>, Failure> {
    let mut out = Outputs::new();
    let (stem, formats) = match &cli.command {
        Command::Generate { model, name } => generate(cli, model, name.as_deref(), &mut out)?,
        Command::Hist(args) => hist(cli, args, &mut out)?,
        Command::Bundle(args) => bundle(cli, args, &mut out)?,
        Command::Sbn(args) => sbn(cli, args, &mut out)?,
        Command::Signature(args) => signature_cmd(cli, args, &mut out)?,
        Command::Morphology(args) => morphology(cli, args, &mut out)?,
    };
    out.add(format!("{stem}.meta.json"), metadata(cli, &formats));
    out.write(cli)
}

type Planned = (String, Vec<Format>);

fn generate(
    cli: &Cli,
    model: &Model,
    name: Option<&str>,
    out: &mut Outputs,
) -> Result<Planned, Failure> {
    let formats = formats(cli, &[Format::Json], &[Format::Json])?;
    let seed = cli.seed;
    let (config, default_name) = match *model {
        Model::Lattice {
            rows,
            cols,
            periodic,
        } => {
            let suffix = if periodic { "-periodic" } else { "" };
            (
                GeneratorConfig::lattice(rows, cols, periodic),
                format!("lattice-{rows}x{cols}{suffix}"),
            )
        }
        Model::PerturbedDelaunay { rows, cols, delta } => {
            if delta <= 0.0 {
                return Err(Failure::Usage(
                    "perturbed-delaunay needs --delta > 0".into(),
                ));
            }
            let config = GeneratorConfig {
                delta,
                seed,
                ..GeneratorConfig::lattice(rows, cols, false)
            };
            (
                config,
                format!("perturbed-delaunay-{rows}x{cols}-d{delta:e}-s{seed}"),
            )
        }
        Model::Ws {
            rows,
            cols,
            p,
            periodic,
        } => {
            let suffix = if periodic { "-periodic" } else { "" };
            let config = GeneratorConfig {
                rewire_p: p,
                seed,
                ..GeneratorConfig::lattice(rows, cols, periodic)
            };
            (config, format!("ws-{rows}x{cols}-p{p}{suffix}-s{seed}"))
        }
    };
    let graph = config.generate()?;
    let stem = name.map_or(default_name, str::to_owned);
    out.add(format!("{stem}.json"), graph_to_json(&graph));
    Ok((stem, formats))
}

#[derive(Serialize)]
struct HistRow {
    length: usize,
    destination: String,
    path_count: u128,
    mean_width: f64,
    min_width: f64,
}

/// Mean and population std of each column over one length's bundles.
#[derive(Serialize)]
struct HistSummary {
    length: usize,
    bundles: usize,
    path_count: Option<(f64, f64)>,
    mean_width: Option<(f64, f64)>,
    min_width: Option<(f64, f64)>,
}

#[derive(Serialize)]
struct HistDump<'a> {
    source: String,
    rows: &'a [HistRow],
    summary: &'a [HistSummary],
}

fn hist(cli: &Cli, args: &HistArgs, out: &mut Outputs) -> Result<Planned, Failure> {
    let formats = formats(
        cli,
        &[Format::Csv, Format::Json, Format::Svg],
        &[Format::Csv],
    )?;
    let graph = load_input(&args.graph.graph, cli.seed)?;
    let source = source_or_center(&graph, args.source.as_deref())?;
    let dag = dag_from(&graph, source)?;

    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for &length in &args.lengths.0 {
        let start = rows.len();
        for b in bundles_at(&dag, length)? {
            let s = analyze(&b)?.summary;
            rows.push(HistRow {
                length,
                destination: node_name(&graph, b.destination()),
                path_count: s.path_count,
                mean_width: s.mean_width,
                min_width: s.min_width,
            });
        }
        let these = &rows[start..];
        let column = |f: fn(&HistRow) -> f64| mean_std(&these.iter().map(f).collect::<Vec<_>>());
        summaries.push(HistSummary {
            length,
            bundles: these.len(),
            path_count: column(|r| r.path_count as f64),
            mean_width: column(|r| r.mean_width),
            min_width: column(|r| r.min_width),
        });
    }

    for f in &formats {
        match f {
            Format::Csv => {
                out.add("hist.csv", hist_csv(&rows));
                out.add("hist_summary.csv", hist_summary_csv(&summaries));
            }
            Format::Json => out.add(
                "hist.json",
                json(&HistDump {
                    source: node_name(&graph, source),
                    rows: &rows,
                    summary: &summaries,
                }),
            ),
            Format::Svg => {
                let panels: Vec<svg::Panel> = summaries
                    .iter()
                    .flat_map(|s| {
                        let of_length = rows.iter().filter(|r| r.length == s.length);
                        [
                            svg::Panel {
                                title: format!("L={} path count", s.length),
                                values: of_length.clone().map(|r| r.path_count as f64).collect(),
                            },
                            svg::Panel {
                                title: format!("L={} mean width", s.length),
                                values: of_length.map(|r| r.mean_width).collect(),
                            },
                        ]
                    })
                    .collect();
                out.add("hist.svg", svg::histograms(&panels, 2));
            }
            Format::Graphml => unreachable!("rejected by formats()"),
        }
    }
    Ok(("hist".into(), formats))
}

fn csv_text(header: &[&str], records: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in records {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn hist_csv(rows: &[HistRow]) -> String {
    csv_text(
        &["L", "destination", "path_count", "mean_width", "min_width"],
        rows.iter().map(|r| {
            vec![
                r.length.to_string(),
                r.destination.clone(),
                r.path_count.to_string(),
                fmt_f64(r.mean_width),
                fmt_f64(r.min_width),
            ]
        }),
    )
}

fn hist_summary_csv(summaries: &[HistSummary]) -> String {
    let pair = |v: Option<(f64, f64)>| match v {
        Some((m, s)) => [fmt_f64(m), fmt_f64(s)],
        None => [String::new(), String::new()],
    };
    csv_text(
        &[
            "L",
            "bundles",
            "path_count_mean",
            "path_count_std",
            "mean_width_mean",
            "mean_width_std",
            "min_width_mean",
            "min_width_std",
        ],
        summaries.iter().map(|s| {
            let mut r = vec![s.length.to_string(), s.bundles.to_string()];
            r.extend(pair(s.path_count));
            r.extend(pair(s.mean_width));
            r.extend(pair(s.min_width));
            r
        }),
    )
}

#[derive(Serialize)]
struct LinkValue {
    from: NodeId,
    to: NodeId,
    value: f64,
}

#[derive(Serialize)]
struct BundleDump {
    source: NodeId,
    destination: NodeId,
    length: usize,
    levels: Vec<Vec<NodeId>>,
    links: Vec<Vec<[NodeId; 2]>>,
    transition: Vec<LinkValue>,
    node_flow: BTreeMap<NodeId, f64>,
    link_flow: Vec<LinkValue>,
    widths: Vec<f64>,
    path_count: u128,
    mean_width: f64,
    std_width: f64,
    min_width: f64,
    max_width: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    paths: Option<Vec<Vec<NodeId>>>,
    /// Labels of the bundle's nodes, for graphs read from labelled edge lists.
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<BTreeMap<NodeId, String>>,
}

fn bundle(cli: &Cli, args: &BundleArgs, out: &mut Outputs) -> Result<Planned, Failure> {
    let formats = formats(cli, &[Format::Json], &[Format::Json])?;
    let graph = load_input(&args.graph.graph, cli.seed)?;
    let source = resolve_node(&graph, &args.source)?;
    let dest = resolve_node(&graph, &args.dest)?;
    if source == dest {
        return Err(Failure::Usage("source and destination must differ".into()));
    }
    let no_bundle = |why: String| {
        Failure::Domain(format!(
            "no bundle from {} to {}: {why}",
            args.source, args.dest
        ))
    };
    let distance = bfs_hierarchy(&graph, source)?.level(dest);
    match (distance, args.length) {
        (None, _) => return Err(no_bundle("destination is unreachable".into())),
        (Some(d), Some(l)) if d != l => return Err(no_bundle(format!("distance is {d}, not {l}"))),
        _ => {}
    }
    let b = extract_bundle(&dag_from(&graph, source)?, dest)?.expect("destination is reachable");
    let a = analyze(&b)?;
    let paths = if args.paths {
        Some(enumerate_paths(&b, args.path_cap)?)
    } else {
        None
    };
    let values = |rows: &[Vec<((NodeId, NodeId), f64)>]| {
        rows.iter()
            .flatten()
            .map(|&((from, to), value)| LinkValue { from, to, value })
            .collect::<Vec<_>>()
    };
    let dump = BundleDump {
        source,
        destination: dest,
        length: b.length(),
        levels: b.level_nodes().to_vec(),
        links: b
            .level_links()
            .iter()
            .map(|cut| cut.iter().map(|&(u, v)| [u, v]).collect())
            .collect(),
        transition: values(a.transition.levels()),
        node_flow: a.flow.node_flow().clone(),
        link_flow: values(a.flow.link_flow()),
        widths: a.flow.widths().to_vec(),
        path_count: a.summary.path_count,
        mean_width: a.summary.mean_width,
        std_width: a.summary.std_width,
        min_width: a.summary.min_width,
        max_width: a.summary.max_width,
        paths,
        labels: graph.labels().map(|labels| {
            b.level_nodes()
                .iter()
                .flatten()
                .map(|&v| (v, labels[v].clone()))
                .collect()
        }),
    };
    let stem = format!("bundle_{source}_{dest}");
    out.add(format!("{stem}.json"), json(&dump));
    Ok((stem, formats))
}

fn sbn(cli: &Cli, args: &SbnArgs, out: &mut Outputs) -> Result<Planned, Failure> {
    let formats = formats(
        cli,
        &[Format::Graphml, Format::Csv, Format::Svg],
        &[Format::Graphml, Format::Csv],
    )?;
    if args.length == 0 {
        return Err(Failure::Usage("--length must be at least 1".into()));
    }
    let graph = load_input(&args.graph.graph, cli.seed)?;
    let network = AllPairs::new(&graph)?.sbn(args.length, args.stat)?;
    let stem = format!("sbn_L{}_{}", args.length, args.stat.name());
    for f in &formats {
        match f {
            Format::Graphml => out.add(format!("{stem}.graphml"), sbn_to_graphml(&network)),
            Format::Csv => out.add(format!("{stem}.csv"), sbn_to_csv(&network)),
            Format::Svg => out.add(
                format!("{stem}.svg"),
                svg::network(&graph, network.weights()),
            ),
            Format::Json => unreachable!("rejected by formats()"),
        }
    }
    Ok((stem, formats))
}

fn signature_cmd(cli: &Cli, args: &SignatureArgs, out: &mut Outputs) -> Result<Planned, Failure> {
    let formats = formats(
        cli,
        &[Format::Csv, Format::Json, Format::Svg],
        &[Format::Csv],
    )?;
    let graph = load_input(&args.graph.graph, cli.seed)?;
    let rows = signature(&graph, &args.lengths.0, args.stat)?;
    let stem = format!("signature_{}", args.stat.name());
    for f in &formats {
        match f {
            Format::Csv => out.add(format!("{stem}.csv"), signature_to_csv(&rows)),
            Format::Json => out.add(format!("{stem}.json"), json(&rows)),
            Format::Svg => out.add(format!("{stem}.svg"), svg::signature(&rows)),
            Format::Graphml => unreachable!("rejected by formats()"),
        }
    }
    Ok((stem, formats))
}

#[derive(Serialize)]
struct Shape {
    length: usize,
    destination: String,
    path_count: u128,
    level_sizes: Vec<usize>,
    links_per_level: Vec<usize>,
}

#[derive(Serialize)]
struct MorphologyDump<'a> {
    source: String,
    bundles: &'a [Shape],
}

fn morphology(cli: &Cli, args: &MorphologyArgs, out: &mut Outputs) -> Result<Planned, Failure> {
    let formats = formats(cli, &[Format::Json, Format::Csv], &[Format::Json])?;
    let graph: Graph = load_input(&args.graph.graph, cli.seed)?;
    let source = source_or_center(&graph, args.source.as_deref())?;
    let mut shapes = Vec::new();
    for m in bundle_morphology(&graph, source, &args.lengths.0)? {
        for b in &m.bundles {
            shapes.push(Shape {
                length: m.length,
                destination: node_name(&graph, b.destination()),
                path_count: simple_bundles::count_paths(b)?,
                level_sizes: b.level_sizes(),
                links_per_level: b.links_per_level(),
            });
        }
    }
    let joined = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(";");
    for f in &formats {
        match f {
            Format::Json => out.add(
                "morphology.json",
                json(&MorphologyDump {
                    source: node_name(&graph, source),
                    bundles: &shapes,
                }),
            ),
            Format::Csv => out.add(
                "morphology.csv",
                csv_text(
                    &[
                        "L",
                        "destination",
                        "path_count",
                        "level_sizes",
                        "links_per_level",
                    ],
                    shapes.iter().map(|s| {
                        vec![
                            s.length.to_string(),
                            s.destination.clone(),
                            s.path_count.to_string(),
                            joined(&s.level_sizes),
                            joined(&s.links_per_level),
                        ]
                    }),
                ),
            ),
            _ => unreachable!("rejected by formats()"),
        }
    }
    Ok(("morphology".into(), formats))
}
