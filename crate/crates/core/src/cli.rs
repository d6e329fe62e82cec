// SPDX-License-Identifier: Apache-2.0

//! Command-line surface. [`run`] does all the work and returns the data
//! output as a string, so nothing reaches the output stream unless the whole
//! command succeeded.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::centrality::{
    betweenness_brandes_from, betweenness_freeman_from, betweenness_geisberger_from,
    markov_centrality, pagerank, Measure, PageRankConfig, ScoreMap,
};
use crate::error::{Error, Result};
use crate::graph::{read_label_list, Graph, GraphBuilder, LoadOptions, LoadReport, SuspectSet};
use crate::reliance::{crime_priority, group_reliance, max_normalize, rank, Aggregate, RankedTable};
use crate::subnet::{extract_subnetwork, ExtractMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Load and simplify a graph, report its size.
    Validate,
    /// Extract a seed-centred sub-network as an edge list.
    Extract,
    /// Reliance of the suspect set on every node.
    Reliance,
    Betweenness,
    Pagerank,
    Markov,
    /// Side-by-side table of several measures.
    Compare,
    /// The node each suspect relies on most.
    Priority,
}

impl Command {
    fn needs_seeds(self) -> bool {
        matches!(self, Command::Extract | Command::Reliance | Command::Priority)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Normalize {
    #[default]
    None,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum AggregateArg {
    #[default]
    Sum,
    #[value(name = "max_sum")]
    MaxSum,
}

impl From<AggregateArg> for Aggregate {
    fn from(a: AggregateArg) -> Self {
        match a {
            AggregateArg::Sum => Aggregate::Sum,
            AggregateArg::MaxSum => Aggregate::MaxSum,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Variant {
    Freeman,
    #[default]
    Brandes,
    Geisberger,
}

/// Which sources the betweenness columns sum over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum SourceSet {
    /// Every node (ordinary betweenness).
    #[default]
    All,
    /// Only the seeds, i.e. the summed dependency of the suspects.
    Seeds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum ExtractModeArg {
    #[default]
    #[value(name = "seed_pairs")]
    SeedPairs,
    #[value(name = "seed_to_all")]
    SeedToAll,
}

impl From<ExtractModeArg> for ExtractMode {
    fn from(m: ExtractModeArg) -> Self {
        match m {
            ExtractModeArg::SeedPairs => ExtractMode::SeedPairs,
            ExtractModeArg::SeedToAll => ExtractMode::SeedToAll,
        }
    }
}

/// Measure names accepted on the command line. `reliance` means the
/// aggregated reliance of the seed set.
pub fn parse_measure(s: &str) -> std::result::Result<Measure, String> {
    match s {
        "reliance" | "group_reliance" => Ok(Measure::GroupReliance),
        "freeman" => Ok(Measure::Freeman),
        "brandes" => Ok(Measure::Brandes),
        "geisberger" => Ok(Measure::Geisberger),
        "pagerank" => Ok(Measure::PageRank),
        "markov" => Ok(Measure::Markov),
        other => Err(format!(
            "unknown measure `{other}` (expected reliance, freeman, brandes, geisberger, pagerank or markov)"
        )),
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "reliance", version, about = "Rank the intermediaries a set of suspects relies on")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// Edge-list file.
    #[arg(long = "graph", short = 'g')]
    pub graph_path: PathBuf,

    /// Optional node-list file declaring extra (e.g. isolated) nodes.
    #[arg(long = "nodes")]
    pub nodes_path: Option<PathBuf>,

    /// Suspect / seed labels, one per line.
    #[arg(long = "seeds", short = 's')]
    pub seeds_path: Option<PathBuf>,

    /// Output file; standard output when absent.
    #[arg(long = "output", short = 'o')]
    pub output_path: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    #[arg(long, value_enum, default_value_t = Normalize::None)]
    pub normalize: Normalize,

    #[arg(long, value_enum, default_value_t = AggregateArg::Sum)]
    pub aggregate: AggregateArg,

    /// Betweenness variant (betweenness command only).
    #[arg(long, value_enum, default_value_t = Variant::Brandes)]
    pub variant: Variant,

    /// Sum betweenness over all sources or only over the seeds.
    #[arg(long = "betweenness-sources", value_enum, default_value_t = SourceSet::All)]
    pub betweenness_sources: SourceSet,

    #[arg(long = "extract-mode", value_enum, default_value_t = ExtractModeArg::SeedPairs)]
    pub extract_mode: ExtractModeArg,

    /// Comma-separated measures for `compare`.
    #[arg(long, value_delimiter = ',', value_parser = parse_measure)]
    pub measures: Vec<Measure>,

    #[arg(long, default_value_t = 0.85)]
    pub damping: f64,

    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,

    #[arg(long = "max-iter", default_value_t = 1000)]
    pub max_iter: usize,

    /// Column to sort by (defaults to the first measure).
    #[arg(long = "sort-key", value_parser = parse_measure)]
    pub sort_key: Option<Measure>,

    /// Drop rows whose reliance (or, without a reliance column, sort-key)
    /// value is zero.
    #[arg(long = "drop-zero")]
    pub drop_zero: bool,
}

impl RunConfig {
    pub fn new(command: Command, graph_path: impl Into<PathBuf>) -> Self {
        Self {
            command,
            graph_path: graph_path.into(),
            nodes_path: None,
            seeds_path: None,
            output_path: None,
            format: Format::Csv,
            normalize: Normalize::None,
            aggregate: AggregateArg::Sum,
            variant: Variant::Brandes,
            betweenness_sources: SourceSet::All,
            extract_mode: ExtractModeArg::SeedPairs,
            measures: Vec::new(),
            damping: 0.85,
            tol: 1e-10,
            max_iter: 1000,
            sort_key: None,
            drop_zero: false,
        }
    }

    fn pagerank_config(&self) -> PageRankConfig {
        PageRankConfig {
            damping: self.damping,
            tol: self.tol,
            max_iter: self.max_iter,
        }
    }

    /// Measures the command will compute, in column order.
    fn resolved_measures(&self) -> Result<Vec<Measure>> {
        let measures = match self.command {
            Command::Reliance => vec![Measure::GroupReliance],
            Command::Pagerank => vec![Measure::PageRank],
            Command::Markov => vec![Measure::Markov],
            Command::Betweenness => vec![match self.variant {
                Variant::Freeman => Measure::Freeman,
                Variant::Brandes => Measure::Brandes,
                Variant::Geisberger => Measure::Geisberger,
            }],
            Command::Compare if self.measures.is_empty() => {
                let mut m = vec![Measure::Brandes, Measure::Geisberger, Measure::PageRank, Measure::Markov];
                if self.seeds_path.is_some() {
                    m.insert(0, Measure::GroupReliance);
                }
                m
            }
            Command::Compare => {
                let mut seen = Vec::new();
                for &m in &self.measures {
                    if !seen.contains(&m) {
                        seen.push(m);
                    }
                }
                seen
            }
            _ => Vec::new(),
        };
        Ok(measures)
    }

    /// Checks everything that can be checked without reading input.
    pub fn validate(&self) -> Result<()> {
        if self.command.needs_seeds() && self.seeds_path.is_none() {
            return Err(Error::InvalidArgument(format!(
                "`{}` requires --seeds",
                self.command.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default()
            )));
        }
        let measures = self.resolved_measures()?;
        if measures.contains(&Measure::GroupReliance) && self.seeds_path.is_none() {
            return Err(Error::InvalidArgument("reliance requires --seeds".into()));
        }
        if self.betweenness_sources == SourceSet::Seeds && self.seeds_path.is_none() {
            return Err(Error::InvalidArgument(
                "--betweenness-sources seeds requires --seeds".into(),
            ));
        }
        if let Some(key) = self.sort_key {
            if !measures.is_empty() && !measures.contains(&key) {
                return Err(Error::InvalidArgument(format!(
                    "sort key `{key}` is not among the computed measures"
                )));
            }
        }
        if measures.contains(&Measure::PageRank) {
            let cfg = self.pagerank_config();
            let damping_ok = cfg.damping > 0.0 && cfg.damping < 1.0;
            if !damping_ok || cfg.tol.is_nan() || cfg.tol <= 0.0 || cfg.max_iter == 0 {
                return Err(Error::InvalidArgument(
                    "pagerank needs 0 < damping < 1, tol > 0 and max-iter > 0".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Result of a successful command.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunOutput {
    pub data: String,
    /// Human-oriented notes for standard error.
    pub diagnostics: Vec<String>,
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn plural(count: usize, one: &str, many: &str) -> String {
    format!("{count} {}", if count == 1 { one } else { many })
}

fn load_graph(config: &RunConfig) -> Result<(Graph, LoadReport)> {
    let mut builder = GraphBuilder::new();
    builder.read_edges(open(&config.graph_path)?, &LoadOptions::default())?;
    if let Some(nodes) = &config.nodes_path {
        builder.read_nodes(open(nodes)?)?;
    }
    builder.build()
}

fn load_seeds(config: &RunConfig, graph: &Graph) -> Result<Option<SuspectSet>> {
    let Some(path) = &config.seeds_path else {
        return Ok(None);
    };
    let labels = read_label_list(open(path)?)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "suspects".into());
    SuspectSet::resolve(graph, &name, &labels).map(Some)
}

/// Formats a float with at most 12 significant digits, shortest form.
pub fn format_float(x: f64) -> String {
    let y = round_sig(x);
    if y == 0.0 {
        "0".to_owned()
    } else {
        format!("{y}")
    }
}

fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn compute(measure: Measure, graph: &Graph, seeds: Option<&SuspectSet>, config: &RunConfig) -> Result<ScoreMap> {
    let all: Vec<usize>;
    let sources = match (config.betweenness_sources, seeds) {
        (SourceSet::Seeds, Some(seeds)) => seeds.resolved.as_slice(),
        _ => {
            all = (0..graph.node_count()).collect();
            all.as_slice()
        }
    };
    match measure {
        Measure::Freeman => betweenness_freeman_from(graph, sources),
        Measure::Brandes => betweenness_brandes_from(graph, sources),
        Measure::Geisberger => betweenness_geisberger_from(graph, sources),
        Measure::PageRank => pagerank(graph, &config.pagerank_config()),
        Measure::Markov => markov_centrality(graph),
        Measure::Reliance | Measure::GroupReliance => {
            let seeds = seeds.ok_or_else(|| Error::InvalidArgument("reliance requires --seeds".into()))?;
            group_reliance(graph, seeds, config.aggregate.into())
        }
    }
}

#[derive(Serialize)]
struct TableMeta<'a> {
    command: &'a str,
    measures: Vec<&'static str>,
    normalization: &'static str,
    aggregate: &'static str,
    betweenness_sources: &'static str,
    sort_key: &'static str,
    n: usize,
    m: usize,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    node: usize,
    label: &'a str,
    values: Vec<f64>,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    metadata: TableMeta<'a>,
    rows: Vec<JsonRow<'a>>,
}

fn command_name(c: Command) -> String {
    c.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default()
}

fn render_table(table: &RankedTable, graph: &Graph, config: &RunConfig) -> Result<String> {
    match config.format {
        Format::Csv => {
            let mut out = String::from("node,label");
            for m in &table.columns {
                out.push(',');
                out.push_str(m.as_str());
            }
            out.push('\n');
            for row in &table.rows {
                out.push_str(&format!("{},{}", row.node, row.label));
                for v in &row.values {
                    out.push(',');
                    out.push_str(&format_float(*v));
                }
                out.push('\n');
            }
            Ok(out)
        }
        Format::Json => {
            let name = command_name(config.command);
            let doc = JsonTable {
                metadata: TableMeta {
                    command: &name,
                    measures: table.columns.iter().map(|m| m.as_str()).collect(),
                    normalization: match config.normalize {
                        Normalize::None => "none",
                        Normalize::Max => "max",
                    },
                    aggregate: Aggregate::from(config.aggregate).as_str(),
                    betweenness_sources: match config.betweenness_sources {
                        SourceSet::All => "all",
                        SourceSet::Seeds => "seeds",
                    },
                    sort_key: table.sort_key.as_str(),
                    n: graph.node_count(),
                    m: graph.edge_count(),
                },
                rows: table
                    .rows
                    .iter()
                    .map(|r| JsonRow {
                        node: r.node,
                        label: &r.label,
                        values: r.values.iter().map(|&v| round_sig(v)).collect(),
                    })
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::Io(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
    }
}

fn run_table(config: &RunConfig, graph: &Graph, seeds: Option<&SuspectSet>) -> Result<String> {
    let measures = config.resolved_measures()?;
    let maps = measures
        .iter()
        .map(|&m| {
            let map = compute(m, graph, seeds, config)?;
            Ok(match config.normalize {
                Normalize::Max => max_normalize(&map),
                Normalize::None => map,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sort_key = config.sort_key.unwrap_or(measures[0]);
    let drop_on = config.drop_zero.then(|| {
        if measures.contains(&Measure::GroupReliance) {
            Measure::GroupReliance
        } else {
            sort_key
        }
    });
    let table = rank(graph, &maps, sort_key, drop_on)?;
    render_table(&table, graph, config)
}

#[derive(Serialize)]
struct PriorityRow<'a> {
    suspect: usize,
    suspect_label: &'a str,
    node: Option<usize>,
    label: Option<&'a str>,
    reliance: f64,
}

fn run_priority(config: &RunConfig, graph: &Graph, seeds: &SuspectSet) -> Result<String> {
    let priorities = crime_priority(graph, seeds)?;
    let rows: Vec<PriorityRow> = priorities
        .iter()
        .map(|p| PriorityRow {
            suspect: p.suspect,
            suspect_label: graph.label(p.suspect),
            node: p.intermediary.map(|(v, _)| v),
            label: p.intermediary.map(|(v, _)| graph.label(v)),
            reliance: p.intermediary.map_or(0.0, |(_, r)| round_sig(r)),
        })
        .collect();
    match config.format {
        Format::Csv => {
            let mut out = String::from("suspect,suspect_label,node,label,reliance\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.suspect,
                    r.suspect_label,
                    r.node.map(|v| v.to_string()).unwrap_or_default(),
                    r.label.unwrap_or(""),
                    format_float(r.reliance)
                ));
            }
            Ok(out)
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rows).map_err(|e| Error::Io(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
    }
}

/// Executes one command.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    config.validate()?;
    let (graph, load_report) = load_graph(config)?;
    let seeds = load_seeds(config, &graph)?;
    let mut diagnostics = Vec::new();
    if load_report.self_loops_dropped > 0 || config.command == Command::Validate {
        diagnostics.push(format!(
            "{} dropped",
            plural(load_report.self_loops_dropped, "self-loop", "self-loops")
        ));
    }
    if load_report.duplicates_collapsed > 0 || config.command == Command::Validate {
        diagnostics.push(format!(
            "{} collapsed",
            plural(load_report.duplicates_collapsed, "duplicate edge", "duplicate edges")
        ));
    }

    let data = match config.command {
        Command::Validate => match config.format {
            Format::Csv => format!("nodes,edges\n{},{}\n", graph.node_count(), graph.edge_count()),
            Format::Json => format!(
                "{}\n",
                serde_json::json!({"nodes": graph.node_count(), "edges": graph.edge_count()})
            ),
        },
        Command::Extract => {
            let seeds = seeds.as_ref().ok_or(Error::EmptySuspects)?;
            let (sub, report) = extract_subnetwork(&graph, seeds, config.extract_mode.into())?;
            for (a, b) in &report.unreachable_pairs {
                diagnostics.push(format!(
                    "seeds {} and {} are not connected",
                    graph.label(*a),
                    graph.label(*b)
                ));
            }
            for s in &report.dropped_seeds {
                diagnostics.push(format!("seed {} lies on no extracted path", graph.label(*s)));
            }
            diagnostics.push(format!(
                "extracted {} nodes and {} edges",
                sub.node_count(),
                sub.edge_count()
            ));
            let mut buf = Vec::new();
            sub.write_edge_list(&mut buf)?;
            String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))?
        }
        Command::Priority => {
            let seeds = seeds.as_ref().ok_or(Error::EmptySuspects)?;
            run_priority(config, &graph, seeds)?
        }
        Command::Reliance
        | Command::Betweenness
        | Command::Pagerank
        | Command::Markov
        | Command::Compare => run_table(config, &graph, seeds.as_ref())?,
    };
    Ok(RunOutput { data, diagnostics })
}

/// Runs inside a dedicated pool of `threads` workers (or the global pool).
pub fn run_with_threads(config: &RunConfig, threads: Option<usize>) -> Result<RunOutput> {
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(|| run(config)),
        None => run(config),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(1.0), "1");
        assert_eq!(format_float(0.5), "0.5");
        assert_eq!(format_float(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_float(2.0 / 3.0), "0.666666666667");
        assert_eq!(format_float(41.0 / 90.0), "0.455555555556");
        assert_eq!(format_float(123456789012345.0), "123456789012000");
    }

    #[test]
    fn seeds_required_before_reading() {
        let cfg = RunConfig::new(Command::Priority, "/nonexistent");
        assert!(matches!(cfg.validate(), Err(Error::InvalidArgument(_))));
        let mut cfg = RunConfig::new(Command::Compare, "/nonexistent");
        cfg.measures = vec![Measure::GroupReliance];
        assert!(matches!(run(&cfg), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn sort_key_must_be_computed() {
        let mut cfg = RunConfig::new(Command::Compare, "g");
        cfg.measures = vec![Measure::Brandes];
        cfg.sort_key = Some(Measure::PageRank);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn parse_flags() {
        let cfg = RunConfig::try_parse_from([
            "reliance", "compare", "--graph", "g.txt", "--seeds", "s.txt", "--measures",
            "reliance,brandes,geisberger", "--sort-key", "brandes", "--normalize", "max",
            "--aggregate", "max_sum", "--drop-zero",
        ])
        .unwrap();
        assert_eq!(cfg.command, Command::Compare);
        assert_eq!(
            cfg.measures,
            vec![Measure::GroupReliance, Measure::Brandes, Measure::Geisberger]
        );
        assert_eq!(cfg.aggregate, AggregateArg::MaxSum);
        assert!(cfg.drop_zero);
        assert!(RunConfig::try_parse_from(["reliance", "compare", "--graph", "g", "--measures", "katz"]).is_err());
        assert!(RunConfig::try_parse_from(["reliance", "explode", "--graph", "g"]).is_err());
    }
}
