// SPDX-License-Identifier: Apache-2.0

//! Seed-centred sub-network extraction by unions of geodesics.
//!
//! This is a lightweight stand-in for guided shortest-path network search:
//! no eigenvector or betweenness-driven growth, only the union of every
//! shortest path between seeds (or from seeds outward).

use std::collections::HashSet;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, SuspectSet};
use crate::sssp::{bfs, ShortestPathData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExtractMode {
    /// All shortest paths between every unordered pair of seeds.
    #[default]
    SeedPairs,
    /// All shortest paths from every seed to every node it reaches.
    SeedToAll,
}

impl ExtractMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtractMode::SeedPairs => "seed_pairs",
            ExtractMode::SeedToAll => "seed_to_all",
        }
    }
}

impl FromStr for ExtractMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "seed_pairs" => Ok(ExtractMode::SeedPairs),
            "seed_to_all" => Ok(ExtractMode::SeedToAll),
            other => Err(Error::InvalidArgument(format!("unknown extract mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExtractReport {
    /// Seed pairs (by index) with no path between them.
    pub unreachable_pairs: Vec<(usize, usize)>,
    /// Seeds that ended up on no geodesic at all.
    pub dropped_seeds: Vec<usize>,
}

/// Marks the DAG edges of every shortest path from `spd`'s source to `t`.
fn mark_paths_to(spd: &ShortestPathData, t: usize, edges: &mut HashSet<(usize, usize)>) {
    let mut seen = HashSet::new();
    let mut stack = vec![t];
    seen.insert(t);
    while let Some(w) = stack.pop() {
        for &p in spd.preds(w) {
            edges.insert((p.min(w), p.max(w)));
            if seen.insert(p) {
                stack.push(p);
            }
        }
    }
}

pub fn extract_subnetwork(
    graph: &Graph,
    seeds: &SuspectSet,
    mode: ExtractMode,
) -> Result<(Graph, ExtractReport)> {
    let required = match mode {
        ExtractMode::SeedPairs => 2,
        ExtractMode::SeedToAll => 1,
    };
    if seeds.len() < required {
        return Err(Error::InvalidArgument(format!(
            "{} extraction needs at least {required} seeds, got {}",
            mode.as_str(),
            seeds.len()
        )));
    }
    for &s in &seeds.resolved {
        graph.check_node(s)?;
    }
    let trees = seeds
        .resolved
        .par_iter()
        .map(|&s| bfs(graph, s))
        .collect::<Result<Vec<_>>>()?;

    let mut report = ExtractReport::default();
    let mut edges = HashSet::new();
    match mode {
        ExtractMode::SeedPairs => {
            for (i, tree) in trees.iter().enumerate() {
                for &t in &seeds.resolved[i + 1..] {
                    if tree.is_reachable(t) {
                        mark_paths_to(tree, t, &mut edges);
                    } else {
                        report.unreachable_pairs.push((tree.source(), t));
                    }
                }
            }
        }
        ExtractMode::SeedToAll => {
            for tree in &trees {
                for &w in tree.order() {
                    for &p in tree.preds(w) {
                        edges.insert((p.min(w), p.max(w)));
                    }
                }
            }
        }
    }
    if edges.is_empty() {
        return Err(Error::EmptyExtraction);
    }

    let sub = graph.edge_subgraph(|u, v| edges.contains(&(u.min(v), u.max(v))));
    report.dropped_seeds = seeds
        .resolved
        .iter()
        .copied()
        .filter(|&s| sub.index_of(graph.label(s)).is_none())
        .collect();
    Ok((sub, report))
}
