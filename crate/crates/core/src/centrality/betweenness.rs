// SPDX-License-Identifier: Apache-2.0

//! Shortest-path betweenness.
//!
//! All totals sum over ordered `(s, t)` pairs, so on an undirected graph
//! every unordered pair contributes twice.

use super::{ordered_source_sum, Measure, ScoreMap};
use crate::error::Result;
use crate::graph::Graph;
use crate::sssp::{bfs, pair_dependency, ShortestPathData};

/// Betweenness straight from the pair-dependency definition: one BFS per
/// node, then a triple loop over `(s, v, t)`. Cubic; intended as a reference
/// for small graphs.
pub fn betweenness_freeman(graph: &Graph) -> Result<ScoreMap> {
    let all: Vec<usize> = (0..graph.node_count()).collect();
    betweenness_freeman_from(graph, &all)
}

/// [`betweenness_freeman`] restricted to pairs whose source is in `sources`.
pub fn betweenness_freeman_from(graph: &Graph, sources: &[usize]) -> Result<ScoreMap> {
    let n = graph.node_count();
    let spds = (0..n).map(|s| bfs(graph, s)).collect::<Result<Vec<_>>>()?;
    let mut scores = vec![0.0; n];
    for &s in sources {
        graph.check_node(s)?;
        let from_s = &spds[s];
        for t in 0..n {
            if t == s || !from_s.is_reachable(t) {
                continue;
            }
            for (v, score) in scores.iter_mut().enumerate() {
                if v != s && v != t {
                    *score += pair_dependency(from_s, &spds[v], v, t)?;
                }
            }
        }
    }
    Ok(ScoreMap::raw(Measure::Freeman, scores))
}

/// Back-propagation over the predecessor DAG in decreasing distance order.
/// `scale(v, w)` weights each edge `v -> w` of the DAG.
fn accumulate(spd: &ShortestPathData, scale: impl Fn(usize, usize) -> f64) -> Vec<f64> {
    let mut delta = vec![0.0; spd.node_count()];
    for &w in spd.order().iter().rev() {
        let carry = 1.0 + delta[w];
        for &v in spd.preds(w) {
            delta[v] += scale(v, w) * spd.sigma_ratio(v, w) * carry;
        }
    }
    delta[spd.source()] = 0.0;
    delta
}

pub(crate) fn brandes_from(spd: &ShortestPathData) -> Vec<f64> {
    accumulate(spd, |_, _| 1.0)
}

pub(crate) fn geisberger_from(spd: &ShortestPathData) -> Vec<f64> {
    accumulate(spd, |v, w| {
        // v is a predecessor of w, so both are reachable and dist(w) >= 1
        let dv = spd.distance(v).unwrap_or(0) as f64;
        let dw = spd.distance(w).unwrap_or(1) as f64;
        dv / dw
    })
}

/// Dependency of source `s` on every node.
pub fn dependency_brandes(graph: &Graph, s: usize) -> Result<ScoreMap> {
    let spd = bfs(graph, s)?;
    Ok(ScoreMap::raw(Measure::Brandes, brandes_from(&spd)))
}

pub fn betweenness_brandes(graph: &Graph) -> Result<ScoreMap> {
    let all: Vec<usize> = (0..graph.node_count()).collect();
    betweenness_brandes_from(graph, &all)
}

/// Sum of per-source dependencies over `sources` only.
pub fn betweenness_brandes_from(graph: &Graph, sources: &[usize]) -> Result<ScoreMap> {
    let n = graph.node_count();
    let scores = ordered_source_sum(n, sources, |s| Ok(brandes_from(&bfs(graph, s)?)))?;
    Ok(ScoreMap::raw(Measure::Brandes, scores))
}

/// Dependency of `s` with every accumulation term scaled by
/// `dist(s, v) / dist(s, w)`.
pub fn dependency_geisberger(graph: &Graph, s: usize) -> Result<ScoreMap> {
    let spd = bfs(graph, s)?;
    Ok(ScoreMap::raw(Measure::Geisberger, geisberger_from(&spd)))
}

pub fn betweenness_geisberger(graph: &Graph) -> Result<ScoreMap> {
    let all: Vec<usize> = (0..graph.node_count()).collect();
    betweenness_geisberger_from(graph, &all)
}

pub fn betweenness_geisberger_from(graph: &Graph, sources: &[usize]) -> Result<ScoreMap> {
    let n = graph.node_count();
    let scores = ordered_source_sum(n, sources, |s| Ok(geisberger_from(&bfs(graph, s)?)))?;
    Ok(ScoreMap::raw(Measure::Geisberger, scores))
}
