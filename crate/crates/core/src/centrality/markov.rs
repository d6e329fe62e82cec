// SPDX-License-Identifier: Apache-2.0

//! Markov centrality from mean first-passage times of the simple random walk.
//!
//! `score(v) = (n - 1) / sum_{t != v} m(v, t)` where `m(v, t)` is the expected
//! number of steps a walk started at `v` needs to first reach `t`. Times are
//! measured outward from `v`; the inbound convention would average `m(t, v)`
//! instead. One dense solve per target, so this is meant for sub-networks of
//! a few hundred nodes.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use super::{Measure, ScoreMap};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Mean first-passage times into `target` from every node (`0` at the target).
pub fn first_passage_times(graph: &Graph, target: usize) -> Result<Vec<f64>> {
    graph.check_node(target)?;
    let n = graph.node_count();
    // position of each non-target node in the reduced system
    let pos = |u: usize| if u < target { u } else { u - 1 };
    let size = n - 1;
    let mut a = DMatrix::<f64>::identity(size, size);
    let b = DVector::<f64>::from_element(size, 1.0);
    for u in (0..n).filter(|&u| u != target) {
        let deg = graph.degree(u);
        if deg == 0 {
            return Err(Error::Disconnected);
        }
        let p = 1.0 / deg as f64;
        for &w in graph.neighbors(u) {
            if w != target {
                a[(pos(u), pos(w))] -= p;
            }
        }
    }
    let solution = a.lu().solve(&b).ok_or(Error::Singular)?;
    let mut times = vec![0.0; n];
    for u in (0..n).filter(|&u| u != target) {
        let m = solution[pos(u)];
        if !m.is_finite() || m < 1.0 {
            return Err(Error::Singular);
        }
        times[u] = m;
    }
    Ok(times)
}

pub fn markov_centrality(graph: &Graph) -> Result<ScoreMap> {
    let n = graph.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes {
            found: n,
            required: 2,
        });
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let columns: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|t| first_passage_times(graph, t))
        .collect::<Result<_>>()?;
    let scores = (0..n)
        .map(|v| {
            let total: f64 = (0..n).filter(|&t| t != v).map(|t| columns[t][v]).sum();
            (n - 1) as f64 / total
        })
        .collect();
    Ok(ScoreMap::raw(Measure::Markov, scores))
}
