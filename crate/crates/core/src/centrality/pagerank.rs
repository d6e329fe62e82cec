// SPDX-License-Identifier: Apache-2.0

//! PageRank by power iteration, each undirected edge followed both ways.

use super::{Measure, ScoreMap};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankConfig {
    pub damping: f64,
    /// Stop once the L1 change between iterates drops below this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        Self {
            damping: 0.85,
            tol: 1e-10,
            max_iter: 1000,
        }
    }
}

impl PageRankConfig {
    fn validate(&self) -> Result<()> {
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "damping must lie in (0, 1), got {}",
                self.damping
            )));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidArgument("max_iter must be positive".into()));
        }
        Ok(())
    }
}

/// One application of the PageRank operator. Mass of degree-0 nodes is
/// spread uniformly.
pub(crate) fn pagerank_step(graph: &Graph, damping: f64, x: &[f64], out: &mut [f64]) {
    let n = graph.node_count();
    let dangling: f64 = (0..n).filter(|&u| graph.degree(u) == 0).map(|u| x[u]).sum();
    let base = (1.0 - damping) / n as f64 + damping * dangling / n as f64;
    for (v, slot) in out.iter_mut().enumerate() {
        let inflow: f64 = graph
            .neighbors(v)
            .iter()
            .map(|&u| x[u] / graph.degree(u) as f64)
            .sum();
        *slot = base + damping * inflow;
    }
}

pub fn pagerank(graph: &Graph, config: &PageRankConfig) -> Result<ScoreMap> {
    config.validate()?;
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut x = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    for _ in 0..config.max_iter {
        pagerank_step(graph, config.damping, &x, &mut next);
        let change: f64 = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if change < config.tol {
            return Ok(ScoreMap::raw(Measure::PageRank, x));
        }
    }
    Err(Error::NonConvergence {
        iterations: config.max_iter,
    })
}
