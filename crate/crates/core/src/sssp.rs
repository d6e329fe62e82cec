// SPDX-License-Identifier: Apache-2.0

//! Breadth-first single-source shortest paths with exact path counts.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

const UNREACHABLE: u32 = u32::MAX;

/// Distances, shortest-path counts and predecessor sets from one source.
#[derive(Debug, Clone)]
pub struct ShortestPathData {
    source: usize,
    dist: Vec<u32>,
    sigma: Vec<BigUint>,
    preds: Vec<Vec<usize>>,
    /// Reachable nodes in nondecreasing distance order, source first.
    order: Vec<usize>,
}

impl ShortestPathData {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn node_count(&self) -> usize {
        self.dist.len()
    }

    /// `None` when `v` is unreachable.
    pub fn distance(&self, v: usize) -> Option<u32> {
        match self.dist[v] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    pub fn is_reachable(&self, v: usize) -> bool {
        self.dist[v] != UNREACHABLE
    }

    /// Number of shortest paths from the source to `v` (0 if unreachable).
    pub fn sigma(&self, v: usize) -> &BigUint {
        &self.sigma[v]
    }

    pub fn preds(&self, v: usize) -> &[usize] {
        &self.preds[v]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `sigma(a) / sigma(b)` in floating point.
    pub fn sigma_ratio(&self, a: usize, b: usize) -> f64 {
        big_ratio(&self.sigma[a], &self.sigma[b])
    }

    /// Whether `v` lies on at least one shortest path from the source to
    /// `t` (endpoints included). Walks the predecessor DAG back from `t`.
    pub fn on_shortest_path(&self, v: usize, t: usize) -> bool {
        let (Some(dv), Some(_)) = (self.distance(v), self.distance(t)) else {
            return false;
        };
        if v == t {
            return true;
        }
        let mut seen = vec![false; self.dist.len()];
        let mut stack = vec![t];
        seen[t] = true;
        while let Some(w) = stack.pop() {
            for &p in &self.preds[w] {
                if p == v {
                    return true;
                }
                if !seen[p] && self.dist[p] > dv {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        false
    }
}

/// Ratio of two exact counts. Very large operands are shifted down together
/// before conversion so the quotient stays finite.
pub(crate) fn big_ratio(num: &BigUint, den: &BigUint) -> f64 {
    let bits = num.bits().max(den.bits());
    if bits <= 1000 {
        return num.to_f64().unwrap_or(f64::NAN) / den.to_f64().unwrap_or(f64::NAN);
    }
    let shift = bits - 128;
    let n = (num >> shift).to_f64().unwrap_or(0.0);
    let d = (den >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Single-source BFS on an unweighted undirected graph.
pub fn bfs(graph: &Graph, s: usize) -> Result<ShortestPathData> {
    graph.check_node(s)?;
    let n = graph.node_count();
    let mut dist = vec![UNREACHABLE; n];
    let mut sigma = vec![BigUint::zero(); n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();

    dist[s] = 0;
    sigma[s] = BigUint::one();
    queue.push_back(s);

    while let Some(v) = queue.pop_front() {
        order.push(v);
        let next = dist[v] + 1;
        for &w in graph.neighbors(v) {
            if dist[w] == UNREACHABLE {
                dist[w] = next;
                queue.push_back(w);
            }
            if dist[w] == next {
                let add = sigma[v].clone();
                sigma[w] += add;
                preds[w].push(v);
            }
        }
    }

    Ok(ShortestPathData {
        source: s,
        dist,
        sigma,
        preds,
        order,
    })
}

/// Fraction of shortest `(s, t)` paths that pass through `v`, where
/// `from_s` is rooted at `s` and `from_v` at `v`.
pub fn pair_dependency(
    from_s: &ShortestPathData,
    from_v: &ShortestPathData,
    v: usize,
    t: usize,
) -> Result<f64> {
    let s = from_s.source;
    if from_v.source != v {
        return Err(Error::InvalidArgument(format!(
            "second BFS is rooted at {}, expected {v}",
            from_v.source
        )));
    }
    if s == t || s == v || v == t {
        return Err(Error::InvalidArgument(format!(
            "source {s}, intermediate {v} and target {t} must be distinct"
        )));
    }
    let d_st = from_s
        .distance(t)
        .ok_or(Error::UndefinedDistance { from: s, to: t })?;
    match (from_s.distance(v), from_v.distance(t)) {
        (Some(d_sv), Some(d_vt)) if d_sv + d_vt == d_st => {
            let through = &from_s.sigma[v] * &from_v.sigma[t];
            Ok(big_ratio(&through, &from_s.sigma[t]))
        }
        _ => Ok(0.0),
    }
}
