// SPDX-License-Identifier: Apache-2.0

//! Source-intermediate reliance.
//!
//! For a source `s`, intermediate `v` and target `t`:
//!
//! * trust `T(s,t)(v) = dist(s,v) / dist(s,t)`, defined only when `v` sits on
//!   a shortest `(s,t)` path;
//! * per-target reliance `r(s,t)(v) = delta_st(v) * dist(s,v) / dist(s,t)`,
//!   where `delta_st(v)` is the fraction of shortest `(s,t)` paths through `v`;
//! * total reliance `R_s(v) = sum_t r(s,t)(v) / (n - 2)` over every reachable
//!   target `t` other than `s` and `v`.
//!
//! Trust grows with distance from the source: a node far down a chain has to
//! be trusted more to pass something on.

mod table;

use std::str::FromStr;

use rayon::prelude::*;

use crate::centrality::{ordered_source_sum, Measure, ScoreMap};
use crate::error::{Error, Result};
use crate::graph::{Graph, SuspectSet};
use crate::sssp::{bfs, pair_dependency, ShortestPathData};

pub use table::{max_normalize, rank, RankedTable, Row};

/// Total reliance of one source on every node.
#[derive(Debug, Clone, PartialEq)]
pub struct RelianceResult {
    pub source: usize,
    pub values: Vec<f64>,
    /// Node count used in the `n - 2` normalizer.
    pub n_used: usize,
}

/// How per-source reliance is combined over a suspect set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Aggregate {
    /// `sum_s R_s(v)`.
    #[default]
    Sum,
    /// `sum_s max_t r(s,t)(v)`: each source contributes only its strongest
    /// single-target reliance on `v`.
    MaxSum,
}

impl Aggregate {
    pub fn as_str(self) -> &'static str {
        match self {
            Aggregate::Sum => "sum",
            Aggregate::MaxSum => "max_sum",
        }
    }
}

impl FromStr for Aggregate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(Aggregate::Sum),
            "max_sum" => Ok(Aggregate::MaxSum),
            other => Err(Error::InvalidArgument(format!("unknown aggregate `{other}`"))),
        }
    }
}

/// The node a suspect relies on most, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct Priority {
    pub suspect: usize,
    /// `(node, R_s(node))`, or `None` when every reliance value is zero.
    pub intermediary: Option<(usize, f64)>,
}

fn require_distinct(s: usize, v: usize, t: usize) -> Result<()> {
    if s == t || s == v || v == t {
        return Err(Error::InvalidArgument(format!(
            "source {s}, intermediate {v} and target {t} must be distinct"
        )));
    }
    Ok(())
}

/// Trust that the source of `from_s` places on `v` for reaching `t`.
pub fn trust(from_s: &ShortestPathData, v: usize, t: usize) -> Result<f64> {
    let s = from_s.source();
    require_distinct(s, v, t)?;
    let d_st = from_s
        .distance(t)
        .ok_or(Error::UndefinedDistance { from: s, to: t })?;
    let d_sv = from_s
        .distance(v)
        .ok_or(Error::UndefinedDistance { from: s, to: v })?;
    if !from_s.on_shortest_path(v, t) {
        return Err(Error::NotOnShortestPath {
            from: s,
            node: v,
            target: t,
        });
    }
    Ok(d_sv as f64 / d_st as f64)
}

/// `r(s,t)(v)` from precomputed BFS trees rooted at `s` and at `v`.
pub fn path_reliance_from(
    from_s: &ShortestPathData,
    from_v: &ShortestPathData,
    v: usize,
    t: usize,
) -> Result<f64> {
    let dependency = pair_dependency(from_s, from_v, v, t)?;
    if dependency == 0.0 {
        return Ok(0.0);
    }
    let d_sv = from_s.distance(v).unwrap_or(0) as f64;
    let d_st = from_s.distance(t).unwrap_or(1) as f64;
    Ok(dependency * d_sv / d_st)
}

/// Reliance of `s` on `v` along shortest paths to `t`. Zero when `v` is on
/// none of them.
pub fn path_reliance(graph: &Graph, s: usize, v: usize, t: usize) -> Result<f64> {
    graph.check_node(v)?;
    graph.check_node(t)?;
    let from_s = bfs(graph, s)?;
    let from_v = bfs(graph, v)?;
    path_reliance_from(&from_s, &from_v, v, t)
}

fn check_size(graph: &Graph) -> Result<usize> {
    let n = graph.node_count();
    if n < 3 {
        return Err(Error::TooFewNodes {
            found: n,
            required: 3,
        });
    }
    Ok(n)
}

/// Unnormalized `sum_t r(s,t)(v)` for every `v`, in one backward pass.
///
/// With `A(v) = sum_t delta_st(v) / dist(s,t)` the pass propagates
/// `A(v) = sum_{w : v in P(w)} sigma(v)/sigma(w) * (1/dist(s,w) + A(w))`
/// and the trust numerator `dist(s,v)` is applied once at the end.
fn reliance_sums(spd: &ShortestPathData) -> Vec<f64> {
    let n = spd.node_count();
    let mut inv_weighted = vec![0.0; n];
    for &w in spd.order().iter().rev() {
        let Some(dw) = spd.distance(w).filter(|&d| d > 0) else {
            continue;
        };
        let carry = 1.0 / dw as f64 + inv_weighted[w];
        for &v in spd.preds(w) {
            inv_weighted[v] += spd.sigma_ratio(v, w) * carry;
        }
    }
    (0..n)
        .map(|v| match spd.distance(v) {
            Some(dv) if dv > 0 => dv as f64 * inv_weighted[v],
            _ => 0.0,
        })
        .collect()
}

/// Total reliance `R_s(v)` of `s` on every node.
pub fn total_reliance(graph: &Graph, s: usize) -> Result<RelianceResult> {
    let n = check_size(graph)?;
    let spd = bfs(graph, s)?;
    let scale = 1.0 / (n - 2) as f64;
    let values = reliance_sums(&spd).into_iter().map(|x| x * scale).collect();
    Ok(RelianceResult {
        source: s,
        values,
        n_used: n,
    })
}

/// Total reliance computed term by term: one BFS from `s`, one BFS per
/// candidate intermediate, and an explicit sum of `r(s,t)(v)` over targets.
/// Quadratic in BFS work; use [`total_reliance`] for real graphs.
pub fn total_reliance_by_definition(graph: &Graph, s: usize) -> Result<RelianceResult> {
    let n = check_size(graph)?;
    let from_s = bfs(graph, s)?;
    let values = (0..n)
        .into_par_iter()
        .map(|v| {
            if v == s || !from_s.is_reachable(v) {
                return Ok(0.0);
            }
            let from_v = bfs(graph, v)?;
            let mut sum = 0.0;
            for t in 0..n {
                if t != s && t != v && from_s.is_reachable(t) {
                    sum += path_reliance_from(&from_s, &from_v, v, t)?;
                }
            }
            Ok(sum / (n - 2) as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(RelianceResult {
        source: s,
        values,
        n_used: n,
    })
}

/// For each `v`, the largest single-target reliance `max_t r(s,t)(v)`.
pub fn max_path_reliance(graph: &Graph, s: usize) -> Result<Vec<f64>> {
    let spd = bfs(graph, s)?;
    let n = graph.node_count();
    let order = spd.order();
    let mut best = vec![0.0f64; n];
    let mut dependency = vec![0.0f64; n];
    let mut touched = Vec::new();

    for &t in order.iter().skip(1) {
        let d_st = spd.distance(t).unwrap_or(0);
        // nodes no farther than t, walked back towards s
        let end = order.partition_point(|&u| spd.distance(u).unwrap_or(u32::MAX) <= d_st);
        dependency[t] = 1.0;
        touched.push(t);
        for &w in order[..end].iter().rev() {
            let dw = dependency[w];
            if dw == 0.0 {
                continue;
            }
            for &p in spd.preds(w) {
                if dependency[p] == 0.0 {
                    touched.push(p);
                }
                dependency[p] += spd.sigma_ratio(p, w) * dw;
            }
        }
        for &v in &touched {
            if v != s && v != t {
                let d_sv = spd.distance(v).unwrap_or(0);
                let r = dependency[v] * d_sv as f64 / d_st as f64;
                best[v] = best[v].max(r);
            }
        }
        for v in touched.drain(..) {
            dependency[v] = 0.0;
        }
    }
    Ok(best)
}

/// Combined reliance of a suspect set on every node. A suspect may itself
/// receive reliance from the other suspects.
pub fn group_reliance(graph: &Graph, suspects: &SuspectSet, mode: Aggregate) -> Result<ScoreMap> {
    if suspects.is_empty() {
        return Err(Error::EmptySuspects);
    }
    for &s in &suspects.resolved {
        graph.check_node(s)?;
    }
    let n = graph.node_count();
    let values = match mode {
        Aggregate::Sum => ordered_source_sum(n, &suspects.resolved, |s| {
            total_reliance(graph, s).map(|r| r.values)
        })?,
        Aggregate::MaxSum => {
            check_size(graph)?;
            ordered_source_sum(n, &suspects.resolved, |s| max_path_reliance(graph, s))?
        }
    };
    Ok(ScoreMap::raw(Measure::GroupReliance, values))
}

/// For each suspect (ascending index) the node it relies on most. Ties go
/// to the smaller label.
pub fn crime_priority(graph: &Graph, suspects: &SuspectSet) -> Result<Vec<Priority>> {
    if suspects.is_empty() {
        return Err(Error::EmptySuspects);
    }
    suspects
        .resolved
        .par_iter()
        .map(|&s| {
            let result = total_reliance(graph, s)?;
            let mut best: Option<(usize, f64)> = None;
            for (v, &r) in result.values.iter().enumerate() {
                if r <= 0.0 {
                    continue;
                }
                best = match best {
                    Some((b, br))
                        if br > r || (br == r && graph.label(b) <= graph.label(v)) =>
                    {
                        Some((b, br))
                    }
                    _ => Some((v, r)),
                };
            }
            Ok(Priority {
                suspect: s,
                intermediary: best,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::resolve_suspects;

    fn close(a: &[f64], b: &[f64]) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < 1e-12, "{a:?} vs {b:?}");
        }
    }

    fn path4() -> Graph {
        Graph::from_index_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    fn diamond() -> Graph {
        Graph::from_index_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Eight-node layering tree with labels 1..8.
    fn layering_tree() -> Graph {
        Graph::from_label_pairs(&[
            ("1", "2"),
            ("2", "3"),
            ("3", "4"),
            ("3", "5"),
            ("5", "6"),
            ("5", "7"),
            ("7", "8"),
        ])
        .unwrap()
    }

    #[test]
    fn trust_along_the_chain() {
        let g = layering_tree();
        let at = |l: &str| g.index_of(l).unwrap();
        let spd = bfs(&g, at("1")).unwrap();
        assert_eq!(trust(&spd, at("7"), at("8")).unwrap(), 0.8);
        assert_eq!(trust(&spd, at("3"), at("8")).unwrap(), 0.4);
        assert_eq!(trust(&spd, at("2"), at("8")).unwrap(), 1.0 / 5.0);
    }

    #[test]
    fn trust_domain_errors() {
        let g = layering_tree();
        let at = |l: &str| g.index_of(l).unwrap();
        let spd = bfs(&g, at("1")).unwrap();
        assert!(matches!(
            trust(&spd, at("4"), at("8")),
            Err(Error::NotOnShortestPath { .. })
        ));
        assert!(matches!(
            trust(&spd, at("1"), at("8")),
            Err(Error::InvalidArgument(_))
        ));
        let g = Graph::from_index_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        let spd = bfs(&g, 0).unwrap();
        assert_eq!(
            trust(&spd, 1, 3).unwrap_err(),
            Error::UndefinedDistance { from: 0, to: 3 }
        );
    }

    #[test]
    fn path_reliance_examples() {
        assert_eq!(path_reliance(&diamond(), 0, 1, 3).unwrap(), 0.25);
        assert!((path_reliance(&path4(), 0, 2, 3).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        let g = Graph::from_index_pairs(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        assert_eq!(path_reliance(&g, 0, 4, 3).unwrap(), 0.0);
        let g = Graph::from_index_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            path_reliance(&g, 0, 1, 2),
            Err(Error::UndefinedDistance { .. })
        ));
    }

    #[test]
    fn total_reliance_examples() {
        let r = total_reliance(&path4(), 0).unwrap();
        close(&r.values, &[0.0, 5.0 / 12.0, 1.0 / 3.0, 0.0]);
        assert_eq!(r.n_used, 4);

        let r = total_reliance(&diamond(), 0).unwrap();
        close(&r.values, &[0.0, 0.125, 0.125, 0.0]);

        let g = layering_tree();
        let r = total_reliance(&g, g.index_of("1").unwrap()).unwrap();
        // indices follow label order 1..8
        close(
            &r.values,
            &[0.0, 14.0 / 45.0, 41.0 / 90.0, 0.0, 7.0 / 20.0, 0.0, 2.0 / 15.0, 0.0],
        );
    }

    #[test]
    fn single_pass_matches_definition() {
        for g in [path4(), diamond(), layering_tree()] {
            for s in 0..g.node_count() {
                let fast = total_reliance(&g, s).unwrap().values;
                let slow = total_reliance_by_definition(&g, s).unwrap().values;
                close(&fast, &slow);
            }
        }
    }

    #[test]
    fn unreachable_targets_keep_full_normalizer() {
        // 0-1-2 plus a separate edge 3-4: R_0(1) = (1/2) / (5 - 2)
        let g = Graph::from_index_pairs(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let r = total_reliance(&g, 0).unwrap();
        close(&r.values, &[0.0, 0.5 / 3.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn too_small() {
        let g = Graph::from_index_pairs(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            total_reliance(&g, 0),
            Err(Error::TooFewNodes { found: 2, required: 3 })
        ));
    }

    #[test]
    fn group_sum_and_max_sum() {
        let g = path4();
        let both = resolve_suspects(&g, &["0", "3"]).unwrap();
        let s = group_reliance(&g, &both, Aggregate::Sum).unwrap();
        close(&s.values, &[0.0, 0.75, 0.75, 0.0]);
        assert_eq!(s.measure, Measure::GroupReliance);

        let one = resolve_suspects(&g, &["0"]).unwrap();
        let s = group_reliance(&g, &one, Aggregate::Sum).unwrap();
        close(&s.values, &total_reliance(&g, 0).unwrap().values);

        let m = group_reliance(&g, &one, Aggregate::MaxSum).unwrap();
        close(&m.values, &[0.0, 0.5, 2.0 / 3.0, 0.0]);
    }

    #[test]
    fn suspects_receive_reliance_from_each_other() {
        let g = path4();
        let s = resolve_suspects(&g, &["0", "1"]).unwrap();
        let v = group_reliance(&g, &s, Aggregate::Sum).unwrap().values;
        // node 1 still collects R_0(1) = 5/12
        assert!((v[1] - 5.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn max_sum_on_diamond() {
        let g = diamond();
        let s = resolve_suspects(&g, &["0"]).unwrap();
        let m = group_reliance(&g, &s, Aggregate::MaxSum).unwrap();
        close(&m.values, &[0.0, 0.25, 0.25, 0.0]);
    }

    #[test]
    fn priorities() {
        let g = layering_tree();
        let s = resolve_suspects(&g, &["1"]).unwrap();
        let p = crime_priority(&g, &s).unwrap();
        assert_eq!(p[0].intermediary.map(|(v, _)| g.label(v)), Some("3"));
        assert!((p[0].intermediary.unwrap().1 - 41.0 / 90.0).abs() < 1e-12);

        let g = path4();
        let s = resolve_suspects(&g, &["0", "3"]).unwrap();
        let p = crime_priority(&g, &s).unwrap();
        assert_eq!(p[0].intermediary.unwrap().0, 1);
        assert_eq!(p[1].intermediary.unwrap().0, 2);

        let star = Graph::from_index_pairs(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let s = resolve_suspects(&star, &["2"]).unwrap();
        assert_eq!(crime_priority(&star, &s).unwrap()[0].intermediary.unwrap().0, 0);

        // the hub relies on nobody
        let s = resolve_suspects(&star, &["0"]).unwrap();
        assert_eq!(crime_priority(&star, &s).unwrap()[0].intermediary, None);
    }

    #[test]
    fn priority_ties_break_by_label() {
        let g = Graph::from_label_pairs(&[("s", "b"), ("s", "a"), ("b", "t"), ("a", "t")]).unwrap();
        let s = resolve_suspects(&g, &["s"]).unwrap();
        let p = crime_priority(&g, &s).unwrap();
        assert_eq!(g.label(p[0].intermediary.unwrap().0), "a");
    }

    #[test]
    fn aggregate_names() {
        assert_eq!("max_sum".parse::<Aggregate>().unwrap(), Aggregate::MaxSum);
        assert!("mean".parse::<Aggregate>().is_err());
    }
}
