// SPDX-License-Identifier: Apache-2.0

use std::cmp::Ordering;

use crate::centrality::{Measure, Normalization, ScoreMap};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Divides every score by the maximum so the top score becomes exactly 1.
/// All-zero maps are returned unchanged (apart from the flag).
pub fn max_normalize(scores: &ScoreMap) -> ScoreMap {
    let max = scores.max();
    let values = if max > 0.0 {
        scores.values.iter().map(|v| v / max).collect()
    } else {
        scores.values.clone()
    };
    ScoreMap {
        measure: scores.measure,
        values,
        normalization: Normalization::Max,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub node: usize,
    pub label: String,
    /// One value per column, in column order.
    pub values: Vec<f64>,
}

/// Rows sorted by descending `sort_key`, ties by ascending label.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedTable {
    pub columns: Vec<Measure>,
    pub normalizations: Vec<Normalization>,
    pub sort_key: Measure,
    pub rows: Vec<Row>,
}

impl RankedTable {
    pub fn column(&self, measure: Measure) -> Option<usize> {
        self.columns.iter().position(|&m| m == measure)
    }

    pub fn order(&self) -> Vec<&str> {
        self.rows.iter().map(|r| r.label.as_str()).collect()
    }
}

/// Joins score maps into one ranked table. With `drop_zero_on`, rows whose
/// value in that column is zero are left out.
pub fn rank(
    graph: &Graph,
    score_maps: &[ScoreMap],
    sort_key: Measure,
    drop_zero_on: Option<Measure>,
) -> Result<RankedTable> {
    let n = graph.node_count();
    for map in score_maps {
        if map.len() != n {
            return Err(Error::MismatchedNodeSets {
                expected: n,
                found: map.len(),
            });
        }
    }
    let columns: Vec<Measure> = score_maps.iter().map(|m| m.measure).collect();
    let key = columns
        .iter()
        .position(|&m| m == sort_key)
        .ok_or_else(|| Error::MissingMeasure(sort_key.to_string()))?;
    let filter = drop_zero_on
        .map(|m| {
            columns
                .iter()
                .position(|&c| c == m)
                .ok_or_else(|| Error::MissingMeasure(m.to_string()))
        })
        .transpose()?;

    let mut rows: Vec<Row> = (0..n)
        .map(|node| Row {
            node,
            label: graph.label(node).to_owned(),
            values: score_maps.iter().map(|m| m.values[node]).collect(),
        })
        .filter(|row| filter.is_none_or(|c| row.values[c] != 0.0))
        .collect();
    rows.sort_by(|a, b| match b.values[key].total_cmp(&a.values[key]) {
        Ordering::Equal => a.label.cmp(&b.label),
        other => other,
    });

    Ok(RankedTable {
        columns,
        normalizations: score_maps.iter().map(|m| m.normalization).collect(),
        sort_key,
        rows,
    })
}
