// SPDX-License-Identifier: Apache-2.0

//! Simple undirected graphs loaded from edge lists.
//!
//! Node indices are dense (`0..n`) and assigned in order of first appearance
//! in an edge, then labels seen only in self-loops, then any extra labels
//! declared through a node list.
//! Self-loops are dropped and repeated edges (in either direction) collapse
//! to one undirected edge. The number of each is reported in [`LoadReport`].

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Field separator of an edge-list file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Delimiter {
    /// Comma if the first data line contains one, whitespace otherwise.
    #[default]
    Auto,
    Comma,
    Whitespace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    pub delimiter: Delimiter,
    /// Treat lines starting with `#` as comments.
    pub skip_comments: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            delimiter: Delimiter::Auto,
            skip_comments: true,
        }
    }
}

/// What simplification removed while loading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LoadReport {
    pub self_loops_dropped: usize,
    pub duplicates_collapsed: usize,
}

/// Immutable simple undirected graph with a label/index bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    /// Distinct edges in insertion order, endpoints as first written.
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted neighbor indices of `u`.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn label(&self, u: usize) -> &str {
        &self.labels[u]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Edges in the order they were first inserted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn check_node(&self, u: usize) -> Result<()> {
        if u < self.node_count() {
            Ok(())
        } else {
            Err(Error::InvalidNode {
                index: u,
                node_count: self.node_count(),
            })
        }
    }

    /// Nodes without any incident edge; these need a node list to survive
    /// serialization.
    pub fn isolated_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.node_count()).filter(|&u| self.adjacency[u].is_empty())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Builds a graph from label pairs. Handy for fixtures.
    pub fn from_label_pairs<S: AsRef<str>>(pairs: &[(S, S)]) -> Result<Graph> {
        let mut builder = GraphBuilder::new();
        for (a, b) in pairs {
            builder.add_edge(a.as_ref(), b.as_ref());
        }
        builder.build().map(|(g, _)| g)
    }

    /// Builds a graph on nodes `0..n` labelled by their decimal index.
    pub fn from_index_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Graph> {
        let mut builder = GraphBuilder::new();
        for u in 0..n {
            builder.add_node(&u.to_string());
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidNode {
                    index: a.max(b),
                    node_count: n,
                });
            }
            builder.add_edge(&a.to_string(), &b.to_string());
        }
        builder.build().map(|(g, _)| g)
    }

    /// Subgraph made of the selected edges and their endpoints. Edges keep
    /// their relative order, so labels keep their relative first-appearance
    /// order too.
    pub(crate) fn edge_subgraph(&self, keep: impl Fn(usize, usize) -> bool) -> Graph {
        let mut builder = GraphBuilder::new();
        for &(u, v) in &self.edges {
            if keep(u, v) {
                builder.add_edge(&self.labels[u], &self.labels[v]);
            }
        }
        builder.finish()
    }

    /// Writes one edge per line, whitespace separated, in insertion order.
    /// Re-loading the output reproduces the same indices for every non-isolated
    /// node.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for &(u, v) in &self.edges {
            writeln!(out, "{} {}", self.labels[u], self.labels[v])?;
        }
        Ok(())
    }
}

/// Incremental graph construction with simplification.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
    seen_edges: HashSet<(usize, usize)>,
    edges: Vec<(usize, usize)>,
    /// Labels seen only in self-loops so far.
    loop_only: Vec<String>,
    report: LoadReport,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the index of `label`, allocating one if it is new.
    pub fn add_node(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), i);
        self.adjacency.push(Vec::new());
        i
    }

    /// Adds an undirected edge. A label that has so far appeared only in
    /// self-loops gets its index after all edge-bearing labels, so the
    /// written edge list reproduces the same indices.
    pub fn add_edge(&mut self, a: &str, b: &str) {
        if a == b {
            self.report.self_loops_dropped += 1;
            if !self.index.contains_key(a) {
                self.loop_only.push(a.to_owned());
            }
            return;
        }
        let u = self.add_node(a);
        let v = self.add_node(b);
        if !self.seen_edges.insert((u.min(v), u.max(v))) {
            self.report.duplicates_collapsed += 1;
            return;
        }
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
        self.edges.push((u, v));
    }

    /// Reads an edge list. Blank lines are ignored; `#` lines too when
    /// `skip_comments` is set.
    pub fn read_edges<R: BufRead>(&mut self, reader: R, options: &LoadOptions) -> Result<()> {
        let mut delimiter = options.delimiter;
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || (options.skip_comments && trimmed.starts_with('#')) {
                continue;
            }
            if delimiter == Delimiter::Auto {
                delimiter = if trimmed.contains(',') {
                    Delimiter::Comma
                } else {
                    Delimiter::Whitespace
                };
            }
            let tokens: Vec<&str> = match delimiter {
                Delimiter::Comma => trimmed.split(',').map(str::trim).collect(),
                _ => trimmed.split_whitespace().collect(),
            };
            if tokens.len() != 2 || tokens.iter().any(|t| t.is_empty()) {
                return Err(Error::Parse {
                    line: lineno + 1,
                    found: tokens.iter().filter(|t| !t.is_empty()).count(),
                });
            }
            self.add_edge(tokens[0], tokens[1]);
        }
        Ok(())
    }

    /// Declares every label of a node list (one per line). Labels already
    /// present keep their index.
    pub fn read_nodes<R: BufRead>(&mut self, reader: R) -> Result<()> {
        self.flush_loop_only();
        for label in read_label_list(reader)? {
            self.add_node(&label);
        }
        Ok(())
    }

    fn flush_loop_only(&mut self) {
        for label in std::mem::take(&mut self.loop_only) {
            self.add_node(&label);
        }
    }

    fn finish(mut self) -> Graph {
        self.flush_loop_only();
        let mut adjacency = self.adjacency;
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            adjacency,
            labels: self.labels,
            index: self.index,
            edges: self.edges,
        }
    }

    pub fn build(self) -> Result<(Graph, LoadReport)> {
        if self.labels.is_empty() && self.loop_only.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let report = self.report;
        Ok((self.finish(), report))
    }
}

/// Loads and simplifies an edge list.
pub fn load_edge_list<R: BufRead>(reader: R, options: &LoadOptions) -> Result<(Graph, LoadReport)> {
    let mut builder = GraphBuilder::new();
    builder.read_edges(reader, options)?;
    builder.build()
}

/// Reads one label per line, skipping blanks and `#` comments.
pub fn read_label_list<R: BufRead>(reader: R) -> Result<Vec<String>> {
    let mut labels = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        labels.push(trimmed.to_owned());
    }
    Ok(labels)
}

/// A named set of source nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuspectSet {
    pub name: String,
    /// Labels in first-listed order, without repeats.
    pub members: Vec<String>,
    /// Resolved indices, ascending.
    pub resolved: Vec<usize>,
}

impl SuspectSet {
    pub fn resolve<S: AsRef<str>>(graph: &Graph, name: &str, labels: &[S]) -> Result<SuspectSet> {
        if labels.is_empty() {
            return Err(Error::EmptySuspects);
        }
        let mut members: Vec<String> = Vec::with_capacity(labels.len());
        let mut resolved = Vec::with_capacity(labels.len());
        for label in labels {
            let label = label.as_ref();
            let idx = graph
                .index_of(label)
                .ok_or_else(|| Error::UnknownLabel(label.to_owned()))?;
            if !resolved.contains(&idx) {
                resolved.push(idx);
                members.push(label.to_owned());
            }
        }
        resolved.sort_unstable();
        Ok(SuspectSet {
            name: name.to_owned(),
            members,
            resolved,
        })
    }

    pub fn len(&self) -> usize {
        self.resolved.len()
    }

    pub fn is_empty(&self) -> bool {
        self.resolved.is_empty()
    }
}

pub fn resolve_suspects<S: AsRef<str>>(graph: &Graph, labels: &[S]) -> Result<SuspectSet> {
    SuspectSet::resolve(graph, "suspects", labels)
}
