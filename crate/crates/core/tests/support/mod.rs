// SPDX-License-Identifier: Apache-2.0

//! Brute-force oracles shared by the integration tests. Nothing here goes
//! through the library's BFS or accumulation code: distances come from
//! Floyd-Warshall and shortest paths are enumerated one by one.

#![allow(dead_code, clippy::needless_range_loop)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use reliance::Graph;

const INF: usize = usize::MAX / 4;

/// Random connected graph on `n` nodes: a random spanning tree plus each
/// remaining pair with probability `p`.
pub fn random_connected(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut pairs = Vec::new();
    for v in 1..n {
        pairs.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_index_pairs(n, &pairs).unwrap()
}

/// Corpus of random connected graphs with `n` in `4..=10`.
pub fn corpus(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(4..=10);
            let p = rng.gen_range(0.0..0.5);
            random_connected(&mut rng, n, p)
        })
        .collect()
}

pub fn all_pairs_distances(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut d = vec![vec![INF; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = 0;
        for &w in g.neighbors(u) {
            row[w] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub fn reachable(d: &[Vec<usize>], s: usize, t: usize) -> bool {
    d[s][t] < INF
}

/// Every shortest `(s, t)` path as a node sequence.
pub fn shortest_paths(g: &Graph, d: &[Vec<usize>], s: usize, t: usize) -> Vec<Vec<usize>> {
    fn walk(
        g: &Graph,
        d: &[Vec<usize>],
        t: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let u = *path.last().unwrap();
        if u == t {
            out.push(path.clone());
            return;
        }
        for &w in g.neighbors(u) {
            if d[w][t] + 1 == d[u][t] {
                path.push(w);
                walk(g, d, t, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if reachable(d, s, t) {
        walk(g, d, t, &mut vec![s], &mut out);
    }
    out
}

/// Fraction of shortest `(s, t)` paths containing `v`.
pub fn dependency(paths: &[Vec<usize>], v: usize) -> f64 {
    let through = paths.iter().filter(|p| p.contains(&v)).count();
    through as f64 / paths.len() as f64
}

pub fn freeman(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let d = all_pairs_distances(g);
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            if s == t || !reachable(&d, s, t) {
                continue;
            }
            let paths = shortest_paths(g, &d, s, t);
            for (v, slot) in bc.iter_mut().enumerate() {
                if v != s && v != t {
                    *slot += dependency(&paths, v);
                }
            }
        }
    }
    bc
}

/// `sum_t delta_st(v) * d(s,v) / d(s,t)` for every `v`.
pub fn trust_weighted_dependency(g: &Graph, s: usize) -> Vec<f64> {
    let n = g.node_count();
    let d = all_pairs_distances(g);
    let mut out = vec![0.0; n];
    for t in 0..n {
        if t == s || !reachable(&d, s, t) {
            continue;
        }
        let paths = shortest_paths(g, &d, s, t);
        for (v, slot) in out.iter_mut().enumerate() {
            if v != s && v != t {
                *slot += dependency(&paths, v) * d[s][v] as f64 / d[s][t] as f64;
            }
        }
    }
    out
}

pub fn reliance(g: &Graph, s: usize) -> Vec<f64> {
    let scale = (g.node_count() - 2) as f64;
    trust_weighted_dependency(g, s)
        .into_iter()
        .map(|x| x / scale)
        .collect()
}

/// `max_t r(s,t)(v)` for every `v`.
pub fn max_path_reliance(g: &Graph, s: usize) -> Vec<f64> {
    let n = g.node_count();
    let d = all_pairs_distances(g);
    let mut out = vec![0.0f64; n];
    for t in 0..n {
        if t == s || !reachable(&d, s, t) {
            continue;
        }
        let paths = shortest_paths(g, &d, s, t);
        for (v, slot) in out.iter_mut().enumerate() {
            if v != s && v != t {
                let r = dependency(&paths, v) * d[s][v] as f64 / d[s][t] as f64;
                *slot = slot.max(r);
            }
        }
    }
    out
}

/// Solves `a x = b` by Gauss-Jordan elimination with partial pivoting.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col];
        assert!(p.abs() > 1e-14, "singular system");
        for row in 0..n {
            if row != col {
                let f = a[row][col] / p;
                if f != 0.0 {
                    for k in col..n {
                        a[row][k] -= f * a[col][k];
                    }
                    b[row] -= f * b[col];
                }
            }
        }
    }
    (0..n).map(|i| b[i] / a[i][i]).collect()
}

/// PageRank as the solution of `(I - d M) x = (1 - d)/n`, with dangling
/// columns replaced by the uniform distribution.
pub fn pagerank(g: &Graph, damping: f64) -> Vec<f64> {
    let n = g.node_count();
    let mut a = vec![vec![0.0; n]; n];
    for (v, row) in a.iter_mut().enumerate() {
        row[v] = 1.0;
    }
    for u in 0..n {
        let deg = g.degree(u);
        if deg == 0 {
            for row in a.iter_mut() {
                row[u] -= damping / n as f64;
            }
        } else {
            for &v in g.neighbors(u) {
                a[v][u] -= damping / deg as f64;
            }
        }
    }
    solve(a, vec![(1.0 - damping) / n as f64; n])
}

/// Markov centrality through the fundamental matrix
/// `Z = (I - P + 1 pi^T)^-1`, using `m(i, j) = (Z_jj - Z_ij) / pi_j`.
pub fn markov_fundamental(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let two_m: f64 = (0..n).map(|u| g.degree(u) as f64).sum();
    let pi: Vec<f64> = (0..n).map(|u| g.degree(u) as f64 / two_m).collect();
    let mut z = vec![vec![0.0; n]; n];
    for col in 0..n {
        // column `col` of the inverse
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = if g.has_edge(i, j) { 1.0 / g.degree(i) as f64 } else { 0.0 };
                a[i][j] = f64::from(i == j) - p + pi[j];
            }
        }
        let mut e = vec![0.0; n];
        e[col] = 1.0;
        let x = solve(a, e);
        for i in 0..n {
            z[i][col] = x[i];
        }
    }
    (0..n)
        .map(|i| {
            let total: f64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[j][j] - z[i][j]) / pi[j])
                .sum();
            (n - 1) as f64 / total
        })
        .collect()
}

pub fn assert_close(a: &[f64], b: &[f64], tol: f64, what: &str) {
    assert_eq!(a.len(), b.len(), "{what}: length");
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        assert!((x - y).abs() <= tol, "{what}: node {i}: {x} vs {y} (tol {tol})");
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// The same graph with node `i` renamed to `perm[i]`.
pub fn permuted(g: &Graph, perm: &[usize]) -> Graph {
    let pairs: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    Graph::from_index_pairs(g.node_count(), &pairs).unwrap()
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

/// The eight-node layering example: a 1-2-3-5-7-8 chain with leaves 4 on 3
/// and 6 on 5, node 3 separating {1, 2} from the rest.
pub fn layering_graph() -> Graph {
    let text = std::fs::read_to_string(fixture("layering.edges")).unwrap();
    reliance::load_edge_list(text.as_bytes(), &reliance::LoadOptions::default())
        .unwrap()
        .0
}
