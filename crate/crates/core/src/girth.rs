//! Short-cycle detection for quasi-cyclic Tanner graphs.
//!
//! Two independent routes: the model-level closed-path test, which only looks at
//! exponents, and a breadth-first search on the expanded bipartite graph.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec;
use crate::gf2::{BinaryMatrix, ModelMatrix};

/// A closed path `(i0,j0),(i0,j1),(i1,j1),(i1,j2),…,(i_{k-1},j_{k-1}),(i_{k-1},j0)`
/// over block rows `rows[t] = i_t` and block columns `cols[t] = j_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPath {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl ClosedPath {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Self {
        ClosedPath { rows, cols }
    }

    /// Length of the corresponding cycle, `2k`.
    pub fn len(&self) -> usize {
        2 * self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn validate(&self, m: &ModelMatrix) -> Result<()> {
        let k = self.rows.len();
        if k < 2 || self.cols.len() != k {
            return Err(Error::InvalidPath(format!(
                "need k >= 2 row and column indices, got {} and {}",
                k,
                self.cols.len()
            )));
        }
        if let Some(&i) = self.rows.iter().find(|&&i| i >= m.block_rows()) {
            return Err(Error::InvalidPath(format!("block row {i} out of range")));
        }
        if let Some(&j) = self.cols.iter().find(|&&j| j >= m.block_cols()) {
            return Err(Error::InvalidPath(format!("block column {j} out of range")));
        }
        for t in 0..k {
            let next = (t + 1) % k;
            if self.rows[t] == self.rows[next] || self.cols[t] == self.cols[next] {
                return Err(Error::InvalidPath(format!(
                    "consecutive indices repeat at step {t}"
                )));
            }
        }
        Ok(())
    }

    /// The same path started `by` steps later.
    pub fn rotated(&self, by: usize) -> ClosedPath {
        let mut rows = self.rows.clone();
        let mut cols = self.cols.clone();
        let k = rows.len().max(1);
        rows.rotate_left(by % k);
        cols.rotate_left(by % k);
        ClosedPath { rows, cols }
    }

    /// The same cycle traversed backwards: `(i_{k-1}, j0), (i_{k-1}, j_{k-1}), …`.
    pub fn reversed(&self) -> ClosedPath {
        let k = self.rows.len();
        let rows: Vec<usize> = (0..k).map(|t| self.rows[k - 1 - t]).collect();
        let cols: Vec<usize> = (0..k).map(|t| self.cols[(k - t) % k]).collect();
        ClosedPath { rows, cols }
    }
}

/// Alternating exponent sum along `path` is zero mod the circulant order.
pub fn cycle_condition(m: &ModelMatrix, path: &ClosedPath) -> Result<bool> {
    path.validate(m)?;
    Ok(alternating_sum(m, &path.rows, &path.cols) == 0)
}

fn alternating_sum(m: &ModelMatrix, rows: &[usize], cols: &[usize]) -> u64 {
    let n = m.order();
    let k = rows.len();
    let mut acc = 0u64;
    for t in 0..k {
        let i = rows[t];
        acc = (acc + m.exponent(i, cols[t]) % n) % n;
        acc = (acc + n - m.exponent(i, cols[(t + 1) % k]) % n) % n;
    }
    acc
}

/// Some pair of block rows has a difference vector with a repeated entry mod the order.
pub fn has_four_cycle(m: &ModelMatrix) -> bool {
    let rows = m.exponents();
    (0..rows.len()).any(|i| {
        (i + 1..rows.len())
            .any(|j| !crate::models::difference_is_distinct(&rows[i], &rows[j], m.order()))
    })
}

const COLUMN_ORDERS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Every length-6 closed path: rows fixed in ascending order, all six column
/// orderings, which covers each 6-cycle shape exactly once per row/column triple.
pub fn six_cycle_paths(m: &ModelMatrix) -> impl Iterator<Item = ClosedPath> + '_ {
    let (r, c) = (m.block_rows(), m.block_cols());
    triples(r).flat_map(move |rt| {
        triples(c).flat_map(move |ct| {
            COLUMN_ORDERS.iter().map(move |ord| {
                ClosedPath::new(rt.to_vec(), ord.iter().map(|&o| ct[o]).collect())
            })
        })
    })
}

fn triples(n: usize) -> impl Iterator<Item = [usize; 3]> + Clone {
    (0..n).flat_map(move |a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
}

pub fn has_six_cycle(m: &ModelMatrix) -> bool {
    six_cycle_paths(m).any(|p| alternating_sum(m, &p.rows, &p.cols) == 0)
}

/// Shortest cycle length of a Tanner graph, or the fact that it exceeds the search cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Girth {
    Exact(usize),
    GreaterThan(usize),
}

impl Girth {
    /// True iff the girth is known to exceed `bound`.
    pub fn exceeds(&self, bound: usize) -> bool {
        match *self {
            Girth::Exact(g) => g > bound,
            Girth::GreaterThan(cap) => cap >= bound,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Exact(g) => write!(f, "{g}"),
            Girth::GreaterThan(cap) => write!(f, ">{cap}"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Girth::Exact(g) => s.serialize_u64(*g as u64),
            Girth::GreaterThan(_) => s.serialize_str(&self.to_string()),
        }
    }
}

/// Adjacency lists of the bipartite graph: nodes `0..cols` are variables,
/// `cols..cols+rows` are checks.
fn tanner_adjacency(h: &BinaryMatrix) -> Vec<Vec<usize>> {
    let (rows, cols) = h.shape();
    let mut adj = vec![Vec::new(); rows + cols];
    for r in 0..rows {
        for c in h.row(r).ones() {
            adj[c].push(cols + r);
            adj[cols + r].push(c);
        }
    }
    adj
}

fn shortest_cycle_from(adj: &[Vec<usize>], start: usize, bound: usize) -> usize {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut parent = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    dist[start] = 0;
    queue.push_back(start);
    let mut best = usize::MAX;
    while let Some(u) = queue.pop_front() {
        if 2 * dist[u] >= best.min(bound + 1) {
            break;
        }
        for &v in &adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            } else if parent[u] != v {
                best = best.min(dist[u] + dist[v] + 1);
            }
        }
    }
    best
}

/// Exact girth of the Tanner graph of `h` when it is at most `cap`.
pub fn girth_bfs(h: &BinaryMatrix, cap: usize) -> Girth {
    let adj = tanner_adjacency(h);
    // Every cycle passes through a variable node.
    let best = exec::map_reduce(
        h.cols(),
        usize::MAX,
        |s| shortest_cycle_from(&adj, s, cap),
        usize::min,
    );
    if best <= cap {
        Girth::Exact(best)
    } else {
        Girth::GreaterThan(cap)
    }
}
