//! Immutable simple-graph value type over bitset adjacency rows.
//!
//! Common-neighbor counting (popcount of row AND) is the hot kernel that
//! every census and audit in the crate reduces to.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

mod cliques;
mod graph6;
mod iso;

pub use cliques::maximal_cliques;
pub use graph6::{from_graph6, to_graph6};
pub use iso::{are_isomorphic, is_rook_grid};

/// Finite simple undirected graph, adjacency stored as fixed-width bit
/// rows. Symmetric and irreflexive by construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={})", self.n, self.edge_count())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            bits: vec![0u64; n * words],
            labels: None,
        }
    }

    /// Builds from undirected edges; rejects loops and out-of-range ends.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Domain(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::Domain(format!("loop at vertex {u}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds from an adjacency predicate evaluated on unordered pairs.
    pub fn from_fn(n: usize, mut adj: impl FnMut(usize, usize) -> bool) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adj(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    /// Builds from per-vertex adjacency rows (used by parallel builders).
    /// Rows must already be symmetric and irreflexive.
    pub(crate) fn from_rows(n: usize, words: usize, bits: Vec<u64>) -> Graph {
        debug_assert_eq!(bits.len(), n * words);
        let g = Graph {
            n,
            words,
            bits,
            labels: None,
        };
        #[cfg(debug_assertions)]
        for u in 0..n {
            debug_assert!(!g.has_edge(u, u));
            for v in 0..u {
                debug_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
        g
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n {
            return Err(Error::Domain(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        bits_to_vec(self.row(v))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Returns the common valency if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// |Γ(u) ∩ Γ(v)| by popcount of the row intersection.
    #[inline]
    pub fn common_count(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        let and: Vec<u64> = self
            .row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| a & b)
            .collect();
        bits_to_vec(&and)
    }

    /// Single-source distances; `u32::MAX` marks unreachable vertices.
    pub fn distances_from(&self, x: usize) -> Vec<u32> {
        assert!(x < self.n);
        let mut dist = vec![u32::MAX; self.n];
        let mut visited = vec![0u64; self.words];
        let mut frontier = vec![0u64; self.words];
        visited[x / 64] |= 1 << (x % 64);
        frontier[x / 64] |= 1 << (x % 64);
        dist[x] = 0;
        let mut level = 0u32;
        loop {
            let mut next = vec![0u64; self.words];
            for v in BitIter::new(&frontier) {
                for (nw, rw) in next.iter_mut().zip(self.row(v)) {
                    *nw |= rw;
                }
            }
            for (nw, vw) in next.iter_mut().zip(&visited) {
                *nw &= !vw;
            }
            if next.iter().all(|&w| w == 0) {
                return dist;
            }
            level += 1;
            for v in BitIter::new(&next) {
                dist[v] = level;
                visited[v / 64] |= 1 << (v % 64);
            }
            frontier = next;
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances_from(0).iter().all(|&d| d != u32::MAX)
    }

    /// Maximum eccentricity; `None` when disconnected or empty.
    pub fn diameter(&self) -> Option<u32> {
        if self.n == 0 {
            return None;
        }
        let mut diam = 0;
        for x in 0..self.n {
            let e = self
                .distances_from(x)
                .iter()
                .copied()
                .max()
                .unwrap_or(u32::MAX);
            if e == u32::MAX {
                return None;
            }
            diam = diam.max(e);
        }
        Some(diam)
    }

    pub fn bfs_profile(&self, x: usize) -> DistanceProfile {
        let dist = self.distances_from(x);
        let mut counts = Vec::new();
        let mut reachable = 0usize;
        let mut ecc = 0u32;
        for &d in &dist {
            if d == u32::MAX {
                continue;
            }
            reachable += 1;
            ecc = ecc.max(d);
            let d = d as usize;
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
        DistanceProfile {
            source: x,
            dist,
            counts,
            eccentricity: ecc,
            reachable,
            k2_by_mu: None,
            ell: None,
        }
    }

    /// Profile with the distance-2 class split by common-neighbor count
    /// 2m, plus the quotient k_{2,2(n-1)}/n when it is an integer.
    pub fn bfs_profile_with_mu(&self, x: usize, n: usize) -> DistanceProfile {
        let mut profile = self.bfs_profile(x);
        let mut by_mu = BTreeMap::new();
        for (y, &d) in profile.dist.iter().enumerate() {
            if d == 2 {
                *by_mu.entry(self.common_count(x, y)).or_insert(0usize) += 1;
            }
        }
        if n > 1 {
            let k_2nm2 = by_mu.get(&(2 * (n - 1))).copied().unwrap_or(0);
            profile.ell = (k_2nm2 % n == 0).then(|| k_2nm2 / n);
        }
        profile.k2_by_mu = Some(by_mu);
        profile
    }

    /// Induced subgraph, preserving the order of `verts`.
    pub fn induced(&self, verts: &[usize]) -> Result<Graph> {
        if let Some(&v) = verts.iter().find(|&&v| v >= self.n) {
            return Err(Error::Domain(format!("vertex {v} out of range")));
        }
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        if let Some(labels) = &self.labels {
            g.labels = Some(verts.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g.labels = self.labels.clone();
        g
    }

    pub fn is_complete(&self) -> bool {
        self.regular_degree() == Some(self.n.saturating_sub(1))
    }

    /// Cycle lengths of a 2-regular graph.
    pub fn cycle_decomposition(&self) -> Result<CycleProfile> {
        if let Some(v) = (0..self.n).find(|&v| self.degree(v) != 2) {
            return Err(Error::Domain(format!(
                "vertex {v} has degree {}, expected 2",
                self.degree(v)
            )));
        }
        let mut seen = vec![false; self.n];
        let mut lengths = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut prev = usize::MAX;
            let mut cur = start;
            loop {
                seen[cur] = true;
                len += 1;
                let nb = self.neighbors(cur);
                let next = if nb[0] != prev { nb[0] } else { nb[1] };
                prev = cur;
                cur = next;
                if cur == start {
                    break;
                }
            }
            lengths.push(len);
        }
        Ok(CycleProfile::from_lengths(lengths))
    }

    pub fn to_json(&self) -> String {
        let dto = GraphJson {
            n: self.n,
            labels: self.labels.clone(),
            adj: (0..self.n).map(|v| self.neighbors(v)).collect(),
        };
        serde_json::to_string(&dto).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Graph> {
        let dto: GraphJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("graph json: {e}")))?;
        if dto.adj.len() != dto.n {
            return Err(Error::Parse("adjacency list length mismatch".into()));
        }
        let mut g = Graph::empty(dto.n);
        for (u, row) in dto.adj.iter().enumerate() {
            for &v in row {
                if v >= dto.n {
                    return Err(Error::Parse(format!("vertex {v} out of range")));
                }
                if v == u {
                    return Err(Error::Parse(format!("loop at vertex {u}")));
                }
                if !dto.adj[v].contains(&u) {
                    return Err(Error::Parse(format!("edge ({u},{v}) not symmetric")));
                }
                g.set_edge(u, v);
            }
        }
        if let Some(labels) = dto.labels {
            g = g
                .with_labels(labels)
                .map_err(|e| Error::Parse(e.to_string()))?;
        }
        Ok(g)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    labels: Option<Vec<String>>,
    adj: Vec<Vec<usize>>,
}

/// Per-source BFS census: distances, class sizes, and optionally the
/// distance-2 class split by μ-graph order.
#[derive(Clone, Debug)]
pub struct DistanceProfile {
    pub source: usize,
    pub dist: Vec<u32>,
    /// counts[i] = number of vertices at distance i.
    pub counts: Vec<usize>,
    pub eccentricity: u32,
    pub reachable: usize,
    /// 2m -> |{y at distance 2 : |Γ(x)∩Γ(y)| = 2m}|.
    pub k2_by_mu: Option<BTreeMap<usize, usize>>,
    pub ell: Option<usize>,
}

impl DistanceProfile {
    pub fn k(&self, i: usize) -> usize {
        self.counts.get(i).copied().unwrap_or(0)
    }
}

/// Multiset of cycle lengths, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleProfile(Vec<usize>);

impl CycleProfile {
    pub fn from_lengths(mut lengths: Vec<usize>) -> CycleProfile {
        lengths.sort_unstable();
        CycleProfile(lengths)
    }

    /// `count` cycles, all of length `len`.
    pub fn uniform(count: usize, len: usize) -> CycleProfile {
        CycleProfile(vec![len; count])
    }

    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    pub fn cycle_count(&self) -> usize {
        self.0.len()
    }

    /// Total number of vertices covered.
    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    /// `Some((count, len))` when all cycles share one length.
    pub fn as_uniform(&self) -> Option<(usize, usize)> {
        let &first = self.0.first()?;
        self.0
            .iter()
            .all(|&l| l == first)
            .then_some((self.0.len(), first))
    }
}

impl fmt::Display for CycleProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn bits_to_vec(words: &[u64]) -> Vec<usize> {
    BitIter::new(words).collect()
}

/// Iterates set bit positions of a word slice.
pub(crate) struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> BitIter<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            idx: 0,
            cur: *words.first().unwrap_or(&0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}
