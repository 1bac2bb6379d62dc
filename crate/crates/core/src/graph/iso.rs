//! Isomorphism decision (backtracking over refinement classes) and
//! structural recognition of rook grids K_m □ K_n.

use std::collections::BTreeMap;

use super::{maximal_cliques, Graph};
use crate::{Error, Result, DEFAULT_ISO_CAP};

/// Exact isomorphism decision for graphs up to [`DEFAULT_ISO_CAP`]
/// vertices.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    let cap = DEFAULT_ISO_CAP;
    if g1.n_vertices() > cap || g2.n_vertices() > cap {
        return Err(Error::Capacity(format!(
            "isomorphism test capped at {cap} vertices"
        )));
    }
    if g1.n_vertices() != g2.n_vertices() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let n = g1.n_vertices();
    if n == 0 {
        return Ok(true);
    }
    let c1 = refine_colors(g1);
    let c2 = refine_colors(g2);
    if color_histogram(&c1) != color_histogram(&c2) {
        return Ok(false);
    }

    // order g1's vertices most-constrained-first: rarest color, then by
    // attachment to already-placed vertices
    let hist = color_histogram(&c1);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (hist[&c1[v]], c1[v], v));
    let mut placed = vec![false; n];
    let mut ordered = Vec::with_capacity(n);
    for _ in 0..n {
        let &v = order
            .iter()
            .filter(|&&v| !placed[v])
            .max_by_key(|&&v| {
                let attached = g1
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| placed[u])
                    .count();
                (attached, std::cmp::Reverse(hist[&c1[v]]), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[v] = true;
        ordered.push(v);
    }

    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend(g1, g2, &c1, &c2, &ordered, 0, &mut mapping, &mut used))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g1: &Graph,
    g2: &Graph,
    c1: &[u64],
    c2: &[u64],
    order: &[usize],
    depth: usize,
    mapping: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    'cand: for w in 0..g2.n_vertices() {
        if used[w] || c2[w] != c1[v] || g2.degree(w) != g1.degree(v) {
            continue;
        }
        for &u in &order[..depth] {
            if g1.has_edge(v, u) != g2.has_edge(w, mapping[u]) {
                continue 'cand;
            }
        }
        mapping[v] = w;
        used[w] = true;
        if extend(g1, g2, c1, c2, order, depth + 1, mapping, used) {
            return true;
        }
        mapping[v] = usize::MAX;
        used[w] = false;
    }
    false
}

/// Iterated neighbourhood-color refinement; returns stable color ids.
fn refine_colors(g: &Graph) -> Vec<u64> {
    let n = g.n_vertices();
    // seed with (degree, sorted common-neighbor counts to neighbors)
    let mut colors: Vec<u64> = (0..n)
        .map(|v| {
            let mut sig: Vec<usize> = g
                .neighbors(v)
                .iter()
                .map(|&u| g.common_count(v, u))
                .collect();
            sig.sort_unstable();
            stable_id(&(g.degree(v), sig))
        })
        .collect();
    for _ in 0..n {
        let mut next: Vec<u64> = (0..n)
            .map(|v| {
                let mut sig: Vec<u64> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
                sig.sort_unstable();
                stable_id(&(colors[v], sig))
            })
            .collect();
        // relabel canonically so both graphs get comparable ids
        let mut relabel = BTreeMap::new();
        let mut sorted: Vec<u64> = next.clone();
        sorted.sort_unstable();
        sorted.dedup();
        for (i, c) in sorted.into_iter().enumerate() {
            relabel.insert(c, i as u64);
        }
        for c in next.iter_mut() {
            *c = relabel[c];
        }
        if next == colors {
            break;
        }
        colors = next;
    }
    colors
}

fn stable_id<T: std::hash::Hash>(value: &T) -> u64 {
    use std::hash::Hasher;
    // FNV-ish deterministic hasher; avoids RandomState so color ids are
    // comparable across graphs and runs
    struct Fnv(u64);
    impl Hasher for Fnv {
        fn finish(&self) -> u64 {
            self.0
        }
        fn write(&mut self, bytes: &[u8]) {
            for &b in bytes {
                self.0 ^= b as u64;
                self.0 = self.0.wrapping_mul(0x100000001b3);
            }
        }
    }
    let mut h = Fnv(0xcbf29ce484222325);
    value.hash(&mut h);
    h.finish()
}

fn color_histogram(colors: &[u64]) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

/// Structural test for g ≅ K_m □ K_n: order mn, degrees m+n−2, the edge
/// set partitions into m cliques of size n and n cliques of size m with
/// each vertex in exactly one of each, and non-adjacent pairs have
/// exactly two common neighbours.
pub fn is_rook_grid(g: &Graph, m: usize, n: usize) -> bool {
    let v = g.n_vertices();
    if m == 0 || n == 0 || v != m * n {
        return false;
    }
    if g.regular_degree() != Some(m + n - 2) {
        return false;
    }
    // K_1 □ K_n is a complete graph; the clique-partition argument below
    // needs both sides ≥ 2
    if m == 1 || n == 1 {
        return g.is_complete();
    }
    for x in 0..v {
        for y in x + 1..v {
            if !g.has_edge(x, y) && g.common_count(x, y) != 2 {
                return false;
            }
        }
    }
    let cliques = maximal_cliques(g);
    if cliques.len() != m + n {
        return false;
    }
    // two-color the clique intersection graph: rows vs columns
    let mut color = vec![usize::MAX; cliques.len()];
    let mut queue = vec![0usize];
    color[0] = 0;
    while let Some(i) = queue.pop() {
        for j in 0..cliques.len() {
            if i == j {
                continue;
            }
            let meets = cliques[i].iter().any(|v| cliques[j].contains(v));
            if !meets {
                continue;
            }
            if color[j] == usize::MAX {
                color[j] = 1 - color[i];
                queue.push(j);
            } else if color[j] == color[i] {
                return false;
            }
        }
    }
    if color.contains(&usize::MAX) {
        return false;
    }
    let side0: Vec<&Vec<usize>> = cliques
        .iter()
        .zip(&color)
        .filter(|(_, &c)| c == 0)
        .map(|(q, _)| q)
        .collect();
    let side1: Vec<&Vec<usize>> = cliques
        .iter()
        .zip(&color)
        .filter(|(_, &c)| c == 1)
        .map(|(q, _)| q)
        .collect();
    let fits = |rows: &[&Vec<usize>], cols: &[&Vec<usize>]| {
        rows.len() == m
            && cols.len() == n
            && rows.iter().all(|q| q.len() == n)
            && cols.iter().all(|q| q.len() == m)
    };
    let (rows, cols) = if fits(&side0, &side1) {
        (side0, side1)
    } else if fits(&side1, &side0) {
        (side1, side0)
    } else {
        return false;
    };
    // each vertex in exactly one clique per side
    for side in [&rows, &cols] {
        let mut count = vec![0usize; v];
        for q in side.iter() {
            for &x in q.iter() {
                count[x] += 1;
            }
        }
        if count.iter().any(|&c| c != 1) {
            return false;
        }
    }
    true
}
