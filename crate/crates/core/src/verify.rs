//! Structural audits for locally n×n grid graphs: clique laws, local
//! parameter bounds, μ-clique matching structure, parity constraints,
//! closed-form order/diameter bounds, and the locally 5×5 dichotomy.
//!
//! Audits collect [`Violation`]s instead of failing fast, so a corrupted
//! graph yields a full report. Preconditions that make a check
//! meaningless (the μ-order hypotheses) surface as
//! `Error::HypothesisUnmet`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::Graph;
use crate::par;
use crate::{Error, Result};

/// One failed check with enough context to locate it.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub check: String,
    pub witness: Vec<usize>,
    pub detail: String,
}

impl Violation {
    fn new(check: &str, witness: Vec<usize>, detail: String) -> Violation {
        Violation {
            check: check.to_string(),
            witness,
            detail,
        }
    }
}

/// Outcome of locally-grid detection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GridDetection {
    Grid { m: usize, n: usize },
    Failure { witness: usize },
}

/// Checks that every vertex neighbourhood induces K_m □ K_n for one
/// fixed (m, n) with m ≤ n. Failure carries the first offending vertex.
pub fn detect_locally_grid(g: &Graph) -> Result<GridDetection> {
    if g.n_vertices() == 0 || !g.is_connected() {
        return Err(Error::Domain("detection needs a connected graph".into()));
    }
    let per_vertex = par::map_indices(g.n_vertices(), true, |v| {
        let nb = g.neighbors(v);
        let local = g.induced(&nb).expect("neighbors are in range");
        grid_parameters(&local)
    });
    let mut expected: Option<(usize, usize)> = None;
    for (v, mn) in per_vertex.iter().enumerate() {
        match (expected, mn) {
            (_, None) => return Ok(GridDetection::Failure { witness: v }),
            (None, Some(mn)) => expected = Some(*mn),
            (Some(e), Some(mn)) if e != *mn => {
                return Ok(GridDetection::Failure { witness: v })
            }
            _ => {}
        }
    }
    let (m, n) = expected.expect("nonempty graph");
    Ok(GridDetection::Grid { m, n })
}

/// (m, n) with m ≤ n such that `local` ≅ K_m □ K_n, if any.
fn grid_parameters(local: &Graph) -> Option<(usize, usize)> {
    let k = local.n_vertices();
    if k == 0 {
        return None;
    }
    let d = local.regular_degree()?;
    // m + n = d + 2 and m·n = k
    let s = d + 2;
    let disc = s.checked_mul(s)?.checked_sub(4 * k)?;
    let root = disc.isqrt();
    if root * root != disc || (s - root) % 2 != 0 {
        return None;
    }
    let m = (s - root) / 2;
    let n = (s + root) / 2;
    (m >= 1 && crate::graph::is_rook_grid(local, m, n)).then_some((m, n))
}

/// Best-effort grid side for audits on inputs that fail full detection:
/// the most common degree must be a perfect square n².
fn infer_grid_side(g: &Graph) -> Result<usize> {
    if g.n_vertices() == 0 {
        return Err(Error::Domain("empty graph".into()));
    }
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..g.n_vertices() {
        *histogram.entry(g.degree(v)).or_insert(0) += 1;
    }
    let (&degree, _) = histogram.iter().max_by_key(|(_, &c)| c).unwrap();
    let n = degree.isqrt();
    if n * n != degree || n == 0 {
        return Err(Error::Domain(format!(
            "common degree {degree} is not a square; no grid side to audit against"
        )));
    }
    Ok(n)
}

/// Detection outcome folded down to (n, leading violations) for audits
/// that keep going on corrupted inputs.
fn grid_side_for_audit(g: &Graph) -> Result<(usize, Vec<Violation>)> {
    match detect_locally_grid(g) {
        Ok(GridDetection::Grid { m, n }) if m == n => Ok((n, Vec::new())),
        Ok(GridDetection::Grid { m, n }) => Err(Error::Domain(format!(
            "locally {m}×{n} grid with m ≠ n is out of scope for this audit"
        ))),
        Ok(GridDetection::Failure { witness }) => {
            let n = infer_grid_side(g)?;
            Ok((
                n,
                vec![Violation::new(
                    "locally-grid-detection",
                    vec![witness],
                    format!("neighbourhood of {witness} is not an {n}×{n} grid"),
                )],
            ))
        }
        Err(e) => Err(e),
    }
}

/// The two maximal cliques through each edge of a locally n×n grid host,
/// grown from the edge's common neighbourhood (two disjoint (n−1)-cliques).
/// Returns the deduplicated clique list (each sorted, list sorted) plus
/// violations for edges whose neighbourhood has the wrong shape.
pub fn grid_cliques(g: &Graph, n: usize) -> (Vec<Vec<usize>>, Vec<Violation>) {
    let mut violations = Vec::new();
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    for (x, y) in g.edges() {
        let common = g.common_neighbors(x, y);
        if common.len() != 2 * (n - 1) {
            violations.push(Violation::new(
                "edge-triangle-count",
                vec![x, y],
                format!("edge lies in {} triangles, expected {}", common.len(), 2 * (n - 1)),
            ));
        }
        let local = g.induced(&common).expect("common neighbors in range");
        let comps = components(&local);
        let shape_ok = comps.len() == 2
            && comps.iter().all(|c| {
                c.len() == n - 1 && c.iter().all(|&i| local.degree(i) == n - 2)
            });
        if !shape_ok {
            violations.push(Violation::new(
                "edge-local-shape",
                vec![x, y],
                "common neighbourhood of an edge is not two disjoint (n-1)-cliques".into(),
            ));
            continue;
        }
        for comp in comps {
            let mut clique: Vec<usize> = comp.iter().map(|&i| common[i]).collect();
            clique.push(x);
            clique.push(y);
            clique.sort_unstable();
            cliques.push(clique);
        }
    }
    cliques.sort_unstable();
    cliques.dedup();
    (cliques, violations)
}

fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n_vertices()];
    let mut out = Vec::new();
    for start in 0..g.n_vertices() {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Clique and triangle bookkeeping for a locally n×n grid graph.
#[derive(Debug, Serialize)]
pub struct StructuralCensus {
    pub n: usize,
    pub order: usize,
    pub clique_count: usize,
    pub expected_clique_count: usize,
    pub triangle_count: usize,
    pub expected_triangle_count: usize,
    pub violations: Vec<Violation>,
}

pub fn structural_census(g: &Graph) -> Result<StructuralCensus> {
    let (n, mut violations) = grid_side_for_audit(g)?;
    let order = g.n_vertices();
    let (cliques, mut edge_violations) = grid_cliques(g, n);
    violations.append(&mut edge_violations);

    // every clique must have size n+1 and be maximal in g
    for clique in &cliques {
        if clique.len() != n + 1 {
            violations.push(Violation::new(
                "clique-size",
                clique.clone(),
                format!("maximal clique of size {}, expected {}", clique.len(), n + 1),
            ));
        }
        let extendable = (0..order)
            .find(|&v| !clique.contains(&v) && clique.iter().all(|&u| g.has_edge(u, v)));
        if let Some(v) = extendable {
            violations.push(Violation::new(
                "clique-not-maximal",
                clique.clone(),
                format!("vertex {v} extends the clique"),
            ));
        }
    }

    // pair -> clique ids, so the per-edge and per-triangle checks stay
    // linear in the clique sizes
    let mut per_vertex = vec![0usize; order];
    let mut through_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (ci, clique) in cliques.iter().enumerate() {
        for (i, &v) in clique.iter().enumerate() {
            per_vertex[v] += 1;
            for &w in clique.iter().skip(i + 1) {
                through_pair.entry((v, w)).or_default().push(ci);
            }
        }
    }
    for (v, &count) in per_vertex.iter().enumerate() {
        if count != 2 * n {
            violations.push(Violation::new(
                "vertex-clique-count",
                vec![v],
                format!("vertex lies in {count} maximal cliques, expected {}", 2 * n),
            ));
        }
    }
    for (x, y) in g.edges() {
        let through = through_pair.get(&(x, y)).map_or(0, |c| c.len());
        if through != 2 {
            violations.push(Violation::new(
                "edge-clique-count",
                vec![x, y],
                format!("edge lies in {through} maximal cliques, expected 2"),
            ));
        }
    }

    // triangles: count via edges, check each lies in exactly one clique
    let triangle_count: usize = g
        .edges()
        .iter()
        .map(|&(x, y)| g.common_count(x, y))
        .sum::<usize>()
        / 3;
    for (x, y) in g.edges() {
        let Some(pair_cliques) = through_pair.get(&(x, y)) else {
            continue;
        };
        for z in g.common_neighbors(x, y) {
            if z < x || z < y {
                continue; // count each triangle once
            }
            let containing = pair_cliques
                .iter()
                .filter(|&&ci| cliques[ci].contains(&z))
                .count();
            if containing != 1 {
                violations.push(Violation::new(
                    "triangle-unique-clique",
                    vec![x, y, z],
                    format!("triangle lies in {containing} maximal cliques"),
                ));
            }
        }
    }

    let expected_clique_count = order * 2 * n / (n + 1);
    let expected_triangle_count = order * n * n * (n - 1) / 3;
    if cliques.len() != expected_clique_count {
        violations.push(Violation::new(
            "clique-total",
            vec![],
            format!(
                "{} maximal cliques, expected {expected_clique_count}",
                cliques.len()
            ),
        ));
    }
    if triangle_count != expected_triangle_count {
        violations.push(Violation::new(
            "triangle-total",
            vec![],
            format!("{triangle_count} triangles, expected {expected_triangle_count}"),
        ));
    }
    if !(2 * order).is_multiple_of(n + 1) {
        violations.push(Violation::new(
            "order-divisibility",
            vec![],
            format!("{} does not divide 2·{order}", n + 1),
        ));
    }
    if n % 3 == 2 && !order.is_multiple_of(3) {
        violations.push(Violation::new(
            "order-divisibility",
            vec![],
            format!("3 does not divide {order} although n ≡ 2 (mod 3)"),
        ));
    }

    Ok(StructuralCensus {
        n,
        order,
        clique_count: cliques.len(),
        expected_clique_count,
        triangle_count,
        expected_triangle_count,
        violations,
    })
}

/// Distances from x to clique members, minimized.
fn clique_distance(dist: &[u32], clique: &[usize]) -> u32 {
    clique.iter().map(|&v| dist[v]).min().unwrap_or(u32::MAX)
}

/// Audits the clique-versus-vertex distance laws.
pub fn clique_distance_audit(g: &Graph) -> Result<Vec<Violation>> {
    let (n, mut violations) = grid_side_for_audit(g)?;
    let (cliques, _) = grid_cliques(g, n);
    let mut clique_through: Vec<Vec<usize>> = vec![Vec::new(); g.n_vertices()];
    for (i, clique) in cliques.iter().enumerate() {
        for &v in clique {
            clique_through[v].push(i);
        }
    }
    let per_x = par::map_indices(g.n_vertices(), true, |x| {
        let mut local = Vec::new();
        let dist = g.distances_from(x);
        for (ci, clique) in cliques.iter().enumerate() {
            if clique.contains(&x) {
                continue;
            }
            let d = clique_distance(&dist, clique);
            let in_g1 = clique.iter().filter(|&&v| dist[v] == 1).count();
            let in_g2 = clique.iter().filter(|&&v| dist[v] == 2).count();
            if d == 1 {
                if in_g1 != 2 {
                    local.push(Violation::new(
                        "distance1-gamma1-size",
                        vec![x, ci],
                        format!("|C ∩ Γ(x)| = {in_g1}, expected 2"),
                    ));
                }
                if in_g2 != n - 1 {
                    local.push(Violation::new(
                        "distance1-gamma2-size",
                        vec![x, ci],
                        format!("|C ∩ Γ₂(x)| = {in_g2}, expected {}", n - 1),
                    ));
                }
            } else if d == 2 {
                for &y in clique.iter().filter(|&&v| dist[v] == 2) {
                    let c2 = g.common_count(x, y);
                    if c2 > 2 * (n - 1) {
                        local.push(Violation::new(
                            "distance2-c2-bound",
                            vec![x, y, ci],
                            format!("c₂ = {c2} exceeds {}", 2 * (n - 1)),
                        ));
                    }
                    let m = c2 / 2;
                    if in_g2 < m + 1 {
                        local.push(Violation::new(
                            "distance2-gamma2-lower",
                            vec![x, y, ci],
                            format!("|C ∩ Γ₂(x)| = {in_g2} below m+1 = {}", m + 1),
                        ));
                    }
                }
            }
        }
        // per distance-2 vertex: distance distribution of its cliques
        for (y, &d) in dist.iter().enumerate() {
            if d != 2 {
                continue;
            }
            let c2 = g.common_count(x, y);
            let m = c2 / 2;
            let dists: Vec<u32> = clique_through[y]
                .iter()
                .map(|&ci| clique_distance(&dist, &cliques[ci]))
                .collect();
            let at1 = dists.iter().filter(|&&d| d == 1).count();
            let at2 = dists.iter().filter(|&&d| d == 2).count();
            if c2 == 2 * n {
                if at1 != dists.len() {
                    local.push(Violation::new(
                        "c2max-cliques-distance1",
                        vec![x, y],
                        format!("c₂ = 2n but only {at1} of {} cliques at distance 1", dists.len()),
                    ));
                }
            } else if c2.is_multiple_of(2) && at1 != 2 * m || at2 != dists.len() - at1 {
                local.push(Violation::new(
                    "c2-clique-distance-count",
                    vec![x, y],
                    format!(
                        "c₂ = {c2}: {at1} cliques at distance 1 and {at2} at distance 2, \
                         expected {} and {}",
                        2 * m,
                        2 * (n - m)
                    ),
                ));
            }
        }
        local
    });
    violations.extend(per_x.into_iter().flatten());
    Ok(violations)
}

/// Per-pair intersection parameters relative to a fixed source.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairParams {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// a/b/c counts of y's neighbours one class in, same class, one class out
/// relative to the distance classes from the source of `dist`.
pub fn pair_params(g: &Graph, dist: &[u32], y: usize) -> PairParams {
    let dy = dist[y];
    let mut p = PairParams { a: 0, b: 0, c: 0 };
    for w in g.neighbors(y) {
        let dw = dist[w];
        if dw == dy {
            p.a += 1;
        } else if dw == dy + 1 {
            p.b += 1;
        } else if dy > 0 && dw == dy - 1 {
            p.c += 1;
        }
    }
    p
}

/// Audits the numeric parameter bounds and the two-way edge-counting
/// identities.
pub fn parameter_bounds_audit(g: &Graph) -> Result<Vec<Violation>> {
    let (n, mut violations) = grid_side_for_audit(g)?;
    let order = g.n_vertices();

    // global minimum m* over distance-2 pairs of c₂/2
    let mins = par::map_indices(order, true, |x| {
        let dist = g.distances_from(x);
        (0..order)
            .filter(|&y| dist[y] == 2)
            .map(|y| g.common_count(x, y) / 2)
            .min()
    });
    let m_star = mins.into_iter().flatten().min();
    let Some(m_star) = m_star else {
        return Ok(violations); // no distance-2 pairs at all
    };

    let per_x = par::map_indices(order, true, |x| {
        let mut local = Vec::new();
        let profile = g.bfs_profile(x);
        let dist = &profile.dist;
        let ecc = profile.eccentricity as usize;

        // weighted distance-2 census: Σ 2m·k_{2,2m}(x) = n²(n−1)²
        let mut weighted = 0usize;
        for (y, &dy) in dist.iter().enumerate() {
            if dy == 2 {
                let c2 = g.common_count(x, y);
                weighted += c2;
                if !c2.is_multiple_of(2) || c2 < 4 {
                    local.push(Violation::new(
                        "c2-even",
                        vec![x, y],
                        format!("c₂ = {c2} is not an even number ≥ 4"),
                    ));
                }
                let m = c2 / 2;
                let b2 = pair_params(g, dist, y).b;
                if n >= m && b2 > (n - m) * (n - m) {
                    local.push(Violation::new(
                        "b2-upper",
                        vec![x, y],
                        format!("b₂ = {b2} exceeds (n−m)² = {}", (n - m) * (n - m)),
                    ));
                }
            }
        }
        if weighted != n * n * (n - 1) * (n - 1) {
            local.push(Violation::new(
                "k2-weighted-sum",
                vec![x],
                format!(
                    "Σ 2m·k_{{2,2m}} = {weighted}, expected n²(n−1)² = {}",
                    n * n * (n - 1) * (n - 1)
                ),
            ));
        }

        // k-bound family (needs 2 ≤ m* ≤ n−1)
        if (2..n).contains(&m_star) {
            let k2 = profile.k(2);
            if 2 * m_star * k2 > n * n * (n - 1) * (n - 1) {
                local.push(Violation::new(
                    "k2-upper",
                    vec![x],
                    format!("k₂ = {k2} exceeds n²(n−1)²/2m* with m* = {m_star}"),
                ));
            }
            let k3 = profile.k(3);
            if k3 * (m_star + 1) * (m_star + 1) > k2 * (n - m_star) * (n - m_star) {
                local.push(Violation::new(
                    "k3-upper",
                    vec![x],
                    format!("k₃ = {k3} exceeds k₂(n−m*)²/(m*+1)²"),
                ));
            }
            for i in 4..=ecc {
                let hi = profile.k(i - 1) * (n - m_star - 1) * (n - m_star - 1);
                if profile.k(i) * (m_star + 1) * (m_star + 1) > hi {
                    local.push(Violation::new(
                        "ki-upper",
                        vec![x, i],
                        format!("k_{i} = {} too large given k_{}", profile.k(i), i - 1),
                    ));
                }
            }
        }

        // c₃/b₃ and the deeper classes (Γ₃ and beyond)
        for (z, &dz) in dist.iter().enumerate() {
            if dz < 3 || dz == u32::MAX {
                continue;
            }
            let p = pair_params(g, dist, z);
            if p.c < (m_star + 1) * (m_star + 1) {
                local.push(Violation::new(
                    "ci-lower",
                    vec![x, z],
                    format!(
                        "c_{dz} = {} below (m*+1)² = {}",
                        p.c,
                        (m_star + 1) * (m_star + 1)
                    ),
                ));
            }
            if m_star < n {
                let cap = (n - m_star - 1) * (n - m_star - 1);
                if p.b > cap {
                    local.push(Violation::new(
                        "bi-upper",
                        vec![x, z],
                        format!("b_{dz} = {} exceeds (n−m*−1)² = {cap}", p.b),
                    ));
                }
            }
        }

        // counting edges between consecutive classes in two ways
        for i in 1..=ecc {
            let b_side: usize = (0..order)
                .filter(|&y| dist[y] as usize == i - 1)
                .map(|y| pair_params(g, dist, y).b)
                .sum();
            let c_side: usize = (0..order)
                .filter(|&z| dist[z] as usize == i)
                .map(|z| pair_params(g, dist, z).c)
                .sum();
            if b_side != c_side {
                local.push(Violation::new(
                    "edge-count-two-ways",
                    vec![x, i],
                    format!("Σb_{} = {b_side} but Σc_{i} = {c_side}", i - 1),
                ));
            }
        }
        local
    });
    violations.extend(per_x.into_iter().flatten());
    Ok(violations)
}

/// One (x, C) record of the μ-clique structure.
#[derive(Clone, Debug, Serialize)]
pub struct MuCliqueReport {
    pub x: usize,
    pub clique: Vec<usize>,
    pub clique_distance: u32,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub matched_edges: Vec<(usize, usize)>,
    pub c2_sum: usize,
}

#[derive(Debug, Serialize)]
pub struct MuCliqueAudit {
    pub reports: Vec<MuCliqueReport>,
    pub violations: Vec<Violation>,
}

/// Audits the μ-graph system attached to each (vertex, clique) pair at
/// distance 1 or 2: coverage counts, pairwise intersections, the perfect
/// matching of doubly-covered edges, and the mod-4 sum rule.
pub fn mu_clique_matching_audit(g: &Graph) -> Result<MuCliqueAudit> {
    let (n, violations) = grid_side_for_audit(g)?;
    if n < 3 {
        return Err(Error::Domain(
            "μ-clique structure needs a grid side of at least 3".into(),
        ));
    }
    let (cliques, _) = grid_cliques(g, n);
    let order = g.n_vertices();
    let words = g.words_per_row();

    let per_x = par::map_indices(order, true, |x| {
        let mut reports = Vec::new();
        let mut local = Vec::new();
        let dist = g.distances_from(x);
        for (ci, clique) in cliques.iter().enumerate() {
            if clique.contains(&x) {
                continue;
            }
            let d = clique_distance(&dist, clique);
            if d != 1 && d != 2 {
                continue;
            }
            let g2_members: Vec<usize> = clique
                .iter()
                .copied()
                .filter(|&y| dist[y] == 2)
                .collect();
            if g2_members.is_empty() {
                continue;
            }
            let g1_members: Vec<usize> = clique
                .iter()
                .copied()
                .filter(|&y| dist[y] == 1)
                .collect();

            let mu_masks: Vec<Vec<u64>> = g2_members
                .iter()
                .map(|&y| {
                    g.row(x)
                        .iter()
                        .zip(g.row(y))
                        .map(|(a, b)| a & b)
                        .collect()
                })
                .collect();
            let c2_sum: usize = mu_masks
                .iter()
                .map(|m| m.iter().map(|w| w.count_ones() as usize).sum::<usize>())
                .sum();

            let mut clique_mask = vec![0u64; words];
            for &v in clique {
                clique_mask[v / 64] |= 1 << (v % 64);
            }
            // base = C ∩ Γ(x), contained in every μ-graph of the system
            let mut base_mask = vec![0u64; words];
            for &u in &g1_members {
                base_mask[u / 64] |= 1 << (u % 64);
            }
            for (mi, mask) in mu_masks.iter().enumerate() {
                if base_mask.iter().zip(mask).any(|(b, m)| b & !m != 0) {
                    local.push(Violation::new(
                        "clique-gamma1-in-mu",
                        vec![x, ci, g2_members[mi]],
                        "C ∩ Γ(x) must lie inside every μ-graph of the system".into(),
                    ));
                }
            }

            let mut s_mask = vec![0u64; words];
            for mask in &mu_masks {
                for (s, m) in s_mask.iter_mut().zip(mask) {
                    *s |= m;
                }
            }
            for (s, c) in s_mask.iter_mut().zip(&clique_mask) {
                *s &= !c;
            }
            let s_members = crate::graph::bits_to_vec(&s_mask);

            let mut t_mask = vec![0u64; words];
            if d == 1 {
                for &u in &g1_members {
                    for (t, r) in t_mask.iter_mut().zip(g.row(u)) {
                        *t |= r;
                    }
                }
                for (t, s) in t_mask.iter_mut().zip(&s_mask) {
                    *t &= s;
                }
            }
            let t_members = crate::graph::bits_to_vec(&t_mask);

            // coverage counts: T once, S \ T twice
            for &w in &s_members {
                let count = mu_masks
                    .iter()
                    .filter(|m| m[w / 64] >> (w % 64) & 1 != 0)
                    .count();
                let in_t = t_mask[w / 64] >> (w % 64) & 1 != 0;
                let expected = if in_t { 1 } else { 2 };
                if count != expected {
                    local.push(Violation::new(
                        "mu-coverage-count",
                        vec![x, ci, w],
                        format!("vertex lies in {count} μ-graphs, expected {expected}"),
                    ));
                }
            }

            // pairwise intersections and the doubly-covered edges
            let mut matched: Vec<(usize, usize)> = Vec::new();
            for i in 0..mu_masks.len() {
                for j in i + 1..mu_masks.len() {
                    let extra: Vec<usize> = (0..words)
                        .flat_map(|w| {
                            let bits = mu_masks[i][w] & mu_masks[j][w] & !base_mask[w];
                            crate::graph::bits_to_vec(&[bits])
                                .into_iter()
                                .map(move |b| w * 64 + b)
                                .collect::<Vec<_>>()
                        })
                        .collect();
                    match extra.len() {
                        0 => {}
                        2 => {
                            let (w1, w2) = (extra[0], extra[1]);
                            let in_st = |w: usize| {
                                s_mask[w / 64] >> (w % 64) & 1 != 0
                                    && t_mask[w / 64] >> (w % 64) & 1 == 0
                            };
                            if g.has_edge(w1, w2) && in_st(w1) && in_st(w2) {
                                matched.push((w1, w2));
                            } else {
                                local.push(Violation::new(
                                    "mu-pairwise-intersection",
                                    vec![x, ci, w1, w2],
                                    "extra intersection is not an edge inside S \\ T".into(),
                                ));
                            }
                        }
                        _ => {
                            local.push(Violation::new(
                                "mu-pairwise-intersection",
                                vec![x, ci, g2_members[i], g2_members[j]],
                                format!(
                                    "two μ-graphs share {} vertices beyond C ∩ Γ(x)",
                                    extra.len()
                                ),
                            ));
                        }
                    }
                }
            }
            matched.sort_unstable();
            matched.dedup();

            // doubly-covered edges must form a perfect matching on S \ T
            let mut matched_count = vec![0usize; order];
            for &(w1, w2) in &matched {
                matched_count[w1] += 1;
                matched_count[w2] += 1;
            }
            for &w in &s_members {
                let in_t = t_mask[w / 64] >> (w % 64) & 1 != 0;
                let expected = if in_t { 0 } else { 1 };
                if matched_count[w] != expected {
                    local.push(Violation::new(
                        "matching-perfect",
                        vec![x, ci, w],
                        format!(
                            "vertex lies in {} doubly-covered edges, expected {expected}",
                            matched_count[w]
                        ),
                    ));
                }
            }

            // 2|S| = Σ c₂(x,y) ≡ 0 (mod 4)
            if 2 * s_members.len() != c2_sum {
                local.push(Violation::new(
                    "s-double-count",
                    vec![x, ci],
                    format!("2|S| = {} but Σc₂ = {c2_sum}", 2 * s_members.len()),
                ));
            }
            if !c2_sum.is_multiple_of(4) {
                local.push(Violation::new(
                    "c2-sum-mod4",
                    vec![x, ci],
                    format!("Σc₂ = {c2_sum} not divisible by 4"),
                ));
            }

            reports.push(MuCliqueReport {
                x,
                clique: clique.clone(),
                clique_distance: d,
                s: s_members,
                t: t_members,
                matched_edges: matched,
                c2_sum,
            });
        }
        (reports, local)
    });

    let mut audit = MuCliqueAudit {
        reports: Vec::new(),
        violations,
    };
    for (reports, local) in per_x {
        audit.reports.extend(reports);
        audit.violations.extend(local);
    }
    Ok(audit)
}

/// Audits the parity laws that hold once every μ-graph has order at
/// least 2(n−1). The hypothesis itself is checked first and an offending
/// pair is named in the error.
pub fn parity_audit(g: &Graph) -> Result<Vec<Violation>> {
    let (n, mut violations) = grid_side_for_audit(g)?;
    let order = g.n_vertices();
    for x in 0..order {
        let dist = g.distances_from(x);
        for (y, &dy) in dist.iter().enumerate() {
            if dy == 2 {
                let c2 = g.common_count(x, y);
                if c2 < 2 * (n - 1) {
                    return Err(Error::HypothesisUnmet(format!(
                        "pair ({x},{y}) has μ-order {c2} < 2(n−1) = {}",
                        2 * (n - 1)
                    )));
                }
            }
        }
    }

    if let Some(d) = g.diameter() {
        if d > 3 {
            violations.push(Violation::new(
                "diameter-le-3",
                vec![],
                format!("diameter {d} exceeds 3"),
            ));
        }
    }
    let (cliques, _) = grid_cliques(g, n);
    let per_x = par::map_indices(order, true, |x| {
        let mut local = Vec::new();
        let dist = g.distances_from(x);
        for (ci, clique) in cliques.iter().enumerate() {
            if clique.contains(&x) {
                continue;
            }
            let d = clique_distance(&dist, clique);
            if d != 1 && d != 2 {
                local.push(Violation::new(
                    "clique-distance-range",
                    vec![x, ci],
                    format!("clique at distance {d}, expected 1 or 2"),
                ));
                continue;
            }
            let g2: Vec<usize> = clique
                .iter()
                .copied()
                .filter(|&y| dist[y] == 2)
                .collect();
            let low: Vec<usize> = g2
                .iter()
                .copied()
                .filter(|&y| g.common_count(x, y) == 2 * (n - 1))
                .collect();
            if d == 1 {
                if !low.len().is_multiple_of(2) {
                    local.push(Violation::new(
                        "low-mu-count-even",
                        vec![x, ci],
                        format!("{} members with c₂ = 2(n−1); count must be even", low.len()),
                    ));
                }
                if n % 2 == 0 && low.len() == g2.len() {
                    local.push(Violation::new(
                        "even-n-has-max-mu",
                        vec![x, ci],
                        "no member with c₂ = 2n although n is even".into(),
                    ));
                }
            } else {
                if low.len() != g2.len() {
                    local.push(Violation::new(
                        "distance2-all-low-mu",
                        vec![x, ci],
                        "a distance-2 clique member has c₂ ≠ 2(n−1)".into(),
                    ));
                }
                if n % 2 == 0 && g2.len() == clique.len() {
                    local.push(Violation::new(
                        "even-n-not-contained",
                        vec![x, ci],
                        "clique contained in Γ₂(x) although n is even".into(),
                    ));
                }
            }
        }
        local
    });
    violations.extend(per_x.into_iter().flatten());
    Ok(violations)
}

/// μ-order regimes the closed-form bounds apply to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// all μ-graphs of order ≥ n−1
    #[serde(rename = "mu>=n-1")]
    AtLeastNMinus1,
    /// all μ-graphs of order ≥ 2(n−1)
    #[serde(rename = "mu>=2(n-1)")]
    AtLeast2NMinus2,
    /// all μ-graphs of order exactly 2(n−1)
    #[serde(rename = "mu=2(n-1)")]
    Exactly2NMinus2,
}

/// Rigorous enclosure of a real number.
#[derive(Copy, Clone, Debug, Serialize)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

impl Enclosure {
    fn exact(x: f64) -> Enclosure {
        Enclosure { lo: x, hi: x }
    }

    fn widen(self, steps: u32) -> Enclosure {
        let mut lo = self.lo;
        let mut hi = self.hi;
        for _ in 0..steps {
            lo = lo.next_down();
            hi = hi.next_up();
        }
        Enclosure { lo, hi }
    }

    /// Natural log of a positive enclosure; widened to absorb the ≤1 ulp
    /// libm error.
    fn ln(self) -> Enclosure {
        Enclosure {
            lo: self.lo.ln(),
            hi: self.hi.ln(),
        }
        .widen(2)
    }

    /// ln(1 + x) for a nonnegative enclosure; keeps full precision when
    /// x is tiny, where plain ln of 1+x would lose it to cancellation.
    fn ln_1p(self) -> Enclosure {
        Enclosure {
            lo: self.lo.ln_1p(),
            hi: self.hi.ln_1p(),
        }
        .widen(2)
    }

    fn div(self, other: Enclosure) -> Enclosure {
        debug_assert!(other.lo > 0.0);
        Enclosure {
            lo: self.lo / other.hi,
            hi: self.hi / other.lo,
        }
        .widen(1)
    }

    fn scale(self, k: f64) -> Enclosure {
        debug_assert!(k > 0.0);
        Enclosure {
            lo: self.lo * k,
            hi: self.hi * k,
        }
        .widen(1)
    }

    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    /// True when some integer lies inside the enclosure.
    pub fn brackets_integer(self) -> bool {
        self.lo.ceil() <= self.hi.floor()
    }

    pub fn distance_to_nearest_integer(self) -> f64 {
        if self.brackets_integer() {
            return 0.0;
        }
        let mid = (self.lo + self.hi) / 2.0;
        (mid - mid.round()).abs()
    }
}

/// ln(n²(n−1)) / (2 ln((n+1)/(n−1))) as a rigorous enclosure.
///
/// The ceiling of this value feeds the diameter bound, so the enclosure
/// must not bracket an integer; the acceptance suite checks that it
/// never does for 2 ≤ n ≤ 10⁴. Callers outside that range should
/// consult `BoundsReport::f_near_integer`.
pub fn diameter_exponent(n: u32) -> Result<Enclosure> {
    if n < 2 {
        return Err(Error::InvalidParameter("needs n ≥ 2".into()));
    }
    let n = n as f64; // exact for every n in range
    let numerator = Enclosure::exact(n * n * (n - 1.0)).ln();
    // (n+1)/(n−1) = 1 + 2/(n−1), with ln1p to dodge the cancellation
    let excess = Enclosure::exact(2.0 / (n - 1.0)).widen(1);
    let denominator = excess.ln_1p().scale(2.0);
    Ok(numerator.div(denominator))
}

/// Closed-form order and diameter bounds per regime.
#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub n: u32,
    pub regime: Regime,
    pub order_bound: u64,
    pub diam_bound: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<Enclosure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_near_integer: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_sandwich_ok: Option<bool>,
}

pub fn order_diameter_bounds(n: u32, regime: Regime) -> Result<BoundsReport> {
    if n < 2 {
        return Err(Error::InvalidParameter("bounds need n ≥ 2".into()));
    }
    let n64 = n as u64;
    match regime {
        Regime::AtLeastNMinus1 => {
            let f = diameter_exponent(n)?;
            let brackets = f.brackets_integer();
            let near = brackets || f.distance_to_nearest_integer() < 1e-12;
            let ceil = f.hi.ceil() as u32;
            // ¾(n−1)ln(n−1) < f(n) < ¾·n·ln(n), strict on both sides
            let nf = n as f64;
            let left = if n == 2 {
                Enclosure::exact(0.0)
            } else {
                Enclosure::exact(nf - 1.0)
                    .ln()
                    .scale(0.75 * (nf - 1.0))
            };
            let right = Enclosure::exact(nf).ln().scale(0.75 * nf);
            let sandwich = left.hi < f.lo && f.hi < right.lo;
            Ok(BoundsReport {
                n,
                regime,
                order_bound: n64 * n64 * n64 * (n64 + 5) / 4,
                diam_bound: 2 + ceil,
                f: Some(f),
                f_near_integer: Some(near),
                log_sandwich_ok: Some(sandwich),
            })
        }
        Regime::AtLeast2NMinus2 | Regime::Exactly2NMinus2 => Ok(BoundsReport {
            n,
            regime,
            order_bound: (n64 * n64 + 1) * (n64 + 1) / 2,
            diam_bound: 3,
            f: None,
            f_near_integer: None,
            log_sandwich_ok: None,
        }),
    }
}

/// Outcome branches of the locally 5×5 dichotomy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FiveByFiveBranch {
    Order78,
    Order72,
}

#[derive(Debug, Serialize)]
pub struct FiveByFiveReport {
    pub order: usize,
    /// minimum μ-graph order over all distance-2 pairs
    pub mu_min: usize,
    /// true when every μ-graph has order at least 8
    pub mu_hypothesis: bool,
    pub branch: Option<FiveByFiveBranch>,
    pub violations: Vec<Violation>,
}

/// Audits a connected locally 5×5 grid graph against the order bound,
/// the mod-6 law, and (under the μ ≥ 8 hypothesis) the 78/72 dichotomy
/// with its distance diagram.
pub fn five_by_five_audit(g: &Graph) -> Result<FiveByFiveReport> {
    match detect_locally_grid(g)? {
        GridDetection::Grid { m: 5, n: 5 } => {}
        other => {
            return Err(Error::Domain(format!(
                "audit needs a locally 5×5 grid graph, got {other:?}"
            )))
        }
    }
    let order = g.n_vertices();
    let mut violations = Vec::new();
    if order > 300 {
        violations.push(Violation::new(
            "order-bound-300",
            vec![],
            format!("{order} vertices exceed the bound 300"),
        ));
    }
    if !order.is_multiple_of(6) {
        violations.push(Violation::new(
            "order-mod-6",
            vec![],
            format!("{order} is not divisible by 6"),
        ));
    }

    let mut mu_min = usize::MAX;
    for x in 0..order {
        let dist = g.distances_from(x);
        for (y, &dy) in dist.iter().enumerate() {
            if dy == 2 {
                mu_min = mu_min.min(g.common_count(x, y));
            }
        }
    }
    let mu_hypothesis = mu_min >= 8;
    let mut branch = None;
    if mu_hypothesis {
        for x in 0..order {
            let p = g.bfs_profile(x);
            if p.eccentricity != 3 {
                violations.push(Violation::new(
                    "eccentricity-3",
                    vec![x],
                    format!("eccentricity {} under the μ ≥ 8 hypothesis", p.eccentricity),
                ));
            }
        }
        match order {
            78 => {
                branch = Some(FiveByFiveBranch::Order78);
                for x in 0..order {
                    let dist = g.distances_from(x);
                    for (y, &dy) in dist.iter().enumerate() {
                        if dy == 2 && g.common_count(x, y) != 8 {
                            violations.push(Violation::new(
                                "order78-c2-constant",
                                vec![x, y],
                                format!("c₂ = {} in the 78-vertex branch", g.common_count(x, y)),
                            ));
                        }
                    }
                }
            }
            72 => {
                branch = Some(FiveByFiveBranch::Order72);
                for x in 0..order {
                    let mut v = verify_order72_diagram(g, x);
                    violations.append(&mut v);
                }
            }
            _ => {
                violations.push(Violation::new(
                    "order-dichotomy",
                    vec![],
                    format!("{order} vertices; the μ ≥ 8 hypothesis forces 72 or 78"),
                ));
            }
        }
    }
    Ok(FiveByFiveReport {
        order,
        mu_min,
        mu_hypothesis,
        branch,
        violations,
    })
}

/// The 72-vertex distance diagram: classes 1/25/25/20/1 where Γ₂ splits
/// into c₂ = 8 (size 25) and c₂ = 10 (size 20), with fixed edge
/// multiplicities between classes.
fn verify_order72_diagram(g: &Graph, x: usize) -> Vec<Violation> {
    let mut violations = Vec::new();
    let dist = g.distances_from(x);
    let mut g1 = Vec::new();
    let mut g28 = Vec::new();
    let mut g210 = Vec::new();
    let mut g3 = Vec::new();
    for (y, &dy) in dist.iter().enumerate() {
        match dy {
            1 => g1.push(y),
            2 => {
                if g.common_count(x, y) == 8 {
                    g28.push(y)
                } else {
                    g210.push(y)
                }
            }
            3 => g3.push(y),
            _ => {}
        }
    }
    let sizes = (g1.len(), g28.len(), g210.len(), g3.len());
    if sizes != (25, 25, 20, 1) {
        violations.push(Violation::new(
            "diagram-class-sizes",
            vec![x],
            format!("classes sized {sizes:?}, expected (25, 25, 20, 1)"),
        ));
        return violations;
    }
    let class_of = |y: usize| -> usize {
        if g1.contains(&y) {
            1
        } else if g28.contains(&y) {
            2
        } else if g210.contains(&y) {
            3
        } else if g3.contains(&y) {
            4
        } else {
            0
        }
    };
    // rows: per member of each class, edges into each class
    let expect = [
        (1usize, [1usize, 8, 8, 8, 0]),
        (2, [0, 8, 8, 8, 1]),
        (3, [0, 10, 10, 5, 0]),
        (4, [0, 0, 25, 0, 0]),
    ];
    for &(class, expected) in &expect {
        let members: &[usize] = match class {
            1 => &g1,
            2 => &g28,
            3 => &g210,
            _ => &g3,
        };
        for &y in members {
            // slot 0 is x itself: class_of(x) = 0 and only x is at distance 0
            let mut observed = [0usize; 5];
            for w in g.neighbors(y) {
                observed[class_of(w)] += 1;
            }
            if observed != expected {
                violations.push(Violation::new(
                    "diagram-multiplicity",
                    vec![x, y],
                    format!("class {class} member has edge profile {observed:?}, expected {expected:?}"),
                ));
            }
        }
    }
    violations
}

#[cfg(test)]
mod tests;
