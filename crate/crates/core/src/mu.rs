//! μ-graph extraction and whole-graph censuses.
//!
//! A μ-graph is the induced subgraph on the common neighbours of a
//! distance-2 pair; on locally grid hosts it is a disjoint union of even
//! cycles. The census sweeps the upper-triangular pair space and is the
//! main data-parallel kernel of the crate.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::field::FieldContext;
use crate::graph::{CycleProfile, Graph};
use crate::verify::{self, Violation};
use crate::{par, Error, Result};

/// The μ-graph of one distance-2 pair.
#[derive(Clone, Debug)]
pub struct MuGraph {
    pub x: usize,
    pub y: usize,
    pub vertices: Vec<usize>,
    pub induced: Graph,
    pub profile: CycleProfile,
}

/// Extracts μ(x,y); the pair must be at distance 2 and the common
/// neighbourhood 2-regular (it always is on locally grid hosts).
pub fn mu_graph(g: &Graph, x: usize, y: usize) -> Result<MuGraph> {
    if x == y || g.has_edge(x, y) {
        return Err(Error::Domain(format!("({x},{y}) is not at distance 2")));
    }
    let vertices = g.common_neighbors(x, y);
    if vertices.is_empty() {
        return Err(Error::Domain(format!("({x},{y}) is not at distance 2")));
    }
    let induced = g.induced(&vertices)?;
    let profile = induced.cycle_decomposition()?;
    Ok(MuGraph {
        x,
        y,
        vertices,
        induced,
        profile,
    })
}

/// Census entry list: profile → number of unordered distance-2 pairs.
#[derive(Debug, Serialize)]
pub struct MuCensus {
    pub n: usize,
    pub pair_count: usize,
    pub profiles: BTreeMap<CycleProfile, usize>,
    pub violations: Vec<Violation>,
}

impl MuCensus {
    /// Census rows as (profile, count) for JSON export.
    pub fn rows(&self) -> Vec<CensusRow> {
        self.profiles
            .iter()
            .map(|(profile, &count)| CensusRow {
                profile: profile.lengths().to_vec(),
                count,
            })
            .collect()
    }
}

#[derive(Debug, Serialize)]
pub struct CensusRow {
    pub profile: Vec<usize>,
    pub count: usize,
}

pub fn mu_census(g: &Graph) -> Result<MuCensus> {
    mu_census_impl(g, true)
}

/// Sequential variant of [`mu_census`] with identical output.
pub fn mu_census_seq(g: &Graph) -> Result<MuCensus> {
    mu_census_impl(g, false)
}

fn mu_census_impl(g: &Graph, parallel: bool) -> Result<MuCensus> {
    let detection = verify::detect_locally_grid(g)?;
    let n = match detection {
        verify::GridDetection::Grid { m, n } if m == n => n,
        other => {
            return Err(Error::Domain(format!(
                "census needs a locally n×n grid graph, got {other:?}"
            )))
        }
    };
    let order = g.n_vertices();
    let per_x = par::map_indices(order, parallel, |x| {
        let mut profiles: Vec<(CycleProfile, usize)> = Vec::new();
        let mut violations = Vec::new();
        let dist = g.distances_from(x);
        for (y, &dy) in dist.iter().enumerate().skip(x + 1) {
            if dy != 2 {
                continue;
            }
            match mu_graph(g, x, y) {
                Ok(mu) => {
                    check_mu_invariants(g, &mu, n, &mut violations);
                    profiles.push((mu.profile, y));
                }
                Err(e) => violations.push(Violation {
                    check: "mu-two-regular".into(),
                    witness: vec![x, y],
                    detail: e.to_string(),
                }),
            }
        }
        (profiles, violations)
    });
    let mut census = MuCensus {
        n,
        pair_count: 0,
        profiles: BTreeMap::new(),
        violations: Vec::new(),
    };
    for (profiles, violations) in per_x {
        for (profile, _) in profiles {
            census.pair_count += 1;
            *census.profiles.entry(profile).or_insert(0) += 1;
        }
        census.violations.extend(violations);
    }
    Ok(census)
}

/// Per-μ invariants on an n×n host: even cycles of length ≥ 4 covering
/// at most 2n vertices, and no two μ-edges inside one n-clique of either
/// endpoint's neighbourhood.
fn check_mu_invariants(g: &Graph, mu: &MuGraph, n: usize, violations: &mut Vec<Violation>) {
    let lengths = mu.profile.lengths();
    if lengths.iter().any(|&l| l % 2 != 0 || l < 4) {
        violations.push(Violation {
            check: "mu-even-cycles".into(),
            witness: vec![mu.x, mu.y],
            detail: format!("profile {} has a short or odd cycle", mu.profile),
        });
    }
    if mu.profile.order() > 2 * n {
        violations.push(Violation {
            check: "mu-order-bound".into(),
            witness: vec![mu.x, mu.y],
            detail: format!("μ-order {} exceeds 2n = {}", mu.profile.order(), 2 * n),
        });
    }
    for &host in &[mu.x, mu.y] {
        // the n-clique of [Γ(host)] through a μ-edge {w,w'} is
        // {w,w'} ∪ (Γ(w) ∩ Γ(w') ∩ Γ(host)); bucket edges by it
        let mut buckets: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (i, j) in mu.induced.edges() {
            let (w1, w2) = (mu.vertices[i], mu.vertices[j]);
            let mut clique: Vec<usize> = g
                .common_neighbors(w1, w2)
                .into_iter()
                .filter(|&z| g.has_edge(z, host))
                .collect();
            clique.push(w1);
            clique.push(w2);
            clique.sort_unstable();
            buckets.entry(clique).or_default().push((w1, w2));
        }
        for (clique, edges) in buckets {
            if edges.len() > 1 {
                violations.push(Violation {
                    check: "mu-edges-distinct-cliques".into(),
                    witness: vec![mu.x, mu.y, edges[0].0, edges[1].0],
                    detail: format!(
                        "{} μ-edges share the clique {clique:?} of a neighbourhood",
                        edges.len()
                    ),
                });
            }
        }
    }
}

/// Result of checking the odd-divisor law on a constructed cover.
#[derive(Debug, Serialize)]
pub struct DivisorProfile {
    pub n: usize,
    pub pass: bool,
    /// cycle counts observed in the census
    pub realized: Vec<usize>,
    /// odd divisors of n−1 (every one must be realized)
    pub expected: Vec<usize>,
}

/// Checks that every μ-graph of the built cover splits into d equal
/// cycles of length 2(n−1)/d with d an odd divisor of n−1, and that
/// every such d occurs.
pub fn divisor_profile_check(g: &Graph, ctx: &FieldContext) -> Result<DivisorProfile> {
    let n = ctx.n() as usize;
    let expected_order = (n * n + 1) * (n + 1) / 2;
    if g.n_vertices() != expected_order || g.regular_degree() != Some(n * n) {
        return Err(Error::Domain(format!(
            "graph does not match the order-{n} construction ({} vertices)",
            g.n_vertices()
        )));
    }
    let census = mu_census(g)?;
    let expected: Vec<usize> = (1..n)
        .step_by(2)
        .filter(|d| (n - 1).is_multiple_of(*d))
        .collect();
    let mut realized = Vec::new();
    let mut pass = census.violations.is_empty();
    for profile in census.profiles.keys() {
        match profile.as_uniform() {
            Some((d, len)) if d % 2 == 1 && (n - 1).is_multiple_of(d) && len * d == 2 * (n - 1) => {
                realized.push(d);
            }
            _ => pass = false,
        }
    }
    realized.sort_unstable();
    if realized != expected {
        pass = false;
    }
    Ok(DivisorProfile {
        n,
        pass,
        realized,
        expected,
    })
}

/// Audits the distance-2 census identities that hold when every μ-graph
/// has order at least 2(n−1): the weighted edge count, the k₂ formula,
/// the divisibility of the split counts, and the congruence tying
/// k_{2,2(n−1)}(x)/n to k₃(x).
pub fn k2_identities_audit(g: &Graph) -> Result<Vec<Violation>> {
    let detection = verify::detect_locally_grid(g)?;
    let n = match detection {
        verify::GridDetection::Grid { m, n } if m == n => n,
        other => {
            return Err(Error::Domain(format!(
                "audit needs a locally n×n grid graph, got {other:?}"
            )))
        }
    };
    let order = g.n_vertices();
    // hypothesis: all μ-orders ≥ 2(n−1)
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
    let per_x = par::map_indices(order, true, |x| {
        let mut local = Vec::new();
        let profile = g.bfs_profile_with_mu(x, n);
        let by_mu = profile.k2_by_mu.as_ref().unwrap();
        let k_low = by_mu.get(&(2 * (n - 1))).copied().unwrap_or(0);
        let k_high = by_mu.get(&(2 * n)).copied().unwrap_or(0);
        let push = |local: &mut Vec<Violation>, check: &str, detail: String| {
            local.push(Violation {
                check: check.into(),
                witness: vec![x],
                detail,
            });
        };
        if 2 * (n - 1) * k_low + 2 * n * k_high != n * n * (n - 1) * (n - 1) {
            push(
                &mut local,
                "edge-count-split",
                format!(
                    "2(n−1)·{k_low} + 2n·{k_high} ≠ n²(n−1)² = {}",
                    n * n * (n - 1) * (n - 1)
                ),
            );
        }
        if k_low % n != 0 {
            push(
                &mut local,
                "k2-low-divisible",
                format!("k_{{2,2(n−1)}} = {k_low} not divisible by n = {n}"),
            );
        }
        if k_high % (n - 1) != 0 {
            push(
                &mut local,
                "k2-high-divisible",
                format!("k_{{2,2n}} = {k_high} not divisible by n−1 = {}", n - 1),
            );
        }
        let k2 = profile.k(2);
        if k_low % n == 0 && k2 != n * (n - 1) * (n - 1) / 2 + k_low / n {
            push(
                &mut local,
                "k2-formula",
                format!("k₂ = {k2} ≠ n(n−1)²/2 + k_{{2,2(n−1)}}/n"),
            );
        }
        if k_low % n == 0 {
            let ell = k_low / n;
            if ell > n * (n - 1) / 2 {
                push(
                    &mut local,
                    "ell-upper",
                    format!("ℓ = {ell} exceeds n(n−1)/2"),
                );
            }
            let k3 = profile.k(3);
            let modulus = if n % 2 == 0 { n + 1 } else { n.div_ceil(2) };
            if !(ell + k3).is_multiple_of(modulus) {
                push(
                    &mut local,
                    "ell-k3-congruence",
                    format!("ℓ + k₃ = {} not divisible by {modulus}", ell + k3),
                );
            }
        }
        local
    });
    Ok(per_x.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::{johnson, rook_complement};
    use crate::symplectic::{
        base_vertex, build_cover, canonical_vertex, mu_profile_oracle, realize_cycle_count,
        SymVector,
    };

    fn ctx(n: u32) -> FieldContext {
        FieldContext::for_subfield_order(n).unwrap()
    }

    #[test]
    fn mu_graph_examples() {
        // any distance-2 pair of J(6,3) gives a 4-cycle
        let g = johnson(6, 3).unwrap();
        let dist = g.distances_from(0);
        let y = (0..20).find(|&y| dist[y] == 2).unwrap();
        assert_eq!(
            mu_graph(&g, 0, y).unwrap().profile,
            CycleProfile::uniform(1, 4)
        );

        // complement of the 4×4 grid: single 6-cycles
        let g = rook_complement(4);
        let dist = g.distances_from(0);
        let y = (0..16).find(|&y| dist[y] == 2).unwrap();
        assert_eq!(
            mu_graph(&g, 0, y).unwrap().profile,
            CycleProfile::uniform(1, 6)
        );

        // adjacent or identical pairs are rejected
        assert!(mu_graph(&g, 0, 0).is_err());
        let nb = g.neighbors(0)[0];
        assert!(mu_graph(&g, 0, nb).is_err());
    }

    #[test]
    fn mu_graph_from_realized_divisor() {
        let c = ctx(7);
        let cover = build_cover(&c).unwrap();
        let (x, y, _) = realize_cycle_count(&c, 3).unwrap();
        let xi = cover.index_of(x).unwrap();
        let yi = cover.index_of(y).unwrap();
        assert_eq!(
            mu_graph(&cover.graph, xi, yi).unwrap().profile,
            CycleProfile::uniform(3, 4)
        );
    }

    #[test]
    fn census_on_the_78_vertex_cover() {
        let cover = build_cover(&ctx(5)).unwrap();
        let census = mu_census(&cover.graph).unwrap();
        assert!(census.violations.is_empty());
        assert_eq!(census.pair_count, 78 * 50 / 2);
        assert_eq!(census.profiles.len(), 1);
        assert_eq!(
            census.profiles.get(&CycleProfile::uniform(1, 8)),
            Some(&1950)
        );
    }

    #[test]
    fn census_on_the_200_vertex_cover() {
        let cover = build_cover(&ctx(7)).unwrap();
        let census = mu_census(&cover.graph).unwrap();
        assert!(census.violations.is_empty());
        let keys: Vec<&CycleProfile> = census.profiles.keys().collect();
        assert_eq!(
            keys,
            vec![&CycleProfile::uniform(3, 4), &CycleProfile::uniform(1, 12)]
        );
    }

    #[test]
    fn census_on_johnson_graphs() {
        let census = mu_census(&johnson(10, 5).unwrap()).unwrap();
        assert!(census.violations.is_empty());
        assert_eq!(census.profiles.len(), 1);
        assert_eq!(
            census.profiles.get(&CycleProfile::uniform(1, 4)),
            Some(&(252 * 100 / 2))
        );
    }

    #[test]
    fn census_parallel_and_sequential_agree() {
        let cover = build_cover(&ctx(5)).unwrap();
        let a = mu_census(&cover.graph).unwrap();
        let b = mu_census_seq(&cover.graph).unwrap();
        assert_eq!(a.profiles, b.profiles);
        assert_eq!(a.pair_count, b.pair_count);
    }

    #[test]
    fn census_histogram_is_vertex_independent() {
        // per-vertex profile histograms all agree on the covers
        let cover = build_cover(&ctx(7)).unwrap();
        let g = &cover.graph;
        let mut reference: Option<BTreeMap<CycleProfile, usize>> = None;
        for x in 0..g.n_vertices() {
            let dist = g.distances_from(x);
            let mut hist: BTreeMap<CycleProfile, usize> = BTreeMap::new();
            for (y, &dy) in dist.iter().enumerate() {
                if dy == 2 {
                    *hist
                        .entry(mu_graph(g, x, y).unwrap().profile)
                        .or_insert(0) += 1;
                }
            }
            match &reference {
                None => reference = Some(hist),
                Some(r) => assert_eq!(&hist, r, "histogram differs at vertex {x}"),
            }
        }
    }

    #[test]
    fn census_agrees_with_profile_oracle() {
        // x = Re, every distance-2 vertex y = R(αe + βf): the μ-profile
        // matches the analytic prediction at β⁻¹
        let c = ctx(5);
        let cover = build_cover(&c).unwrap();
        let g = &cover.graph;
        let x = cover.index_of(base_vertex(&c)).unwrap();
        let dist = g.distances_from(x);
        for (y, &d) in dist.iter().enumerate() {
            if d != 2 {
                continue;
            }
            let rep = cover.vertices[y].rep();
            assert!(!rep.b.is_zero() && !c.in_r(rep.b));
            let oracle = mu_profile_oracle(&c, c.inv(rep.b).unwrap()).unwrap();
            assert_eq!(mu_graph(g, x, y).unwrap().profile, oracle);
        }
    }

    #[test]
    fn divisor_law_small_orders() {
        for (n, expected) in [(3u32, vec![1]), (5, vec![1]), (7, vec![1, 3]), (9, vec![1])] {
            let c = ctx(n);
            let cover = build_cover(&c).unwrap();
            let check = divisor_profile_check(&cover.graph, &c).unwrap();
            assert!(check.pass, "divisor law fails at n = {n}");
            assert_eq!(check.realized, expected);
        }
        // mismatched pairing is rejected
        let c5 = ctx(5);
        let cover7 = build_cover(&ctx(7)).unwrap();
        assert!(divisor_profile_check(&cover7.graph, &c5).is_err());
    }

    #[test]
    fn divisor_realization_round_trip() {
        // every expected divisor is realizable analytically too
        let c = ctx(13);
        for &d in &[1usize, 3] {
            let (_, _, beta) = realize_cycle_count(&c, d).unwrap();
            let profile = mu_profile_oracle(&c, beta).unwrap();
            assert_eq!(profile.cycle_count(), d);
        }
    }

    #[test]
    fn k2_identities_on_corpus() {
        for g in [
            build_cover(&ctx(5)).unwrap().graph,
            build_cover(&ctx(7)).unwrap().graph,
            johnson(6, 3).unwrap(),
            rook_complement(4),
        ] {
            let violations = k2_identities_audit(&g).unwrap();
            assert!(violations.is_empty(), "{violations:?}");
        }
        // J(10,5) has μ ≡ 4 < 2(n−1) = 8: hypothesis unmet
        assert!(matches!(
            k2_identities_audit(&johnson(10, 5).unwrap()),
            Err(Error::HypothesisUnmet(_))
        ));
    }

    #[test]
    fn gamma3_k2_split() {
        // 20-vertex cover: k₂ = 9 with k_{2,4} = 9, ℓ = 3
        let cover = build_cover(&ctx(3)).unwrap();
        let p = cover.graph.bfs_profile_with_mu(0, 3);
        assert_eq!(p.k(2), 9);
        assert_eq!(p.k2_by_mu.as_ref().unwrap().get(&4), Some(&9));
        assert_eq!(p.ell, Some(3));
    }

    #[test]
    fn census_row_export() {
        let cover = build_cover(&ctx(3)).unwrap();
        let census = mu_census(&cover.graph).unwrap();
        let rows = census.rows();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].profile, vec![4]);
        let json = serde_json::to_string(&rows).unwrap();
        assert!(json.contains("\"count\""));
    }

    #[test]
    fn mu_set_description_vs_canonical() {
        // the census path and the coset-based construction agree on who
        // the common neighbours are
        let c = ctx(5);
        let cover = build_cover(&c).unwrap();
        let x = cover.index_of(base_vertex(&c)).unwrap();
        let beta = c.nonzero_elements().find(|&b| !c.in_r(b)).unwrap();
        let y_id = canonical_vertex(&c, SymVector::new(c.zero(), c.inv(beta).unwrap())).unwrap();
        let y = cover.index_of(y_id).unwrap();
        let mu = mu_graph(&cover.graph, x, y).unwrap();
        assert_eq!(mu.vertices.len(), 8);
    }
}
