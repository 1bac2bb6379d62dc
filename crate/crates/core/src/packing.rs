//! Exhaustive packing search over μ-candidates in a rook grid.
//!
//! A μ-candidate is a 2(n−1)-subset of K_n □ K_n inducing a union of
//! even cycles. The search grows sets of pairwise-compatible candidates
//! around a fixed seed under the rule that no host vertex lies in more
//! than two members, and certifies the maximum reachable set size. On
//! the 5×5 host the target is six: the level-6 frontier must be empty.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::graph::{maximal_cliques, CycleProfile, Graph};
use crate::{par, Error, Result};

/// Candidate subset of the host K_n □ K_n, stored as a vertex bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuCandidate {
    pub host_n: usize,
    pub mask: u64,
    pub profile: CycleProfile,
}

impl MuCandidate {
    pub fn vertices(&self) -> Vec<usize> {
        (0..64).filter(|&v| self.mask >> v & 1 != 0).collect()
    }
}

/// Which induced shapes to enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CandidateKind {
    /// one cycle through all 2(n−1) vertices
    SingleCycle,
    /// two disjoint 4-cycles (hosts with 2(n−1) = 8 only)
    TwoFourCycles,
    /// every union of even cycles on 2(n−1) vertices
    AnyEvenUnion,
    /// a specific cycle-length multiset summing to 2(n−1)
    WithProfile(Vec<usize>),
}

/// All 2(n−1)-subsets of K_n □ K_n inducing the requested shape.
///
/// A valid candidate uses n−1 rows and n−1 columns, two vertices in
/// each; reading each selected vertex (i,j) as an edge row_i–col_j turns
/// the candidate into a 2-regular bipartite graph, so the enumeration
/// walks those cycle systems directly instead of filtering subsets.
pub fn enumerate_candidates(n: usize, kind: &CandidateKind) -> Result<Vec<MuCandidate>> {
    if n < 3 {
        return Err(Error::InvalidParameter("host side must be at least 3".into()));
    }
    if n * n > 64 {
        return Err(Error::Capacity(
            "host vertex masks are capped at 64 bits (n ≤ 8)".into(),
        ));
    }
    let k = n - 1;
    let wanted: Option<Vec<usize>> = match kind {
        CandidateKind::SingleCycle => Some(vec![2 * k]),
        CandidateKind::TwoFourCycles => {
            if 2 * k != 8 {
                return Err(Error::InvalidParameter(format!(
                    "two 4-cycles need 2(n−1) = 8, host has 2(n−1) = {}",
                    2 * k
                )));
            }
            Some(vec![4, 4])
        }
        CandidateKind::AnyEvenUnion => None,
        CandidateKind::WithProfile(lengths) => {
            let mut sorted = lengths.clone();
            sorted.sort_unstable();
            if sorted.iter().sum::<usize>() != 2 * k
                || sorted.iter().any(|&l| l % 2 != 0 || l < 4)
            {
                return Err(Error::InvalidParameter(format!(
                    "profile {sorted:?} is not a union of even cycles on 2(n−1) = {} vertices",
                    2 * k
                )));
            }
            Some(sorted)
        }
    };
    // m-values of the cycles (each cycle of length 2m uses m rows)
    let wanted_ms: Option<Vec<usize>> =
        wanted.map(|lengths| lengths.iter().map(|l| l / 2).collect());

    let mut out = Vec::new();
    for excluded_row in 0..n {
        let rows: Vec<usize> = (0..n).filter(|&r| r != excluded_row).collect();
        for excluded_col in 0..n {
            let cols: Vec<usize> = (0..n).filter(|&c| c != excluded_col).collect();
            let mut state = CycleSearch {
                n,
                rows: &rows,
                cols: &cols,
                row_used: vec![false; k],
                col_used: vec![false; k],
                edges: Vec::with_capacity(2 * k),
                ms: Vec::new(),
                wanted: wanted_ms.as_deref(),
                out: &mut out,
            };
            state.next_cycle();
        }
    }
    out.sort_by_key(|c| c.vertices());
    Ok(out)
}

struct CycleSearch<'a> {
    n: usize,
    rows: &'a [usize],
    cols: &'a [usize],
    row_used: Vec<bool>,
    col_used: Vec<bool>,
    edges: Vec<(usize, usize)>, // (row index, col index) into rows/cols
    ms: Vec<usize>,
    wanted: Option<&'a [usize]>,
    out: &'a mut Vec<MuCandidate>,
}

impl CycleSearch<'_> {
    /// Starts the next cycle at the smallest uncovered row, or emits the
    /// finished candidate when every row is covered.
    fn next_cycle(&mut self) {
        let Some(start) = self.row_used.iter().position(|&u| !u) else {
            let mut mask = 0u64;
            for &(ri, ci) in &self.edges {
                mask |= 1 << (self.rows[ri] * self.n + self.cols[ci]);
            }
            let lengths: Vec<usize> = self.ms.iter().map(|&m| 2 * m).collect();
            self.out.push(MuCandidate {
                host_n: self.n,
                mask,
                profile: CycleProfile::from_lengths(lengths),
            });
            return;
        };
        let remaining = self.row_used.iter().filter(|&&u| !u).count();
        // candidate lengths for the cycle through `start`
        let mut choices: Vec<usize> = match self.wanted {
            Some(ms) => {
                let mut left = ms.to_vec();
                for &m in &self.ms {
                    if let Some(pos) = left.iter().position(|&x| x == m) {
                        left.remove(pos);
                    }
                }
                left
            }
            None => (2..=remaining).collect(),
        };
        choices.sort_unstable();
        choices.dedup();
        for m in choices {
            if m < 2 || m > remaining {
                continue;
            }
            self.ms.push(m);
            self.row_used[start] = true;
            self.walk(start, start, m, 1, None);
            self.row_used[start] = false;
            self.ms.pop();
        }
    }

    /// Extends the current cycle from `row`; `placed` rows are already in
    /// it, `first_col` pins the orientation (first chosen column must be
    /// smaller than the closing column).
    fn walk(&mut self, start: usize, row: usize, m: usize, placed: usize, first_col: Option<usize>) {
        if placed == m {
            // close the cycle: one more column back to the start row
            for ci in 0..self.cols.len() {
                if self.col_used[ci] {
                    continue;
                }
                if let Some(fc) = first_col {
                    if fc >= ci {
                        continue; // orientation canon: first < last
                    }
                }
                self.col_used[ci] = true;
                self.edges.push((row, ci));
                self.edges.push((start, ci));
                self.next_cycle();
                self.edges.pop();
                self.edges.pop();
                self.col_used[ci] = false;
            }
            return;
        }
        for ci in 0..self.cols.len() {
            if self.col_used[ci] {
                continue;
            }
            self.col_used[ci] = true;
            self.edges.push((row, ci));
            for ri in 0..self.rows.len() {
                if self.row_used[ri] {
                    continue;
                }
                self.row_used[ri] = true;
                self.edges.push((ri, ci));
                self.walk(start, ri, m, placed + 1, first_col.or(Some(ci)));
                self.edges.pop();
                self.row_used[ri] = false;
            }
            self.edges.pop();
            self.col_used[ci] = false;
        }
    }
}

/// Two candidates are compatible when vertex-disjoint or meeting in
/// exactly two vertices that form an edge of the host.
pub fn compatible(a: &MuCandidate, b: &MuCandidate) -> Result<bool> {
    if a.host_n != b.host_n {
        return Err(Error::Domain("candidates from different hosts".into()));
    }
    let meet = a.mask & b.mask;
    Ok(match meet.count_ones() {
        0 => true,
        2 => {
            let lo = meet.trailing_zeros() as usize;
            let hi = 63 - meet.leading_zeros() as usize;
            let n = a.host_n;
            lo / n == hi / n || lo % n == hi % n
        }
        _ => false,
    })
}

/// A seeded candidate pool to search over.
pub struct CompatibilitySystem {
    pub host_n: usize,
    pub candidates: Vec<MuCandidate>,
    pub seed: usize,
}

impl CompatibilitySystem {
    /// Pool of every even-cycle union, seeded by index.
    pub fn new(host_n: usize, seed: usize) -> Result<CompatibilitySystem> {
        let candidates = enumerate_candidates(host_n, &CandidateKind::AnyEvenUnion)?;
        if seed >= candidates.len() {
            return Err(Error::InvalidParameter(format!(
                "seed index {seed} out of range ({} candidates)",
                candidates.len()
            )));
        }
        Ok(CompatibilitySystem {
            host_n,
            candidates,
            seed,
        })
    }

    /// Pool seeded by an explicit vertex set (must be a candidate).
    pub fn with_seed_vertices(host_n: usize, vertices: &[usize]) -> Result<CompatibilitySystem> {
        let candidates = enumerate_candidates(host_n, &CandidateKind::AnyEvenUnion)?;
        let mask = vertices.iter().fold(0u64, |acc, &v| acc | 1 << v);
        let seed = candidates
            .iter()
            .position(|c| c.mask == mask)
            .ok_or_else(|| {
                Error::InvalidParameter("seed vertex set is not a valid candidate".into())
            })?;
        Ok(CompatibilitySystem {
            host_n,
            candidates,
            seed,
        })
    }
}

/// Result of one staged search.
#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub seed: usize,
    pub seed_vertices: Vec<usize>,
    /// count of admissible sets per size 1..=target
    pub level_counts: Vec<usize>,
    pub max_nonempty: usize,
    /// the admissible sets of the target size, as candidate indices
    pub sets_at_target: Vec<Vec<usize>>,
}

#[derive(Clone)]
struct LevelSet {
    members: Vec<u32>, // non-seed members, ascending
    once: u64,
    twice: u64,
    /// conjunction of compatibility rows over all members
    allowed: Vec<u64>,
}

/// Grows seed-anchored sets level by level. Every member pair must be
/// compatible and no host vertex may lie in more than two members (a new
/// candidate must avoid every doubly-covered vertex). Deterministic:
/// non-seed members are added in ascending index order.
pub fn extend_search(
    system: &CompatibilitySystem,
    target: usize,
    budget: Option<usize>,
) -> Result<SearchOutcome> {
    let cands = &system.candidates;
    let count = cands.len();
    let words = count.div_ceil(64);
    if target == 0 {
        return Err(Error::InvalidParameter("target size must be ≥ 1".into()));
    }
    // pairwise compatibility bitmatrix
    let compat: Vec<Vec<u64>> = par::map_indices(count, true, |i| {
        let mut row = vec![0u64; words];
        for j in 0..count {
            if i != j && compatible(&cands[i], &cands[j]).expect("same host") {
                row[j / 64] |= 1 << (j % 64);
            }
        }
        row
    });

    let seed = system.seed;
    let seed_mask = cands[seed].mask;
    let mut frontier = vec![LevelSet {
        members: Vec::new(),
        once: seed_mask,
        twice: 0,
        allowed: compat[seed].clone(),
    }];
    let mut level_counts = vec![1usize]; // size 1: the seed alone
    let mut total_stored = 1usize;
    let mut sets_at_target = Vec::new();
    if target == 1 {
        sets_at_target.push(vec![seed]);
    }

    for size in 2..=target {
        let expanded: Vec<Vec<LevelSet>> = par::map_slice(&frontier, true, |set| {
            let mut out = Vec::new();
            let lowest = set.members.last().map_or(0, |&m| m as usize + 1);
            for z in crate::graph::BitIter::new(&set.allowed) {
                if z < lowest || z == seed {
                    continue;
                }
                let zc = &cands[z];
                if zc.mask & set.twice != 0 {
                    continue;
                }
                let overlap = set.once & zc.mask;
                let mut members = set.members.clone();
                members.push(z as u32);
                let allowed: Vec<u64> = set
                    .allowed
                    .iter()
                    .zip(&compat[z])
                    .map(|(a, b)| a & b)
                    .collect();
                out.push(LevelSet {
                    members,
                    once: (set.once & !overlap) | (zc.mask & !(set.once | set.twice)),
                    twice: set.twice | overlap,
                    allowed,
                });
            }
            out
        });
        let next: Vec<LevelSet> = expanded.into_iter().flatten().collect();
        total_stored += next.len();
        if let Some(b) = budget {
            if total_stored > b {
                return Err(Error::Capacity(format!(
                    "search stored {total_stored} sets, budget is {b}"
                )));
            }
        }
        level_counts.push(next.len());
        if size == target {
            sets_at_target = next
                .iter()
                .map(|s| {
                    let mut ids: Vec<usize> = s.members.iter().map(|&m| m as usize).collect();
                    ids.push(seed);
                    ids.sort_unstable();
                    ids
                })
                .collect();
        }
        if next.is_empty() {
            // still report zeros for the remaining levels
            while level_counts.len() < target {
                level_counts.push(0);
            }
            break;
        }
        frontier = next;
    }
    let max_nonempty = level_counts
        .iter()
        .rposition(|&c| c > 0)
        .map(|i| i + 1)
        .unwrap_or(0);
    Ok(SearchOutcome {
        seed,
        seed_vertices: cands[seed].vertices(),
        level_counts,
        max_nonempty,
        sets_at_target,
    })
}

/// The two fixed seeds on the 5×5 host, as vertex sets (row-major).
pub fn canonical_seed_vertices(kind: &CandidateKind) -> Result<Vec<usize>> {
    match kind {
        CandidateKind::SingleCycle => Ok(vec![0, 1, 6, 7, 12, 13, 15, 18]),
        CandidateKind::TwoFourCycles => Ok(vec![0, 1, 5, 6, 12, 13, 17, 18]),
        _ => Err(Error::InvalidParameter(
            "canonical seeds exist for the single-cycle and two-4-cycle kinds".into(),
        )),
    }
}

/// One seed's search inside a certificate.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateRun {
    pub seed_kind: String,
    pub seed_vertices: Vec<usize>,
    pub level_counts: Vec<usize>,
    pub max_nonempty: usize,
    pub target_empty: bool,
    /// target-size sets as candidate vertex lists, for external audit;
    /// populated on request only
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sets_at_target: Option<Vec<Vec<Vec<usize>>>>,
}

/// Machine-checkable record of the packing search.
#[derive(Clone, Debug, Serialize)]
pub struct SearchCertificate {
    pub host_n: usize,
    pub target: usize,
    pub candidate_count: usize,
    /// candidates per profile, e.g. {"{8}": 1800, "{4,4}": 450}
    pub candidates_by_profile: BTreeMap<String, usize>,
    /// FNV-1a over the sorted candidate masks
    pub candidate_checksum: String,
    pub runs: Vec<CertificateRun>,
    pub all_targets_empty: bool,
    pub wall_ms: u128,
}

/// Runs the staged search from both canonical seeds on the 5×5 host
/// (target 6) and emits the certificate. Fails if any target-size set is
/// found.
pub fn no_six_set_certificate() -> Result<SearchCertificate> {
    let seeds = [
        ("single-cycle", canonical_seed_vertices(&CandidateKind::SingleCycle)?),
        ("two-4-cycles", canonical_seed_vertices(&CandidateKind::TwoFourCycles)?),
    ];
    let cert = packing_certificate(5, 6, &seeds, None, false)?;
    if !cert.all_targets_empty {
        return Err(Error::Domain(
            "a six-set of compatible μ-candidates was found; the certificate does not hold"
                .into(),
        ));
    }
    Ok(cert)
}

/// General certificate driver over explicit seed vertex sets. With
/// `emit_sets` the target-size sets are spelled out in the certificate.
pub fn packing_certificate(
    host_n: usize,
    target: usize,
    seeds: &[(&str, Vec<usize>)],
    budget: Option<usize>,
    emit_sets: bool,
) -> Result<SearchCertificate> {
    let start = Instant::now();
    let mut runs = Vec::new();
    let mut all_empty = true;
    let mut candidate_count = 0;
    let mut by_profile: BTreeMap<String, usize> = BTreeMap::new();
    let mut checksum = 0xcbf29ce484222325u64;
    for (i, (kind, vertices)) in seeds.iter().enumerate() {
        let system = CompatibilitySystem::with_seed_vertices(host_n, vertices)?;
        if i == 0 {
            candidate_count = system.candidates.len();
            for c in &system.candidates {
                *by_profile.entry(c.profile.to_string()).or_insert(0) += 1;
                for byte in c.mask.to_le_bytes() {
                    checksum ^= byte as u64;
                    checksum = checksum.wrapping_mul(0x100000001b3);
                }
            }
        }
        let outcome = extend_search(&system, target, budget)?;
        let target_empty = outcome.sets_at_target.is_empty();
        all_empty &= target_empty;
        let sets_at_target = emit_sets.then(|| {
            outcome
                .sets_at_target
                .iter()
                .map(|set| {
                    set.iter()
                        .map(|&i| system.candidates[i].vertices())
                        .collect()
                })
                .collect()
        });
        runs.push(CertificateRun {
            seed_kind: kind.to_string(),
            seed_vertices: outcome.seed_vertices.clone(),
            level_counts: outcome.level_counts.clone(),
            max_nonempty: outcome.max_nonempty,
            target_empty,
            sets_at_target,
        });
    }
    Ok(SearchCertificate {
        host_n,
        target,
        candidate_count,
        candidates_by_profile: by_profile,
        candidate_checksum: format!("{checksum:016x}"),
        runs,
        all_targets_empty: all_empty,
        wall_ms: start.elapsed().as_millis(),
    })
}

/// A-posteriori check of a found set against the strict structure that
/// an actual clique configuration would satisfy: the search only prunes
/// on "at most two members per vertex", the strict form wants every
/// covered vertex in exactly two members, which then makes the
/// doubly-covered edges a perfect matching on the whole union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrictStructure {
    pub every_vertex_doubly_covered: bool,
    pub doubly_covered_edges: usize,
}

pub fn strict_structure(system: &CompatibilitySystem, set: &[usize]) -> Result<StrictStructure> {
    let mut counts = vec![0usize; system.host_n * system.host_n];
    for &i in set {
        let c = system
            .candidates
            .get(i)
            .ok_or_else(|| Error::Domain(format!("candidate index {i} out of range")))?;
        for v in c.vertices() {
            counts[v] += 1;
        }
    }
    if counts.iter().any(|&c| c > 2) {
        return Err(Error::Domain(
            "set violates the vertex-multiplicity bound".into(),
        ));
    }
    let mut doubly = 0;
    for (ai, &a) in set.iter().enumerate() {
        for &b in &set[ai + 1..] {
            let meet = system.candidates[a].mask & system.candidates[b].mask;
            if meet.count_ones() == 2 {
                doubly += 1;
            }
        }
    }
    Ok(StrictStructure {
        every_vertex_doubly_covered: counts.iter().all(|&c| c != 1),
        doubly_covered_edges: doubly,
    })
}

/// Independent cross-check on a concrete graph: the number of (vertex,
/// maximal clique) pairs with the whole clique inside Γ₂(x). Zero on the
/// 78-vertex cover.
pub fn cliques_inside_second_neighborhood(g: &Graph) -> usize {
    let cliques = maximal_cliques(g);
    let counts = par::map_indices(g.n_vertices(), true, |x| {
        let dist = g.distances_from(x);
        cliques
            .iter()
            .filter(|c| c.iter().all(|&v| dist[v] == 2))
            .count()
    });
    counts.into_iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn host(n: usize) -> Graph {
        crate::reference::rook_grid(n, n)
    }

    /// Brute-force oracle: classify every 2(n−1)-subset by its induced
    /// shape. Only viable for tiny hosts.
    fn brute_candidates(n: usize) -> Vec<(u64, CycleProfile)> {
        let g = host(n);
        let verts = n * n;
        let size = 2 * (n - 1);
        let mut out = Vec::new();
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let induced = g.induced(&subset).unwrap();
            // rook grids contain triangles (three collinear vertices), so
            // 2-regularity alone is not enough: μ-shapes are unions of
            // even cycles of length ≥ 4
            if let Ok(profile) = induced.cycle_decomposition() {
                if profile.lengths().iter().all(|&l| l % 2 == 0 && l >= 4) {
                    let mask = subset.iter().fold(0u64, |acc, &v| acc | 1 << v);
                    out.push((mask, profile));
                }
            }
            // next combination
            let mut i = size;
            loop {
                if i == 0 {
                    out.sort_unstable();
                    return out;
                }
                i -= 1;
                if subset[i] != i + verts - size {
                    break;
                }
                if i == 0 {
                    out.sort_unstable();
                    return out;
                }
            }
            subset[i] += 1;
            for j in i + 1..size {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }

    #[test]
    fn enumeration_matches_brute_force_on_small_hosts() {
        for n in [3usize, 4] {
            let brute = brute_candidates(n);
            let structured = enumerate_candidates(n, &CandidateKind::AnyEvenUnion).unwrap();
            let mut got: Vec<(u64, CycleProfile)> = structured
                .iter()
                .map(|c| (c.mask, c.profile.clone()))
                .collect();
            got.sort_unstable();
            assert_eq!(got, brute, "host {n}");
        }
    }

    #[test]
    fn candidate_counts_3x3() {
        // choosing 2 of 3 rows and 2 of 3 columns: 9 induced 4-cycles
        let single = enumerate_candidates(3, &CandidateKind::SingleCycle).unwrap();
        assert_eq!(single.len(), 9);
        assert!(single
            .iter()
            .all(|c| c.profile == CycleProfile::uniform(1, 4)));
    }

    #[test]
    fn candidate_counts_5x5_frozen() {
        // regression values from the first verified enumeration run,
        // cross-checked by sampling below
        let single = enumerate_candidates(5, &CandidateKind::SingleCycle).unwrap();
        assert_eq!(single.len(), 1800);
        let pairs = enumerate_candidates(5, &CandidateKind::TwoFourCycles).unwrap();
        assert_eq!(pairs.len(), 450);
        let all = enumerate_candidates(5, &CandidateKind::AnyEvenUnion).unwrap();
        assert_eq!(all.len(), 2250);
    }

    #[test]
    fn candidate_sampling_audit_5x5() {
        // 10⁵ random 8-subsets: membership in the enumerated pool must
        // agree with the direct induced-shape test
        let g = host(5);
        let all: std::collections::HashSet<u64> =
            enumerate_candidates(5, &CandidateKind::AnyEvenUnion)
                .unwrap()
                .iter()
                .map(|c| c.mask)
                .collect();
        let mut rng = StdRng::seed_from_u64(2024);
        let universe: Vec<usize> = (0..25).collect();
        for _ in 0..100_000 {
            let mut pick = universe.clone();
            pick.shuffle(&mut rng);
            let subset = &mut pick[..8];
            subset.sort_unstable();
            let mask = subset.iter().fold(0u64, |acc, &v| acc | 1 << v);
            let is_candidate = g
                .induced(subset)
                .unwrap()
                .cycle_decomposition()
                .is_ok_and(|p| p.lengths().iter().all(|&l| l % 2 == 0 && l >= 4));
            assert_eq!(all.contains(&mask), is_candidate);
        }
    }

    #[test]
    fn kind_guards() {
        assert!(matches!(
            enumerate_candidates(3, &CandidateKind::WithProfile(vec![8])),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            enumerate_candidates(3, &CandidateKind::TwoFourCycles),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            enumerate_candidates(9, &CandidateKind::SingleCycle),
            Err(Error::Capacity(_))
        ));
        let with = enumerate_candidates(5, &CandidateKind::WithProfile(vec![4, 4])).unwrap();
        assert_eq!(with.len(), 450);
    }

    #[test]
    fn compatibility_rules() {
        let all = enumerate_candidates(5, &CandidateKind::AnyEvenUnion).unwrap();
        let c = &all[0];
        assert!(!compatible(c, c).unwrap()); // meets itself in 8 vertices
        // exhaustive consistency with the definition
        let g = host(5);
        for a in all.iter().take(40) {
            for b in all.iter().take(40) {
                let meet = a.mask & b.mask;
                let expected = match meet.count_ones() {
                    0 => true,
                    2 => {
                        let vs: Vec<usize> =
                            (0..64).filter(|&v| meet >> v & 1 != 0).collect();
                        g.has_edge(vs[0], vs[1])
                    }
                    _ => false,
                };
                assert_eq!(compatible(a, b).unwrap(), expected);
            }
        }
        let other = enumerate_candidates(3, &CandidateKind::AnyEvenUnion).unwrap();
        assert!(compatible(c, &other[0]).is_err());
    }

    #[test]
    fn search_on_3x3_host() {
        // the 3×3 host: no disjoint pair exists (two cycles would need
        // four row slots from three rows), so growth relies on shared
        // edges only
        let system = CompatibilitySystem::new(3, 0).unwrap();
        let outcome = extend_search(&system, 4, None).unwrap();
        // regression values from the first verified run
        assert_eq!(outcome.level_counts, vec![1, 4, 2, 0]);
        assert_eq!(outcome.max_nonempty, 3);
        assert!(outcome.sets_at_target.is_empty());
    }

    #[test]
    fn search_budget() {
        let system = CompatibilitySystem::new(5, 0).unwrap();
        assert!(matches!(
            extend_search(&system, 4, Some(10)),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn canonical_seeds_have_the_declared_shapes() {
        let g = host(5);
        for (kind, profile) in [
            (CandidateKind::SingleCycle, CycleProfile::uniform(1, 8)),
            (CandidateKind::TwoFourCycles, CycleProfile::uniform(2, 4)),
        ] {
            let seed = canonical_seed_vertices(&kind).unwrap();
            let induced = g.induced(&seed).unwrap();
            assert_eq!(induced.cycle_decomposition().unwrap(), profile);
        }
    }

    #[test]
    fn strict_structure_on_small_sets() {
        let system = CompatibilitySystem::new(3, 0).unwrap();
        // the seed alone covers four vertices once each
        let s = strict_structure(&system, &[0]).unwrap();
        assert!(!s.every_vertex_doubly_covered);
        assert_eq!(s.doubly_covered_edges, 0);
        // level-3 sets exist; each has three pairwise intersections
        let outcome = extend_search(&system, 3, None).unwrap();
        for set in &outcome.sets_at_target {
            let s = strict_structure(&system, set).unwrap();
            assert_eq!(s.doubly_covered_edges, 3);
        }
        assert!(strict_structure(&system, &[0, 999]).is_err());
    }

    #[test]
    fn determinism_across_runs() {
        let system = CompatibilitySystem::new(3, 2).unwrap();
        let a = extend_search(&system, 3, None).unwrap();
        let b = extend_search(&system, 3, None).unwrap();
        assert_eq!(a.level_counts, b.level_counts);
        assert_eq!(a.sets_at_target, b.sets_at_target);
    }
}
