//! Distance-regularity detection, intersection arrays, strong
//! regularity, eigenvalue-multiplicity feasibility, antipodal partitions
//! and quotients, and per-source distance diagrams.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::Graph;
use crate::verify::{pair_params, Violation};
use crate::{par, Error, Result};

/// (b₀,…,b_{D−1}; c₁,…,c_D) of a distance-regular graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    pub diameter: usize,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl IntersectionArray {
    /// Class sizes k_i implied by the array via k_{i+1} = k_i·b_i/c_{i+1}.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut k = vec![1usize];
        for i in 0..self.diameter {
            let prev = k[i];
            k.push(prev * self.b[i] / self.c[i]);
        }
        k
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DrgOutcome {
    DistanceRegular(IntersectionArray),
    NotDistanceRegular { x: usize, y: usize, what: String },
}

pub fn intersection_numbers(g: &Graph) -> Result<DrgOutcome> {
    intersection_numbers_impl(g, true)
}

/// Sequential variant of [`intersection_numbers`], identical output.
pub fn intersection_numbers_seq(g: &Graph) -> Result<DrgOutcome> {
    intersection_numbers_impl(g, false)
}

fn intersection_numbers_impl(g: &Graph, parallel: bool) -> Result<DrgOutcome> {
    if g.n_vertices() == 0 || !g.is_connected() {
        return Err(Error::Domain(
            "intersection numbers need a connected graph".into(),
        ));
    }
    let Some(_) = g.regular_degree() else {
        return Err(Error::Domain("graph is not regular".into()));
    };
    let order = g.n_vertices();
    // per source: (b_i, c_i) vectors, or the first offending pair
    type PerSource = std::result::Result<(Vec<usize>, Vec<usize>), (usize, usize, String)>;
    let per_x: Vec<PerSource> = par::map_indices(order, parallel, |x| {
        let dist = g.distances_from(x);
        let ecc = dist.iter().copied().max().unwrap() as usize;
        let mut b = vec![usize::MAX; ecc + 1];
        let mut c = vec![usize::MAX; ecc + 1];
        for y in 0..order {
            let dy = dist[y] as usize;
            let p = pair_params(g, &dist, y);
            for (slot, value, name) in [(&mut b, p.b, "b"), (&mut c, p.c, "c")] {
                if slot[dy] == usize::MAX {
                    slot[dy] = value;
                } else if slot[dy] != value {
                    return Err((
                        x,
                        y,
                        format!("{name}_{dy} is {value}, elsewhere {}", slot[dy]),
                    ));
                }
            }
        }
        Ok((b, c))
    });
    let mut reference: Option<(Vec<usize>, Vec<usize>)> = None;
    for (x, row) in per_x.into_iter().enumerate() {
        match row {
            Err((x, y, what)) => return Ok(DrgOutcome::NotDistanceRegular { x, y, what }),
            Ok(bc) => match &reference {
                None => reference = Some(bc),
                Some(r) if *r != bc => {
                    return Ok(DrgOutcome::NotDistanceRegular {
                        x,
                        y: 0,
                        what: "per-source parameters differ between sources".into(),
                    })
                }
                _ => {}
            },
        }
    }
    let (b, c) = reference.expect("nonempty graph");
    let diameter = b.len() - 1;
    Ok(DrgOutcome::DistanceRegular(IntersectionArray {
        diameter,
        b: b[..diameter].to_vec(),
        c: c[1..].to_vec(),
    }))
}

/// (N, k, λ, ν) of a strongly regular graph.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SrgParams {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub nu: usize,
}

impl SrgParams {
    pub fn new(n: usize, k: usize, lambda: usize, nu: usize) -> SrgParams {
        SrgParams { n, k, lambda, nu }
    }

    /// k(k−λ−1) = (N−k−1)ν, the basic counting identity.
    pub fn identity_holds(&self) -> bool {
        self.k * (self.k - self.lambda - 1) == (self.n - self.k - 1) * self.nu
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SrgOutcome {
    StronglyRegular(SrgParams),
    NotStronglyRegular { x: usize, y: usize, what: String },
}

/// Strong-regularity check for connected regular diameter-2 graphs.
pub fn srg_check(g: &Graph) -> Result<SrgOutcome> {
    if !g.is_connected() {
        return Err(Error::Domain("needs a connected graph".into()));
    }
    let Some(k) = g.regular_degree() else {
        return Err(Error::Domain("graph is not regular".into()));
    };
    if g.diameter() != Some(2) {
        return Err(Error::Domain(format!(
            "needs diameter 2, got {:?}",
            g.diameter()
        )));
    }
    let order = g.n_vertices();
    let mut lambda = None;
    let mut nu = None;
    for x in 0..order {
        for y in x + 1..order {
            let common = g.common_count(x, y);
            let slot = if g.has_edge(x, y) { &mut lambda } else { &mut nu };
            match slot {
                None => *slot = Some(common),
                Some(v) if *v != common => {
                    return Ok(SrgOutcome::NotStronglyRegular {
                        x,
                        y,
                        what: format!("common-neighbour count {common}, elsewhere {v}"),
                    })
                }
                _ => {}
            }
        }
    }
    Ok(SrgOutcome::StronglyRegular(SrgParams::new(
        order,
        k,
        lambda.unwrap_or(0),
        nu.unwrap_or(0),
    )))
}

/// Exact eigenvalue-multiplicity feasibility report. Multiplicities are
/// stored doubled so half-integers stay exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Feasibility {
    pub feasible: bool,
    /// (2·m₁, 2·m₂) when the multiplicities are rational (Δ a perfect
    /// square or the conference case); `None` when they are irrational.
    pub twice_multiplicities: Option<(i64, i64)>,
}

/// Integrality test for the multiplicities
/// ½(N−1 ± ((N−1)(ν−λ)−2k)/√Δ) with Δ = (ν−λ)² + 4(k−ν), done exactly:
/// either Δ is a perfect square, or integrality needs the conference
/// case (N−1)(ν−λ) = 2k with equal multiplicities (N−1)/2.
pub fn srg_feasibility(p: SrgParams) -> Result<Feasibility> {
    if !p.identity_holds() {
        return Err(Error::InvalidParameter(format!(
            "parameters {p:?} violate k(k−λ−1) = (N−k−1)ν"
        )));
    }
    let n = p.n as i64;
    let k = p.k as i64;
    let diff = p.nu as i64 - p.lambda as i64;
    let delta = diff * diff + 4 * (k - p.nu as i64);
    debug_assert!(delta >= 0);
    let root = (delta as u64).isqrt() as i64;
    if root * root == delta && root != 0 {
        let numerator = (n - 1) * diff - 2 * k;
        if numerator % root != 0 {
            // √Δ rational but the quotient is not an integer: the
            // multiplicities are not even rational-with-denominator-2
            return Ok(Feasibility {
                feasible: false,
                twice_multiplicities: None,
            });
        }
        let q = numerator / root;
        let twice = ((n - 1) + q, (n - 1) - q);
        let feasible =
            twice.0 >= 0 && twice.1 >= 0 && twice.0 % 2 == 0 && twice.1 % 2 == 0;
        Ok(Feasibility {
            feasible,
            twice_multiplicities: Some(twice),
        })
    } else {
        // irrational √Δ: feasible only in the conference case
        let conference = (n - 1) * diff == 2 * k && (n - 1) % 2 == 0;
        Ok(Feasibility {
            feasible: conference,
            twice_multiplicities: conference.then_some((n - 1, n - 1)),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AntipodalOutcome {
    /// Blocks {x} ∪ Γ_D(x), sorted, partitioning the vertex set with all
    /// intra-block pairs at distance D.
    Partition(Vec<Vec<usize>>),
    NotAntipodal { x: usize, y: usize, what: String },
}

pub fn antipodal_partition(g: &Graph) -> Result<AntipodalOutcome> {
    if g.n_vertices() == 0 || !g.is_connected() {
        return Err(Error::Domain("needs a connected graph".into()));
    }
    let diameter = g.diameter().expect("connected graph has a diameter");
    let order = g.n_vertices();
    let mut block_of: Vec<Option<usize>> = vec![None; order];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 0..order {
        if block_of[x].is_some() {
            continue;
        }
        let dist = g.distances_from(x);
        let mut block = vec![x];
        block.extend((0..order).filter(|&y| dist[y] == diameter));
        // all intra-block pairs must be mutually at maximum distance
        for (i, &u) in block.iter().enumerate() {
            let du = g.distances_from(u);
            for &v in block.iter().skip(i + 1) {
                if du[v] != diameter {
                    return Ok(AntipodalOutcome::NotAntipodal {
                        x: u,
                        y: v,
                        what: format!("block members at distance {}", du[v]),
                    });
                }
            }
        }
        let id = blocks.len();
        for &v in &block {
            if let Some(other) = block_of[v] {
                let y = blocks[other][0];
                return Ok(AntipodalOutcome::NotAntipodal {
                    x: v,
                    y,
                    what: "blocks overlap".into(),
                });
            }
            block_of[v] = Some(id);
        }
        blocks.push(block);
    }
    Ok(AntipodalOutcome::Partition(blocks))
}

/// Quotient by a partition: one vertex per block, adjacent when any
/// cross edge exists.
pub fn quotient_graph(g: &Graph, partition: &[Vec<usize>]) -> Result<Graph> {
    let order = g.n_vertices();
    let mut seen = vec![false; order];
    for block in partition {
        for &v in block {
            if v >= order {
                return Err(Error::Domain(format!("vertex {v} out of range")));
            }
            if seen[v] {
                return Err(Error::Domain(format!("vertex {v} in two blocks")));
            }
            seen[v] = true;
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::Domain("partition does not cover the graph".into()));
    }
    Ok(Graph::from_fn(partition.len(), |i, j| {
        partition[i]
            .iter()
            .any(|&u| partition[j].iter().any(|&v| g.has_edge(u, v)))
    }))
}

/// One class of a distance diagram: all vertices at distance `dist`
/// sharing a common-neighbour count `c2` (split only at distance 2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramClass {
    pub dist: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c2: Option<usize>,
    pub size: usize,
    /// class index → edges from each member into that class
    pub edges_to: BTreeMap<usize, usize>,
}

/// Distance diagram with respect to one source, with the distance-2
/// class split by μ-order; `regular` is false when some class member
/// deviates from the class profile.
#[derive(Clone, Debug, Serialize)]
pub struct DistanceDiagram {
    pub source: usize,
    pub classes: Vec<DiagramClass>,
    pub regular: bool,
    pub violations: Vec<Violation>,
}

pub fn distance_diagram(g: &Graph, x: usize) -> Result<DistanceDiagram> {
    if x >= g.n_vertices() {
        return Err(Error::Domain(format!("vertex {x} out of range")));
    }
    if !g.is_connected() {
        return Err(Error::Domain("needs a connected graph".into()));
    }
    let order = g.n_vertices();
    let dist = g.distances_from(x);
    // class key: (distance, c₂ at distance 2)
    let mut keys: Vec<(usize, Option<usize>)> = Vec::new();
    let mut member_class = vec![usize::MAX; order];
    for y in 0..order {
        let d = dist[y] as usize;
        let key = (d, (d == 2).then(|| g.common_count(x, y)));
        let idx = match keys.iter().position(|&k| k == key) {
            Some(i) => i,
            None => {
                keys.push(key);
                keys.len() - 1
            }
        };
        member_class[y] = idx;
    }
    let sorted_order: Vec<usize> = {
        let mut idx: Vec<usize> = (0..keys.len()).collect();
        idx.sort_by_key(|&i| keys[i]);
        idx
    };
    let rank: BTreeMap<usize, usize> = sorted_order
        .iter()
        .enumerate()
        .map(|(rank, &old)| (old, rank))
        .collect();

    let mut classes: Vec<DiagramClass> = sorted_order
        .iter()
        .map(|&old| DiagramClass {
            dist: keys[old].0,
            c2: keys[old].1,
            size: 0,
            edges_to: BTreeMap::new(),
        })
        .collect();
    let mut regular = true;
    let mut violations = Vec::new();
    let mut first_profile: Vec<Option<BTreeMap<usize, usize>>> = vec![None; classes.len()];
    for y in 0..order {
        let ci = rank[&member_class[y]];
        classes[ci].size += 1;
        let mut profile: BTreeMap<usize, usize> = BTreeMap::new();
        for w in g.neighbors(y) {
            *profile.entry(rank[&member_class[w]]).or_insert(0) += 1;
        }
        match &first_profile[ci] {
            None => {
                classes[ci].edges_to = profile.clone();
                first_profile[ci] = Some(profile);
            }
            Some(p) if *p != profile => {
                regular = false;
                violations.push(Violation {
                    check: "diagram-non-regular".into(),
                    witness: vec![x, y],
                    detail: format!("member edge profile {profile:?} differs from {p:?}"),
                });
            }
            _ => {}
        }
    }
    Ok(DistanceDiagram {
        source: x,
        classes,
        regular,
        violations,
    })
}
