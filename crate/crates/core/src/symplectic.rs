//! The symplectic family of locally n×n grid graphs.
//!
//! Vertices are R-cosets Ru of nonzero vectors u in GF(q)², q = n², with
//! Ru ~ Rv exactly when the symplectic form B(u,v) lands in R. Alongside
//! the full construction there are analytic oracles for neighbourhood
//! adjacency and μ-graph cycle profiles that need no graph at all, so
//! they stay cheap at orders where the full graph is out of reach.

use crate::field::{FieldContext, FieldElem};
use crate::graph::{CycleProfile, Graph};
use crate::{par, Error, Result, DEFAULT_VERTEX_CAP};

/// Vector αe + βf over the symplectic basis {e, f}.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SymVector {
    pub a: FieldElem,
    pub b: FieldElem,
}

impl SymVector {
    pub fn new(a: FieldElem, b: FieldElem) -> SymVector {
        SymVector { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// Canonical representative of the coset Ru.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VertexId(SymVector);

impl VertexId {
    pub fn rep(self) -> SymVector {
        self.0
    }
}

/// B(u,v) = u_a·v_b − u_b·v_a; bilinear, alternating, B(e,f) = 1.
pub fn symplectic_form(ctx: &FieldContext, u: SymVector, v: SymVector) -> FieldElem {
    ctx.sub(ctx.mul(u.a, v.b), ctx.mul(u.b, v.a))
}

/// The basis vector e as a vertex (its coset is its own canonical form).
pub fn base_vertex(ctx: &FieldContext) -> VertexId {
    VertexId(SymVector::new(ctx.one(), ctx.zero()))
}

/// Canonicalizes Ru by scaling with the unique ρ ∈ R that minimizes
/// (dlog of the first nonzero coordinate, then the coefficient vector of
/// the other coordinate). The minimizing dlog is dlog mod r, so the
/// scaling is a single table lookup.
pub fn canonical_vertex(ctx: &FieldContext, u: SymVector) -> Result<VertexId> {
    if u.is_zero() {
        return Err(Error::Domain("zero vector has no coset".into()));
    }
    let lead = if !u.a.is_zero() { u.a } else { u.b };
    let d = ctx.dlog(lead)?;
    let target = d % ctx.r();
    let rho = ctx.omega_pow(target as i64 - d as i64);
    debug_assert!(ctx.in_r(rho));
    Ok(VertexId(SymVector::new(
        ctx.mul(rho, u.a),
        ctx.mul(rho, u.b),
    )))
}

/// Ru ~ Rv ⟺ B(u,v) ∈ R. Representative-independent because R is
/// multiplicatively closed, symmetric because −1 ∈ R.
pub fn adjacent(ctx: &FieldContext, u: VertexId, v: VertexId) -> bool {
    ctx.in_r(symplectic_form(ctx, u.rep(), v.rep()))
}

/// All canonical vertices in a fixed deterministic order. The leading
/// nonzero coordinate of a canonical representative has dlog in [0, r),
/// so the enumeration is direct: (ω^t·e + b·f) for t in 0..r and every b,
/// then (ω^t·f) for t in 0..r. Order (n²+1)(n+1)/2.
pub fn enumerate_vertices(ctx: &FieldContext) -> Vec<VertexId> {
    let q = ctx.q();
    let r = ctx.r();
    let mut out = Vec::with_capacity(((q + 1) * r) as usize);
    for t in 0..r {
        let a = ctx.omega_pow(t as i64);
        for code in 0..q {
            let b = ctx.from_code(code).unwrap();
            out.push(VertexId(SymVector::new(a, b)));
        }
    }
    for t in 0..r {
        out.push(VertexId(SymVector::new(ctx.zero(), ctx.omega_pow(t as i64))));
    }
    out
}

/// The graph built from the construction, with the vertex table mapping
/// graph indices back to cosets.
pub struct SymplecticCover {
    pub graph: Graph,
    pub vertices: Vec<VertexId>,
}

impl SymplecticCover {
    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&u| u == v)
    }
}

pub fn build_cover(ctx: &FieldContext) -> Result<SymplecticCover> {
    build_cover_impl(ctx, true, DEFAULT_VERTEX_CAP)
}

pub fn build_cover_seq(ctx: &FieldContext) -> Result<SymplecticCover> {
    build_cover_impl(ctx, false, DEFAULT_VERTEX_CAP)
}

pub fn build_cover_capped(ctx: &FieldContext, cap: usize) -> Result<SymplecticCover> {
    build_cover_impl(ctx, true, cap)
}

fn build_cover_impl(ctx: &FieldContext, parallel: bool, cap: usize) -> Result<SymplecticCover> {
    let vertices = enumerate_vertices(ctx);
    let n = vertices.len();
    if n > cap {
        return Err(Error::Capacity(format!(
            "construction would have {n} vertices, cap is {cap}"
        )));
    }
    let words = n.div_ceil(64).max(1);
    let rows = par::map_indices(n, parallel, |i| {
        let mut row = vec![0u64; words];
        for (j, &v) in vertices.iter().enumerate() {
            if j != i && adjacent(ctx, vertices[i], v) {
                row[j / 64] |= 1 << (j % 64);
            }
        }
        row
    });
    let mut bits = Vec::with_capacity(n * words);
    for row in rows {
        bits.extend_from_slice(&row);
    }
    let labels = vertices
        .iter()
        .map(|v| {
            format!(
                "R({:?}e+{:?}f)",
                ctx.coeffs(v.rep().a),
                ctx.coeffs(v.rep().b)
            )
        })
        .collect();
    let graph = Graph::from_rows(n, words, bits).with_labels(labels)?;
    Ok(SymplecticCover { graph, vertices })
}

/// The antipodal block of Ru: one coset R'u per R-coset R' of the
/// multiplicative group, r = (n+1)/2 vertices including Ru itself.
pub fn antipodal_block_of(ctx: &FieldContext, u: VertexId) -> Vec<VertexId> {
    (0..ctx.r())
        .map(|t| {
            let gamma = ctx.omega_pow(t as i64);
            let rep = u.rep();
            canonical_vertex(
                ctx,
                SymVector::new(ctx.mul(gamma, rep.a), ctx.mul(gamma, rep.b)),
            )
            .expect("scaled nonzero vector")
        })
        .collect()
}

/// Predicts adjacency of R(αe+f) and R(α'e+f) inside the neighbourhood
/// of Re: adjacent exactly when one (not both) of the even/odd parts
/// agree.
pub fn neighbor_adjacency_oracle(
    ctx: &FieldContext,
    alpha: FieldElem,
    alpha2: FieldElem,
) -> Result<bool> {
    if alpha == alpha2 {
        return Err(Error::Domain("oracle needs two distinct vertices".into()));
    }
    let s = ctx.even_odd_split(alpha);
    let s2 = ctx.even_odd_split(alpha2);
    Ok((s.ev == s2.ev) != (s.odd == s2.odd))
}

fn check_beta(ctx: &FieldContext, beta: FieldElem) -> Result<()> {
    if beta.is_zero() || ctx.in_r(beta) {
        return Err(Error::Domain(
            "β must lie outside R ∪ {0} so that Rβ⁻¹f is at distance 2 from Re".into(),
        ));
    }
    Ok(())
}

/// Cycle profile of the μ-graph of (Re, Rβ⁻¹f): d cycles of length
/// 2(n−1)/d where d = 2(n−1)/ord(β_ev·β_odd⁻¹), an odd divisor of n−1.
pub fn mu_profile_oracle(ctx: &FieldContext, beta: FieldElem) -> Result<CycleProfile> {
    check_beta(ctx, beta)?;
    let s = ctx.even_odd_split(beta);
    assert!(
        !s.ev.is_zero() && !s.odd.is_zero(),
        "both split parts are nonzero off R ∪ {{0}}"
    );
    let gamma = ctx.mul(s.ev, ctx.inv(s.odd)?);
    let ord = ctx.mult_order(gamma)? as usize;
    let two_n_minus_2 = 2 * (ctx.n() as usize - 1);
    debug_assert_eq!(two_n_minus_2 % ord, 0);
    let d = two_n_minus_2 / ord;
    debug_assert!(d % 2 == 1 && (ctx.n() as usize - 1).is_multiple_of(d));
    Ok(CycleProfile::uniform(d, ord))
}

/// Exhibits a distance-2 pair whose μ-graph splits into exactly `d`
/// cycles: x = Re, y = Rβ⁻¹f with β = 1 + ω^{−rd}.
pub fn realize_cycle_count(
    ctx: &FieldContext,
    d: usize,
) -> Result<(VertexId, VertexId, FieldElem)> {
    let n = ctx.n() as usize;
    if d == 0 || d.is_multiple_of(2) || !(n - 1).is_multiple_of(d) {
        return Err(Error::InvalidParameter(format!(
            "cycle count {d} must be an odd divisor of n−1 = {}",
            n - 1
        )));
    }
    let beta = ctx.add(ctx.one(), ctx.omega_pow(-((ctx.r() as i64) * (d as i64))));
    check_beta(ctx, beta)?;
    let x = base_vertex(ctx);
    let y = canonical_vertex(ctx, SymVector::new(ctx.zero(), ctx.inv(beta)?))?;
    Ok((x, y, beta))
}

/// Directly enumerates the common neighbourhood of Re and Rβ⁻¹f from the
/// adjacency rule (no full graph), checks its size is 2(n−1), decomposes
/// its induced graph into cycles, and compares against the analytic
/// profile. Returns the agreement flag.
pub fn local_mu_agreement(ctx: &FieldContext, beta: FieldElem) -> Result<bool> {
    check_beta(ctx, beta)?;
    let x = base_vertex(ctx);
    let y = canonical_vertex(ctx, SymVector::new(ctx.zero(), ctx.inv(beta)?))?;
    let common: Vec<VertexId> = enumerate_vertices(ctx)
        .into_iter()
        .filter(|&w| adjacent(ctx, w, x) && adjacent(ctx, w, y))
        .collect();
    if common.len() != 2 * (ctx.n() as usize - 1) {
        return Ok(false);
    }
    let induced = Graph::from_fn(common.len(), |i, j| adjacent(ctx, common[i], common[j]));
    let profile = induced.cycle_decomposition()?;
    Ok(profile == mu_profile_oracle(ctx, beta)?)
}
