//! Construction and mechanical verification of locally n×n grid graphs.
//!
//! The crate builds a family of distance-regular antipodal covers of
//! complete graphs from a symplectic form over GF(n²) (for odd prime
//! powers n), and provides the machinery to audit structural laws of
//! locally grid graphs on these and on imported graphs: clique structure,
//! μ-graph cycle decompositions, intersection arrays, antipodal
//! partitions, order/diameter bounds, and an exhaustive packing search
//! over μ-candidates in rook grids.
//!
//! The data-parallel kernels (pair censuses, per-vertex audits, search
//! frontier expansion) run on rayon when the default `parallel` feature
//! is enabled and fall back to sequential loops without it. Output is
//! identical either way.
pub mod drg;
pub mod field;
pub mod graph;
pub mod mu;
pub mod packing;
pub mod reference;
pub mod symplectic;
pub mod verify;

pub(crate) mod par;

/// Default cap on graph order for full constructions.
pub const DEFAULT_VERTEX_CAP: usize = 20_000;

/// Default cap on the isomorphism decision procedure.
pub const DEFAULT_ISO_CAP: usize = 512;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
