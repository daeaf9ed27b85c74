//! Exact classification and invariants of smooth Gorenstein polytopes.
//!
//! The crate is organised bottom-up:
//!
//! * [`intlin`] – integer matrices, Hermite/Smith normal forms, kernels;
//! * [`polytope`] – lattice polytopes, facets, faces, reflexivity, smoothness,
//!   Gorenstein index and a canonical form under unimodular equivalence;
//! * [`construct`] – simplices, products, Cayley polytopes and the
//!   large-index families;
//! * [`ehrhart`] – lattice-point counts, h*-vectors and normality;
//! * [`stringy`] – dual Gorenstein polytopes and stringy E-polynomials;
//! * [`classify`] – the index-pruned enumeration of smooth Gorenstein
//!   polytopes.
//!
//! All arithmetic is exact. Data-parallel loops go through [`par`], which
//! uses rayon when the `parallel` feature is enabled and plain iterators
//! otherwise.

pub mod bitset;
pub mod classify;
pub mod construct;
pub mod ehrhart;
pub mod fixtures;
pub mod int;
pub mod intlin;
pub mod par;
pub mod polytope;
pub mod stringy;

pub use int::Int;
pub use intlin::{AffineUnimodularMap, IntMat, IntVec};
pub use polytope::{LatticePolytope, NormalForm};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("zero vector has no primitive part")]
    ZeroVector,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("empty point set")]
    Empty,
    #[error("points span an affine space of dimension {span} in ambient dimension {ambient}; use restrict_to_span")]
    LowerDimensional { span: usize, ambient: usize },
    #[error("origin is not an interior point")]
    NoInteriorPoint,
    #[error("polytope is not Gorenstein")]
    NotGorenstein,
    #[error("Gorenstein cone condition violated: facet normal pairs to {value} with the Gorenstein point")]
    GorensteinConditionViolated { value: Int },
    #[error("stringy E-polynomial has exponent ({p}, {q}) outside [0, {n}]^2")]
    ExponentRangeViolation { p: i64, q: i64, n: i64 },
    #[error("interval is not Eulerian")]
    NonEulerian,
    #[error("{0}")]
    OutOfRange(String),
    #[error("{0}")]
    InvalidInput(String),
    #[error("{0} is not divisible by {1}")]
    Divisibility(Int, Int),
    #[error("coordinates too large for lattice-point enumeration")]
    EnumerationOverflow,
}

pub type Result<T> = std::result::Result<T, Error>;
