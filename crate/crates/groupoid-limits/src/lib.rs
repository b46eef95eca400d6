#![forbid(unsafe_code)]

//! Exact computation with towers of finite open covers: finite-level
//! groupoids and their chamber decompositions, 2-cocycles with values in the
//! unit circle, twisted convolution algebras with representation-theoretic
//! norms, the limit groupoid over eventually periodic tails, and the
//! isometric embeddings of the finite levels into the limit.

pub mod algebra;
pub mod builtins;
pub mod cocycle;
pub mod cover;
pub mod embedding;
pub mod error;
pub mod finite;
pub mod format;
pub mod limit;
pub mod linalg;
pub mod parallel;
pub mod random;
pub mod rational;
pub mod region;
pub mod turn;

pub use error::{Error, Result};

/// Numerical tolerances pinned for the whole crate. Set-theoretic and
/// cocycle computations are exact and take no tolerance; these bounds only
/// concern floating-point linear algebra over the exact scaffolding.
pub mod tol {
    /// Operator-norm extraction from a Hermitian Gram matrix.
    pub const EIGEN: f64 = 1e-10;
    /// Associativity and involution identities of the twisted product.
    pub const RING_LAWS: f64 = 1e-10;
    /// The C*-identity relating the norms of `f* ∗ f` and `f`.
    pub const CSTAR: f64 = 1e-8;
    /// Agreement of level norms with their images in the limit.
    pub const ISOMETRY: f64 = 1e-8;
    /// Isometry of the block-diagonal inclusions on point-space towers.
    pub const BLOCK_INCLUSION: f64 = 1e-10;
    /// Unit-circle modulus drift allowed for turn values.
    pub const MODULUS: f64 = 1e-12;
}
