//! Numerical Clifford algebra for the spinor / horosphere correspondence.
//!
//! Two-component Lipschitz spinors over Cℓ₀,ₙ are sent to null multiflags on
//! the light-cone of ℝ^{1,n+2} and to decorated horospheres in ℍ^{n+2}.
//! Clifford-valued lambda lengths between horospheres are brackets of
//! spinors and satisfy a noncommutative Ptolemy relation.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod clifford;
mod error;
pub mod hyperbolic;
pub mod lambda;
mod linalg;
pub mod lipschitz;
pub mod minkowski;
pub mod random;

pub use clifford::{Involution, Multivector, Paravector, Signature, MAX_DIM};
pub use error::Error;
pub use hyperbolic::{BallPoint, DecoratedHorosphere, Geodesic, UpperHalfPoint};
pub use lambda::{LambdaMatrix, QuasiResult, RelationReport};
pub use lipschitz::{CliffordMatrix, Flavor, Generator, LipschitzSpinor, Pair, ParavectorPoint};
pub use minkowski::{DecoratedIdealPoint, MinkowskiPoint, Multiflag};

/// Relative tolerance for membership and residual tests.
pub const TOL: f64 = 1e-9;

/// Absolute magnitude below which a denominator counts as zero (the point is ∞).
pub const INF_THRESHOLD: f64 = 1e-12;

/// Smallest |λᵢⱼ| accepted by the lambda-length relation checks.
pub const DEGENERACY: f64 = 1e-3;

/// `residual ≤ tol · max(1, magnitude)`.
#[inline]
pub fn within(residual: f64, magnitude: f64, tol: f64) -> bool {
    residual <= tol * magnitude.max(1.0)
}
