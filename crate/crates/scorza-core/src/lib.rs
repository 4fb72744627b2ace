//! Exact-arithmetic computational models for split composition algebras,
//! Hermitian Jordan matrix algebras, rank-one cone geometry, split-spinor
//! geometry, and pencils of skew 2-forms on a 5-dimensional space.
//!
//! Everything runs over arbitrary-precision rationals or an odd prime
//! field; there is no floating point anywhere. All values are immutable and
//! all operations are pure functions of their inputs (plus an explicit seed
//! where a generic choice is required), so the whole crate is safe to use
//! from concurrent callers.

pub mod codec;
pub mod compalg;
pub mod error;
pub mod jordan;
pub mod linalg;
pub mod pencils;
pub mod sample;
pub mod scalar;
pub mod scorza;
pub mod spinor;
pub mod subspace;
pub mod verify;

pub use compalg::{Alg, AlgElem, AlgebraTag};
pub use error::{Error, Result};
pub use jordan::{Herm, HermMatrix, LinForm};
pub use linalg::Mat;
pub use pencils::{OrbitLabel, PencilMap, TwoForm};
pub use scalar::{Dual, FieldSpec, Ring, Scalar, DEFAULT_PRIME};
pub use scorza::{ConePoint, CotangentRep, ScorzaSpace};
pub use spinor::{Side, SpinorPair};
pub use subspace::{QuotientMap, SubQuotient, Subspace};
