//! Exact-arithmetic machinery for one-generated nilpotent assosymmetric
//! algebras: structure-constant algebras, second cohomology, central
//! extensions, isomorphism search, and an embedded catalog of the
//! low-dimensional classification together with a full verification suite.
//!
//! All computation is exact, over arbitrary-precision rationals or prime
//! fields. Deterministic pivoting and a fixed seeded RNG make every report
//! byte-reproducible.

// index loops here mirror the tensor and matrix formulas they implement
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod catalog;
pub mod cohomology;
pub mod dsl;
pub mod extensions;
pub mod field;
pub mod iso;
pub mod linalg;
pub mod report;
pub mod rng;
pub mod verify;

pub use algebra::{Algebra, AlgebraError, GeneratorPlan};
pub use cohomology::{BilinearForm, CohomologyReport};
pub use field::{Field, Scalar, Q};
pub use linalg::{Matrix, RowSpace};
