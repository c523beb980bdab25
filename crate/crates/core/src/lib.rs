//! Exact computation of the Krull-Schmidt decomposition of `H^0(X, L_X(D))`
//! for a projective curve `X` carrying a faithful action of `Z/p^v` in
//! characteristic `p`.
//!
//! Everything is driven by combinatorial data: the genus of the quotient
//! `Y = X/G`, the ramified orbits with their per-level ramification breaks,
//! and the coefficients of a `G`-invariant divisor. The [`as_oracle`] module
//! provides an independent brute-force check on Artin-Schreier curves.

pub mod as_oracle;
pub mod cover_tower;
pub mod cyclic_rep;
pub mod decomposition;
mod error;
pub mod fp;
pub mod sampling;

pub use cover_tower::{CoverTower, InvariantDivisor, LevelDivisor, RamifiedOrbit, StrictReport};
pub use cyclic_rep::{Basis, Decomposition, GroupSpec, Indecomposable, K0Vector};
pub use decomposition::{DecompositionReport, Method};
pub use error::{Error, Result};
