//! Exact symbolic toolkit for integrals of motion of the lattice sine-Gordon
//! model.
//!
//! The crate is layered bottom-up:
//!
//! - [`qcoeff`]: Laurent polynomials and rational functions in `q`,
//!   q-binomials, and exact specialization at roots of unity.
//! - [`algebra`]: noncommutative algebras given by pairwise q-exchange rules,
//!   with a normal-ordering engine shared by the lattice algebra and the
//!   auxiliary algebra of q-commuting variables `t_i`.
//! - [`screening`]: the screening maps and membership in `Im(T - Id)`.
//! - [`densities`]: the conserved densities in pin ("épingle") coordinates,
//!   their classical counterparts, and the Poisson bracket.
//! - [`series`]: truncated series in `1/lambda`, continued fractions and the
//!   q-logarithm generating function.
//! - [`specialize`]: root-of-unity specialization of densities and the
//!   `Phi_{N,r}` cancellation identity.
//! - [`properties`]: seeded randomized property suites.
//! - [`report`]: the machine-readable verification report.

pub mod algebra;
pub mod densities;
mod error;
pub mod properties;
pub mod qcoeff;
pub mod report;
pub mod screening;
pub mod series;
pub mod specialize;

pub use error::{Error, Result};
pub use report::VerificationReport;
