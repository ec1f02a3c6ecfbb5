//! Exact-arithmetic analysis of finite-dimensional real Lie algebras:
//! structure constants and ideals over the rationals, ellipticity and
//! compact-embedding certificates, root-space decompositions, invariant
//! polyhedral cones with the Gibbs-element decision, highest-weight
//! character traces, and KMS verification of thermal states on truncated
//! matrix representations.
//!
//! Structural verdicts (ideal membership, cone pointedness, containment,
//! admissibility) never depend on floating-point tolerances: they are
//! computed over `BigRational`. Floating point is confined to spectra,
//! traces, and state values, each guarded by explicit residual reports.

pub mod algebra;
pub mod cones;
pub mod error;
pub mod gibbs;
pub mod hwmods;
pub mod linprog;
pub mod rational;
pub mod roots;
pub mod spectral;

pub use num_complex::Complex64;
