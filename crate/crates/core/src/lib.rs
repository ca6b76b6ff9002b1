//! Exact constructions and verification of subgroup independent sets in
//! strong powers of fraction graphs `E_{p/q}`.
//!
//! * [`exact`]: rational matrices, determinants, P0 test.
//! * [`construction`]: the `(n, k, b, r, s)` family and its perturbation.
//! * [`lattice`]: p-ary lattices, `λ∞`, bound certificates.
//! * [`graphs`]: fraction graph powers, quotients, subgroup searches.
//! * [`mis`]: exact maximum independent set.
//! * [`limits`]: the gap function, convergence tables and ratio scans.

pub mod caps;
pub mod cli;
pub mod construction;
pub mod exact;
pub mod graphs;
pub mod lattice;
pub mod limits;
pub mod mis;
pub mod report;

pub use caps::Caps;
