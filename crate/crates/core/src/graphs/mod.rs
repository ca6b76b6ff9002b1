//! Fraction graphs `E_{p/q}`, their strong powers, explicit bitset graphs,
//! and the group-theoretic operations on them (cohomomorphism up-maps,
//! coset quotients, subgroup independence numbers).

mod explicit;
mod fraction;
mod quotient;
mod subgroups;

pub use explicit::{Bitset, ExplicitGraph};
pub use fraction::{circular_distance, FractionGraphPower};
pub use quotient::{build_quotient, lift_bound, CosetQuotient, LiftedBound};
pub use subgroups::{alpha_grp_exhaustive, map_up, round_to_fraction, MappedSubgroup};

use crate::lattice::LatticeError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("invalid fraction graph parameters: {0}")]
    InvalidParameters(String),
    #[error("vector {0:?} is not a vertex of the graph")]
    InvalidVertex(Vec<u64>),
    #[error("subgroup is not an independent set of the base graph")]
    NotIndependent,
    #[error("{what} needs {needed} items, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u64,
    },
    #[error("ratio precondition violated: {0}")]
    RatioPrecondition(String),
    #[error("lifted set failed the direct independence check")]
    LiftNotIndependent,
    #[error("DIMACS line {line}: {message}")]
    Dimacs { line: usize, message: String },
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
