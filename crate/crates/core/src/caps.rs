use serde::Serialize;

/// Work limits. Exceeding one is always an explicit error, never a silent
/// truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest order for which all principal minors are enumerated.
    pub p0_order: usize,
    /// Largest subgroup enumerated explicitly.
    pub enumeration: u64,
    /// Largest coefficient box visited in one round of the ℓ∞ search.
    pub coefficient_box: u64,
    /// Largest explicit graph (vertices) built from a symbolic one.
    pub materialization: u64,
    /// Largest `p^n` for exhaustive subgroup search.
    pub exhaustive: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            p0_order: 20,
            enumeration: 10_000_000,
            coefficient_box: 100_000_000,
            materialization: 20_000,
            exhaustive: 10_000,
        }
    }
}
