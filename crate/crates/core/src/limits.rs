use serde::{Deserialize, Serialize};

/// Size and effort bounds shared by every operation.
///
/// Operations fail with [`crate::Error::BoundExceeded`] or
/// [`crate::Error::SearchBudgetExceeded`] rather than degrade silently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Limits {
    /// Largest group materialized as a Cayley table.
    pub max_table_order: usize,
    /// Largest group whose full subgroup list is enumerated.
    pub max_subgroup_order: usize,
    /// Largest algebra whose elements are enumerated.
    pub max_algebra_elements: u64,
    /// Backtracking nodes allowed per homomorphism or isomorphism search.
    pub search_budget: u64,
    /// Largest family of maximal subgroups in inclusion-exclusion.
    pub max_maximal_subgroups: usize,
    /// Candidate linear maps allowed when counting algebra homomorphisms.
    pub max_linear_maps: u64,
    /// Structure-constant candidates explored by the radical-algebra search.
    pub algebra_search_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_table_order: 4096,
            max_subgroup_order: 256,
            max_algebra_elements: 1 << 20,
            search_budget: 50_000_000,
            max_maximal_subgroups: 20,
            max_linear_maps: 1 << 24,
            algebra_search_budget: 1 << 27,
        }
    }
}
