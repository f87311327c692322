//! Radical algebras realizing class-two p-groups, and the end-to-end
//! comparison of `RG` and `RH` through hereditary witnesses.

pub mod baer;
pub mod bovdi;
pub mod pipeline;

pub use baer::{baer_algebra, BaerAlgebra, CommutatorConvention};
pub use bovdi::{bovdi_search, BovdiHit, SearchPhase};
pub use pipeline::{
    criterion_check, group_class, hereditary_certificates, matches_characteristic, quasi_regular_terms,
    quasi_regular_witness, recovered_counts, recovered_hom_count, ClassWitness,
    GroupClass, PipelineReport, PipelineRow, RecoveredCounts, Route, Verdict,
};

use crate::group::invariants::structure_invariants;
use crate::group::ops::prime_power;
use crate::group::FiniteGroup;
use crate::GroupOps;

/// `(p, nilpotency class, exponent)`, with `p = None` unless `|G|` is a
/// nontrivial prime power.
pub(crate) fn p_group_class(g: &FiniteGroup) -> (Option<u64>, Option<usize>, u64) {
    let inv = structure_invariants(g);
    let p = prime_power(g.order() as u64).map(|(p, _)| p).filter(|_| g.order() > 1);
    (p, inv.nilpotency_class, inv.exponent)
}

pub(crate) fn log_order(n: usize, p: u64) -> u32 {
    let mut k = 0;
    let mut m = n as u64;
    while m > 1 && m % p == 0 {
        m /= p;
        k += 1;
    }
    k
}
