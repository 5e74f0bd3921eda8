//! Exact counting of DP colorings (correspondence colorings) over full
//! m-fold covers of small simple graphs.
//!
//! A full m-fold cover of a graph is encoded as one permutation of
//! `{0..m}` per edge. On top of that encoding the crate provides:
//!
//! * exact coloring counters (brute force, inclusion-exclusion over edge
//!   subsets, the K4 cycle-statistics identity, Whitney's expansion of the
//!   chromatic polynomial, and signed-graph coloring counts),
//! * closed-form values and bounds for the dual DP color function of
//!   complete graphs,
//! * the extremal cover constructions that attain those values,
//! * symmetry-reduced exhaustive and sampled search for the extremal
//!   number of colorings over all full covers.
//!
//! Counting and formula code is generic over exact integer types through
//! [`Exact`]; [`Count`] and [`BigCount`] are the two instantiations used
//! throughout.

pub mod constructions;
pub mod counting;
pub mod cover;
mod error;
pub mod formulas;
pub mod graph;
pub mod io;
mod num;
pub mod perm;
pub mod search;

pub use error::{Error, Result};
pub use num::Exact;

pub use cover::{CycleStats, FullCover};
pub use graph::{Graph, SignedGraph, SubgraphCatalog};
pub use perm::Permutation;

/// Default exact count type. Every count the crate produces at desk scale
/// fits comfortably; arithmetic on it is overflow-checked.
pub type Count = i128;

/// Arbitrary-precision count type for formula evaluation far beyond the
/// range of [`Count`] (for example the bounds on K8 near their threshold).
pub type BigCount = num_bigint::BigInt;

/// Count result in the default integer type.
pub type CountResult = counting::CountResult<Count>;

/// Default guard on the number of edges for 2^t subset iteration.
pub const DEFAULT_SUBSET_LIMIT: u32 = 24;

/// Default cap on the number of assignments a brute-force counter may visit.
pub const DEFAULT_BRUTE_BUDGET: u128 = 1_000_000_000;

/// Resource guards shared by the counters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum edge count `t` for which 2^t subset sums are attempted.
    pub subset_limit: u32,
    /// Maximum size of the assignment space `m^n` for brute force.
    pub brute_budget: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            subset_limit: DEFAULT_SUBSET_LIMIT,
            brute_budget: DEFAULT_BRUTE_BUDGET,
        }
    }
}

impl Limits {
    pub fn with_subset_limit(mut self, limit: u32) -> Self {
        self.subset_limit = limit;
        self
    }

    pub(crate) fn check_subsets(&self, edge_count: usize) -> Result<()> {
        if edge_count as u64 > u64::from(self.subset_limit) {
            return Err(Error::ResourceLimit(format!(
                "graph has {edge_count} edges; 2^t subset iteration is limited to t <= {}",
                self.subset_limit
            )));
        }
        Ok(())
    }

    pub(crate) fn check_brute(&self, base: u64, exponent: usize) -> Result<()> {
        let mut size: u128 = 1;
        for _ in 0..exponent {
            size = size.saturating_mul(u128::from(base));
        }
        if size > self.brute_budget {
            return Err(Error::ResourceLimit(format!(
                "brute force would visit {base}^{exponent} assignments (budget {})",
                self.brute_budget
            )));
        }
        Ok(())
    }
}
