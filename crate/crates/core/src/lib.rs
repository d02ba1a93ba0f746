//! Inner-automorphic Cayley graphs on dihedral groups.
//!
//! The crate is `no_std` (it only needs `alloc`) and covers the whole
//! algorithmic side:
//!
//! * [`dihedral`]: exact arithmetic in `D_2n`, conjugacy classes, the regular
//!   representations and the automorphisms of the group.
//! * [`cayley`]: connection sets, the named families, and Cayley graph
//!   construction over the fixed vertex indexing `a^i -> i`, `a^i b -> n + i`.
//! * [`metrics`]: BFS invariants, family recognition and twin detection.
//! * [`perm`], [`factored`], [`permgroup`]: permutations, exact factored
//!   integers and a Schreier-Sims based permutation group engine.
//! * [`search`]: full automorphism groups by individualization-refinement.
//! * [`structure`]: classification of connected inner-automorphic dihedrants,
//!   the case (v) checks and the quotient/kernel machinery for the
//!   `D_8p` family.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod cayley;
pub mod dihedral;
mod error;
pub mod factored;
pub mod graph;
pub mod metrics;
pub mod perm;
pub mod permgroup;
pub mod search;
pub mod structure;

pub use cayley::{CayleyGraph, ConnectionSet, Family};
pub use dihedral::{ConjClass, DihedralElement, DihedralGroup, GroupAutomorphism};
pub use error::Error;
pub use factored::FactoredInteger;
pub use graph::Graph;
pub use perm::Permutation;
pub use permgroup::{BlockSystem, PermutationGroup};
pub use search::{automorphism_group, ColoredPartition};
pub use structure::{classify, ClassificationOutcome};

/// Largest vertex count (`2n`) a Cayley graph may have.
pub const MAX_VERTICES: usize = 4096;

/// Resource caps shared by the search-heavy operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of refinement nodes one automorphism search may visit.
    pub node_cap: u64,
    /// Maximum number of s-arcs an s-arc transitivity test may consider.
    pub arc_cap: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            node_cap: 10_000_000,
            arc_cap: 10_000_000,
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
