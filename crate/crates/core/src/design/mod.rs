//! Combinatorial design primitives used by the builders: factorizations,
//! triple systems, group divisible designs, headsets, cocktail partitions,
//! path partitions and small groomings of `K_n` with ratio 4.
//!
//! Everything that comes out of a randomized search is re-checked by the
//! structural `check` of its type before being returned.

pub mod cocktail;
pub mod colour;
pub mod factor;
pub mod headset;
pub mod mon4;
pub mod paths;
pub mod small;
pub mod triple;

pub use cocktail::cocktail_partition;
pub use factor::{
    hamiltonian_one_factorization, near_one_factorization, near_one_factorization_minus_cycle, one_factorization,
    one_factorization_avoiding, removed_k4_graph, FactorSet, NearPrescription,
};
pub use headset::{headset, headset_exact, Headset};
pub use mon4::{build_mon_n4, build_on_n4_with, Mon4Request};
pub use paths::{factor_pairing, p3_partition};
pub use small::{decompose_zero_excess, SmallSearch};
pub use triple::{gdd3, pts_with_leave, steiner_triple_system, GroupDivisibleDesign, LeaveShape, TripleSystem};

/// Attempts made by randomized searches before giving up, each with the next seed.
pub const SEARCH_ATTEMPTS: u64 = 64;
