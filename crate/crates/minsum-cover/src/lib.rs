//! Solvers and analysis tools for min-sum ordering of a monotone submodular
//! utility: pick the permutation of n costly elements that accumulates
//! utility as cheaply as possible, where each unit of utility pays the total
//! cost of everything scheduled before (and including) the element that
//! earned it.
//!
//! Two concrete settings drive the crate. Ordering filters in a query
//! pipeline so that tuples are discarded cheaply maps to coverage utilities;
//! opening facilities so that customers are served early maps to
//! facility-location utilities. Both satisfy the stronger second-order
//! supermodularity condition under which the move-based local search in
//! [`solvers`] is a 4-approximation at convergence.
//!
//! Start with [`instance::Instance`] plus one of the [`utility`] families,
//! evaluate orderings via [`objective`], and improve them with [`solvers`].
//! [`generators`] synthesizes reproducible random instances, [`harness`] runs
//! the batch greedy-versus-local comparison, and [`verification`] materializes
//! the analysis quantities (the shared-utility matrix and its identities) as
//! numeric checks. The runnable examples under `examples/` walk through each
//! of these in order.
//!
//! Conventions used throughout:
//!
//! * elements are `0..n` in memory and in files;
//! * positions within a permutation are 1-based in public signatures;
//! * utilities must evaluate to exactly 0 on the empty set;
//! * every randomized component takes an explicit 64-bit seed and documents
//!   its draw order, so results reproduce bit-for-bit.

// Index loops here mirror the 1-based positions and i/j subscripts of the
// quantities they compute; iterator adaptors would obscure that.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod generators;
pub mod harness;
pub mod instance;
pub mod instance_file;
pub mod objective;
pub mod perm;
pub mod properties;
pub mod rng;
pub mod solvers;
pub mod utility;
pub mod verification;

pub use error::{Error, Result};
pub use instance::{CostVector, Instance, UtilityOracle};
pub use objective::{
    best_move_neighbor, move_neighbor_objectives, objective, objective_trace,
    pseudo_neighbor_objective, MoveCandidate, ObjectiveTrace,
};
pub use perm::Permutation;
pub use properties::{check_all_properties, check_property, PropertyKind, PropertyReport};
pub use solvers::{
    brute_force, cost_order_init, greedy, local_search, random_init, round_budget,
    LocalSearchConfig, SearchMode, SearchResult,
};
pub use utility::{CoverageUtility, FacilityLocationUtility, MemoizedOracle, TabulatedUtility};
pub use verification::{
    approximation_ratio, shared_utility_matrix, verify_identities, verify_local_constraint,
    SharedUtilityMatrix,
};
