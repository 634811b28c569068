//! Construction and exhaustive verification of paving and sparse-paving
//! matroids on small labeled ground sets.
//!
//! - [`setcore`]: subsets of `{1..n}` as machine words, canonical families.
//! - [`matroid`]: basis-represented matroids and their derived structure.
//! - [`builder`]: paving matroids from hyperplane seeds, sparse-paving
//!   matroids from circuit seeds, the randomized greedy seed search.
//! - [`enumerate`]: seed search, brute-force enumeration, counting.
//! - [`format`]: the plain-text record formats.
//! - [`parallel`]: rayon-backed execution with a sequential fallback.

pub mod builder;
pub mod enumerate;
pub mod format;
pub mod matroid;
pub mod parallel;
pub mod setcore;

pub use builder::{
    construct_paving, construct_sparse, greedy_seed, is_d_partition, seed_of, BuildError, CircuitSeed, GreedyConfig,
    PavingConstruction, PavingSeed, SeedViolation,
};
pub use enumerate::{
    canonical_form, collect_circuit_seeds, collect_seeds, count, enumerate, enumerate_all_matroids, enumerate_paving,
    enumerate_seeds, verify_counting_inequality, BoundReport, CountMode, CountRecord, EnumError, EnumerationQuery,
    MatroidClass, Simplicity,
};
pub use matroid::{ExchangeWitness, Matroid, MatroidError, NPartition, SimpleConvention, StructureReport};
pub use parallel::Execution;
pub use setcore::{binomial, ElementSet, GroundSet, SetError, SetFamily};
