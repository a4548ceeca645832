//! Exact analysis of cyclic birth-death chains: random walks on `Z` whose
//! right-step probability at site `x` is `p_{x mod m}`.
//!
//! The crate computes the asymptotic velocity exactly (three independent
//! routes), enumerates every speed reachable by rearranging the
//! environment, checks the greedy-ordering conjectures by exhaustive search,
//! compares against the i.i.d. environment walk, and validates the exact
//! results with a seeded Monte Carlo simulator.

pub mod cli;
pub mod error;
pub mod linalg;
pub mod ordering;
pub mod permutation;
pub mod products;
pub mod rational;
pub mod report;
pub mod rwre;
pub mod search;
pub mod simulate;
pub mod speed;
pub mod vector;

pub use error::{Error, Result};
pub use ordering::{canonical_ordering, class_count, enumerate_dihedral_classes, CyclicOrdering};
pub use permutation::{apply_permutation, Permutation};
pub use rational::{parse_rational, Rational};
pub use speed::{Sign, SpeedReport};
pub use vector::{PositiveVector, ProbabilityVector};
