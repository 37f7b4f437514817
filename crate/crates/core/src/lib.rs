//! Verification tools for Beck-type companion identities of Euler pairs of
//! order `r`.
//!
//! - [`partition`]: run-length partitions and restricted enumeration
//! - [`euler_pair`], [`catalog`]: Euler pairs, `S2 = S1 \ rS1`, built-in families
//! - [`stats`]: the five partition classes and the Beck statistics
//! - [`bijections`]: Glaisher's map and the marked/decorated/overlined correspondences
//! - [`qseries`]: exact truncated power series and the generating-function checks
//! - [`multipartite`]: the vector-partition analogue

pub mod bijections;
pub mod catalog;
pub mod error;
pub mod euler_pair;
pub mod multipartite;
pub mod partition;
pub mod qseries;
pub mod stats;

pub use catalog::{Family, PairSpec};
pub use error::{Error, Result};
pub use euler_pair::{EulerPair, IntegerSet, PartDecomposition, ValidationReport};
pub use partition::{enumerate_partitions, PartConstraint, Partition};
