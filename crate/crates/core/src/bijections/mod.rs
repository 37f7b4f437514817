//! Glaisher's map and the correspondences between marked, decorated and
//! overlined partitions and the classes `O_1r`, `D_1r` and `T_r`.
//!
//! Every map here is exact on run-length partitions, so inputs such as
//! `45^320` never get expanded.

mod annotated;
mod d1r;
mod glaisher;
mod marked;
mod o1r;
mod overline;
mod word;

pub use annotated::{DecoratedPartition, MarkedPartition, Overpartition};
pub use d1r::{d1r_to_decorated, decorated_to_d1r};
pub use glaisher::{glaisher_merge, glaisher_split};
pub use marked::{
    decorated_fiber, enumerate_decorated, enumerate_marked, enumerate_overlined,
    marked_to_decorated,
};
pub use o1r::{decorated_to_o1r, o1r_to_decorated};
pub use overline::{overlined_to_t, t_to_overlined};
pub use word::RWord;

use crate::error::{Error, Result};
use crate::euler_pair::EulerPair;
use crate::partition::Partition;
use crate::stats::{ensure_in_class, ClassId};

/// The run singled out by class membership: the unique non-primitive value
/// for `O_1r`, the unique value repeated at least `r` times otherwise.
fn distinguished_run(pair: &EulerPair, lambda: &Partition, cls: ClassId) -> Result<(u64, u64)> {
    ensure_in_class(pair, lambda, cls)?;
    let r = pair.r();
    lambda
        .runs()
        .iter()
        .copied()
        .find(|&(v, m)| match cls {
            ClassId::O1r => pair.is_non_primitive(v),
            _ => m >= r,
        })
        .ok_or_else(|| Error::Invariant(format!("{lambda} has no distinguished part")))
}

/// Runs `(value, multiplicity, exponent)` of `mu` of the form `r^t·core`
/// with `t ≥ min_exponent`, largest first.
fn same_core_runs(
    pair: &EulerPair,
    mu: &Partition,
    core: u64,
    min_exponent: u32,
) -> Result<Vec<(u64, u64, u32)>> {
    let mut out = Vec::new();
    for &(v, m) in mu.runs() {
        let dec = pair.decompose(v)?;
        if dec.core == core && dec.exponent >= min_exponent {
            out.push((v, m, dec.exponent));
        }
    }
    Ok(out)
}

fn units(pair: &EulerPair, exponent: u32) -> Result<u64> {
    pair.r_pow(exponent)
}
