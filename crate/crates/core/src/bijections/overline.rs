use super::annotated::{smaller_same_core, Overpartition};
use super::glaisher::glaisher_merge;
use super::{distinguished_run, same_core_runs};
use crate::error::{Error, Result};
use crate::euler_pair::EulerPair;
use crate::partition::{PartCounts, Partition};
use crate::stats::ClassId;

/// Replace the overlined `r^s·core` by `r` copies of `r^k·core` and `r − 1`
/// copies of each `r^j·core`, `k < j < s`, where `k` is the largest exponent
/// below `s` present among the parts.
pub fn overlined_to_t(pair: &EulerPair, o: &Overpartition) -> Result<Partition> {
    let r = pair.r();
    let dec = pair.decompose(o.value())?;
    let k = smaller_same_core(pair, o.base(), dec)?.ok_or_else(|| {
        Error::Invariant(format!("{o} has no smaller part built on {}", dec.core))
    })?;
    let mut out = PartCounts::new();
    out.add_partition(o.base())?;
    out.remove(o.value(), 1)?;
    out.add(pair.compose(dec.core, k)?, r)?;
    for j in k + 1..dec.exponent {
        out.add(pair.compose(dec.core, j)?, r - 1)?;
    }
    out.into_partition()
}

/// Inverse of [`overlined_to_t`]: merge, then overline the smallest part
/// built on the repeated part's core with a larger exponent.
pub fn t_to_overlined(pair: &EulerPair, lambda: &Partition) -> Result<Overpartition> {
    let (v, _) = distinguished_run(pair, lambda, ClassId::Tr)?;
    let dec = pair.decompose(v)?;
    let mu = glaisher_merge(pair, lambda)?;
    let (u, _, _) = same_core_runs(pair, &mu, dec.core, dec.exponent + 1)?
        .pop()
        .ok_or_else(|| Error::Invariant(format!("nothing merged above {v} in {mu}")))?;
    Overpartition::new(pair, mu, u)
}
