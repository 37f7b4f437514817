use super::annotated::DecoratedPartition;
use super::glaisher::{glaisher_merge, glaisher_split};
use super::word::RWord;
use super::{distinguished_run, same_core_runs, units};
use crate::error::{Error, Result};
use crate::euler_pair::EulerPair;
use crate::partition::{PartCounts, Partition};
use crate::stats::ClassId;

/// Send a decorated partition to `O_1r`. With the decorated part `r^k·core`
/// at occurrence `p` and word `w`, the parts `r^t·core` (`t > k`) and the
/// first `p` copies of `r^k·core` are broken into `r^{k−ℓ(w)}·core`, except
/// that the decorated copy keeps only `d_w + 1` of those and releases the
/// rest as copies of `core`. Everything else is split into primitive parts.
pub fn decorated_to_o1r(pair: &EulerPair, d: &DecoratedPartition) -> Result<Partition> {
    let r = pair.r();
    let dec = pair.decompose(d.value())?;
    let (core, k) = (dec.core, dec.exponent);
    let len = d.word().len() as u32;
    let dw = d.word().value(r)?;
    let target_exp = k - len;
    let target = pair.compose(core, target_exp)?;
    let p = d.occurrence();

    let mut out = PartCounts::new();
    let mut tilde = PartCounts::new();
    for &(v, m) in d.base().runs() {
        let vd = pair.decompose(v)?;
        if vd.core != core || vd.exponent < k {
            tilde.add(v, m)?;
        } else if vd.exponent > k {
            out.add(target, mul(m, pair.r_pow(vd.exponent - target_exp)?)?)?;
        } else {
            let pieces = pair.r_pow(len)?;
            let kept = dw + 1;
            out.add(target, kept)?;
            out.add(core, pair.r_pow(k)? - kept * pair.r_pow(target_exp)?)?;
            out.add(target, mul(p - 1, pieces)?)?;
            tilde.add(v, m - p)?;
        }
    }
    out.add_partition(&glaisher_split(pair, &tilde.into_partition()?)?)?;
    out.into_partition()
}

/// Inverse of [`decorated_to_o1r`].
pub fn o1r_to_decorated(pair: &EulerPair, lambda: &Partition) -> Result<DecoratedPartition> {
    let (v, f) = distinguished_run(pair, lambda, ClassId::O1r)?;
    let dec = pair.decompose(v)?;
    let mu = glaisher_merge(pair, lambda)?;
    let mut before: u64 = 0;
    // Largest parts first: find the copy at which the running total of
    // r^k·core units first reaches f.
    for (u, m, t) in same_core_runs(pair, &mu, dec.core, dec.exponent)? {
        let unit = units(pair, t - dec.exponent)?;
        let needed = f - before;
        if (m as u128) * (unit as u128) >= needed as u128 {
            let occurrence = needed.div_ceil(unit);
            let n_before = before + (occurrence - 1) * unit;
            let dw = f - n_before - 1;
            let word = RWord::from_value_padded(dw, pair.r(), (t - dec.exponent) as usize)?;
            return DecoratedPartition::new(pair, mu, u, occurrence, word);
        }
        before += m * unit;
    }
    Err(Error::Invariant(format!(
        "merged partition of {lambda} has too few parts built on {}",
        dec.core
    )))
}

fn mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow("part multiplicity"))
}
