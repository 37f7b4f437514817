use super::annotated::DecoratedPartition;
use super::glaisher::glaisher_merge;
use super::word::RWord;
use super::{distinguished_run, same_core_runs, units};
use crate::error::{Error, Result};
use crate::euler_pair::EulerPair;
use crate::partition::{PartCounts, Partition};
use crate::stats::ClassId;

/// Send a decorated partition to `D_1r`. With the decorated part `r^k·core`
/// at occurrence `p` and word `w`, let `e = k − ℓ(w) − 1`. Copies `p..` of
/// `r^k·core` and the parts `r^t·core` with `e < t < k` are broken into
/// `r^e·core`, except that the decorated copy keeps only `r(d_w + 1)` of
/// those; what it releases is merged back from copies of `core`.
pub fn decorated_to_d1r(pair: &EulerPair, d: &DecoratedPartition) -> Result<Partition> {
    let r = pair.r();
    let dec = pair.decompose(d.value())?;
    let (core, k) = (dec.core, dec.exponent);
    let len = d.word().len() as u32;
    let dw = d.word().value(r)?;
    let e = k - len - 1;
    let target = pair.compose(core, e)?;
    let p = d.occurrence();

    let mut out = PartCounts::new();
    for &(v, m) in d.base().runs() {
        let vd = pair.decompose(v)?;
        if vd.core != core || vd.exponent <= e || vd.exponent > k {
            out.add(v, m)?;
        } else if vd.exponent < k {
            out.add(target, mul(m, pair.r_pow(vd.exponent - e)?)?)?;
        } else {
            out.add(v, p - 1)?;
            let kept = mul(r, dw + 1)?;
            out.add(target, kept)?;
            let released = pair.r_pow(k)? - kept * pair.r_pow(e)?;
            let ones = Partition::from_runs([(core, released)])?;
            out.add_partition(&glaisher_merge(pair, &ones)?)?;
            out.add(target, mul(m - p, pair.r_pow(k - e)?)?)?;
        }
    }
    out.into_partition()
}

/// Inverse of [`decorated_to_d1r`]; the merged partition is scanned from
/// its smallest parts upward.
pub fn d1r_to_decorated(pair: &EulerPair, lambda: &Partition) -> Result<DecoratedPartition> {
    let r = pair.r();
    let (v, f) = distinguished_run(pair, lambda, ClassId::D1r)?;
    let dec = pair.decompose(v)?;
    let mu = glaisher_merge(pair, lambda)?;
    let mut before: u64 = 0;
    for (u, m, t) in same_core_runs(pair, &mu, dec.core, dec.exponent)?.into_iter().rev() {
        let unit = units(pair, t - dec.exponent)?;
        let needed = f - before;
        if (m as u128) * (unit as u128) >= needed as u128 {
            let from_right = needed.div_ceil(unit);
            let n_before = before + (from_right - 1) * unit;
            let rest = f - n_before;
            if t == dec.exponent || !rest.is_multiple_of(r) {
                return Err(Error::Invariant(format!(
                    "remaining count {rest} at {u} is not a positive multiple of {r}"
                )));
            }
            let dw = rest / r - 1;
            let word = RWord::from_value_padded(dw, r, (t - dec.exponent - 1) as usize)?;
            return DecoratedPartition::new(pair, mu, u, m - from_right + 1, word);
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
