use super::annotated::{smaller_same_core, DecoratedPartition, MarkedPartition, Overpartition};
use super::word::RWord;
use crate::error::{Error, Result};
use crate::euler_pair::EulerPair;
use crate::partition::Partition;
use crate::stats::{for_each_in_class, ClassId};

/// The `(r−1)`-to-1 map from marks to decorations: write the index in base
/// `r` and drop its leading digit.
pub fn marked_to_decorated(pair: &EulerPair, m: &MarkedPartition) -> Result<DecoratedPartition> {
    let word = RWord::from_value(m.index(), pair.r()).without_leading();
    DecoratedPartition::new(pair, m.base().clone(), m.value(), m.occurrence(), word)
}

/// The `r − 1` marked partitions sent to `d` by [`marked_to_decorated`]:
/// indices `lead·r^ℓ + d_w` for `lead` in `1..r`.
pub fn decorated_fiber(pair: &EulerPair, d: &DecoratedPartition) -> Result<Vec<MarkedPartition>> {
    let r = pair.r();
    let len = u32::try_from(d.word().len()).map_err(|_| Error::Overflow("word length"))?;
    let scale = pair.r_pow(len)?;
    let dw = d.word().value(r)?;
    (1..r)
        .map(|lead| {
            let t = lead
                .checked_mul(scale)
                .and_then(|x| x.checked_add(dw))
                .ok_or(Error::Overflow("mark index"))?;
            MarkedPartition::new(pair, d.base().clone(), d.value(), d.occurrence(), t)
        })
        .collect()
}

/// Visit each non-primitive run `(value, multiplicity, exponent)` of every
/// `D_r(n)` partition.
fn for_each_nonprimitive_run<F>(pair: &EulerPair, n: u64, mut visit: F) -> Result<()>
where
    F: FnMut(&Partition, u64, u64, u32) -> Result<()>,
{
    let mut err = None;
    for_each_in_class(pair, n, ClassId::Dr, |base| {
        if err.is_some() {
            return;
        }
        for &(v, m) in base.runs() {
            let res = pair
                .decompose(v)
                .and_then(|dec| match dec.exponent {
                    0 => Ok(()),
                    k => visit(base, v, m, k),
                });
            if let Err(e) = res {
                err = Some(e);
                return;
            }
        }
    })?;
    err.map_or(Ok(()), Err)
}

/// Every marked partition of `n`; equal parts are marked separately.
pub fn enumerate_marked(pair: &EulerPair, n: u64) -> Result<Vec<MarkedPartition>> {
    let mut out = Vec::new();
    for_each_nonprimitive_run(pair, n, |base, v, m, k| {
        let limit = pair.r_pow(k)?;
        for occurrence in 1..=m {
            for t in 1..limit {
                out.push(MarkedPartition::new(pair, base.clone(), v, occurrence, t)?);
            }
        }
        Ok(())
    })?;
    Ok(out)
}

/// Every decorated partition of `n`.
pub fn enumerate_decorated(pair: &EulerPair, n: u64) -> Result<Vec<DecoratedPartition>> {
    let r = pair.r();
    let mut out = Vec::new();
    for_each_nonprimitive_run(pair, n, |base, v, m, k| {
        for occurrence in 1..=m {
            for len in 0..k {
                for dw in 0..pair.r_pow(len)? {
                    let word = RWord::from_value_padded(dw, r, len as usize)?;
                    out.push(DecoratedPartition::new(pair, base.clone(), v, occurrence, word)?);
                }
            }
        }
        Ok(())
    })?;
    Ok(out)
}

/// Every overpartition of `n` in the `D_r` sense.
pub fn enumerate_overlined(pair: &EulerPair, n: u64) -> Result<Vec<Overpartition>> {
    let mut out = Vec::new();
    for_each_nonprimitive_run(pair, n, |base, v, _, _| {
        let dec = pair.decompose(v)?;
        if smaller_same_core(pair, base, dec)?.is_some() {
            out.push(Overpartition::new(pair, base.clone(), v)?);
        }
        Ok(())
    })?;
    Ok(out)
}
