use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::euler_pair::EulerPair;
use crate::partition::{PartCounts, Partition};

/// Glaisher's map: repeatedly merge `r` equal parts into one until every
/// multiplicity is below `r`. Works on any partition with parts in `S1`.
pub fn glaisher_merge(pair: &EulerPair, lambda: &Partition) -> Result<Partition> {
    let r = pair.r();
    let mut pending: BTreeMap<u64, u64> = BTreeMap::new();
    for &(v, m) in lambda.runs() {
        if !pair.in_s1(v) {
            return Err(Error::NotInS1(v));
        }
        pending.insert(v, m);
    }
    let mut out = PartCounts::new();
    // Merged parts are larger than their sources, so ascending order sees
    // every carry before its value is finalised.
    while let Some((v, m)) = pending.pop_first() {
        out.add(v, m % r)?;
        let q = m / r;
        if q > 0 {
            let merged = v.checked_mul(r).ok_or(Error::Overflow("merged part"))?;
            let slot = pending.entry(merged).or_insert(0);
            *slot = slot.checked_add(q).ok_or(Error::Overflow("part multiplicity"))?;
        }
    }
    out.into_partition()
}

/// Inverse of [`glaisher_merge`]: each part `r^k·core` becomes `r^k` copies
/// of `core`.
pub fn glaisher_split(pair: &EulerPair, mu: &Partition) -> Result<Partition> {
    let mut out = PartCounts::new();
    for &(v, m) in mu.runs() {
        let dec = pair.decompose(v)?;
        let copies = pair
            .r_pow(dec.exponent)?
            .checked_mul(m)
            .ok_or(Error::Overflow("split multiplicity"))?;
        out.add(dec.core, copies)?;
    }
    out.into_partition()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::PairSpec;
    use crate::stats::{enumerate_class, in_class, ClassId};

    fn pair(id: &str) -> EulerPair {
        id.parse::<PairSpec>().unwrap().build().unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn merge_examples() {
        let odd = pair("example-odd-mod6");
        assert_eq!(glaisher_merge(&odd, &p("1^11")).unwrap(), p("9,1,1"));
        assert_eq!(glaisher_merge(&odd, &p("7")).unwrap(), p("7"));
        assert_eq!(
            glaisher_merge(&odd, &p("35,17^3,15^84,5^51,1^3")).unwrap(),
            p("1215,135^2,51,35,15^2,3")
        );
        assert_eq!(glaisher_merge(&odd, &p("2")), Err(Error::NotInS1(2)));
    }

    #[test]
    fn split_examples() {
        let odd = pair("example-odd-mod6");
        assert_eq!(glaisher_split(&odd, &p("9,1,1")).unwrap(), p("1^11"));
        assert_eq!(glaisher_split(&odd, &p("7,5,1")).unwrap(), p("7,5,1"));
        assert_eq!(glaisher_split(&odd, &p("5,3,3")).unwrap(), p("5,1^6"));
    }

    #[test]
    fn bijection_between_o_and_d() {
        for id in ["classical(r=2)", "classical(r=3)", "family-vii(r=4)", "schur"] {
            let pair = pair(id);
            for n in 0..=22 {
                let os = enumerate_class(&pair, n, ClassId::Or).unwrap();
                let mut images: Vec<Partition> =
                    os.iter().map(|o| glaisher_merge(&pair, o).unwrap()).collect();
                for (o, d) in os.iter().zip(&images) {
                    assert!(in_class(&pair, d, ClassId::Dr));
                    assert_eq!(&glaisher_split(&pair, d).unwrap(), o);
                    assert_eq!(d.size(), n);
                }
                images.sort_by(|a, b| b.cmp(a));
                assert_eq!(images, enumerate_class(&pair, n, ClassId::Dr).unwrap(), "{id} n={n}");
            }
        }
    }

    #[test]
    fn excess_parts_per_merged_part() {
        let pair = pair("example-odd-mod6");
        for n in 0..=20 {
            for o in enumerate_class(&pair, n, ClassId::Or).unwrap() {
                let mu = glaisher_merge(&pair, &o).unwrap();
                let excess: u64 = mu
                    .runs()
                    .iter()
                    .map(|&(v, m)| {
                        let k = pair.decompose(v).unwrap().exponent;
                        m * (pair.r_pow(k).unwrap() - 1)
                    })
                    .sum();
                assert_eq!(o.len() - mu.len(), excess);
            }
        }
    }
}
