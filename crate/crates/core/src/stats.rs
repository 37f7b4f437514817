//! The five partition classes attached to an Euler pair and the Beck
//! statistics computed over them by exhaustive enumeration.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};
use crate::euler_pair::EulerPair;
use crate::partition::{for_each_partition_with_values, PartCounts, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassId {
    /// Parts in S2, any multiplicity.
    #[serde(rename = "O_r")]
    Or,
    /// Parts in S1, each repeated at most r-1 times.
    #[serde(rename = "D_r")]
    Dr,
    /// Parts in S1 with exactly one non-primitive value (any multiplicity).
    #[serde(rename = "O_1r")]
    O1r,
    /// Parts in S1 with exactly one value repeated at least r times.
    #[serde(rename = "D_1r")]
    D1r,
    /// `D_1r` where the repeated value occurs strictly between r and 2r times.
    #[serde(rename = "T_r")]
    Tr,
}

impl ClassId {
    pub const ALL: [ClassId; 5] = [ClassId::Or, ClassId::Dr, ClassId::O1r, ClassId::D1r, ClassId::Tr];

    pub fn name(self) -> &'static str {
        match self {
            ClassId::Or => "O_r",
            ClassId::Dr => "D_r",
            ClassId::O1r => "O_1r",
            ClassId::D1r => "D_1r",
            ClassId::Tr => "T_r",
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().replace(['_', ','], "").to_ascii_lowercase();
        ClassId::ALL
            .into_iter()
            .find(|c| c.name().replace('_', "").to_ascii_lowercase() == norm)
            .ok_or_else(|| parse_err("class", format!("unknown class {s:?}")))
    }
}

/// Whether `p` belongs to class `cls` of `pair` (size is not checked).
pub fn in_class(pair: &EulerPair, p: &Partition, cls: ClassId) -> bool {
    let r = pair.r();
    let runs = p.runs();
    if cls == ClassId::Or {
        return runs.iter().all(|&(v, _)| pair.in_s2(v));
    }
    if !runs.iter().all(|&(v, _)| pair.in_s1(v)) {
        return false;
    }
    match cls {
        ClassId::Or => unreachable!(),
        ClassId::Dr => runs.iter().all(|&(_, m)| m < r),
        ClassId::O1r => runs.iter().filter(|&&(v, _)| pair.is_non_primitive(v)).count() == 1,
        ClassId::D1r => runs.iter().filter(|&&(_, m)| m >= r).count() == 1,
        ClassId::Tr => {
            let repeated: Vec<u64> = runs.iter().map(|&(_, m)| m).filter(|&m| m >= r).collect();
            repeated.len() == 1 && repeated[0] > r && repeated[0] < 2 * r
        }
    }
}

/// Error unless `p` is in `cls`.
pub fn ensure_in_class(pair: &EulerPair, p: &Partition, cls: ClassId) -> Result<()> {
    if in_class(pair, p, cls) {
        Ok(())
    } else {
        Err(Error::NotInClass {
            class: cls.to_string(),
            partition: p.to_string(),
        })
    }
}

fn descending(mut v: Vec<u64>) -> Vec<u64> {
    v.reverse();
    v
}

/// Stream every member of `cls` for `n` without collecting.
pub fn for_each_in_class<F: FnMut(&Partition)>(
    pair: &EulerPair,
    n: u64,
    cls: ClassId,
    mut visit: F,
) -> Result<()> {
    pair.ensure_valid(n)?;
    let r = pair.r();
    let s1 = descending(pair.s1_up_to(n));
    let s2 = descending(pair.s2_up_to(n));
    match cls {
        ClassId::Or => for_each_partition_with_values(n, &s2, None, &mut visit),
        ClassId::Dr => for_each_partition_with_values(n, &s1, Some(r - 1), &mut visit),
        ClassId::O1r => {
            // One non-primitive value v with multiplicity f, primitive rest.
            for &v in s1.iter().filter(|&&v| pair.is_non_primitive(v)) {
                for f in 1..=n / v {
                    let mut err = None;
                    for_each_partition_with_values(n - f * v, &s2, None, &mut |rest: &Partition| {
                        match with_run(rest, v, f) {
                            Ok(p) => visit(&p),
                            Err(e) => err = Some(e),
                        }
                    });
                    if let Some(e) = err {
                        return Err(e);
                    }
                }
            }
        }
        ClassId::D1r | ClassId::Tr => {
            for &v in &s1 {
                let (lo, hi) = if cls == ClassId::D1r {
                    (r, n / v)
                } else {
                    (r + 1, (n / v).min(2 * r - 1))
                };
                let others: Vec<u64> = s1.iter().copied().filter(|&u| u != v).collect();
                for f in lo..=hi {
                    let mut err = None;
                    for_each_partition_with_values(n - f * v, &others, Some(r - 1), &mut |rest: &Partition| {
                        match with_run(rest, v, f) {
                            Ok(p) => visit(&p),
                            Err(e) => err = Some(e),
                        }
                    });
                    if let Some(e) = err {
                        return Err(e);
                    }
                }
            }
        }
    }
    Ok(())
}

fn with_run(p: &Partition, value: u64, mult: u64) -> Result<Partition> {
    let mut counts = PartCounts::new();
    counts.add_partition(p)?;
    counts.add(value, mult)?;
    counts.into_partition()
}

/// All members of `cls` for `n`, lexicographically decreasing.
pub fn enumerate_class(pair: &EulerPair, n: u64, cls: ClassId) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for_each_in_class(pair, n, cls, |p| out.push(p.clone()))?;
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// One row of Beck statistics for a fixed `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeckReport {
    pub n: u64,
    /// |O_r(n)|
    pub o_count: u64,
    /// |D_r(n)|
    pub d_count: u64,
    /// a_r(n) = |O_1r(n)|
    pub a: u64,
    /// b_r(n): total parts over O_r minus total parts over D_r.
    pub b: i64,
    /// c_r(n) = |D_1r(n)|
    pub c: u64,
    /// b'_r(n): total distinct parts over D_r minus over O_r.
    pub b_prime: i64,
    /// c'_r(n) = |T_r(n)|
    pub c_prime: u64,
    pub ok_counts: bool,
    pub ok_t1: bool,
    pub ok_t2: bool,
}

#[derive(Default)]
struct Tally {
    count: u64,
    parts: u64,
    distinct: u64,
}

impl Tally {
    fn add(&mut self, p: &Partition) -> Result<()> {
        let overflow = || Error::Overflow("class tally");
        self.count = self.count.checked_add(1).ok_or_else(overflow)?;
        self.parts = self.parts.checked_add(p.len()).ok_or_else(overflow)?;
        self.distinct = self.distinct.checked_add(p.distinct_len()).ok_or_else(overflow)?;
        Ok(())
    }
}

fn tally(pair: &EulerPair, n: u64, cls: ClassId) -> Result<Tally> {
    let mut t = Tally::default();
    let mut err = None;
    for_each_in_class(pair, n, cls, |p| {
        if err.is_none() {
            if let Err(e) = t.add(p) {
                err = Some(e);
            }
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(t),
    }
}

fn signed_diff(a: u64, b: u64) -> Result<i64> {
    let d = a as i128 - b as i128;
    i64::try_from(d).map_err(|_| Error::Overflow("statistic difference"))
}

/// Enumerate all five classes at `n` and evaluate both Beck identities.
pub fn beck_statistics(pair: &EulerPair, n: u64) -> Result<BeckReport> {
    let o = tally(pair, n, ClassId::Or)?;
    let d = tally(pair, n, ClassId::Dr)?;
    let a = tally(pair, n, ClassId::O1r)?.count;
    let c = tally(pair, n, ClassId::D1r)?.count;
    let c_prime = tally(pair, n, ClassId::Tr)?.count;
    let b = signed_diff(o.parts, d.parts)?;
    let b_prime = signed_diff(d.distinct, o.distinct)?;
    let rm1 = (pair.r() - 1) as i128;
    Ok(BeckReport {
        n,
        o_count: o.count,
        d_count: d.count,
        a,
        b,
        c,
        b_prime,
        c_prime,
        ok_counts: o.count == d.count,
        ok_t1: rm1 * a as i128 == b as i128 && b as i128 == rm1 * c as i128,
        ok_t2: c_prime as i128 == b_prime as i128,
    })
}

/// `m_μ(core)`: how many distinct exponents `t` make `r^t·core` a part of `μ`.
pub fn distinct_core_multiplicity(pair: &EulerPair, mu: &Partition, core: u64) -> Result<u64> {
    if !pair.in_s2(core) {
        return Err(Error::NotInS2(core));
    }
    let mut count = 0;
    for &(v, _) in mu.runs() {
        if pair.decompose(v)?.core == core {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::PairSpec;

    fn pair(s: &str) -> EulerPair {
        s.parse::<PairSpec>().unwrap().build().unwrap()
    }

    fn names(ps: &[Partition]) -> Vec<String> {
        ps.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn example_classes_at_seven() {
        let p = pair("example-odd-mod6");
        assert_eq!(names(&enumerate_class(&p, 7, ClassId::Or).unwrap()), ["7", "5,1^2", "1^7"]);
        assert_eq!(names(&enumerate_class(&p, 7, ClassId::Dr).unwrap()), ["7", "5,1^2", "3^2,1"]);
        assert_eq!(names(&enumerate_class(&p, 7, ClassId::O1r).unwrap()), ["3^2,1", "3,1^4"]);
        assert_eq!(names(&enumerate_class(&p, 7, ClassId::D1r).unwrap()), ["3,1^4", "1^7"]);
        assert_eq!(names(&enumerate_class(&p, 7, ClassId::Tr).unwrap()), ["3,1^4"]);
    }

    #[test]
    fn family_vii_r4_classes_at_seven() {
        let p = pair("family-vii(4)");
        assert_eq!(
            names(&enumerate_class(&p, 7, ClassId::D1r).unwrap()),
            ["3,1^4", "2,1^5", "1^7"]
        );
        assert_eq!(
            names(&enumerate_class(&p, 7, ClassId::O1r).unwrap()),
            ["4,3", "4,2,1", "4,1^3"]
        );
        assert_eq!(names(&enumerate_class(&p, 7, ClassId::Tr).unwrap()), ["2,1^5", "1^7"]);
        let o = enumerate_class(&p, 7, ClassId::Or).unwrap();
        let d = enumerate_class(&p, 7, ClassId::Dr).unwrap();
        assert_eq!(o.len(), 10);
        assert_eq!(d.len(), 10);
        assert_eq!(o.iter().map(Partition::len).sum::<u64>(), 40);
        assert_eq!(d.iter().map(Partition::len).sum::<u64>(), 31);
        assert_eq!(o.iter().map(Partition::distinct_len).sum::<u64>(), 19);
        assert_eq!(d.iter().map(Partition::distinct_len).sum::<u64>(), 21);
    }

    #[test]
    fn beck_reports_match_worked_examples() {
        let p = pair("example-odd-mod6");
        let r7 = beck_statistics(&p, 7).unwrap();
        assert_eq!((r7.a, r7.c, r7.b, r7.b_prime, r7.c_prime), (2, 2, 4, 1, 1));
        assert!(r7.ok_t1 && r7.ok_t2 && r7.ok_counts);
        assert_eq!(beck_statistics(&p, 11).unwrap().b, 14);

        let q = pair("family-vii(4)");
        let r = beck_statistics(&q, 7).unwrap();
        assert_eq!((r.a, r.c, r.b, r.b_prime, r.c_prime), (3, 3, 9, 2, 2));
    }

    #[test]
    fn zero_has_only_the_empty_partition() {
        let p = pair("classical");
        let r = beck_statistics(&p, 0).unwrap();
        assert_eq!((r.o_count, r.d_count, r.a, r.b, r.c), (1, 1, 0, 0, 0));
    }

    #[test]
    fn invalid_pair_is_rejected() {
        let p = pair("custom(modulus=4,residues=1 2,r=2)");
        assert!(matches!(
            enumerate_class(&p, 10, ClassId::Dr),
            Err(Error::InvalidPair(_))
        ));
        // Below the first violation the pair is still usable.
        assert!(enumerate_class(&p, 3, ClassId::Dr).is_ok());
    }

    #[test]
    fn class_members_satisfy_membership() {
        for spec in ["classical", "schur", "family-vii(4)", "family-v(3)"] {
            let p = pair(spec);
            for n in 0..=18 {
                for cls in ClassId::ALL {
                    let all = enumerate_class(&p, n, cls).unwrap();
                    for w in all.windows(2) {
                        assert!(w[0] > w[1]);
                    }
                    for q in &all {
                        assert_eq!(q.size(), n);
                        assert!(in_class(&p, q, cls), "{spec} {cls} {q}");
                    }
                }
            }
        }
    }

    #[test]
    fn t_is_a_subset_of_d1r() {
        let p = pair("classical(r=3)");
        for n in 0..=20 {
            let d1 = enumerate_class(&p, n, ClassId::D1r).unwrap();
            for t in enumerate_class(&p, n, ClassId::Tr).unwrap() {
                assert!(d1.binary_search_by(|x| t.cmp(x)).is_ok());
            }
        }
    }

    #[test]
    fn core_multiplicity() {
        let p = pair("example-odd-mod6");
        let mu: Partition = "9,1,1".parse().unwrap();
        assert_eq!(distinct_core_multiplicity(&p, &mu, 1).unwrap(), 2);
        assert_eq!(distinct_core_multiplicity(&p, &mu, 5).unwrap(), 0);
        let mu: Partition = "5,3,3".parse().unwrap();
        assert_eq!(distinct_core_multiplicity(&p, &mu, 5).unwrap(), 1);
        assert_eq!(distinct_core_multiplicity(&p, &mu, 1).unwrap(), 1);
        assert_eq!(distinct_core_multiplicity(&p, &mu, 3), Err(Error::NotInS2(3)));
    }

    #[test]
    fn class_ids_parse() {
        assert_eq!("O_1r".parse::<ClassId>().unwrap(), ClassId::O1r);
        assert_eq!("d1r".parse::<ClassId>().unwrap(), ClassId::D1r);
        assert_eq!("T_r".parse::<ClassId>().unwrap(), ClassId::Tr);
        assert!("X".parse::<ClassId>().is_err());
    }
}
