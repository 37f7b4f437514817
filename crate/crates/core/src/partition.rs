//! Integer partitions in run-length form, plus restricted enumeration.
//!
//! A [`Partition`] stores `(value, multiplicity)` runs with strictly
//! decreasing values. Partitions arising from Glaisher-type maps routinely
//! carry parts like `45^320`, so nothing here ever expands runs unless asked.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{parse_err, Error, Result};

/// A finite multiset of positive integers in canonical non-increasing order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Partition {
    runs: Vec<(u64, u64)>,
    size: u64,
    len: u64,
}

impl Partition {
    /// The unique partition of 0.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Build from arbitrary `(value, multiplicity)` pairs. Equal values are
    /// merged, zero multiplicities dropped.
    pub fn from_runs<I: IntoIterator<Item = (u64, u64)>>(runs: I) -> Result<Self> {
        let mut counts = PartCounts::new();
        for (v, m) in runs {
            counts.add(v, m)?;
        }
        counts.into_partition()
    }

    /// Build from a flat list of parts in any order.
    pub fn from_parts(parts: &[u64]) -> Result<Self> {
        Self::from_runs(parts.iter().map(|&p| (p, 1)))
    }

    /// Runs sorted by strictly decreasing value.
    pub fn runs(&self) -> &[(u64, u64)] {
        &self.runs
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// Number of parts, counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.len
    }

    /// Number of distinct part values.
    pub fn distinct_len(&self) -> u64 {
        self.runs.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn multiplicity_of(&self, value: u64) -> u64 {
        self.runs
            .binary_search_by(|&(v, _)| value.cmp(&v))
            .map(|i| self.runs[i].1)
            .unwrap_or(0)
    }

    pub fn contains(&self, value: u64) -> bool {
        self.multiplicity_of(value) > 0
    }

    /// All parts, largest first, expanded by multiplicity.
    pub fn parts(&self) -> impl Iterator<Item = u64> + '_ {
        self.runs
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat_n(v, m as usize))
    }

    /// Multiset sum of the two partitions.
    pub fn union(&self, other: &Partition) -> Result<Partition> {
        let mut counts = PartCounts::new();
        for &(v, m) in self.runs.iter().chain(other.runs.iter()) {
            counts.add(v, m)?;
        }
        counts.into_partition()
    }

    /// Largest multiplicity over all parts (0 for the empty partition).
    pub fn max_multiplicity(&self) -> u64 {
        self.runs.iter().map(|&(_, m)| m).max().unwrap_or(0)
    }

    /// `[[value, multiplicity], ...]` as a JSON string.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("partition serializes")
    }
}

/// Accumulator for part counts with overflow checking.
#[derive(Debug, Default, Clone)]
pub struct PartCounts {
    counts: BTreeMap<u64, u64>,
}

impl PartCounts {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: u64, mult: u64) -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        if value == 0 {
            return Err(Error::ZeroPart);
        }
        let slot = self.counts.entry(value).or_insert(0);
        *slot = slot
            .checked_add(mult)
            .ok_or(Error::Overflow("part multiplicity"))?;
        Ok(())
    }

    pub fn add_partition(&mut self, p: &Partition) -> Result<()> {
        for &(v, m) in p.runs() {
            self.add(v, m)?;
        }
        Ok(())
    }

    /// Remove `mult` copies of `value`; fails if fewer are present.
    pub fn remove(&mut self, value: u64, mult: u64) -> Result<()> {
        let have = self.counts.get(&value).copied().unwrap_or(0);
        if have < mult {
            return Err(Error::Invariant(format!(
                "cannot remove {mult} copies of {value}, only {have} present"
            )));
        }
        if have == mult {
            self.counts.remove(&value);
        } else {
            self.counts.insert(value, have - mult);
        }
        Ok(())
    }

    pub fn into_partition(self) -> Result<Partition> {
        let mut size: u64 = 0;
        let mut len: u64 = 0;
        let mut runs = Vec::with_capacity(self.counts.len());
        for (v, m) in self.counts.into_iter().rev() {
            let w = v.checked_mul(m).ok_or(Error::Overflow("partition size"))?;
            size = size.checked_add(w).ok_or(Error::Overflow("partition size"))?;
            len = len.checked_add(m).ok_or(Error::Overflow("partition length"))?;
            runs.push((v, m));
        }
        Ok(Partition { runs, size, len })
    }
}

/// Flat lexicographic comparison of the non-increasing part sequences.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        let (mut left_a, mut left_b) = (0u64, 0u64);
        loop {
            if left_a == 0 && i < self.runs.len() {
                left_a = self.runs[i].1;
            }
            if left_b == 0 && j < other.runs.len() {
                left_b = other.runs[j].1;
            }
            match (left_a > 0, left_b > 0) {
                (false, false) => return Ordering::Equal,
                (false, true) => return Ordering::Less,
                (true, false) => return Ordering::Greater,
                (true, true) => {}
            }
            let (va, vb) = (self.runs[i].0, other.runs[j].0);
            if va != vb {
                return va.cmp(&vb);
            }
            let step = left_a.min(left_b);
            left_a -= step;
            left_b -= step;
            if left_a == 0 {
                i += 1;
            }
            if left_b == 0 {
                j += 1;
            }
        }
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("()");
        }
        for (i, &(v, m)) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if m == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

/// Strip optional surrounding parentheses and whitespace; `()`, `∅` and the
/// empty string all denote the empty partition.
pub(crate) fn strip_partition_text(s: &str) -> &str {
    let s = s.trim();
    let s = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(s)
        .trim();
    if s == "∅" {
        ""
    } else {
        s
    }
}

pub(crate) fn parse_u64(what: &'static str, s: &str) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .map_err(|e| parse_err(what, format!("{s:?}: {e}")))
}

/// Parse `v` or `v^m`.
pub(crate) fn parse_run(token: &str) -> Result<(u64, u64)> {
    let token = token.trim();
    match token.split_once('^') {
        Some((v, m)) => Ok((parse_u64("part", v)?, parse_u64("multiplicity", m)?)),
        None => Ok((parse_u64("part", token)?, 1)),
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `35,17^3,15^84` (any order, optional parentheses) or a JSON
    /// array of `[value, multiplicity]` pairs.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('[') {
            let runs: Vec<(u64, u64)> =
                serde_json::from_str(t).map_err(|e| parse_err("partition", e.to_string()))?;
            return Partition::from_runs(runs);
        }
        let body = strip_partition_text(t);
        if body.is_empty() {
            return Ok(Partition::empty());
        }
        let mut counts = PartCounts::new();
        for token in body.split(',') {
            let (v, m) = parse_run(token)?;
            if v == 0 {
                return Err(Error::ZeroPart);
            }
            if m == 0 {
                return Err(parse_err("partition", format!("zero multiplicity in {token:?}")));
            }
            counts.add(v, m)?;
        }
        counts.into_partition()
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.runs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let runs = Vec::<(u64, u64)>::deserialize(deserializer)?;
        Partition::from_runs(runs).map_err(serde::de::Error::custom)
    }
}

/// Which part values are allowed and how often each may repeat.
#[derive(Clone)]
pub struct PartConstraint {
    allowed: Arc<dyn Fn(u64) -> bool + Send + Sync>,
    max_multiplicity: Option<u64>,
}

impl PartConstraint {
    pub fn new(allowed: impl Fn(u64) -> bool + Send + Sync + 'static) -> Self {
        Self {
            allowed: Arc::new(allowed),
            max_multiplicity: None,
        }
    }

    /// Every positive integer, unbounded multiplicity.
    pub fn any() -> Self {
        Self::new(|_| true)
    }

    pub fn with_max_multiplicity(mut self, max: u64) -> Self {
        self.max_multiplicity = Some(max);
        self
    }

    pub fn allows(&self, value: u64) -> bool {
        value > 0 && (self.allowed)(value)
    }

    pub fn max_multiplicity(&self) -> Option<u64> {
        self.max_multiplicity
    }

    pub fn admits(&self, p: &Partition) -> bool {
        p.runs().iter().all(|&(v, m)| {
            self.allows(v) && self.max_multiplicity.is_none_or(|max| m <= max)
        })
    }
}

impl fmt::Debug for PartConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PartConstraint")
            .field("max_multiplicity", &self.max_multiplicity)
            .finish_non_exhaustive()
    }
}

/// Visit every partition of `n` admitted by `c`, in lexicographically
/// decreasing order.
pub fn for_each_partition<F: FnMut(&Partition)>(n: u64, c: &PartConstraint, mut visit: F) {
    let values: Vec<u64> = (1..=n).rev().filter(|&v| c.allows(v)).collect();
    for_each_partition_with_values(n, &values, c.max_multiplicity, &mut visit);
}

/// As [`for_each_partition`], but with the admissible values given
/// explicitly. `values` must be strictly decreasing.
pub fn for_each_partition_with_values<F: FnMut(&Partition)>(
    n: u64,
    values: &[u64],
    max_multiplicity: Option<u64>,
    visit: &mut F,
) {
    let mut stack = Vec::new();
    let mut len = 0;
    walk(n, n, values, max_multiplicity, &mut stack, &mut len, visit);
}

fn walk<F: FnMut(&Partition)>(
    n: u64,
    rem: u64,
    values: &[u64],
    max_mult: Option<u64>,
    stack: &mut Vec<(u64, u64)>,
    len: &mut u64,
    visit: &mut F,
) {
    if rem == 0 {
        let p = Partition {
            runs: stack.clone(),
            size: n,
            len: *len,
        };
        visit(&p);
        return;
    }
    for (i, &v) in values.iter().enumerate() {
        if v > rem {
            continue;
        }
        let mut top = rem / v;
        if let Some(max) = max_mult {
            top = top.min(max);
        }
        for m in (1..=top).rev() {
            stack.push((v, m));
            *len += m;
            walk(n, rem - m * v, &values[i + 1..], max_mult, stack, len, visit);
            *len -= m;
            stack.pop();
        }
    }
}

/// All partitions of `n` admitted by `c`, lexicographically decreasing.
pub fn enumerate_partitions(n: u64, c: &PartConstraint) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(n, c, |p| out.push(p.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn union_examples() {
        assert_eq!(
            p("5,5,3,2,2,1").union(&p("7,5,3,3")).unwrap(),
            p("7,5,5,5,3,3,3,2,2,1")
        );
        assert_eq!(p("5,3").union(&Partition::empty()).unwrap(), p("5,3"));
        let merged = p("3,1").union(&p("3,3")).unwrap();
        assert_eq!(merged.runs(), &[(3, 3), (1, 1)]);
        assert_eq!(merged.to_string(), "3^3,1");
    }

    #[test]
    fn text_forms_normalize() {
        let a = p("35,17^3,15^84,5^51,1^3");
        assert_eq!(a.size(), 35 + 51 + 15 * 84 + 5 * 51 + 3);
        assert_eq!(a.size(), 1604);
        assert_eq!(a.len(), 1 + 3 + 84 + 51 + 3);
        assert_eq!(a.distinct_len(), 5);
        assert_eq!(p("(1,17,17,35,17,1,1,15^84,5^51)"), a);
        assert_eq!(p("[[35,1],[17,3],[15,84],[5,51],[1,3]]"), a);
        assert_eq!(a.to_json(), "[[35,1],[17,3],[15,84],[5,51],[1,3]]");
        assert_eq!(p(""), Partition::empty());
        assert_eq!(p("∅"), Partition::empty());
        assert_eq!(Partition::empty().to_string(), "()");
    }

    #[test]
    fn bad_text_is_rejected() {
        assert!("3,x".parse::<Partition>().is_err());
        assert_eq!("3,0".parse::<Partition>(), Err(Error::ZeroPart));
        assert!("3^0".parse::<Partition>().is_err());
        assert!(format!("{},{}", u64::MAX, 1).parse::<Partition>().is_err());
    }

    #[test]
    fn multiplicity_lookup() {
        let a = p("35,17^3,15^84,5^51,1^3");
        assert_eq!(a.multiplicity_of(15), 84);
        assert_eq!(a.multiplicity_of(16), 0);
        let b = p("32805,3645^2,1215,135^2,45^320,25,9,3");
        assert_eq!(b.multiplicity_of(45), 320);
        assert_eq!(b.size(), 56017);
    }

    #[test]
    fn overflow_is_an_error() {
        let half = u64::MAX / 2 + 1;
        assert_eq!(
            Partition::from_runs([(half, 2)]),
            Err(Error::Overflow("partition size"))
        );
        assert!(Partition::from_runs([(half, 1)])
            .unwrap()
            .union(&Partition::from_runs([(half, 1)]).unwrap())
            .is_err());
    }

    #[test]
    fn restricted_enumeration_examples() {
        let odd_mod6 = PartConstraint::new(|v| v % 6 == 1 || v % 6 == 5);
        let got: Vec<String> = enumerate_partitions(7, &odd_mod6)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(got, ["7", "5,1^2", "1^7"]);

        let odd_twice = PartConstraint::new(|v| v % 2 == 1).with_max_multiplicity(2);
        let got: Vec<String> = enumerate_partitions(7, &odd_twice)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(got, ["7", "5,1^2", "3^2,1"]);

        assert_eq!(
            enumerate_partitions(0, &odd_twice),
            vec![Partition::empty()]
        );
    }

    #[test]
    fn unrestricted_counts() {
        let counts: Vec<usize> = (0..10)
            .map(|n| enumerate_partitions(n, &PartConstraint::any()).len())
            .collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn enumeration_is_strictly_decreasing_and_admitted() {
        let c = PartConstraint::new(|v| v % 3 != 0).with_max_multiplicity(2);
        for n in 0..20 {
            let all = enumerate_partitions(n, &c);
            for w in all.windows(2) {
                assert!(w[0] > w[1], "{} !> {}", w[0], w[1]);
            }
            for q in &all {
                assert_eq!(q.size(), n);
                assert!(c.admits(q));
                assert_eq!(q.len(), q.parts().count() as u64);
            }
        }
    }

    #[test]
    fn flat_order_matches_vec_order() {
        let all = enumerate_partitions(9, &PartConstraint::any());
        for a in &all {
            for b in &all {
                let va: Vec<u64> = a.parts().collect();
                let vb: Vec<u64> = b.parts().collect();
                assert_eq!(a.cmp(b), va.cmp(&vb));
            }
        }
    }
}
