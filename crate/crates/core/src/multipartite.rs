//! Partitions of multipartite numbers (vector partitions).
//!
//! A multipart is an `s`-tuple of non-negative integers, not all zero, whose
//! positive entries lie in `S1`. It is primitive when some entry lies in
//! `S2`. Multipartitions are kept in non-increasing lexicographic order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{parse_err, Error, Result};
use crate::euler_pair::EulerPair;
use crate::partition::parse_u64;

/// An `s`-tuple of non-negative integers with at least one positive entry.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultipartiteNumber(Vec<u64>);

impl MultipartiteNumber {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.iter().all(|&e| e == 0) {
            return Err(parse_err("multipartite number", "needs a positive entry"));
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    /// Sum of the entries.
    pub fn weight(&self) -> u64 {
        self.0.iter().sum()
    }

    fn scaled(&self, k: u64) -> Result<Self> {
        let entries = self
            .0
            .iter()
            .map(|&e| e.checked_mul(k).ok_or(Error::Overflow("multipart entry")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self(entries))
    }

    fn fits_in(&self, room: &[u64], copies: u64) -> bool {
        self.0
            .iter()
            .zip(room)
            .all(|(&e, &r)| e.checked_mul(copies).is_some_and(|x| x <= r))
    }
}

impl fmt::Display for MultipartiteNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for MultipartiteNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for MultipartiteNumber {
    type Err = Error;

    /// `7,4` or `(7,4)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        let entries = s
            .split(',')
            .map(|t| parse_u64("entry", t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

impl Serialize for MultipartiteNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultipartiteNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u64>::deserialize(deserializer)?;
        Self::new(v).map_err(serde::de::Error::custom)
    }
}

/// A multiset of multiparts of a common dimension, stored as runs in
/// strictly decreasing lexicographic order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Multipartition {
    runs: Vec<(MultipartiteNumber, u64)>,
}

impl Multipartition {
    pub fn from_runs(runs: impl IntoIterator<Item = (MultipartiteNumber, u64)>) -> Result<Self> {
        let mut counts: BTreeMap<MultipartiteNumber, u64> = BTreeMap::new();
        let mut dim = None;
        for (v, m) in runs {
            if *dim.get_or_insert(v.dimension()) != v.dimension() {
                return Err(parse_err("multipartition", "multiparts of different dimensions"));
            }
            if m > 0 {
                let slot = counts.entry(v).or_insert(0);
                *slot = slot.checked_add(m).ok_or(Error::Overflow("multipart multiplicity"))?;
            }
        }
        Ok(Self {
            runs: counts.into_iter().rev().collect(),
        })
    }

    pub fn from_parts(parts: impl IntoIterator<Item = MultipartiteNumber>) -> Result<Self> {
        Self::from_runs(parts.into_iter().map(|v| (v, 1)))
    }

    pub fn runs(&self) -> &[(MultipartiteNumber, u64)] {
        &self.runs
    }

    /// Number of multiparts, with multiplicity.
    pub fn len(&self) -> u64 {
        self.runs.iter().map(|(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn distinct_len(&self) -> u64 {
        self.runs.len() as u64
    }

    /// Componentwise sum of all multiparts (empty for the empty multipartition).
    pub fn total(&self) -> Vec<u64> {
        let mut out: Vec<u64> = Vec::new();
        for (v, m) in &self.runs {
            out.resize(v.dimension(), 0);
            for (slot, &e) in out.iter_mut().zip(v.entries()) {
                *slot += e * m;
            }
        }
        out
    }

    /// Every multipart, largest first.
    pub fn parts(&self) -> impl Iterator<Item = &MultipartiteNumber> + '_ {
        self.runs
            .iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v, *m as usize))
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("()");
        }
        for (i, (v, m)) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if *m == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multipartition({self})")
    }
}

impl FromStr for Multipartition {
    type Err = Error;

    /// `(5,1)^3,(7,0)`, or a JSON array of tuples.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('[') {
            let parts: Vec<MultipartiteNumber> =
                serde_json::from_str(s).map_err(|e| parse_err("multipartition", e.to_string()))?;
            return Self::from_parts(parts);
        }
        if s.is_empty() || s == "()" {
            return Ok(Self::default());
        }
        let mut runs = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| parse_err("multipartition", format!("expected `(` at {rest:?}")))?;
            let (inner, after) = open
                .split_once(')')
                .ok_or_else(|| parse_err("multipartition", "unclosed `(`"))?;
            let v: MultipartiteNumber = inner.parse()?;
            let (mult, after) = match after.strip_prefix('^') {
                Some(t) => {
                    let end = t.find(',').unwrap_or(t.len());
                    (parse_u64("multiplicity", &t[..end])?, &t[end..])
                }
                None => (1, after),
            };
            runs.push((v, mult));
            rest = after.trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        Self::from_runs(runs)
    }
}

impl Serialize for Multipartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.parts())
    }
}

impl<'de> Deserialize<'de> for Multipartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<MultipartiteNumber>::deserialize(deserializer)?;
        Self::from_parts(parts).map_err(serde::de::Error::custom)
    }
}

fn check_entries(pair: &EulerPair, v: &MultipartiteNumber) -> Result<()> {
    match v.entries().iter().find(|&&e| e > 0 && !pair.in_s1(e)) {
        Some(&e) => Err(Error::NotInS1(e)),
        None => Ok(()),
    }
}

/// Whether some entry of `v` lies in `S2`. Positive entries must be in `S1`.
pub fn is_primitive_multipart(pair: &EulerPair, v: &MultipartiteNumber) -> Result<bool> {
    check_entries(pair, v)?;
    Ok(v.entries().iter().any(|&e| e > 0 && pair.in_s2(e)))
}

/// All admissible multiparts fitting inside `target`, lexicographically
/// decreasing.
fn candidates(pair: &EulerPair, target: &[u64]) -> Vec<MultipartiteNumber> {
    let choices: Vec<Vec<u64>> = target
        .iter()
        .map(|&t| {
            let mut c = vec![0];
            c.extend(pair.s1_up_to(t));
            c
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(target.len());
    fn rec(choices: &[Vec<u64>], cur: &mut Vec<u64>, out: &mut Vec<MultipartiteNumber>) {
        let i = cur.len();
        if i == choices.len() {
            if cur.iter().any(|&e| e > 0) {
                out.push(MultipartiteNumber(cur.clone()));
            }
            return;
        }
        for &e in choices[i].iter().rev() {
            cur.push(e);
            rec(choices, cur, out);
            cur.pop();
        }
    }
    rec(&choices, &mut cur, &mut out);
    out
}

/// Visit every multipartition of `target` using `cands` (lexicographically
/// decreasing) with multiplicities at most `max_mult`, in lexicographically
/// decreasing order.
fn for_each_multipartition<F: FnMut(&[(MultipartiteNumber, u64)])>(
    target: &[u64],
    cands: &[MultipartiteNumber],
    max_mult: Option<u64>,
    visit: &mut F,
) {
    fn rec<F: FnMut(&[(MultipartiteNumber, u64)])>(
        room: &mut Vec<u64>,
        cands: &[MultipartiteNumber],
        max_mult: Option<u64>,
        acc: &mut Vec<(MultipartiteNumber, u64)>,
        visit: &mut F,
    ) {
        if room.iter().all(|&x| x == 0) {
            visit(acc);
            return;
        }
        let Some((v, rest)) = cands.split_first() else {
            return;
        };
        let mut top = v
            .entries()
            .iter()
            .zip(room.iter())
            .filter(|(&e, _)| e > 0)
            .map(|(&e, &r)| r / e)
            .min()
            .unwrap_or(0);
        if let Some(cap) = max_mult {
            top = top.min(cap);
        }
        for m in (0..=top).rev() {
            if m > 0 {
                for (slot, &e) in room.iter_mut().zip(v.entries()) {
                    *slot -= e * m;
                }
                acc.push((v.clone(), m));
            }
            rec(room, rest, max_mult, acc, visit);
            if m > 0 {
                acc.pop();
                for (slot, &e) in room.iter_mut().zip(v.entries()) {
                    *slot += e * m;
                }
            }
        }
    }
    let mut room = target.to_vec();
    rec(&mut room, cands, max_mult, &mut Vec::new(), visit);
}

fn check_target(pair: &EulerPair, target: &MultipartiteNumber) -> Result<()> {
    let top = target.entries().iter().copied().max().unwrap_or(0);
    pair.ensure_valid(top)
}

/// `VD_r(target)`: entries in `S1`, every multipart repeated at most `r − 1` times.
pub fn enumerate_vd(pair: &EulerPair, target: &MultipartiteNumber) -> Result<Vec<Multipartition>> {
    check_target(pair, target)?;
    let cands = candidates(pair, target.entries());
    let mut out = Vec::new();
    for_each_multipartition(target.entries(), &cands, Some(pair.r() - 1), &mut |runs| {
        out.push(Multipartition { runs: runs.to_vec() })
    });
    Ok(out)
}

/// `VO_r(target)`: every multipart primitive.
pub fn enumerate_vo(pair: &EulerPair, target: &MultipartiteNumber) -> Result<Vec<Multipartition>> {
    check_target(pair, target)?;
    let cands = primitive_candidates(pair, target.entries(), true);
    let mut out = Vec::new();
    for_each_multipartition(target.entries(), &cands, None, &mut |runs| {
        out.push(Multipartition { runs: runs.to_vec() })
    });
    Ok(out)
}

fn primitive_candidates(pair: &EulerPair, target: &[u64], primitive: bool) -> Vec<MultipartiteNumber> {
    candidates(pair, target)
        .into_iter()
        .filter(|v| v.entries().iter().any(|&e| e > 0 && pair.in_s2(e)) == primitive)
        .collect()
}

/// Merge `r` equal multiparts into their vector sum until no multipart is
/// repeated `r` times.
pub fn vglaisher_merge(pair: &EulerPair, eta: &Multipartition) -> Result<Multipartition> {
    let r = pair.r();
    let mut pending: BTreeMap<MultipartiteNumber, u64> = BTreeMap::new();
    for (v, m) in eta.runs() {
        check_entries(pair, v)?;
        pending.insert(v.clone(), *m);
    }
    let mut out = Vec::new();
    // r·v is lexicographically larger than v, so carries always land ahead.
    while let Some((v, m)) = pending.pop_first() {
        if m % r > 0 {
            out.push((v.clone(), m % r));
        }
        if m / r > 0 {
            let slot = pending.entry(v.scaled(r)?).or_insert(0);
            *slot = slot.checked_add(m / r).ok_or(Error::Overflow("multipart multiplicity"))?;
        }
    }
    Multipartition::from_runs(out)
}

/// Smallest exponent of `r` over the positive entries of `v`.
pub fn min_exponent(pair: &EulerPair, v: &MultipartiteNumber) -> Result<u32> {
    let mut k = u32::MAX;
    for &e in v.entries().iter().filter(|&&e| e > 0) {
        k = k.min(pair.decompose(e)?.exponent);
    }
    Ok(k)
}

/// Split each multipart `v` into `r^k` copies of `v / r^k`, where `k` is the
/// smallest exponent of `r` among its entries.
pub fn vglaisher_split(pair: &EulerPair, xi: &Multipartition) -> Result<Multipartition> {
    let mut out = Vec::new();
    for (v, m) in xi.runs() {
        let k = min_exponent(pair, v)?;
        let scale = pair.r_pow(k)?;
        let core = MultipartiteNumber(v.entries().iter().map(|&e| e / scale).collect());
        out.push((core, m.checked_mul(scale).ok_or(Error::Overflow("split multiplicity"))?));
    }
    Multipartition::from_runs(out)
}

/// Counts behind both multipartite Beck identities for one target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VBeckReport {
    pub target: MultipartiteNumber,
    pub vd_count: u64,
    pub vo_count: u64,
    /// Total multiparts over VO minus over VD.
    pub vb: i64,
    /// Total distinct multiparts over VD minus over VO.
    pub vb_prime: i64,
    /// Exactly one multipart repeated at least `r` times, the rest below `r`.
    pub one_repeated: u64,
    /// Exactly one distinct non-primitive multipart, any multiplicity.
    pub one_nonprimitive: u64,
    /// As `one_repeated`, with that multiplicity strictly between `r` and `2r`.
    pub t_analogue: u64,
    pub ok_counts: bool,
    pub ok_i: bool,
    pub ok_ii: bool,
}

/// Enumerate the five multipartite classes for `target` and compare.
pub fn v_beck_statistics(pair: &EulerPair, target: &MultipartiteNumber) -> Result<VBeckReport> {
    check_target(pair, target)?;
    let r = pair.r();
    let t = target.entries();
    let all = candidates(pair, t);
    let prim = primitive_candidates(pair, t, true);
    let nonprim = primitive_candidates(pair, t, false);

    let (mut vd_count, mut vd_len, mut vd_distinct) = (0u64, 0u64, 0u64);
    for_each_multipartition(t, &all, Some(r - 1), &mut |runs| {
        vd_count += 1;
        vd_len += runs.iter().map(|(_, m)| m).sum::<u64>();
        vd_distinct += runs.len() as u64;
    });
    let (mut vo_count, mut vo_len, mut vo_distinct) = (0u64, 0u64, 0u64);
    for_each_multipartition(t, &prim, None, &mut |runs| {
        vo_count += 1;
        vo_len += runs.iter().map(|(_, m)| m).sum::<u64>();
        vo_distinct += runs.len() as u64;
    });

    let (mut one_repeated, mut t_analogue) = (0u64, 0u64);
    for v in &all {
        let others: Vec<MultipartiteNumber> = all.iter().filter(|u| *u != v).cloned().collect();
        let mut f = r;
        while v.fits_in(t, f) {
            let room: Vec<u64> = t.iter().zip(v.entries()).map(|(&x, &e)| x - e * f).collect();
            let mut n = 0u64;
            for_each_multipartition(&room, &others, Some(r - 1), &mut |_| n += 1);
            one_repeated += n;
            if f > r && f < 2 * r {
                t_analogue += n;
            }
            f += 1;
        }
    }
    let mut one_nonprimitive = 0u64;
    for v in &nonprim {
        let mut f = 1;
        while v.fits_in(t, f) {
            let room: Vec<u64> = t.iter().zip(v.entries()).map(|(&x, &e)| x - e * f).collect();
            for_each_multipartition(&room, &prim, None, &mut |_| one_nonprimitive += 1);
            f += 1;
        }
    }

    let vb = vo_len as i64 - vd_len as i64;
    let vb_prime = vd_distinct as i64 - vo_distinct as i64;
    let k = (r - 1) as i64;
    Ok(VBeckReport {
        target: target.clone(),
        vd_count,
        vo_count,
        vb,
        vb_prime,
        one_repeated,
        one_nonprimitive,
        t_analogue,
        ok_counts: vd_count == vo_count,
        ok_i: vb == k * one_repeated as i64 && vb == k * one_nonprimitive as i64,
        ok_ii: vb_prime == t_analogue as i64,
    })
}

/// All `s`-dimensional targets with entry sum between 1 and `max_sum`,
/// ordered by sum and then lexicographically decreasing.
pub fn targets(s: usize, max_sum: u64) -> Vec<MultipartiteNumber> {
    fn rec(s: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() + 1 == s {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(s, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if s == 0 {
        return out;
    }
    for total in 1..=max_sum {
        let mut level = Vec::new();
        rec(s, total, &mut Vec::new(), &mut level);
        out.extend(level.into_iter().map(MultipartiteNumber));
    }
    out
}

/// [`v_beck_statistics`] over every target from [`targets`].
pub fn v_sweep(pair: &EulerPair, s: usize, max_sum: u64) -> Result<Vec<VBeckReport>> {
    targets(s, max_sum)
        .iter()
        .map(|t| v_beck_statistics(pair, t))
        .collect()
}
