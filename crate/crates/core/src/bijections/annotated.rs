//! Partitions carrying one annotated part: a mark with an integer index, a
//! decoration with an r-word, or an overline.
//!
//! Text forms list the parts largest first and annotate one specific copy:
//! `1215,135_{02},135,51` (decorated), `27_{t=11},9` (marked) and
//! `10935,10935~,45` (overlined). Input may abbreviate runs as `v^m`; output
//! is always flat. The annotated copy's occurrence is its 1-based position
//! among equal parts in the listing.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::RWord;
use crate::error::{parse_err, Error, Result};
use crate::euler_pair::{EulerPair, PartDecomposition};
use crate::partition::{parse_run, strip_partition_text, PartCounts, Partition};
use crate::stats::{ensure_in_class, ClassId};

/// Shared checks: `base ∈ D_r`, `value = r^k·core` with `k ≥ 1` present in
/// `base`, and `1 ≤ occurrence ≤ multiplicity`.
fn check_annotated(
    pair: &EulerPair,
    base: &Partition,
    value: u64,
    occurrence: u64,
) -> Result<PartDecomposition> {
    ensure_in_class(pair, base, ClassId::Dr)?;
    let dec = pair.decompose(value)?;
    if dec.exponent == 0 {
        return Err(Error::MalformedAnnotation(format!(
            "annotated part {value} is primitive"
        )));
    }
    let mult = base.multiplicity_of(value);
    if occurrence == 0 || occurrence > mult {
        return Err(Error::MalformedAnnotation(format!(
            "occurrence {occurrence} of {value}, which appears {mult} time(s)"
        )));
    }
    Ok(dec)
}

/// A `D_r` partition with one copy of a non-primitive part `r^k·core`
/// marked by an index `1 ≤ t ≤ r^k − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MarkedPartition {
    base: Partition,
    value: u64,
    occurrence: u64,
    index: u64,
}

impl MarkedPartition {
    pub fn new(pair: &EulerPair, base: Partition, value: u64, occurrence: u64, index: u64) -> Result<Self> {
        let dec = check_annotated(pair, &base, value, occurrence)?;
        let limit = pair.r_pow(dec.exponent)?;
        if index == 0 || index >= limit {
            return Err(Error::MalformedAnnotation(format!(
                "index {index} outside 1..={}",
                limit - 1
            )));
        }
        Ok(Self {
            base,
            value,
            occurrence,
            index,
        })
    }

    pub fn base(&self) -> &Partition {
        &self.base
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn occurrence(&self) -> u64 {
        self.occurrence
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn parse(pair: &EulerPair, s: &str) -> Result<Self> {
        let (base, a) = parse_annotated(s)?;
        match a.tag {
            Tag::Index(t) => Self::new(pair, base, a.value, a.occurrence, t),
            _ => Err(parse_err("marked partition", "expected a `v_{t=..}` mark")),
        }
    }

    pub fn from_json(pair: &EulerPair, s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            base: Partition,
            value: u64,
            occurrence: u64,
            index: u64,
        }
        let raw: Raw = serde_json::from_str(s).map_err(|e| parse_err("marked partition", e.to_string()))?;
        Self::new(pair, raw.base, raw.value, raw.occurrence, raw.index)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("marked partition serializes")
    }
}

impl fmt::Display for MarkedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = format!("_{{t={}}}", self.index);
        write_annotated(f, &self.base, self.value, self.occurrence, &tag)
    }
}

/// A `D_r` partition with one copy of a non-primitive part `r^k·core`
/// decorated by an r-word of length at most `k − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DecoratedPartition {
    base: Partition,
    value: u64,
    occurrence: u64,
    word: RWord,
}

impl DecoratedPartition {
    pub fn new(pair: &EulerPair, base: Partition, value: u64, occurrence: u64, word: RWord) -> Result<Self> {
        let dec = check_annotated(pair, &base, value, occurrence)?;
        word.check_radix(pair.r())?;
        if word.len() >= dec.exponent as usize {
            return Err(Error::MalformedAnnotation(format!(
                "word {word:?} is too long for {value} = {}^{}·{}",
                pair.r(),
                dec.exponent,
                dec.core
            )));
        }
        Ok(Self {
            base,
            value,
            occurrence,
            word,
        })
    }

    pub fn base(&self) -> &Partition {
        &self.base
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn occurrence(&self) -> u64 {
        self.occurrence
    }

    pub fn word(&self) -> &RWord {
        &self.word
    }

    pub fn parse(pair: &EulerPair, s: &str) -> Result<Self> {
        let (base, a) = parse_annotated(s)?;
        match a.tag {
            Tag::Word(w) => Self::new(pair, base, a.value, a.occurrence, w),
            _ => Err(parse_err("decorated partition", "expected a `v_{word}` decoration")),
        }
    }

    pub fn from_json(pair: &EulerPair, s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            base: Partition,
            value: u64,
            occurrence: u64,
            word: RWord,
        }
        let raw: Raw =
            serde_json::from_str(s).map_err(|e| parse_err("decorated partition", e.to_string()))?;
        Self::new(pair, raw.base, raw.value, raw.occurrence, raw.word)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decorated partition serializes")
    }
}

impl fmt::Display for DecoratedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = format!("_{{{}}}", self.word);
        write_annotated(f, &self.base, self.value, self.occurrence, &tag)
    }
}

/// A `D_r` partition with one part `r^s·core` (`s ≥ 1`) overlined, where
/// some part `r^t·core` with `t < s` is also present. The overlined copy
/// counts toward the multiplicity bound and is taken to be the last one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Overpartition {
    base: Partition,
    value: u64,
}

impl Overpartition {
    pub fn new(pair: &EulerPair, base: Partition, value: u64) -> Result<Self> {
        let mult = base.multiplicity_of(value);
        let dec = check_annotated(pair, &base, value, mult.max(1))?;
        if smaller_same_core(pair, &base, dec)?.is_none() {
            return Err(Error::MalformedAnnotation(format!(
                "no part {}^t·{} with t < {} to justify overlining {value}",
                pair.r(),
                dec.core,
                dec.exponent
            )));
        }
        Ok(Self { base, value })
    }

    pub fn base(&self) -> &Partition {
        &self.base
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Position of the overlined copy among equal parts (always the last).
    pub fn occurrence(&self) -> u64 {
        self.base.multiplicity_of(self.value)
    }

    /// Parse `v~` anywhere among equal parts; the overline is normalised to
    /// the last copy.
    pub fn parse(pair: &EulerPair, s: &str) -> Result<Self> {
        let (base, a) = parse_annotated(s)?;
        match a.tag {
            Tag::Overline => Self::new(pair, base, a.value),
            _ => Err(parse_err("overpartition", "expected a `v~` overline")),
        }
    }

    pub fn from_json(pair: &EulerPair, s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            base: Partition,
            value: u64,
        }
        let raw: Raw = serde_json::from_str(s).map_err(|e| parse_err("overpartition", e.to_string()))?;
        Self::new(pair, raw.base, raw.value)
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({
            "base": self.base,
            "value": self.value,
            "occurrence": self.occurrence(),
            "overline": true,
        })
        .to_string()
    }
}

impl fmt::Display for Overpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_annotated(f, &self.base, self.value, self.occurrence(), "~")
    }
}

/// Largest exponent `t < dec.exponent` with `r^t·core` a part of `base`.
pub(crate) fn smaller_same_core(
    pair: &EulerPair,
    base: &Partition,
    dec: PartDecomposition,
) -> Result<Option<u32>> {
    for t in (0..dec.exponent).rev() {
        if base.contains(pair.compose(dec.core, t)?) {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Flat listing; bases are in `D_r`, so no value repeats more than `r − 1`
/// times.
fn write_annotated(
    f: &mut fmt::Formatter<'_>,
    base: &Partition,
    value: u64,
    occurrence: u64,
    tag: &str,
) -> fmt::Result {
    let mut first = true;
    for &(v, m) in base.runs() {
        for i in 1..=m {
            if !std::mem::take(&mut first) {
                f.write_str(",")?;
            }
            if v == value && i == occurrence {
                write!(f, "{v}{tag}")?;
            } else {
                write!(f, "{v}")?;
            }
        }
    }
    Ok(())
}

enum Tag {
    Word(RWord),
    Index(u64),
    Overline,
}

struct Annotation {
    value: u64,
    occurrence: u64,
    tag: Tag,
}

fn parse_annotated(s: &str) -> Result<(Partition, Annotation)> {
    let body = strip_partition_text(s);
    let tokens: Vec<&str> = body.split(',').map(str::trim).collect();
    let mut counts = PartCounts::new();
    let mut found: Option<(usize, u64, Tag)> = None;
    for (i, token) in tokens.iter().enumerate() {
        let (value, tag) = if let Some(v) = token.strip_suffix('~') {
            (v, Some(Tag::Overline))
        } else if let Some((v, rest)) = token.split_once('_') {
            let inner = rest
                .strip_prefix('{')
                .and_then(|t| t.strip_suffix('}'))
                .ok_or_else(|| parse_err("annotation", format!("expected `_{{..}}` in {token:?}")))?
                .trim();
            let tag = match inner.strip_prefix("t=") {
                Some(t) => Tag::Index(
                    t.trim()
                        .parse()
                        .map_err(|e| parse_err("mark index", format!("{t:?}: {e}")))?,
                ),
                None => Tag::Word(inner.parse()?),
            };
            (v, Some(tag))
        } else {
            let (v, m) = parse_run(token)?;
            if v == 0 {
                return Err(Error::ZeroPart);
            }
            if m == 0 {
                return Err(parse_err("partition", format!("zero multiplicity in {token:?}")));
            }
            counts.add(v, m)?;
            continue;
        };
        let value = value
            .trim()
            .parse::<u64>()
            .map_err(|e| parse_err("part", format!("{value:?}: {e}")))?;
        if value == 0 {
            return Err(Error::ZeroPart);
        }
        if found.is_some() {
            return Err(parse_err("annotation", "more than one annotated part"));
        }
        counts.add(value, 1)?;
        found = Some((i, value, tag.expect("annotated token")));
    }
    let (pos, value, tag) = found.ok_or_else(|| parse_err("annotation", "no annotated part"))?;
    let mut occurrence = 1;
    for token in &tokens[..pos] {
        let (v, m) = parse_run(token)?;
        if v == value {
            occurrence += m;
        }
    }
    let base = counts.into_partition()?;
    Ok((
        base,
        Annotation {
            value,
            occurrence,
            tag,
        },
    ))
}
