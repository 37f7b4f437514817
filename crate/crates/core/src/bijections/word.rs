use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{parse_err, Error, Result};

/// A finite word over the digits `0..r`, most significant digit first.
/// Leading zeros are significant: `032` and `32` are different words.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RWord {
    digits: Vec<u32>,
}

impl RWord {
    pub fn new(digits: Vec<u32>) -> Self {
        Self { digits }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn check_radix(&self, r: u64) -> Result<()> {
        match self.digits.iter().find(|&&d| d as u64 >= r) {
            Some(d) => Err(Error::MalformedAnnotation(format!(
                "digit {d} is not valid in base {r}"
            ))),
            None => Ok(()),
        }
    }

    /// Base-`r` value; the empty word is 0.
    pub fn value(&self, r: u64) -> Result<u64> {
        self.check_radix(r)?;
        self.digits.iter().try_fold(0u64, |acc, &d| {
            acc.checked_mul(r)
                .and_then(|x| x.checked_add(d as u64))
                .ok_or(Error::Overflow("word value"))
        })
    }

    /// Base-`r` digits of `value`, left-padded with zeros to exactly `len`.
    pub fn from_value_padded(value: u64, r: u64, len: usize) -> Result<Self> {
        let mut digits = vec![0u32; len];
        let mut v = value;
        for slot in digits.iter_mut().rev() {
            *slot = (v % r) as u32;
            v /= r;
        }
        if v != 0 {
            return Err(Error::Invariant(format!(
                "{value} needs more than {len} base-{r} digits"
            )));
        }
        Ok(Self { digits })
    }

    /// Base-`r` digits of `value` without padding (`0` gives the empty word).
    pub fn from_value(value: u64, r: u64) -> Self {
        let mut digits = Vec::new();
        let mut v = value;
        while v > 0 {
            digits.push((v % r) as u32);
            v /= r;
        }
        digits.reverse();
        Self { digits }
    }

    /// The word with its first letter removed.
    pub fn without_leading(&self) -> Self {
        Self {
            digits: self.digits.iter().skip(1).copied().collect(),
        }
    }
}

impl fmt::Display for RWord {
    /// Digits below 36 print as `0-9a-z`; larger alphabets use `.` separators.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.iter().all(|&d| d < 36) {
            for &d in &self.digits {
                write!(f, "{}", char::from_digit(d, 36).expect("digit < 36"))?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.digits.iter().map(u32::to_string).collect();
            f.write_str(&parts.join("."))?;
            // a lone wide digit still needs a separator to be read back
            if parts.len() == 1 {
                f.write_str(".")?;
            }
            Ok(())
        }
    }
}

impl fmt::Debug for RWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RWord({self})")
    }
}

impl FromStr for RWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Self::empty());
        }
        let digits = if s.contains('.') {
            s.split('.')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|e| parse_err("word", e.to_string())))
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(36)
                        .ok_or_else(|| parse_err("word", format!("bad digit {c:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Self { digits })
    }
}

impl Serialize for RWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_and_padding() {
        let w: RWord = "0120".parse().unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.value(3).unwrap(), 15);
        assert_eq!(RWord::from_value_padded(15, 3, 4).unwrap(), w);
        assert_eq!(RWord::from_value_padded(2, 3, 2).unwrap().to_string(), "02");
        assert!(RWord::from_value_padded(9, 3, 2).is_err());
        assert_eq!(RWord::empty().value(5).unwrap(), 0);
        assert!("3".parse::<RWord>().unwrap().value(3).is_err());
    }

    #[test]
    fn leading_zeros_are_significant() {
        let a: RWord = "032".parse().unwrap();
        let b: RWord = "32".parse().unwrap();
        assert_ne!(a, b);
        assert_eq!(a.value(5).unwrap(), 17);
        assert_eq!(b.value(5).unwrap(), 17);
    }

    #[test]
    fn unpadded_digits() {
        assert_eq!(RWord::from_value(5, 3).to_string(), "12");
        assert_eq!(RWord::from_value(11, 3).to_string(), "102");
        assert_eq!(RWord::from_value(11, 3).without_leading().to_string(), "02");
        assert!(RWord::from_value(0, 3).is_empty());
    }

    #[test]
    fn wide_alphabets_round_trip() {
        let w = RWord::new(vec![40, 0, 7]);
        assert_eq!(w.to_string(), "40.0.7");
        assert_eq!(w.to_string().parse::<RWord>().unwrap(), w);
        let lone = RWord::new(vec![40]);
        assert_eq!(lone.to_string().parse::<RWord>().unwrap(), lone);
    }
}
