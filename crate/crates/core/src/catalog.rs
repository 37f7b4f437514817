//! Built-in Euler pair families and the textual/JSON pair selector.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};
use crate::euler_pair::{
    EulerPair, FiniteSet, IntegerSet, Intersection, Naturals, QuadraticForm, QuadraticFormSet,
    QuadraticResidues, ResidueClasses,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// S1 = N, S2 = { m ≢ 0 mod r }.
    Classical,
    /// S1 = { m ≢ 0 mod 3 }, r = 2.
    Schur,
    /// S1 = { m ≡ 2,4,5 mod 6 }, r = 2.
    Gollnitz,
    /// S1 = { x²+2y² }, r = 2.
    QfX2Plus2Y2,
    /// S1 = { x²+xy+y² }, r = 3.
    QfX2PlusXyPlusY2,
    /// S1 = { m ≡ ±r mod r(r+1) }.
    FamilyV,
    /// S1 = { m ≡ ±r, -1 mod r(r+1) }.
    FamilyVi,
    /// S1 = { m ≢ 0 mod r+1 }, r+1 prime.
    FamilyVii,
    /// S1 = quadratic residues mod p, r a residue mod p.
    FamilyViii,
    /// S1 = odd numbers, r = 3.
    ExampleOddMod6,
    /// User supplied residue classes or finite seed set.
    Custom,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Classical,
        Family::Schur,
        Family::Gollnitz,
        Family::QfX2Plus2Y2,
        Family::QfX2PlusXyPlusY2,
        Family::FamilyV,
        Family::FamilyVi,
        Family::FamilyVii,
        Family::FamilyViii,
        Family::ExampleOddMod6,
        Family::Custom,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Family::Classical => "classical",
            Family::Schur => "schur",
            Family::Gollnitz => "gollnitz",
            Family::QfX2Plus2Y2 => "qf-x2+2y2",
            Family::QfX2PlusXyPlusY2 => "qf-x2+xy+y2",
            Family::FamilyV => "family-v",
            Family::FamilyVi => "family-vi",
            Family::FamilyVii => "family-vii",
            Family::FamilyViii => "family-viii",
            Family::ExampleOddMod6 => "example-odd-mod6",
            Family::Custom => "custom",
        }
    }

    /// Order imposed by the family, if it has one.
    pub fn fixed_order(self) -> Option<u64> {
        match self {
            Family::Schur | Family::Gollnitz | Family::QfX2Plus2Y2 => Some(2),
            Family::QfX2PlusXyPlusY2 | Family::ExampleOddMod6 => Some(3),
            _ => None,
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            Family::Classical => "S1 = N; S2 = m ≢ 0 (mod r); r defaults to 2 (Euler)",
            Family::Schur => "S1 = m ≢ 0 (mod 3); S2 = m ≡ 1,5 (mod 6); r = 2",
            Family::Gollnitz => "S1 = m ≡ 2,4,5 (mod 6); S2 = m ≡ 2,5,11 (mod 12); r = 2",
            Family::QfX2Plus2Y2 => "S1 = x²+2y²; S2 = odd members; r = 2",
            Family::QfX2PlusXyPlusY2 => "S1 = x²+xy+y²; S2 = members prime to 3; r = 3",
            Family::FamilyV => "S1 = m ≡ ±r (mod r(r+1)); needs r",
            Family::FamilyVi => "S1 = m ≡ ±r,-1 (mod r(r+1)); needs r",
            Family::FamilyVii => "S1 = m ≢ 0 (mod r+1); needs r with r+1 prime",
            Family::FamilyViii => "S1 = quadratic residues mod p; needs prime p and residue r",
            Family::ExampleOddMod6 => "S1 = odd numbers; S2 = m ≡ ±1 (mod 6); r = 3",
            Family::Custom => "S1 from --modulus/--residues or --values; needs r",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "euler" {
            return Ok(Family::Classical);
        }
        Family::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| parse_err("pair family", format!("unknown family {s:?}")))
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A pair selection: family plus whatever parameters it needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSpec {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residues: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<u64>>,
}

impl PairSpec {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            r: None,
            p: None,
            modulus: None,
            residues: None,
            values: None,
        }
    }

    pub fn with_r(mut self, r: u64) -> Self {
        self.r = Some(r);
        self
    }

    pub fn with_p(mut self, p: u64) -> Self {
        self.p = Some(p);
        self
    }

    /// The pair instances exercised by the full verification sweeps.
    pub fn standard_instances() -> Vec<PairSpec> {
        vec![
            PairSpec::new(Family::Classical).with_r(2),
            PairSpec::new(Family::Schur),
            PairSpec::new(Family::Gollnitz),
            PairSpec::new(Family::QfX2Plus2Y2),
            PairSpec::new(Family::QfX2PlusXyPlusY2),
            PairSpec::new(Family::ExampleOddMod6),
            PairSpec::new(Family::FamilyV).with_r(3),
            PairSpec::new(Family::FamilyVi).with_r(3),
            PairSpec::new(Family::FamilyVii).with_r(2),
            PairSpec::new(Family::FamilyVii).with_r(4),
            PairSpec::new(Family::FamilyViii).with_p(7).with_r(2),
        ]
    }

    fn invalid(&self, reason: impl Into<String>) -> Error {
        Error::InvalidParams {
            family: self.family.id().to_string(),
            reason: reason.into(),
        }
    }

    fn order(&self) -> Result<u64> {
        let r = match (self.family.fixed_order(), self.r) {
            (Some(fixed), Some(r)) if r != fixed => {
                return Err(self.invalid(format!("order is fixed at r={fixed}, got r={r}")))
            }
            (Some(fixed), _) => fixed,
            (None, Some(r)) => r,
            (None, None) if self.family == Family::Classical => 2,
            (None, None) => return Err(self.invalid("missing order r")),
        };
        if r < 2 {
            return Err(self.invalid(format!("order r must be at least 2, got {r}")));
        }
        Ok(r)
    }

    /// Construct the pair. `S2` is derived; the family's printed `S2` is
    /// attached as a closed form for cross-checking.
    pub fn build(&self) -> Result<EulerPair> {
        let r = self.order()?;
        let label = self.to_string();
        let (s1, closed): (Arc<dyn IntegerSet>, Option<Arc<dyn IntegerSet>>) = match self.family {
            Family::Classical => (
                Arc::new(Naturals),
                Some(Arc::new(ResidueClasses::excluding(r, [0])?)),
            ),
            Family::Schur => (
                Arc::new(ResidueClasses::new(3, [1, 2])?),
                Some(Arc::new(ResidueClasses::new(6, [1, 5])?)),
            ),
            Family::Gollnitz => (
                Arc::new(ResidueClasses::new(6, [2, 4, 5])?),
                Some(Arc::new(ResidueClasses::new(12, [2, 5, 11])?)),
            ),
            Family::QfX2Plus2Y2 => (
                Arc::new(QuadraticFormSet::new(QuadraticForm::X2Plus2Y2)),
                Some(Arc::new(Intersection(vec![
                    Arc::new(ResidueClasses::new(2, [1])?),
                    Arc::new(QuadraticFormSet::new(QuadraticForm::X2Plus2Y2)),
                ]))),
            ),
            Family::QfX2PlusXyPlusY2 => (
                Arc::new(QuadraticFormSet::new(QuadraticForm::X2PlusXyPlusY2)),
                Some(Arc::new(Intersection(vec![
                    Arc::new(ResidueClasses::excluding(3, [0])?),
                    Arc::new(QuadraticFormSet::new(QuadraticForm::X2PlusXyPlusY2)),
                ]))),
            ),
            Family::FamilyV => {
                let (m1, m2) = family_moduli(self, r)?;
                let s1 = Arc::new(ResidueClasses::new(m1, [r, m1 - r])?);
                let closed = Intersection(vec![
                    s1.clone(),
                    Arc::new(ResidueClasses::excluding(m2, [r * r, m2 - r * r])?),
                ]);
                (s1, Some(Arc::new(closed)))
            }
            Family::FamilyVi => {
                let (m1, m2) = family_moduli(self, r)?;
                let s1 = Arc::new(ResidueClasses::new(m1, [r, m1 - r, m1 - 1])?);
                let closed = Intersection(vec![
                    s1.clone(),
                    Arc::new(ResidueClasses::excluding(m2, [r * r, m2 - r * r, m2 - r])?),
                ]);
                (s1, Some(Arc::new(closed)))
            }
            Family::FamilyVii => {
                let q = r.checked_add(1).ok_or(Error::Overflow("r+1"))?;
                if !is_prime(q) {
                    return Err(self.invalid(format!("r+1 = {q} must be prime")));
                }
                let m = r.checked_mul(q).ok_or(Error::Overflow("r(r+1)"))?;
                let excluded = (1..=r).flat_map(|t| [(t * r) % m, (t * q) % m]);
                (
                    Arc::new(ResidueClasses::excluding(q, [0])?),
                    Some(Arc::new(ResidueClasses::excluding(m, excluded)?)),
                )
            }
            Family::FamilyViii => {
                let p = self.p.ok_or_else(|| self.invalid("missing prime p"))?;
                if !is_prime(p) {
                    return Err(self.invalid(format!("p = {p} must be prime")));
                }
                let qr = QuadraticResidues::new(p);
                if !qr.is_residue(r) {
                    return Err(self.invalid(format!(
                        "r = {r} must be a nonzero quadratic residue mod {p}"
                    )));
                }
                (
                    Arc::new(qr),
                    Some(Arc::new(Intersection(vec![
                        Arc::new(ResidueClasses::excluding(r, [0])?),
                        Arc::new(qr),
                    ]))),
                )
            }
            Family::ExampleOddMod6 => (
                Arc::new(ResidueClasses::new(2, [1])?),
                Some(Arc::new(ResidueClasses::new(6, [1, 5])?)),
            ),
            Family::Custom => {
                let s1: Arc<dyn IntegerSet> = match (&self.values, self.modulus, &self.residues) {
                    (Some(values), None, None) => Arc::new(FiniteSet::new(values.iter().copied())),
                    (None, Some(m), Some(res)) => Arc::new(ResidueClasses::new(m, res.iter().copied())?),
                    _ => {
                        return Err(self.invalid(
                            "give either values, or modulus together with residues",
                        ))
                    }
                };
                (s1, None)
            }
        };
        let pair = EulerPair::new(r, s1, label)?;
        Ok(match closed {
            Some(c) => pair.with_s2_closed_form(c),
            None => pair,
        })
    }
}

fn family_moduli(spec: &PairSpec, r: u64) -> Result<(u64, u64)> {
    let m1 = r
        .checked_mul(r + 1)
        .ok_or_else(|| spec.invalid("r(r+1) overflows"))?;
    let m2 = m1
        .checked_mul(r)
        .ok_or_else(|| spec.invalid("r²(r+1) overflows"))?;
    Ok((m1, m2))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn join(values: &[u64], sep: &str) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for PairSpec {
    /// Canonical id, e.g. `family-viii(p=7,r=2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut args = Vec::new();
        if let Some(p) = self.p {
            args.push(format!("p={p}"));
        }
        if let Some(m) = self.modulus {
            args.push(format!("modulus={m}"));
        }
        if let Some(res) = &self.residues {
            args.push(format!("residues={}", join(res, " ")));
        }
        if let Some(vs) = &self.values {
            args.push(format!("values={}", join(vs, " ")));
        }
        let r = self.r.or(self.family.fixed_order()).or(match self.family {
            Family::Classical => Some(2),
            _ => None,
        });
        if let Some(r) = r {
            args.push(format!("r={r}"));
        }
        if args.is_empty() || (self.family.fixed_order().is_some() && args.len() == 1) {
            f.write_str(self.family.id())
        } else {
            write!(f, "{}({})", self.family.id(), args.join(","))
        }
    }
}

impl FromStr for PairSpec {
    type Err = Error;

    /// Accepts `schur`, `family-vii(4)`, `family-vii(r=4)`,
    /// `family-viii(7,2)`, `family-viii(p=7,r=2)`,
    /// `custom(modulus=4,residues=1 2,r=2)` and `custom(values=1 2 4,r=2)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = match s.split_once('(') {
            Some((name, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| parse_err("pair", format!("unbalanced parentheses in {s:?}")))?;
                (name.trim(), inner)
            }
            None => (s, ""),
        };
        let family: Family = name.parse()?;
        let mut spec = PairSpec::new(family);
        let mut positional = Vec::new();
        for arg in args.split(',').map(str::trim).filter(|a| !a.is_empty()) {
            match arg.split_once('=') {
                Some((key, value)) => spec.set(key.trim(), value.trim())?,
                None => positional.push(arg),
            }
        }
        let keys: &[&str] = match family {
            Family::FamilyViii => &["p", "r"],
            _ => &["r"],
        };
        if positional.len() > keys.len() {
            return Err(parse_err("pair", format!("too many positional arguments in {s:?}")));
        }
        for (key, value) in keys.iter().zip(positional) {
            spec.set(key, value)?;
        }
        Ok(spec)
    }
}

impl PairSpec {
    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let list = |v: &str| -> Result<Vec<u64>> {
            v.split([' ', '|', ';'])
                .filter(|t| !t.is_empty())
                .map(|t| crate::partition::parse_u64("integer list", t))
                .collect()
        };
        match key {
            "r" => self.r = Some(crate::partition::parse_u64("r", value)?),
            "p" => self.p = Some(crate::partition::parse_u64("p", value)?),
            "modulus" | "m" => self.modulus = Some(crate::partition::parse_u64("modulus", value)?),
            "residues" => self.residues = Some(list(value)?),
            "values" => self.values = Some(list(value)?),
            _ => return Err(parse_err("pair", format!("unknown parameter {key:?}"))),
        }
        Ok(())
    }
}
