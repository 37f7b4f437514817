use std::path::Path;

use anyhow::{bail, Context, Result};
use beck_core::PairSpec;
use clap::Args;
use serde::Deserialize;

use crate::output::Format;

/// Flags that select an Euler pair.
#[derive(Debug, Clone, Default, Args)]
pub struct PairArgs {
    /// Pair id, e.g. `schur`, `family-vii(r=4)`, `family-viii(p=7,r=2)`, `custom`.
    #[arg(long)]
    pub pair: Option<String>,
    /// Order r (overrides the id).
    #[arg(long = "r", value_name = "R")]
    pub r: Option<u64>,
    /// Prime modulus for family-viii.
    #[arg(long = "p", value_name = "P")]
    pub p: Option<u64>,
    /// Modulus of a custom residue-class S1.
    #[arg(long)]
    pub modulus: Option<u64>,
    /// Residues of a custom S1, comma separated.
    #[arg(long)]
    pub residues: Option<String>,
    /// Finite seed set of a custom S1, comma separated.
    #[arg(long)]
    pub values: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum PairValue {
    Id(String),
    Spec(PairSpec),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ListValue {
    Ints(Vec<u64>),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RangeValue {
    Single(u64),
    Text(String),
}

/// Contents of a `--config` file: a JSON object whose keys mirror the long
/// flags. Flags given on the command line win.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pair: Option<PairValue>,
    r: Option<u64>,
    p: Option<u64>,
    modulus: Option<u64>,
    residues: Option<ListValue>,
    values: Option<ListValue>,
    pub bound: Option<u64>,
    n: Option<RangeValue>,
    pub degree: Option<usize>,
    pub format: Option<Format>,
    pub s: Option<usize>,
    #[serde(alias = "max_sum")]
    pub max_sum: Option<u64>,
    pub target: Option<String>,
    pub input: Option<String>,
    pub roundtrip: Option<bool>,
    pub show: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn n_range(&self, flag: Option<&str>) -> Result<Option<(u64, u64)>> {
        match (flag, &self.n) {
            (Some(text), _) => parse_range(text).map(Some),
            (None, Some(RangeValue::Single(n))) => Ok(Some((*n, *n))),
            (None, Some(RangeValue::Text(text))) => parse_range(text).map(Some),
            (None, None) => Ok(None),
        }
    }

    /// Combine `--pair` and its parameter flags with the config file.
    pub fn pair_spec(&self, args: &PairArgs) -> Result<PairSpec> {
        let mut spec = match (&args.pair, &self.pair) {
            (Some(id), _) => id.parse::<PairSpec>()?,
            (None, Some(PairValue::Id(id))) => id.parse::<PairSpec>()?,
            (None, Some(PairValue::Spec(spec))) => spec.clone(),
            (None, None) => bail!("no pair given; use --pair or a config file"),
        };
        if let Some(r) = args.r.or(self.r) {
            spec.r = Some(r);
        }
        if let Some(p) = args.p.or(self.p) {
            spec.p = Some(p);
        }
        if let Some(m) = args.modulus.or(self.modulus) {
            spec.modulus = Some(m);
        }
        if let Some(list) = pick_list(args.residues.as_deref(), self.residues.as_ref())? {
            spec.residues = Some(list);
        }
        if let Some(list) = pick_list(args.values.as_deref(), self.values.as_ref())? {
            spec.values = Some(list);
        }
        Ok(spec)
    }
}

fn pick_list(flag: Option<&str>, file: Option<&ListValue>) -> Result<Option<Vec<u64>>> {
    match (flag, file) {
        (Some(text), _) => parse_list(text).map(Some),
        (None, Some(ListValue::Text(text))) => parse_list(text).map(Some),
        (None, Some(ListValue::Ints(v))) => Ok(Some(v.clone())),
        (None, None) => Ok(None),
    }
}

pub fn parse_list(text: &str) -> Result<Vec<u64>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().with_context(|| format!("bad integer {t:?}")))
        .collect()
}

/// `7`, `1..12` or `1..=12`, both ends inclusive.
pub fn parse_range(text: &str) -> Result<(u64, u64)> {
    let text = text.trim();
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (text, text),
    };
    let lo: u64 = lo.trim().parse().with_context(|| format!("bad range {text:?}"))?;
    let hi: u64 = hi.trim().parse().with_context(|| format!("bad range {text:?}"))?;
    if lo > hi {
        bail!("empty range {text:?}");
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..12").unwrap(), (1, 12));
        assert_eq!(parse_range("3..=5").unwrap(), (3, 5));
        assert_eq!(parse_range("7").unwrap(), (7, 7));
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("a..2").is_err());
    }

    #[test]
    fn config_file_pairs() {
        let cfg: FileConfig = serde_json::from_str(
            r#"{"pair": {"family": "custom", "modulus": 4, "residues": [1, 2]}, "r": 2, "n": "1..5"}"#,
        )
        .unwrap();
        let spec = cfg.pair_spec(&PairArgs::default()).unwrap();
        assert_eq!(spec.to_string(), "custom(modulus=4,residues=1 2,r=2)");
        assert_eq!(cfg.n_range(None).unwrap(), Some((1, 5)));
        assert_eq!(cfg.n_range(Some("2..3")).unwrap(), Some((2, 3)));

        let args = PairArgs {
            pair: Some("family-vii".into()),
            r: Some(4),
            ..PairArgs::default()
        };
        let spec = FileConfig::default().pair_spec(&args).unwrap();
        assert_eq!(spec.to_string(), "family-vii(r=4)");
        assert!(FileConfig::default().pair_spec(&PairArgs::default()).is_err());
        assert!(serde_json::from_str::<FileConfig>(r#"{"colour": 1}"#).is_err());
    }
}
