use std::io::Write;

use anyhow::{Context, Result};
use beck_core::bijections::{
    d1r_to_decorated, decorated_fiber, decorated_to_d1r, decorated_to_o1r, glaisher_merge,
    glaisher_split, marked_to_decorated, o1r_to_decorated, overlined_to_t, t_to_overlined,
    DecoratedPartition, MarkedPartition, Overpartition,
};
use beck_core::multipartite::{targets, v_beck_statistics, MultipartiteNumber};
use beck_core::qseries::{check_sets_identity, GfBundle, Mismatch};
use beck_core::stats::beck_statistics;
use beck_core::{Error, EulerPair, Family, PairSpec, Partition};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::FileConfig;
use crate::output::{Emitter, Format};
use crate::{Cli, Command, Identity, MapName, PairsAction, Status};

pub fn run(cli: Cli) -> Result<Status> {
    let cfg = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let format = |flag: Option<Format>| flag.or(cfg.format).unwrap_or_default();
    match cli.command {
        Command::Pairs { action } => match action {
            PairsAction::List { format: f } => pairs_list(format(f)),
            PairsAction::Validate { pair, bound, format: f } => {
                let bound = bound.or(cfg.bound).unwrap_or(1000);
                pairs_validate(&cfg.pair_spec(&pair)?, bound, format(f))
            }
        },
        Command::Verify {
            identity,
            pair,
            n,
            format: f,
        } => {
            let (lo, hi) = cfg.n_range(n.as_deref())?.unwrap_or((1, 20));
            verify(identity, &cfg.pair_spec(&pair)?, lo, hi, format(f))
        }
        Command::Series {
            pair,
            degree,
            show,
            format: f,
        } => {
            let degree = degree.or(cfg.degree).unwrap_or(60);
            let show = show || cfg.show.unwrap_or(false);
            series(&cfg.pair_spec(&pair)?, degree, show, format(f))
        }
        Command::Map {
            name,
            pair,
            input,
            roundtrip,
            format: f,
        } => {
            let input = input
                .or_else(|| cfg.input.clone())
                .context("no input given; use --input")?;
            let roundtrip = roundtrip || cfg.roundtrip.unwrap_or(false);
            map(name, &cfg.pair_spec(&pair)?, &input, roundtrip, format(f))
        }
        Command::Multi {
            pair,
            s,
            max_sum,
            target,
            format: f,
        } => {
            let targets = match target.or_else(|| cfg.target.clone()) {
                Some(t) => vec![t.parse::<MultipartiteNumber>()?],
                None => targets(s.or(cfg.s).unwrap_or(2), max_sum.or(cfg.max_sum).unwrap_or(10)),
            };
            multi(&cfg.pair_spec(&pair)?, &targets, format(f))
        }
    }
}

/// Build the pair and check closure up to `bound`. `Ok(None)` means the
/// pair is invalid, which has already been reported.
fn checked_pair(spec: &PairSpec, bound: u64) -> Result<Option<EulerPair>> {
    let pair = spec.build()?;
    match pair.ensure_valid(bound) {
        Ok(()) => Ok(Some(pair)),
        Err(e @ Error::InvalidPair(_)) => {
            eprintln!("{spec}: {e}");
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Success
    } else {
        Status::Violation
    }
}

#[derive(Serialize)]
struct PairRow {
    kind: &'static str,
    id: String,
    r: Option<u64>,
    description: String,
}

fn pairs_list(format: Format) -> Result<Status> {
    let mut out = Emitter::new(format, &[("kind", 8), ("id", 22), ("r", 3), ("description", 0)]);
    for family in Family::ALL {
        out.row(&PairRow {
            kind: "family",
            id: family.id().to_string(),
            r: family.fixed_order(),
            description: family.summary().to_string(),
        })?;
    }
    for spec in PairSpec::standard_instances() {
        let pair = spec.build()?;
        out.row(&PairRow {
            kind: "instance",
            id: spec.to_string(),
            r: Some(pair.r()),
            description: pair.s1().describe(),
        })?;
    }
    Ok(Status::Success)
}

#[derive(Serialize)]
struct ValidateRow {
    pair: String,
    r: u64,
    bound: u64,
    ok: bool,
    counterexample: Option<String>,
    closed_form: String,
}

fn pairs_validate(spec: &PairSpec, bound: u64, format: Format) -> Result<Status> {
    let pair = spec.build()?;
    let report = pair.validate(bound);
    let closed_form = match pair.s2_discrepancies(bound) {
        None => "-".to_string(),
        Some(d) if d.is_empty() => "agrees".to_string(),
        Some(d) => format!("differs at {}", d[0]),
    };
    let counterexample = report
        .counterexample
        .map(|m| format!("{m} in S1 but {} not in S1", m * report.r));
    let mut out = Emitter::new(
        format,
        &[("pair", 22), ("r", 3), ("bound", 6), ("ok", 4), ("counterexample", 24), ("closed_form", 12)],
    );
    out.row(&ValidateRow {
        pair: spec.to_string(),
        r: report.r,
        bound,
        ok: report.ok,
        counterexample,
        closed_form,
    })?;
    Ok(status(report.ok))
}

#[derive(Serialize)]
struct CountsRow {
    n: u64,
    o: u64,
    d: u64,
    ok: bool,
}

#[derive(Serialize)]
struct Beck1Row {
    n: u64,
    a: u64,
    b: i64,
    c: u64,
    ok: bool,
}

#[derive(Serialize)]
struct Beck2Row {
    n: u64,
    b_prime: i64,
    c_prime: u64,
    ok: bool,
}

fn verify(identity: Identity, spec: &PairSpec, lo: u64, hi: u64, format: Format) -> Result<Status> {
    let Some(pair) = checked_pair(spec, hi)? else {
        return Ok(Status::Violation);
    };
    let columns: &[(&str, usize)] = match identity {
        Identity::Counts => &[("n", 4), ("o", 12), ("d", 12), ("ok", 4)],
        Identity::Beck1 => &[("n", 4), ("a", 12), ("b", 12), ("c", 12), ("ok", 4)],
        Identity::Beck2 => &[("n", 4), ("b_prime", 12), ("c_prime", 12), ("ok", 4)],
    };
    let mut out = Emitter::new(format, columns);
    let mut all_ok = true;
    for n in lo..=hi {
        let rep = beck_statistics(&pair, n)?;
        let ok = match identity {
            Identity::Counts => {
                out.row(&CountsRow {
                    n,
                    o: rep.o_count,
                    d: rep.d_count,
                    ok: rep.ok_counts,
                })?;
                rep.ok_counts
            }
            Identity::Beck1 => {
                out.row(&Beck1Row {
                    n,
                    a: rep.a,
                    b: rep.b,
                    c: rep.c,
                    ok: rep.ok_t1,
                })?;
                rep.ok_t1
            }
            Identity::Beck2 => {
                out.row(&Beck2Row {
                    n,
                    b_prime: rep.b_prime,
                    c_prime: rep.c_prime,
                    ok: rep.ok_t2,
                })?;
                rep.ok_t2
            }
        };
        all_ok &= ok;
    }
    if !all_ok {
        eprintln!("{spec}: identity violated");
    }
    Ok(status(all_ok))
}

#[derive(Serialize)]
struct CheckRow {
    check: String,
    holds: bool,
    degree: Option<usize>,
    lhs: Option<String>,
    rhs: Option<String>,
}

impl CheckRow {
    fn new(check: &str, mismatch: Option<Mismatch>) -> Self {
        Self {
            check: check.to_string(),
            holds: mismatch.is_none(),
            degree: mismatch.as_ref().map(|m| m.degree),
            lhs: mismatch.as_ref().map(|m| m.lhs.to_string()),
            rhs: mismatch.as_ref().map(|m| m.rhs.to_string()),
        }
    }
}

fn series(spec: &PairSpec, degree: usize, show: bool, format: Format) -> Result<Status> {
    let Some(pair) = checked_pair(spec, degree as u64)? else {
        return Ok(Status::Violation);
    };
    let bundle = GfBundle::build(&pair, degree)?;
    if show {
        let mut stdout = std::io::stdout().lock();
        for (name, s) in bundle.named() {
            match format {
                Format::Table => writeln!(stdout, "{name}: {s}")?,
                Format::Json => {
                    let mut v = s.to_json_value();
                    v["series"] = Value::String(name.to_string());
                    writeln!(stdout, "{v}")?;
                }
                Format::Csv => {
                    let coeffs: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
                    writeln!(stdout, "{name},{}", coeffs.join(","))?;
                }
            }
        }
        stdout.flush()?;
    }
    let mut out = Emitter::new(format, &[("check", 20), ("holds", 6), ("degree", 7), ("lhs", 10), ("rhs", 10)]);
    let mut all_ok = true;
    for (name, mismatch) in bundle.identities(pair.r()) {
        all_ok &= mismatch.is_none();
        out.row(&CheckRow::new(name, mismatch))?;
    }
    let sets = check_sets_identity(&pair, degree);
    all_ok &= sets.holds;
    out.row(&CheckRow::new("sets identity", sets.first_mismatch))?;
    Ok(status(all_ok))
}

enum Item {
    Plain(Partition),
    Marked(MarkedPartition),
    Decorated(DecoratedPartition),
    Overlined(Overpartition),
}

impl Item {
    fn text(&self) -> String {
        match self {
            Item::Plain(p) => p.to_string(),
            Item::Marked(m) => m.to_string(),
            Item::Decorated(d) => d.to_string(),
            Item::Overlined(o) => o.to_string(),
        }
    }

    fn json(&self) -> Value {
        let raw = match self {
            Item::Plain(p) => p.to_json(),
            Item::Marked(m) => m.to_json(),
            Item::Decorated(d) => d.to_json(),
            Item::Overlined(o) => o.to_json(),
        };
        serde_json::from_str(&raw).expect("valid json")
    }

    fn size(&self) -> u64 {
        match self {
            Item::Plain(p) => p.size(),
            Item::Marked(m) => m.base().size(),
            Item::Decorated(d) => d.base().size(),
            Item::Overlined(o) => o.base().size(),
        }
    }
}

fn is_json(s: &str) -> bool {
    s.trim_start().starts_with('{')
}

fn parse_item(name: MapName, pair: &EulerPair, input: &str) -> Result<Item> {
    use MapName::*;
    Ok(match name {
        GlaisherMerge | GlaisherSplit | O1rToDd | D1rToDd | TToOverlined => Item::Plain(input.parse()?),
        MarkedToDecorated => Item::Marked(if is_json(input) {
            MarkedPartition::from_json(pair, input)?
        } else {
            MarkedPartition::parse(pair, input)?
        }),
        DdToO1r | DdToD1r => Item::Decorated(if is_json(input) {
            DecoratedPartition::from_json(pair, input)?
        } else {
            DecoratedPartition::parse(pair, input)?
        }),
        OverlinedToT => Item::Overlined(if is_json(input) {
            Overpartition::from_json(pair, input)?
        } else {
            Overpartition::parse(pair, input)?
        }),
    })
}

fn apply(name: MapName, pair: &EulerPair, item: &Item) -> Result<Item> {
    use MapName::*;
    Ok(match (name, item) {
        (GlaisherMerge, Item::Plain(p)) => Item::Plain(glaisher_merge(pair, p)?),
        (GlaisherSplit, Item::Plain(p)) => Item::Plain(glaisher_split(pair, p)?),
        (MarkedToDecorated, Item::Marked(m)) => Item::Decorated(marked_to_decorated(pair, m)?),
        (O1rToDd, Item::Plain(p)) => Item::Decorated(o1r_to_decorated(pair, p)?),
        (DdToO1r, Item::Decorated(d)) => Item::Plain(decorated_to_o1r(pair, d)?),
        (D1rToDd, Item::Plain(p)) => Item::Decorated(d1r_to_decorated(pair, p)?),
        (DdToD1r, Item::Decorated(d)) => Item::Plain(decorated_to_d1r(pair, d)?),
        (TToOverlined, Item::Plain(p)) => Item::Overlined(t_to_overlined(pair, p)?),
        (OverlinedToT, Item::Overlined(o)) => Item::Plain(overlined_to_t(pair, o)?),
        _ => unreachable!("input parsed for a different map"),
    })
}

/// Apply the inverse of `name` to `output`; the result is the list of
/// preimages (several only for the marked-to-decorated map).
fn invert(name: MapName, pair: &EulerPair, output: &Item) -> Result<Vec<Item>> {
    use MapName::*;
    let inverse = match name {
        GlaisherMerge => GlaisherSplit,
        GlaisherSplit => GlaisherMerge,
        MarkedToDecorated => {
            let Item::Decorated(d) = output else {
                unreachable!("decorated output")
            };
            return Ok(decorated_fiber(pair, d)?.into_iter().map(Item::Marked).collect());
        }
        O1rToDd => DdToO1r,
        DdToO1r => O1rToDd,
        D1rToDd => DdToD1r,
        DdToD1r => D1rToDd,
        TToOverlined => OverlinedToT,
        OverlinedToT => TToOverlined,
    };
    Ok(vec![apply(inverse, pair, output)?])
}

fn map(name: MapName, spec: &PairSpec, input: &str, roundtrip: bool, format: Format) -> Result<Status> {
    let pair = spec.build()?;
    let item = parse_item(name, &pair, input)?;
    if pair.ensure_valid(item.size()).is_err() {
        checked_pair(spec, item.size())?;
        return Ok(Status::Violation);
    }
    let output = apply(name, &pair, &item)?;
    let back = if roundtrip {
        Some(invert(name, &pair, &output)?)
    } else {
        None
    };
    let back_ok = back
        .as_ref()
        .map(|items| items.iter().any(|b| b.text() == item.text()));
    let map_name = name.to_possible_value().expect("named").get_name().to_string();
    match format {
        Format::Json => {
            let mut v = json!({
                "map": map_name,
                "pair": spec.to_string(),
                "input": item.text(),
                "output": output.text(),
                "output_json": output.json(),
            });
            if let (Some(items), Some(ok)) = (&back, back_ok) {
                v["roundtrip"] = json!({
                    "ok": ok,
                    "inverse": items.iter().map(Item::text).collect::<Vec<_>>(),
                });
            }
            println!("{v}");
        }
        Format::Table | Format::Csv => {
            println!("{}", output.text());
            if let (Some(items), Some(ok)) = (&back, back_ok) {
                let texts: Vec<String> = items.iter().map(Item::text).collect();
                let verdict = if ok { "ok" } else { "FAILED" };
                println!("roundtrip {verdict}: {}", texts.join(" | "));
            }
        }
    }
    Ok(status(back_ok.unwrap_or(true)))
}

#[derive(Serialize)]
struct MultiRow {
    target: String,
    vd: u64,
    vo: u64,
    vb: i64,
    vb_prime: i64,
    one_repeated: u64,
    one_nonprimitive: u64,
    t_analogue: u64,
    ok: bool,
}

fn multi(spec: &PairSpec, targets: &[MultipartiteNumber], format: Format) -> Result<Status> {
    let top = targets
        .iter()
        .flat_map(|t| t.entries().iter().copied())
        .max()
        .unwrap_or(1);
    let Some(pair) = checked_pair(spec, top)? else {
        return Ok(Status::Violation);
    };
    let mut out = Emitter::new(
        format,
        &[
            ("target", 12),
            ("vd", 8),
            ("vo", 8),
            ("vb", 8),
            ("vb_prime", 8),
            ("one_repeated", 12),
            ("one_nonprimitive", 16),
            ("t_analogue", 10),
            ("ok", 4),
        ],
    );
    let mut all_ok = true;
    for t in targets {
        let rep = v_beck_statistics(&pair, t)?;
        let ok = rep.ok_counts && rep.ok_i && rep.ok_ii;
        all_ok &= ok;
        out.row(&MultiRow {
            target: t.to_string(),
            vd: rep.vd_count,
            vo: rep.vo_count,
            vb: rep.vb,
            vb_prime: rep.vb_prime,
            one_repeated: rep.one_repeated,
            one_nonprimitive: rep.one_nonprimitive,
            t_analogue: rep.t_analogue,
            ok,
        })?;
    }
    if !all_ok {
        eprintln!("{spec}: multipartite identity violated");
    }
    Ok(status(all_ok))
}
