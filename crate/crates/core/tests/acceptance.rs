//! End-to-end acceptance checks. Runs without the libtest harness so each
//! criterion prints exactly one PASS/FAIL line.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use beck_core::bijections::{
    d1r_to_decorated, decorated_fiber, decorated_to_d1r, decorated_to_o1r, enumerate_decorated,
    enumerate_marked, enumerate_overlined, glaisher_merge, glaisher_split, marked_to_decorated,
    o1r_to_decorated, overlined_to_t, t_to_overlined, DecoratedPartition, Overpartition,
};
use beck_core::euler_pair::FiniteSet;
use beck_core::multipartite::{targets, v_beck_statistics};
use beck_core::qseries::{check_sets_identity, GfBundle};
use beck_core::stats::{beck_statistics, enumerate_class, BeckReport, ClassId};
use beck_core::{EulerPair, PairSpec, Partition};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn pair(id: &str) -> EulerPair {
    id.parse::<PairSpec>().unwrap().build().unwrap()
}

fn catalog() -> Vec<(String, EulerPair)> {
    PairSpec::standard_instances()
        .into_iter()
        .map(|s| (s.to_string(), s.build().unwrap()))
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_second(start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))
}

fn small_tables() -> Outcome {
    let start = Instant::now();
    let stat = |id: &str, n| beck_statistics(&pair(id), n).map_err(|e| e.to_string());
    let r7 = stat("example-odd-mod6", 7)?;
    ensure(
        (r7.a, r7.c, r7.b, r7.c_prime, r7.b_prime) == (2, 2, 4, 1, 1),
        || format!("example pair at 7: {r7:?}"),
    )?;
    let r11 = stat("example-odd-mod6", 11)?;
    ensure(r11.b == 14, || format!("example pair at 11: b = {}", r11.b))?;
    let v7 = stat("family-vii(r=4)", 7)?;
    ensure(
        (v7.a, v7.c, v7.b, v7.b_prime, v7.c_prime) == (3, 3, 9, 2, 2),
        || format!("family-vii(r=4) at 7: {v7:?}"),
    )?;
    within_second(start)?;
    Ok(format!("in {:?}", start.elapsed()))
}

fn golden_bijections() -> Outcome {
    let start = Instant::now();
    let p = pair("example-odd-mod6");
    let e = |e: beck_core::Error| e.to_string();
    let check = |what: &str, got: String, want: &str| {
        ensure(got == want, || format!("{what}: got {got}, want {want}"))
    };

    let lambda: Partition = "35,17^3,15^84,5^51,1^3".parse().map_err(e)?;
    let dd = "1215,135_{02},135,51,35,15,15,3";
    check("O_1r -> DD (1604)", o1r_to_decorated(&p, &lambda).map_err(e)?.to_string(), dd)?;
    let d = DecoratedPartition::parse(&p, dd).map_err(e)?;
    check("DD -> O_1r (1604)", decorated_to_o1r(&p, &d).map_err(e)?.to_string(), "35,17^3,15^84,5^51,1^3")?;

    let lambda: Partition = "32805,3645^2,1215,135^2,45^320,25,9,3".parse().map_err(e)?;
    let dd = "32805,10935_{0120},10935,1215,45,45,25,9,3";
    check("D_1r -> DD (56017)", d1r_to_decorated(&p, &lambda).map_err(e)?.to_string(), dd)?;
    let d = DecoratedPartition::parse(&p, dd).map_err(e)?;
    check(
        "DD -> D_1r (56017)",
        decorated_to_d1r(&p, &d).map_err(e)?.to_string(),
        "32805,3645^2,1215,135^2,45^320,25,9,3",
    )?;

    let over = "32805,10935,10935~,1215,45,45,25,9,3";
    let t_form = "32805,10935,3645^2,1215^4,45^2,25,9,3";
    let o = Overpartition::parse(&p, over).map_err(e)?;
    check("overlined -> T (56017)", overlined_to_t(&p, &o).map_err(e)?.to_string(), t_form)?;
    let lambda: Partition = t_form.parse().map_err(e)?;
    check("T -> overlined (56017)", t_to_overlined(&p, &lambda).map_err(e)?.to_string(), over)?;

    within_second(start)?;
    Ok(format!("6 mappings in {:?}", start.elapsed()))
}

fn identity_sweeps(reports: &[(String, Vec<BeckReport>)]) -> Outcome {
    for (id, rows) in reports {
        for r in rows {
            ensure(r.ok_counts && r.ok_t1 && r.ok_t2, || format!("{id} n={}: {r:?}", r.n))?;
        }
    }
    Ok(format!("{} pairs, n <= 30", reports.len()))
}

fn sorted_desc(mut v: Vec<Partition>) -> Vec<Partition> {
    v.sort_by(|a, b| b.cmp(a));
    v
}

fn bijections_total_for(id: &str, p: &EulerPair, n: u64, rep: &BeckReport) -> Result<u64, String> {
    let e = |e: beck_core::Error| format!("{id} n={n}: {e}");
    let r = p.r();
    let mut checked = 0u64;

    let os = enumerate_class(p, n, ClassId::Or).map_err(e)?;
    let mut merged = Vec::new();
    for o in &os {
        let d = glaisher_merge(p, o).map_err(e)?;
        ensure(&glaisher_split(p, &d).map_err(e)? == o, || format!("{id}: split(merge({o})) differs"))?;
        merged.push(d);
    }
    ensure(sorted_desc(merged) == enumerate_class(p, n, ClassId::Dr).map_err(e)?, || {
        format!("{id} n={n}: merge image is not D_r")
    })?;
    checked += os.len() as u64;

    let marked = enumerate_marked(p, n).map_err(e)?;
    let decorated = enumerate_decorated(p, n).map_err(e)?;
    ensure(
        marked.len() as u64 == (r - 1) * decorated.len() as u64 && marked.len() as i64 == rep.b,
        || format!("{id} n={n}: |MD|={} |DD|={} b={}", marked.len(), decorated.len(), rep.b),
    )?;
    for m in &marked {
        let d = marked_to_decorated(p, m).map_err(e)?;
        let fiber = decorated_fiber(p, &d).map_err(e)?;
        ensure(fiber.len() as u64 == r - 1 && fiber.contains(m), || {
            format!("{id}: fiber of {d} misses {m}")
        })?;
    }

    let mut to_o1r = Vec::new();
    let mut to_d1r = Vec::new();
    for d in &decorated {
        let a = decorated_to_o1r(p, d).map_err(e)?;
        ensure(&o1r_to_decorated(p, &a).map_err(e)? == d, || format!("{id}: O_1r round trip of {d}"))?;
        let c = decorated_to_d1r(p, d).map_err(e)?;
        ensure(&d1r_to_decorated(p, &c).map_err(e)? == d, || format!("{id}: D_1r round trip of {d}"))?;
        to_o1r.push(a);
        to_d1r.push(c);
    }
    ensure(sorted_desc(to_o1r) == enumerate_class(p, n, ClassId::O1r).map_err(e)?, || {
        format!("{id} n={n}: image is not O_1r")
    })?;
    ensure(sorted_desc(to_d1r) == enumerate_class(p, n, ClassId::D1r).map_err(e)?, || {
        format!("{id} n={n}: image is not D_1r")
    })?;

    let overlined = enumerate_overlined(p, n).map_err(e)?;
    ensure(overlined.len() as i64 == rep.b_prime, || {
        format!("{id} n={n}: |overlined|={} b'={}", overlined.len(), rep.b_prime)
    })?;
    let mut to_t = Vec::new();
    for o in &overlined {
        let t = overlined_to_t(p, o).map_err(e)?;
        ensure(&t_to_overlined(p, &t).map_err(e)? == o, || format!("{id}: T round trip of {o}"))?;
        to_t.push(t);
    }
    ensure(sorted_desc(to_t) == enumerate_class(p, n, ClassId::Tr).map_err(e)?, || {
        format!("{id} n={n}: image is not T_r")
    })?;
    checked += (marked.len() + 2 * decorated.len() + overlined.len()) as u64;
    Ok(checked)
}

fn bijection_totality(reports: &[(String, Vec<BeckReport>)]) -> Outcome {
    let mut total = 0;
    for ((id, p), (_, rows)) in catalog().iter().zip(reports) {
        for rep in rows.iter().filter(|r| r.n <= 25) {
            total += bijections_total_for(id, p, rep.n, rep)?;
        }
    }
    Ok(format!("{total} objects round-tripped, n <= 25"))
}

fn series_oracle(reports: &[(String, Vec<BeckReport>)]) -> Outcome {
    for ((id, p), (_, rows)) in catalog().iter().zip(reports) {
        let g = GfBundle::build(p, 60).map_err(|e| e.to_string())?;
        for rep in rows {
            let n = rep.n as usize;
            let at = |s: &beck_core::qseries::TruncatedSeries| s.coeff(n).to_string();
            let want = [
                rep.d_count.to_string(),
                rep.o_count.to_string(),
                rep.a.to_string(),
                rep.b.to_string(),
                rep.c.to_string(),
                rep.b_prime.to_string(),
                rep.c_prime.to_string(),
            ];
            let got = [&g.d, &g.o, &g.a, &g.b, &g.c, &g.b_prime, &g.c_prime].map(at);
            ensure(got == want, || format!("{id} n={n}: series {got:?} vs enumeration {want:?}"))?;
        }
        for (name, m) in g.identities(p.r()) {
            ensure(m.is_none(), || format!("{id}: {name} fails at {}", m.unwrap()))?;
        }
        let sets = check_sets_identity(p, 60);
        ensure(sets.holds, || format!("{id}: set identity fails: {:?}", sets.first_mismatch))?;
    }
    let broken = EulerPair::new(2, Arc::new(FiniteSet::new([1, 2])), "S1={1,2}").unwrap();
    let control = check_sets_identity(&broken, 60);
    let m = control
        .first_mismatch
        .ok_or("negative control unexpectedly satisfies the set identity")?;
    Ok(format!("degree 60; negative control mismatches at {m}"))
}

fn multipartite() -> Outcome {
    let mut swept = 0;
    for id in ["example-odd-mod6", "classical(r=2)"] {
        let p = pair(id);
        for s in [1, 2] {
            for t in targets(s, 10) {
                let rep = v_beck_statistics(&p, &t).map_err(|e| e.to_string())?;
                ensure(rep.ok_counts && rep.ok_i && rep.ok_ii, || format!("{id} {t}: {rep:?}"))?;
                if s == 1 {
                    let b = beck_statistics(&p, t.entries()[0]).map_err(|e| e.to_string())?;
                    let lhs = (rep.vd_count, rep.vo_count, rep.vb, rep.vb_prime);
                    let rhs = (b.d_count, b.o_count, b.b, b.b_prime);
                    let extra = (rep.one_repeated, rep.one_nonprimitive, rep.t_analogue);
                    ensure(lhs == rhs && extra == (b.c, b.a, b.c_prime), || {
                        format!("{id} {t}: scalar mismatch {rep:?} vs {b:?}")
                    })?;
                }
                swept += 1;
            }
        }
    }
    Ok(format!("{swept} targets"))
}

fn all_zero_words() -> Outcome {
    let mut seen = 0;
    for (id, p) in catalog() {
        for n in 0..=25 {
            for lambda in enumerate_class(&p, n, ClassId::Tr).map_err(|e| e.to_string())? {
                let o = t_to_overlined(&p, &lambda).map_err(|e| e.to_string())?;
                let d = d1r_to_decorated(&p, &lambda).map_err(|e| e.to_string())?;
                let (v, _) = *lambda
                    .runs()
                    .iter()
                    .find(|&&(_, m)| m >= p.r())
                    .expect("repeated part");
                let k = p.decompose(v).unwrap().exponent;
                let t = p.decompose(o.value()).unwrap().exponent;
                ensure(
                    d.value() == o.value()
                        && d.occurrence() == o.occurrence()
                        && d.word().digits().iter().all(|&x| x == 0)
                        && d.word().len() as u32 == t - k - 1,
                    || format!("{id}: {lambda} gives {d} but {o}"),
                )?;
                seen += 1;
            }
        }
    }
    Ok(format!("{seen} partitions"))
}

type Reports = Vec<(String, Vec<BeckReport>)>;

static REPORTS: OnceLock<Reports> = OnceLock::new();

fn reports() -> &'static Reports {
    REPORTS.get_or_init(|| {
        catalog()
            .into_iter()
            .map(|(id, p)| {
                let rows = (0..=30).map(|n| beck_statistics(&p, n).unwrap()).collect();
                (id, rows)
            })
            .collect()
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("small statistic tables", small_tables),
        ("golden bijection fixtures", golden_bijections),
        ("identity sweeps", || identity_sweeps(reports())),
        ("bijection totality", || bijection_totality(reports())),
        ("q-series vs enumeration", || series_oracle(reports())),
        ("multipartite identities", multipartite),
        ("overline / all-zero word consistency", all_zero_words),
    ];
    let mut failed = BTreeSet::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {:?})", i + 1, start.elapsed()),
            Err(why) => {
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
                failed.insert(i + 1);
            }
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
