//! The four subcommands and the sweeps behind `reproduce` and `search`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::classify::{
    classify, critical_portrait_dot, oracle_classify, ClassifyOptions, Route, CSV_SCHEMA_VERSION,
    VERDICT_CSV_COLUMNS,
};
use super::{Report, RunConfig};
use crate::cubic::{chu_polynomial, chu_test};
use crate::error::{Error, Result};
use crate::ffield::{build_field, Field};
use crate::linearized::verify_theorem52;
use crate::polyring::{is_irreducible, parse_poly, Poly};
use crate::unicritical::{detect_unicritical, unicritical_verdict};
use crate::verdict::{Verdict, VerdictKind};

/// Frozen CSV layout of `reproduce --table 1`.
pub const TABLE1_CSV_COLUMNS: [&str; 6] = ["csv_version", "polynomial", "a", "c", "tail", "adjusted_set"];
/// Frozen CSV layout of `reproduce --table 2`.
pub const TABLE2_CSV_COLUMNS: [&str; 5] =
    ["csv_version", "polynomial", "expected_iterate", "found_iterate", "match"];
/// Frozen CSV layout of `verify-linearized`.
pub const LINEARIZED_CSV_COLUMNS: [&str; 8] = [
    "csv_version",
    "field",
    "exhaustive",
    "total",
    "irreducible_first",
    "reducible_at_2",
    "reducible_at_3",
    "counterexamples",
];

/// Irreducible cubics over `F_3` and the least reducible iterate of each.
pub const TABLE2_EXPECTED: [(&str, usize); 16] = [
    ("x^3+2x+1", 2),
    ("x^3+2x+2", 2),
    ("x^3+x^2+2", 2),
    ("x^3+x^2+x+2", 2),
    ("x^3+2x^2+1", 2),
    ("x^3+2x^2+x+1", 2),
    ("2x^3+x+1", 2),
    ("2x^3+x+2", 2),
    ("2x^3+x^2+x+1", 2),
    ("2x^3+x^2+2x+2", 2),
    ("2x^3+2x^2+x+2", 2),
    ("2x^3+2x^2+2x+1", 2),
    ("x^3+x^2+2x+1", 3),
    ("x^3+2x^2+2x+2", 3),
    ("2x^3+x^2+2", 4),
    ("2x^3+2x^2+1", 4),
];

fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|c| c.to_string()).collect()
}

fn field_name(field: &Field) -> String {
    let q = field.cardinality();
    format!("F_{q}")
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|e| e.to_string()).collect()
}

pub(super) fn cmd_test(cfg: &RunConfig) -> Result<Report> {
    let field = cfg.field()?;
    let f = cfg.polynomial(&field)?;
    let beta = cfg.beta_elem(&field)?;
    let c = classify(&f, beta.as_ref(), &cfg.classify_options())?;
    let mut text = vec![
        format!("polynomial: {f} over {}", field_name(&field)),
        format!("route: {}", c.route.name()),
    ];
    if let Some(b) = &beta {
        text.push(format!("target: beta = {b}"));
    }
    text.extend(c.text.iter().cloned());
    text.push(format!("verdict: {}", c.verdict));
    let dot = if f.derivative().is_zero() {
        None
    } else {
        critical_portrait_dot(&f, &f.to_string()).ok()
    };
    Ok(Report {
        command: "test",
        config: cfg.to_json(),
        result: json!({
            "polynomial": f.to_string(),
            "field": field.to_json(),
            "beta": beta.as_ref().map(|b| b.to_string()),
            "route": c.route.name(),
            "verdict": c.verdict.to_json(),
            "evidence": c.evidence,
        }),
        text,
        csv: c.csv,
        dot,
        exit_code: c.verdict.kind.exit_code(),
    })
}

/// One dynamically irreducible `a*x^d + c` found by the table-1 sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub poly: String,
    pub a: String,
    pub c: String,
    pub tail: Vec<String>,
    pub cycle: Vec<String>,
    pub adjusted_set: Vec<String>,
}

/// All dynamically irreducible `a*x^d + c` over `field`, grouped by adjusted
/// critical orbit (rows sorted by orbit, then `a`, then `c`).
pub fn reproduce_table1(field: &Field, degree: usize) -> Result<Vec<Table1Row>> {
    let mut rows = Vec::new();
    let mut keyed = Vec::new();
    for a in field.nonzero_elements() {
        for c in field.elements() {
            let mut coeffs = vec![field.zero(); degree + 1];
            coeffs[0] = c.clone();
            coeffs[degree] = a.clone();
            let f = Poly::from_elems(field, &coeffs)?;
            let u = detect_unicritical(&f)?.expect("a*x^d + c is unicritical");
            let (report, verdict) = unicritical_verdict(&u)?;
            if !verdict.is_proved() {
                continue;
            }
            let r = report.expect("proved verdicts carry an orbit");
            let set = r.adjusted_set();
            keyed.push((set.clone(), a.clone(), c.clone()));
            rows.push(Table1Row {
                poly: f.to_string(),
                a: a.to_string(),
                c: c.to_string(),
                tail: strings(&r.tail),
                cycle: strings(&r.cycle),
                adjusted_set: strings(&set),
            });
        }
    }
    let mut idx: Vec<usize> = (0..rows.len()).collect();
    idx.sort_by(|&i, &j| keyed[i].cmp(&keyed[j]));
    Ok(idx.into_iter().map(|i| rows[i].clone()).collect())
}

/// One row of table 2 with the oracle's answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table2Row {
    pub poly: String,
    pub expected: usize,
    pub found: Option<usize>,
}

impl Table2Row {
    pub fn matches(&self) -> bool {
        self.found == Some(self.expected)
    }
}

/// Least `n <= n_max` with `f^n` reducible, by factorization.
fn least_reducible(f: &Poly, n_max: usize) -> Result<Option<usize>> {
    let mut it = f.clone();
    for n in 1..=n_max {
        if n > 1 {
            it = f.compose(&it)?;
        }
        if !is_irreducible(&it)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Table 2 rows and a sweep over every cubic with lead 1 or 2 over `F_3`
/// (`histogram[n]` counts cubics whose least reducible iterate is `n`;
/// key 0 counts cubics irreducible through iterate `n_max`).
pub fn reproduce_table2(n_max: usize) -> Result<(Vec<Table2Row>, BTreeMap<usize, usize>)> {
    let field = build_field(3, &[1])?;
    let rows = TABLE2_EXPECTED
        .iter()
        .map(|(src, expected)| {
            let f = parse_poly(&field, src)?;
            Ok(Table2Row {
                poly: f.to_string(),
                expected: *expected,
                found: least_reducible(&f, n_max.max(*expected))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut hist = BTreeMap::new();
    for a3 in 1..3 {
        for a2 in 0..3 {
            for a1 in 0..3 {
                for a0 in 0..3 {
                    let f = Poly::from_i64s(&field, &[a0, a1, a2, a3]);
                    let n = least_reducible(&f, n_max)?.unwrap_or(0);
                    *hist.entry(n).or_insert(0) += 1;
                }
            }
        }
    }
    Ok((rows, hist))
}

pub(super) fn cmd_reproduce(table: u8, cfg: &RunConfig) -> Result<Report> {
    match table {
        1 => {
            let field = match cfg.p {
                Some(p) => build_field(p, &[cfg.s])?,
                None => build_field(7, &[1])?,
            };
            let rows = reproduce_table1(&field, 3)?;
            let mut text = vec![format!(
                "dynamically irreducible a*x^3 + c over {}: {}",
                field_name(&field),
                rows.len()
            )];
            let mut groups: BTreeMap<Vec<String>, Vec<String>> = BTreeMap::new();
            for r in &rows {
                groups.entry(r.adjusted_set.clone()).or_default().push(r.poly.clone());
            }
            for (set, polys) in &groups {
                text.push(format!("{{{}}}: {}", set.join(", "), polys.join(", ")));
            }
            let mut csv = vec![header(&TABLE1_CSV_COLUMNS)];
            for r in &rows {
                csv.push(vec![
                    CSV_SCHEMA_VERSION.to_string(),
                    r.poly.clone(),
                    r.a.clone(),
                    r.c.clone(),
                    r.tail.join(" "),
                    r.adjusted_set.join(" "),
                ]);
            }
            let expected_ok = field.cardinality_u64() != Some(7) || rows.len() == 12;
            Ok(Report {
                command: "reproduce",
                config: cfg.to_json(),
                result: json!({
                    "table": 1,
                    "field": field.to_json(),
                    "count": rows.len(),
                    "rows": rows.iter().map(|r| json!({
                        "polynomial": r.poly,
                        "a": r.a,
                        "c": r.c,
                        "tail": r.tail,
                        "cycle": r.cycle,
                        "adjusted_set": r.adjusted_set,
                    })).collect::<Vec<_>>(),
                }),
                text,
                csv,
                dot: None,
                exit_code: if expected_ok { 0 } else { 1 },
            })
        }
        2 => {
            let sweep_bound = 4;
            let (rows, hist) = reproduce_table2(sweep_bound)?;
            let all_match = rows.iter().all(Table2Row::matches);
            let survivors = hist.get(&0).copied().unwrap_or(0);
            let mut text = vec![format!("irreducible cubics over F_3: {}", rows.len())];
            for r in &rows {
                text.push(format!(
                    "{}: expected {}, oracle {} {}",
                    r.poly,
                    r.expected,
                    r.found.map_or("-".into(), |n| n.to_string()),
                    if r.matches() { "ok" } else { "MISMATCH" }
                ));
            }
            text.push(format!(
                "all {} cubics: least reducible iterate histogram {}",
                hist.values().sum::<usize>(),
                hist.iter()
                    .map(|(n, c)| if *n == 0 { format!(">{sweep_bound}: {c}") } else { format!("{n}: {c}") })
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            let mut csv = vec![header(&TABLE2_CSV_COLUMNS)];
            for r in &rows {
                csv.push(vec![
                    CSV_SCHEMA_VERSION.to_string(),
                    r.poly.clone(),
                    r.expected.to_string(),
                    r.found.map(|n| n.to_string()).unwrap_or_default(),
                    r.matches().to_string(),
                ]);
            }
            Ok(Report {
                command: "reproduce",
                config: cfg.to_json(),
                result: json!({
                    "table": 2,
                    "rows": rows.iter().map(|r| json!({
                        "polynomial": r.poly,
                        "expected_iterate": r.expected,
                        "found_iterate": r.found,
                        "match": r.matches(),
                    })).collect::<Vec<_>>(),
                    "sweep_bound": sweep_bound,
                    "histogram": hist.iter().map(|(n, c)| (n.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
                    "all_match": all_match,
                    "survivors": survivors,
                }),
                text,
                csv,
                dot: None,
                exit_code: if all_match && survivors == 0 { 0 } else { 1 },
            })
        }
        t => Err(Error::InvalidArgument(format!("unknown table {t}; expected 1 or 2"))),
    }
}

/// One swept polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchRow {
    pub poly: String,
    pub route: &'static str,
    pub verdict: Verdict,
}

impl SearchRow {
    /// Not refuted: proved, or irreducible through the bound.
    pub fn survives(&self) -> bool {
        self.verdict.kind != VerdictKind::ReducibleAtIterate
    }
}

fn family_members(field: &Field, family: &str, degree: usize) -> Result<Vec<Poly>> {
    let p = field.characteristic();
    let elems: Vec<_> = field.elements().collect();
    let mut out = Vec::new();
    match family {
        "unicritical" => {
            if degree < 2 {
                return Err(Error::InvalidArgument("--degree must be at least 2".into()));
            }
            for a in field.nonzero_elements() {
                for c in &elems {
                    let mut coeffs = vec![field.zero(); degree + 1];
                    coeffs[0] = c.clone();
                    coeffs[degree] = a.clone();
                    out.push(Poly::from_elems(field, &coeffs)?);
                }
            }
        }
        "depressed" => {
            for b1 in &elems {
                for b0 in &elems {
                    let coeffs = [b0.clone(), b1.clone(), field.zero(), field.one()];
                    out.push(Poly::from_elems(field, &coeffs)?);
                }
            }
        }
        "chu" => {
            if p <= 3 {
                return Err(Error::CharacteristicAtMostThree);
            }
            for alpha in &elems {
                out.push(chu_polynomial(alpha));
            }
        }
        "linearized" => {
            for a1 in field.nonzero_elements() {
                for a0 in &elems {
                    let mut coeffs = vec![field.zero(); p as usize + 1];
                    coeffs[0] = a0.clone();
                    coeffs[1] = a1.clone();
                    coeffs[p as usize] = field.one();
                    out.push(Poly::from_elems(field, &coeffs)?);
                }
            }
        }
        other => return Err(Error::UnknownFamily(other.to_string())),
    }
    Ok(out)
}

fn search_one(f: &Poly, family: &str, opts: &ClassifyOptions) -> Result<SearchRow> {
    if family == "chu" {
        // alpha is recovered from the x^2 coefficient 3*alpha
        let alpha = f.coeff(2).div(&f.field().from_u64(3))?;
        return Ok(SearchRow {
            poly: f.to_string(),
            route: "chu",
            verdict: chu_test(&alpha)?,
        });
    }
    let c = classify(f, None, opts)?;
    // an inconclusive cubic verdict is extended by the oracle when it is cheap
    let c = if c.verdict.kind == VerdictKind::IrreducibleThrough && c.route == Route::Cubic {
        let o = oracle_classify(f, &f.field().zero(), opts)?;
        if o.verdict.kind == VerdictKind::ReducibleAtIterate {
            o
        } else {
            c
        }
    } else {
        c
    };
    Ok(SearchRow {
        poly: f.to_string(),
        route: c.route.name(),
        verdict: c.verdict,
    })
}

/// Classify every member of `family` over `field`, in canonical order.
pub fn search(
    field: &Field,
    family: &str,
    degree: usize,
    opts: &ClassifyOptions,
    jobs: Option<usize>,
) -> Result<Vec<SearchRow>> {
    let members = family_members(field, family, degree)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    pool.install(|| members.par_iter().map(|f| search_one(f, family, opts)).collect())
}

pub(super) fn cmd_search(family: &str, degree: usize, cfg: &RunConfig) -> Result<Report> {
    let field = cfg.field()?;
    let rows = search(&field, family, degree, &cfg.classify_options(), cfg.jobs)?;
    let mut hist: BTreeMap<String, usize> = BTreeMap::new();
    for r in &rows {
        *hist.entry(r.verdict.to_string()).or_insert(0) += 1;
    }
    let survivors: Vec<&SearchRow> = rows.iter().filter(|r| r.survives()).collect();
    let mut text = vec![format!(
        "family {family} over {}: {} polynomials, {} survivors",
        field_name(&field),
        rows.len(),
        survivors.len()
    )];
    for r in &survivors {
        text.push(format!("  {}: {}", r.poly, r.verdict));
    }
    for (k, n) in &hist {
        text.push(format!("{k}: {n}"));
    }
    let mut csv = vec![header(&VERDICT_CSV_COLUMNS)];
    for r in &rows {
        csv.push(vec![
            CSV_SCHEMA_VERSION.to_string(),
            r.route.to_string(),
            r.poly.clone(),
            format!("{:?}", r.verdict.kind),
            r.verdict.iterate.map(|n| n.to_string()).unwrap_or_default(),
        ]);
    }
    Ok(Report {
        command: "search",
        config: cfg.to_json(),
        result: json!({
            "family": family,
            "degree": degree,
            "field": field.to_json(),
            "total": rows.len(),
            "survivors": survivors.iter().map(|r| r.poly.clone()).collect::<Vec<_>>(),
            "histogram": hist,
            "rows": rows.iter().map(|r| json!({
                "polynomial": r.poly,
                "route": r.route,
                "verdict": r.verdict.to_json(),
            })).collect::<Vec<_>>(),
        }),
        text,
        csv,
        dot: None,
        exit_code: 0,
    })
}

pub(super) fn cmd_verify_linearized(cfg: &RunConfig) -> Result<Report> {
    let fields = match cfg.p {
        Some(_) => vec![cfg.field()?],
        None => vec![
            build_field(2, &[1])?,
            build_field(2, &[2])?,
            build_field(3, &[1])?,
            build_field(5, &[1])?,
        ],
    };
    let mut text = Vec::new();
    let mut csv = vec![header(&LINEARIZED_CSV_COLUMNS)];
    let mut results: Vec<Value> = Vec::new();
    let mut all_hold = true;
    for field in &fields {
        let r = verify_theorem52(field, cfg.seed)?;
        all_hold &= r.holds();
        text.push(format!(
            "{}: {} {} instances, f irreducible {}, f^2 reducible {}, f^3 reducible {}, counterexamples {}",
            field_name(field),
            if r.exhaustive { "all" } else { "sampled" },
            r.total,
            r.irreducible_first,
            r.reducible_at_2,
            r.reducible_at_3,
            r.counterexamples.len()
        ));
        if !r.second_iterate_irreducible.is_empty() {
            text.push(format!("  f^2 irreducible: {}", r.second_iterate_irreducible.join(", ")));
        }
        csv.push(vec![
            CSV_SCHEMA_VERSION.to_string(),
            field_name(field),
            r.exhaustive.to_string(),
            r.total.to_string(),
            r.irreducible_first.to_string(),
            r.reducible_at_2.to_string(),
            r.reducible_at_3.to_string(),
            r.counterexamples.len().to_string(),
        ]);
        results.push(r.to_json());
    }
    text.push(format!("theorem holds: {all_hold}"));
    Ok(Report {
        command: "verify-linearized",
        config: cfg.to_json(),
        result: json!({"fields": results, "holds": all_hold}),
        text,
        csv,
        dot: None,
        exit_code: if all_hold { 0 } else { 1 },
    })
}
