//! Shape dispatch for a single polynomial: linearized, unicritical, cubic, or
//! the factorization oracle as a fallback.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::cubic::{depress, recursive_report, CubicOptions, DepressedCubic, CSV_COLUMNS};
use crate::error::{Error, Result};
use crate::ffield::FieldElem;
use crate::linearized::{cohen_test, ShiftedLinearized};
use crate::polyring::{factor_seeded, is_irreducible, roots_in_field, Poly};
use crate::unicritical::{detect_unicritical, orbit, pair_verdict, unicritical_verdict};
use crate::verdict::{Reason, Verdict};

/// Largest iterate degree the oracle fallback factors.
pub const ORACLE_DEGREE_LIMIT: usize = 729;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub n_max: usize,
    pub oracle_max: usize,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            n_max: 10,
            oracle_max: 5,
            seed: crate::polyring::DEFAULT_SEED,
        }
    }
}

/// Which decision procedure handled the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Linearized,
    Unicritical,
    Cubic,
    Oracle,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Linearized => "linearized",
            Route::Unicritical => "unicritical",
            Route::Cubic => "cubic",
            Route::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub route: Route,
    pub verdict: Verdict,
    /// Route-specific evidence (orbit, sequences, norms, oracle checks).
    pub evidence: Value,
    /// Human-readable evidence lines.
    pub text: Vec<String>,
    /// CSV header and rows (first column is the schema version).
    pub csv: Vec<Vec<String>>,
}

/// Frozen CSV layout for verdict-only rows; bump the version on change.
pub const VERDICT_CSV_COLUMNS: [&str; 5] = ["csv_version", "route", "polynomial", "verdict", "iterate"];
/// Frozen CSV layout for unicritical adjusted values.
pub const ORBIT_CSV_COLUMNS: [&str; 6] = ["csv_version", "n", "value", "r", "is_rth_power", "witness"];
/// Frozen CSV layout for oracle checks.
pub const ORACLE_CSV_COLUMNS: [&str; 4] = ["csv_version", "iterate", "degree", "irreducible"];
pub const CSV_SCHEMA_VERSION: u32 = 1;

fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|c| c.to_string()).collect()
}

/// Decide (or bound) dynamical irreducibility of `f`, or of the pair
/// `(f, beta)` when `beta` is given (iterate `n` then means `f^n - beta`).
pub fn classify(f: &Poly, beta: Option<&FieldElem>, opts: &ClassifyOptions) -> Result<Classification> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d < 2 {
        return Err(Error::InvalidArgument("polynomial must have degree at least 2".into()));
    }
    let field = f.field();
    let p = field.characteristic();
    let zero = field.zero();
    let beta_v = beta.unwrap_or(&zero);
    if beta.is_none() && d as u64 == p {
        if let Ok(lin) = ShiftedLinearized::from_poly(f) {
            return classify_linearized(f, &lin, opts);
        }
    }
    if !(d as u64).is_multiple_of(p) {
        if let Some(u) = detect_unicritical(f)? {
            if beta.is_none() {
                return classify_unicritical(f, &u);
            }
            // pair (f, beta) with f unicritical: conjugate to the centered form
            let (h, b) = (u.centered.clone(), beta_v.sub(&u.gamma)?);
            let verdict = pair_verdict(&h, &b)?;
            return Ok(Classification {
                route: Route::Unicritical,
                text: vec![format!("centered pair: ({h}, {b})")],
                evidence: json!({"centered": h.to_string(), "beta": b.to_string()}),
                csv: verdict_csv(Route::Unicritical, f, &verdict),
                verdict,
            });
        }
    }
    if d == 3 && p > 3 {
        let mut h = depress(f)?;
        if let Some(b) = beta {
            // f^n - b = h^n(x + s) - s - b
            h.beta0 = h.beta0.add(b)?;
        }
        return classify_cubic(&h, opts);
    }
    oracle_classify(f, beta_v, opts)
}

fn verdict_csv(route: Route, f: &Poly, v: &Verdict) -> Vec<Vec<String>> {
    vec![
        header(&VERDICT_CSV_COLUMNS),
        vec![
            CSV_SCHEMA_VERSION.to_string(),
            route.name().to_string(),
            f.to_string(),
            format!("{:?}", v.kind),
            v.iterate.map(|n| n.to_string()).unwrap_or_default(),
        ],
    ]
}

fn classify_linearized(f: &Poly, lin: &ShiftedLinearized, opts: &ClassifyOptions) -> Result<Classification> {
    let cohen = cohen_test(lin)?;
    let p = lin.p;
    let mut text = vec![format!(
        "Cohen: A = {}, trace = {}, irreducible = {}",
        cohen.witness.a.as_ref().map_or("none".into(), |a| a.to_string()),
        cohen.witness.trace_value.as_ref().map_or("-".into(), |t| t.to_string()),
        cohen.irreducible
    )];
    let verdict = if !cohen.irreducible {
        Verdict::reducible_at(
            1,
            Reason::Theorem {
                name: "cohen".into(),
                detail: "no A with A^(p-1) = a_1, or Tr(a_0/A^p) = 0".into(),
            },
        )
    } else if p >= 3 {
        Verdict::reducible_at(
            2,
            Reason::Theorem {
                name: "shifted linearized second iterate".into(),
                detail: "f^2 is reducible for p >= 3".into(),
            },
        )
    } else if !is_irreducible(&f.iterate(2)?)? {
        Verdict::reducible_at(
            2,
            Reason::Theorem {
                name: "shifted linearized second iterate".into(),
                detail: "f^2 is reducible (oracle)".into(),
            },
        )
    } else {
        Verdict::reducible_at(
            3,
            Reason::Theorem {
                name: "shifted linearized third iterate".into(),
                detail: "f^3 is reducible for p = 2".into(),
            },
        )
    };
    let mut checks = Vec::new();
    let upto = verdict.iterate.unwrap_or(1).min(opts.oracle_max.max(1));
    for n in 1..=upto {
        let deg = (p as usize).pow(n as u32);
        if deg > ORACLE_DEGREE_LIMIT {
            break;
        }
        let irr = is_irreducible(&f.iterate(n)?)?;
        checks.push(json!({"iterate": n, "degree": deg, "irreducible": irr}));
        text.push(format!("oracle: iterate {n} (degree {deg}) irreducible = {irr}"));
    }
    Ok(Classification {
        route: Route::Linearized,
        evidence: json!({"cohen": cohen.to_json(), "oracle": checks}),
        csv: verdict_csv(Route::Linearized, f, &verdict),
        verdict,
        text,
    })
}

fn classify_unicritical(f: &Poly, u: &crate::unicritical::UnicriticalForm) -> Result<Classification> {
    let (report, verdict) = unicritical_verdict(u)?;
    let mut text = vec![format!("centered form: {} (critical point {})", u.centered, u.gamma)];
    let mut csv = vec![header(&ORBIT_CSV_COLUMNS)];
    let evidence = match &report {
        Some(r) => {
            let set: Vec<String> = r.adjusted_set().iter().map(|e| e.to_string()).collect();
            text.push(format!(
                "critical orbit: tail [{}], cycle [{}]",
                join(&r.tail),
                join(&r.cycle)
            ));
            text.push(format!("adjusted critical orbit: {{{}}}", set.join(", ")));
            for a in &r.adjusted_values {
                for t in &a.tests {
                    csv.push(vec![
                        CSV_SCHEMA_VERSION.to_string(),
                        a.n.to_string(),
                        t.value.to_string(),
                        t.r.to_string(),
                        t.is_rth_power.to_string(),
                        t.witness.as_ref().map(|w| w.to_string()).unwrap_or_default(),
                    ]);
                }
            }
            r.to_json()
        }
        None => {
            text.push("congruence hypotheses fail: the first iterate has a root".into());
            json!(null)
        }
    };
    let _ = f;
    Ok(Classification {
        route: Route::Unicritical,
        verdict,
        evidence,
        text,
        csv,
    })
}

fn join(v: &[FieldElem]) -> String {
    v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
}

/// Recursive cubic test on a depressed form.
pub fn classify_cubic(h: &DepressedCubic, opts: &ClassifyOptions) -> Result<Classification> {
    let copts = CubicOptions {
        n_max: opts.n_max,
        oracle_max: opts.oracle_max,
        ..CubicOptions::default()
    };
    let r = recursive_report(h, &copts)?;
    let mut text = vec![format!("depressed form: h = {}, beta0 = {}", h.poly(), h.beta0)];
    text.push(format!(
        "condition 1 (iterates 1..): [{}]{}",
        join(&r.condition1.values),
        match &r.condition1.periodic_certificate {
            Some((t, c)) => format!(" = tail [{}] then cycle [{}]", join(t), join(c)),
            None => String::new(),
        }
    ));
    for l in &r.levels {
        let mut line = String::new();
        let _ = write!(
            line,
            "level {}: cond1 {} (square {}), branch {}",
            l.n, l.cond1_value, l.cond1_square, l.mu_branch
        );
        if let Some(nv) = &l.cond2_norm {
            let _ = write!(line, ", cond2 norm {nv} (cube {})", l.cond2_cube.unwrap_or(false));
        }
        let _ = write!(line, " -> {}", l.verdict);
        text.push(line);
    }
    for c in &r.oracle {
        text.push(format!(
            "oracle: iterate {} (degree {}) irreducible = {}{}",
            c.iterate,
            c.degree,
            c.irreducible,
            if c.agrees { "" } else { "  ** DISAGREES **" }
        ));
    }
    let mut csv = vec![header(&CSV_COLUMNS)];
    csv.extend(r.levels.iter().map(|l| l.csv_row()));
    Ok(Classification {
        route: Route::Cubic,
        verdict: r.verdict.clone(),
        evidence: r.to_json(),
        text,
        csv,
    })
}

/// Least `n <= n_max` with `f^n - beta` reducible, by factorization.
pub fn oracle_classify(f: &Poly, beta: &FieldElem, opts: &ClassifyOptions) -> Result<Classification> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    let mut checks = Vec::new();
    let mut text = Vec::new();
    let mut csv = vec![header(&ORACLE_CSV_COLUMNS)];
    let mut verdict = None;
    let mut last_ok = 0;
    let mut iter = Poly::x(f.field());
    for n in 1..=opts.n_max {
        let deg = match d.checked_pow(n as u32) {
            Some(deg) if deg <= ORACLE_DEGREE_LIMIT => deg,
            _ => break,
        };
        iter = f.compose(&iter)?;
        let target = iter.sub_const(beta)?;
        let irr = is_irreducible(&target)?;
        checks.push(json!({"iterate": n, "degree": deg, "irreducible": irr}));
        csv.push(vec![
            CSV_SCHEMA_VERSION.to_string(),
            n.to_string(),
            deg.to_string(),
            irr.to_string(),
        ]);
        text.push(format!("oracle: iterate {n} (degree {deg}) irreducible = {irr}"));
        if !irr {
            let factors = factor_seeded(&target, opts.seed)?;
            let smallest = factors
                .factors
                .iter()
                .min_by_key(|(g, _)| g.degree())
                .map(|(g, _)| g.clone())
                .expect("reducible polynomial has factors");
            verdict = Some(Verdict::reducible_at(
                n,
                Reason::OracleFactor {
                    degree: smallest.degree().unwrap_or(0),
                    factor: smallest.to_string(),
                },
            ));
            break;
        }
        last_ok = n;
    }
    let verdict = verdict.unwrap_or_else(|| {
        Verdict::irreducible_through(last_ok, format!("oracle checked iterates 1..={last_ok}"))
    });
    Ok(Classification {
        route: Route::Oracle,
        verdict,
        evidence: json!({"oracle": checks}),
        text,
        csv,
    })
}

/// DOT digraph of the forward orbits of the critical points lying in `F_q`.
pub fn critical_portrait_dot(f: &Poly, name: &str) -> Result<String> {
    let mut crit = roots_in_field(&f.derivative())?;
    crit.sort();
    crit.dedup();
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", name.replace('"', "'"));
    let _ = writeln!(out, "  rankdir=LR;");
    let mut nodes: Vec<FieldElem> = Vec::new();
    let mut edges: Vec<(FieldElem, FieldElem)> = Vec::new();
    for c in &crit {
        let (tail, cycle) = orbit(f, c)?;
        let pts: Vec<FieldElem> = tail.iter().chain(&cycle).cloned().collect();
        for (i, pt) in pts.iter().enumerate() {
            if !nodes.contains(pt) {
                nodes.push(pt.clone());
            }
            let next = if i + 1 < pts.len() { pts[i + 1].clone() } else { cycle[0].clone() };
            if !edges.contains(&(pt.clone(), next.clone())) {
                edges.push((pt.clone(), next));
            }
        }
    }
    for c in &crit {
        let _ = writeln!(out, "  \"{c}\" [shape=box];");
    }
    for n in &nodes {
        if !crit.contains(n) {
            let _ = writeln!(out, "  \"{n}\";");
        }
    }
    for (a, b) in &edges {
        let _ = writeln!(out, "  \"{a}\" -> \"{b}\";");
    }
    out.push_str("}\n");
    Ok(out)
}
