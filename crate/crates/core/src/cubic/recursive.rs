//! Level-by-level driver: condition 1 then condition 2 at each level `n`,
//! deciding iterate `n + 1`, with oracle cross-checks on small iterates.

use serde_json::{json, Value};

use super::condition::{
    condition1_sequence, condition2_check, Branch, Condition1Report, Condition2Context,
};
use super::DepressedCubic;
use crate::error::{Error, Result};
use crate::ffield::FieldElem;
use crate::polyring::is_irreducible;
use crate::verdict::{Reason, Verdict};

/// Largest iterate degree handed to the factorization oracle.
const ORACLE_DEGREE_LIMIT: usize = 729;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubicOptions {
    /// Highest level tested; iterates up to `n_max + 1` are decided.
    pub n_max: usize,
    /// Iterates `1..=oracle_max` are cross-checked by factorization.
    pub oracle_max: usize,
    /// Levels whose degree `3^n` over `F_q` exceeds this are not built; the
    /// run then ends with `IrreducibleThrough` at the last decided iterate.
    pub max_tower_degree: usize,
    pub branch: Branch,
}

impl Default for CubicOptions {
    fn default() -> Self {
        CubicOptions {
            n_max: 10,
            oracle_max: 5,
            max_tower_degree: 243,
            branch: Branch::default(),
        }
    }
}

/// Per-level record; the CSV emitter writes these fields in [`CSV_COLUMNS`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelRecord {
    pub n: usize,
    pub cond1_value: FieldElem,
    pub cond1_square: bool,
    pub mu_branch: String,
    pub cond2_norm: Option<FieldElem>,
    pub cond2_cube: Option<bool>,
    /// `pass`, `cond1_fail`, `cond2_fail` or `not_built`.
    pub verdict: String,
}

/// Frozen CSV layout for level records; bump [`CSV_VERSION`] on any change.
pub const CSV_COLUMNS: [&str; 8] = [
    "csv_version",
    "n",
    "cond1_value",
    "cond1_square",
    "mu_branch",
    "cond2_norm",
    "cond2_cube",
    "verdict",
];
pub const CSV_VERSION: u32 = 1;

impl LevelRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "cond1_value": self.cond1_value.to_string(),
            "cond1_square": self.cond1_square,
            "mu_branch": self.mu_branch,
            "cond2_norm": self.cond2_norm.as_ref().map(|v| v.to_string()),
            "cond2_cube": self.cond2_cube,
            "verdict": self.verdict,
        })
    }

    pub fn csv_row(&self) -> Vec<String> {
        vec![
            CSV_VERSION.to_string(),
            self.n.to_string(),
            self.cond1_value.to_string(),
            self.cond1_square.to_string(),
            self.mu_branch.clone(),
            self.cond2_norm.as_ref().map(|v| v.to_string()).unwrap_or_default(),
            self.cond2_cube.map(|b| b.to_string()).unwrap_or_default(),
            self.verdict.clone(),
        ]
    }
}

/// Factorization-oracle check of one iterate against the recursive verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCheck {
    pub iterate: usize,
    pub degree: usize,
    pub irreducible: bool,
    pub agrees: bool,
}

impl OracleCheck {
    pub fn to_json(&self) -> Value {
        json!({
            "iterate": self.iterate,
            "degree": self.degree,
            "irreducible": self.irreducible,
            "agrees": self.agrees,
        })
    }
}

#[derive(Debug, Clone)]
pub struct CubicReport {
    pub h: DepressedCubic,
    pub condition1: Condition1Report,
    pub levels: Vec<LevelRecord>,
    pub oracle: Vec<OracleCheck>,
    pub verdict: Verdict,
}

impl CubicReport {
    pub fn oracle_agrees(&self) -> bool {
        self.oracle.iter().all(|c| c.agrees)
    }

    /// Condition-2 norms in level order (levels that got that far).
    pub fn cond2_norms(&self) -> Vec<FieldElem> {
        self.levels.iter().filter_map(|l| l.cond2_norm.clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "depressed": self.h.to_json(),
            "condition1": self.condition1.to_json(),
            "levels": self.levels.iter().map(|l| l.to_json()).collect::<Vec<_>>(),
            "oracle": self.oracle.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "verdict": self.verdict.to_json(),
        })
    }
}

/// Verdict of the recursive test with default options and the given level bound.
pub fn recursive_test(h: &DepressedCubic, n_max: usize) -> Result<Verdict> {
    let opts = CubicOptions {
        n_max,
        ..CubicOptions::default()
    };
    Ok(recursive_report(h, &opts)?.verdict)
}

/// Full recursive run with per-level records and oracle cross-checks.
pub fn recursive_report(h: &DepressedCubic, opts: &CubicOptions) -> Result<CubicReport> {
    if h.field().characteristic() <= 3 {
        return Err(Error::CharacteristicAtMostThree);
    }
    let cond1 = condition1_sequence(h, opts.n_max + 1)?;
    let ctx = Condition2Context::new(h)?;
    let mut levels = Vec::new();
    let mut verdict = None;
    for n in 0..=opts.n_max {
        let m = n + 1;
        let c1 = cond1.value(m).expect("computed through n_max + 1");
        let c1_ok = cond1.squares[n];
        let mut record = LevelRecord {
            n,
            cond1_value: c1.clone(),
            cond1_square: c1_ok,
            mu_branch: opts.branch.label(),
            cond2_norm: None,
            cond2_cube: None,
            verdict: "pass".into(),
        };
        if !c1_ok {
            record.verdict = "cond1_fail".into();
            levels.push(record);
            verdict = Some(Verdict::reducible_at(
                m,
                Reason::NotNonzeroSquare {
                    quantity: format!("-3 (h^{m}(g1) - beta0)(h^{m}(g2) - beta0)"),
                    value: c1.to_string(),
                },
            ));
            break;
        }
        let within_budget = Condition2Context::level_degree(n)
            .is_some_and(|d| d <= opts.max_tower_degree);
        if !within_budget {
            record.verdict = "not_built".into();
            levels.push(record);
            verdict = Some(Verdict::irreducible_through(
                n,
                format!(
                    "level {n} has degree 3^{n} over F_q, above the tower budget {}",
                    opts.max_tower_degree
                ),
            ));
            break;
        }
        let state = ctx.level(n)?;
        let out = condition2_check(h, &state, opts.branch)?;
        record.cond2_norm = Some(out.norm_value.clone());
        record.cond2_cube = Some(out.is_cube);
        if !out.passes {
            record.verdict = "cond2_fail".into();
            levels.push(record);
            verdict = Some(Verdict::reducible_at(
                m,
                Reason::CubeFound {
                    quantity: format!("N(v_{n}) over F_q(sqrt(-3))"),
                    value: out.norm_value.to_string(),
                    witness: out.witness.map(|w| w.to_string()).unwrap_or_default(),
                },
            ));
            break;
        }
        levels.push(record);
    }
    let verdict = verdict.unwrap_or_else(|| {
        let through = opts.n_max + 1;
        let tail = match (&cond1.periodic_certificate, cond1.first_failure) {
            (Some(_), None) => "condition 1 holds for every iterate (periodic)".to_string(),
            (_, Some(m)) => format!("condition 1 fails at iterate {m}"),
            (None, None) => "condition 1 not certified beyond the bound".to_string(),
        };
        Verdict::irreducible_through(
            through,
            format!("condition 2 passes through level {}; {tail}", opts.n_max),
        )
    });
    let oracle = oracle_checks(h, &verdict, opts.oracle_max)?;
    Ok(CubicReport {
        h: h.clone(),
        condition1: cond1,
        levels,
        oracle,
        verdict,
    })
}

/// Factor iterates `1..=oracle_max` (degree at most 729) and compare with the verdict.
fn oracle_checks(h: &DepressedCubic, verdict: &Verdict, oracle_max: usize) -> Result<Vec<OracleCheck>> {
    let reducible_at = verdict.reducible_iterate();
    let decided = reducible_at.or(verdict.iterate).unwrap_or(0);
    let mut out = Vec::new();
    for m in 1..=oracle_max.min(decided) {
        let degree = 3usize.pow(m as u32);
        if degree > ORACLE_DEGREE_LIMIT {
            break;
        }
        let irreducible = is_irreducible(&h.target_poly(m)?)?;
        let expected = reducible_at.is_none_or(|r| m < r);
        out.push(OracleCheck {
            iterate: m,
            degree,
            irreducible,
            agrees: irreducible == expected,
        });
    }
    Ok(out)
}
