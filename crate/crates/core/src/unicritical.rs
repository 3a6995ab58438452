//! Dynamical irreducibility of unicritical polynomials via the adjusted
//! critical orbit, and of pairs `(a*x^d + c, beta)`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffield::{is_rth_power, Field, FieldElem, ResidueVerdict};
use crate::intarith::prime_divisors;
use crate::polyring::{affine_conjugate, is_irreducible, Poly};
use crate::verdict::{Reason, Verdict};

/// A unicritical polynomial together with its centered conjugate `a*x^d + c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnicriticalForm {
    pub original: Poly,
    pub degree: usize,
    /// The unique affine critical point.
    pub gamma: FieldElem,
    /// Lead coefficient.
    pub a: FieldElem,
    /// `f(x + gamma) - gamma = a*x^d + c`.
    pub centered: Poly,
    pub c: FieldElem,
    /// Target of the equivalent pair test; `-gamma` for `f` itself.
    pub beta: FieldElem,
}

/// Detect `f' = d*a*(x - gamma)^(d-1)` and a centered conjugate `a*x^d + c`.
pub fn detect_unicritical(f: &Poly) -> Result<Option<UnicriticalForm>> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d < 2 {
        return Err(Error::InvalidArgument("unicritical detection needs degree >= 2".into()));
    }
    let field = f.field();
    let p = field.characteristic();
    if (d as u64).is_multiple_of(p) {
        return Err(Error::CharacteristicDividesDegree(d));
    }
    let a = f.lead();
    let da = a.mul(&field.from_u64(d as u64))?;
    let gamma = f.coeff(d - 1).neg().div(&da)?;
    let expected = Poly::x(field).sub_const(&gamma)?.pow(d - 1)?.scale(&da)?;
    if f.derivative() != expected {
        return Ok(None);
    }
    // f(x + gamma) - gamma, i.e. the conjugate by phi(x) = x - gamma
    let centered = affine_conjugate(f, &field.one(), &gamma.neg())?;
    if !is_centered(&centered) {
        // monomials x^(kp) survive differentiation; such f is not of the shape
        return Ok(None);
    }
    let c = centered.coeff(0);
    Ok(Some(UnicriticalForm {
        original: f.clone(),
        degree: d,
        beta: gamma.neg(),
        gamma,
        a,
        centered,
        c,
    }))
}

fn is_centered(h: &Poly) -> bool {
    match h.degree() {
        Some(d) if d >= 2 => (1..d).all(|i| h.coeff(i).is_zero()),
        _ => false,
    }
}

/// Outcome of the congruence hypotheses `q = 1 mod r` (`r | d` prime) and
/// `q = 1 mod 4` when `4 | d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub ok: bool,
    pub fails: Vec<String>,
}

pub fn hypothesis_check(d: usize, field: &Field) -> HypothesisReport {
    let q = field.cardinality();
    let mut fails = Vec::new();
    for r in prime_divisors(d as u64) {
        if q % r != 1u32.into() {
            fails.push(format!("q = 1 mod {r}"));
        }
    }
    if d.is_multiple_of(4) && q % 4u32 != 1u32.into() {
        fails.push("q = 1 mod 4".to_string());
    }
    HypothesisReport {
        ok: fails.is_empty(),
        fails,
    }
}

/// Exponents tested: the primes dividing `d`, plus 4 when `4 | d`.
pub fn residue_exponents(d: usize) -> Vec<u64> {
    let mut rs = prime_divisors(d as u64);
    if d.is_multiple_of(4) {
        rs.push(4);
    }
    rs
}

/// One member of the adjusted critical orbit with its residue tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjustedValue {
    /// First iterate at which the value occurs.
    pub n: usize,
    pub value: FieldElem,
    /// One verdict per exponent; for `n = 1` and `r = 4` the tested value is
    /// `(c - beta)/(4a)` as recorded inside the verdict.
    pub tests: Vec<ResidueVerdict>,
}

/// Forward orbit of a seed split into tail and cycle, with the adjusted values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub seed: FieldElem,
    pub tail: Vec<FieldElem>,
    pub cycle: Vec<FieldElem>,
    pub adjusted_values: Vec<AdjustedValue>,
    pub verdict: Verdict,
}

impl OrbitReport {
    /// `f^n(seed)` replayed from the tail and cycle.
    pub fn point(&self, n: usize) -> &FieldElem {
        if n < self.tail.len() {
            &self.tail[n]
        } else {
            &self.cycle[(n - self.tail.len()) % self.cycle.len()]
        }
    }

    /// Distinct adjusted values in canonical order.
    pub fn adjusted_set(&self) -> Vec<FieldElem> {
        let mut v: Vec<FieldElem> = self.adjusted_values.iter().map(|a| a.value.clone()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn to_json(&self) -> Value {
        let s = |v: &[FieldElem]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>();
        json!({
            "seed": self.seed.to_string(),
            "tail": s(&self.tail),
            "cycle": s(&self.cycle),
            "adjusted_set": s(&self.adjusted_set()),
            "adjusted_values": self.adjusted_values.iter().map(|a| json!({
                "n": a.n,
                "value": a.value.to_string(),
                "tests": a.tests.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "verdict": self.verdict.to_json(),
        })
    }

    /// Critical portrait as a DOT digraph: one node per orbit value, edges labelled `f`.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", name.replace('"', "'"));
        let _ = writeln!(out, "  rankdir=LR;");
        let pts: Vec<&FieldElem> = self.tail.iter().chain(&self.cycle).collect();
        for p in &pts {
            let _ = writeln!(out, "  \"{p}\";");
        }
        for w in pts.windows(2) {
            let _ = writeln!(out, "  \"{}\" -> \"{}\" [label=\"f\"];", w[0], w[1]);
        }
        let last = pts.last().expect("orbit nonempty");
        let _ = writeln!(out, "  \"{}\" -> \"{}\" [label=\"f\"];", last, self.cycle[0]);
        out.push_str("}\n");
        out
    }
}

/// Forward orbit of `seed` under `f`, as (tail, cycle), via a visited map.
pub fn orbit(f: &Poly, seed: &FieldElem) -> Result<(Vec<FieldElem>, Vec<FieldElem>)> {
    let mut seen: HashMap<FieldElem, usize> = HashMap::new();
    let mut pts = Vec::new();
    let mut cur = seed.clone();
    while !seen.contains_key(&cur) {
        seen.insert(cur.clone(), pts.len());
        pts.push(cur.clone());
        cur = f.eval(&cur)?;
    }
    let start = seen[&cur];
    let cycle = pts.split_off(start);
    Ok((pts, cycle))
}

/// Core of the pair theorem: scan `v_1 = -(c - beta)/a` and
/// `v_n = (h^n(0) - beta)/a`, `n >= 2`, until the orbit repeats.
fn scan_pair(h: &Poly, beta: &FieldElem) -> Result<(Vec<AdjustedValue>, Verdict)> {
    let d = h.degree().expect("centered");
    let a = h.lead();
    let c = h.coeff(0);
    let rs = residue_exponents(d);
    let mut values: Vec<AdjustedValue> = Vec::new();

    let test = |n: usize, v: &FieldElem, values: &mut Vec<AdjustedValue>| -> Result<Option<Verdict>> {
        let mut tests = Vec::new();
        let mut hit = None;
        for &r in &rs {
            let tested = if n == 1 && r == 4 {
                c.sub(beta)?.div(&a.scale(4))?
            } else {
                v.clone()
            };
            let t = is_rth_power(&tested, r)?;
            if t.is_rth_power && hit.is_none() {
                hit = Some(Verdict::reducible_at(
                    n,
                    Reason::PowerFound {
                        value: tested.to_string(),
                        r,
                        witness: t.witness.as_ref().expect("power").to_string(),
                    },
                ));
            }
            tests.push(t);
        }
        values.push(AdjustedValue {
            n,
            value: v.clone(),
            tests,
        });
        Ok(hit)
    };

    let v1 = c.sub(beta)?.neg().div(&a)?;
    if let Some(v) = test(1, &v1, &mut values)? {
        return Ok((values, v));
    }
    // orbit points h^n(0) for n >= 2; once one repeats, so does everything after
    let mut seen_points: HashMap<FieldElem, usize> = HashMap::new();
    let mut point = h.eval(&c)?;
    let mut n = 2;
    while !seen_points.contains_key(&point) {
        seen_points.insert(point.clone(), n);
        let v = point.sub(beta)?.div(&a)?;
        if let Some(verdict) = test(n, &v, &mut values)? {
            return Ok((values, verdict));
        }
        point = h.eval(&point)?;
        n += 1;
    }
    Ok((values, Verdict::proved("adjusted critical orbit has no r-th powers")))
}

fn hypothesis_verdict(report: &HypothesisReport) -> Verdict {
    Verdict::reducible_at(
        1,
        Reason::HypothesisFailure {
            conditions: report.fails.clone(),
        },
    )
}

/// Decide the pair `(h, beta)` for centered `h = a*x^d + c`.
///
/// Errors with `HypothesisFailure` when the congruence hypotheses fail; in that
/// case `h - beta` has a root (see [`pair_verdict`] for the mapped verdict).
pub fn pair_test(h: &Poly, beta: &FieldElem) -> Result<Verdict> {
    if !is_centered(h) {
        return Err(Error::NotCentered);
    }
    if !beta.field().same_as(h.field()) {
        return Err(Error::FieldMismatch);
    }
    let d = h.degree().expect("centered");
    if (d as u64).is_multiple_of(h.field().characteristic()) {
        return Err(Error::CharacteristicDividesDegree(d));
    }
    let hyp = hypothesis_check(d, h.field());
    if !hyp.ok {
        return Err(Error::HypothesisFailure(hyp.fails.join(", ")));
    }
    Ok(scan_pair(h, beta)?.1)
}

/// [`pair_test`] with a hypothesis failure mapped to `ReducibleAtIterate(1)`.
pub fn pair_verdict(h: &Poly, beta: &FieldElem) -> Result<Verdict> {
    match pair_test(h, beta) {
        Err(Error::HypothesisFailure(_)) => Ok(hypothesis_verdict(&hypothesis_check(
            h.degree().expect("centered"),
            h.field(),
        ))),
        other => other,
    }
}

/// Adjusted critical orbit of a unicritical polynomial with its verdict.
///
/// The orbit is that of `gamma` under the original polynomial; the adjusted
/// values are `-f(gamma)/a` and `f^n(gamma)/a` for `n > 1`.
pub fn adjusted_critical_orbit(u: &UnicriticalForm) -> Result<OrbitReport> {
    let hyp = hypothesis_check(u.degree, u.original.field());
    if !hyp.ok {
        return Err(Error::HypothesisFailure(hyp.fails.join(", ")));
    }
    let (tail, cycle) = orbit(&u.original, &u.gamma)?;
    let (adjusted_values, verdict) = scan_pair(&u.centered, &u.beta)?;
    Ok(OrbitReport {
        seed: u.gamma.clone(),
        tail,
        cycle,
        adjusted_values,
        verdict,
    })
}

/// Lemma step: is `g o h^n` irreducible, given that `g o h^(n-1)` is?
///
/// Uses only base-field residue tests on `g(h^(n-1)(c))` divided by
/// `C = (-a)^k l(g)` (`n = 1`) or `a^k l(g)` (`n > 1`), and by
/// `D = (4a)^k l(g)` (`n = 1`) or `a^k l(g)` (`n > 1`) for the 4th-power test.
pub fn step_test(g: &Poly, h: &Poly, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("step index starts at 1".into()));
    }
    if !is_centered(h) {
        return Err(Error::NotCentered);
    }
    let d = h.degree().expect("centered");
    let hyp = hypothesis_check(d, h.field());
    if !hyp.ok {
        return Err(Error::HypothesisFailure(hyp.fails.join(", ")));
    }
    let k = g.degree().ok_or(Error::ZeroPolynomial)?;
    if k == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let prev = g.compose(&h.iterate(n - 1)?)?;
    if !is_irreducible(&prev)? {
        return Err(Error::PreviousIterateReducible);
    }
    let a = h.lead();
    let c = h.coeff(0);
    let lg = g.lead();
    let mut point = c.clone();
    for _ in 1..n {
        point = h.eval(&point)?;
    }
    let num = g.eval(&point)?;
    let (cc, dd) = if n == 1 {
        (
            a.neg().pow_u64(k as u64).mul(&lg)?,
            a.scale(4).pow_u64(k as u64).mul(&lg)?,
        )
    } else {
        let ak = a.pow_u64(k as u64).mul(&lg)?;
        (ak.clone(), ak)
    };
    for r in prime_divisors(d as u64) {
        if is_rth_power(&num.div(&cc)?, r)?.is_rth_power {
            return Ok(false);
        }
    }
    if d.is_multiple_of(4) && is_rth_power(&num.div(&dd)?, 4)?.is_rth_power {
        return Ok(false);
    }
    Ok(true)
}

/// Verdict for a unicritical polynomial, hypotheses failures included.
pub fn unicritical_verdict(u: &UnicriticalForm) -> Result<(Option<OrbitReport>, Verdict)> {
    let hyp = hypothesis_check(u.degree, u.original.field());
    if !hyp.ok {
        return Ok((None, hypothesis_verdict(&hyp)));
    }
    let report = adjusted_critical_orbit(u)?;
    let v = report.verdict.clone();
    Ok((Some(report), v))
}
