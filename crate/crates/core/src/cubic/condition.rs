//! The two conditions of the recursive cubic test.
//!
//! Condition 1 at iterate `m` asks that `-3 (h^m(g1) - beta0)(h^m(g2) - beta0)`
//! be a nonzero square in `F_q`, `g1, g2` the critical points of `h`.
//! Condition 2 at level `n` asks that `v = (1/2)(-B_n + mu_n sqrt(-3))` not be a
//! cube in `F_q(sqrt(-3), beta_n)`, where `B_n = (b0 - beta_n)/b3`, `beta_n` a
//! root of `h^n(x) - beta0`, and `81 mu_n^2 = -4 (b1/b3)^3 - 27 B_n^2`.

use std::collections::HashMap;

use serde_json::{json, Value};

use super::DepressedCubic;
use crate::error::{Error, Result};
use crate::ffield::{adjoin_sqrt_minus3, is_rth_power, norm, sqrt, Field, FieldElem};

/// Cap on pair-orbit steps before giving up on an exact periodicity certificate.
const CYCLE_SEARCH_LIMIT: usize = 1 << 20;

/// Condition-1 values indexed by iterate: `values[i]` belongs to iterate `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition1Report {
    pub values: Vec<FieldElem>,
    /// Nonzero-square flag per entry of `values`.
    pub squares: Vec<bool>,
    /// True when every value (for all iterates when `periodic_certificate` is
    /// present, else for the listed ones) is a nonzero square.
    pub all_square: bool,
    /// First iterate whose value is zero or a nonsquare.
    pub first_failure: Option<usize>,
    /// Values of the eventually periodic sequence: the pre-periodic part and
    /// one full period, starting at iterate 1.
    pub periodic_certificate: Option<(Vec<FieldElem>, Vec<FieldElem>)>,
}

impl Condition1Report {
    /// Value at iterate `m >= 1`, replayed from the certificate when needed.
    pub fn value(&self, m: usize) -> Option<FieldElem> {
        if m == 0 {
            return None;
        }
        if let Some(v) = self.values.get(m - 1) {
            return Some(v.clone());
        }
        let (tail, cycle) = self.periodic_certificate.as_ref()?;
        let i = m - 1;
        if i < tail.len() {
            Some(tail[i].clone())
        } else {
            Some(cycle[(i - tail.len()) % cycle.len()].clone())
        }
    }

    pub fn to_json(&self) -> Value {
        let strs = |v: &[FieldElem]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>();
        json!({
            "values": strs(&self.values),
            "squares": self.squares,
            "all_square": self.all_square,
            "first_failure": self.first_failure,
            "periodic_certificate": self.periodic_certificate.as_ref().map(|(t, c)| json!({
                "tail": strs(t),
                "cycle": strs(c),
            })),
        })
    }
}

/// `U + V y` with `y^2 = delta`: the critical points are `±y`, and the
/// conjugation `y -> -y` swaps them, so each condition-1 value lies in `F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct PairPoint {
    u: FieldElem,
    v: FieldElem,
}

struct PairAlgebra<'a> {
    h: &'a DepressedCubic,
    delta: FieldElem,
}

impl PairAlgebra<'_> {
    fn new(h: &DepressedCubic) -> Result<PairAlgebra<'_>> {
        let three_b3 = h.b3.scale(3);
        if three_b3.is_zero() {
            return Err(Error::InseparableDerivative);
        }
        let delta = h.b1.neg().div(&three_b3)?;
        Ok(PairAlgebra { h, delta })
    }

    fn mul(&self, a: &PairPoint, b: &PairPoint) -> PairPoint {
        let m = |x: &FieldElem, y: &FieldElem| x.mul(y).expect("same field");
        let uu = m(&a.u, &b.u);
        let vv = m(&m(&a.v, &b.v), &self.delta);
        let uv = m(&a.u, &b.v).add(&m(&a.v, &b.u)).expect("same field");
        PairPoint {
            u: uu.add(&vv).expect("same field"),
            v: uv,
        }
    }

    /// `h(z) = b3 z^3 + b1 z + b0`.
    fn apply(&self, z: &PairPoint) -> PairPoint {
        let z2 = self.mul(z, z);
        let z3 = self.mul(&z2, z);
        let h = self.h;
        let lin = |c: &FieldElem, w: &PairPoint| PairPoint {
            u: c.mul(&w.u).expect("same field"),
            v: c.mul(&w.v).expect("same field"),
        };
        let a = lin(&h.b3, &z3);
        let b = lin(&h.b1, z);
        PairPoint {
            u: a.u.add(&b.u).and_then(|x| x.add(&h.b0)).expect("same field"),
            v: a.v.add(&b.v).expect("same field"),
        }
    }

    /// `-3 (U - beta0 + V y)(U - beta0 - V y) = -3 ((U - beta0)^2 - delta V^2)`.
    fn value(&self, z: &PairPoint) -> FieldElem {
        let w = z.u.sub(&self.h.beta0).expect("same field");
        let norm = w
            .square()
            .sub(&self.delta.mul(&z.v.square()).expect("same field"))
            .expect("same field");
        norm.scale(-3)
    }

    fn critical(&self) -> PairPoint {
        let f = self.h.field();
        PairPoint {
            u: f.zero(),
            v: f.one(),
        }
    }
}

fn nonzero_square(v: &FieldElem) -> Result<bool> {
    Ok(!v.is_zero() && is_rth_power(v, 2)?.is_rth_power)
}

/// Condition-1 values for iterates `1..=n_max`, with an exact verdict for all
/// iterates whenever the pair orbit closes within the search limit.
pub fn condition1_sequence(h: &DepressedCubic, n_max: usize) -> Result<Condition1Report> {
    let alg = PairAlgebra::new(h)?;
    let mut seen: HashMap<PairPoint, usize> = HashMap::new();
    let mut states: Vec<PairPoint> = Vec::new();
    let mut z = alg.critical();
    let mut certificate: Option<(usize, usize)> = None;
    // states[i] = h^(i+1)(g1); keep going past closure until n_max values exist
    let limit = CYCLE_SEARCH_LIMIT.max(n_max);
    while states.len() < limit {
        z = alg.apply(&z);
        if certificate.is_none() {
            if let Some(&start) = seen.get(&z) {
                certificate = Some((start, states.len() - start));
            } else {
                seen.insert(z.clone(), states.len());
            }
        }
        if certificate.is_some() && states.len() >= n_max {
            break;
        }
        states.push(z.clone());
    }
    let all_values: Vec<FieldElem> = states.iter().map(|s| alg.value(s)).collect();
    let flags: Vec<bool> = all_values.iter().map(nonzero_square).collect::<Result<_>>()?;
    let periodic_certificate = certificate.map(|(start, len)| {
        (
            all_values[..start].to_vec(),
            all_values[start..start + len].to_vec(),
        )
    });
    // with a certificate one period decides every iterate
    let scan_len = certificate.map_or(flags.len(), |(start, len)| start + len);
    let first_failure = flags[..scan_len].iter().position(|&ok| !ok).map(|i| i + 1);
    let values: Vec<FieldElem> = all_values.iter().take(n_max).cloned().collect();
    let squares: Vec<bool> = flags.iter().take(n_max).copied().collect();
    Ok(Condition1Report {
        values,
        squares,
        all_square: first_failure.is_none(),
        first_failure,
        periodic_certificate,
    })
}

/// Which square roots feed `v = (1/2)(-B_n + mu_n sqrt(-3))`.
///
/// The default takes the canonical (lexicographically smaller) root of each;
/// only the parity of the two flips changes `v`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Branch {
    pub negate_mu: bool,
    pub negate_sqrtm3: bool,
}

impl Branch {
    pub const ALL: [Branch; 4] = [
        Branch { negate_mu: false, negate_sqrtm3: false },
        Branch { negate_mu: true, negate_sqrtm3: false },
        Branch { negate_mu: false, negate_sqrtm3: true },
        Branch { negate_mu: true, negate_sqrtm3: true },
    ];

    pub fn label(&self) -> String {
        format!(
            "{}mu,{}sqrt(-3)",
            if self.negate_mu { "-" } else { "+" },
            if self.negate_sqrtm3 { "-" } else { "+" }
        )
    }
}

/// Shared state for condition-2 levels of one cubic: the base field
/// `K = F_q(sqrt(-3))` and its square root of -3.
///
/// Level `n` is realized as the single extension `K[x] / (h^n(x) - beta0)`
/// (made monic), which is `K(beta_n)` with `beta_n` the class of `x`; it is a
/// field exactly when iterate `n` is irreducible over `F_q` (`3^n` is odd, so
/// adjoining `sqrt(-3)` first does not split it).
#[derive(Debug, Clone)]
pub struct Condition2Context {
    pub h: DepressedCubic,
    /// `F_q(sqrt(-3))`, equal to `F_q` when `q = 1 mod 3`.
    pub base: Field,
    pub sqrtm3: FieldElem,
}

/// One level of the recursive test, realized concretely.
#[derive(Debug, Clone)]
pub struct CubicLevelState {
    pub n: usize,
    /// `K(beta_n)`.
    pub field: Field,
    /// Level index of `field` in its tower.
    pub field_level: usize,
    /// Level index of `K` in the same tower; norms land here.
    pub base_level: usize,
    pub beta_n: FieldElem,
    /// Canonical square root of `(-4 (b1/b3)^3 - 27 B_n^2)/81`, when it exists.
    pub mu_n: Option<FieldElem>,
    /// `sqrt(-3)` embedded in `field`.
    pub sqrtm3: FieldElem,
    /// Condition-1 value at iterate `n + 1`, in `F_q`.
    pub cond1_value: FieldElem,
    /// Filled in by the driver once condition 2 has run.
    pub cond2_norm: Option<FieldElem>,
}

impl CubicLevelState {
    /// `B_n = (b0 - beta_n)/b3` in the level field.
    pub fn b_n(&self, h: &DepressedCubic) -> Result<FieldElem> {
        let e = |x: &FieldElem| self.field.embed(x);
        e(&h.b0)?.sub(&self.beta_n)?.div(&e(&h.b3)?)
    }

    /// `-4 (b1/b3)^3 - 27 B_n^2`, the discriminant of `(1/b3)(h - beta_n)`.
    pub fn disc(&self, h: &DepressedCubic) -> Result<FieldElem> {
        let a = self.field.embed(&h.a_norm())?;
        let b = self.b_n(h)?;
        a.pow_u64(3).scale(-4).sub(&b.square().scale(27))
    }
}

impl Condition2Context {
    pub fn new(h: &DepressedCubic) -> Result<Condition2Context> {
        let (base, sqrtm3) = adjoin_sqrt_minus3(h.field())?;
        Ok(Condition2Context {
            h: h.clone(),
            base,
            sqrtm3,
        })
    }

    /// Degree of level `n` over `F_q`.
    pub fn level_degree(n: usize) -> Option<usize> {
        3usize.checked_pow(n as u32)
    }

    /// Build level `n`. Presumes `h^n(x) - beta0` irreducible (the inductive
    /// hypothesis of the recursive test); the caller guarantees it.
    pub fn level(&self, n: usize) -> Result<CubicLevelState> {
        let h = &self.h;
        let field = if n == 0 {
            self.base.clone()
        } else {
            let target = h.target_poly(n)?.lift(&self.base)?.monic()?;
            self.base.extend_unchecked(&target)
        };
        let beta_n = if n == 0 {
            self.base.embed(&h.beta0)?
        } else {
            field.generator()
        };
        let cond1_value = {
            let alg = PairAlgebra::new(h)?;
            let mut z = alg.critical();
            for _ in 0..=n {
                z = alg.apply(&z);
            }
            alg.value(&z)
        };
        let mut state = CubicLevelState {
            n,
            field_level: field.level(),
            base_level: self.base.level(),
            sqrtm3: field.embed(&self.sqrtm3)?,
            beta_n,
            mu_n: None,
            cond1_value,
            cond2_norm: None,
            field,
        };
        let d81 = state.disc(h)?.div(&state.field.from_u64(81))?;
        state.mu_n = sqrt(&d81)?;
        Ok(state)
    }
}

/// Outcome of condition 2 at one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition2Outcome {
    pub passes: bool,
    /// `N_{K(beta_n)/K}(v)`, in `K = F_q(sqrt(-3))`.
    pub norm_value: FieldElem,
    pub is_cube: bool,
    pub witness: Option<FieldElem>,
    pub branch: Branch,
    /// True when the branch value was 0 and its conjugate `-B_n` was tested.
    pub used_conjugate: bool,
}

/// Condition 2 at `state.n`: `v` is not a cube in `K(beta_n)`, decided by the
/// norm to `K` (a cube there iff `v` is, as `K` has `Q = 1 mod 3`).
pub fn condition2_check(
    h: &DepressedCubic,
    state: &CubicLevelState,
    branch: Branch,
) -> Result<Condition2Outcome> {
    let mu = state.mu_n.as_ref().ok_or(Error::SquareRootMissing)?;
    let field = &state.field;
    let mu = if branch.negate_mu { mu.neg() } else { mu.clone() };
    let s = if branch.negate_sqrtm3 {
        state.sqrtm3.neg()
    } else {
        state.sqrtm3.clone()
    };
    let b = state.b_n(h)?;
    let half = field.from_u64(2).inv()?;
    let ms = mu.mul(&s)?;
    let mut v = b.neg().add(&ms)?.mul(&half)?;
    let mut used_conjugate = false;
    if v.is_zero() {
        // b1 = 0: the values are 0 and -B_n; the nonzero one carries the test
        v = b.neg().sub(&ms)?.mul(&half)?;
        used_conjugate = true;
    }
    if v.is_zero() {
        return Err(Error::TowerBuildFailure("condition-2 value vanishes".into()));
    }
    let nv = norm(&v, state.base_level)?;
    let res = is_rth_power(&nv, 3)?;
    Ok(Condition2Outcome {
        passes: !res.is_rth_power,
        norm_value: nv,
        is_cube: res.is_rth_power,
        witness: res.witness,
        branch,
        used_conjugate,
    })
}
