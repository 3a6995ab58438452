//! Chu's family: `f_0 = g`, `f_{k+1}(x) = f_k(x^3 - 3x)`, all irreducible iff
//! for a root `alpha` of `g`, `-3(alpha^2 - 4)` is a nonzero square and the
//! roots of `x^2 - alpha x + 1` are not cubes in `F_{q^m}(sqrt(-3))`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffield::{adjoin_sqrt_minus3, is_rth_power, sqrt, FieldElem};
use crate::polyring::{is_irreducible, Poly};
use crate::verdict::{Reason, Verdict};

/// `x^3 + 3 alpha x^2 + (3 alpha^2 - 3) x + (alpha^3 - 4 alpha)`, the conjugate
/// `T(x + alpha) - alpha` of `T(x) = x^3 - 3x`.
pub fn chu_polynomial(alpha: &FieldElem) -> Poly {
    let f = alpha.field();
    let a2 = alpha.square();
    let c0 = a2.mul(alpha).expect("same field").sub(&alpha.scale(4)).expect("same field");
    let c1 = a2.scale(3).sub(&f.from_u64(3)).expect("same field");
    Poly::from_elems(f, &[c0, c1, alpha.scale(3), f.one()]).expect("same field")
}

/// Outcome of the two Chu conditions at `alpha`; `Ok(None)` means both hold.
fn chu_conditions(alpha: &FieldElem) -> Result<Option<Reason>> {
    let field = alpha.field();
    let a2m4 = alpha.square().sub(&field.from_u64(4))?;
    let q1 = a2m4.scale(-3);
    let is_sq = !q1.is_zero() && is_rth_power(&q1, 2)?.is_rth_power;
    if !is_sq {
        return Ok(Some(Reason::NotNonzeroSquare {
            quantity: "-3(alpha^2 - 4)".into(),
            value: q1.to_string(),
        }));
    }
    let (ext, _) = adjoin_sqrt_minus3(field)?;
    let root = sqrt(&ext.embed(&a2m4)?)?.ok_or(Error::SquareRootMissing)?;
    let half = ext.from_u64(2).inv()?;
    let a = ext.embed(alpha)?;
    for r in [root.clone(), root.neg()] {
        let w = a.add(&r)?.mul(&half)?;
        let res = is_rth_power(&w, 3)?;
        if res.is_rth_power {
            return Ok(Some(Reason::CubeFound {
                quantity: "(alpha ± sqrt(alpha^2 - 4))/2".into(),
                value: w.to_string(),
                witness: res.witness.map(|x| x.to_string()).unwrap_or_default(),
            }));
        }
    }
    Ok(None)
}

/// Complete decision for [`chu_polynomial`]`(alpha)`.
///
/// Both conditions coincide with Dickson's criterion for `x^3 - 3x - alpha`,
/// so a failure makes the first iterate reducible.
pub fn chu_test(alpha: &FieldElem) -> Result<Verdict> {
    let field = alpha.field();
    if field.characteristic() <= 3 {
        return Err(Error::CharacteristicAtMostThree);
    }
    let two = field.from_u64(2);
    if *alpha == two || *alpha == two.neg() {
        return Ok(Verdict::reducible_at(
            1,
            Reason::Degenerate {
                detail: "alpha = ±2: the polynomial has the root 0".into(),
            },
        ));
    }
    Ok(match chu_conditions(alpha)? {
        None => Verdict::proved("chu"),
        Some(reason) => Verdict::reducible_at(1, reason),
    })
}

#[derive(Debug, Clone)]
pub struct ChuSequenceReport {
    /// `f_0, .., f_{k_max}` with oracle irreducibility flags.
    pub polys: Vec<(Poly, bool)>,
    /// Whether the criterion holds at a root of `g` in `F_{q^m}`.
    pub criterion_passes: bool,
}

impl ChuSequenceReport {
    /// The criterion and the oracle agree on every materialized member.
    pub fn consistent(&self) -> bool {
        let all = self.polys.iter().all(|(_, irr)| *irr);
        !self.criterion_passes || all
    }

    pub fn to_json(&self) -> Value {
        json!({
            "criterion_passes": self.criterion_passes,
            "members": self.polys.iter().enumerate().map(|(k, (p, irr))| json!({
                "k": k,
                "degree": p.degree(),
                "poly": p.to_string(),
                "irreducible": irr,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Materialize `f_0..f_{k_max}` and check each with the oracle.
pub fn chu_sequence(g: &Poly, k_max: usize) -> Result<ChuSequenceReport> {
    let field = g.field();
    if field.characteristic() <= 3 {
        return Err(Error::CharacteristicAtMostThree);
    }
    let gm = g.monic()?;
    if gm.degree() == Some(1) {
        let root = gm.coeff(0).neg();
        if root == field.from_u64(2) || root == field.from_i64(-2) {
            return Err(Error::ExcludedG);
        }
    }
    if !is_irreducible(g)? {
        return Err(Error::ReducibleG);
    }
    let alpha = if gm.degree() == Some(1) {
        gm.coeff(0).neg()
    } else {
        field.extend(&gm)?.generator()
    };
    let criterion_passes = chu_conditions(&alpha)?.is_none();
    let t = Poly::from_i64s(field, &[0, -3, 0, 1]);
    let mut polys = Vec::with_capacity(k_max + 1);
    let mut cur = g.clone();
    for k in 0..=k_max {
        if k > 0 {
            cur = cur.compose(&t)?;
        }
        let irr = is_irreducible(&cur)?;
        polys.push((cur.clone(), irr));
    }
    Ok(ChuSequenceReport {
        polys,
        criterion_passes,
    })
}
