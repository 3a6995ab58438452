//! Cubic machinery: depressed form, Dickson's irreducibility criterion, the
//! two-condition recursive iterate test, the parity-of-factors necessary
//! condition, and Chu's dynamically irreducible family.

mod chu;
mod condition;
mod gnos;
mod recursive;
#[cfg(test)]
mod tests;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffield::{adjoin_sqrt_minus3, is_rth_power, sqrt, Field, FieldElem};
use crate::polyring::{affine_conjugate, Poly};

pub use chu::{chu_polynomial, chu_sequence, chu_test, ChuSequenceReport};
pub use condition::{
    condition1_sequence, condition2_check, Branch, Condition1Report, Condition2Context,
    Condition2Outcome, CubicLevelState,
};
pub use gnos::{gnos_check, GnosReport};
pub use recursive::{
    recursive_report, recursive_test, CubicOptions, CubicReport, LevelRecord, OracleCheck,
    CSV_COLUMNS, CSV_VERSION,
};

/// `h(x) = b3 x^3 + b1 x + b0` together with the target `beta0`: iterate `n`
/// of the source cubic is irreducible exactly when `h^n(x) - beta0` is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepressedCubic {
    pub b3: FieldElem,
    pub b1: FieldElem,
    pub b0: FieldElem,
    pub beta0: FieldElem,
    /// The general cubic this form was derived from, if any.
    pub source: Option<Poly>,
}

fn check_cubic_field(field: &Field) -> Result<()> {
    if field.characteristic() <= 3 {
        return Err(Error::CharacteristicAtMostThree);
    }
    Ok(())
}

impl DepressedCubic {
    pub fn new(b3: FieldElem, b1: FieldElem, b0: FieldElem, beta0: FieldElem) -> Result<Self> {
        check_cubic_field(b3.field())?;
        let f = b3.field();
        if ![&b1, &b0, &beta0].iter().all(|e| e.field().same_as(f)) {
            return Err(Error::FieldMismatch);
        }
        if b3.is_zero() {
            return Err(Error::InvalidArgument("b3 must be nonzero".into()));
        }
        Ok(DepressedCubic {
            b3,
            b1,
            b0,
            beta0,
            source: None,
        })
    }

    /// Test `h` itself (`beta0 = 0`); `h` must have zero quadratic term.
    pub fn from_poly(h: &Poly) -> Result<Self> {
        if h.degree() != Some(3) {
            return Err(Error::InvalidArgument("expected a cubic".into()));
        }
        if !h.coeff(2).is_zero() {
            return Err(Error::InvalidArgument("quadratic coefficient must vanish".into()));
        }
        DepressedCubic::new(h.coeff(3), h.coeff(1), h.coeff(0), h.field().zero())
    }

    pub fn field(&self) -> &Field {
        self.b3.field()
    }

    /// `h(x) = b3 x^3 + b1 x + b0`.
    pub fn poly(&self) -> Poly {
        let z = self.field().zero();
        Poly::from_elems(self.field(), &[self.b0.clone(), self.b1.clone(), z, self.b3.clone()])
            .expect("same field")
    }

    /// `h^n(x) - beta0`, the polynomial whose irreducibility iterate `n` asks for.
    pub fn target_poly(&self, n: usize) -> Result<Poly> {
        self.poly().iterate(n)?.sub_const(&self.beta0)
    }

    pub fn eval(&self, x: &FieldElem) -> Result<FieldElem> {
        self.poly().eval(x)
    }

    /// `b1 / b3`, the depressed linear coefficient after normalizing.
    pub(crate) fn a_norm(&self) -> FieldElem {
        self.b1.div(&self.b3).expect("b3 nonzero")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "b3": self.b3.to_string(),
            "b1": self.b1.to_string(),
            "b0": self.b0.to_string(),
            "beta0": self.beta0.to_string(),
            "h": self.poly().to_string(),
            "source": self.source.as_ref().map(|s| s.to_string()),
        })
    }
}

/// Shift `f = a3 x^3 + a2 x^2 + a1 x + a0` to `h(x) = f(x - s) + s`, `s = a2/(3 a3)`.
///
/// Then `f^n(x) = h^n(x + s) - s`, so `f^n` is irreducible iff `h^n - s` is.
pub fn depress(f: &Poly) -> Result<DepressedCubic> {
    if f.degree() != Some(3) {
        return Err(Error::InvalidArgument("expected a cubic".into()));
    }
    let field = f.field();
    check_cubic_field(field)?;
    let a3 = f.coeff(3);
    let s = f.coeff(2).div(&a3.scale(3))?;
    // phi(x) = x + s conjugates: phi o f o phi^{-1} = f(x - s) + s
    let h = affine_conjugate(f, &field.one(), &s)?;
    debug_assert!(h.coeff(2).is_zero());
    let mut out = DepressedCubic::new(h.coeff(3), h.coeff(1), h.coeff(0), s)?;
    out.source = Some(f.clone());
    Ok(out)
}

/// Evidence from Dickson's criterion on `x^3 + a1 x + a0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DicksonReport {
    pub irreducible: bool,
    /// `-4 a1^3 - 27 a0^2`.
    pub disc: FieldElem,
    pub disc_nonzero_square: bool,
    /// Both square roots of `disc / 81`, canonical one first.
    pub mu: Option<(FieldElem, FieldElem)>,
    /// The square root of -3 used, in `F_q(sqrt(-3))`.
    pub sqrt_minus3: Option<FieldElem>,
    /// `(1/2)(-a0 + mu sqrt(-3))` for both signs of `mu`; the one tested first.
    pub cube_values: Vec<FieldElem>,
    /// Cube test on the tested value (the first nonzero entry of `cube_values`).
    pub tested_is_cube: Option<bool>,
    /// Free-form note for degenerate shapes.
    pub note: Option<String>,
}

impl DicksonReport {
    pub fn to_json(&self) -> Value {
        json!({
            "irreducible": self.irreducible,
            "disc": self.disc.to_string(),
            "disc_nonzero_square": self.disc_nonzero_square,
            "mu": self.mu.as_ref().map(|(a, b)| vec![a.to_string(), b.to_string()]),
            "sqrt_minus3": self.sqrt_minus3.as_ref().map(|s| s.to_string()),
            "cube_values": self.cube_values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "tested_is_cube": self.tested_is_cube,
            "note": self.note,
        })
    }
}

/// Dickson's criterion: `x^3 + a1 x + a0` is irreducible iff
/// `-4a1^3 - 27a0^2` is a nonzero square and `(1/2)(-a0 + mu sqrt(-3))` is not a
/// cube in `F_q(sqrt(-3))`, where `81 mu^2 = -4a1^3 - 27a0^2`.
///
/// With `a1 = 0` the two values are `0` and `-a0`; the nonzero one is tested.
pub fn dickson_test(a1: &FieldElem, a0: &FieldElem) -> Result<DicksonReport> {
    let field = a1.field().clone();
    check_cubic_field(&field)?;
    if !a0.field().same_as(&field) {
        return Err(Error::FieldMismatch);
    }
    if a1.is_zero() && a0.is_zero() {
        return Err(Error::BothCoefficientsZero);
    }
    let disc = a1.pow_u64(3).scale(-4).sub(&a0.square().scale(27))?;
    let mut report = DicksonReport {
        irreducible: false,
        disc: disc.clone(),
        disc_nonzero_square: false,
        mu: None,
        sqrt_minus3: None,
        cube_values: Vec::new(),
        tested_is_cube: None,
        note: None,
    };
    if a0.is_zero() {
        report.note = Some("a0 = 0: the cubic has the root 0".into());
        return Ok(report);
    }
    let Some(mu) = sqrt(&disc.div(&field.from_u64(81))?)? else {
        return Ok(report);
    };
    if disc.is_zero() {
        return Ok(report);
    }
    report.disc_nonzero_square = true;
    let (ext, s) = adjoin_sqrt_minus3(&field)?;
    let half = ext.from_u64(2).inv()?;
    let neg_a0 = ext.embed(&a0.neg())?;
    let values: Vec<FieldElem> = [mu.clone(), mu.neg()]
        .iter()
        .map(|m| {
            let ms = ext.embed(m)?.mul(&s)?;
            neg_a0.add(&ms)?.mul(&half)
        })
        .collect::<Result<_>>()?;
    let tested = values.iter().find(|v| !v.is_zero()).expect("a0 != 0").clone();
    let cube = is_rth_power(&tested, 3)?.is_rth_power;
    report.mu = Some((mu.clone(), mu.neg()));
    report.sqrt_minus3 = Some(s);
    report.cube_values = values;
    report.tested_is_cube = Some(cube);
    report.irreducible = !cube;
    Ok(report)
}
