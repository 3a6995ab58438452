//! Finite fields as explicit towers over `F_p`.

mod desc;
mod elem;
mod residue;

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use serde_json::{json, Value};

pub use desc::{Field, FieldDesc};
pub use elem::FieldElem;
pub use residue::{adjoin_sqrt_minus3, is_rth_power, rth_root, sqrt, ResidueVerdict};

use crate::error::{Error, Result};
use crate::polyring::{is_irreducible, Poly};

/// Build `F_p` followed by one extension level per entry of `degrees`.
///
/// Each modulus is the lexicographically smallest monic irreducible of the
/// requested degree over the level beneath it, comparing coefficient vectors
/// from the constant term upward. Degree-1 entries add no level, so
/// `degrees == [1]` gives the prime field.
pub fn build_field(p: u64, degrees: &[usize]) -> Result<Field> {
    if degrees.contains(&0) {
        return Err(Error::DegreeZero);
    }
    if degrees.is_empty() {
        return Err(Error::InvalidArgument("degree list is empty".into()));
    }
    let mut field = Field::prime(p)?;
    for &d in degrees.iter().filter(|&&d| d > 1) {
        let modulus = smallest_irreducible(&field, d)?;
        field = field.extend(&modulus)?;
    }
    Ok(field)
}

/// Lexicographically smallest monic irreducible polynomial of degree `d`.
pub fn smallest_irreducible(field: &Field, d: usize) -> Result<Poly> {
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    let dim = field.dim();
    let p = field.characteristic();
    let mut digits = vec![0u64; (d + 1) * dim];
    digits[d * dim] = 1;
    if d == 1 {
        return Ok(Poly::from_flat(field, digits));
    }
    // every candidate with zero constant term has the root 0, so start at the
    // smallest nonzero constant term
    digits[dim - 1] = 1;
    loop {
        let cand = Poly::from_flat(field, digits.clone());
        if is_irreducible(&cand)? {
            return Ok(cand);
        }
        // odometer over digits 0..d*dim, last digit fastest
        let mut k = d * dim;
        loop {
            if k == 0 {
                return Err(Error::TowerBuildFailure(format!(
                    "no irreducible polynomial of degree {d}"
                )));
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
        }
    }
}

impl Field {
    /// Extend this level by a monic irreducible modulus over it.
    ///
    /// The result is a new tower sharing levels `0..=self.level()`.
    pub fn extend(&self, modulus: &Poly) -> Result<Field> {
        if !modulus.field().same_as(self) {
            return Err(Error::FieldMismatch);
        }
        if !modulus.is_monic() || modulus.degree() == Some(0) {
            return Err(Error::NotMonic);
        }
        if !is_irreducible(modulus)? {
            return Err(Error::ReducibleModulus);
        }
        Ok(self.extend_unchecked(modulus))
    }

    pub(crate) fn extend_unchecked(&self, modulus: &Poly) -> Field {
        let desc = self.desc.with_level(self.level, modulus.coeffs.clone());
        Field {
            level: desc.top(),
            desc: Arc::new(desc),
        }
    }

    /// Monic modulus defining this level over the one beneath.
    pub fn modulus(&self) -> Option<Poly> {
        if self.level == 0 {
            return None;
        }
        let below = self.at_level(self.level - 1).expect("level exists");
        Some(Poly::from_flat(&below, self.desc.modulus(self.level).to_vec()))
    }

    /// JSON description `{"p": .., "tower_degrees": [..]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.characteristic(),
            "tower_degrees": self.desc.degrees_up_to(self.level),
        })
    }
}

fn check_level(a: &FieldElem, level: usize) -> Result<()> {
    if level > a.field.level {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// `a^Q` where `Q` is the cardinality of level `base_level`.
pub fn frobenius(a: &FieldElem, base_level: usize) -> Result<FieldElem> {
    check_level(a, base_level)?;
    let q = a.field.desc.cardinality(base_level).clone();
    Ok(a.pow(&q))
}

/// Norm from `a`'s level down to `down_to`, returned at level `down_to`.
///
/// Computed one level at a time as a resultant against each modulus.
pub fn norm(a: &FieldElem, down_to: usize) -> Result<FieldElem> {
    check_level(a, down_to)?;
    let desc = &a.field.desc;
    let mut cur = a.coeffs.clone();
    for level in (down_to + 1..=a.field.level).rev() {
        cur = desc.relative_norm(level, &cur);
    }
    a.field.at_level(down_to)?.from_flat(&cur)
}

/// Norm as the power `a^((Q_top - 1)/(Q_down - 1))`; independent of [`norm`].
pub fn norm_by_exponent(a: &FieldElem, down_to: usize) -> Result<FieldElem> {
    check_level(a, down_to)?;
    let desc = &a.field.desc;
    let top = desc.cardinality(a.field.level) - 1u32;
    let bottom = desc.cardinality(down_to) - 1u32;
    let v = a.pow(&(top / bottom));
    v.restrict(down_to)
}

/// Trace from `a`'s level down to `down_to`, returned at level `down_to`.
pub fn trace(a: &FieldElem, down_to: usize) -> Result<FieldElem> {
    check_level(a, down_to)?;
    let desc = &a.field.desc;
    let mut cur = a.coeffs.clone();
    for level in (down_to + 1..=a.field.level).rev() {
        cur = desc.relative_trace(level, &cur);
    }
    a.field.at_level(down_to)?.from_flat(&cur)
}

/// Trace as the sum of Frobenius conjugates; independent of [`trace`].
pub fn trace_by_conjugates(a: &FieldElem, down_to: usize) -> Result<FieldElem> {
    check_level(a, down_to)?;
    let degree = a.field.dim() / a.field.desc.dim(down_to);
    let mut acc = a.field.zero();
    let mut conj = a.clone();
    for _ in 0..degree {
        acc = acc.add(&conj)?;
        conj = frobenius(&conj, down_to)?;
    }
    acc.restrict(down_to)
}

impl FieldElem {
    /// JSON form `{"p": .., "tower_degrees": [..], "coeffs": nested}`.
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.field.characteristic(),
            "tower_degrees": self.field.desc.degrees_up_to(self.field.level),
            "coeffs": self.nested(),
        })
    }

    /// Parse the JSON form, rebuilding the field with [`build_field`].
    pub fn from_json(v: &Value) -> Result<FieldElem> {
        let bad = |m: &str| Error::Parse(m.to_string());
        let p = v["p"].as_u64().ok_or_else(|| bad("missing p"))?;
        let degrees: Vec<usize> = v["tower_degrees"]
            .as_array()
            .ok_or_else(|| bad("missing tower_degrees"))?
            .iter()
            .map(|d| d.as_u64().map(|d| d as usize).ok_or_else(|| bad("bad degree")))
            .collect::<Result<_>>()?;
        let field = build_field(p, &degrees)?;
        let mut digits = Vec::with_capacity(field.dim());
        flatten_nested(&v["coeffs"], &mut digits).map_err(|_| bad("bad coeffs"))?;
        if digits.len() != field.dim() {
            return Err(bad("coefficient count does not match the tower"));
        }
        field.from_flat(&digits)
    }
}

fn flatten_nested(v: &Value, out: &mut Vec<u64>) -> std::result::Result<(), ()> {
    match v {
        Value::Number(n) => {
            out.push(n.as_u64().ok_or(())?);
            Ok(())
        }
        Value::Array(items) => items.iter().try_for_each(|i| flatten_nested(i, out)),
        _ => Err(()),
    }
}

/// `Q - 1` for the element's field.
pub(crate) fn group_order(field: &Field) -> BigUint {
    field.cardinality() - BigUint::one()
}

#[cfg(test)]
mod tests;
