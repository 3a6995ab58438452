use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::{BigInt, BigUint, Sign};

use super::desc::Field;
use crate::error::{Error, Result};

/// An element of one level of a field tower, in canonical reduced form.
#[derive(Clone)]
pub struct FieldElem {
    pub(crate) field: Field,
    pub(crate) coeffs: Vec<u64>,
}

impl Field {
    pub fn zero(&self) -> FieldElem {
        FieldElem {
            field: self.clone(),
            coeffs: vec![0; self.dim()],
        }
    }

    pub fn one(&self) -> FieldElem {
        FieldElem {
            field: self.clone(),
            coeffs: self.desc.one(self.level),
        }
    }

    /// Image of an integer under `Z -> F_p -> self`.
    pub fn from_i64(&self, v: i64) -> FieldElem {
        let p = self.characteristic() as i64;
        let mut e = self.zero();
        e.coeffs[0] = v.rem_euclid(p) as u64;
        e
    }

    pub fn from_u64(&self, v: u64) -> FieldElem {
        let mut e = self.zero();
        e.coeffs[0] = v % self.characteristic();
        e
    }

    /// Element from its flat prime-field digits (reduced mod p, zero padded).
    pub fn from_flat(&self, digits: &[u64]) -> Result<FieldElem> {
        if digits.len() > self.dim() {
            return Err(Error::InvalidArgument(format!(
                "{} digits given for a field of degree {}",
                digits.len(),
                self.dim()
            )));
        }
        let p = self.characteristic();
        let mut e = self.zero();
        for (dst, &d) in e.coeffs.iter_mut().zip(digits) {
            *dst = d % p;
        }
        Ok(e)
    }

    /// The class of `t` at this level, i.e. the root of this level's modulus.
    pub fn generator(&self) -> FieldElem {
        let mut e = self.zero();
        if self.level == 0 {
            // root of x: the prime field is generated by 1 over itself
            e.coeffs[0] = 1 % self.characteristic();
            return e;
        }
        let sub = self.desc.dim(self.level - 1);
        if self.desc.degree(self.level) == 1 {
            // modulus x + c0: the root is -c0
            let m = self.desc.modulus(self.level);
            e.coeffs[..sub].copy_from_slice(&m[..sub]);
            self.desc.neg_in_place(&mut e.coeffs);
            return e;
        }
        e.coeffs[sub] = 1;
        e
    }

    /// All elements, in increasing canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let total = self.cardinality_u64().expect("field too large to enumerate");
        let p = self.characteristic();
        let dim = self.dim();
        (0..total).map(move |mut idx| {
            let mut e = self.zero();
            for k in (0..dim).rev() {
                e.coeffs[k] = idx % p;
                idx /= p;
            }
            e
        })
    }

    /// Nonzero elements in increasing canonical order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        self.elements().skip(1)
    }

    /// Embed an element from a compatible lower (or equal) level.
    pub fn embed(&self, a: &FieldElem) -> Result<FieldElem> {
        if !self.contains(&a.field) {
            return Err(Error::FieldMismatch);
        }
        let mut e = self.zero();
        e.coeffs[..a.coeffs.len()].copy_from_slice(&a.coeffs);
        Ok(e)
    }
}

impl FieldElem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Flat prime-field digits, low first.
    pub fn digits(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 % self.field.characteristic() && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Integer value when the element lies in the prime field.
    pub fn as_prime(&self) -> Option<u64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    /// Lowest tower level containing this element.
    pub fn lowest_level(&self) -> usize {
        self.field.desc.effective_level(self.field.level, &self.coeffs)
    }

    /// Restrict to a lower level; fails unless the element lies there.
    pub fn restrict(&self, level: usize) -> Result<FieldElem> {
        let target = self.field.at_level(level)?;
        if level > self.field.level || self.lowest_level() > level {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElem {
            coeffs: self.coeffs[..target.dim()].to_vec(),
            field: target,
        })
    }

    fn check(&self, other: &FieldElem) -> Result<()> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, coeffs: Vec<u64>) -> FieldElem {
        FieldElem {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        let mut c = self.coeffs.clone();
        self.field.desc.add_assign(&mut c, &other.coeffs);
        Ok(self.with(c))
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        let mut c = self.coeffs.clone();
        self.field.desc.sub_assign(&mut c, &other.coeffs);
        Ok(self.with(c))
    }

    pub fn neg(&self) -> FieldElem {
        let mut c = self.coeffs.clone();
        self.field.desc.neg_in_place(&mut c);
        self.with(c)
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        Ok(self.with(self.field.desc.mul(self.field.level, &self.coeffs, &other.coeffs)))
    }

    pub fn square(&self) -> FieldElem {
        self.with(self.field.desc.square(self.field.level, &self.coeffs))
    }

    pub fn inv(&self) -> Result<FieldElem> {
        self.field
            .desc
            .inv(self.field.level, &self.coeffs)
            .map(|c| self.with(c))
            .ok_or(Error::DivisionByZero)
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        self.mul(&other.inv()?)
    }

    /// Multiply by an integer (reduced into the prime field).
    pub fn scale(&self, k: i64) -> FieldElem {
        let p = self.field.characteristic();
        let mut c = self.coeffs.clone();
        self.field.desc.scale_in_place(&mut c, k.rem_euclid(p as i64) as u64);
        self.with(c)
    }

    pub fn pow(&self, e: &BigUint) -> FieldElem {
        self.with(self.field.desc.pow(self.field.level, &self.coeffs, e))
    }

    pub fn pow_u64(&self, e: u64) -> FieldElem {
        self.pow(&BigUint::from(e))
    }

    /// Power by a signed exponent; negative exponents require a nonzero base.
    pub fn pow_signed(&self, e: &BigInt) -> Result<FieldElem> {
        match e.sign() {
            Sign::Minus => Ok(self.inv()?.pow(e.magnitude())),
            _ => Ok(self.pow(e.magnitude())),
        }
    }

    pub fn is_zero_or_one(&self) -> bool {
        self.is_zero() || self.is_one()
    }

    /// Canonical nested coefficient form: level 0 is an integer, level `k`
    /// is an array of `degree(k)` level `k-1` entries.
    pub fn nested(&self) -> serde_json::Value {
        nested_of(&self.field, self.field.level, &self.coeffs)
    }
}

fn nested_of(field: &Field, level: usize, digits: &[u64]) -> serde_json::Value {
    if level == 0 {
        return serde_json::Value::from(digits[0]);
    }
    let sub = field.desc.dim(level - 1);
    serde_json::Value::Array(digits.chunks(sub).map(|c| nested_of(field, level - 1, c)).collect())
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field.same_as(&other.field)
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.level.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: lexicographic on the flat digit vector, lowest index first.
impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Prime-field elements print as integers, others as their digit vector.
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}
