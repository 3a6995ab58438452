//! Power residues, r-th roots and square roots.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{group_order, Field, FieldElem};
use crate::error::{Error, Result};
use crate::intarith::prime_factors_with_multiplicity;
use crate::polyring::Poly;

/// Outcome of an r-th power test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueVerdict {
    pub value: FieldElem,
    pub r: u64,
    pub is_rth_power: bool,
    /// A root with `witness^r == value`, present exactly when `is_rth_power`.
    pub witness: Option<FieldElem>,
}

#[derive(Serialize)]
struct ResidueJson {
    value: String,
    r: u64,
    is_rth_power: bool,
    witness: Option<String>,
}

impl ResidueVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ResidueJson {
            value: self.value.to_string(),
            r: self.r,
            is_rth_power: self.is_rth_power,
            witness: self.witness.as_ref().map(|w| w.to_string()),
        })
        .expect("serializable")
    }
}

fn check_exponent(field: &Field, r: u64) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidArgument("exponent must be positive".into()));
    }
    let p = field.characteristic();
    if r.is_multiple_of(p) {
        return Err(Error::ExponentSharesCharacteristic { r, p });
    }
    Ok(())
}

/// Membership test `a^(N/gcd(r, N)) == 1` in the cyclic group of order `N = Q - 1`.
fn is_power_unchecked(a: &FieldElem, r: &BigUint) -> bool {
    if a.is_zero() {
        return true;
    }
    let n = group_order(a.field());
    let g = r.gcd(&n);
    a.pow(&(n / g)).is_one()
}

/// Decide whether `a` is an r-th power, with a root as witness.
pub fn is_rth_power(a: &FieldElem, r: u64) -> Result<ResidueVerdict> {
    check_exponent(a.field(), r)?;
    let yes = is_power_unchecked(a, &BigUint::from(r));
    let witness = if yes { Some(rth_root(a, r)?.expect("power")) } else { None };
    Ok(ResidueVerdict {
        value: a.clone(),
        r,
        is_rth_power: yes,
        witness,
    })
}

/// An r-th root of `a`, or `None` when `a` is not an r-th power.
///
/// Roots are peeled one prime factor of `r` at a time. For a prime `l`
/// coprime to `Q - 1` the root is unique; otherwise an Adleman-Manders-Miller
/// step finds one root and the first of its `l` conjugates (in the order
/// `z, z*zeta, z*zeta^2, ...`) that still admits the remaining root is kept.
pub fn rth_root(a: &FieldElem, r: u64) -> Result<Option<FieldElem>> {
    check_exponent(a.field(), r)?;
    if a.is_zero() {
        return Ok(Some(a.clone()));
    }
    if !is_power_unchecked(a, &BigUint::from(r)) {
        return Ok(None);
    }
    let factors = prime_factors_with_multiplicity(r);
    let n = group_order(a.field());
    let mut cur = a.clone();
    for (idx, &l) in factors.iter().enumerate() {
        let rest: u64 = factors[idx + 1..].iter().product();
        let rest_big = BigUint::from(rest);
        let lb = BigUint::from(l);
        if !(&n % &lb).is_zero() {
            let e = lb.modinv(&n).expect("l coprime to N");
            cur = cur.pow(&e);
            continue;
        }
        let z = prime_root(&cur, l);
        let zeta = primitive_root_of_unity(a.field(), l);
        let mut cand = z;
        let mut found = None;
        for _ in 0..l {
            if is_power_unchecked(&cand, &rest_big) {
                found = Some(cand.clone());
                break;
            }
            cand = cand.mul(&zeta)?;
        }
        cur = found.expect("some conjugate root admits the remaining root");
    }
    debug_assert!(cur.pow_u64(r) == *a);
    Ok(Some(cur))
}

/// Lexicographically smallest element that is not an l-th power (`l | Q - 1`).
pub(crate) fn smallest_non_power(field: &Field, l: u64) -> FieldElem {
    let n = group_order(field);
    let e = &n / BigUint::from(l);
    let p = field.characteristic();
    let dim = field.dim();
    let mut digits = vec![0u64; dim];
    digits[dim - 1] = 1;
    loop {
        let c = field.from_flat(&digits).expect("dims match");
        if !c.pow(&e).is_one() {
            return c;
        }
        let mut k = dim;
        loop {
            k -= 1;
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
            assert!(k > 0, "every element is an l-th power");
        }
    }
}

fn primitive_root_of_unity(field: &Field, l: u64) -> FieldElem {
    let c = smallest_non_power(field, l);
    c.pow(&(group_order(field) / BigUint::from(l)))
}

/// One l-th root of an l-th power `b`, for a prime `l` dividing `Q - 1`.
fn prime_root(b: &FieldElem, l: u64) -> FieldElem {
    let field = b.field();
    let n = group_order(field);
    let lb = BigUint::from(l);
    let mut k = 0u32;
    let mut m = n.clone();
    while (&m % &lb).is_zero() {
        m /= &lb;
        k += 1;
    }
    // generator of the l-Sylow subgroup, order l^k
    let g = smallest_non_power(field, l).pow(&m);
    let u = if m.is_one() {
        BigUint::zero()
    } else {
        lb.modinv(&m).expect("l coprime to m")
    };
    let x = b.pow(&u);
    // e = x^l / b lies in the Sylow subgroup and is an l-th power there
    let e = x.pow(&lb).div(b).expect("b nonzero");
    let j = sylow_log(&e, &g, l, k);
    debug_assert!((&j % &lb).is_zero());
    let order = lb.pow(k);
    let exp = (&order - (&j / &lb) % &order) % &order;
    x.mul(&g.pow(&exp)).expect("same field")
}

/// Discrete logarithm of `e` to base `g` of order `l^k`, digit by digit.
fn sylow_log(e: &FieldElem, g: &FieldElem, l: u64, k: u32) -> BigUint {
    let lb = BigUint::from(l);
    let zeta = g.pow(&lb.pow(k.saturating_sub(1)));
    let table: Vec<FieldElem> = std::iter::successors(Some(e.field().one()), |z| {
        Some(z.mul(&zeta).expect("same field"))
    })
    .take(l as usize)
    .collect();
    let g_inv = g.inv().expect("nonzero");
    let mut j = BigUint::zero();
    let mut scale = BigUint::one();
    for i in 0..k {
        let partial = e.mul(&g_inv.pow(&j)).expect("same field");
        let h = partial.pow(&lb.pow(k - 1 - i));
        let digit = table
            .iter()
            .position(|t| *t == h)
            .expect("element lies in the Sylow subgroup");
        j += &scale * BigUint::from(digit);
        scale *= &lb;
    }
    j
}

/// Canonical square root (the lexicographically smaller of `±r`), if any.
pub fn sqrt(a: &FieldElem) -> Result<Option<FieldElem>> {
    if a.field().characteristic() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if a.is_zero() {
        return Ok(Some(a.clone()));
    }
    let n = group_order(a.field());
    let r = if n.bit(1) {
        // Q = 3 mod 4: the root is a^((Q+1)/4) whenever one exists
        let r = a.pow(&((&n + 2u32) >> 2u32));
        if r.square() != *a {
            return Ok(None);
        }
        r
    } else {
        let half = &n >> 1u32;
        if !a.pow(&half).is_one() {
            return Ok(None);
        }
        prime_root(a, 2)
    };
    let s = r.neg();
    Ok(Some(if s < r { s } else { r }))
}

/// `F(sqrt(-3))` together with a square root of -3.
///
/// Returns the same field when -3 is already a square; otherwise extends the
/// tower by `x^2 + 3` and returns the class of `x`.
pub fn adjoin_sqrt_minus3(field: &Field) -> Result<(Field, FieldElem)> {
    match field.characteristic() {
        2 => return Err(Error::EvenCharacteristic),
        3 => return Err(Error::CharacteristicThree),
        _ => {}
    }
    let m3 = field.from_i64(-3);
    if let Some(s) = sqrt(&m3)? {
        return Ok((field.clone(), s));
    }
    let modulus = Poly::from_i64s(field, &[3, 0, 1]);
    let ext = field.extend(&modulus)?;
    let root = ext.generator();
    Ok((ext, root))
}
