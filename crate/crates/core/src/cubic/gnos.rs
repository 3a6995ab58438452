//! Parity-of-factors necessary condition: for dynamically irreducible `f` of
//! odd degree `d`, `Disc(f)` and `(-1)^((d-1)/2) a^((n-1)k+1) Res(f^n, f')`
//! (`n >= 2`, `k = deg f'`) are squares; for even `d`, `Disc(f)` and
//! `a^k Res(f^n, f')` are nonsquares.

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffield::{is_rth_power, FieldElem};
use crate::polyring::{discriminant, resultant, Poly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GnosReport {
    pub pass: bool,
    pub first_violation: Option<usize>,
    /// The tested quantity for iterates `1..=n_max` (stopping at a violation).
    pub values: Vec<FieldElem>,
    /// Whether the quantities must be squares (odd degree) or nonsquares.
    pub expect_square: bool,
}

impl GnosReport {
    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.pass,
            "first_violation": self.first_violation,
            "values": self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "expect_square": self.expect_square,
        })
    }
}

/// `g(r) mod m` by Horner's rule.
fn compose_mod(g: &Poly, r: &Poly, m: &Poly) -> Result<Poly> {
    let d = g.degree().ok_or(Error::ZeroPolynomial)?;
    let mut acc = Poly::constant(&g.coeff(d));
    for i in (0..d).rev() {
        acc = acc.mulmod(r, m)?.add(&Poly::constant(&g.coeff(i)))?;
    }
    acc.rem(m)
}

/// Evaluate the necessary condition for iterates `1..=n_max`.
///
/// `Res(f^n, f')` is computed without forming `f^n`: with `r_n = f^n mod f'`,
/// `Res(f^n, f') = (-1)^(d^n k) lc(f')^(d^n - deg r_n) Res(f', r_n)`.
pub fn gnos_check(f: &Poly, n_max: usize) -> Result<GnosReport> {
    let field = f.field();
    if field.characteristic() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d < 2 {
        return Err(Error::InvalidArgument("degree must be at least 2".into()));
    }
    let df = f.derivative();
    let k = match df.degree() {
        Some(k) if k >= 1 => k,
        _ => return Err(Error::ConstantDerivative),
    };
    let expect_square = d % 2 == 1;
    let a = f.lead();
    let lc_df = df.lead();
    let mut values = Vec::new();
    let mut first_violation = None;
    let mut r = f.rem(&df)?;
    for n in 1..=n_max {
        let value = if n == 1 {
            discriminant(f)?
        } else {
            r = compose_mod(f, &r, &df)?;
            let deg_fn = BigUint::from(d).pow(n as u32);
            let res = match r.degree() {
                None => field.zero(),
                Some(dr) => {
                    let lc_pow = lc_df.pow(&(&deg_fn - BigUint::from(dr)));
                    let mut v = lc_pow.mul(&resultant(&df, &r)?)?;
                    if deg_fn.bit(0) && k % 2 == 1 {
                        v = v.neg();
                    }
                    v
                }
            };
            if expect_square {
                let mut v = a.pow_u64(((n - 1) * k + 1) as u64).mul(&res)?;
                if (d - 1) / 2 % 2 == 1 {
                    v = v.neg();
                }
                v
            } else {
                a.pow_u64(k as u64).mul(&res)?
            }
        };
        let square = is_rth_power(&value, 2)?.is_rth_power;
        let ok = !value.is_zero() && square == expect_square;
        values.push(value);
        if !ok {
            first_violation = Some(n);
            break;
        }
    }
    Ok(GnosReport {
        pass: first_violation.is_none(),
        first_violation,
        values,
        expect_square,
    })
}
