use super::Poly;
use crate::error::{Error, Result};
use crate::ffield::FieldElem;

/// `Res(f, g)` via the Euclidean recursion
/// `Res(f, g) = (-1)^(mn) lc(g)^(m - k) Res(g, f mod g)`.
pub fn resultant(f: &Poly, g: &Poly) -> Result<FieldElem> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.field().same_as(g.field()) {
        return Err(Error::FieldMismatch);
    }
    let field = f.field().clone();
    let mut acc = field.one();
    let (mut a, mut b) = (f.clone(), g.clone());
    loop {
        let m = a.degree().expect("nonzero");
        let n = b.degree().expect("nonzero");
        if n == 0 {
            return acc.mul(&b.coeff(0).pow_u64(m as u64));
        }
        let r = a.rem(&b)?;
        let Some(k) = r.degree() else {
            return Ok(field.zero());
        };
        acc = acc.mul(&b.lead().pow_u64((m - k) as u64))?;
        if m * n % 2 == 1 {
            acc = acc.neg();
        }
        a = b;
        b = r;
    }
}

/// `Disc(f) = (-1)^(d(d-1)/2) a_d^(d-k-2) Res(f, f')` with `k = deg f'`.
pub fn discriminant(f: &Poly) -> Result<FieldElem> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d < 2 {
        return Err(Error::InvalidArgument("discriminant needs degree >= 2".into()));
    }
    let df = f.derivative();
    let k = df.degree().ok_or(Error::VanishingDerivative)?;
    let res = resultant(f, &df)?;
    let lead = f.lead();
    let exp = d as i64 - k as i64 - 2;
    let factor = if exp >= 0 {
        lead.pow_u64(exp as u64)
    } else {
        lead.inv()?.pow_u64((-exp) as u64)
    };
    let mut out = factor.mul(&res)?;
    if (d * (d - 1) / 2) % 2 == 1 {
        out = out.neg();
    }
    Ok(out)
}
