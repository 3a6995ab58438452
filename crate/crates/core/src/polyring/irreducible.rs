//! Frobenius on `F_q[x]/(f)`, Rabin's irreducibility test and root finding.

use num_bigint::BigUint;

use super::Poly;
use crate::error::{Error, Result};
use crate::ffield::FieldElem;
use crate::intarith::prime_divisors;

/// The map `v -> v^q mod f`, which is `F_q`-linear on `F_q[x]/(f)`.
///
/// Stores `x^(i*q) mod f` for `i < deg f`; one application costs `deg(f)^2`
/// coefficient products instead of a full exponentiation.
pub struct FrobeniusMap {
    modulus: Poly,
    rows: Vec<Poly>,
}

impl FrobeniusMap {
    pub fn new(modulus: &Poly) -> Result<FrobeniusMap> {
        let f = modulus.monic()?;
        let d = f.degree().ok_or(Error::ZeroPolynomial)?;
        let q: BigUint = f.field().cardinality().clone();
        let xq = Poly::x(f.field()).powmod(&q, &f)?;
        let mut rows = Vec::with_capacity(d);
        let mut cur = Poly::one(f.field()).rem(&f)?;
        for _ in 0..d {
            rows.push(cur.clone());
            cur = cur.mulmod(&xq, &f)?;
        }
        Ok(FrobeniusMap { modulus: f, rows })
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// `x^q mod f`
    pub fn x_q(&self) -> Poly {
        if self.rows.len() > 1 {
            self.rows[1].clone()
        } else {
            Poly::x(self.modulus.field()).rem(&self.modulus).expect("nonzero")
        }
    }

    /// `v^q mod f` for `v` already reduced mod `f`.
    pub fn apply(&self, v: &Poly) -> Poly {
        let field = self.modulus.field();
        let dim = field.dim();
        let d = self.rows.len();
        let p = field.characteristic();
        if dim == 1 {
            let mut acc = vec![0u128; d];
            for (i, row) in self.rows.iter().enumerate().take(v.len()) {
                let c = v.coeffs[i] as u128;
                if c == 0 {
                    continue;
                }
                for (a, &r) in acc.iter_mut().zip(&row.coeffs) {
                    *a += c * r as u128;
                }
            }
            let pm = p as u128;
            let flat = acc.into_iter().map(|x| (x % pm) as u64).collect();
            return Poly::from_flat(field, flat);
        }
        let desc = field.desc();
        let level = field.level();
        let mut acc = vec![0u64; d * dim];
        for (i, row) in self.rows.iter().enumerate().take(v.len()) {
            let c = v.coeff_slice(i);
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            for k in 0..row.len() {
                desc.mul_acc(level, c, row.coeff_slice(k), &mut acc[k * dim..(k + 1) * dim]);
            }
        }
        Poly::from_flat(field, acc)
    }
}

/// Rabin's test: `f` of degree `d` is irreducible iff `x^(q^d) = x mod f` and
/// `gcd(x^(q^(d/r)) - x, f) = 1` for every prime `r | d`.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if d == 1 {
        return Ok(true);
    }
    let g = f.monic()?;
    let x = Poly::x(g.field());
    if d <= 3 {
        // reducible quadratics and cubics have a linear factor
        let q = g.field().cardinality().clone();
        let xq = x.powmod(&q, &g)?;
        return Ok(xq.sub(&x)?.gcd(&g)?.degree() == Some(0));
    }
    let frob = FrobeniusMap::new(&g)?;
    let checkpoints: Vec<usize> = prime_divisors(d as u64)
        .into_iter()
        .map(|r| d / r as usize)
        .collect();
    let mut cur = frob.x_q();
    for k in 1..=d {
        if checkpoints.contains(&k) && cur.sub(&x)?.gcd(&g)?.degree() != Some(0) {
            return Ok(false);
        }
        if k < d {
            cur = frob.apply(&cur);
        }
    }
    Ok(cur == x.rem(&g)?)
}

/// Distinct roots in the coefficient field, in canonical order.
pub fn distinct_roots(f: &Poly, seed: u64) -> Result<Vec<FieldElem>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let g = f.monic()?;
    let x = Poly::x(g.field());
    let q = g.field().cardinality().clone();
    let xq = x.powmod(&q, &g)?;
    let split = xq.sub(&x)?.gcd(&g)?;
    if split.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let linear = super::factor::equal_degree_split(&split, 1, seed)?;
    let mut roots: Vec<FieldElem> = linear.iter().map(|l| l.coeff(0).neg()).collect();
    roots.sort();
    Ok(roots)
}

/// All roots in the coefficient field, repeated by multiplicity, in canonical order.
pub fn roots_in_field(f: &Poly) -> Result<Vec<FieldElem>> {
    let distinct = distinct_roots(f, super::DEFAULT_SEED)?;
    let mut out = Vec::new();
    for r in distinct {
        let lin = Poly::x(f.field()).sub_const(&r)?;
        let mut rest = f.clone();
        loop {
            let (q, rem) = rest.divrem(&lin)?;
            if !rem.is_zero() {
                break;
            }
            out.push(r.clone());
            rest = q;
        }
    }
    Ok(out)
}
