use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ffield::{Field, FieldElem};

/// Dense univariate polynomial over one level of a field tower.
///
/// Coefficients are stored flat, low degree first, each occupying
/// `field.dim()` prime-field digits. Trailing zero coefficients are stripped.
#[derive(Clone)]
pub struct Poly {
    pub(crate) field: Field,
    pub(crate) coeffs: Vec<u64>,
}

impl Poly {
    pub(crate) fn from_flat(field: &Field, mut coeffs: Vec<u64>) -> Poly {
        let dim = field.dim();
        debug_assert_eq!(coeffs.len() % dim, 0);
        while coeffs.len() >= dim && coeffs[coeffs.len() - dim..].iter().all(|&c| c == 0) {
            coeffs.truncate(coeffs.len() - dim);
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(&field.one())
    }

    /// The polynomial `x`.
    pub fn x(field: &Field) -> Poly {
        Poly::monomial(&field.one(), 1)
    }

    pub fn constant(c: &FieldElem) -> Poly {
        Poly::from_flat(c.field(), c.digits().to_vec())
    }

    /// `c * x^k`
    pub fn monomial(c: &FieldElem, k: usize) -> Poly {
        let dim = c.field().dim();
        let mut coeffs = vec![0; (k + 1) * dim];
        coeffs[k * dim..].copy_from_slice(c.digits());
        Poly::from_flat(c.field(), coeffs)
    }

    /// From coefficients, low degree first.
    pub fn from_elems(field: &Field, elems: &[FieldElem]) -> Result<Poly> {
        let mut coeffs = Vec::with_capacity(elems.len() * field.dim());
        for e in elems {
            if !e.field().same_as(field) {
                return Err(Error::FieldMismatch);
            }
            coeffs.extend_from_slice(e.digits());
        }
        Ok(Poly::from_flat(field, coeffs))
    }

    /// From integer coefficients (mapped into the prime field), low degree first.
    pub fn from_i64s(field: &Field, ints: &[i64]) -> Poly {
        let elems: Vec<FieldElem> = ints.iter().map(|&v| field.from_i64(v)).collect();
        Poly::from_elems(field, &elems).expect("same field")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn dim(&self) -> usize {
        self.field.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored coefficients (degree + 1, or 0 for the zero polynomial).
    pub fn len(&self) -> usize {
        self.coeffs.len() / self.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.len().checked_sub(1)
    }

    pub(crate) fn coeff_slice(&self, i: usize) -> &[u64] {
        let d = self.dim();
        &self.coeffs[i * d..(i + 1) * d]
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> FieldElem {
        if i >= self.len() {
            return self.field.zero();
        }
        self.field
            .from_flat(self.coeff_slice(i))
            .expect("digit count matches")
    }

    pub fn coeffs(&self) -> Vec<FieldElem> {
        (0..self.len()).map(|i| self.coeff(i)).collect()
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lead(&self) -> FieldElem {
        match self.degree() {
            Some(d) => self.coeff(d),
            None => self.field.zero(),
        }
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lead().is_one()
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut c = long.coeffs.clone();
        self.field.desc().add_assign(&mut c, &short.coeffs);
        Ok(Poly::from_flat(&self.field, c))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut c = self.coeffs.clone();
        if c.len() < other.coeffs.len() {
            c.resize(other.coeffs.len(), 0);
        }
        self.field.desc().sub_assign(&mut c, &other.coeffs);
        Ok(Poly::from_flat(&self.field, c))
    }

    pub fn neg(&self) -> Poly {
        let mut c = self.coeffs.clone();
        self.field.desc().neg_in_place(&mut c);
        Poly::from_flat(&self.field, c)
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &FieldElem) -> Result<Poly> {
        if !c.field().same_as(&self.field) {
            return Err(Error::FieldMismatch);
        }
        let desc = self.field.desc();
        let level = self.field.level();
        let d = self.dim();
        let mut out = vec![0; self.coeffs.len()];
        for (o, a) in out.chunks_mut(d).zip(self.coeffs.chunks(d)) {
            desc.mul_acc(level, a, c.digits(), o);
        }
        Ok(Poly::from_flat(&self.field, out))
    }

    /// Scale to leading coefficient 1.
    pub fn monic(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        self.scale(&self.lead().inv()?)
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(Poly::from_flat(&self.field, self.mul_raw(other)))
    }

    fn mul_raw(&self, other: &Poly) -> Vec<u64> {
        if self.is_zero() || other.is_zero() {
            return Vec::new();
        }
        let (n, m) = (self.len(), other.len());
        let d = self.dim();
        let p = self.field.characteristic();
        if d == 1 {
            return mul_prime(&self.coeffs, &other.coeffs, p);
        }
        let desc = self.field.desc();
        let level = self.field.level();
        let mut out = vec![0; (n + m - 1) * d];
        for i in 0..n {
            let a = self.coeff_slice(i);
            if a.iter().all(|&c| c == 0) {
                continue;
            }
            for j in 0..m {
                let b = other.coeff_slice(j);
                if b.iter().all(|&c| c == 0) {
                    continue;
                }
                desc.mul_acc(level, a, b, &mut out[(i + j) * d..(i + j + 1) * d]);
            }
        }
        out
    }

    pub fn square(&self) -> Poly {
        Poly::from_flat(&self.field, self.mul_raw(self))
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn divrem(&self, div: &Poly) -> Result<(Poly, Poly)> {
        self.check(div)?;
        let dd = div.degree().ok_or(Error::DivisionByZero)?;
        if self.len() <= dd {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let d = self.dim();
        let desc = self.field.desc();
        let level = self.field.level();
        let p = self.field.characteristic();
        let lead_inv = div.lead().inv()?;
        let mut rem = self.coeffs.clone();
        let n = self.len();
        let mut quo = vec![0; (n - dd) * d];
        if d == 1 {
            let li = lead_inv.digits()[0];
            for k in (dd..n).rev() {
                let top = rem[k];
                if top == 0 {
                    continue;
                }
                let q = top * li % p;
                quo[k - dd] = q;
                let off = k - dd;
                for (j, &c) in div.coeffs.iter().enumerate() {
                    if c != 0 {
                        let t = q * c % p;
                        let r = &mut rem[off + j];
                        *r = if *r >= t { *r - t } else { *r + p - t };
                    }
                }
            }
        } else {
            for k in (dd..n).rev() {
                let top = rem[k * d..(k + 1) * d].to_vec();
                if top.iter().all(|&c| c == 0) {
                    continue;
                }
                let q = desc.mul(level, &top, lead_inv.digits());
                for j in 0..=dd {
                    let c = div.coeff_slice(j);
                    if c.iter().all(|&x| x == 0) {
                        continue;
                    }
                    let t = desc.mul(level, &q, c);
                    desc.sub_assign(&mut rem[(k - dd + j) * d..(k - dd + j + 1) * d], &t);
                }
                quo[(k - dd) * d..(k - dd + 1) * d].copy_from_slice(&q);
            }
        }
        rem.truncate(dd * d);
        Ok((Poly::from_flat(&self.field, quo), Poly::from_flat(&self.field, rem)))
    }

    pub fn rem(&self, div: &Poly) -> Result<Poly> {
        Ok(self.divrem(div)?.1)
    }

    /// Exact division; fails if `div` does not divide `self`.
    pub fn div_exact(&self, div: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(div)?;
        if !r.is_zero() {
            return Err(Error::InvalidArgument("division is not exact".into()));
        }
        Ok(q)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    pub fn mulmod(&self, other: &Poly, modulus: &Poly) -> Result<Poly> {
        self.mul(other)?.rem(modulus)
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn powmod(&self, e: &BigUint, modulus: &Poly) -> Result<Poly> {
        let base = self.rem(modulus)?;
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        if e.is_zero() {
            return Ok(acc);
        }
        for i in (0..e.bits()).rev() {
            acc = acc.square().rem(modulus)?;
            if e.bit(i) {
                acc = acc.mul(&base)?.rem(modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, at: &FieldElem) -> Result<FieldElem> {
        if !at.field().same_as(&self.field) {
            return Err(Error::FieldMismatch);
        }
        let mut acc = self.field.zero();
        for i in (0..self.len()).rev() {
            acc = acc.mul(at)?.add(&self.coeff(i))?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Poly {
        let d = self.dim();
        if self.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let p = self.field.characteristic();
        let mut out = vec![0; (self.len() - 1) * d];
        for i in 1..self.len() {
            let k = (i as u64) % p;
            for (o, &c) in out[(i - 1) * d..i * d].iter_mut().zip(self.coeff_slice(i)) {
                *o = c * k % p;
            }
        }
        Poly::from_flat(&self.field, out)
    }

    /// `self(inner(x))` by Horner's rule.
    pub fn compose(&self, inner: &Poly) -> Result<Poly> {
        self.check(inner)?;
        let mut acc = Poly::zero(&self.field);
        for i in (0..self.len()).rev() {
            acc = acc.mul(inner)?.add(&Poly::constant(&self.coeff(i)))?;
        }
        Ok(acc)
    }

    /// `n`-fold composition `f o f o ... o f`; `iterate(f, 0) = x`.
    pub fn iterate(&self, n: usize) -> Result<Poly> {
        let mut acc = Poly::x(&self.field);
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Reinterpret over a compatible higher level of the same tower.
    pub fn lift(&self, to: &Field) -> Result<Poly> {
        if !to.contains(&self.field) {
            return Err(Error::FieldMismatch);
        }
        let elems: Vec<FieldElem> = self
            .coeffs()
            .iter()
            .map(|c| to.embed(c))
            .collect::<Result<_>>()?;
        Poly::from_elems(to, &elems)
    }

    /// `self - c` for a field constant `c`.
    /// `self^e` by repeated squaring.
    pub fn pow(&self, mut e: usize) -> Result<Poly> {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        Ok(acc)
    }

    pub fn sub_const(&self, c: &FieldElem) -> Result<Poly> {
        self.sub(&Poly::constant(c))
    }

    /// `true` when every coefficient lies in the prime field.
    pub fn is_over_prime(&self) -> bool {
        (0..self.len()).all(|i| self.coeff_slice(i)[1..].iter().all(|&c| c == 0))
    }
}

/// Schoolbook product over `F_p` with delayed reduction.
fn mul_prime(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len() + b.len() - 1;
    let mut acc = vec![0u128; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as u128;
        for (o, &y) in acc[i..].iter_mut().zip(b) {
            *o += x * y as u128;
        }
        // p < 2^32 keeps every partial sum below 2^128 for the sizes in use
    }
    let pm = p as u128;
    acc.into_iter().map(|v| (v % pm) as u64).collect()
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field.same_as(&other.field)
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Human form `a_d*x^d + ... + a_0`; unit coefficients are omitted.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.len()).rev() {
            let c = self.coeff(i);
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = c.to_string();
            match i {
                0 => write!(f, "{}", coef)?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{}*", coef)?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}
