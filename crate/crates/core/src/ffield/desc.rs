//! Field towers and the flat-slice arithmetic every other module builds on.
//!
//! An element of level `k` is stored as a flat vector of `dim(k)` prime-field
//! digits. Level `k` is `level(k-1)[t] / (m_k(t))`, so the flat vector is the
//! concatenation of `degree(k)` chunks, each a level `k-1` element holding the
//! coefficient of `t^i`. A level `j` element embeds into level `k >= j` by
//! zero padding.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::intarith::{inv_mod, is_prime};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Level {
    pub(crate) degree: usize,
    pub(crate) dim: usize,
    /// Monic modulus over the level below, `degree + 1` chunks; empty at level 0.
    pub(crate) modulus: Vec<u64>,
    pub(crate) cardinality: BigUint,
}

/// A finite field presented as a tower over its prime field.
///
/// Level 0 is always `F_p`; level `k >= 1` is an extension of level `k - 1`
/// by a monic irreducible modulus.
#[derive(Debug, PartialEq, Eq)]
pub struct FieldDesc {
    p: u64,
    levels: Vec<Level>,
}

/// A handle on one level of a tower.
#[derive(Debug, Clone)]
pub struct Field {
    pub(crate) desc: Arc<FieldDesc>,
    pub(crate) level: usize,
}

impl FieldDesc {
    pub(crate) fn prime(p: u64) -> Result<FieldDesc> {
        if !is_prime(p) {
            return Err(Error::CompositeCharacteristic(p));
        }
        if p >= 1 << 32 {
            return Err(Error::CharacteristicTooLarge(p));
        }
        Ok(FieldDesc {
            p,
            levels: vec![Level {
                degree: 1,
                dim: 1,
                modulus: Vec::new(),
                cardinality: BigUint::from(p),
            }],
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Index of the top level.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn degree(&self, level: usize) -> usize {
        self.levels[level].degree
    }

    /// Degree of level `level` over the prime field.
    pub fn dim(&self, level: usize) -> usize {
        self.levels[level].dim
    }

    pub fn cardinality(&self, level: usize) -> &BigUint {
        &self.levels[level].cardinality
    }

    /// Degrees of levels `1..=level`.
    /// Extension degrees of levels `1..=level`; the prime field reports `[1]`.
    pub fn degrees_up_to(&self, level: usize) -> Vec<usize> {
        if level == 0 {
            return vec![1];
        }
        self.levels[1..=level].iter().map(|l| l.degree).collect()
    }

    pub(crate) fn modulus(&self, level: usize) -> &[u64] {
        &self.levels[level].modulus
    }

    /// Copy of the tower truncated at `level` with one more level on top.
    pub(crate) fn with_level(&self, below: usize, modulus: Vec<u64>) -> FieldDesc {
        let dim_below = self.dim(below);
        let degree = modulus.len() / dim_below - 1;
        let dim = dim_below * degree;
        let mut levels = self.levels[..=below].to_vec();
        levels.push(Level {
            degree,
            dim,
            modulus,
            cardinality: BigUint::from(self.p).pow(dim as u32),
        });
        FieldDesc { p: self.p, levels }
    }

    /// True when both towers agree on every level up to `level`.
    pub(crate) fn agrees_with(&self, other: &FieldDesc, level: usize) -> bool {
        self.p == other.p
            && self.levels.len() > level
            && other.levels.len() > level
            && self.levels[..=level] == other.levels[..=level]
    }

    // ---- flat-slice arithmetic -------------------------------------------

    #[inline]
    pub(crate) fn add_assign(&self, a: &mut [u64], b: &[u64]) {
        let p = self.p;
        for (x, &y) in a.iter_mut().zip(b) {
            let s = *x + y;
            *x = if s >= p { s - p } else { s };
        }
    }

    #[inline]
    pub(crate) fn sub_assign(&self, a: &mut [u64], b: &[u64]) {
        let p = self.p;
        for (x, &y) in a.iter_mut().zip(b) {
            *x = if *x >= y { *x - y } else { *x + p - y };
        }
    }

    pub(crate) fn neg_in_place(&self, a: &mut [u64]) {
        let p = self.p;
        for x in a.iter_mut() {
            if *x != 0 {
                *x = p - *x;
            }
        }
    }

    pub(crate) fn scale_in_place(&self, a: &mut [u64], s: u64) {
        let p = self.p;
        for x in a.iter_mut() {
            *x = *x * s % p;
        }
    }

    /// Lowest level that contains the element (0 for zero).
    pub(crate) fn effective_level(&self, level: usize, a: &[u64]) -> usize {
        match a.iter().rposition(|&c| c != 0) {
            None => 0,
            Some(idx) => {
                let mut j = 0;
                while self.levels[j].dim <= idx {
                    j += 1;
                }
                j.min(level)
            }
        }
    }

    pub(crate) fn mul(&self, level: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.levels[level].dim];
        self.mul_acc(level, a, b, &mut out);
        out
    }

    /// `acc += a * b` at `level`.
    pub(crate) fn mul_acc(&self, level: usize, a: &[u64], b: &[u64], acc: &mut [u64]) {
        let p = self.p;
        if level == 0 {
            acc[0] = (acc[0] + a[0] * b[0] % p) % p;
            return;
        }
        let ea = self.effective_level(level, a);
        let eb = self.effective_level(level, b);
        if ea < level || eb < level {
            // one factor is a scalar for a lower level: multiply chunkwise
            let (big, small, es) = if eb <= ea { (a, b, eb) } else { (b, a, ea) };
            let d = self.levels[es].dim;
            let small = &small[..d];
            if small.iter().all(|&c| c == 0) {
                return;
            }
            if es == 0 {
                let s = small[0];
                for (x, &y) in acc.iter_mut().zip(big) {
                    *x = (*x + y * s) % p;
                }
                return;
            }
            for (ach, bch) in acc.chunks_mut(d).zip(big.chunks(d)) {
                if bch.iter().any(|&c| c != 0) {
                    self.mul_acc(es, bch, small, ach);
                }
            }
            return;
        }
        let prod = self.mul_full(level, a, b);
        self.add_assign(acc, &prod);
    }

    /// Product of two elements that genuinely live at `level`.
    fn mul_full(&self, level: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
        let lv = &self.levels[level];
        let d = lv.degree;
        let sub = self.levels[level - 1].dim;
        if sub == 1 {
            return self.mul_over_prime(level, a, b);
        }
        let mut prod = vec![0u64; (2 * d - 1) * sub];
        for i in 0..d {
            let ai = &a[i * sub..(i + 1) * sub];
            if ai.iter().all(|&c| c == 0) {
                continue;
            }
            for j in 0..d {
                let bj = &b[j * sub..(j + 1) * sub];
                if bj.iter().all(|&c| c == 0) {
                    continue;
                }
                self.mul_acc(level - 1, ai, bj, &mut prod[(i + j) * sub..(i + j + 1) * sub]);
            }
        }
        self.reduce(level, &mut prod);
        prod.truncate(d * sub);
        prod
    }

    /// Product at a level sitting directly on the prime field: schoolbook with
    /// `u128` accumulators, one modular reduction per output digit.
    fn mul_over_prime(&self, level: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
        let d = self.levels[level].degree;
        let p = self.p as u128;
        let mut acc = vec![0u128; 2 * d - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let ai = ai as u128;
            for (x, &bj) in acc[i..i + d].iter_mut().zip(b) {
                *x += ai * bj as u128;
            }
        }
        // each slot receives fewer than 2d products below p^2 (p < 2^32), so no overflow
        let m = &self.levels[level].modulus;
        for t in (d..acc.len()).rev() {
            let c = acc[t] % p;
            if c == 0 {
                continue;
            }
            for (k, &mk) in m[..d].iter().enumerate() {
                if mk != 0 {
                    acc[t - d + k] += c * (p - mk as u128);
                }
            }
        }
        acc[..d].iter().map(|&x| (x % p) as u64).collect()
    }

    /// Reduce a chunk vector of length `>= degree` chunks modulo the level modulus in place.
    pub(crate) fn reduce(&self, level: usize, buf: &mut [u64]) {
        let lv = &self.levels[level];
        let d = lv.degree;
        let sub = self.levels[level - 1].dim;
        let nchunks = buf.len() / sub;
        let m = &lv.modulus;
        for t in (d..nchunks).rev() {
            let c: Vec<u64> = buf[t * sub..(t + 1) * sub].to_vec();
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            for k in 0..d {
                let mk = &m[k * sub..(k + 1) * sub];
                if mk.iter().all(|&x| x == 0) {
                    continue;
                }
                let prodk = self.mul(level - 1, &c, mk);
                self.sub_assign(&mut buf[(t - d + k) * sub..(t - d + k + 1) * sub], &prodk);
            }
            buf[t * sub..(t + 1) * sub].iter_mut().for_each(|x| *x = 0);
        }
    }

    pub(crate) fn square(&self, level: usize, a: &[u64]) -> Vec<u64> {
        if level == 0 || self.effective_level(level, a) < level {
            return self.mul(level, a, a);
        }
        let d = self.levels[level].degree;
        let sub = self.levels[level - 1].dim;
        if sub == 1 {
            return self.mul_over_prime(level, a, a);
        }
        let mut prod = vec![0u64; (2 * d - 1) * sub];
        for i in 0..d {
            let ai = &a[i * sub..(i + 1) * sub];
            if ai.iter().all(|&c| c == 0) {
                continue;
            }
            let sq = self.square(level - 1, ai);
            self.add_assign(&mut prod[2 * i * sub..(2 * i + 1) * sub], &sq);
            for j in i + 1..d {
                let aj = &a[j * sub..(j + 1) * sub];
                if aj.iter().all(|&c| c == 0) {
                    continue;
                }
                let mut cross = self.mul(level - 1, ai, aj);
                let c2 = cross.clone();
                self.add_assign(&mut cross, &c2);
                self.add_assign(&mut prod[(i + j) * sub..(i + j + 1) * sub], &cross);
            }
        }
        self.reduce(level, &mut prod);
        prod.truncate(d * sub);
        prod
    }

    pub(crate) fn one(&self, level: usize) -> Vec<u64> {
        let mut v = vec![0; self.levels[level].dim];
        v[0] = 1 % self.p;
        v
    }

    pub(crate) fn pow(&self, level: usize, a: &[u64], e: &BigUint) -> Vec<u64> {
        let mut acc = self.one(level);
        if e.is_zero() {
            return acc;
        }
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.square(level, &acc);
            if e.bit(i) {
                acc = self.mul(level, &acc, a);
            }
        }
        acc
    }

    pub(crate) fn pow_u64(&self, level: usize, a: &[u64], e: u64) -> Vec<u64> {
        self.pow(level, a, &BigUint::from(e))
    }

    pub(crate) fn inv(&self, level: usize, a: &[u64]) -> Option<Vec<u64>> {
        let el = self.effective_level(level, a);
        if a.iter().all(|&c| c == 0) {
            return None;
        }
        let mut out = vec![0; self.levels[level].dim];
        if el == 0 {
            out[0] = inv_mod(a[0], self.p)?;
            return Some(out);
        }
        let r = self.inv_full(el, &a[..self.levels[el].dim])?;
        out[..r.len()].copy_from_slice(&r);
        Some(out)
    }

    /// Inverse at `level >= 1` by the extended Euclidean algorithm over the level below.
    fn inv_full(&self, level: usize, a: &[u64]) -> Option<Vec<u64>> {
        let lv = &self.levels[level];
        let sub = self.levels[level - 1].dim;
        let below = level - 1;
        let a_poly: Vec<Vec<u64>> = a.chunks(sub).map(|c| c.to_vec()).collect();
        let m_poly: Vec<Vec<u64>> = lv.modulus.chunks(sub).map(|c| c.to_vec()).collect();
        // invariant: s_i * a == r_i (mod m)
        let mut r0 = SmallPoly::new(m_poly, sub);
        let mut r1 = SmallPoly::new(a_poly, sub);
        let mut s0 = SmallPoly::zero(sub);
        let mut s1 = SmallPoly::constant(self.one(below));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(self, below, &r1);
            let s2 = s0.sub(self, &q.mul(self, below, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant when a is invertible
        if r0.degree() != Some(0) {
            return None;
        }
        let c_inv = self.inv(below, &r0.coeffs[0])?;
        let s = s0.scale(self, below, &c_inv);
        let mut out = vec![0; lv.dim];
        for (i, c) in s.coeffs.iter().enumerate().take(lv.degree) {
            out[i * sub..(i + 1) * sub].copy_from_slice(c);
        }
        Some(out)
    }

    /// Relative norm from `level` to `level - 1`, as `Res(m, a(t))` for the monic modulus `m`.
    pub(crate) fn relative_norm(&self, level: usize, a: &[u64]) -> Vec<u64> {
        let lv = &self.levels[level];
        let sub = self.levels[level - 1].dim;
        let below = level - 1;
        let m = SmallPoly::new(lv.modulus.chunks(sub).map(|c| c.to_vec()).collect(), sub);
        let ap = SmallPoly::new(a.chunks(sub).map(|c| c.to_vec()).collect(), sub);
        small_resultant(self, below, m, ap)
    }

    /// Relative trace from `level` to `level - 1`: trace of multiplication by `a`.
    pub(crate) fn relative_trace(&self, level: usize, a: &[u64]) -> Vec<u64> {
        let d = self.levels[level].degree;
        let sub = self.levels[level - 1].dim;
        let mut acc = vec![0; sub];
        let mut w = a.to_vec();
        for i in 0..d {
            self.add_assign(&mut acc, &w[i * sub..(i + 1) * sub]);
            if i + 1 < d {
                // w <- w * t
                let mut shifted = vec![0; (d + 1) * sub];
                shifted[sub..].copy_from_slice(&w);
                self.reduce(level, &mut shifted);
                shifted.truncate(d * sub);
                w = shifted;
            }
        }
        acc
    }
}

/// Dense polynomial with coefficients at one level, used only inside the
/// field layer (inversion and relative norms).
#[derive(Debug, Clone)]
struct SmallPoly {
    coeffs: Vec<Vec<u64>>,
    sub: usize,
}

impl SmallPoly {
    fn new(mut coeffs: Vec<Vec<u64>>, sub: usize) -> SmallPoly {
        while coeffs.last().is_some_and(|c| c.iter().all(|&x| x == 0)) {
            coeffs.pop();
        }
        SmallPoly { coeffs, sub }
    }
    fn zero(sub: usize) -> SmallPoly {
        SmallPoly { coeffs: Vec::new(), sub }
    }
    fn constant(c: Vec<u64>) -> SmallPoly {
        let sub = c.len();
        SmallPoly::new(vec![c], sub)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    fn sub(&self, f: &FieldDesc, other: &SmallPoly) -> SmallPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![vec![0; self.sub]; n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i].copy_from_slice(c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            f.sub_assign(&mut out[i], c);
        }
        SmallPoly::new(out, self.sub)
    }
    fn mul(&self, f: &FieldDesc, level: usize, other: &SmallPoly) -> SmallPoly {
        if self.is_zero() || other.is_zero() {
            return SmallPoly::zero(self.sub);
        }
        let mut out = vec![vec![0; self.sub]; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                f.mul_acc(level, a, b, &mut out[i + j]);
            }
        }
        SmallPoly::new(out, self.sub)
    }
    fn scale(&self, f: &FieldDesc, level: usize, c: &[u64]) -> SmallPoly {
        let coeffs = self.coeffs.iter().map(|a| f.mul(level, a, c)).collect();
        SmallPoly::new(coeffs, self.sub)
    }
    fn divrem(&self, f: &FieldDesc, level: usize, div: &SmallPoly) -> (SmallPoly, SmallPoly) {
        let dd = div.degree().expect("division by zero polynomial");
        let lead_inv = f.inv(level, &div.coeffs[dd]).expect("leading coefficient invertible");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (SmallPoly::zero(self.sub), SmallPoly::new(rem, self.sub));
        }
        let mut quo = vec![vec![0; self.sub]; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].iter().all(|&x| x == 0) {
                continue;
            }
            let q = f.mul(level, &rem[k], &lead_inv);
            for (j, dc) in div.coeffs.iter().enumerate() {
                let t = f.mul(level, &q, dc);
                f.sub_assign(&mut rem[k - dd + j], &t);
            }
            quo[k - dd] = q;
        }
        rem.truncate(dd);
        (SmallPoly::new(quo, self.sub), SmallPoly::new(rem, self.sub))
    }
}

/// `Res(f, g)` over `level` by the Euclidean recursion.
fn small_resultant(fd: &FieldDesc, level: usize, f: SmallPoly, g: SmallPoly) -> Vec<u64> {
    let zero = vec![0; fd.dim(level)];
    let (mut f, mut g) = (f, g);
    let mut acc = fd.one(level);
    loop {
        let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
            return zero;
        };
        if n == 0 {
            let c = fd.pow_u64(level, &g.coeffs[0], m as u64);
            return fd.mul(level, &acc, &c);
        }
        let (_, r) = f.divrem(fd, level, &g);
        let Some(k) = r.degree() else {
            return zero;
        };
        // Res(f, g) = (-1)^{mn} lc(g)^{m-k} Res(g, r)
        let lc = fd.pow_u64(level, &g.coeffs[n], (m - k) as u64);
        acc = fd.mul(level, &acc, &lc);
        if (m * n) % 2 == 1 {
            fd.neg_in_place(&mut acc);
        }
        f = g;
        g = r;
    }
}

impl Field {
    pub fn desc(&self) -> &FieldDesc {
        &self.desc
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn characteristic(&self) -> u64 {
        self.desc.p
    }

    /// Degree over the prime field.
    pub fn dim(&self) -> usize {
        self.desc.dim(self.level)
    }

    /// Number of elements `q`.
    pub fn cardinality(&self) -> &BigUint {
        self.desc.cardinality(self.level)
    }

    /// Cardinality as a `u64`, when it fits.
    pub fn cardinality_u64(&self) -> Option<u64> {
        u64::try_from(self.cardinality()).ok()
    }

    /// The same tower viewed at a lower level.
    pub fn at_level(&self, level: usize) -> Result<Field> {
        if level > self.desc.top() {
            return Err(Error::LevelOutOfRange {
                requested: level,
                available: self.desc.top(),
            });
        }
        Ok(Field {
            desc: self.desc.clone(),
            level,
        })
    }

    /// Top level of a tower.
    pub fn from_desc(desc: FieldDesc) -> Field {
        Field {
            level: desc.top(),
            desc: Arc::new(desc),
        }
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        Ok(Field::from_desc(FieldDesc::prime(p)?))
    }

    pub fn prime_field(&self) -> Field {
        Field {
            desc: self.desc.clone(),
            level: 0,
        }
    }

    /// Same tower and level (structurally, towers may be distinct allocations).
    pub fn same_as(&self, other: &Field) -> bool {
        self.level == other.level
            && (Arc::ptr_eq(&self.desc, &other.desc)
                || self.desc.agrees_with(&other.desc, self.level))
    }

    /// `other` is a level of a tower compatible with ours at or below our level.
    pub fn contains(&self, other: &Field) -> bool {
        other.level <= self.level
            && (Arc::ptr_eq(&self.desc, &other.desc)
                || self.desc.agrees_with(&other.desc, other.level))
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Field {}
