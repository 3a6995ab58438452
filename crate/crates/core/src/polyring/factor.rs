//! Complete factorization: square-free, distinct-degree, then Cantor-Zassenhaus
//! equal-degree splitting with a seeded generator.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{is_irreducible, Poly};
use crate::error::{Error, Result};
use crate::ffield::FieldElem;

/// A factorization `unit * prod(factor^multiplicity)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorList {
    /// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
    pub factors: Vec<(Poly, usize)>,
    pub unit: FieldElem,
    /// Seed of the splitting generator.
    pub seed: u64,
}

impl FactorList {
    pub fn count_with_multiplicity(&self) -> usize {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    /// Multiply the factorization back out.
    pub fn product(&self) -> Result<Poly> {
        let mut acc = Poly::constant(&self.unit);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f)?;
            }
        }
        Ok(acc)
    }

    /// Every listed factor passes Rabin's test.
    pub fn factors_are_irreducible(&self) -> Result<bool> {
        for (g, _) in &self.factors {
            if !is_irreducible(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_irreducible_input(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factor with the default seed.
pub fn factor(f: &Poly) -> Result<FactorList> {
    factor_seeded(f, super::DEFAULT_SEED)
}

pub fn factor_seeded(f: &Poly, seed: u64) -> Result<FactorList> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.lead();
    let g = f.monic()?;
    let mut factors: Vec<(Poly, usize)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (sqf, mult) in squarefree(&g)? {
        for (part, deg) in distinct_degree(&sqf)? {
            for irr in split_with(&part, deg, &mut rng)? {
                match factors.iter_mut().find(|(h, _)| *h == irr) {
                    Some(entry) => entry.1 += mult,
                    None => factors.push((irr, mult)),
                }
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then(a.coeffs.cmp(&b.coeffs)));
    Ok(FactorList {
        factors,
        unit,
        seed,
    })
}

/// `c^(1/p)` in the coefficient field.
fn pth_root(c: &FieldElem) -> FieldElem {
    let q = c.field().cardinality();
    c.pow(&(q / BigUint::from(c.field().characteristic())))
}

/// `f(x) = g(x^p)` -> `g(x)^(1/p)` coefficientwise.
fn pth_root_poly(f: &Poly) -> Result<Poly> {
    let p = f.field().characteristic() as usize;
    let n = f.len();
    let elems: Vec<FieldElem> = (0..n).step_by(p).map(|i| pth_root(&f.coeff(i))).collect();
    Poly::from_elems(f.field(), &elems)
}

/// Square-free decomposition of a monic polynomial: pairs `(part, multiplicity)`
/// whose parts are square-free, pairwise coprime and nonconstant.
pub fn squarefree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let mut out = Vec::new();
    squarefree_into(f, 1, &mut out)?;
    Ok(out)
}

fn squarefree_into(f: &Poly, scale: usize, out: &mut Vec<(Poly, usize)>) -> Result<()> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(());
    }
    let p = f.field().characteristic() as usize;
    let df = f.derivative();
    if df.is_zero() {
        return squarefree_into(&pth_root_poly(f)?, scale * p, out);
    }
    let mut c = f.gcd(&df)?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1;
    while w.degree() != Some(0) {
        let y = w.gcd(&c)?;
        let fac = w.div_exact(&y)?;
        if fac.degree() != Some(0) {
            out.push((fac.monic()?, i * scale));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w)?;
    }
    if c.degree() != Some(0) {
        squarefree_into(&pth_root_poly(&c.monic()?)?, scale * p, out)?;
    }
    Ok(())
}

/// Distinct-degree factorization of a monic square-free polynomial.
pub fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let mut out = Vec::new();
    let mut rest = f.monic()?;
    let x = Poly::x(f.field());
    let q = f.field().cardinality().clone();
    let mut h = x.powmod(&q, &rest)?;
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        let g = h.sub(&x)?.gcd(&rest)?;
        if g.degree() != Some(0) {
            rest = rest.div_exact(&g)?;
            out.push((g, i));
            h = h.rem(&rest)?;
        }
        h = h.powmod(&q, &rest)?;
        i += 1;
    }
    if let Some(d) = rest.degree() {
        if d > 0 {
            out.push((rest, d));
        }
    }
    Ok(out)
}

/// Split a product of distinct monic irreducibles of degree `deg`.
pub fn equal_degree_split(f: &Poly, deg: usize, seed: u64) -> Result<Vec<Poly>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    split_with(f, deg, &mut rng)
}

fn split_with(f: &Poly, deg: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let f = f.monic()?;
    let n = f.degree().expect("nonzero");
    if n == deg {
        return Ok(vec![f]);
    }
    let field = f.field().clone();
    let p = field.characteristic();
    let q = field.cardinality().clone();
    loop {
        let digits: Vec<u64> = (0..n * field.dim()).map(|_| rng.gen_range(0..p)).collect();
        let a = Poly::from_flat(&field, digits);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(k-1)), k = deg * dim
            let k = deg * field.dim();
            let mut acc = a.clone();
            let mut cur = a.clone();
            for _ in 1..k {
                cur = cur.square().rem(&f)?;
                acc = acc.add(&cur)?;
            }
            acc
        } else {
            let e = (q.pow(deg as u32) - BigUint::one()) >> 1u32;
            a.powmod(&e, &f)?.sub(&Poly::one(&field))?
        };
        let g = b.gcd(&f)?;
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < n {
                let h = f.div_exact(&g)?;
                let mut out = split_with(&g, deg, rng)?;
                out.extend(split_with(&h, deg, rng)?);
                return Ok(out);
            }
        }
    }
}

/// Irreducibility read off a complete factorization; cross-check for [`is_irreducible`].
pub fn irreducible_by_factoring(f: &Poly) -> Result<bool> {
    let fl = factor(f)?;
    Ok(fl.is_irreducible_input() && fl.factors[0].0.degree() == f.degree())
}
