use super::{is_irreducible, Poly};
use crate::error::{Error, Result};
use crate::ffield::FieldElem;

/// `f^phi = phi o f o phi^{-1}` for `phi(x) = c*x + alpha`, i.e.
/// `c * f((x - alpha)/c) + alpha`.
///
/// `f^n` is irreducible exactly when `(f^phi)^n - alpha` is.
pub fn affine_conjugate(f: &Poly, c: &FieldElem, alpha: &FieldElem) -> Result<Poly> {
    if c.is_zero() {
        return Err(Error::ZeroScale);
    }
    let field = f.field();
    if !c.field().same_as(field) || !alpha.field().same_as(field) {
        return Err(Error::FieldMismatch);
    }
    let c_inv = c.inv()?;
    // (x - alpha) / c
    let inner = Poly::from_elems(field, &[alpha.neg().mul(&c_inv)?, c_inv])?;
    f.compose(&inner)?.scale(c)?.add(&Poly::constant(alpha))
}

/// Checks Capelli's lemma on one instance: irreducibility of `g(f(x))` over
/// the base field against irreducibility of `f(x) - beta` over `F(beta)`,
/// `beta` the class of `x` modulo `g`. Expected to always return `true`.
pub fn capelli_consistency(g: &Poly, f: &Poly) -> Result<bool> {
    if !is_irreducible(g)? {
        return Err(Error::ReducibleG);
    }
    let lhs = is_irreducible(&g.compose(f)?)?;
    let ext = g.field().extend(&g.monic()?)?;
    let beta = ext.generator();
    let lifted = f.lift(&ext)?.sub_const(&beta)?;
    let rhs = is_irreducible(&lifted)?;
    Ok(lhs == rhs)
}
