//! Dense univariate polynomials over any level of a field tower.

mod conjugate;
mod factor;
mod irreducible;
mod parse;
mod poly;
mod resultant;

#[cfg(test)]
mod tests;

use serde_json::{json, Value};

pub use conjugate::{affine_conjugate, capelli_consistency};
pub use factor::{
    distinct_degree, equal_degree_split, factor, factor_seeded, irreducible_by_factoring,
    squarefree, FactorList,
};
pub use irreducible::{distinct_roots, is_irreducible, roots_in_field, FrobeniusMap};
pub use parse::{format_poly, parse_poly};
pub use poly::Poly;
pub use resultant::{discriminant, resultant};

use crate::error::{Error, Result};
use crate::ffield::build_field;

/// Seed of the equal-degree splitting generator unless a caller supplies one.
pub const DEFAULT_SEED: u64 = 0x5eed_d15c;

/// `g(f(x))`.
pub fn compose(g: &Poly, f: &Poly) -> Result<Poly> {
    g.compose(f)
}

/// `f^n`, with `f^0 = x`.
pub fn iterate(f: &Poly, n: usize) -> Result<Poly> {
    f.iterate(n)
}

impl Poly {
    /// JSON form `{"field": {"p", "tower_degrees"}, "coeffs": [...]}`, low degree first.
    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self.coeffs().iter().map(|c| c.nested()).collect();
        json!({ "field": self.field().to_json(), "coeffs": coeffs })
    }

    /// Inverse of [`Poly::to_json`]; the field is rebuilt with [`build_field`].
    pub fn from_json(v: &Value) -> Result<Poly> {
        let bad = |m: &str| Error::Parse(m.to_string());
        let fv = &v["field"];
        let p = fv["p"].as_u64().ok_or_else(|| bad("missing field.p"))?;
        let degrees: Vec<usize> = fv["tower_degrees"]
            .as_array()
            .ok_or_else(|| bad("missing field.tower_degrees"))?
            .iter()
            .map(|d| d.as_u64().map(|d| d as usize).ok_or_else(|| bad("bad degree")))
            .collect::<Result<_>>()?;
        let field = build_field(p, &degrees)?;
        let items = v["coeffs"].as_array().ok_or_else(|| bad("missing coeffs"))?;
        let mut elems = Vec::with_capacity(items.len());
        for item in items {
            let mut digits = Vec::new();
            flatten(item, &mut digits).ok_or_else(|| bad("bad coefficient"))?;
            elems.push(field.from_flat(&digits)?);
        }
        Poly::from_elems(&field, &elems)
    }
}

fn flatten(v: &Value, out: &mut Vec<u64>) -> Option<()> {
    match v {
        Value::Number(n) => {
            out.push(n.as_u64()?);
            Some(())
        }
        Value::Array(items) => items.iter().try_for_each(|i| flatten(i, out)),
        _ => None,
    }
}
