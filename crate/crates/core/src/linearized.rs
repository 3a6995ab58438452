//! Shifted linearized polynomials `a_p x^p - a_1 x - a_0` over `F_q`, `q = p^s`:
//! Cohen's irreducibility criterion and an exhaustive check that the second
//! iterate (third when `p = 2`) is always reducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffield::{trace, Field, FieldElem};
use crate::polyring::{is_irreducible, roots_in_field, Poly};

/// `f = a_p x^p - a_1 x - a_0` with `a_p a_1 != 0`, `p` the characteristic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedLinearized {
    pub p: u64,
    pub a_p: FieldElem,
    pub a_1: FieldElem,
    pub a_0: FieldElem,
    /// `x^p - (a_1/a_p) x - (a_0/a_p)`.
    pub monic_form: Poly,
}

impl ShiftedLinearized {
    pub fn new(a_p: FieldElem, a_1: FieldElem, a_0: FieldElem) -> Result<Self> {
        let field = a_p.field().clone();
        if !a_1.field().same_as(&field) || !a_0.field().same_as(&field) {
            return Err(Error::FieldMismatch);
        }
        if a_p.is_zero() || a_1.is_zero() {
            return Err(Error::MalformedShape);
        }
        let p = field.characteristic();
        let ap_inv = a_p.inv()?;
        let mut coeffs = vec![field.zero(); p as usize + 1];
        coeffs[p as usize] = field.one();
        coeffs[1] = a_1.mul(&ap_inv)?.neg();
        coeffs[0] = a_0.mul(&ap_inv)?.neg();
        let monic_form = Poly::from_elems(&field, &coeffs)?;
        Ok(ShiftedLinearized {
            p,
            a_p,
            a_1,
            a_0,
            monic_form,
        })
    }

    /// Recognize the shape: degree `p`, only the monomials `x^p`, `x`, `1`, and `a_1 != 0`.
    pub fn from_poly(f: &Poly) -> Result<Self> {
        let p = f.field().characteristic();
        if f.degree() != Some(p as usize) {
            return Err(Error::MalformedShape);
        }
        if (2..p as usize).any(|i| !f.coeff(i).is_zero()) {
            return Err(Error::MalformedShape);
        }
        ShiftedLinearized::new(f.coeff(p as usize), f.coeff(1).neg(), f.coeff(0).neg())
    }

    pub fn field(&self) -> &Field {
        self.a_p.field()
    }

    /// `f` itself.
    pub fn poly(&self) -> Poly {
        self.monic_form.scale(&self.a_p).expect("same field")
    }

    fn monic_a1(&self) -> FieldElem {
        self.a_1.div(&self.a_p).expect("a_p nonzero")
    }

    fn monic_a0(&self) -> FieldElem {
        self.a_0.div(&self.a_p).expect("a_p nonzero")
    }
}

/// `A` with `A^(p-1) = a_1` (monic form), and `Tr_{F_q/F_p}(a_0 / A^p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohenWitness {
    pub a: Option<FieldElem>,
    pub trace_value: Option<FieldElem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohenReport {
    pub irreducible: bool,
    pub witness: CohenWitness,
}

impl CohenReport {
    pub fn to_json(&self) -> Value {
        json!({
            "irreducible": self.irreducible,
            "A": self.witness.a.as_ref().map(|a| a.to_string()),
            "trace": self.witness.trace_value.as_ref().map(|t| t.to_string()),
        })
    }
}

/// Smallest `A` in `F_q` with `A^(p-1) = c`, if any.
fn witness_a(c: &FieldElem, p: u64) -> Result<Option<FieldElem>> {
    let field = c.field();
    let q1 = field.cardinality() - 1u32;
    // A exists iff c^((q-1)/(p-1)) = 1
    if !c.pow(&(q1 / (p - 1))).is_one() {
        return Ok(None);
    }
    let mut coeffs = vec![field.zero(); p as usize];
    coeffs[p as usize - 1] = field.one();
    coeffs[0] = c.neg();
    let roots = roots_in_field(&Poly::from_elems(field, &coeffs)?)?;
    Ok(roots.into_iter().min())
}

/// Cohen: `x^p - a_1 x - a_0` is irreducible iff `a_1 = A^(p-1)` for some
/// `A in F_q` and `Tr_{F_q/F_p}(a_0 / A^p) != 0`.
pub fn cohen_test(f: &ShiftedLinearized) -> Result<CohenReport> {
    let a1 = f.monic_a1();
    let a0 = f.monic_a0();
    let Some(a) = witness_a(&a1, f.p)? else {
        return Ok(CohenReport {
            irreducible: false,
            witness: CohenWitness {
                a: None,
                trace_value: None,
            },
        });
    };
    let t = trace(&a0.div(&a.pow_u64(f.p))?, 0)?;
    Ok(CohenReport {
        irreducible: !t.is_zero(),
        witness: CohenWitness {
            a: Some(a),
            trace_value: Some(t),
        },
    })
}

/// `Tr_{F_q(gamma)/F_p}(gamma / (a_p A^p))` for `gamma` a root of `f^iterate`
/// (which must be irreducible). The second-iterate argument forces this to
/// vanish: for `p >= 3` with `iterate = 1`, and for `p = 2` with `iterate = 2`.
pub fn trace_obstruction(f: &ShiftedLinearized, iterate: usize) -> Result<FieldElem> {
    if iterate == 0 {
        return Err(Error::InvalidArgument("iterate starts at 1".into()));
    }
    let target = f.poly().iterate(iterate)?;
    if !is_irreducible(&target)? {
        return Err(Error::ReducibleInput);
    }
    let a = witness_a(&f.monic_a1(), f.p)?.ok_or(Error::NoWitnessA)?;
    let ext = f.field().extend(&target.monic()?)?;
    let gamma = ext.generator();
    let denom = ext.embed(&f.a_p.mul(&a.pow_u64(f.p))?)?;
    trace(&gamma.div(&denom)?, 0)
}

/// Above this many triples `(a_p, a_1, a_0)` the sweep samples instead.
pub const EXHAUSTIVE_LIMIT: u64 = 100_000;
/// Sample size once the grid exceeds [`EXHAUSTIVE_LIMIT`].
pub const SAMPLE_SIZE: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem52Report {
    pub field: Value,
    pub exhaustive: bool,
    pub seed: Option<u64>,
    pub total: usize,
    /// Instances whose first iterate is irreducible.
    pub irreducible_first: usize,
    pub reducible_at_2: usize,
    /// Instances (only examined for `p = 2`) whose third iterate is reducible.
    pub reducible_at_3: usize,
    /// `p = 2` instances with irreducible second iterate.
    pub second_iterate_irreducible: Vec<String>,
    pub counterexamples: Vec<String>,
}

impl Theorem52Report {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field,
            "exhaustive": self.exhaustive,
            "seed": self.seed,
            "total": self.total,
            "irreducible_first": self.irreducible_first,
            "reducible_at_2": self.reducible_at_2,
            "reducible_at_3": self.reducible_at_3,
            "second_iterate_irreducible": self.second_iterate_irreducible,
            "counterexamples": self.counterexamples,
        })
    }
}

/// All (or a seeded sample of) shifted linearized polynomials over `field`:
/// asserts `f^2` reducible for `p >= 3` and `f^3` reducible for `p = 2`.
pub fn verify_theorem52(field: &Field, seed: u64) -> Result<Theorem52Report> {
    let p = field.characteristic();
    let q = field.cardinality_u64().ok_or_else(|| Error::InvalidArgument("field too large".into()))?;
    let grid = (q - 1).saturating_mul(q - 1).saturating_mul(q);
    let exhaustive = grid <= EXHAUSTIVE_LIMIT;
    let elems: Vec<FieldElem> = field.elements().collect();
    let triples: Vec<(usize, usize, usize)> = if exhaustive {
        let mut v = Vec::new();
        for ap in 1..q as usize {
            for a1 in 1..q as usize {
                for a0 in 0..q as usize {
                    v.push((ap, a1, a0));
                }
            }
        }
        v
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SAMPLE_SIZE)
            .map(|_| {
                (
                    rng.gen_range(1..q as usize),
                    rng.gen_range(1..q as usize),
                    rng.gen_range(0..q as usize),
                )
            })
            .collect()
    };
    let mut report = Theorem52Report {
        field: field.to_json(),
        exhaustive,
        seed: (!exhaustive).then_some(seed),
        total: triples.len(),
        irreducible_first: 0,
        reducible_at_2: 0,
        reducible_at_3: 0,
        second_iterate_irreducible: Vec::new(),
        counterexamples: Vec::new(),
    };
    for (ap, a1, a0) in triples {
        let f = ShiftedLinearized::new(elems[ap].clone(), elems[a1].clone(), elems[a0].clone())?;
        let poly = f.poly();
        if is_irreducible(&poly)? {
            report.irreducible_first += 1;
        }
        let f2 = poly.iterate(2)?;
        if !is_irreducible(&f2)? {
            report.reducible_at_2 += 1;
            continue;
        }
        if p != 2 {
            report.counterexamples.push(poly.to_string());
            continue;
        }
        report.second_iterate_irreducible.push(poly.to_string());
        if is_irreducible(&f2.compose(&poly)?)? {
            report.counterexamples.push(poly.to_string());
        } else {
            report.reducible_at_3 += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::build_field;
    use crate::polyring::parse_poly;

    #[test]
    fn cohen_examples() {
        let f3 = build_field(3, &[1]).unwrap();
        let f = ShiftedLinearized::from_poly(&parse_poly(&f3, "x^3-x-1").unwrap()).unwrap();
        let r = cohen_test(&f).unwrap();
        assert!(r.irreducible);
        assert!(r.witness.a.as_ref().unwrap().is_one());
        assert!(r.witness.trace_value.as_ref().unwrap().is_one());
        let f = ShiftedLinearized::from_poly(&parse_poly(&f3, "x^3-x").unwrap()).unwrap();
        assert!(!cohen_test(&f).unwrap().irreducible);
        let f2 = build_field(2, &[1]).unwrap();
        let f = ShiftedLinearized::from_poly(&parse_poly(&f2, "x^2+x+1").unwrap()).unwrap();
        assert!(cohen_test(&f).unwrap().irreducible);
        assert_eq!(
            ShiftedLinearized::from_poly(&parse_poly(&f3, "x^3+x^2+1").unwrap()).unwrap_err(),
            Error::MalformedShape
        );
        assert_eq!(
            ShiftedLinearized::from_poly(&parse_poly(&f3, "x^3+1").unwrap()).unwrap_err(),
            Error::MalformedShape
        );
    }

    #[test]
    fn cohen_matches_oracle_exhaustive() {
        for (p, degs) in [(3u64, vec![1]), (5, vec![1]), (3, vec![2]), (5, vec![2]), (2, vec![2]), (7, vec![1])] {
            let field = build_field(p, &degs).unwrap();
            for ap in field.nonzero_elements().take(2) {
                for a1 in field.nonzero_elements() {
                    for a0 in field.elements() {
                        let f = ShiftedLinearized::new(ap.clone(), a1.clone(), a0.clone()).unwrap();
                        let r = cohen_test(&f).unwrap();
                        assert_eq!(r.irreducible, is_irreducible(&f.poly()).unwrap());
                        if let Some(a) = &r.witness.a {
                            assert_eq!(a.pow_u64(p - 1), f.monic_a1());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn theorem52_small_fields() {
        for (p, degs) in [(3u64, vec![1]), (5, vec![1]), (2, vec![1]), (2, vec![2]), (3, vec![2])] {
            let field = build_field(p, &degs).unwrap();
            let r = verify_theorem52(&field, 1).unwrap();
            assert!(r.holds(), "{:?}", r.counterexamples);
            assert!(r.exhaustive);
            let q = field.cardinality_u64().unwrap() as usize;
            assert_eq!(r.total, (q - 1) * (q - 1) * q);
            if p >= 3 {
                assert_eq!(r.reducible_at_2, r.total);
            }
        }
        let f2 = build_field(2, &[1]).unwrap();
        let r = verify_theorem52(&f2, 1).unwrap();
        assert_eq!(r.second_iterate_irreducible, vec!["x^2 + x + 1".to_string()]);
        assert_eq!(r.reducible_at_3, 1);
    }

    #[test]
    fn trace_obstruction_vanishes() {
        let f3 = build_field(3, &[1]).unwrap();
        let f = ShiftedLinearized::from_poly(&parse_poly(&f3, "x^3-x-1").unwrap()).unwrap();
        assert!(trace_obstruction(&f, 1).unwrap().is_zero());
        for p in [5u64, 7] {
            let fp = build_field(p, &[1]).unwrap();
            for a0 in 1..p {
                let f = ShiftedLinearized::new(fp.one(), fp.one(), fp.from_u64(a0)).unwrap();
                if cohen_test(&f).unwrap().irreducible {
                    assert!(trace_obstruction(&f, 1).unwrap().is_zero());
                }
            }
        }
        let f2 = build_field(2, &[1]).unwrap();
        let f = ShiftedLinearized::from_poly(&parse_poly(&f2, "x^2+x+1").unwrap()).unwrap();
        assert!(trace_obstruction(&f, 2).unwrap().is_zero());
        let g = ShiftedLinearized::from_poly(&parse_poly(&f3, "x^3-x").unwrap()).unwrap();
        assert_eq!(trace_obstruction(&g, 1).unwrap_err(), Error::ReducibleInput);
    }
}
