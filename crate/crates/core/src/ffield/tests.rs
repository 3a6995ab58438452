use std::collections::HashSet;

use super::*;
use crate::polyring::Poly;

fn f7() -> Field {
    build_field(7, &[1]).unwrap()
}

/// Independent oracle: scan monic cubics by brute-force root search, in the
/// documented order (constant term most significant).
fn first_irreducible_cubic_brute(p: u64) -> [u64; 3] {
    for c0 in 1..p {
        for c1 in 0..p {
            for c2 in 0..p {
                let has_root = (0..p).any(|x| (x * x % p * x + c2 * x % p * x + c1 * x + c0).is_multiple_of(p));
                if !has_root {
                    return [c0, c1, c2];
                }
            }
        }
    }
    unreachable!()
}

#[test]
fn build_prime_and_cubic() {
    let f = f7();
    assert_eq!(f.cardinality_u64(), Some(7));
    let e = build_field(7, &[3]).unwrap();
    assert_eq!(e.cardinality_u64(), Some(343));
    let m = e.modulus().unwrap();
    let expect = first_irreducible_cubic_brute(7);
    assert_eq!(m.coeffs().iter().map(|c| c.as_prime().unwrap()).collect::<Vec<_>>(), vec![expect[0], expect[1], expect[2], 1]);
    assert_eq!(build_field(4, &[1]).unwrap_err(), Error::CompositeCharacteristic(4));
    assert_eq!(build_field(7, &[0]).unwrap_err(), Error::DegreeZero);
}

#[test]
fn arithmetic_examples() {
    let f = f7();
    let three = f.from_u64(3);
    assert_eq!(three.pow_u64(3).add(&three).unwrap(), f.from_u64(2));
    let f19 = build_field(19, &[1]).unwrap();
    let target = f19.from_u64(81).inv().unwrap().mul(&f19.from_u64(7)).unwrap();
    for mu in [3, 16] {
        assert_eq!(f19.from_u64(mu).square(), target);
    }
    let e = build_field(5, &[2, 3]).unwrap();
    for a in e.nonzero_elements().step_by(37) {
        assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
    }
    assert_eq!(f.zero().inv().unwrap_err(), Error::DivisionByZero);
    assert_eq!(f.one().add(&e.one()).unwrap_err(), Error::FieldMismatch);
}

#[test]
fn field_axioms_on_tower() {
    let e = build_field(3, &[2, 2]).unwrap();
    let elems: Vec<FieldElem> = e.elements().collect();
    for a in elems.iter().step_by(7) {
        for b in elems.iter().step_by(5) {
            for c in elems.iter().step_by(11) {
                let l = a.mul(&b.add(c).unwrap()).unwrap();
                let r = a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap();
                assert_eq!(l, r);
                assert_eq!(a.mul(b).unwrap().mul(c).unwrap(), a.mul(&b.mul(c).unwrap()).unwrap());
            }
        }
        assert_eq!(a.square(), a.mul(a).unwrap());
    }
    // the multiplicative group is cyclic of order 80
    let orders: HashSet<u64> = elems[1..]
        .iter()
        .map(|a| (1..=80u64).find(|&k| a.pow_u64(k).is_one()).unwrap())
        .collect();
    assert!(orders.contains(&80));
}

#[test]
fn frobenius_properties() {
    let e = build_field(7, &[3]).unwrap();
    let beta_poly = Poly::from_i64s(&e, &[2, 6, 0, 1]);
    let roots = crate::polyring::roots_in_field(&beta_poly).unwrap();
    assert_eq!(roots.len(), 3);
    let beta = &roots[0];
    let b7 = frobenius(beta, 0).unwrap();
    assert_ne!(&b7, beta);
    assert!(beta_poly.eval(&b7).unwrap().is_zero());
    let fixed = e.elements().filter(|a| frobenius(a, 0).unwrap() == *a).count();
    assert_eq!(fixed, 7);
    for a in e.elements().step_by(13) {
        let mut c = a.clone();
        for _ in 0..3 {
            c = frobenius(&c, 0).unwrap();
        }
        assert_eq!(c, a);
    }
}

#[test]
fn norm_examples_and_multiplicativity() {
    let e = build_field(7, &[3]).unwrap();
    let two = e.from_u64(2);
    assert_eq!(norm(&two, 0).unwrap().as_prime(), Some(1));
    assert!(norm(&e.zero(), 0).unwrap().is_zero());
    // beta_1 a root of x^3+6x+2: the norm of 2b^2-3b+2 is 4
    let cubic = Poly::from_i64s(&e, &[2, 6, 0, 1]);
    for beta in crate::polyring::roots_in_field(&cubic).unwrap() {
        let v = beta.square().scale(2).sub(&beta.scale(3)).unwrap().add(&two).unwrap();
        assert_eq!(norm(&v, 0).unwrap().as_prime(), Some(4));
    }
    let elems: Vec<FieldElem> = e.elements().collect();
    for a in elems.iter().step_by(3) {
        let na = norm(a, 0).unwrap();
        assert_eq!(na, norm_by_exponent(a, 0).unwrap());
        for b in elems.iter().step_by(17) {
            let nab = norm(&a.mul(b).unwrap(), 0).unwrap();
            assert_eq!(nab, na.mul(&norm(b, 0).unwrap()).unwrap());
        }
    }
}

#[test]
fn trace_examples() {
    let e = build_field(3, &[3]).unwrap();
    for v in 0..3 {
        assert!(trace(&e.from_u64(v), 0).unwrap().is_zero());
    }
    let f3 = build_field(3, &[1]).unwrap();
    assert_eq!(trace(&f3.one(), 0).unwrap(), f3.one());
    for a in e.elements() {
        assert_eq!(trace(&a, 0).unwrap(), trace_by_conjugates(&a, 0).unwrap());
    }
}

#[test]
fn transitivity_three_levels() {
    let t = build_field(3, &[2, 3, 2]).unwrap();
    assert_eq!(t.level(), 3);
    let mut seen = 0;
    for a in t.elements().step_by(997).take(60) {
        for mid in 1..3 {
            let n_mid = norm(&a, mid).unwrap();
            assert_eq!(norm(&n_mid, 0).unwrap(), norm(&a, 0).unwrap());
            let t_mid = trace(&a, mid).unwrap();
            assert_eq!(trace(&t_mid, 0).unwrap(), trace(&a, 0).unwrap());
        }
        assert_eq!(norm(&a, 1).unwrap(), norm_by_exponent(&a, 1).unwrap());
        assert_eq!(trace(&a, 1).unwrap(), trace_by_conjugates(&a, 1).unwrap());
        seen += 1;
    }
    assert_eq!(seen, 60);
}

#[test]
fn rth_power_examples() {
    let f = f7();
    let v = is_rth_power(&f.from_u64(2), 3).unwrap();
    assert!(!v.is_rth_power && v.witness.is_none());
    let v = is_rth_power(&f.from_u64(6), 3).unwrap();
    assert!(v.is_rth_power);
    assert_eq!(v.witness.unwrap().pow_u64(3), f.from_u64(6));
    let v = is_rth_power(&f.zero(), 5).unwrap();
    assert!(v.is_rth_power && v.witness.unwrap().is_zero());
    assert!(matches!(is_rth_power(&f.one(), 14), Err(Error::ExponentSharesCharacteristic { .. })));
}

#[test]
fn rth_power_matches_enumeration() {
    let fields = [
        build_field(7, &[1]).unwrap(),
        build_field(13, &[1]).unwrap(),
        build_field(7, &[3]).unwrap(),
        build_field(3, &[4]).unwrap(),
        build_field(2, &[2, 3]).unwrap(),
        build_field(5, &[2, 2]).unwrap(),
        build_field(1999, &[1]).unwrap(),
    ];
    for f in &fields {
        let elems: Vec<FieldElem> = f.elements().collect();
        let p = f.characteristic();
        for r in [2u64, 3, 4, 5, 6, 8, 9, 12] {
            if r % p == 0 {
                continue;
            }
            let powers: HashSet<FieldElem> = elems.iter().map(|x| x.pow_u64(r)).collect();
            for a in &elems {
                let v = is_rth_power(a, r).unwrap();
                assert_eq!(v.is_rth_power, powers.contains(a), "{a} r={r}");
                if let Some(w) = v.witness {
                    assert_eq!(&w.pow_u64(r), a);
                }
            }
        }
    }
}

#[test]
fn rthroot_lemma_biconditional_f343() {
    let e = build_field(7, &[3]).unwrap();
    for a in e.nonzero_elements() {
        let big = is_rth_power(&a, 3).unwrap().is_rth_power;
        let small = is_rth_power(&norm(&a, 0).unwrap(), 3).unwrap().is_rth_power;
        assert_eq!(big, small);
    }
}

#[test]
fn sqrt_examples_and_properties() {
    let f = f7();
    assert_eq!(sqrt(&f.from_u64(4)).unwrap(), Some(f.from_u64(2)));
    assert_eq!(sqrt(&f.from_i64(-3)).unwrap(), Some(f.from_u64(2)));
    let f5 = build_field(5, &[1]).unwrap();
    assert_eq!(sqrt(&f5.from_u64(3)).unwrap(), None);
    let f2 = build_field(2, &[1]).unwrap();
    assert_eq!(sqrt(&f2.one()).unwrap_err(), Error::EvenCharacteristic);
    for field in [build_field(5, &[2, 2]).unwrap(), build_field(17, &[2]).unwrap()] {
        let half = (field.cardinality() - 1u32) >> 1u32;
        for a in field.nonzero_elements() {
            match sqrt(&a).unwrap() {
                Some(r) => {
                    assert_eq!(r.square(), a);
                    assert!(r <= r.neg());
                }
                None => assert_eq!(a.pow(&half), field.from_i64(-1)),
            }
        }
    }
}

#[test]
fn adjoin_sqrt_minus3_examples() {
    let (f, s) = adjoin_sqrt_minus3(&f7()).unwrap();
    assert_eq!(f.level(), 0);
    assert_eq!(s.as_prime(), Some(2));
    let f19 = build_field(19, &[1]).unwrap();
    let (f, s) = adjoin_sqrt_minus3(&f19).unwrap();
    assert_eq!(f.cardinality_u64(), Some(19));
    assert_eq!(s.as_prime(), Some(4));
    let f5 = build_field(5, &[1]).unwrap();
    let (f, s) = adjoin_sqrt_minus3(&f5).unwrap();
    assert_eq!(f.cardinality_u64(), Some(25));
    assert_eq!(f.modulus().unwrap(), Poly::from_i64s(&f5, &[3, 0, 1]));
    assert_eq!(s.square(), f.from_i64(-3));
    let f3 = build_field(3, &[1]).unwrap();
    assert_eq!(adjoin_sqrt_minus3(&f3).unwrap_err(), Error::CharacteristicThree);
}

#[test]
fn json_roundtrip() {
    let e = build_field(5, &[2, 3]).unwrap();
    for a in e.elements().step_by(1234) {
        let j = a.to_json();
        assert_eq!(FieldElem::from_json(&j).unwrap(), a);
    }
    let j = e.from_u64(3).to_json();
    assert_eq!(j["tower_degrees"], serde_json::json!([2, 3]));
    assert_eq!(build_field(5, &[1]).unwrap().one().to_json()["tower_degrees"], serde_json::json!([1]));
}
