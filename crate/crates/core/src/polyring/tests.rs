use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::error::Error;
use crate::ffield::{build_field, Field, FieldElem};

fn fp(p: u64) -> Field {
    build_field(p, &[1]).unwrap()
}

fn poly(f: &Field, s: &str) -> Poly {
    parse_poly(f, s).unwrap()
}

fn random_poly(f: &Field, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    let p = f.characteristic();
    let digits: Vec<u64> = (0..(deg + 1) * f.dim()).map(|_| rng.gen_range(0..p)).collect();
    Poly::from_flat(f, digits)
}

/// Brute-force oracle: a polynomial of degree <= 3 is irreducible iff it has no root.
fn no_roots_brute(f: &Poly) -> bool {
    f.field().elements().all(|x| !f.eval(&x).unwrap().is_zero())
}

#[test]
fn parse_and_print() {
    let f = fp(7);
    let a = poly(&f, "x^3+6x+2");
    assert_eq!(a, Poly::from_i64s(&f, &[2, 6, 0, 1]));
    assert_eq!(poly(&f, "x^3 + 6*x + 2"), a);
    assert_eq!(poly(&f, "x^3-x-5"), a);
    assert_eq!(a.to_string(), "x^3 + 6*x + 2");
    assert_eq!(poly(&f, &a.to_string()), a);
    assert_eq!(poly(&f, "2x^3+x^2-1").to_string(), "2*x^3 + x^2 + 6");
    assert!(parse_poly(&f, "x^").is_err());
    assert!(parse_poly(&f, "3 x y").is_err());
    let e = build_field(5, &[2]).unwrap();
    let g = poly(&e, "[1,2]*x + [0,1]");
    assert_eq!(g.coeff(1).digits(), &[1, 2]);
    assert_eq!(g.coeff(0).digits(), &[0, 1]);
}

#[test]
fn json_roundtrip() {
    let e = build_field(3, &[2]).unwrap();
    let g = poly(&e, "[1,2]*x^2 + 2x + [0,1]");
    assert_eq!(Poly::from_json(&g.to_json()).unwrap(), g);
}

#[test]
fn compose_and_iterate() {
    let f = fp(7);
    let h = poly(&f, "x^3+3");
    assert_eq!(h.iterate(2).unwrap().eval(&f.zero()).unwrap().as_prime(), Some(2));
    let g = poly(&f, "x^2+5x+1");
    assert_eq!(compose(&g, &Poly::x(&f)).unwrap(), g);
    assert_eq!(iterate(&poly(&f, "x^3+6x+2"), 2).unwrap().degree(), Some(9));
    assert_eq!(h.iterate(0).unwrap(), Poly::x(&f));
}

#[test]
fn ring_axioms_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for field in [fp(11), build_field(3, &[2]).unwrap()] {
        for _ in 0..30 {
            let a = random_poly(&field, rng.gen_range(0..6), &mut rng);
            let b = random_poly(&field, rng.gen_range(0..6), &mut rng);
            let c = random_poly(&field, rng.gen_range(0..6), &mut rng);
            assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            if !b.is_zero() {
                let (q, r) = a.divrem(&b).unwrap();
                assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
                assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
            }
            if a.degree().unwrap_or(0) > 0 && b.degree().unwrap_or(0) > 0 {
                assert_eq!(
                    a.compose(&b).unwrap().degree(),
                    Some(a.degree().unwrap() * b.degree().unwrap())
                );
            }
        }
    }
}

#[test]
fn affine_conjugate_examples() {
    let f = fp(7);
    let (a, b, c) = (f.from_u64(3), f.from_u64(5), f.from_u64(2));
    let quad = Poly::from_elems(&f, &[c.clone(), b.clone(), a.clone()]).unwrap();
    let shift = b.div(&a.scale(2)).unwrap();
    let h = affine_conjugate(&quad, &f.one(), &shift).unwrap();
    // a x^2 - b^2/(4a) + c + b/(2a)
    let expect_c = c
        .sub(&b.square().div(&a.scale(4)).unwrap())
        .unwrap()
        .add(&shift)
        .unwrap();
    assert_eq!(h, Poly::from_elems(&f, &[expect_c, f.zero(), a]).unwrap());
    assert_eq!(affine_conjugate(&quad, &f.one(), &f.zero()).unwrap(), quad);
    let cubic = poly(&f, "2x^3+3x^2+x+5");
    let s = f.from_u64(3).div(&f.from_u64(6)).unwrap();
    let dep = affine_conjugate(&cubic, &f.one(), &s).unwrap();
    assert!(dep.coeff(2).is_zero());
    assert_eq!(dep.coeff(3).as_prime(), Some(2));
    assert_eq!(affine_conjugate(&cubic, &f.zero(), &s).unwrap_err(), Error::ZeroScale);
}

#[test]
fn conjugation_lemma_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in [7u64, 11] {
        let f = fp(p);
        for _ in 0..12 {
            let mut g = random_poly(&f, rng.gen_range(2..4), &mut rng);
            if g.degree().unwrap_or(0) < 2 {
                g = g.add(&Poly::monomial(&f.one(), 2)).unwrap();
            }
            let c = f.from_u64(rng.gen_range(1..p));
            let alpha = f.from_u64(rng.gen_range(0..p));
            let conj = affine_conjugate(&g, &c, &alpha).unwrap();
            for n in 1..=3 {
                let lhs = is_irreducible(&g.iterate(n).unwrap()).unwrap();
                let rhs = is_irreducible(&conj.iterate(n).unwrap().sub_const(&alpha).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{g} c={c} alpha={alpha} n={n}");
            }
        }
    }
}

#[test]
fn resultant_examples() {
    let f = fp(19);
    let a = poly(&f, "x^3+x+1");
    let v = resultant(&a, &poly(&f, "3x^2+1")).unwrap();
    assert_eq!(v.neg().as_prime(), Some(7));
    let u = f.from_u64(5);
    assert_eq!(resultant(&a, &Poly::constant(&u)).unwrap(), u.pow_u64(3));
    let lin = poly(&f, "x-4");
    assert_eq!(resultant(&lin, &a).unwrap(), a.eval(&f.from_u64(4)).unwrap());
    assert_eq!(resultant(&a, &Poly::zero(&f)).unwrap_err(), Error::ZeroPolynomial);
}

#[test]
fn resultant_antisymmetry_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = build_field(5, &[2]).unwrap();
    for _ in 0..40 {
        let a = random_poly(&f, rng.gen_range(1..6), &mut rng);
        let b = random_poly(&f, rng.gen_range(1..6), &mut rng);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
        let mut rba = resultant(&b, &a).unwrap();
        if m * n % 2 == 1 {
            rba = rba.neg();
        }
        assert_eq!(resultant(&a, &b).unwrap(), rba);
        // the resultant vanishes exactly on a common factor
        let common = a.gcd(&b).unwrap().degree().unwrap() > 0;
        assert_eq!(resultant(&a, &b).unwrap().is_zero(), common);
    }
}

#[test]
fn resultant_root_product() {
    // Res(f, g) = lc(f)^deg g * prod g(roots of f) over a splitting field
    let e = build_field(7, &[3]).unwrap();
    let fcub = Poly::from_i64s(&e, &[2, 6, 0, 1]);
    let g = Poly::from_i64s(&e, &[1, 2, 5]);
    let roots = roots_in_field(&fcub).unwrap();
    let mut prod = e.one();
    for r in &roots {
        prod = prod.mul(&g.eval(r).unwrap()).unwrap();
    }
    assert_eq!(resultant(&fcub, &g).unwrap(), prod);
}

#[test]
fn discriminant_examples() {
    let f = fp(7);
    assert_eq!(discriminant(&poly(&f, "x^3+6x+2")).unwrap().as_prime(), Some(1));
    assert_eq!(discriminant(&poly(&f, "x^2-1")).unwrap().as_prime(), Some(4));
    let f19 = fp(19);
    assert_eq!(discriminant(&poly(&f19, "x^3+x+1")).unwrap().as_prime(), Some(7));
    for a1 in f.elements() {
        for a0 in f.elements() {
            let c = Poly::from_elems(&f, &[a0.clone(), a1.clone(), f.zero(), f.one()]).unwrap();
            let expect = a1.pow_u64(3).scale(-4).sub(&a0.square().scale(27)).unwrap();
            assert_eq!(discriminant(&c).unwrap(), expect);
        }
    }
    let f3 = fp(3);
    assert_eq!(discriminant(&poly(&f3, "x^3+1")).unwrap_err(), Error::VanishingDerivative);
}

#[test]
fn irreducibility_examples() {
    let f7 = fp(7);
    assert!(is_irreducible(&poly(&f7, "x^3+6x+2")).unwrap());
    assert!(!is_irreducible(&poly(&f7, "x^3+1")).unwrap());
    let f19 = fp(19);
    assert!(!is_irreducible(&poly(&f19, "x^3+x+1").iterate(3).unwrap()).unwrap());
    assert_eq!(is_irreducible(&Poly::one(&f7)).unwrap_err(), Error::ConstantPolynomial);
    let f2 = fp(2);
    assert!(is_irreducible(&poly(&f2, "x^4+x+1")).unwrap());
    assert!(!is_irreducible(&poly(&f2, "x^4+x^2+1")).unwrap());
}

#[test]
fn irreducible_matches_factor_exhaustive_cubics() {
    for p in [5u64, 7] {
        let f = fp(p);
        let mut count = 0;
        for c0 in 0..p {
            for c1 in 0..p {
                for c2 in 0..p {
                    let g = Poly::from_i64s(&f, &[c0 as i64, c1 as i64, c2 as i64, 1]);
                    let a = is_irreducible(&g).unwrap();
                    let fl = factor(&g).unwrap();
                    assert_eq!(fl.product().unwrap(), g);
                    assert_eq!(a, fl.is_irreducible_input() && fl.factors[0].0.degree() == Some(3));
                    assert_eq!(a, no_roots_brute(&g));
                    count += a as u64;
                }
            }
        }
        assert_eq!(count, (p * p * p - p) / 3);
    }
}

#[test]
fn irreducible_count_degree_four_and_six() {
    // number of monic irreducibles of degree n over F_q: (1/n) sum mu(d) q^(n/d)
    let f = fp(3);
    let mut count4 = 0;
    let mut count6 = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for idx in 0..81u64 {
        let mut v = idx;
        let mut c = vec![0i64; 5];
        for slot in c.iter_mut().take(4) {
            *slot = (v % 3) as i64;
            v /= 3;
        }
        c[4] = 1;
        let g = Poly::from_i64s(&f, &c);
        let irr = is_irreducible(&g).unwrap();
        assert_eq!(irr, irreducible_by_factoring(&g).unwrap());
        count4 += irr as u32;
    }
    assert_eq!(count4, (81 - 9) / 4);
    for idx in 0..729u64 {
        let mut v = idx;
        let mut c = vec![0i64; 7];
        for slot in c.iter_mut().take(6) {
            *slot = (v % 3) as i64;
            v /= 3;
        }
        c[6] = 1;
        let g = Poly::from_i64s(&f, &c);
        count6 += is_irreducible(&g).unwrap() as u32;
        if rng.gen_range(0..20) == 0 {
            assert_eq!(is_irreducible(&g).unwrap(), irreducible_by_factoring(&g).unwrap());
        }
    }
    assert_eq!(count6, (729 - 27 - 9 + 3) / 6);
}

#[test]
fn factor_examples() {
    let f = fp(7);
    let fl = factor(&poly(&f, "x^3+1")).unwrap();
    assert!(fl.unit.is_one());
    // x^2 - x + 1 has discriminant -3 = 2^2 over F_7, so it splits further
    assert_eq!(fl.factors, vec![(poly(&f, "x+1"), 1), (poly(&f, "x+2"), 1), (poly(&f, "x+4"), 1)]);
    assert_eq!(poly(&f, "x+2").mul(&poly(&f, "x+4")).unwrap(), poly(&f, "x^2-x+1"));
    let irr = factor(&poly(&f, "x^3+6x+2")).unwrap();
    assert!(irr.is_irreducible_input());
    let f3 = fp(3);
    let it = poly(&f3, "x^3+2x+1").iterate(2).unwrap();
    assert!(factor(&it).unwrap().count_with_multiplicity() >= 2);
    assert_eq!(factor(&Poly::zero(&f)).unwrap_err(), Error::ZeroPolynomial);
}

#[test]
fn factor_random_reconstructs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for field in [fp(2), fp(3), fp(13), build_field(2, &[3]).unwrap(), build_field(3, &[2]).unwrap()] {
        for _ in 0..25 {
            let mut g = random_poly(&field, rng.gen_range(1..12), &mut rng);
            // force repeated factors and p-th powers now and then
            if rng.gen_range(0..3) == 0 {
                let h = random_poly(&field, rng.gen_range(1..3), &mut rng);
                g = g.mul(&h).unwrap().mul(&h).unwrap();
            }
            if rng.gen_range(0..4) == 0 {
                let p = field.characteristic() as usize;
                let h = random_poly(&field, 2, &mut rng);
                let hp = h.compose(&Poly::monomial(&field.one(), p)).unwrap();
                g = g.mul(&hp).unwrap();
            }
            if g.degree().unwrap_or(0) == 0 {
                continue;
            }
            let fl = factor(&g).unwrap();
            assert_eq!(fl.product().unwrap(), g);
            assert!(fl.factors_are_irreducible().unwrap());
            for (i, (a, _)) in fl.factors.iter().enumerate() {
                assert!(a.is_monic());
                for (b, _) in &fl.factors[i + 1..] {
                    assert_ne!(a, b);
                }
            }
            // reproducible with the same seed
            assert_eq!(factor(&g).unwrap(), fl);
        }
    }
}

#[test]
fn roots_examples() {
    let f = fp(7);
    assert!(roots_in_field(&poly(&f, "x^2-5")).unwrap().is_empty());
    assert_eq!(roots_in_field(&poly(&f, "x-4")).unwrap(), vec![f.from_u64(4)]);
    let e = build_field(7, &[3]).unwrap();
    let lifted = poly(&f, "x^3+6x+2").lift(&e).unwrap();
    assert_eq!(roots_in_field(&lifted).unwrap().len(), 3);
    let sq = poly(&f, "x-1").mul(&poly(&f, "x-1")).unwrap();
    assert_eq!(roots_in_field(&sq).unwrap(), vec![f.one(), f.one()]);
}

#[test]
fn capelli_examples_and_sweep() {
    let f7 = fp(7);
    let h = poly(&f7, "x^3+6x+2");
    assert!(capelli_consistency(&h, &h).unwrap());
    assert!(capelli_consistency(&poly(&f7, "x-3"), &h).unwrap());
    assert_eq!(capelli_consistency(&poly(&f7, "x^2-1"), &h).unwrap_err(), Error::ReducibleG);
    let f19 = fp(19);
    let g = poly(&f19, "x^3+x+1");
    assert!(capelli_consistency(&g.iterate(2).unwrap(), &g).unwrap());
    assert!(!is_irreducible(&g.iterate(3).unwrap()).unwrap());

    let f5 = fp(5);
    let gs: Vec<Poly> = (0..125u64)
        .flat_map(|i| {
            let q = Poly::from_i64s(&f5, &[(i % 5) as i64, (i / 5 % 5) as i64, 1]);
            let c = Poly::from_i64s(&f5, &[(i % 5) as i64, (i / 5 % 5) as i64, (i / 25) as i64, 1]);
            [q, c]
        })
        .filter(|g| is_irreducible(g).unwrap())
        .collect();
    let mut gs = gs;
    gs.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
    gs.dedup();
    let mut checked = 0;
    for g in &gs {
        for i in (0..125u64).step_by(4) {
            let fc = Poly::from_i64s(&f5, &[(i % 5) as i64, (i / 5 % 5) as i64, (i / 25) as i64, 1]);
            assert!(capelli_consistency(g, &fc).unwrap(), "g={g} f={fc}");
            checked += 1;
        }
    }
    assert!(checked > 500);
}

#[test]
fn elem_helpers() {
    let f = fp(7);
    let g = poly(&f, "x^2+1");
    assert_eq!(g.eval(&f.from_u64(3)).unwrap().as_prime(), Some(3));
    let _: FieldElem = g.lead();
}
