use super::*;
use crate::ffield::{build_field, norm};
use crate::polyring::{is_irreducible, parse_poly};
use crate::verdict::VerdictKind;

fn fp(p: u64) -> Field {
    build_field(p, &[1]).unwrap()
}

fn depressed(p: u64, src: &str) -> DepressedCubic {
    DepressedCubic::from_poly(&parse_poly(&fp(p), src).unwrap()).unwrap()
}

fn ints(v: &[FieldElem]) -> Vec<u64> {
    v.iter().map(|e| e.as_prime().unwrap()).collect()
}

#[test]
fn depress_examples() {
    let f7 = fp(7);
    let d = depress(&parse_poly(&f7, "x^3+6x+2").unwrap()).unwrap();
    assert!(d.beta0.is_zero());
    assert_eq!(d.poly(), parse_poly(&f7, "x^3+6x+2").unwrap());
    // Chu form alpha = 1 shifts back to T(x) = x^3 - 3x with beta0 = 1
    let d = depress(&parse_poly(&f7, "x^3+3x^2+4").unwrap()).unwrap();
    assert_eq!(d.poly(), parse_poly(&f7, "x^3-3x").unwrap());
    assert_eq!(d.beta0.as_prime(), Some(1));
    let d = depress(&parse_poly(&f7, "2x^3+x^2+5").unwrap()).unwrap();
    assert_eq!(d.b3.as_prime(), Some(2));
    assert_eq!(
        depress(&parse_poly(&fp(3), "x^3+x+1").unwrap()).unwrap_err(),
        Error::CharacteristicAtMostThree
    );
}

#[test]
fn depression_identity_exhaustive_f5() {
    let f5 = fp(5);
    for a3 in 1..=2u64 {
        for a2 in 0..5 {
            for a1 in 0..5 {
                for a0 in 0..5 {
                    let f = Poly::from_i64s(&f5, &[a0, a1, a2, a3 as i64]);
                    let d = depress(&f).unwrap();
                    // f(x) = h(x + s) - s
                    let s = &d.beta0;
                    let shift = Poly::from_elems(&f5, &[s.clone(), f5.one()]).unwrap();
                    let back = d.poly().compose(&shift).unwrap().sub_const(s).unwrap();
                    assert_eq!(back, f);
                    assert_eq!(d.b1, f.coeff(1).sub(&f.coeff(2).square().div(&f.coeff(3).scale(3)).unwrap()).unwrap());
                    // iterates correspond
                    let lhs = is_irreducible(&f.iterate(2).unwrap()).unwrap();
                    let rhs = is_irreducible(&d.target_poly(2).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn dickson_examples() {
    let f7 = fp(7);
    let r = dickson_test(&f7.from_u64(6), &f7.from_u64(2)).unwrap();
    assert!(r.irreducible);
    assert_eq!(r.disc.as_prime(), Some(1));
    let (m1, m2) = r.mu.clone().unwrap();
    let mut mus = vec![m1.as_prime().unwrap(), m2.as_prime().unwrap()];
    mus.sort();
    assert_eq!(mus, vec![3, 4]);
    let mut vals = ints(&r.cube_values);
    vals.sort();
    assert_eq!(vals, vec![2, 3]);

    let f19 = fp(19);
    let r = dickson_test(&f19.one(), &f19.one()).unwrap();
    assert!(r.irreducible);
    assert_eq!(r.disc.as_prime(), Some(7));
    let (m1, m2) = r.mu.clone().unwrap();
    let mut mus = vec![m1.as_prime().unwrap(), m2.as_prime().unwrap()];
    mus.sort();
    assert_eq!(mus, vec![3, 16]);
    let mut vals = ints(&r.cube_values);
    vals.sort();
    assert_eq!(vals, vec![3, 15]);

    // a1 = 0: tests -a0 = 3, not a cube mod 7
    let r = dickson_test(&f7.zero(), &f7.from_i64(-3)).unwrap();
    assert!(r.irreducible);
    assert_eq!(
        dickson_test(&f7.zero(), &f7.zero()).unwrap_err(),
        Error::BothCoefficientsZero
    );
}

#[test]
fn dickson_matches_oracle_exhaustive() {
    for p in [5u64, 7, 11, 13, 19] {
        let f = fp(p);
        for a1 in 0..p {
            for a0 in 0..p {
                if a1 == 0 && a0 == 0 {
                    continue;
                }
                let r = dickson_test(&f.from_u64(a1), &f.from_u64(a0)).unwrap();
                let poly = Poly::from_i64s(&f, &[a0 as i64, a1 as i64, 0, 1]);
                assert_eq!(r.irreducible, is_irreducible(&poly).unwrap(), "p={p} a1={a1} a0={a0}");
            }
        }
    }
}

#[test]
fn condition1_examples() {
    let h = depressed(7, "x^3+6x+2");
    let c = condition1_sequence(&h, 5).unwrap();
    assert_eq!(ints(&c.values), vec![4, 2, 1, 2, 1]);
    assert!(c.all_square && c.first_failure.is_none());
    let (tail, cycle) = c.periodic_certificate.clone().unwrap();
    assert_eq!((ints(&tail), ints(&cycle)), (vec![4], vec![2, 1]));

    let h = depressed(19, "x^3+x+1");
    let c = condition1_sequence(&h, 5).unwrap();
    assert_eq!(ints(&c.values), vec![5, 1, 8, 5, 5]);
    assert_eq!(c.first_failure, Some(3));
    assert!(!c.all_square);

    // h(x) = x^3 + 3x^2 style shapes aside: a zero value fails. With b1 = 0,
    // g = 0 is fixed when b0 = 0, so h(g) - beta0 = 0 for beta0 = 0.
    let f7 = fp(7);
    let h = DepressedCubic::new(f7.one(), f7.zero(), f7.zero(), f7.zero()).unwrap();
    let c = condition1_sequence(&h, 3).unwrap();
    assert!(c.values[0].is_zero());
    assert_eq!(c.first_failure, Some(1));
}

#[test]
fn condition1_matches_level_discriminant_class() {
    // N_{F_q(beta_n)/F_q}(Disc((1/b3)(h - beta_n))) has the square class of the
    // condition-1 value at iterate n + 1
    let f7 = fp(7);
    for (b1, b0) in [(6u64, 2u64), (2, 1), (1, 3), (3, 3)] {
        let h = DepressedCubic::new(f7.one(), f7.from_u64(b1), f7.from_u64(b0), f7.zero()).unwrap();
        let ctx = Condition2Context::new(&h).unwrap();
        let c = condition1_sequence(&h, 4).unwrap();
        for n in 0..=3 {
            if !is_irreducible(&h.target_poly(n.max(1)).unwrap()).unwrap() && n > 0 {
                break;
            }
            let st = ctx.level(n).unwrap();
            let d = norm(&st.disc(&h).unwrap(), st.base_level).unwrap();
            let v = c.value(n + 1).unwrap();
            let sq = |e: &FieldElem| crate::ffield::is_rth_power(e, 2).unwrap().is_rth_power;
            assert_eq!(d.is_zero(), v.is_zero());
            assert_eq!(sq(&d), sq(&v), "b1={b1} b0={b0} n={n}");
            assert_eq!(st.cond1_value, v);
        }
    }
}

#[test]
fn condition2_example_f7() {
    let h = depressed(7, "x^3+6x+2");
    let ctx = Condition2Context::new(&h).unwrap();
    let mut seqs = [Vec::new(), Vec::new()];
    for n in 0..=4 {
        let st = ctx.level(n).unwrap();
        let mu = st.mu_n.clone().unwrap();
        let lhs = mu.square().scale(81);
        assert_eq!(lhs, st.disc(&h).unwrap());
        for (i, b) in [Branch::default(), Branch { negate_mu: false, negate_sqrtm3: true }]
            .iter()
            .enumerate()
        {
            let out = condition2_check(&h, &st, *b).unwrap();
            seqs[i].push(out.norm_value.as_prime().unwrap());
        }
    }
    // n = 0 is Dickson's test on h itself: values {2, 3}
    let mut n0 = vec![seqs[0][0], seqs[1][0]];
    n0.sort();
    assert_eq!(n0, vec![2, 3]);
    // canonical branch gives 4 at n = 1, the other branch 5
    assert_eq!(seqs[0][1], 4);
    assert_eq!(seqs[1][1], 5);
    // canonical branch (4, 2, 2, 1): the cube 1 at n = 4 makes iterate 5 reducible
    assert_eq!(seqs[0][1..], [4, 2, 2, 1]);
    assert_eq!(seqs[1][1..], [5, 3, 3, 6]);
    // conjugate branches multiply to N(-(b1/b3)^3 / 27) = 6 at every level
    for n in 1..=4 {
        assert_eq!(seqs[0][n] * seqs[1][n] % 7, 6);
    }
}

#[test]
fn recursive_examples() {
    let h = depressed(7, "x^3+6x+2");
    let r = recursive_report(&h, &CubicOptions::default()).unwrap();
    assert_eq!(r.verdict.to_string(), "ReducibleAtIterate(5)");
    assert_eq!(r.levels.len(), 5);
    assert!(r.oracle_agrees());
    assert_eq!(r.oracle.len(), 5);

    let h = depressed(19, "x^3+x+1");
    let r = recursive_report(&h, &CubicOptions::default()).unwrap();
    assert_eq!(r.verdict.to_string(), "ReducibleAtIterate(3)");
    assert!(matches!(r.verdict.reason, crate::verdict::Reason::NotNonzeroSquare { .. }));
    assert!(r.oracle_agrees());
}

#[test]
fn recursive_matches_oracle_f7_exhaustive() {
    let f7 = fp(7);
    for b1 in 0..7u64 {
        for b0 in 0..7u64 {
            let h = DepressedCubic::new(f7.one(), f7.from_u64(b1), f7.from_u64(b0), f7.zero()).unwrap();
            let opts = CubicOptions {
                n_max: 2,
                oracle_max: 3,
                ..CubicOptions::default()
            };
            let r = recursive_report(&h, &opts).unwrap();
            assert!(r.oracle_agrees(), "b1={b1} b0={b0}: {:?}", r.oracle);
            // branch independence on every built level
            let ctx = Condition2Context::new(&h).unwrap();
            for rec in &r.levels {
                if rec.cond2_norm.is_none() {
                    continue;
                }
                let st = ctx.level(rec.n).unwrap();
                let outs: Vec<bool> = Branch::ALL
                    .iter()
                    .map(|b| condition2_check(&h, &st, *b).unwrap().passes)
                    .collect();
                assert!(outs.iter().all(|&x| x == outs[0]));
            }
        }
    }
}

#[test]
fn recursive_q2mod3_field() {
    // q = 11: sqrt(-3) sits at the bottom of the tower
    let f11 = fp(11);
    let mut checked = 0;
    for b1 in 1..11u64 {
        for b0 in 1..11u64 {
            let h = DepressedCubic::new(f11.one(), f11.from_u64(b1), f11.from_u64(b0), f11.zero()).unwrap();
            let opts = CubicOptions {
                n_max: 1,
                oracle_max: 2,
                ..CubicOptions::default()
            };
            let r = recursive_report(&h, &opts).unwrap();
            assert!(r.oracle_agrees(), "b1={b1} b0={b0}");
            checked += 1;
        }
    }
    assert_eq!(checked, 100);
}

#[test]
fn gnos_examples() {
    let f19 = fp(19);
    let g = gnos_check(&parse_poly(&f19, "x^3+x+1").unwrap(), 6).unwrap();
    assert_eq!(g.first_violation, Some(3));
    let f7 = fp(7);
    let g = gnos_check(&parse_poly(&f7, "x^3+6x+2").unwrap(), 10).unwrap();
    assert!(g.pass);
    // x^3 + x over F_7: disc -4 = 3 is a nonsquare
    let g = gnos_check(&parse_poly(&f7, "x^3+x+3").unwrap(), 3).unwrap();
    let disc = crate::polyring::discriminant(&parse_poly(&f7, "x^3+x+3").unwrap()).unwrap();
    if !crate::ffield::is_rth_power(&disc, 2).unwrap().is_rth_power {
        assert_eq!(g.first_violation, Some(1));
    }
}

#[test]
fn gnos_necessity_f7() {
    let f7 = fp(7);
    for b1 in 0..7u64 {
        for b0 in 0..7u64 {
            let f = Poly::from_i64s(&f7, &[b0 as i64, b1 as i64, 0, 1]);
            let g = gnos_check(&f, 3).unwrap();
            if let Some(n) = g.first_violation {
                // some iterate up to n is reducible
                let any_red = (1..=n).any(|m| !is_irreducible(&f.iterate(m).unwrap()).unwrap());
                assert!(any_red, "b1={b1} b0={b0}");
            }
            // the gnos quantity agrees with condition 1 in square class
            let h = DepressedCubic::from_poly(&f).unwrap();
            let c = condition1_sequence(&h, 3).unwrap();
            for (i, v) in g.values.iter().enumerate() {
                let sq = |e: &FieldElem| !e.is_zero() && crate::ffield::is_rth_power(e, 2).unwrap().is_rth_power;
                assert_eq!(sq(v), c.squares[i], "b1={b1} b0={b0} n={}", i + 1);
            }
        }
    }
}

#[test]
fn chu_examples() {
    let f7 = fp(7);
    let v = chu_test(&f7.one()).unwrap();
    assert!(v.is_proved());
    assert_eq!(chu_polynomial(&f7.one()), parse_poly(&f7, "x^3+3x^2-3").unwrap());
    assert_eq!(chu_test(&f7.from_u64(2)).unwrap().reducible_iterate(), Some(1));
    let survivors: Vec<u64> = (0..7)
        .filter(|&a| a != 2 && a != 5)
        .filter(|&a| chu_test(&f7.from_u64(a)).unwrap().is_proved())
        .collect();
    assert_eq!(survivors, vec![1, 6]);
    for a in 0..7u64 {
        let v = chu_test(&f7.from_u64(a)).unwrap();
        let f = chu_polynomial(&f7.from_u64(a));
        if v.is_proved() {
            for n in 1..=3 {
                assert!(is_irreducible(&f.iterate(n).unwrap()).unwrap());
            }
        } else {
            assert_eq!(v.kind, VerdictKind::ReducibleAtIterate);
            assert!(!is_irreducible(&f).unwrap());
        }
    }
}

#[test]
fn chu_sequence_examples() {
    let f7 = fp(7);
    let r = chu_sequence(&parse_poly(&f7, "x-1").unwrap(), 3).unwrap();
    assert!(r.criterion_passes);
    assert!(r.polys.iter().all(|(_, irr)| *irr));
    let degs: Vec<usize> = r.polys.iter().map(|(p, _)| p.degree().unwrap()).collect();
    assert_eq!(degs, vec![1, 3, 9, 27]);
    assert_eq!(
        chu_sequence(&parse_poly(&f7, "x-2").unwrap(), 2).unwrap_err(),
        Error::ExcludedG
    );
    let r = chu_sequence(&parse_poly(&f7, "x-3").unwrap(), 3).unwrap();
    assert!(r.consistent());
    // an irreducible quadratic g over F_13
    let f13 = fp(13);
    for src in ["x^2+2", "x^2+x+2", "x^2+5"] {
        let g = parse_poly(&f13, src).unwrap();
        if is_irreducible(&g).unwrap() {
            let r = chu_sequence(&g, 2).unwrap();
            assert!(r.consistent(), "{src}");
        }
    }
}
