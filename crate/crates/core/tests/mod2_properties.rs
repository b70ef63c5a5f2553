mod common;

use asmt_core::curve::GenusTwoModel;
use asmt_core::ffpoly::{field, is_squarefree_q, IntPoly};
use asmt_core::mod2image::{
    conjugation_class_from_real_roots, has_rational_weierstrass_point, quintic_factor,
    quintic_galois_is_s5, weierstrass_poly, QuinticBudget, QuinticVerdict,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exact divisibility over Q by long division.
fn divides(g: &IntPoly, q: &IntPoly) -> bool {
    let to_q = |p: &IntPoly| -> Vec<BigRational> {
        p.coeffs().iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect()
    };
    let (g, mut r) = (to_q(g), to_q(q));
    let dg = g.len() - 1;
    while r.len() > dg {
        let t = r.last().unwrap() / g.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (i, c) in g.iter().enumerate() {
            r[shift + i] -= &t * c;
        }
        r.pop();
    }
    r.iter().all(|c| c.is_zero())
}

/// Factorization degrees mod p read off root counts in F_p and F_{p^2}.
fn pattern_from_root_counts(q: &IntPoly, p: u32) -> Vec<usize> {
    let coeffs: Vec<u32> = q.reduce_mod(p).coeffs().to_vec();
    let count = |k| {
        let fq = field(p, k);
        fq.elements().filter(|&x| fq.eval_fp(&coeffs, x) == fq.zero()).count()
    };
    let (r1, r2) = (count(1), count(2));
    let table: [((usize, usize), &[usize]); 7] = [
        ((0, 0), &[5]),
        ((1, 1), &[1, 4]),
        ((0, 2), &[2, 3]),
        ((2, 2), &[1, 1, 3]),
        ((1, 5), &[1, 2, 2]),
        ((3, 5), &[1, 1, 1, 2]),
        ((5, 5), &[1, 1, 1, 1, 1]),
    ];
    table.iter().find(|(k, _)| *k == (r1, r2)).unwrap().1.to_vec()
}

fn random_quintic(rng: &mut ChaCha8Rng) -> IntPoly {
    let pick = |rng: &mut ChaCha8Rng, n: usize| -> Vec<i64> {
        let mut c: Vec<i64> = (0..n).map(|_| rng.random_range(-9..=9)).collect();
        if c[n - 1] == 0 {
            c[n - 1] = 1;
        }
        c
    };
    loop {
        let c = match rng.random_range(0..4) {
            0 => common::mul(&pick(rng, 2), &pick(rng, 5)),
            1 => common::mul(&pick(rng, 3), &pick(rng, 4)),
            _ => pick(rng, 6),
        };
        let q = IntPoly::new(c);
        if is_squarefree_q(&q).unwrap() {
            return q;
        }
    }
}

#[test]
fn quintic_certificates_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut seen = [0usize; 3];
    for _ in 0..100 {
        let q = random_quintic(&mut rng);
        let cert = quintic_galois_is_s5(&q, QuinticBudget::default()).unwrap();
        for pat in cert.patterns.iter().filter(|pat| pat.p <= 60) {
            let mut got = pat.degrees.clone();
            got.sort();
            assert_eq!(got, pattern_from_root_counts(&q, pat.p), "{} mod {}", q.pretty(), pat.p);
        }
        match cert.verdict {
            QuinticVerdict::NotS5 => {
                let g = cert.factor.as_ref().unwrap();
                let d = g.degree().finite().unwrap();
                assert!((1..=2).contains(&d));
                assert!(divides(g, &q), "{} does not divide {}", g.pretty(), q.pretty());
                seen[0] += 1;
            }
            QuinticVerdict::ConclusiveS5 => {
                assert!(cert.irreducible);
                assert!(cert.patterns.iter().any(|pat| pat.degrees == [2, 3]));
                for d in 1..=2 {
                    for g in small_factors(d) {
                        assert!(!divides(&g, &q), "{} has factor {}", q.pretty(), g.pretty());
                    }
                }
                seen[1] += 1;
            }
            QuinticVerdict::Inconclusive => seen[2] += 1,
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "verdict mix {seen:?}");
}

/// Candidate linear and quadratic factors with small coefficients. The
/// linear ones cover every rational root of a quintic with coefficients in
/// [-9, 9].
fn small_factors(d: usize) -> Vec<IntPoly> {
    let range: Vec<i64> = (-9..=9).collect();
    let mut out = Vec::new();
    let leads: Vec<i64> = if d == 1 { (1..=9).collect() } else { vec![1, 2, 3] };
    for &lead in &leads {
        match d {
            1 => out.extend(range.iter().map(|&a| IntPoly::new(vec![a, lead]))),
            _ => {
                for &a in &range {
                    for &b in &range {
                        out.push(IntPoly::new(vec![a, b, lead]));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn reducible_quintics_never_certify_s5() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..40 {
        let lin: Vec<i64> = vec![rng.random_range(-5..=5), 1];
        let quart: Vec<i64> = vec![rng.random_range(1..=5), rng.random_range(-5..=5), 0, 1, 1];
        let q = IntPoly::new(common::mul(&lin, &quart));
        if !is_squarefree_q(&q).unwrap() {
            continue;
        }
        let cert = quintic_galois_is_s5(&q, QuinticBudget::default()).unwrap();
        assert_ne!(cert.verdict, QuinticVerdict::ConclusiveS5, "{}", q.pretty());
    }
}

#[test]
fn quintic_input_validation() {
    let b = QuinticBudget::default();
    assert!(quintic_galois_is_s5(&IntPoly::new(vec![1, 0, 0, 0, 1]), b).is_err());
    let square = IntPoly::new(common::mul(&[1, 1], &common::mul(&[1, 1], &[1, 0, 0, 1])));
    assert!(quintic_galois_is_s5(&square, b).is_err());
}

#[test]
fn weierstrass_points() {
    // y^2 = x^5 - x + 1: quintic locus, point at infinity
    let m = GenusTwoModel::from_coeffs(&[1, -1, 0, 0, 0, 1], &[]).unwrap();
    let locus = weierstrass_poly(&m).unwrap();
    assert_eq!(locus.degree, 5);
    assert!(has_rational_weierstrass_point(&locus));
    assert_eq!(quintic_factor(&locus), Some(IntPoly::new(vec![4, -4, 0, 0, 0, 4])));
    // y^2 = (x - 1)(x^5 + x + 3): sextic with the rational root 1
    let f = common::mul(&[-1, 1], &[3, 1, 0, 0, 0, 1]);
    let locus = weierstrass_poly(&GenusTwoModel::from_coeffs(&f, &[]).unwrap()).unwrap();
    assert_eq!(locus.degree, 6);
    assert!(has_rational_weierstrass_point(&locus));
    let q = quintic_factor(&locus).unwrap();
    assert!(divides(&q, &locus.poly));
    assert_eq!(q.degree().finite(), Some(5));
    // y^2 = x^6 + x + 1 has no rational root
    let locus = weierstrass_poly(&GenusTwoModel::from_coeffs(&[1, 1, 0, 0, 0, 0, 1], &[]).unwrap())
        .unwrap();
    assert!(!has_rational_weierstrass_point(&locus));
    assert_eq!(quintic_factor(&locus), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn conjugation_class_is_invariant_under_affine_changes(
        c in prop::collection::vec(-12i64..=12, 5), shift in -4i64..=4,
    ) {
        let mut coeffs = c.clone();
        coeffs.push(1);
        let q = IntPoly::new(coeffs);
        prop_assume!(is_squarefree_q(&q).unwrap());
        let base = conjugation_class_from_real_roots(&q).unwrap();
        prop_assert_eq!(base.real_roots + 2 * base.transpositions, 5);
        let moved = {
            let lin = IntPoly::new(vec![shift, 1]);
            let mut out = IntPoly::zero();
            let mut power = IntPoly::new(vec![1]);
            for &a in q.coeffs() {
                out = out.add(&power.scale(a));
                power = power.mul(&lin);
            }
            out
        };
        prop_assert_eq!(conjugation_class_from_real_roots(&moved).unwrap(), base);
        let flipped = IntPoly::new(
            q.coeffs().iter().enumerate().map(|(i, &a)| if i % 2 == 0 { -a } else { a }).collect(),
        );
        prop_assert_eq!(conjugation_class_from_real_roots(&flipped).unwrap(), base);
        prop_assert_eq!(base.real_roots, common::real_roots_by_bisection(&q));
    }
}
