#![allow(dead_code)]

use asmt_core::checker::model_from_code;
use asmt_core::curve::{frobenius_charpoly, FrobeniusRecord};
use asmt_core::ffpoly::IntPoly;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Frobenius records of every smooth model `y^2 + h y = f` over F_p.
pub fn smooth_sweep(p: u32) -> Vec<FrobeniusRecord> {
    (0..(p as u64).pow(11))
        .map(|code| frobenius_charpoly(&model_from_code(p, code)))
        .filter(|r| r.good_reduction)
        .collect()
}

/// Integer polynomial product, low degree first.
pub fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn sign_variations(c: &[BigInt]) -> usize {
    let signs: Vec<bool> = c.iter().filter(|x| !x.is_zero()).map(|x| x.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `q(x + 1)`.
fn taylor_shift(q: &[BigInt]) -> Vec<BigInt> {
    let mut c = q.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = c[j + 1].clone();
            c[j] += t;
        }
    }
    c
}

/// `2^n q(x / 2)`.
fn halve(q: &[BigInt]) -> Vec<BigInt> {
    let n = q.len() - 1;
    q.iter()
        .enumerate()
        .map(|(i, c)| c * (BigInt::from(1) << (n - i)))
        .collect()
}

/// Roots of `q` in the open interval (0, 1), by bisection with Descartes'
/// rule of signs as the exclusion and isolation test.
fn roots_in_unit_interval(q: &[BigInt]) -> usize {
    let mut rev = q.to_vec();
    rev.reverse();
    match sign_variations(&taylor_shift(&rev)) {
        0 => 0,
        1 => 1,
        _ => {
            let left = halve(q);
            let mut right = taylor_shift(&left);
            let mid = right[0].is_zero() as usize;
            if mid == 1 {
                right.remove(0);
            }
            roots_in_unit_interval(&left) + mid + roots_in_unit_interval(&right)
        }
    }
}

/// Distinct real roots of a squarefree integer polynomial, counted by exact
/// bisection of `(-B, B)` for a Cauchy bound `B`.
pub fn real_roots_by_bisection(poly: &IntPoly) -> usize {
    let c = poly.coeffs();
    let lead = c.last().unwrap().abs();
    let bound = 1 + c.iter().map(|x| x.abs()).max().unwrap() / lead + 1;
    let scaled = |sign: i64| -> Vec<BigInt> {
        c.iter()
            .enumerate()
            .map(|(i, x)| BigInt::from(*x) * BigInt::from(sign * bound).pow(i as u32))
            .collect()
    };
    let zero = (c[0] == 0) as usize;
    let strip = |mut v: Vec<BigInt>| {
        if zero == 1 {
            v.remove(0);
        }
        v
    };
    zero + roots_in_unit_interval(&strip(scaled(1))) + roots_in_unit_interval(&strip(scaled(-1)))
}
