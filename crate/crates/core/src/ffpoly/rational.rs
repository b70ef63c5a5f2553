use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::IntPoly;

type ZPoly = Vec<BigInt>;
type QPoly = Vec<BigRational>;

fn to_z(p: &IntPoly) -> ZPoly {
    p.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn trim_z(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn trim_q(mut v: QPoly) -> QPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn primitive(v: ZPoly) -> ZPoly {
    let c = content(&v);
    if c.is_zero() || c.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &c).collect()
}

fn derivative_z(v: &[BigInt]) -> ZPoly {
    trim_z(
        v.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

/// Pseudo-remainder of `a` by `b` (b nonzero).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        r = trim_z(r);
    }
    r
}

/// Gcd over Q via the primitive pseudo-remainder sequence; returned primitive.
fn gcd_z(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (mut a, mut b) = (primitive(trim_z(a.to_vec())), primitive(trim_z(b.to_vec())));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
    a
}

/// Whether the polynomial has no repeated roots in an algebraic closure of Q.
pub fn is_squarefree_q(poly: &IntPoly) -> Result<bool> {
    if poly.is_zero() {
        return Err(Error::domain("squarefreeness of the zero polynomial"));
    }
    let z = to_z(poly);
    Ok(gcd_z(&z, &derivative_z(&z)).len() <= 1)
}

fn to_q(v: &[BigInt]) -> QPoly {
    v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn rem_q(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db && !r.is_empty() {
        let c = r.last().unwrap() / &lb;
        let shift = r.len() - 1 - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        r.pop();
        r = trim_q(r);
    }
    r
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn sign_of(c: &BigRational) -> i32 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

/// Number of distinct real roots of a squarefree polynomial, from the Sturm
/// sequence evaluated at the two infinities.
pub fn sturm_real_root_count(poly: &IntPoly) -> Result<usize> {
    if poly.is_zero() {
        return Err(Error::domain("real roots of the zero polynomial"));
    }
    if !is_squarefree_q(poly)? {
        return Err(Error::domain("Sturm count needs a squarefree polynomial"));
    }
    let z = to_z(poly);
    let mut seq: Vec<QPoly> = vec![to_q(&z), to_q(&derivative_z(&z))];
    while !seq.last().unwrap().is_empty() {
        let n = seq.len();
        let r: QPoly = rem_q(&seq[n - 2], &seq[n - 1])
            .into_iter()
            .map(|c| -c)
            .collect();
        seq.push(r);
    }
    seq.pop();
    let at_pos = sign_changes(seq.iter().map(|s| sign_of(s.last().unwrap())));
    let at_neg = sign_changes(seq.iter().map(|s| {
        let sg = sign_of(s.last().unwrap());
        if (s.len() - 1) % 2 == 1 {
            -sg
        } else {
            sg
        }
    }));
    Ok(at_neg - at_pos)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All distinct rational roots, ascending. Exhaustive over the divisors of
/// the leading and trailing coefficients.
pub fn rational_roots(poly: &IntPoly) -> Result<Vec<BigRational>> {
    if poly.is_zero() {
        return Err(Error::domain("rational roots of the zero polynomial"));
    }
    let mut z = to_z(poly);
    let mut roots = Vec::new();
    if z[0].is_zero() {
        roots.push(BigRational::zero());
        while z[0].is_zero() {
            z.remove(0);
        }
    }
    if z.len() > 1 {
        let lead = z.last().unwrap().clone();
        for num in divisors(&z[0]) {
            for den in divisors(&lead) {
                for s in [1, -1] {
                    let cand = BigRational::new(&num * s, den.clone());
                    if *cand.denom() != den || cand.numer().abs() != num {
                        continue; // not in lowest terms; seen elsewhere
                    }
                    // homogenised evaluation: sum c_i num^i den^(n-i)
                    let (a, b) = (cand.numer().clone(), cand.denom().clone());
                    let n = z.len() - 1;
                    let mut acc = BigInt::zero();
                    for (i, c) in z.iter().enumerate() {
                        acc += c * num_traits::pow(a.clone(), i) * num_traits::pow(b.clone(), n - i);
                    }
                    if acc.is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Outcome of a bounded search for a nontrivial integer factor of degree ≤ 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SmallFactorSearch {
    Found(IntPoly),
    NoneExist,
    /// The candidate space exceeded the search budget.
    Aborted,
}

fn divides_exactly(poly: &[BigInt], factor: &[BigInt]) -> bool {
    // exact division over Z with a primitive divisor
    let mut r = poly.to_vec();
    let df = factor.len() - 1;
    let lf = factor.last().unwrap();
    while r.len() > df {
        let lr = r.last().unwrap().clone();
        let (q, m) = lr.div_rem(lf);
        if !m.is_zero() {
            return false;
        }
        let shift = r.len() - 1 - df;
        for (j, fj) in factor.iter().enumerate() {
            r[shift + j] -= &q * fj;
        }
        r.pop();
        r = trim_z(r);
    }
    r.is_empty()
}

/// Looks for a factor of degree 1 or 2 of a polynomial of degree ≥ 2.
/// Quadratic candidates `a x^2 + b x + c` run over `a | lead`, `c | trail`
/// and `|b| ≤ 2 a R` with R a Cauchy root bound.
pub fn find_small_factor(poly: &IntPoly, budget: u64) -> Result<SmallFactorSearch> {
    let deg = poly
        .degree()
        .finite()
        .ok_or_else(|| Error::domain("small factor search on the zero polynomial"))?;
    if deg < 2 {
        return Ok(SmallFactorSearch::NoneExist);
    }
    if let Some(r) = rational_roots(poly)?.into_iter().next() {
        let num = i64::try_from(r.numer()).map_err(|_| Error::domain("root too large"))?;
        let den = i64::try_from(r.denom()).map_err(|_| Error::domain("root too large"))?;
        return Ok(SmallFactorSearch::Found(IntPoly::new(vec![-num, den])));
    }
    if deg < 4 {
        // a reducible quadratic or cubic has a linear factor
        return Ok(SmallFactorSearch::NoneExist);
    }
    let z = primitive(to_z(poly));
    let lead = z.last().unwrap().abs();
    let trail = z[0].clone();
    // Cauchy bound R = 1 + max |c_i / c_n|, rounded up
    let mut bound = BigInt::zero();
    for c in &z[..z.len() - 1] {
        let q = (c.abs() + &lead - 1) / &lead;
        if q > bound {
            bound = q;
        }
    }
    bound += 1;
    let lead_divs = divisors(&lead);
    let trail_divs = divisors(&trail);
    let mut work = BigInt::zero();
    for a in &lead_divs {
        work += BigInt::from(4) * a * &bound + 1;
    }
    work *= BigInt::from(2 * trail_divs.len());
    if work > BigInt::from(budget) {
        return Ok(SmallFactorSearch::Aborted);
    }
    for a in &lead_divs {
        let bmax = BigInt::from(2) * a * &bound;
        for cabs in &trail_divs {
            for c in [cabs.clone(), -cabs.clone()] {
                let mut b = -bmax.clone();
                while b <= bmax {
                    let cand = vec![c.clone(), b.clone(), a.clone()];
                    if divides_exactly(&z, &cand) {
                        let coeffs = cand
                            .iter()
                            .map(|x| i64::try_from(x).map_err(|_| Error::domain("factor too large")))
                            .collect::<Result<Vec<_>>>()?;
                        return Ok(SmallFactorSearch::Found(IntPoly::new(coeffs)));
                    }
                    b += 1;
                }
            }
        }
    }
    Ok(SmallFactorSearch::NoneExist)
}

/// Exact division by a nonzero integer polynomial; `None` when the quotient
/// is not integral or there is a remainder.
pub(crate) fn exact_quotient(poly: &IntPoly, divisor: &IntPoly) -> Option<IntPoly> {
    let z = to_z(poly);
    let d = to_z(divisor);
    if d.is_empty() || z.len() < d.len() {
        return None;
    }
    let mut r = z;
    let dd = d.len() - 1;
    let mut quot = vec![BigInt::zero(); r.len() - dd];
    for i in (0..quot.len()).rev() {
        let (q, m) = r[i + dd].div_rem(d.last().unwrap());
        if !m.is_zero() {
            return None;
        }
        for (j, dj) in d.iter().enumerate() {
            r[i + j] -= &q * dj;
        }
        quot[i] = q;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    quot.iter()
        .map(|q| i64::try_from(q).ok())
        .collect::<Option<Vec<_>>>()
        .map(IntPoly::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::new(c.to_vec())
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree_q(&ip(&[9, 0, 2, 0, 1])).unwrap());
        assert!(!is_squarefree_q(&ip(&[1, -2, 1])).unwrap());
        assert!(!is_squarefree_q(&ip(&[4, 4, 5, 2, 1])).unwrap());
        assert!(is_squarefree_q(&ip(&[5])).unwrap());
        assert!(is_squarefree_q(&IntPoly::zero()).is_err());
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_real_root_count(&ip(&[-1, 0, 1])).unwrap(), 2);
        assert_eq!(sturm_real_root_count(&ip(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(sturm_real_root_count(&ip(&[1, -1, 0, 0, 0, 1])).unwrap(), 1);
        assert_eq!(sturm_real_root_count(&ip(&[3])).unwrap(), 0);
        assert!(sturm_real_root_count(&ip(&[1, -2, 1])).is_err());
        // (x-1)(x-2)(x+3)(x^2+1)
        let p = ip(&[-1, 1]).mul(&ip(&[-2, 1])).mul(&ip(&[3, 1])).mul(&ip(&[1, 0, 1]));
        assert_eq!(sturm_real_root_count(&p).unwrap(), 3);
    }

    #[test]
    fn rational_root_search() {
        let p = ip(&[-2, 1]).mul(&ip(&[1, 0, 1])).mul(&ip(&[1, 3]));
        let r = rational_roots(&p).unwrap();
        assert_eq!(
            r,
            vec![
                BigRational::new((-1).into(), 3.into()),
                BigRational::from_integer(2.into())
            ]
        );
        assert!(rational_roots(&ip(&[1, 0, 0, 0, 0, 0, 1])).unwrap().is_empty());
        assert_eq!(rational_roots(&ip(&[0, 0, 1])).unwrap(), vec![BigRational::zero()]);
    }

    #[test]
    fn small_factor_search() {
        let q = ip(&[2, 1, 1]).mul(&ip(&[1, 1, 0, 1]));
        match find_small_factor(&q, 1_000_000).unwrap() {
            SmallFactorSearch::Found(f) => {
                assert!(exact_quotient(&q, &f).is_some());
            }
            other => panic!("expected a factor, got {other:?}"),
        }
        assert_eq!(
            find_small_factor(&ip(&[1, -1, 0, 0, 0, 1]), 1_000_000).unwrap(),
            SmallFactorSearch::NoneExist
        );
        assert_eq!(
            find_small_factor(&ip(&[1, -1, 0, 0, 0, 1]), 3).unwrap(),
            SmallFactorSearch::Aborted
        );
    }
}
