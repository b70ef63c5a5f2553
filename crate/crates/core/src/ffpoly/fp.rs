use std::fmt;

use crate::error::{Error, Result};

use super::Degree;

/// Polynomial over the prime field F_p, ascending coefficients in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u32,
    coeffs: Vec<u32>,
}

fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = a as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

impl FpPoly {
    pub fn new(p: u32, mut coeffs: Vec<u32>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u32) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u32) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u32) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    /// Build from signed integers, reducing mod p.
    pub fn from_ints(p: u32, coeffs: &[i64]) -> Self {
        FpPoly::new(
            p,
            coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u32).collect(),
        )
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p) as u64;
        FpPoly::new(
            self.p,
            self.coeffs
                .iter()
                .map(|&c| (c as u64 * inv % self.p as u64) as u32)
                .collect(),
        )
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n)
                .map(|i| (self.coeff(i) + other.coeff(i)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n)
                .map(|i| (self.coeff(i) + self.p - other.coeff(i)) % self.p)
                .collect(),
        )
    }

    pub fn scale(&self, c: u32) -> FpPoly {
        let p = self.p as u64;
        FpPoly::new(
            self.p,
            self.coeffs
                .iter()
                .map(|&a| (a as u64 * c as u64 % p) as u32)
                .collect(),
        )
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p as u64;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p;
            }
        }
        FpPoly::new(self.p, out.into_iter().map(|c| c as u32).collect())
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let p = self.p as u64;
        let mut rem: Vec<u64> = self.coeffs.iter().map(|&c| c as u64).collect();
        let dd = divisor.deg();
        if rem.len() < divisor.coeffs.len() {
            return (FpPoly::zero(self.p), self.clone());
        }
        let inv = inv_mod(divisor.leading(), self.p) as u64;
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd] * inv % p;
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - c * d as u64 % p) % p;
            }
        }
        rem.truncate(dd);
        (
            FpPoly::new(self.p, quot.into_iter().map(|c| c as u32).collect()),
            FpPoly::new(self.p, rem.into_iter().map(|c| c as u32).collect()),
        )
    }

    pub fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.div_rem(divisor).1
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p as u64;
        FpPoly::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| ((i as u64 % p) * c as u64 % p) as u32)
                .collect(),
        )
    }

    pub fn eval(&self, x: u32) -> u32 {
        let p = self.p as u64;
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p) as u32
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u128, modulus: &FpPoly) -> FpPoly {
        let mut base = self.rem(modulus);
        let mut acc = FpPoly::one(self.p).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let n = self.deg();
        if self.is_zero() || n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let x = FpPoly::x(self.p);
        let q = self.p as u128;
        let frob_iter = |k: usize| -> FpPoly {
            let mut t = x.clone();
            for _ in 0..k {
                t = t.pow_mod(q, &f);
            }
            t
        };
        if !frob_iter(n).sub(&x).rem(&f).is_zero() {
            return false;
        }
        let mut primes = vec![];
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                primes.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        primes
            .into_iter()
            .all(|r| f.gcd(&frob_iter(n / r).sub(&x)).is_constant())
    }

    /// Factor-degree pattern of a squarefree polynomial via distinct-degree
    /// factorization, sorted ascending.
    pub fn degree_pattern(&self) -> Result<Vec<usize>> {
        if !self.is_squarefree() {
            return Err(Error::domain("degree pattern needs a squarefree polynomial"));
        }
        Ok(distinct_degree(&self.monic())
            .into_iter()
            .flat_map(|(d, g)| std::iter::repeat_n(d, g.deg() / d))
            .collect())
    }

    /// p-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        FpPoly::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Squarefree decomposition of a monic polynomial: `(g, m)` pairs with
/// `f = prod g^m`, each `g` squarefree.
fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let p = f.p as usize;
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree_decomposition(&f.pth_root()) {
            out.push((g, m * p));
        }
        return out;
    }
    let c = f.gcd(&df);
    let mut w = f.div_rem(&c).0;
    let mut c = c;
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if !z.is_constant() {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if !c.is_constant() {
        for (g, m) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(f: &FpPoly) -> Vec<(usize, FpPoly)> {
    let p = f.p as u128;
    let x = FpPoly::x(f.p);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.pow_mod(p, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_constant() {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((d, g));
        }
        d += 1;
    }
    if !rest.is_constant() {
        out.push((rest.deg(), rest.monic()));
    }
    out
}

/// Splits a monic squarefree product of degree-`d` irreducibles. Trial
/// splitters run through every polynomial of degree < 2d in a fixed order,
/// so the result is deterministic.
fn equal_degree(f: &FpPoly, d: usize, out: &mut Vec<FpPoly>) {
    if f.deg() == d {
        out.push(f.monic());
        return;
    }
    let p = f.p as u128;
    let q = p.pow(d as u32);
    let mut idx: u128 = p;
    loop {
        let mut trial = Vec::new();
        let mut t = idx;
        while t > 0 {
            trial.push((t % p) as u32);
            t /= p;
        }
        idx += 1;
        let a = FpPoly::new(f.p, trial);
        if a.deg() >= 2 * d || a.is_constant() {
            continue;
        }
        let g = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1)) over F_2^d
            let mut acc = a.rem(f);
            let mut term = acc.clone();
            for _ in 1..d {
                term = term.mul(&term).rem(f);
                acc = acc.add(&term);
            }
            f.gcd(&acc)
        } else {
            let e = a.pow_mod((q - 1) / 2, f);
            f.gcd(&e.sub(&FpPoly::one(f.p)))
        };
        if !g.is_constant() && g.deg() < f.deg() {
            let other = f.div_rem(&g).0.monic();
            equal_degree(&g, d, out);
            equal_degree(&other, d, out);
            return;
        }
    }
}

/// Complete factorization over F_p into monic irreducibles with
/// multiplicities, sorted by (degree, coefficients).
pub fn factor_over_fp(poly: &FpPoly) -> Result<Vec<(FpPoly, usize)>> {
    if poly.is_zero() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(&poly.monic()) {
        for (d, part) in distinct_degree(&g) {
            let mut pieces = Vec::new();
            equal_degree(&part, d, &mut pieces);
            out.extend(pieces.into_iter().map(|h| (h, m)));
        }
    }
    out.sort_by(|a, b| (a.0.deg(), &a.0.coeffs).cmp(&(b.0.deg(), &b.0.coeffs)));
    Ok(out)
}
