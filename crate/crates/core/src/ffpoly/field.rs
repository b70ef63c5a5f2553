use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::FpPoly;

/// Element of a `FiniteField`, stored as its coefficient vector over F_p
/// packed base p (digit i is the coefficient of t^i).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u32);

/// The field F_{p^k} = F_p[t]/(m(t)), with log/exp tables over a fixed
/// primitive element.
#[derive(Debug)]
pub struct FiniteField {
    p: u32,
    k: u32,
    size: u32,
    modulus: FpPoly,
    exp: Vec<u32>,
    log: Vec<u32>,
}

const MAX_FIELD_SIZE: u64 = 1 << 22;

/// Defining polynomials for the fields used throughout the crate.
fn fixed_modulus(p: u32, k: u32) -> Option<Vec<u32>> {
    match (p, k) {
        (2, 2) => Some(vec![1, 1, 1]),
        (2, 3) => Some(vec![1, 1, 0, 1]),
        (2, 6) => Some(vec![1, 1, 0, 0, 0, 0, 1]),
        (3, 2) => Some(vec![1, 0, 1]),
        _ => None,
    }
}

/// First irreducible monic polynomial of degree k, ordered by number of
/// nonzero lower terms and then lexicographically.
fn search_modulus(p: u32, k: u32) -> FpPoly {
    let k = k as usize;
    let mut best: Option<(usize, Vec<u32>)> = None;
    let total = (p as u64).pow(k as u32);
    for idx in 0..total {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut t = idx;
        for _ in 0..k {
            coeffs.push((t % p as u64) as u32);
            t /= p as u64;
        }
        coeffs.push(1);
        let weight = coeffs[..k].iter().filter(|&&c| c != 0).count();
        if let Some((w, _)) = &best {
            if weight >= *w {
                continue;
            }
        }
        let cand = FpPoly::new(p, coeffs.clone());
        if cand.is_irreducible() {
            best = Some((weight, coeffs));
            if weight <= 1 {
                break;
            }
        }
    }
    FpPoly::new(p, best.expect("an irreducible polynomial exists").1)
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl FiniteField {
    /// Builds F_{p^k}. Panics unless p is prime, k >= 1 and p^k is small
    /// enough for dense tables.
    pub fn new(p: u32, k: u32) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        assert!(k >= 1, "extension degree must be positive");
        let size64 = (p as u64).pow(k);
        assert!(size64 <= MAX_FIELD_SIZE, "field of size {size64} too large");
        let size = size64 as u32;
        let modulus = match fixed_modulus(p, k) {
            Some(c) => FpPoly::new(p, c),
            None if k == 1 => FpPoly::x(p),
            None => search_modulus(p, k),
        };
        assert!(modulus.is_irreducible(), "defining polynomial must be irreducible");

        let mut field = FiniteField {
            p,
            k,
            size,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let order = size - 1;
        let mut factors = Vec::new();
        let mut m = order;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        let generator = (1..size)
            .map(Fe)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| field.pow_slow(g, (order / r) as u64) != Fe(1))
            })
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; size as usize];
        let mut cur = Fe(1);
        for i in 0..order {
            exp.push(cur.0);
            log[cur.0 as usize] = i;
            cur = field.mul_slow(cur, generator);
        }
        field.exp = exp;
        field.log = log;
        field
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.size).map(Fe)
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(1)
    }

    /// Embeds an integer through F_p.
    pub fn from_int(&self, c: i64) -> Fe {
        Fe(c.rem_euclid(self.p as i64) as u32)
    }

    fn digits(&self, a: Fe) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        let mut t = a.0;
        for _ in 0..self.k {
            out.push(t % self.p);
            t /= self.p;
        }
        out
    }

    fn pack(&self, digits: &[u32]) -> Fe {
        Fe(digits.iter().rev().fold(0u32, |acc, &d| acc * self.p + d))
    }

    pub fn to_poly(&self, a: Fe) -> FpPoly {
        FpPoly::new(self.p, self.digits(a))
    }

    pub fn from_poly(&self, f: &FpPoly) -> Fe {
        let r = f.rem(&self.modulus);
        let mut d = r.coeffs().to_vec();
        d.resize(self.k as usize, 0);
        self.pack(&d)
    }

    fn mul_slow(&self, a: Fe, b: Fe) -> Fe {
        self.from_poly(&self.to_poly(a).mul(&self.to_poly(b)))
    }

    fn pow_slow(&self, a: Fe, mut e: u64) -> Fe {
        let mut acc = Fe(1);
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (mut x, mut y, mut place, mut out) = (a.0, b.0, 1u32, 0u32);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Fe(out)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut place, mut out) = (a.0, 1u32, 0u32);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Fe(out)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        let n = self.size - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Fe(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        let n = self.size - 1;
        let l = self.log[a.0 as usize];
        Some(Fe(self.exp[((n - l) % n) as usize]))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe(1);
        }
        if a.0 == 0 {
            return Fe(0);
        }
        let n = (self.size - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Fe(self.exp[((l * (e % n)) % n) as usize])
    }

    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p as u64)
    }

    /// Whether a nonzero element is a square (zero counts as a square).
    pub fn is_square(&self, a: Fe) -> bool {
        a.0 == 0 || self.p == 2 || self.log[a.0 as usize].is_multiple_of(2)
    }

    /// Quadratic character: 0 on zero, then +1 or -1.
    pub fn quadratic_character(&self, a: Fe) -> i32 {
        if a.0 == 0 {
            0
        } else if self.is_square(a) {
            1
        } else {
            -1
        }
    }

    /// Square root in characteristic 2 (unique, since squaring is bijective).
    pub fn sqrt_char2(&self, a: Fe) -> Fe {
        assert_eq!(self.p, 2);
        self.pow(a, (self.size / 2) as u64)
    }

    /// Absolute trace to F_p, returned as an integer in `[0, p)`.
    pub fn trace(&self, a: Fe) -> u32 {
        let mut acc = Fe(0);
        let mut term = a;
        for _ in 0..self.k {
            acc = self.add(acc, term);
            term = self.frobenius(term);
        }
        debug_assert!(acc.0 < self.p);
        acc.0
    }

    /// Horner evaluation of a polynomial with F_p coefficients.
    pub fn eval_fp(&self, coeffs: &[u32], x: Fe) -> Fe {
        coeffs
            .iter()
            .rev()
            .fold(Fe(0), |acc, &c| self.add(self.mul(acc, x), Fe(c % self.p)))
    }

    /// Horner evaluation of a polynomial with coefficients in this field.
    pub fn eval(&self, coeffs: &[Fe], x: Fe) -> Fe {
        coeffs
            .iter()
            .rev()
            .fold(Fe(0), |acc, &c| self.add(self.mul(acc, x), c))
    }
}

/// Process-wide shared instance of F_{p^k}; built once per (p, k).
pub fn field(p: u32, k: u32) -> Arc<FiniteField> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<FiniteField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&(p, k)) {
        return f.clone();
    }
    let built = Arc::new(FiniteField::new(p, k));
    cache
        .lock()
        .unwrap()
        .entry((p, k))
        .or_insert(built)
        .clone()
}
