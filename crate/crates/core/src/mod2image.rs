//! Galois action on 2-torsion: Weierstrass loci, the identification of S6
//! with Sp4(F2), quintic Galois-group certificates, complex conjugation and
//! the Sym^3 representation of SL2(F4).

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::GenusTwoModel;
use crate::error::{Error, Result};
use crate::ffpoly::{
    exact_quotient, field, find_small_factor, is_squarefree_q, primes, rational_roots,
    sturm_real_root_count, Degree, Fe, FiniteField, IntPoly, SmallFactorSearch,
};

/// The branch polynomial `4f + h^2` of a genus-2 curve over Q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeierstrassLocus {
    pub poly: IntPoly,
    pub degree: usize,
    /// A degree-5 locus has a rational branch point at infinity.
    pub has_infinity_branch_point: bool,
}

pub fn weierstrass_poly(model: &GenusTwoModel) -> Result<WeierstrassLocus> {
    let poly = model.branch_polynomial();
    let degree = match poly.degree() {
        Degree::Finite(d @ (5 | 6)) => d,
        d => {
            return Err(Error::NotGenusTwo(format!(
                "4f + h^2 = {} has degree {d}",
                poly.pretty()
            )))
        }
    };
    if !is_squarefree_q(&poly)? {
        return Err(Error::NotGenusTwo(format!(
            "4f + h^2 = {} is not squarefree",
            poly.pretty()
        )));
    }
    Ok(WeierstrassLocus {
        poly,
        degree,
        has_infinity_branch_point: degree == 5,
    })
}

pub fn has_rational_weierstrass_point(locus: &WeierstrassLocus) -> bool {
    locus.degree == 5
        || rational_roots(&locus.poly)
            .map(|r| !r.is_empty())
            .unwrap_or(false)
}

/// The quintic left after removing one rational Weierstrass point, if any.
pub fn quintic_factor(locus: &WeierstrassLocus) -> Option<IntPoly> {
    if locus.degree == 5 {
        return Some(locus.poly.clone());
    }
    let root = rational_roots(&locus.poly).ok()?.into_iter().next()?;
    let num = i64::try_from(root.numer()).ok()?;
    let den = i64::try_from(root.denom()).ok()?;
    exact_quotient(&locus.poly, &IntPoly::new(vec![-num, den]))
}

/// A permutation of `{0, .., N-1}`, stored as its image list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm<const N: usize>([u8; N]);

/// An element of S6.
pub type S6Element = Perm<6>;

impl<const N: usize> Perm<N> {
    /// From 0-based images; rejects non-bijections.
    pub fn new(images: [u8; N]) -> Result<Self> {
        let mut seen = [false; N];
        for &i in &images {
            if i as usize >= N || seen[i as usize] {
                return Err(Error::domain(format!("{images:?} is not a permutation")));
            }
            seen[i as usize] = true;
        }
        Ok(Perm(images))
    }

    /// From 1-based cycles such as `[[1, 2, 3], [4, 5]]`.
    pub fn from_cycles(cycles: &[&[u8]]) -> Result<Self> {
        let mut img = Self::identity().0;
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                let b = c[(k + 1) % c.len()];
                if a == 0 || b == 0 || a as usize > N || b as usize > N {
                    return Err(Error::domain(format!("cycle entry out of range in {c:?}")));
                }
                img[a as usize - 1] = b - 1;
            }
        }
        Self::new(img)
    }

    pub fn identity() -> Self {
        let mut img = [0u8; N];
        for (i, v) in img.iter_mut().enumerate() {
            *v = i as u8;
        }
        Perm(img)
    }

    pub fn images(&self) -> &[u8; N] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut img = [0u8; N];
        for (i, v) in img.iter_mut().enumerate() {
            *v = self.0[other.0[i] as usize];
        }
        Perm(img)
    }

    pub fn inverse(&self) -> Self {
        let mut img = [0u8; N];
        for (i, &v) in self.0.iter().enumerate() {
            img[v as usize] = i as u8;
        }
        Perm(img)
    }

    /// Cycle lengths, descending, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = [false; N];
        let mut out = Vec::new();
        for start in 0..N {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, lcm)
    }

    /// All N! permutations in lexicographic order of image lists.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(N);
        let mut used = [false; N];
        fn rec<const N: usize>(
            cur: &mut Vec<u8>,
            used: &mut [bool; N],
            out: &mut Vec<Perm<N>>,
        ) {
            if cur.len() == N {
                let mut img = [0u8; N];
                img.copy_from_slice(cur);
                out.push(Perm(img));
                return;
            }
            for v in 0..N {
                if !used[v] {
                    used[v] = true;
                    cur.push(v as u8);
                    rec(cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        rec(&mut cur, &mut used, &mut out);
        out
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl<const N: usize> fmt::Display for Perm<N> {
    /// 1-based cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = [false; N];
        let mut any = false;
        for start in 0..N {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.0[i] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Closure of a set of permutations under composition.
pub fn perm_closure<const N: usize>(gens: &[Perm<N>]) -> HashSet<Perm<N>> {
    let mut group = HashSet::from([Perm::identity()]);
    let mut frontier = vec![Perm::identity()];
    while let Some(g) = frontier.pop() {
        for s in gens {
            let h = s.compose(&g);
            if group.insert(h) {
                frontier.push(h);
            }
        }
    }
    group
}

/// 4×4 matrix over F2, entries 0 or 1.
pub type Mat4F2 = [[u8; 4]; 4];

/// An even subset of `{1..6}` modulo complement, as a 6-bit mask normalized
/// to exclude the element 6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoTorsionClass(u8);

impl TwoTorsionClass {
    /// From a mask over `{1..6}` (bit i-1 for element i); the subset must
    /// have even size.
    pub fn from_mask(mask: u8) -> Result<Self> {
        if mask >= 64 || !mask.count_ones().is_multiple_of(2) {
            return Err(Error::domain(format!("{mask:#08b} is not an even subset")));
        }
        Ok(TwoTorsionClass(if mask & 32 != 0 { !mask & 63 } else { mask }))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn add(self, other: Self) -> Self {
        TwoTorsionClass::from_mask(self.0 ^ other.0).expect("symmetric difference is even")
    }

    /// `|S ∩ T| mod 2`, independent of the representatives.
    pub fn pairing(self, other: Self) -> u8 {
        ((self.0 & other.0).count_ones() % 2) as u8
    }

    pub fn act(self, g: &S6Element) -> Self {
        let mut m = 0u8;
        for i in 0..6 {
            if self.0 & (1 << i) != 0 {
                m |= 1 << g.apply(i);
            }
        }
        TwoTorsionClass::from_mask(m).expect("permutation preserves parity")
    }

    /// All 16 classes.
    pub fn all() -> Vec<Self> {
        (0u8..32)
            .filter(|m| m.count_ones() % 2 == 0)
            .map(TwoTorsionClass)
            .collect()
    }
}

/// Basis `{1,2}, {2,3}, {4,5}, {5,6}` of the 2-torsion model.
pub fn two_torsion_basis() -> [TwoTorsionClass; 4] {
    [0b000011, 0b000110, 0b011000, 0b110000].map(|m| TwoTorsionClass::from_mask(m).unwrap())
}

/// Coordinates of a class in [`two_torsion_basis`].
pub fn coordinates(v: TwoTorsionClass) -> [u8; 4] {
    let basis = two_torsion_basis();
    for bits in 0u8..16 {
        let mut acc = TwoTorsionClass(0);
        for (j, b) in basis.iter().enumerate() {
            if bits & (1 << j) != 0 {
                acc = acc.add(*b);
            }
        }
        if acc == v {
            return [0, 1, 2, 3].map(|j| (bits >> j) & 1);
        }
    }
    unreachable!("basis spans the 16-element space")
}

/// Gram matrix of the pairing in [`two_torsion_basis`].
pub fn pairing_gram_matrix() -> Mat4F2 {
    let b = two_torsion_basis();
    let mut g = [[0u8; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            g[i][j] = b[i].pairing(b[j]);
        }
    }
    g
}

/// Matrix of the action of g on the 2-torsion model; column j holds the
/// coordinates of `g · basis[j]`.
pub fn s6_to_sp4f2(g: &S6Element) -> Mat4F2 {
    let mut m = [[0u8; 4]; 4];
    for (j, b) in two_torsion_basis().iter().enumerate() {
        let c = coordinates(b.act(g));
        for i in 0..4 {
            m[i][j] = c[i];
        }
    }
    m
}

pub fn mat4f2_mul(a: &Mat4F2, b: &Mat4F2) -> Mat4F2 {
    let mut c = [[0u8; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            c[i][j] = (0..4).fold(0, |acc, k| acc ^ (a[i][k] & b[k][j]));
        }
    }
    c
}

pub fn mat4f2_transpose(a: &Mat4F2) -> Mat4F2 {
    let mut t = [[0u8; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            t[i][j] = a[j][i];
        }
    }
    t
}

/// Determinant over F2 by elimination.
pub fn mat4f2_det(a: &Mat4F2) -> u8 {
    let mut m = *a;
    for col in 0..4 {
        let Some(piv) = (col..4).find(|&r| m[r][col] == 1) else {
            return 0;
        };
        m.swap(col, piv);
        for r in 0..4 {
            if r != col && m[r][col] == 1 {
                for c in 0..4 {
                    m[r][c] ^= m[col][c];
                }
            }
        }
    }
    1
}

/// Verdict on whether a rational quintic has Galois group S5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuinticVerdict {
    ConclusiveS5,
    NotS5,
    Inconclusive,
}

/// Factorization pattern of a quintic modulo a good prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePattern {
    pub p: u32,
    pub degrees: Vec<usize>,
}

/// Verdict plus the data that supports it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuinticCertificate {
    pub verdict: QuinticVerdict,
    /// A rational factor of degree 1 or 2 when the quintic is reducible.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub factor: Option<IntPoly>,
    pub irreducible: bool,
    /// Good primes consulted, in order.
    pub patterns: Vec<PrimePattern>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuinticBudget {
    /// Number of good primes to scan before giving up.
    pub good_primes: usize,
    /// Candidate budget for the exact small-factor search.
    pub factor_search: u64,
}

impl Default for QuinticBudget {
    fn default() -> Self {
        QuinticBudget {
            good_primes: 50,
            factor_search: 2_000_000,
        }
    }
}

/// Whether some sub-multiset of `parts` sums to `target`.
fn has_subsum(parts: &[usize], target: usize) -> bool {
    let mut reach = vec![false; target + 1];
    reach[0] = true;
    for &d in parts {
        for s in (d..=target).rev() {
            reach[s] |= reach[s - d];
        }
    }
    reach[target]
}

/// Certificate that a squarefree quintic over Q has Galois group S5.
///
/// Irreducibility comes from the exact small-factor search or from mod-p
/// patterns that jointly rule out factors of degree 1 and 2. A pattern
/// (2, 3) exhibits an element of order 6, which among transitive subgroups
/// of S5 only S5 itself contains.
pub fn quintic_galois_is_s5(q: &IntPoly, budget: QuinticBudget) -> Result<QuinticCertificate> {
    if q.degree() != Degree::Finite(5) {
        return Err(Error::domain(format!("{} is not a quintic", q.pretty())));
    }
    if !is_squarefree_q(q)? {
        return Err(Error::domain(format!("{} is not squarefree", q.pretty())));
    }
    let mut cert = QuinticCertificate {
        verdict: QuinticVerdict::Inconclusive,
        factor: None,
        irreducible: false,
        patterns: Vec::new(),
    };
    match find_small_factor(q, budget.factor_search)? {
        SmallFactorSearch::Found(f) => {
            cert.verdict = QuinticVerdict::NotS5;
            cert.factor = Some(f);
            return Ok(cert);
        }
        SmallFactorSearch::NoneExist => cert.irreducible = true,
        SmallFactorSearch::Aborted => {}
    }
    let mut excluded = [false; 3];
    let mut has_six_cycle = false;
    let mut good = 0;
    for p in primes() {
        if good >= budget.good_primes {
            break;
        }
        if q.leading().rem_euclid(p as i64) == 0 {
            continue;
        }
        let red = q.reduce_mod(p);
        if !red.is_squarefree() {
            continue;
        }
        good += 1;
        let degrees = red.degree_pattern()?;
        for d in 1..=2 {
            if !has_subsum(&degrees, d) {
                excluded[d] = true;
            }
        }
        has_six_cycle |= degrees == [2, 3];
        cert.patterns.push(PrimePattern { p, degrees });
        cert.irreducible |= excluded[1] && excluded[2];
        if cert.irreducible && has_six_cycle {
            cert.verdict = QuinticVerdict::ConclusiveS5;
            return Ok(cert);
        }
    }
    Ok(cert)
}

/// Conjugacy class of complex conjugation acting on the roots of a real
/// quintic: one transposition per pair of non-real roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugationClass {
    pub real_roots: usize,
    pub transpositions: usize,
}

impl fmt::Display for ConjugationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.transpositions == 0 {
            write!(f, "()")
        } else {
            write!(f, "{}", "(**)".repeat(self.transpositions))
        }
    }
}

pub fn conjugation_class_from_real_roots(q: &IntPoly) -> Result<ConjugationClass> {
    if q.degree() != Degree::Finite(5) {
        return Err(Error::domain(format!("{} is not a quintic", q.pretty())));
    }
    let r = sturm_real_root_count(q)?;
    assert!(r % 2 == 1 && r <= 5, "odd-degree real polynomial with {r} real roots");
    Ok(ConjugationClass {
        real_roots: r,
        transpositions: (5 - r) / 2,
    })
}

/// Matrix over F4 in the `field(2, 2)` encoding.
pub type Mat4F4 = [[Fe; 4]; 4];

/// Outcome of the finite check that Sym^3 of the standard representation
/// embeds SL2(F4) symplectically with traces in F2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sym3Report {
    pub image_order: usize,
    /// Nondegenerate alternating forms preserved by every image matrix.
    pub preserved_forms: Vec<Mat4F4>,
    pub traces: BTreeSet<u32>,
}

impl Sym3Report {
    pub fn preserves_alternating_form(&self) -> bool {
        !self.preserved_forms.is_empty()
    }

    pub fn traces_in_prime_field(&self) -> bool {
        self.traces.iter().all(|&t| t < 2)
    }
}

/// The 60 elements of SL2(F4) as `[[a, b], [c, d]]`.
pub fn sl2_f4() -> Vec<[[Fe; 2]; 2]> {
    let k = field(2, 2);
    let mut out = Vec::new();
    for a in k.elements() {
        for b in k.elements() {
            for c in k.elements() {
                for d in k.elements() {
                    if k.sub(k.mul(a, d), k.mul(b, c)) == k.one() {
                        out.push([[a, b], [c, d]]);
                    }
                }
            }
        }
    }
    out
}

fn binary_form_mul(k: &FiniteField, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let mut out = vec![Fe(0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(x, y));
        }
    }
    out
}

/// Sym^3 of `x ↦ a x + c y`, `y ↦ b x + d y` in the basis
/// `x^3, x^2 y, x y^2, y^3`.
pub fn sym3(g: &[[Fe; 2]; 2]) -> Mat4F4 {
    let k = field(2, 2);
    // binary forms stored by ascending power of y
    let gx = [g[0][0], g[1][0]];
    let gy = [g[0][1], g[1][1]];
    let mut m = [[Fe(0); 4]; 4];
    for j in 0..4 {
        let mut form = vec![k.one()];
        for _ in 0..(3 - j) {
            form = binary_form_mul(&k, &form, &gx);
        }
        for _ in 0..j {
            form = binary_form_mul(&k, &form, &gy);
        }
        for i in 0..4 {
            m[i][j] = form[i];
        }
    }
    m
}

fn mat4f4_mul(k: &FiniteField, a: &Mat4F4, b: &Mat4F4) -> Mat4F4 {
    let mut c = [[Fe(0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            c[i][j] = (0..4).fold(Fe(0), |acc, t| k.add(acc, k.mul(a[i][t], b[t][j])));
        }
    }
    c
}

fn mat4f4_transpose(a: &Mat4F4) -> Mat4F4 {
    let mut t = [[Fe(0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            t[i][j] = a[j][i];
        }
    }
    t
}

fn mat4f4_is_invertible(k: &FiniteField, a: &Mat4F4) -> bool {
    let mut m = *a;
    for col in 0..4 {
        let Some(piv) = (col..4).find(|&r| m[r][col] != Fe(0)) else {
            return false;
        };
        m.swap(col, piv);
        let inv = k.inv(m[col][col]).unwrap();
        for r in 0..4 {
            if r != col && m[r][col] != Fe(0) {
                let factor = k.mul(m[r][col], inv);
                for c in 0..4 {
                    m[r][c] = k.sub(m[r][c], k.mul(factor, m[col][c]));
                }
            }
        }
    }
    true
}

/// Builds Sym^3 of all of SL2(F4) and searches all 4096 alternating forms.
pub fn sym3_sl2f4_verification() -> Sym3Report {
    let k = field(2, 2);
    let images: Vec<Mat4F4> = sl2_f4().iter().map(sym3).collect();
    let distinct: HashSet<Mat4F4> = images.iter().copied().collect();
    let traces = images
        .iter()
        .map(|m| (0..4).fold(Fe(0), |acc, i| k.add(acc, m[i][i])).0)
        .collect();
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut preserved_forms = Vec::new();
    for code in 0u32..4096 {
        let mut omega = [[Fe(0); 4]; 4];
        for (t, &(i, j)) in pairs.iter().enumerate() {
            let v = Fe((code >> (2 * t)) & 3);
            omega[i][j] = v;
            omega[j][i] = k.neg(v);
        }
        if !mat4f4_is_invertible(&k, &omega) {
            continue;
        }
        let keeps = images.iter().all(|m| {
            mat4f4_mul(&k, &mat4f4_mul(&k, &mat4f4_transpose(m), &omega), m) == omega
        });
        if keeps {
            preserved_forms.push(omega);
        }
    }
    Sym3Report {
        image_order: distinct.len(),
        preserved_forms,
        traces,
    }
}

/// The transitive subgroups of S5 up to conjugacy, from explicit generators:
/// C5, D5, F20, A5 and S5.
pub fn transitive_s5_subgroups() -> Vec<(&'static str, HashSet<Perm<5>>)> {
    let c = |cycles: &[&[u8]]| Perm::<5>::from_cycles(cycles).unwrap();
    let five = c(&[&[1, 2, 3, 4, 5]]);
    vec![
        ("C5", perm_closure(&[five])),
        ("D5", perm_closure(&[five, c(&[&[2, 5], &[3, 4]])])),
        ("F20", perm_closure(&[five, c(&[&[2, 3, 5, 4]])])),
        ("A5", perm_closure(&[five, c(&[&[1, 2, 3]])])),
        ("S5", perm_closure(&[five, c(&[&[1, 2]])])),
    ]
}

/// Whether S5 is the only listed transitive subgroup with an element of
/// order 6.
pub fn only_s5_has_order_six() -> bool {
    transitive_s5_subgroups().iter().all(|(name, g)| {
        let has_six = g.iter().any(|p| p.order() == 6);
        has_six == (*name == "S5")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::new(c.to_vec())
    }

    #[test]
    fn weierstrass_examples() {
        let loc = |f: &[i64], h: &[i64]| {
            weierstrass_poly(&GenusTwoModel::from_coeffs(f, h).unwrap()).unwrap()
        };
        let l = loc(&[0, 0, 0, 0, 0, 1], &[1]);
        assert_eq!((l.poly.clone(), l.degree), (poly(&[1, 0, 0, 0, 0, 4]), 5));
        assert!(l.has_infinity_branch_point && has_rational_weierstrass_point(&l));
        let l = loc(&[1, 0, 0, 0, 0, 1], &[]);
        assert_eq!(l.poly, poly(&[4, 0, 0, 0, 0, 4]));
        let l = loc(&[0, 1, 0, 0, 0, 0, 1], &[0, 1]);
        assert_eq!((l.poly.clone(), l.degree), (poly(&[0, 4, 1, 0, 0, 0, 4]), 6));
        let l = loc(&[1, 0, 0, 0, 0, 0, 1], &[]);
        assert!(!has_rational_weierstrass_point(&l));
        assert!(weierstrass_poly(&GenusTwoModel::from_coeffs(&[1, 0, 0, 0, 1], &[]).unwrap()).is_err());
        assert!(weierstrass_poly(&GenusTwoModel::from_coeffs(&[0, 0, 1, 0, 0, 1], &[]).unwrap()).is_err());
    }

    #[test]
    fn quintic_factor_of_sextic_with_rational_root() {
        // (x - 2)(x^5 - x + 1) = x^6 - 2x^5 - x^2 + 3x - 2
        let sextic = poly(&[-2, 3, -1, 0, 0, -2, 1]);
        let l = WeierstrassLocus {
            poly: sextic,
            degree: 6,
            has_infinity_branch_point: false,
        };
        assert!(has_rational_weierstrass_point(&l));
        assert_eq!(quintic_factor(&l), Some(poly(&[1, -1, 0, 0, 0, 1])));
    }

    #[test]
    fn s6_identity_and_image_size() {
        let id = s6_to_sp4f2(&S6Element::identity());
        assert_eq!(id, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        let all: HashSet<Mat4F2> = S6Element::all().iter().map(s6_to_sp4f2).collect();
        assert_eq!(all.len(), 720);
    }

    #[test]
    fn gram_matrix_is_standard_and_preserved() {
        let omega = pairing_gram_matrix();
        assert_eq!(omega, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]);
        assert_eq!(mat4f2_det(&omega), 1);
        for g in S6Element::all() {
            let m = s6_to_sp4f2(&g);
            assert_eq!(mat4f2_mul(&mat4f2_mul(&mat4f2_transpose(&m), &omega), &m), omega);
        }
    }

    #[test]
    fn pairing_is_alternating() {
        for v in TwoTorsionClass::all() {
            assert_eq!(v.pairing(v), 0);
        }
        assert_eq!(TwoTorsionClass::all().len(), 16);
    }

    #[test]
    fn quintic_certificates() {
        let b = QuinticBudget::default();
        let c = quintic_galois_is_s5(&poly(&[1, -1, 0, 0, 0, 1]), b).unwrap();
        assert_eq!(c.verdict, QuinticVerdict::ConclusiveS5);
        assert_eq!(c.patterns[0], PrimePattern { p: 2, degrees: vec![2, 3] });
        let c = quintic_galois_is_s5(&poly(&[-1, 0, 0, 0, 0, 1]), b).unwrap();
        assert_eq!(c.verdict, QuinticVerdict::NotS5);
        let c = quintic_galois_is_s5(&poly(&[-2, 0, 0, 0, 0, 1]), b).unwrap();
        assert_eq!(c.verdict, QuinticVerdict::Inconclusive);
        assert!(c.irreducible);
        assert_eq!(c.patterns.len(), 50);
        assert!(quintic_galois_is_s5(&poly(&[0, 0, 0, 1, 0, 1]).mul(&poly(&[0, 1])), b).is_err());
    }

    #[test]
    fn conjugation_classes() {
        let cls = |c: &[i64]| conjugation_class_from_real_roots(&poly(c)).unwrap();
        assert_eq!(cls(&[1, -1, 0, 0, 0, 1]).transpositions, 2);
        assert_eq!(cls(&[1, -1, 0, 0, 0, 1]).to_string(), "(**)(**)");
        // (x^2 - 1)(x^2 - 4)x
        assert_eq!(cls(&[0, 4, 0, -5, 0, 1]).to_string(), "()");
        // x(x^2 - 1)(x^2 + 1) = x^5 - x
        assert_eq!(cls(&[0, -1, 0, 0, 0, 1]).to_string(), "(**)");
    }

    #[test]
    fn sym3_report() {
        let r = sym3_sl2f4_verification();
        assert_eq!(r.image_order, 60);
        assert!(r.preserves_alternating_form());
        assert!(r.traces_in_prime_field());
    }

    #[test]
    fn perm_basics() {
        let p = S6Element::from_cycles(&[&[1, 2, 3], &[4, 5]]).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycle_type(), vec![3, 2, 1]);
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p.compose(&p.inverse()), S6Element::identity());
        assert!(S6Element::new([0, 0, 1, 2, 3, 4]).is_err());
    }

    #[test]
    fn transitive_subgroup_orders() {
        let orders: Vec<usize> = transitive_s5_subgroups().iter().map(|(_, g)| g.len()).collect();
        assert_eq!(orders, vec![5, 10, 20, 60, 120]);
        assert!(only_s5_has_order_six());
    }
}
