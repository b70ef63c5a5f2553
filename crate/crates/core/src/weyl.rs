//! Root datum of GSp4 in the coordinates `(k1, k2; w)` and the weight
//! bookkeeping built on it.
//!
//! The Weyl group acts on `(k1, k2)` by signed permutations generated by
//! `s_α(k1, k2; w) = (k2, k1; w)` and `s_β(k1, k2; w) = (-k1, k2; w)`.
//! Words compose right to left: `(uv)(x) = u(v(x))`. The longest element
//! of the Siegel Levi's Weyl group is `s_α`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weight `(k1, k2; w)`. Characters of the torus satisfy
/// `w ≡ k1 + k2 (mod 2)`; ρ and its translates lie in the other coset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    pub k1: i64,
    pub k2: i64,
    pub w: i64,
}

impl Character {
    pub fn new(k1: i64, k2: i64, w: i64) -> Result<Self> {
        if (w - k1 - k2).rem_euclid(2) != 0 {
            return Err(Error::domain(format!(
                "({k1},{k2};{w}) violates w ≡ k1 + k2 mod 2"
            )));
        }
        Ok(Character { k1, k2, w })
    }

    /// No parity check; for ρ-shifted weights.
    pub const fn raw(k1: i64, k2: i64, w: i64) -> Self {
        Character { k1, k2, w }
    }

    const fn flat(k1: i64, k2: i64) -> Self {
        Character { k1, k2, w: 0 }
    }

    pub fn satisfies_parity(self) -> bool {
        (self.w - self.k1 - self.k2).rem_euclid(2) == 0
    }

    pub fn add(self, o: Character) -> Character {
        Character {
            k1: self.k1 + o.k1,
            k2: self.k2 + o.k2,
            w: self.w + o.w,
        }
    }

    pub fn sub(self, o: Character) -> Character {
        self.add(o.neg())
    }

    pub fn neg(self) -> Character {
        Character {
            k1: -self.k1,
            k2: -self.k2,
            w: -self.w,
        }
    }

    pub fn scale(self, c: i64) -> Character {
        Character {
            k1: c * self.k1,
            k2: c * self.k2,
            w: c * self.w,
        }
    }

    fn dot(self, o: Character) -> i64 {
        self.k1 * o.k1 + self.k2 * o.k2
    }

    /// `⟨κ, α^∨⟩ = 2 (κ·α) / (α·α)`.
    pub fn coroot_pairing(self, alpha: Character) -> i64 {
        2 * self.dot(alpha) / alpha.dot(alpha)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{})", self.k1, self.k2, self.w)
    }
}

impl FromStr for Character {
    type Err = Error;

    /// Accepts `k1,k2,w` or `(k1,k2;w)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = t.split([',', ';']).map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected k1,k2,w; got {s:?}")));
        }
        let n = |x: &str| {
            x.parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad integer {x:?}: {e}")))
        };
        Character::new(n(parts[0])?, n(parts[1])?, n(parts[2])?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SimpleReflection {
    Alpha,
    Beta,
}

impl SimpleReflection {
    fn matrix(self) -> [[i64; 2]; 2] {
        match self {
            SimpleReflection::Alpha => [[0, 1], [1, 0]],
            SimpleReflection::Beta => [[-1, 0], [0, 1]],
        }
    }
}

/// Element of the Weyl group, stored as its signed-permutation matrix on
/// `(k1, k2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeylElement {
    mat: [[i64; 2]; 2],
}

fn mat_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement {
            mat: [[1, 0], [0, 1]],
        }
    }

    pub fn s_alpha() -> Self {
        Self::from_word(&[SimpleReflection::Alpha])
    }

    pub fn s_beta() -> Self {
        Self::from_word(&[SimpleReflection::Beta])
    }

    /// `s1 s2 … sn`, acting as `s1(s2(…(sn(x))))`.
    pub fn from_word(word: &[SimpleReflection]) -> Self {
        WeylElement {
            mat: word
                .iter()
                .fold([[1, 0], [0, 1]], |acc, s| mat_mul(acc, s.matrix())),
        }
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.mat
    }

    /// `(self · other)(x) = self(other(x))`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            mat: mat_mul(self.mat, other.mat),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let m = self.mat;
        WeylElement {
            mat: [[m[0][0], m[1][0]], [m[0][1], m[1][1]]],
        }
    }

    pub fn act(&self, k: Character) -> Character {
        Character {
            k1: self.mat[0][0] * k.k1 + self.mat[0][1] * k.k2,
            k2: self.mat[1][0] * k.k1 + self.mat[1][1] * k.k2,
            w: k.w,
        }
    }

    /// A shortest word, preferring words that start with `s_β`.
    pub fn reduced_word(&self) -> Vec<SimpleReflection> {
        let mut layer: Vec<Vec<SimpleReflection>> = vec![Vec::new()];
        loop {
            let mut sorted = layer.clone();
            sorted.sort_by_key(|w| w.first().map(|s| *s == SimpleReflection::Alpha));
            if let Some(w) = sorted.iter().find(|w| WeylElement::from_word(w) == *self) {
                return w.clone();
            }
            layer = layer
                .iter()
                .flat_map(|w| {
                    [SimpleReflection::Alpha, SimpleReflection::Beta]
                        .into_iter()
                        .filter(move |s| w.last() != Some(s))
                        .map(move |s| {
                            let mut v = w.clone();
                            v.push(s);
                            v
                        })
                })
                .collect();
        }
    }

    pub fn length(&self) -> usize {
        self.reduced_word().len()
    }

    /// The 8 elements, by length then word.
    pub fn all() -> Vec<WeylElement> {
        let mut out = vec![WeylElement::identity()];
        let gens = [WeylElement::s_alpha(), WeylElement::s_beta()];
        let mut i = 0;
        while i < out.len() {
            for g in &gens {
                let h = out[i].compose(g);
                if !out.contains(&h) {
                    out.push(h);
                }
            }
            i += 1;
        }
        out
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.reduced_word();
        if w.is_empty() {
            return write!(f, "id");
        }
        let names: Vec<&str> = w
            .iter()
            .map(|s| match s {
                SimpleReflection::Alpha => "s_a",
                SimpleReflection::Beta => "s_b",
            })
            .collect();
        write!(f, "{}", names.join(" "))
    }
}

impl FromStr for WeylElement {
    type Err = Error;

    /// Words such as `s_b s_a s_b`, `bab`, `s_β·s_α` or `id`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t, "id" | "1" | "e" | "") {
            return Ok(WeylElement::identity());
        }
        let mut word = Vec::new();
        for c in t.chars() {
            match c {
                'a' | 'α' => word.push(SimpleReflection::Alpha),
                'b' | 'β' => word.push(SimpleReflection::Beta),
                's' | '_' | ' ' | '*' | '.' | '·' | ',' => {}
                other => {
                    return Err(Error::Parse(format!("bad Weyl word {s:?}: {other:?}")))
                }
            }
        }
        Ok(WeylElement::from_word(&word))
    }
}

pub const ALPHA: Character = Character::flat(1, -1);
pub const BETA: Character = Character::flat(-2, 0);
pub const RHO: Character = Character::flat(-1, -2);

/// Positive roots `e1 - e2, -2 e1, -2 e2, -e1 - e2`.
pub const POSITIVE_ROOTS: [Character; 4] = [
    Character::flat(1, -1),
    Character::flat(-2, 0),
    Character::flat(0, -2),
    Character::flat(-1, -1),
];

pub fn rho() -> Character {
    RHO
}

/// Twice ρ, computed as the sum of the positive roots.
pub fn positive_root_sum() -> Character {
    POSITIVE_ROOTS
        .iter()
        .fold(Character::flat(0, 0), |acc, r| acc.add(*r))
}

/// The longest element of the Levi's Weyl group.
pub fn w0_m() -> WeylElement {
    WeylElement::s_alpha()
}

pub fn is_m_dominant(k: Character) -> bool {
    k.k1 >= k.k2
}

pub fn is_g_dominant(k: Character) -> bool {
    0 >= k.k1 && k.k1 >= k.k2
}

/// Whether `d` is a nonnegative integer combination of the simple roots.
pub fn is_nonnegative_root_combination(d: Character) -> bool {
    if d.w != 0 {
        return false;
    }
    let a = -d.k2;
    let twice_b = -d.k2 - d.k1;
    a >= 0 && twice_b >= 0 && twice_b % 2 == 0
}

/// Minimal-length coset representatives `^0w, ^1w, ^2w, ^3w`.
pub fn kostant_representatives() -> [WeylElement; 4] {
    use SimpleReflection::{Alpha, Beta};
    [
        WeylElement::identity(),
        WeylElement::from_word(&[Beta]),
        WeylElement::from_word(&[Beta, Alpha]),
        WeylElement::from_word(&[Beta, Alpha, Beta]),
    ]
}

/// `κ_w = -w_{0,M} w(λ + ρ) - ρ`.
pub fn kappa_w(lambda: Character, w: &WeylElement) -> Character {
    w0_m().act(w.act(lambda.add(RHO))).neg().sub(RHO)
}

/// Stabilizer of `λ + ρ` in the Weyl group.
pub fn w_lambda(lambda: Character) -> Vec<WeylElement> {
    let shifted = lambda.add(RHO);
    WeylElement::all()
        .into_iter()
        .filter(|w| w.act(shifted) == shifted)
        .collect()
}

/// `w^{-1} w_{0,M} ρ + ρ`.
fn rho_shift(w: &WeylElement) -> Character {
    w.inverse().act(w0_m().act(RHO)).add(RHO)
}

/// `-ν + w^{-1} w_{0,M} ρ + ρ`.
pub fn slope_bound(nu: Character, w: &WeylElement) -> Character {
    nu.neg().add(rho_shift(w))
}

/// `λ + w^{-1} w_{0,M} ρ + ρ - Σ n_α α` over the positive roots in the
/// order of [`POSITIVE_ROOTS`].
pub fn jh_weight(lambda: Character, w: &WeylElement, n: [u64; 4]) -> Character {
    POSITIVE_ROOTS
        .iter()
        .zip(n)
        .fold(lambda.add(rho_shift(w)), |acc, (r, c)| acc.sub(r.scale(c as i64)))
}

/// Pairing with the cocharacter `t ↦ diag(1, 1, t, t)`: `(w - k1 - k2) / 2`.
pub fn mu_pairing(k: Character) -> i64 {
    (k.w - k.k1 - k.k2) / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeTateWeights {
    pub weights: [i64; 4],
    pub regular: bool,
}

/// Weights `0, k-2, k-1, 2k-3` of a weight-k Siegel eigenform.
pub fn hodge_tate_weights(k: i64) -> Result<HodgeTateWeights> {
    if k < 2 {
        return Err(Error::domain(format!("weight k = {k} must be at least 2")));
    }
    let weights = [0, k - 2, k - 1, 2 * k - 3];
    let regular = (0..4).all(|i| (i + 1..4).all(|j| weights[i] != weights[j]));
    Ok(HodgeTateWeights { weights, regular })
}

/// One plotted item of the chamber picture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FigureRecord {
    pub kind: String,
    pub x: i64,
    pub y: i64,
    pub label: String,
}

const RAY_DIRECTIONS: [(i64, i64); 5] = [(0, -1), (-1, -1), (1, -1), (1, 0), (1, 1)];
const RAY_LENGTH: i64 = 6;

/// Chamber picture in the `(k1, k2)` plane: the vertex `-ρ`, endpoints of
/// the chamber walls through it, a chamber label per Kostant
/// representative, the lattice dots and the κ_w markers for `λ`.
pub fn figure1_data(lambda: Character) -> Vec<FigureRecord> {
    let rec = |kind: &str, x, y, label: String| FigureRecord {
        kind: kind.into(),
        x,
        y,
        label,
    };
    let vertex = RHO.neg();
    let mut out = vec![rec("vertex", vertex.k1, vertex.k2, "-rho".into())];
    for (i, (dx, dy)) in RAY_DIRECTIONS.iter().enumerate() {
        out.push(rec(
            "ray",
            vertex.k1 + RAY_LENGTH * dx,
            vertex.k2 + RAY_LENGTH * dy,
            format!("wall{i}"),
        ));
    }
    // κ_w of a fixed regular weight lands inside the chamber of w
    let anchor = Character::flat(-2, -5);
    for (i, w) in kostant_representatives().iter().enumerate() {
        let p = vertex.sub(w0_m().act(w.act(anchor)));
        out.push(rec("chamber", p.k1, p.k2, format!("^{i}w")));
    }
    for x in -2..=5 {
        for y in -2..=x {
            out.push(rec("dot", x, y, String::new()));
        }
    }
    for (i, w) in kostant_representatives().iter().enumerate() {
        let k = kappa_w(lambda, w);
        out.push(rec("kappa", k.k1, k.k2, format!("^{i}w")));
    }
    out
}

/// CSV with header `kind,x,y,label`.
pub fn figure1_csv(records: &[FigureRecord]) -> String {
    let mut s = String::from("kind,x,y,label\n");
    for r in records {
        s.push_str(&format!("{},{},{},{}\n", r.kind, r.x, r.y, r.label));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(k1: i64, k2: i64, w: i64) -> Character {
        Character::raw(k1, k2, w)
    }

    #[test]
    fn generator_actions() {
        assert_eq!(WeylElement::s_alpha().act(ch(1, 2, 0)), ch(2, 1, 0));
        assert_eq!(WeylElement::s_beta().act(ch(1, 2, 0)), ch(-1, 2, 0));
        let bab: WeylElement = "s_b s_a s_b".parse().unwrap();
        assert_eq!(bab.act(ch(0, -1, -2)), ch(1, 0, -2));
    }

    #[test]
    fn dominance() {
        assert!(is_m_dominant(ch(2, 2, 2)) && !is_g_dominant(ch(2, 2, 2)));
        assert!(is_m_dominant(ch(0, -1, -1)) && is_g_dominant(ch(0, -1, -1)));
        assert!(!is_m_dominant(ch(1, 2, 1)));
    }

    #[test]
    fn parity_is_enforced() {
        assert!(Character::new(1, 1, 1).is_err());
        assert!(!RHO.satisfies_parity());
        assert!(kappa_w(Character::new(3, -1, 0).unwrap(), &WeylElement::s_beta()).satisfies_parity());
        assert!("1,1,-2".parse::<Character>().is_ok());
        assert!("(1,1;-2)".parse::<Character>().is_ok());
        assert!("1,1".parse::<Character>().is_err());
    }

    #[test]
    fn kostant_list() {
        let reps = kostant_representatives();
        assert_eq!(reps.map(|w| w.length()), [0, 1, 2, 3]);
        assert_eq!(reps[3].to_string(), "s_b s_a s_b");
        assert_eq!(WeylElement::all().len(), 8);
    }

    #[test]
    fn rho_is_half_sum() {
        assert_eq!(positive_root_sum(), RHO.scale(2));
    }

    #[test]
    fn kappa_table() {
        let lambda = ch(1, 1, -2);
        let ks = kostant_representatives().map(|w| kappa_w(lambda, &w));
        assert_eq!(ks, [ch(2, 2, 2), ch(2, 2, 2), ch(1, 1, 2), ch(1, 1, 2)]);
        for w in WeylElement::all() {
            assert_eq!(kappa_w(ch(1, 2, 0), &w), ch(1, 2, 0));
        }
    }

    #[test]
    fn stabilizers() {
        assert_eq!(
            w_lambda(ch(1, 1, -2)),
            vec![WeylElement::identity(), WeylElement::s_beta()]
        );
        assert_eq!(w_lambda(ch(1, 2, 0)).len(), 8);
        assert_eq!(w_lambda(ch(0, -1, -1)), vec![WeylElement::identity()]);
    }

    #[test]
    fn slope_bounds() {
        assert_eq!(slope_bound(ch(0, 0, 0), &WeylElement::identity()), ch(-3, -3, 0));
        let w0 = kostant_representatives()[3].compose(&WeylElement::s_alpha());
        assert_eq!(w0.length(), 4);
        let expected = w0.inverse().act(WeylElement::s_alpha().act(RHO)).add(RHO);
        assert_eq!(slope_bound(ch(0, 0, 0), &w0), expected);
    }

    #[test]
    fn jh_top_factor_matches_kappa() {
        let lambda = ch(1, 1, -2);
        for w in kostant_representatives() {
            let lhs = w.inverse().act(w0_m().act(kappa_w(lambda, &w))).neg();
            assert_eq!(lhs, jh_weight(lambda, &w, [0; 4]));
        }
        let w = WeylElement::identity();
        let a = jh_weight(lambda, &w, [0; 4]);
        let b = jh_weight(lambda, &w, [1, 0, 0, 0]);
        assert_eq!((a.k1 - a.k2) - (b.k1 - b.k2), 2);
    }

    #[test]
    fn hodge_tate() {
        assert_eq!(
            hodge_tate_weights(2).unwrap(),
            HodgeTateWeights { weights: [0, 0, 1, 1], regular: false }
        );
        assert_eq!(hodge_tate_weights(3).unwrap().weights, [0, 1, 2, 3]);
        assert!(hodge_tate_weights(3).unwrap().regular);
        assert_eq!(hodge_tate_weights(10).unwrap().weights, [0, 8, 9, 17]);
        assert!(hodge_tate_weights(1).is_err());
    }

    #[test]
    fn mu_pairing_values() {
        assert_eq!(mu_pairing(ch(1, 1, 2)), 0);
        assert_eq!(mu_pairing(ch(2, 2, 2)), -1);
    }

    #[test]
    fn root_combinations() {
        for r in POSITIVE_ROOTS {
            assert!(is_nonnegative_root_combination(r));
            assert!(!is_nonnegative_root_combination(r.neg()));
        }
        assert!(is_nonnegative_root_combination(ch(0, 0, 0)));
    }

    #[test]
    fn figure_markers() {
        let kappas = |l| {
            let mut v: Vec<(i64, i64)> = figure1_data(l)
                .into_iter()
                .filter(|r| r.kind == "kappa")
                .map(|r| (r.x, r.y))
                .collect();
            v.sort();
            v
        };
        assert_eq!(kappas(ch(1, 1, -2)), vec![(1, 1), (1, 1), (2, 2), (2, 2)]);
        assert_eq!(kappas(ch(0, -2, -2)), vec![(0, -2), (2, -2), (5, 1), (5, 3)]);
        assert_eq!(kappas(ch(1, 2, 0)), vec![(1, 2); 4]);
        let csv = figure1_csv(&figure1_data(ch(1, 1, -2)));
        assert!(csv.starts_with("kind,x,y,label\nvertex,1,2,-rho\n"));
    }
}
