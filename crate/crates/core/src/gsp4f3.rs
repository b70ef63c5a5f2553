//! Symplectic similitudes over F3 relative to
//! `J = [[0, S], [-S, 0]]`, S the 2×2 anti-diagonal matrix of ones.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::curve::is_weil_polynomial;
use crate::error::{Error, Result};
use crate::ffpoly::{FpPoly, IntPoly};

/// Order of GSp4(F3).
pub const GSP4F3_ORDER: usize = 103_680;
/// Order of Sp4(F3).
pub const SP4F3_ORDER: usize = 51_840;

/// Dense 4×4 matrix over F3 with entries in `{0, 1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[[i64; 4]; 4]", into = "[[u8; 4]; 4]")]
pub struct Mat4F3([[u8; 4]; 4]);

impl TryFrom<[[i64; 4]; 4]> for Mat4F3 {
    type Error = Error;

    fn try_from(rows: [[i64; 4]; 4]) -> Result<Self> {
        Ok(Mat4F3::from_ints(rows))
    }
}

impl From<Mat4F3> for [[u8; 4]; 4] {
    fn from(m: Mat4F3) -> Self {
        m.0
    }
}

impl Mat4F3 {
    /// Entries are reduced into `{0, 1, 2}`.
    pub fn from_ints(rows: [[i64; 4]; 4]) -> Self {
        Mat4F3(rows.map(|r| r.map(|c| c.rem_euclid(3) as u8)))
    }

    pub fn rows(&self) -> &[[u8; 4]; 4] {
        &self.0
    }

    pub fn identity() -> Self {
        Self::scalar(1)
    }

    pub fn scalar(c: u8) -> Self {
        Self::diag([c; 4])
    }

    pub fn diag(d: [u8; 4]) -> Self {
        let mut m = [[0u8; 4]; 4];
        for i in 0..4 {
            m[i][i] = d[i] % 3;
        }
        Mat4F3(m)
    }

    /// The fixed alternating form.
    pub fn j() -> Self {
        Mat4F3::from_ints([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]])
    }

    /// Two bits per entry, row-major.
    pub fn key(&self) -> u32 {
        let mut k = 0u32;
        for i in 0..4 {
            for j in 0..4 {
                k |= (self.0[i][j] as u32) << (2 * (4 * i + j));
            }
        }
        k
    }

    pub fn from_key(k: u32) -> Self {
        let mut m = [[0u8; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = ((k >> (2 * (4 * i + j))) & 3) as u8;
            }
        }
        Mat4F3(m)
    }

    pub fn mul(&self, other: &Mat4F3) -> Mat4F3 {
        let mut c = [[0u8; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let s: u32 = (0..4).map(|k| self.0[i][k] as u32 * other.0[k][j] as u32).sum();
                c[i][j] = (s % 3) as u8;
            }
        }
        Mat4F3(c)
    }

    pub fn transpose(&self) -> Mat4F3 {
        let mut t = [[0u8; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                t[i][j] = self.0[j][i];
            }
        }
        Mat4F3(t)
    }

    pub fn scale(&self, c: u8) -> Mat4F3 {
        Mat4F3(self.0.map(|r| r.map(|e| (e * c) % 3)))
    }

    /// The `μ ∈ {1, 2}` with `gᵀ J g = μ J`.
    pub fn multiplier(&self) -> Result<u8> {
        let j = Mat4F3::j();
        let form = self.transpose().mul(&j).mul(self);
        [1u8, 2]
            .into_iter()
            .find(|&mu| form == j.scale(mu))
            .ok_or(Error::NotSimilitude)
    }

    /// Characteristic polynomial `det(x I - g)` from sums of principal minors.
    pub fn charpoly(&self) -> FpPoly {
        let mut e = [0i64; 5];
        e[0] = 1;
        for mask in 1u8..16 {
            let idx: Vec<usize> = (0..4).filter(|i| mask & (1 << i) != 0).collect();
            e[idx.len()] += det_mod3(&idx.iter().map(|&i| idx.iter().map(|&j| self.0[i][j]).collect()).collect());
        }
        // x^4 - e1 x^3 + e2 x^2 - e3 x + e4
        let coeffs: Vec<i64> = (0..5).map(|i| if (4 - i) % 2 == 0 { e[4 - i] } else { -e[4 - i] }).collect();
        FpPoly::from_ints(3, &coeffs)
    }
}

fn det_mod3(rows: &Vec<Vec<u8>>) -> i64 {
    let n = rows.len();
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    let mut det = 1i64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] % 3 != 0) else {
            return 0;
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].rem_euclid(3);
        det = (det * p).rem_euclid(3);
        // p is its own inverse mod 3
        for r in col + 1..n {
            let f = (m[r][col] * p).rem_euclid(3);
            for c in col..n {
                m[r][c] = (m[r][c] - f * m[col][c]).rem_euclid(3);
            }
        }
    }
    det.rem_euclid(3)
}

impl fmt::Display for Mat4F3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| format!("[{},{},{},{}]", r[0], r[1], r[2], r[3]))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Characteristic polynomial as the code `c0 + 3 c1 + 9 c2 + 27 c3` of its
/// non-leading coefficients.
pub fn charpoly_code(cp: &FpPoly) -> u8 {
    (0..4).rev().fold(0u8, |acc, i| acc * 3 + cp.coeff(i) as u8)
}

pub fn charpoly_from_code(code: u8) -> FpPoly {
    let mut c = vec![0u32; 5];
    let mut k = code;
    for slot in c.iter_mut().take(4) {
        *slot = (k % 3) as u32;
        k /= 3;
    }
    c[4] = 1;
    FpPoly::new(3, c)
}

/// A finite subgroup of GSp4(F3) given by its elements.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    elements: Vec<Mat4F3>,
}

impl MatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat4F3] {
        &self.elements
    }

    pub fn contains(&self, g: &Mat4F3) -> bool {
        self.elements.contains(g)
    }

    pub fn multiplier_image(&self) -> BTreeSet<u8> {
        self.elements
            .iter()
            .map(|g| g.multiplier().expect("closure of similitudes"))
            .collect()
    }

    /// Counts of `(charpoly code, multiplier)` over the elements.
    pub fn charpoly_multiset(&self) -> BTreeMap<(u8, u8), usize> {
        let mut out = BTreeMap::new();
        for g in &self.elements {
            let key = (charpoly_code(&g.charpoly()), g.multiplier().expect("similitude"));
            *out.entry(key).or_insert(0) += 1;
        }
        out
    }
}

/// Breadth-first closure under multiplication.
pub fn closure(gens: &[Mat4F3]) -> Result<MatrixGroup> {
    Ok(closure_bounded(gens, GSP4F3_ORDER)?.expect("subgroups of GSp4(F3) fit the bound"))
}

/// Closure that gives up (returns `None`) once it exceeds `limit` elements.
pub fn closure_bounded(gens: &[Mat4F3], limit: usize) -> Result<Option<MatrixGroup>> {
    for g in gens {
        g.multiplier()?;
    }
    let id = Mat4F3::identity();
    let mut seen: HashSet<u32> = HashSet::from([id.key()]);
    let mut elements = vec![id];
    let mut next = 0;
    while next < elements.len() {
        let g = elements[next];
        next += 1;
        for s in gens {
            let h = g.mul(s);
            if seen.insert(h.key()) {
                if elements.len() == limit {
                    return Ok(None);
                }
                elements.push(h);
            }
        }
    }
    Ok(Some(MatrixGroup { elements }))
}

#[derive(Debug, Deserialize)]
struct GeneratorFile {
    generators: Vec<NamedMatrix>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub name: String,
    pub rows: Mat4F3,
}

/// Root-subgroup generators of Sp4(F3) from the bundled data file.
pub fn sp4f3_generators() -> Vec<NamedMatrix> {
    static GENS: OnceLock<Vec<NamedMatrix>> = OnceLock::new();
    GENS.get_or_init(|| {
        let file: GeneratorFile =
            serde_json::from_str(include_str!("../data/sp4f3_generators.json"))
                .expect("bundled generator file parses");
        file.generators
    })
    .clone()
}

/// A similitude of multiplier 2.
pub fn multiplier_two_element() -> Mat4F3 {
    Mat4F3::diag([1, 1, 2, 2])
}

/// Generators of GSp4(F3): Sp4 generators plus a multiplier-2 element.
pub fn gsp4f3_generators() -> Vec<Mat4F3> {
    let mut g: Vec<Mat4F3> = sp4f3_generators().into_iter().map(|n| n.rows).collect();
    g.push(multiplier_two_element());
    g
}

/// Whether an integral Weil polynomial for p = 2 reduces mod 3 to
/// `(x^2 + x + 2)^2` or `(x^2 - x + 2)^2`.
pub fn is_forbidden_frob2_charpoly(cp: &IntPoly) -> Result<bool> {
    if !is_weil_polynomial(cp, 2)? {
        return Err(Error::domain(format!(
            "{} is not a Weil polynomial for p = 2",
            cp.pretty()
        )));
    }
    let r = cp.reduce_mod(3);
    Ok(FORBIDDEN_MOD3.iter().any(|f| r.coeffs() == f))
}

/// Ascending coefficients of `x^4 + 2x^3 + 2x^2 + x + 1` and
/// `x^4 + x^3 + 2x^2 + 2x + 1`.
pub const FORBIDDEN_MOD3: [[u32; 5]; 2] = [[1, 1, 2, 2, 1], [1, 2, 2, 1, 1]];

/// Frobenius data at one prime ℓ ≠ 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusWitness {
    pub ell: u32,
    pub charpoly: IntPoly,
    pub multiplier: u8,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct FrobeniusEvidence {
    pub witnesses: Vec<FrobeniusWitness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generators: Option<Vec<Mat4F3>>,
}

impl FrobeniusEvidence {
    /// Adds Frobenius at ℓ; the multiplier is ℓ mod 3.
    pub fn push(&mut self, ell: u32, charpoly: IntPoly) -> Result<()> {
        if ell.is_multiple_of(3) {
            return Err(Error::domain("Frobenius at 3 carries no mod-3 information"));
        }
        if !is_weil_polynomial(&charpoly, ell)? {
            return Err(Error::domain(format!(
                "{} is not a Weil polynomial for {ell}",
                charpoly.pretty()
            )));
        }
        self.witnesses.push(FrobeniusWitness {
            ell,
            charpoly,
            multiplier: (ell % 3) as u8,
        });
        Ok(())
    }

    fn observed_pairs(&self) -> Vec<(u8, u8, u32)> {
        self.witnesses
            .iter()
            .map(|w| (charpoly_code(&w.charpoly.reduce_mod(3)), w.multiplier, w.ell))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SurjectivityVerdict {
    ConclusiveSurjective,
    ConclusiveNotSurjective,
    Inconclusive,
}

/// A table entry ruled out by the Frobenius at `ell`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub subgroup: String,
    pub ell: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurjectivityReport {
    pub verdict: SurjectivityVerdict,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub closure_order: Option<usize>,
    pub excluded: Vec<Exclusion>,
    pub not_excluded: Vec<String>,
}

/// A proper subgroup of GSp4(F3) recorded by its realizable
/// `(charpoly mod 3, multiplier)` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubgroupEntry {
    pub name: String,
    pub order: usize,
    pub multiplier_image: Vec<u8>,
    pub generators: Vec<Mat4F3>,
    pub charpoly_multiset: Vec<CharpolyCount>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharpolyCount {
    /// Ascending coefficients over F3.
    pub charpoly: String,
    pub multiplier: u8,
    pub count: usize,
}

impl SubgroupEntry {
    pub fn from_group(name: &str, generators: Vec<Mat4F3>, group: &MatrixGroup) -> Self {
        SubgroupEntry {
            name: name.to_string(),
            order: group.order(),
            multiplier_image: group.multiplier_image().into_iter().collect(),
            generators,
            charpoly_multiset: group
                .charpoly_multiset()
                .into_iter()
                .map(|((code, multiplier), count)| CharpolyCount {
                    charpoly: charpoly_from_code(code).to_string(),
                    multiplier,
                    count,
                })
                .collect(),
        }
    }

    pub fn pairs(&self) -> Result<BTreeSet<(u8, u8)>> {
        self.charpoly_multiset
            .iter()
            .map(|c| {
                let coeffs: IntPoly = c.charpoly.parse()?;
                Ok((charpoly_code(&coeffs.reduce_mod(3)), c.multiplier))
            })
            .collect()
    }
}

/// Realizability table of proper subgroups covering every proper subgroup
/// up to conjugacy by inclusion of pair sets.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubgroupTable {
    pub schema: u32,
    pub note: String,
    pub entries: Vec<SubgroupEntry>,
}

impl SubgroupTable {
    pub fn bundled() -> &'static SubgroupTable {
        static TABLE: OnceLock<SubgroupTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            serde_json::from_str(include_str!("../data/gsp4f3_subgroups.json"))
                .expect("bundled subgroup table parses")
        })
    }
}

/// Evidence that the mod-3 image is all of GSp4(F3).
///
/// With explicit generators the closure is computed. Otherwise every table
/// entry must miss at least one observed `(charpoly mod 3, multiplier)` pair.
pub fn surjectivity_evidence(
    ev: &FrobeniusEvidence,
    table: &SubgroupTable,
) -> Result<SurjectivityReport> {
    if let Some(gens) = &ev.generators {
        let group = closure(gens)?;
        let mults: BTreeSet<u8> = gens.iter().map(|g| g.multiplier()).collect::<Result<_>>()?;
        let full = group.order() == GSP4F3_ORDER && mults.len() == 2;
        return Ok(SurjectivityReport {
            verdict: if full {
                SurjectivityVerdict::ConclusiveSurjective
            } else {
                SurjectivityVerdict::ConclusiveNotSurjective
            },
            mode: "exact".into(),
            closure_order: Some(group.order()),
            excluded: Vec::new(),
            not_excluded: Vec::new(),
        });
    }
    let observed = ev.observed_pairs();
    let mut excluded = Vec::new();
    let mut not_excluded = Vec::new();
    for entry in &table.entries {
        let pairs = entry.pairs()?;
        match observed.iter().find(|(c, m, _)| !pairs.contains(&(*c, *m))) {
            Some(&(_, _, ell)) => excluded.push(Exclusion {
                subgroup: entry.name.clone(),
                ell,
            }),
            None => not_excluded.push(entry.name.clone()),
        }
    }
    let verdict = if !observed.is_empty() && not_excluded.is_empty() {
        SurjectivityVerdict::ConclusiveSurjective
    } else {
        SurjectivityVerdict::Inconclusive
    };
    Ok(SurjectivityReport {
        verdict,
        mode: "witness".into(),
        closure_order: None,
        excluded,
        not_excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_squares_to_minus_identity() {
        let j = Mat4F3::j();
        assert_eq!(j.mul(&j), Mat4F3::scalar(2));
        assert_eq!(j.transpose(), j.scale(2));
    }

    #[test]
    fn multipliers() {
        assert_eq!(Mat4F3::identity().multiplier().unwrap(), 1);
        assert_eq!(Mat4F3::scalar(2).multiplier().unwrap(), 1);
        assert_eq!(Mat4F3::diag([1, 1, 2, 2]).multiplier().unwrap(), 2);
        assert!(Mat4F3::diag([1, 2, 1, 1]).multiplier().is_err());
    }

    #[test]
    fn charpolys() {
        // (x + 2)^4 and (x + 1)^4
        assert_eq!(Mat4F3::identity().charpoly(), FpPoly::new(3, vec![1, 2, 0, 2, 1]));
        assert_eq!(Mat4F3::scalar(2).charpoly(), FpPoly::new(3, vec![1, 1, 0, 1, 1]));
        assert_eq!(Mat4F3::j().charpoly(), FpPoly::new(3, vec![1, 0, 2, 0, 1]));
    }

    #[test]
    fn charpoly_codes_round_trip() {
        for code in 0..81 {
            assert_eq!(charpoly_code(&charpoly_from_code(code)), code);
        }
    }

    #[test]
    fn small_closures() {
        assert_eq!(closure(&[Mat4F3::identity()]).unwrap().order(), 1);
        assert_eq!(closure(&[Mat4F3::j()]).unwrap().order(), 4);
        assert!(closure(&[Mat4F3::diag([1, 2, 1, 1])]).is_err());
    }

    #[test]
    fn forbidden_predicate() {
        let f = |c: &[i64]| is_forbidden_frob2_charpoly(&IntPoly::new(c.to_vec()));
        assert!(f(&[4, 4, 5, 2, 1]).unwrap());
        assert!(f(&[4, -4, 5, -2, 1]).unwrap());
        assert!(!f(&[4, 0, 0, 0, 1]).unwrap());
        assert!(f(&[1, 0, 0, 0, 1]).is_err());
    }

    #[test]
    fn evidence_rejects_bad_witnesses() {
        let mut ev = FrobeniusEvidence::default();
        assert!(ev.push(3, IntPoly::new(vec![9, 0, 0, 0, 1])).is_err());
        assert!(ev.push(5, IntPoly::new(vec![9, 0, 0, 0, 1])).is_err());
        ev.push(5, IntPoly::new(vec![25, 0, 0, 0, 1])).unwrap();
        assert_eq!(ev.witnesses[0].multiplier, 2);
    }

    #[test]
    fn empty_evidence_is_inconclusive() {
        let r = surjectivity_evidence(&FrobeniusEvidence::default(), SubgroupTable::bundled()).unwrap();
        assert_eq!(r.verdict, SurjectivityVerdict::Inconclusive);
    }
}
