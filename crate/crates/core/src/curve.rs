//! Genus-2 models `y^2 + h(x) y = f(x)` over Z and their reductions.
//!
//! The projective model glues chart 1 with the chart at infinity
//! `ỹ^2 + h̃(x̃) ỹ = f̃(x̃)`, where `h̃(x̃) = x̃^3 h(1/x̃)` and
//! `f̃(x̃) = x̃^6 f(1/x̃)`. Good reduction is a property of the given model.
//!
//! Frobenius characteristic polynomials use the geometric-Frobenius
//! convention on H^1: `x^4 - s1 x^3 + e2 x^2 - p s1 x + p^2` with
//! `s1 = p + 1 - N1` and `e2 = (s1^2 - s2) / 2`, `s2 = p^2 + 1 - N2`.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffpoly::{field, Degree, Fe, FpPoly, IntPoly};

/// A model `y^2 + h(x) y = f(x)` with `deg f ≤ 6`, `deg h ≤ 3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenusTwoModel {
    f: IntPoly,
    h: IntPoly,
}

impl GenusTwoModel {
    pub fn new(f: IntPoly, h: IntPoly) -> Result<Self> {
        if f.degree() > Degree::Finite(6) {
            return Err(Error::domain(format!("deg f = {} exceeds 6", f.degree())));
        }
        if h.degree() > Degree::Finite(3) {
            return Err(Error::domain(format!("deg h = {} exceeds 3", h.degree())));
        }
        if f.is_zero() && h.is_zero() {
            return Err(Error::domain("f and h are both zero"));
        }
        Ok(GenusTwoModel { f, h })
    }

    pub fn from_coeffs(f: &[i64], h: &[i64]) -> Result<Self> {
        Self::new(IntPoly::new(f.to_vec()), IntPoly::new(h.to_vec()))
    }

    pub fn f(&self) -> &IntPoly {
        &self.f
    }

    pub fn h(&self) -> &IntPoly {
        &self.h
    }

    /// `4f + h^2`, whose roots are the x-coordinates of the Weierstrass points.
    pub fn branch_polynomial(&self) -> IntPoly {
        self.f.scale(4).add(&self.h.mul(&self.h))
    }

    /// Quadratic twist by d: `y^2 + h y = f` becomes `Y^2 = d (4f + h^2)`.
    pub fn quadratic_twist(&self, d: i64) -> Result<Self> {
        GenusTwoModel::new(self.branch_polynomial().scale(d), IntPoly::zero())
    }
}

impl fmt::Display for GenusTwoModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f={};h={}", self.f, self.h)
    }
}

impl FromStr for GenusTwoModel {
    type Err = Error;

    /// Parses `f=[c0,...,c6];h=[d0,...,d3]`; a missing `h` means `h = 0`.
    fn from_str(s: &str) -> Result<Self> {
        let mut f = None;
        let mut h = None;
        for part in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in {part:?}")))?;
            let poly: IntPoly = val.parse()?;
            match key.trim() {
                "f" => f = Some(poly),
                "h" => h = Some(poly),
                other => return Err(Error::Parse(format!("unknown curve field {other:?}"))),
            }
        }
        let f = f.ok_or_else(|| Error::Parse(format!("missing f in {s:?}")))?;
        GenusTwoModel::new(f, h.unwrap_or_default())
    }
}

/// A model over F_p; coefficients padded to the formal degrees 6 and 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModelOverFp {
    p: u32,
    f: [u32; 7],
    h: [u32; 4],
}

impl ModelOverFp {
    pub fn new(p: u32, f: &FpPoly, h: &FpPoly) -> Result<Self> {
        if f.p() != p || h.p() != p {
            return Err(Error::domain("coefficient field mismatch"));
        }
        if f.degree() > Degree::Finite(6) || h.degree() > Degree::Finite(3) {
            return Err(Error::domain("degree bounds deg f ≤ 6, deg h ≤ 3 violated"));
        }
        let mut fa = [0; 7];
        let mut ha = [0; 4];
        fa[..f.coeffs().len()].copy_from_slice(f.coeffs());
        ha[..h.coeffs().len()].copy_from_slice(h.coeffs());
        Ok(ModelOverFp { p, f: fa, h: ha })
    }

    pub(crate) fn from_arrays(p: u32, f: [u32; 7], h: [u32; 4]) -> Self {
        ModelOverFp { p, f, h }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn f(&self) -> FpPoly {
        FpPoly::new(self.p, self.f.to_vec())
    }

    pub fn h(&self) -> FpPoly {
        FpPoly::new(self.p, self.h.to_vec())
    }

    /// `h^2 + 4f` over F_p as a padded coefficient array.
    fn branch(&self) -> [u32; 7] {
        let p = self.p as u64;
        let mut out = [0u64; 7];
        for i in 0..4 {
            for j in 0..4 {
                out[i + j] += self.h[i] as u64 * self.h[j] as u64;
            }
        }
        let mut res = [0u32; 7];
        for i in 0..7 {
            res[i] = ((out[i] + 4 * self.f[i] as u64) % p) as u32;
        }
        res
    }
}

impl fmt::Display for ModelOverFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={};f={};h={}", self.p, self.f(), self.h())
    }
}

/// Coefficientwise reduction of a model.
pub fn reduce_mod(model: &GenusTwoModel, p: u32) -> ModelOverFp {
    let mut f = [0u32; 7];
    let mut h = [0u32; 4];
    for (i, c) in f.iter_mut().enumerate() {
        *c = model.f.coeff(i).rem_euclid(p as i64) as u32;
    }
    for (i, c) in h.iter_mut().enumerate() {
        *c = model.h.coeff(i).rem_euclid(p as i64) as u32;
    }
    ModelOverFp { p, f, h }
}

/// Whether the glued projective model is a smooth genus-2 curve over F_p.
pub fn is_smooth_genus2(model: &ModelOverFp) -> bool {
    if model.p == 2 {
        return is_smooth_char2(model);
    }
    let h = FpPoly::new(model.p, model.branch().to_vec());
    matches!(h.degree(), Degree::Finite(5) | Degree::Finite(6)) && h.is_squarefree()
}

fn is_smooth_char2(model: &ModelOverFp) -> bool {
    if model.h.iter().all(|&c| c == 0) {
        return false;
    }
    let k = field(2, 6);
    let mut f_rev = model.f;
    f_rev.reverse();
    let mut h_rev = model.h;
    h_rev.reverse();
    let derivative = |c: &[u32]| -> Vec<u32> {
        c.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| if i % 2 == 1 { a } else { 0 })
            .collect()
    };
    for (f, h) in [(&model.f[..], &model.h[..]), (&f_rev[..], &h_rev[..])] {
        let df = derivative(f);
        let dh = derivative(h);
        for x in k.elements() {
            if k.eval_fp(h, x) != Fe(0) {
                continue;
            }
            // on h(x) = 0 the equation forces y = sqrt(f(x)); singular iff
            // the x-partial h'(x) y + f'(x) also vanishes
            let y = k.sqrt_char2(k.eval_fp(f, x));
            let fx = k.add(k.mul(k.eval_fp(&dh, x), y), k.eval_fp(&df, x));
            if fx == Fe(0) {
                return false;
            }
        }
    }
    true
}

/// Number of F_{p^k}-points of the smooth projective model, k ∈ {1, 2}.
pub fn count_points(model: &ModelOverFp, k: u32) -> Result<u64> {
    if !(1..=2).contains(&k) {
        return Err(Error::domain(format!("extension degree {k} not supported")));
    }
    if !is_smooth_genus2(model) {
        return Err(Error::domain(format!("{model} is not a smooth genus-2 model")));
    }
    Ok(count_points_unchecked(model, k))
}

fn count_points_unchecked(model: &ModelOverFp, k: u32) -> u64 {
    let fq = field(model.p, k);
    let mut n: i64 = 0;
    if model.p == 2 {
        // y^2 + a y = b: one root if a = 0, else two iff Tr(b / a^2) = 0
        let solutions = |a: Fe, b: Fe| -> i64 {
            if a == Fe(0) {
                1
            } else {
                let a2 = fq.mul(a, a);
                let z = fq.mul(b, fq.inv(a2).unwrap());
                if fq.trace(z) == 0 {
                    2
                } else {
                    0
                }
            }
        };
        for x in fq.elements() {
            n += solutions(fq.eval_fp(&model.h, x), fq.eval_fp(&model.f, x));
        }
        n += solutions(Fe(model.h[3]), Fe(model.f[6]));
    } else {
        let branch = model.branch();
        for x in fq.elements() {
            n += 1 + fq.quadratic_character(fq.eval_fp(&branch, x)) as i64;
        }
        n += 1 + fq.quadratic_character(Fe(branch[6])) as i64;
    }
    n as u64
}

/// Local data at a prime: point counts and the Frobenius characteristic
/// polynomial when the model has good reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusRecord {
    pub p: u32,
    pub good_reduction: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n1: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n2: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s1: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub e2: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub charpoly: Option<IntPoly>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ordinary: Option<bool>,
}

impl FrobeniusRecord {
    pub fn bad(p: u32) -> Self {
        FrobeniusRecord {
            p,
            good_reduction: false,
            n1: None,
            n2: None,
            s1: None,
            e2: None,
            charpoly: None,
            ordinary: None,
        }
    }

    /// Record built from an externally supplied Weil polynomial.
    pub fn from_charpoly(p: u32, charpoly: IntPoly) -> Result<Self> {
        if !is_weil_polynomial(&charpoly, p)? {
            return Err(Error::domain(format!(
                "{} is not a Weil polynomial for p = {p}",
                charpoly.pretty()
            )));
        }
        let s1 = -charpoly.coeff(3);
        let e2 = charpoly.coeff(2);
        let ordinary = newton_is_ordinary(&charpoly, p);
        Ok(FrobeniusRecord {
            p,
            good_reduction: true,
            n1: None,
            n2: None,
            s1: Some(s1),
            e2: Some(e2),
            charpoly: Some(charpoly),
            ordinary: Some(ordinary),
        })
    }
}

/// The quartic `x^4 - s1 x^3 + e2 x^2 - p s1 x + p^2` from point counts.
pub fn charpoly_from_counts(p: u32, n1: u64, n2: u64) -> Result<(i64, i64, IntPoly)> {
    let p = p as i64;
    let s1 = p + 1 - n1 as i64;
    let s2 = p * p + 1 - n2 as i64;
    let twice_e2 = s1 * s1 - s2;
    if twice_e2 % 2 != 0 {
        return Err(Error::domain(format!(
            "s1^2 - s2 = {twice_e2} is odd; counts ({n1}, {n2}) are inconsistent"
        )));
    }
    let e2 = twice_e2 / 2;
    Ok((s1, e2, IntPoly::new(vec![p * p, -p * s1, e2, -s1, 1])))
}

/// Frobenius data of a model over F_p. A singular model yields a record
/// with `good_reduction = false` and no polynomial.
pub fn frobenius_charpoly(model: &ModelOverFp) -> FrobeniusRecord {
    if !is_smooth_genus2(model) {
        return FrobeniusRecord::bad(model.p);
    }
    let n1 = count_points_unchecked(model, 1);
    let n2 = count_points_unchecked(model, 2);
    let (s1, e2, charpoly) =
        charpoly_from_counts(model.p, n1, n2).expect("point counts of a smooth curve");
    let ordinary = newton_is_ordinary(&charpoly, model.p);
    FrobeniusRecord {
        p: model.p,
        good_reduction: true,
        n1: Some(n1),
        n2: Some(n2),
        s1: Some(s1),
        e2: Some(e2),
        charpoly: Some(charpoly),
        ordinary: Some(ordinary),
    }
}

fn valuation(mut n: i64, p: u32) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut v = 0;
    while n % p as i64 == 0 {
        n /= p as i64;
        v += 1;
    }
    Some(v)
}

/// p-adic valuations of the roots of a polynomial with nonzero constant
/// term, read off the lower convex hull of `(i, v_p(c_i))`; ascending.
pub fn newton_slopes(poly: &IntPoly, p: u32) -> Result<Vec<Ratio<i64>>> {
    if poly.coeff(0) == 0 {
        return Err(Error::domain("Newton polygon needs a nonzero constant term"));
    }
    let points: Vec<(i64, i64)> = poly
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, &c)| valuation(c, p).map(|v| (i as i64, v as i64)))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b when it lies on or above segment a -> pt
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut out = Vec::new();
    for w in hull.windows(2) {
        let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        let slope = Ratio::new(-dy, dx);
        out.extend(std::iter::repeat_n(slope, dx as usize));
    }
    out.sort();
    Ok(out)
}

fn newton_is_ordinary(charpoly: &IntPoly, p: u32) -> bool {
    let slopes = newton_slopes(charpoly, p).expect("charpoly has constant term p^2");
    slopes == [0, 0, 1, 1].map(Ratio::from_integer)
}

/// Ordinary means Newton slopes (0, 0, 1, 1).
pub fn is_ordinary(record: &FrobeniusRecord) -> Result<bool> {
    match (&record.charpoly, record.good_reduction) {
        (Some(cp), true) => Ok(newton_is_ordinary(cp, record.p)),
        _ => Err(Error::domain(format!(
            "ordinarity is undefined: bad reduction at {}",
            record.p
        ))),
    }
}

/// Whether a monic quartic has the shape `x^4 - s1 x^3 + e2 x^2 - p s1 x + p^2`
/// and all complex roots of absolute value `sqrt(p)`.
///
/// With `u = x + p/x` the quartic is `x^2 (u^2 - s1 u + e2 - 2p)`, so the
/// root condition is that both `u`-roots are real and lie in `[-2√p, 2√p]`.
pub fn is_weil_polynomial(poly: &IntPoly, p: u32) -> Result<bool> {
    if poly.degree() != Degree::Finite(4) || poly.leading() != 1 {
        return Err(Error::domain(format!(
            "{} is not a monic quartic",
            poly.pretty()
        )));
    }
    let p = p as i128;
    let c: Vec<i128> = (0..5).map(|i| poly.coeff(i) as i128).collect();
    let s1 = -c[3];
    if c[0] != p * p || c[1] != -p * s1 {
        return Ok(false);
    }
    let q0 = c[2] - 2 * p;
    if s1 * s1 - 4 * q0 < 0 || s1 * s1 > 16 * p {
        return Ok(false);
    }
    // g(u) = u^2 - s1 u + q0 must be ≥ 0 at u = ±2√p:
    // 4p + q0 ∓ 2 s1 √p ≥ 0
    let nonneg = |a: i128, b: i128| -> bool {
        // a - b √p ≥ 0
        if b <= 0 {
            a >= 0 || a * a <= b * b * p
        } else {
            a >= 0 && a * a >= b * b * p
        }
    };
    Ok(nonneg(4 * p + q0, 2 * s1) && nonneg(4 * p + q0, -2 * s1))
}

/// `x^4 P(p/x) / p^2`, the polynomial whose roots are `p / α`. `None` if
/// that is not an integral monic quartic.
pub fn reciprocal_normalized(poly: &IntPoly, p: u32) -> Option<IntPoly> {
    if poly.degree() != Degree::Finite(4) {
        return None;
    }
    let p = p as i64;
    let p2 = p * p;
    let mut out = vec![0i64; 5];
    for i in 0..5 {
        let v = poly.coeff(i) * p.pow(i as u32);
        if v % p2 != 0 {
            return None;
        }
        out[4 - i] = v / p2;
    }
    let r = IntPoly::new(out);
    (r.leading() == 1).then_some(r)
}

/// Integral Weil bound `|N - (q + 1)| ≤ 4 √q` for a genus-2 curve.
pub fn within_weil_bound(count: u64, q: u64) -> bool {
    let d = (count as i128 - q as i128 - 1).abs();
    d * d <= 16 * q as i128
}
