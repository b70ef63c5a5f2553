//! Per-curve hypothesis checks, mod-3 Frobenius comparison and the
//! exhaustive local density count.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::Range;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::curve::{frobenius_charpoly, reduce_mod, FrobeniusRecord, GenusTwoModel, ModelOverFp};
use crate::error::Result;
use crate::ffpoly::{is_squarefree_q, primes, IntPoly};
use crate::gsp4f3::{
    is_forbidden_frob2_charpoly, surjectivity_evidence, FrobeniusEvidence, SubgroupTable,
    SurjectivityVerdict,
};
use crate::mod2image::{
    conjugation_class_from_real_roots, has_rational_weierstrass_point, quintic_factor,
    quintic_galois_is_s5, weierstrass_poly, QuinticBudget, QuinticVerdict,
};

/// Version of the report and cache formats.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Pass => "Pass",
            Verdict::Fail => "Fail",
            Verdict::Inconclusive => "Inconclusive",
            Verdict::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub verdict: Verdict,
    pub evidence: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub curve: GenusTwoModel,
    pub conditions: Vec<Condition>,
    pub overall: Verdict,
    pub schema: u32,
}

impl CheckReport {
    fn new(curve: &GenusTwoModel, conditions: Vec<Condition>) -> Self {
        let overall = overall_verdict(conditions.iter().map(|c| c.verdict));
        CheckReport {
            curve: curve.clone(),
            conditions,
            overall,
            schema: SCHEMA_VERSION,
        }
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

/// Any Fail fails; otherwise all Pass passes; otherwise Inconclusive.
pub fn overall_verdict(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    let mut all_pass = true;
    for v in verdicts {
        match v {
            Verdict::Fail => return Verdict::Fail,
            Verdict::Pass => {}
            _ => all_pass = false,
        }
    }
    if all_pass {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOptions {
    /// Largest prime used for Frobenius witnesses.
    pub prime_bound: u32,
    /// Primes of bad reduction of the curve, when known from elsewhere.
    pub bad_primes: Option<BTreeSet<u32>>,
    /// Frobenius characteristic polynomials known from elsewhere, used at
    /// primes where the given model is singular.
    pub known_charpolys: BTreeMap<u32, IntPoly>,
    pub quintic_budget: QuinticBudget,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            prime_bound: 200,
            bad_primes: None,
            known_charpolys: BTreeMap::new(),
            quintic_budget: QuinticBudget::default(),
        }
    }
}

pub const POLARIZATION: &str = "polarization_degree_prime_to_3";
pub const SURJECTIVE_MOD3: &str = "mod3_image_surjective";
pub const FROB2_NOT_FORBIDDEN: &str = "frobenius_at_2_not_forbidden";
pub const ORDINARY_AT_3: &str = "good_ordinary_distinct_roots_at_3";

pub const RATIONAL_WEIERSTRASS: &str = "rational_weierstrass_point";
pub const ORDINARY_AT_2: &str = "good_ordinary_at_2";
pub const QUINTIC_S5: &str = "quintic_galois_group_s5";
pub const CONJUGATION_CLASS: &str = "complex_conjugation_double_transposition";

/// What is known about the reduction at one prime.
enum Local {
    Good(FrobeniusRecord),
    /// The curve is known to have bad reduction.
    Bad,
    /// The model is singular and nothing else is known.
    ModelSingular,
    /// The model is singular but the curve is known to have good reduction.
    GoodWithoutData,
}

fn local_data(model: &GenusTwoModel, p: u32, opts: &CheckOptions) -> Result<Local> {
    let rec = frobenius_charpoly(&reduce_mod(model, p));
    if rec.good_reduction {
        return Ok(Local::Good(rec));
    }
    if let Some(cp) = opts.known_charpolys.get(&p) {
        return Ok(Local::Good(FrobeniusRecord::from_charpoly(p, cp.clone())?));
    }
    Ok(match &opts.bad_primes {
        Some(bad) if bad.contains(&p) => Local::Bad,
        Some(_) => Local::GoodWithoutData,
        None => Local::ModelSingular,
    })
}

fn condition(name: &str, verdict: Verdict, evidence: Value) -> Condition {
    Condition {
        name: name.into(),
        verdict,
        evidence,
    }
}

fn charpoly_evidence(rec: &FrobeniusRecord) -> Value {
    let cp = rec.charpoly.as_ref().expect("good reduction record");
    json!({
        "p": rec.p,
        "charpoly": cp.to_string(),
        "charpoly_mod3": cp.reduce_mod(3).to_string(),
    })
}

/// Hypotheses of the modularity criterion for a genus-2 Jacobian via its
/// mod-3 representation.
pub fn check_modularity_hypotheses(
    model: &GenusTwoModel,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    weierstrass_poly(model)?;
    let mut conditions = vec![condition(
        POLARIZATION,
        Verdict::Pass,
        json!({"polarization_degree": 1}),
    )];

    let mut evidence = FrobeniusEvidence::default();
    let mut skipped = Vec::new();
    for ell in primes().take_while(|&l| l <= opts.prime_bound) {
        if ell == 3 {
            continue;
        }
        match local_data(model, ell, opts)? {
            Local::Good(rec) => evidence.push(ell, rec.charpoly.expect("good record"))?,
            _ => skipped.push(ell),
        }
    }
    let surj = surjectivity_evidence(&evidence, SubgroupTable::bundled())?;
    let verdict = match surj.verdict {
        SurjectivityVerdict::ConclusiveSurjective => Verdict::Pass,
        SurjectivityVerdict::ConclusiveNotSurjective => Verdict::Fail,
        SurjectivityVerdict::Inconclusive => Verdict::Inconclusive,
    };
    conditions.push(condition(
        SURJECTIVE_MOD3,
        verdict,
        json!({
            "prime_bound": opts.prime_bound,
            "witnesses": evidence.witnesses.len(),
            "skipped_primes": skipped,
            "report": surj,
        }),
    ));

    conditions.push(match local_data(model, 2, opts)? {
        Local::Good(rec) => {
            let forbidden = is_forbidden_frob2_charpoly(rec.charpoly.as_ref().unwrap())?;
            let mut ev = charpoly_evidence(&rec);
            ev["forbidden"] = json!(forbidden);
            condition(
                FROB2_NOT_FORBIDDEN,
                if forbidden { Verdict::Fail } else { Verdict::Pass },
                ev,
            )
        }
        _ => condition(
            FROB2_NOT_FORBIDDEN,
            Verdict::Inconclusive,
            json!({"p": 2, "reason": "no Frobenius data at 2"}),
        ),
    });

    conditions.push(match local_data(model, 3, opts)? {
        Local::Good(rec) => {
            let cp = rec.charpoly.as_ref().unwrap();
            let ordinary = rec.ordinary == Some(true);
            let distinct = is_squarefree_q(cp)?;
            let mut ev = charpoly_evidence(&rec);
            ev["ordinary"] = json!(ordinary);
            ev["distinct_roots"] = json!(distinct);
            condition(
                ORDINARY_AT_3,
                if ordinary && distinct { Verdict::Pass } else { Verdict::Fail },
                ev,
            )
        }
        Local::Bad | Local::ModelSingular => condition(
            ORDINARY_AT_3,
            Verdict::Fail,
            json!({"p": 3, "error": "BadReduction"}),
        ),
        Local::GoodWithoutData => condition(
            ORDINARY_AT_3,
            Verdict::Inconclusive,
            json!({"p": 3, "reason": "model singular at 3 but the curve has good reduction"}),
        ),
    });

    Ok(CheckReport::new(model, conditions))
}

/// Hypotheses of the mod-2 modularity route: a rational Weierstrass point,
/// good ordinary reduction at 2, full S5 image of the remaining quintic,
/// and complex conjugation acting as a double transposition.
pub fn check_mod2_modularity_hypotheses(
    model: &GenusTwoModel,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let locus = weierstrass_poly(model)?;
    let rational = has_rational_weierstrass_point(&locus);
    let mut conditions = vec![condition(
        RATIONAL_WEIERSTRASS,
        if rational { Verdict::Pass } else { Verdict::Fail },
        json!({
            "weierstrass_poly": locus.poly.to_string(),
            "degree": locus.degree,
            "point_at_infinity": locus.has_infinity_branch_point,
        }),
    )];

    conditions.push(match local_data(model, 2, opts)? {
        Local::Good(rec) => {
            let e2 = rec.e2.expect("good record");
            let mut ev = charpoly_evidence(&rec);
            ev["e2"] = json!(e2);
            condition(
                ORDINARY_AT_2,
                if e2 % 2 != 0 { Verdict::Pass } else { Verdict::Fail },
                ev,
            )
        }
        _ => condition(
            ORDINARY_AT_2,
            Verdict::Inconclusive,
            json!({"p": 2, "reason": "bad reduction; semistable ordinary case not decided"}),
        ),
    });

    match quintic_factor(&locus) {
        Some(q) => {
            let cert = quintic_galois_is_s5(&q, opts.quintic_budget)?;
            let verdict = match cert.verdict {
                QuinticVerdict::ConclusiveS5 => Verdict::Pass,
                QuinticVerdict::NotS5 => Verdict::Fail,
                QuinticVerdict::Inconclusive => Verdict::Inconclusive,
            };
            conditions.push(condition(
                QUINTIC_S5,
                verdict,
                json!({"quintic": q.to_string(), "certificate": cert}),
            ));
            let class = conjugation_class_from_real_roots(&q)?;
            conditions.push(condition(
                CONJUGATION_CLASS,
                if class.transpositions == 2 { Verdict::Pass } else { Verdict::Fail },
                json!({"real_roots": class.real_roots, "class": class.to_string()}),
            ));
        }
        None => {
            for name in [QUINTIC_S5, CONJUGATION_CLASS] {
                conditions.push(condition(
                    name,
                    Verdict::Inconclusive,
                    json!({"reason": "no rational Weierstrass point to split off"}),
                ));
            }
        }
    }
    Ok(CheckReport::new(model, conditions))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub ell: u32,
    pub a_charpoly_mod3: String,
    pub b_charpoly_mod3: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub a: GenusTwoModel,
    pub b: GenusTwoModel,
    pub bound: u32,
    pub primes_compared: Vec<u32>,
    pub first_disagreement: Option<Disagreement>,
    pub agree_up_to_bound: bool,
    /// Not decided by this tool.
    pub two_distinguished: Verdict,
    pub schema: u32,
}

/// Compares Frobenius characteristic polynomials mod 3 at the primes
/// `ℓ ≤ bound`, `ℓ ≠ 3`, where both models have good reduction.
pub fn compare_mod3_frobenius(
    a: &GenusTwoModel,
    b: &GenusTwoModel,
    bound: u32,
) -> Result<ComparisonReport> {
    weierstrass_poly(a)?;
    weierstrass_poly(b)?;
    let mut compared = Vec::new();
    let mut first = None;
    for ell in primes().take_while(|&l| l <= bound) {
        if ell == 3 {
            continue;
        }
        let ra = frobenius_charpoly(&reduce_mod(a, ell));
        let rb = frobenius_charpoly(&reduce_mod(b, ell));
        let (Some(ca), Some(cb)) = (ra.charpoly, rb.charpoly) else {
            continue;
        };
        compared.push(ell);
        let (ma, mb) = (ca.reduce_mod(3), cb.reduce_mod(3));
        if ma != mb {
            first = Some(Disagreement {
                ell,
                a_charpoly_mod3: ma.to_string(),
                b_charpoly_mod3: mb.to_string(),
            });
            break;
        }
    }
    Ok(ComparisonReport {
        a: a.clone(),
        b: b.clone(),
        bound,
        agree_up_to_bound: first.is_none(),
        first_disagreement: first,
        primes_compared: compared,
        two_distinguished: Verdict::Unknown,
        schema: SCHEMA_VERSION,
    })
}

/// Exact local densities of the modularity hypotheses at 2 and 3 over all
/// models with `deg h ≤ 3`, `deg f ≤ 6`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityResult {
    pub count2: u64,
    pub total2: u64,
    pub count3: u64,
    pub total3: u64,
    pub numerator: u64,
    pub denominator: u64,
}

impl DensityResult {
    pub fn fraction(&self) -> Ratio<u64> {
        Ratio::new(self.numerator, self.denominator)
    }
}

/// Model with coefficient index `code` in base p: the first 7 digits are
/// `f0..f6`, the last 4 are `h0..h3`.
pub fn model_from_code(p: u32, mut code: u64) -> ModelOverFp {
    let mut f = [0u32; 7];
    let mut h = [0u32; 4];
    for c in f.iter_mut().chain(h.iter_mut()) {
        *c = (code % p as u64) as u32;
        code /= p as u64;
    }
    ModelOverFp::from_arrays(p, f, h)
}

/// Number of models counted at p ∈ {2, 3} among the given codes.
pub fn density_count(p: u32, codes: Range<u64>) -> u64 {
    let mut memo: HashMap<IntPoly, bool> = HashMap::new();
    let mut n = 0;
    for code in codes {
        let rec = frobenius_charpoly(&model_from_code(p, code));
        let Some(cp) = rec.charpoly else { continue };
        let ok = match p {
            2 => *memo.entry(cp).or_insert_with_key(|cp| {
                !is_forbidden_frob2_charpoly(cp).expect("charpoly of a smooth curve")
            }),
            3 => {
                rec.ordinary == Some(true)
                    && *memo
                        .entry(cp)
                        .or_insert_with_key(|cp| is_squarefree_q(cp).expect("nonzero"))
            }
            _ => panic!("density is defined at 2 and 3 only"),
        };
        n += ok as u64;
    }
    n
}

fn parallel_count(p: u32, total: u64, jobs: usize) -> u64 {
    let jobs = jobs.max(1) as u64;
    let chunk = total.div_ceil(jobs);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|i| {
                let start = (i * chunk).min(total);
                let end = ((i + 1) * chunk).min(total);
                s.spawn(move || density_count(p, start..end))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker")).sum()
    })
}

/// Exhaustive count over all `2^11` and `3^11` models with `jobs` workers.
pub fn density_remark(jobs: usize) -> DensityResult {
    let total2 = 2u64.pow(11);
    let total3 = 3u64.pow(11);
    let count2 = parallel_count(2, total2, jobs);
    let count3 = parallel_count(3, total3, jobs);
    let frac = Ratio::new(count2 * count3, total2 * total3);
    DensityResult {
        count2,
        total2,
        count3,
        total3,
        numerator: *frac.numer(),
        denominator: *frac.denom(),
    }
}
