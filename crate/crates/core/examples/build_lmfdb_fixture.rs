//! Regenerates the synthetic 100-curve fixture and its frozen expectations.
//!
//! Records follow the database export shape but the curves are synthetic:
//! small random models plus a few hand-picked ones. Three records are
//! rescaled by `x ↦ x/3` so the model is singular at 3 while the curve is
//! not; they carry the Euler factor at 3 of the unscaled model and a
//! `bad_primes` list of the primes below 200 where the unscaled model is
//! singular. The geometric endomorphism labels are assigned, not computed.
//!
//! Usage: `cargo run --release --example build_lmfdb_fixture`

use std::collections::BTreeMap;
use std::path::Path;

use asmt_core::curve::{frobenius_charpoly, reduce_mod, GenusTwoModel};
use asmt_core::ffpoly::{primes, IntPoly};
use asmt_core::lmfdb::{ingest, report, run_pipeline, FIXTURE_PATH};
use asmt_core::mod2image::weierstrass_poly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

const PRIME_BOUND: u32 = 200;

fn random_model(rng: &mut ChaCha8Rng) -> GenusTwoModel {
    loop {
        let deg = if rng.random_bool(0.5) { 5 } else { 6 };
        let mut f: Vec<i64> = (0..=deg).map(|_| rng.random_range(-4..=4)).collect();
        if f[deg] == 0 {
            f[deg] = 1;
        }
        let h: Vec<i64> = match rng.random_range(0..4) {
            0 => vec![],
            1 => vec![1],
            2 => vec![0, 1],
            _ => (0..=rng.random_range(0..=3)).map(|_| rng.random_range(0..=1)).collect(),
        };
        let m = GenusTwoModel::from_coeffs(&f, &h).unwrap();
        if weierstrass_poly(&m).is_ok() {
            return m;
        }
    }
}

/// `Y^2 + 27 h(X/3) Y = 729 f(X/3)`.
fn rescale_by_three(m: &GenusTwoModel) -> GenusTwoModel {
    let f: Vec<i64> = (0..=6).map(|i| m.f().coeff(i) * 3i64.pow(6 - i as u32)).collect();
    let h: Vec<i64> = (0..=3).map(|i| m.h().coeff(i) * 3i64.pow(3 - i as u32)).collect();
    GenusTwoModel::from_coeffs(&f, &h).unwrap()
}

fn lpoly(cp: &IntPoly) -> Vec<i64> {
    cp.coeffs().iter().rev().copied().collect()
}

fn line(label: &str, m: &GenusTwoModel, end: &str) -> serde_json::Value {
    json!({
        "label": label,
        "eqn": [m.f().coeffs(), m.h().coeffs()],
        "geom_end_alg": end,
    })
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut lines = Vec::new();
    let fixed = [
        ("f=[0,0,0,0,0,1];h=[1]", "CM"),
        ("f=[1,0,0,0,0,1];h=[0]", "CM"),
        ("f=[1,-1,0,0,0,1];h=[0]", "Q"),
        ("f=[1,0,-1,0,0,1];h=[0]", "Q"),
        ("f=[0,1,0,0,0,0,1];h=[0,1]", "Q"),
    ];
    for (text, end) in fixed {
        let m: GenusTwoModel = text.parse().unwrap();
        lines.push(line(&format!("syn.{}", lines.len() + 1), &m, end));
    }
    let mut rescaled = 0;
    while rescaled < 3 {
        let m = random_model(&mut rng);
        let Some(cp3) = frobenius_charpoly(&reduce_mod(&m, 3)).charpoly else {
            continue;
        };
        let scaled = rescale_by_three(&m);
        let bad: Vec<u32> = primes()
            .take_while(|&p| p <= PRIME_BOUND)
            .filter(|&p| !frobenius_charpoly(&reduce_mod(&m, p)).good_reduction)
            .collect();
        let mut v = line(&format!("syn.{}", lines.len() + 1), &scaled, "Q");
        v["bad_primes"] = json!(bad);
        v["euler_factors"] = json!(BTreeMap::from([("3".to_string(), lpoly(&cp3))]));
        lines.push(v);
        rescaled += 1;
    }
    let ends = ["Q", "Q", "Q", "Q", "Q", "Q", "Q", "Q", "Q", "Q", "Q", "RM", "Q x Q"];
    while lines.len() < 100 {
        let m = random_model(&mut rng);
        let end = ends[rng.random_range(0..ends.len())];
        lines.push(line(&format!("syn.{}", lines.len() + 1), &m, end));
    }
    let body: String = lines.iter().map(|v| format!("{v}\n")).collect();
    std::fs::write(FIXTURE_PATH, &body).unwrap();

    let ing = ingest(Path::new(FIXTURE_PATH)).unwrap();
    assert!(ing.errors.is_empty(), "{:?}", ing.errors);
    let (entries, _) = run_pipeline(&ing.records, PRIME_BOUND, &ing.snapshot, None, 4).unwrap();
    let agg = report(&entries);
    let per_label: BTreeMap<String, String> = entries
        .iter()
        .map(|e| (e.label.clone(), e.report.overall.to_string()))
        .collect();
    let expected = json!({
        "snapshot": ing.snapshot,
        "prime_bound": PRIME_BOUND,
        "report": agg,
        "overall_by_label": per_label,
    });
    std::fs::write(
        "fixtures/synthetic_genus2_expected.json",
        serde_json::to_string_pretty(&expected).unwrap() + "\n",
    )
    .unwrap();
    eprintln!("{}", serde_json::to_string_pretty(&agg).unwrap());
}
