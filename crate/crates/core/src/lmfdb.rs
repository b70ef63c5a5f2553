//! Ingestion of genus-2 curve records in the LMFDB export shape, a
//! JSON-lines result cache and aggregate reporting.
//!
//! Input is one JSON object per line:
//! `{"label": .., "eqn": [[f0, ..], [h0, ..]], "geom_end_alg": "Q", "bad_primes": [..]?,
//!   "euler_factors": ..?}`. `eqn` may also be a string holding that JSON
//! array. `geom_end_alg` is the database string (`"Q"` means the geometric
//! endomorphism ring is Z) or a boolean. `euler_factors` holds L-polynomial
//! coefficients `1 - a1 T + ..` either as a list aligned with the primes
//! 2, 3, 5, .. or as an object keyed by prime.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::checker::{check_modularity_hypotheses, CheckOptions, CheckReport, Verdict, SCHEMA_VERSION};
use crate::curve::{frobenius_charpoly, reduce_mod, FrobeniusRecord, GenusTwoModel};
use crate::error::{Error, Result};
use crate::ffpoly::{primes, IntPoly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LmfdbCurveRecord {
    pub label: String,
    pub model: GenusTwoModel,
    pub geom_end_alg_is_z: bool,
    pub bad_primes: Option<Vec<u32>>,
    /// Frobenius characteristic polynomials keyed by prime.
    pub charpolys: BTreeMap<u32, IntPoly>,
}

impl LmfdbCurveRecord {
    pub fn check_options(&self, prime_bound: u32) -> CheckOptions {
        CheckOptions {
            prime_bound,
            bad_primes: self.bad_primes.as_ref().map(|b| b.iter().copied().collect()),
            known_charpolys: self.charpolys.clone(),
            ..CheckOptions::default()
        }
    }
}

/// `T^4 L(1/T)` for a degree-4 L-polynomial: ascending coefficients
/// `[1, c1, c2, c3, c4]` become the monic quartic `[c4, c3, c2, c1, 1]`.
/// Shorter factors (bad reduction) yield `None`.
pub fn euler_factor_to_charpoly(lpoly: &[i64]) -> Option<IntPoly> {
    if lpoly.len() != 5 || lpoly[0] != 1 || lpoly[4] == 0 {
        return None;
    }
    Some(IntPoly::new(lpoly.iter().rev().copied().collect()))
}

fn parse_int_list(v: &Value, what: &str) -> Result<Vec<i64>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array")))?
        .iter()
        .map(|c| {
            c.as_i64()
                .ok_or_else(|| Error::Parse(format!("{what} has a non-integer entry {c}")))
        })
        .collect()
}

/// Parses one input line.
pub fn parse_record(line: &str) -> Result<LmfdbCurveRecord> {
    let v: Value = serde_json::from_str(line)?;
    let label = v["label"]
        .as_str()
        .filter(|s| !s.is_empty())
        .ok_or_else(|| Error::Parse("missing or empty label".into()))?
        .to_string();
    let eqn = match &v["eqn"] {
        Value::String(s) => serde_json::from_str(s)?,
        Value::Null => return Err(Error::Parse(format!("{label}: missing eqn"))),
        other => other.clone(),
    };
    let parts = eqn
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Parse(format!("{label}: eqn must be [[f],[h]]")))?;
    let f = IntPoly::new(parse_int_list(&parts[0], "eqn f")?);
    let h = IntPoly::new(parse_int_list(&parts[1], "eqn h")?);
    let model = GenusTwoModel::new(f, h)?;
    let geom_end_alg_is_z = match &v["geom_end_alg"] {
        Value::String(s) => s == "Q",
        Value::Bool(b) => *b,
        Value::Null => return Err(Error::Parse(format!("{label}: missing geom_end_alg"))),
        other => return Err(Error::Parse(format!("{label}: bad geom_end_alg {other}"))),
    };
    let bad_primes = match &v["bad_primes"] {
        Value::Null => None,
        b => Some(
            parse_int_list(b, "bad_primes")?
                .into_iter()
                .map(|p| u32::try_from(p).map_err(|_| Error::Parse(format!("bad prime {p}"))))
                .collect::<Result<Vec<u32>>>()?,
        ),
    };
    let mut charpolys = BTreeMap::new();
    match &v["euler_factors"] {
        Value::Null => {}
        Value::Array(list) => {
            for (p, lp) in primes().zip(list) {
                if let Some(cp) = euler_factor_to_charpoly(&parse_int_list(lp, "euler factor")?) {
                    charpolys.insert(p, cp);
                }
            }
        }
        Value::Object(map) => {
            for (k, lp) in map {
                let p: u32 = k
                    .parse()
                    .map_err(|_| Error::Parse(format!("{label}: bad prime key {k:?}")))?;
                if let Some(cp) = euler_factor_to_charpoly(&parse_int_list(lp, "euler factor")?) {
                    charpolys.insert(p, cp);
                }
            }
        }
        other => return Err(Error::Parse(format!("{label}: bad euler_factors {other}"))),
    }
    Ok(LmfdbCurveRecord {
        label,
        model,
        geom_end_alg_is_z,
        bad_primes,
        charpolys,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ingested {
    pub records: Vec<LmfdbCurveRecord>,
    pub errors: Vec<IngestError>,
    /// SHA-256 of the input bytes, hex.
    pub snapshot: String,
}

/// Reads a JSON-lines file. Malformed lines and repeated labels go to the
/// error list.
pub fn ingest(path: &Path) -> Result<Ingested> {
    let bytes = std::fs::read(path)?;
    let snapshot = snapshot_hash(&bytes);
    let text = String::from_utf8_lossy(&bytes);
    let mut records = Vec::new();
    let mut errors = Vec::new();
    let mut labels = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match parse_record(line) {
            Ok(r) if !labels.insert(r.label.clone()) => errors.push(IngestError {
                line: i + 1,
                message: format!("duplicate label {}", r.label),
            }),
            Ok(r) => records.push(r),
            Err(e) => errors.push(IngestError {
                line: i + 1,
                message: e.to_string(),
            }),
        }
    }
    if records.is_empty() {
        return Err(Error::EmptyIngest);
    }
    Ok(Ingested {
        records,
        errors,
        snapshot,
    })
}

pub fn snapshot_hash(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// One cached pipeline result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema: u32,
    /// Canonical curve text `f=[..];h=[..]`.
    pub key: String,
    pub label: String,
    pub geom_end_alg_is_z: bool,
    pub prime_bound: u32,
    pub snapshot: String,
    pub report: CheckReport,
    pub frobenius: Vec<FrobeniusRecord>,
}

/// Runs the pipeline on one record.
pub fn evaluate(record: &LmfdbCurveRecord, prime_bound: u32, snapshot: &str) -> Result<CacheEntry> {
    let report = check_modularity_hypotheses(&record.model, &record.check_options(prime_bound))?;
    let frobenius = [2, 3]
        .into_iter()
        .map(|p| frobenius_charpoly(&reduce_mod(&record.model, p)))
        .collect();
    Ok(CacheEntry {
        schema: SCHEMA_VERSION,
        key: record.model.to_string(),
        label: record.label.clone(),
        geom_end_alg_is_z: record.geom_end_alg_is_z,
        prime_bound,
        snapshot: snapshot.to_string(),
        report,
        frobenius,
    })
}

/// Append-only JSON-lines cache.
#[derive(Debug, Default)]
pub struct Cache {
    entries: Vec<CacheEntry>,
    index: HashMap<(String, u32), usize>,
    /// Lines skipped on load: unparsable or of another schema version.
    pub skipped: usize,
}

impl Cache {
    /// Loads a cache file; a missing file is an empty cache. An unparsable
    /// final line is treated as an interrupted write and dropped.
    pub fn load(path: &Path) -> Result<Cache> {
        let mut cache = Cache::default();
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e.into()),
        };
        for line in BufReader::new(file).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<CacheEntry>(&line) {
                Ok(e) if e.schema == SCHEMA_VERSION => cache.insert(e),
                _ => cache.skipped += 1,
            }
        }
        Ok(cache)
    }

    fn insert(&mut self, e: CacheEntry) {
        let k = (e.key.clone(), e.prime_bound);
        match self.index.get(&k) {
            Some(&i) => self.entries[i] = e,
            None => {
                self.index.insert(k, self.entries.len());
                self.entries.push(e);
            }
        }
    }

    /// Hit only on the same curve, prime bound and schema version.
    pub fn get(&self, key: &str, prime_bound: u32) -> Option<&CacheEntry> {
        self.index
            .get(&(key.to_string(), prime_bound))
            .map(|&i| &self.entries[i])
    }

    pub fn entries(&self) -> &[CacheEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Appends entries, one line each, flushing after every line.
pub fn append_entries(path: &Path, entries: &[CacheEntry]) -> Result<()> {
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    // a previous interrupted write may have left no trailing newline
    if file.metadata()?.len() > 0 {
        let content = std::fs::read(path)?;
        if content.last() != Some(&b'\n') {
            file.write_all(b"\n")?;
        }
    }
    for e in entries {
        let mut line = serde_json::to_string(e)?;
        line.push('\n');
        file.write_all(line.as_bytes())?;
        file.flush()?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheUpdate {
    pub computed: usize,
    pub reused: usize,
}

/// Evaluates records with `jobs` workers, in label order, writing new
/// results to the cache file.
pub fn run_pipeline(
    records: &[LmfdbCurveRecord],
    prime_bound: u32,
    snapshot: &str,
    cache_path: Option<&Path>,
    jobs: usize,
) -> Result<(Vec<CacheEntry>, CacheUpdate)> {
    let cache = match cache_path {
        Some(p) => Cache::load(p)?,
        None => Cache::default(),
    };
    let mut sorted: Vec<&LmfdbCurveRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.label.cmp(&b.label));
    let todo: Vec<&LmfdbCurveRecord> = sorted
        .iter()
        .copied()
        .filter(|r| cache.get(&r.model.to_string(), prime_bound).is_none())
        .collect();
    let jobs = jobs.max(1);
    let chunk = todo.len().div_ceil(jobs).max(1);
    let fresh: Vec<CacheEntry> = std::thread::scope(|s| {
        let handles: Vec<_> = todo
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .map(|r| evaluate(r, prime_bound, snapshot))
                        .collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker"))
            .collect::<Result<Vec<_>>>()
    })?
    .into_iter()
    .flatten()
    .collect();
    if let Some(p) = cache_path {
        append_entries(p, &fresh)?;
    }
    let mut by_key: HashMap<String, CacheEntry> =
        fresh.iter().map(|e| (e.key.clone(), e.clone())).collect();
    let mut out = Vec::with_capacity(sorted.len());
    for r in &sorted {
        let key = r.model.to_string();
        let mut e = match by_key.remove(&key) {
            Some(e) => e,
            None => cache
                .get(&key, prime_bound)
                .cloned()
                .or_else(|| out.iter().find(|x: &&CacheEntry| x.key == key).cloned())
                .expect("entry computed or cached"),
        };
        e.label = r.label.clone();
        e.geom_end_alg_is_z = r.geom_end_alg_is_z;
        out.push(e);
    }
    let update = CacheUpdate {
        computed: fresh.len(),
        reused: sorted.len() - fresh.len(),
    };
    Ok((out, update))
}

/// Verdict counts over curves whose geometric endomorphism ring is Z.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub schema: u32,
    pub snapshots: Vec<String>,
    pub records: usize,
    pub end_z: usize,
    pub overall: BTreeMap<Verdict, usize>,
    pub conditions: BTreeMap<String, BTreeMap<Verdict, usize>>,
}

impl AggregateReport {
    pub fn applicable(&self) -> usize {
        self.overall.get(&Verdict::Pass).copied().unwrap_or(0)
    }
}

pub fn report(entries: &[CacheEntry]) -> AggregateReport {
    let snapshots: BTreeSet<String> = entries.iter().map(|e| e.snapshot.clone()).collect();
    let mut overall = BTreeMap::new();
    let mut conditions: BTreeMap<String, BTreeMap<Verdict, usize>> = BTreeMap::new();
    let mut end_z = 0;
    for e in entries.iter().filter(|e| e.geom_end_alg_is_z) {
        end_z += 1;
        *overall.entry(e.report.overall).or_insert(0) += 1;
        for c in &e.report.conditions {
            *conditions
                .entry(c.name.clone())
                .or_default()
                .entry(c.verdict)
                .or_insert(0) += 1;
        }
    }
    AggregateReport {
        schema: SCHEMA_VERSION,
        snapshots: snapshots.into_iter().collect(),
        records: entries.len(),
        end_z,
        overall,
        conditions,
    }
}

/// Path of the bundled synthetic fixture, relative to the crate root.
pub const FIXTURE_PATH: &str = "fixtures/synthetic_genus2.jsonl";
