use std::path::PathBuf;
use std::process::ExitCode;

use asmt_core::checker::{
    check_mod2_modularity_hypotheses, check_modularity_hypotheses, compare_mod3_frobenius,
    density_remark, CheckOptions, CheckReport, SCHEMA_VERSION,
};
use asmt_core::curve::GenusTwoModel;
use asmt_core::lmfdb::{ingest, report, run_pipeline, Cache};
use asmt_core::weyl::{
    figure1_csv, figure1_data, kappa_w, kostant_representatives, slope_bound, Character,
    WeylElement,
};
use asmt_core::{Error, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

// write errors such as a closed pipe end output quietly
macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout().lock(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "asmt", version, about = "Genus-2 modularity hypothesis checks and GSp4 weight data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum FigureFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the mod-3 modularity hypotheses for one curve.
    Check {
        /// Curve as `f=[c0,..,c6];h=[d0,..,d3]`.
        #[arg(long)]
        curve: GenusTwoModel,
        #[arg(long, default_value_t = 200)]
        prime_bound: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check the mod-2 route hypotheses (rational Weierstrass point,
    /// ordinary at 2, S5 image, complex conjugation class).
    Lemma23 {
        #[arg(long)]
        curve: GenusTwoModel,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exact local density over all models mod 2 and mod 3.
    Density {
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Weight computations for GSp4.
    Weyl {
        #[command(subcommand)]
        command: WeylCommand,
    },
    /// Chamber picture data with κ_w markers.
    Figure1 {
        /// `k1,k2` (similitude coordinate -(k1+k2)) or `k1,k2,w`.
        #[arg(long, default_value = "1,1", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = FigureFormat::Csv)]
        format: FigureFormat,
    },
    /// Curve-database ingestion and reporting.
    Lmfdb {
        #[command(subcommand)]
        command: LmfdbCommand,
    },
    /// Compare Frobenius characteristic polynomials mod 3 of two curves.
    Compare {
        #[arg(long)]
        a: GenusTwoModel,
        #[arg(long)]
        b: GenusTwoModel,
        #[arg(long, default_value_t = 100)]
        bound: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum WeylCommand {
    /// κ_w for each Kostant representative.
    Kappa {
        #[arg(long, allow_hyphen_values = true)]
        lambda: Character,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Lower bound `-ν + w^{-1} w_{0,M} ρ + ρ` on slopes.
    Slopes {
        #[arg(long, allow_hyphen_values = true)]
        nu: Character,
        /// Word such as `s_b s_a` or `ba`; `id` for the identity.
        #[arg(long)]
        w: WeylElement,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum LmfdbCommand {
    /// Parse a JSON-lines export, run the checks and append to the cache.
    Ingest {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, env = "ASMT_CACHE")]
        cache: PathBuf,
        #[arg(long, default_value_t = 200)]
        prime_bound: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Download the export from this URL to `--input` first.
        #[arg(long)]
        fetch: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Aggregate verdict counts from the cache.
    Report {
        #[arg(long, env = "ASMT_CACHE")]
        cache: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    outln!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn print_report(r: &CheckReport, format: Format) -> Result<()> {
    match format {
        Format::Json => print_json(r),
        Format::Text => {
            outln!("curve: {}", r.curve);
            for c in &r.conditions {
                outln!("  {:<44} {}", c.name, c.verdict);
            }
            outln!("overall: {}", r.overall);
            Ok(())
        }
    }
}

fn parse_figure_lambda(s: &str) -> Result<Character> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    match parts[..] {
        [k1, k2] => Character::new(k1, k2, -(k1 + k2)),
        [k1, k2, w] => Character::new(k1, k2, w),
        _ => Err(Error::Parse(format!("expected k1,k2 or k1,k2,w; got {s:?}"))),
    }
}

#[cfg(feature = "fetch")]
fn fetch(url: &str, dest: &std::path::Path) -> Result<()> {
    let body = ureq::get(url)
        .call()
        .and_then(|mut r| r.body_mut().read_to_string())
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    std::fs::write(dest, body)?;
    Ok(())
}

#[cfg(not(feature = "fetch"))]
fn fetch(_url: &str, _dest: &std::path::Path) -> Result<()> {
    Err(Error::Domain("built without the `fetch` feature".into()))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Check {
            curve,
            prime_bound,
            format,
        } => {
            let opts = CheckOptions {
                prime_bound,
                ..CheckOptions::default()
            };
            print_report(&check_modularity_hypotheses(&curve, &opts)?, format)
        }
        Command::Lemma23 { curve, format } => print_report(
            &check_mod2_modularity_hypotheses(&curve, &CheckOptions::default())?,
            format,
        ),
        Command::Density { jobs, format } => {
            let r = density_remark(jobs);
            let detail = json!({
                "schema": SCHEMA_VERSION,
                "fraction": r.fraction().to_string(),
                "count2": r.count2,
                "total2": r.total2,
                "count3": r.count3,
                "total3": r.total3,
                "decimal": r.numerator as f64 / r.denominator as f64,
            });
            if format == Format::Text {
                outln!("{}", r.fraction());
                outln!("{detail}");
            } else {
                print_json(&detail)?;
            }
            Ok(())
        }
        Command::Weyl { command } => match command {
            WeylCommand::Kappa { lambda, format } => {
                let rows: Vec<_> = kostant_representatives()
                    .iter()
                    .enumerate()
                    .map(|(i, w)| (format!("^{i}w"), w.to_string(), kappa_w(lambda, w)))
                    .collect();
                match format {
                    Format::Text => {
                        for (name, word, k) in rows {
                            outln!("{name} = {word}: {k}");
                        }
                        Ok(())
                    }
                    Format::Json => print_json(&json!({
                        "schema": SCHEMA_VERSION,
                        "lambda": lambda,
                        "kappa": rows
                            .iter()
                            .map(|(n, w, k)| json!({"rep": n, "word": w, "kappa": k}))
                            .collect::<Vec<_>>(),
                    })),
                }
            }
            WeylCommand::Slopes { nu, w, format } => {
                let b = slope_bound(nu, &w);
                match format {
                    Format::Text => {
                        outln!("{b}");
                        Ok(())
                    }
                    Format::Json => print_json(&json!({
                        "schema": SCHEMA_VERSION,
                        "nu": nu,
                        "w": w.to_string(),
                        "bound": b,
                    })),
                }
            }
        },
        Command::Figure1 { lambda, format } => {
            let data = figure1_data(parse_figure_lambda(&lambda)?);
            match format {
                FigureFormat::Csv => {
                    out!("{}", figure1_csv(&data));
                    Ok(())
                }
                FigureFormat::Json => {
                    print_json(&json!({"schema": SCHEMA_VERSION, "records": data}))
                }
            }
        }
        Command::Lmfdb { command } => match command {
            LmfdbCommand::Ingest {
                input,
                cache,
                prime_bound,
                jobs,
                fetch: url,
                format,
            } => {
                if let Some(url) = url {
                    fetch(&url, &input)?;
                }
                let ing = ingest(&input)?;
                let (_, update) =
                    run_pipeline(&ing.records, prime_bound, &ing.snapshot, Some(&cache), jobs)?;
                let summary = json!({
                    "schema": SCHEMA_VERSION,
                    "snapshot": ing.snapshot,
                    "records": ing.records.len(),
                    "errors": ing.errors,
                    "computed": update.computed,
                    "reused": update.reused,
                });
                match format {
                    Format::Json => print_json(&summary),
                    Format::Text => {
                        outln!(
                            "{} records ({} errors), {} computed, {} from cache",
                            ing.records.len(),
                            ing.errors.len(),
                            update.computed,
                            update.reused
                        );
                        Ok(())
                    }
                }
            }
            LmfdbCommand::Report { cache, format } => {
                let c = Cache::load(&cache)?;
                let agg = report(c.entries());
                match format {
                    Format::Json => print_json(&agg),
                    Format::Text => {
                        outln!("records: {}", agg.records);
                        outln!("End = Z: {}", agg.end_z);
                        outln!("all hypotheses pass: {}", agg.applicable());
                        for (name, counts) in &agg.conditions {
                            let parts: Vec<String> =
                                counts.iter().map(|(v, n)| format!("{v} {n}")).collect();
                            outln!("  {name}: {}", parts.join(", "));
                        }
                        Ok(())
                    }
                }
            }
        },
        Command::Compare {
            a,
            b,
            bound,
            format,
        } => {
            let r = compare_mod3_frobenius(&a, &b, bound)?;
            match format {
                Format::Json => print_json(&r),
                Format::Text => {
                    match &r.first_disagreement {
                        None => outln!(
                            "agree at {} primes up to {}",
                            r.primes_compared.len(),
                            r.bound
                        ),
                        Some(d) => outln!(
                            "disagree at {}: {} vs {}",
                            d.ell, d.a_charpoly_mod3, d.b_charpoly_mod3
                        ),
                    }
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", json!({"error": e.kind(), "message": e.to_string()}));
            ExitCode::from(1)
        }
    }
}
