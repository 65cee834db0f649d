use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use skein_core::gauss;
use skein_core::handlebody::BasisTriple;
use skein_core::invariants::invariant_sum;
use skein_core::reduction::{reduce, relation_consistency_for};
use skein_core::relations::{relation_vector, verify_case_determinant_with, ClosedForms, RelationId};
use skein_core::tloracle::verify_against_oracle;
use skein_core::SkeinError;

mod exit {
    pub const VERIFY_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const INVALID_TRIPLE: u8 = 3;
    pub const POLE: u8 = 4;
}

#[derive(Parser)]
#[command(name = "skein", version, about = "Skein module computations for the quaternionic manifold")]
struct Cli {
    /// Working precision in bits for floating-point evaluation.
    #[arg(long, global = true, env = "SKEIN_PRECISION_BITS", default_value_t = gauss::DEFAULT_PRECISION)]
    precision: usize,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// TOML file with a `[limits]` section.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, hide = true)]
    inject_fault: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Forms {
    Published,
    Corrected,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanFormat {
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Express the basis triple (A, B, C) in the five generators.
    #[command(allow_negative_numbers = true)]
    Reduce { a: i64, b: i64, c: i64 },
    /// Dump a handle-slide relation vector.
    Relation {
        slide: u8,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        beta: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        gamma: Option<i64>,
    },
    /// Compare case determinants with their closed forms.
    VerifyCases {
        #[arg(long, default_value_t = 6)]
        max: u32,
        #[arg(long, value_enum, default_value_t = Forms::Published)]
        forms: Forms,
    },
    /// Compare recoupling closed forms with diagrammatic evaluation.
    VerifyOracle {
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Check that every relation reduces to zero.
    VerifyRelations {
        #[arg(long, default_value_t = 3)]
        max: u32,
        /// Check only this many relations, drawn with `--seed`.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Evaluate I_r(M, (0,0,C)) exactly.
    Invariant {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 0)]
        skein: u32,
    },
    /// Sign scan of (1 - A_r^4) I_r(M) over odd r.
    Scan {
        #[arg(long, default_value_t = 17)]
        rmin: u64,
        #[arg(long, default_value_t = 301)]
        rmax: u64,
        #[arg(long, value_enum, default_value_t = ScanFormat::Csv)]
        out: ScanFormat,
        #[arg(long, default_value_t = gauss::DEFAULT_THRESHOLD)]
        threshold: f64,
    },
    /// The incomplete Gauss sum g_N(m).
    Gauss {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// Residuals of the van Wamelen identity for odd r up to RMAX.
    Vanwamelen {
        #[arg(long, default_value_t = 301)]
        rmax: u64,
        #[arg(long, default_value_t = 1e-25)]
        tol: f64,
    },
    /// Lehmer's disk containment for each N.
    Lehmer {
        #[arg(long = "Ns", alias = "ns", num_args = 1.., default_values_t = [100u64, 144, 256, 1024])]
        ns: Vec<u64>,
    },
}

#[derive(Deserialize, Default)]
struct ConfigFile {
    #[serde(default)]
    limits: Limits,
}

#[derive(Deserialize)]
#[serde(default)]
struct Limits {
    oracle_cap: u32,
    n_max: u64,
    max_label: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            oracle_cap: 8,
            n_max: 1 << 16,
            max_label: 24,
        }
    }
}

enum Failure {
    Core(SkeinError),
    Usage(String),
}

impl From<SkeinError> for Failure {
    fn from(e: SkeinError) -> Self {
        Self::Core(e)
    }
}

struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn json(v: Value, ok: bool) -> Self {
        Self {
            text: format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable")),
            ok,
        }
    }
}

fn load_limits(path: &Option<PathBuf>) -> Result<Limits, Failure> {
    let Some(path) = path else {
        return Ok(Limits::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let cfg: ConfigFile = toml::from_str(&text).map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))?;
    Ok(cfg.limits)
}

fn bounded(name: &str, v: u64, limit: u64) -> Result<(), Failure> {
    if v > limit {
        return Err(Failure::Usage(format!("{name} = {v} exceeds the configured limit {limit}")));
    }
    Ok(())
}

fn precision_ok(p: usize) -> Result<(), Failure> {
    if !(64..=4096).contains(&p) {
        return Err(Failure::Usage(format!("precision {p} must lie in [64, 4096] bits")));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let limits = load_limits(&cli.config)?;
    match &cli.command {
        Command::Reduce { a, b, c } => {
            let t = BasisTriple::new(*a, *b, *c)?;
            bounded("label", t.a.max(t.c) as u64, limits.max_label as u64)?;
            Ok(Output::json(reduce(t)?.to_json(), true))
        }
        Command::Relation { slide, alpha, beta, gamma } => {
            let id = RelationId::new(*slide, *alpha, *beta, *gamma)?;
            for v in [alpha, beta, gamma].into_iter().flatten() {
                bounded("parameter", v.unsigned_abs(), limits.max_label as u64)?;
            }
            Ok(Output::json(relation_vector(id)?.to_json(), true))
        }
        Command::VerifyCases { max, forms } => {
            bounded("max", *max as u64, limits.max_label as u64)?;
            let forms = match forms {
                Forms::Published => ClosedForms::Published,
                Forms::Corrected => ClosedForms::Corrected,
            };
            let mut cases = Vec::new();
            let mut ok = true;
            for case_id in 1..=5u8 {
                let report = verify_case_determinant_with(case_id, *max, forms)?;
                let matched = report.checks.iter().filter(|c| c.matches()).count();
                ok &= report.all_match() && report.all_units();
                let first = report.first_mismatch().map(|c| {
                    json!({
                        "target": c.target.to_string(),
                        "computed": c.computed.to_string(),
                        "expected": c.expected.to_string(),
                    })
                });
                cases.push(json!({
                    "case": case_id,
                    "checked": report.checks.len(),
                    "matched": matched,
                    "all_units": report.all_units(),
                    "first_mismatch": first,
                }));
            }
            let forms = match forms {
                ClosedForms::Published => "published",
                ClosedForms::Corrected => "corrected",
            };
            Ok(Output::json(json!({"forms": forms, "max": max, "passed": ok, "cases": cases}), ok))
        }
        Command::VerifyOracle { cap } => {
            let cap = cap.unwrap_or(limits.oracle_cap);
            bounded("cap", cap as u64, limits.oracle_cap as u64)?;
            let report = verify_against_oracle(cap)?;
            Ok(Output::json(
                json!({"cap": cap, "checked": report.checked, "mismatches": report.mismatches, "passed": report.passed()}),
                report.passed(),
            ))
        }
        Command::VerifyRelations { max, sample } => {
            bounded("max", *max as u64, limits.max_label as u64)?;
            let mut ids = RelationId::grid(*max);
            if let Some(k) = sample {
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                ids.shuffle(&mut rng);
                ids.truncate(*k);
                ids.sort();
            }
            let report = relation_consistency_for(&ids)?;
            let failures: Vec<String> = report.failures.iter().map(|(id, _)| id.to_string()).collect();
            Ok(Output::json(
                json!({"max": max, "seed": cli.seed, "checked": report.checked, "failures": failures, "passed": report.passed()}),
                report.passed(),
            ))
        }
        Command::Invariant { r, skein } => {
            precision_ok(cli.precision)?;
            let v = invariant_sum(*r, *skein)?;
            let z = v.to_complex(cli.precision);
            let (re, im) = z.to_f64();
            let coeffs: Vec<String> = v.coeffs().iter().map(|c| c.to_string()).collect();
            Ok(Output::json(
                json!({
                    "r": r,
                    "skein": [0, 0, skein],
                    "coeffs": coeffs,
                    "den": v.denominator().to_string(),
                    "re": re,
                    "im": im,
                }),
                true,
            ))
        }
        Command::Scan { rmin, rmax, out, threshold } => {
            precision_ok(cli.precision)?;
            let rows = gauss::sign_scan(*rmin, *rmax, cli.precision, *threshold)?;
            for row in rows.iter().filter(|r| r.flagged()) {
                eprintln!("r = {}: |Im| below threshold {threshold:e}", row.r);
            }
            if let Some(t) = gauss::empirical_threshold(&rows) {
                eprintln!("mod-16 sign pattern holds for r >= {t}");
            }
            let text = match out {
                ScanFormat::Csv => gauss::scan_csv(&rows),
                ScanFormat::Svg => gauss::scan_svg(&rows),
            };
            Ok(Output { text, ok: true })
        }
        Command::Gauss { n, m } => {
            precision_ok(cli.precision)?;
            bounded("N", *n, limits.n_max)?;
            let (re, im) = gauss::gauss_sum(*n, *m, cli.precision)?.to_f64();
            Ok(Output::json(json!({"N": n, "m": m, "re": re, "im": im}), true))
        }
        Command::Vanwamelen { rmax, tol } => {
            precision_ok(cli.precision)?;
            bounded("16 rmax", 16 * rmax, limits.n_max)?;
            let mut rows = Vec::new();
            let mut ok = true;
            for r in (3..=*rmax).step_by(2) {
                let res = gauss::van_wamelen_residual(r, cli.precision)?;
                ok &= res < *tol;
                rows.push(json!({"r": r, "residual": res}));
            }
            Ok(Output::json(json!({"tol": tol, "passed": ok, "rows": rows}), ok))
        }
        Command::Lehmer { ns } => {
            precision_ok(cli.precision)?;
            for n in ns {
                bounded("N", *n, limits.n_max)?;
            }
            let rows = gauss::lehmer_scan(ns, cli.precision)?;
            let ok = rows.iter().all(|r| r.violations.is_empty());
            let (cx, cy) = gauss::lehmer_center();
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "N": r.n,
                        "m_min": r.m_range.0,
                        "m_max": r.m_range.1,
                        "radius": r.radius,
                        "max_distance": r.max_distance,
                        "violations": r.violations,
                    })
                })
                .collect();
            Ok(Output::json(json!({"center": [cx, cy], "passed": ok, "rows": rows}), ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    if cli.inject_fault {
        skein_core::fault::set_enabled(true);
    }
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(exit::VERIFY_FAILED)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(exit::USAGE)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            let code = match e {
                SkeinError::InvalidTriple(..) | SkeinError::CaseRange(..) => exit::INVALID_TRIPLE,
                SkeinError::Pole(_) | SkeinError::Singular(_) | SkeinError::DivisionByZero => exit::POLE,
                _ => exit::USAGE,
            };
            ExitCode::from(code)
        }
    }
}
