//! `realdet`: sample points on real determinantal hypersurfaces.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use realdet_core::io::{parse_pencil, pencil_to_json, report_to_json, sample_set_from_json};
use realdet_core::{
    b_bound, complexity_estimate, random_pencil, realdet, DegreeBounds, Error, LinearMatrix, SolveConfig,
};

/// Environment variable that overrides the retry cap of every solve.
const RETRIES_ENV: &str = "REALDET_MAX_RETRIES";

/// Largest sizes accepted by `bench`.
const BENCH_MAX_M: usize = 4;
const BENCH_MAX_N: usize = 10;

mod exit {
    pub const OK: u8 = 0;
    pub const VERIFY_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const PARSE: u8 = 3;
    pub const GENERICITY: u8 = 4;
    pub const RETRY_EXHAUSTED: u8 = 5;
    pub const IO: u8 = 6;
    pub const COMPUTATION: u8 = 7;
}

#[derive(Parser)]
#[command(name = "realdet", version, about = "Exact sample points on real determinantal hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Compute points on every connected component of det A(x) = 0.
    Solve {
        /// Pencil as JSON: {"m": .., "n": .., "A": [A0, ..., An]}.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Redraws allowed per level (overridden by REALDET_MAX_RETRIES).
        #[arg(long, default_value_t = 8)]
        retries: usize,
        /// Certified decimal digits of the printed approximations.
        #[arg(long, default_value_t = 10)]
        digits: u32,
        /// Random integers are drawn from [-B, B].
        #[arg(long, default_value_t = 1024)]
        coeff_bound: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the degree bounds Δ(m, n; t), b(m, n) and the complexity estimate.
    Bounds {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a random pencil with integer entries in [-B, B].
    Random {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        coeff_bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check that every parametrization lies on the hypersurface of a pencil.
    Verify {
        /// Pencil JSON.
        #[arg(long)]
        input: PathBuf,
        /// Sample set JSON or a solve report.
        #[arg(long)]
        samples: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Solve fresh random pencils over a range of sizes.
    Bench {
        #[arg(long, default_value_t = 2)]
        m_min: usize,
        #[arg(long, default_value_t = 2)]
        m_max: usize,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Entry bound of the random pencils.
        #[arg(long, default_value_t = 10)]
        coeff_bound: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: exit::USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) | Error::Json(_) => exit::PARSE,
            Error::Genericity(_) => exit::GENERICITY,
            Error::RetryExhausted { .. } => exit::RETRY_EXHAUSTED,
            _ => exit::COMPUTATION,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure { code: exit::IO, message: format!("cannot read {}: {e}", path.display()) })
}

fn load_pencil(path: &Path) -> Result<LinearMatrix, Failure> {
    let text = read(path)?;
    parse_pencil(&text).map_err(|e| Failure { code: exit::PARSE, message: format!("{}: {e}", path.display()) })
}

fn effective_retries(flag: usize) -> Result<usize, Failure> {
    match std::env::var(RETRIES_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(r) if r >= 1 => Ok(r),
            _ => Err(Failure::usage(format!("{RETRIES_ENV} must be a positive integer, found {v:?}"))),
        },
        Err(_) => Ok(flag),
    }
}

fn print_json(v: &Value) {
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn solve_text(report: &Value) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "m = {}, n = {}, seed = {}, digits = {}", report["m"], report["n"], report["seed"], report["digits"]);
    let _ = writeln!(s, "degree_sum = {}", report["degree_sum"]);
    let items = report["samples"]["items"].as_array().map_or(0, Vec::len);
    let verified = report["verified"].as_array().cloned().unwrap_or_default();
    for (k, ok) in verified.iter().enumerate() {
        let deg = report["samples"]["items"][k]["qlast"].as_array().map_or(0, |c| c.len().saturating_sub(1));
        let flag = if ok.as_bool() == Some(true) { "verified" } else { "NOT verified" };
        let _ = writeln!(s, "item {}: degree {deg}, {flag}", k + 1);
    }
    if items == 0 {
        let _ = writeln!(s, "no items");
    }
    let points = report["points"].as_array().cloned().unwrap_or_default();
    let _ = writeln!(s, "real points: {}", points.len());
    for (k, p) in points.iter().enumerate() {
        let _ = writeln!(s, "point {} (item {})", k + 1, p["source"].as_u64().map_or(0, |i| i + 1));
        let boxes = p["box"].as_array().cloned().unwrap_or_default();
        let approx = p["approx"].as_array().cloned().unwrap_or_default();
        for (i, (b, a)) in boxes.iter().zip(&approx).enumerate() {
            let _ = writeln!(
                s,
                "  x{} ≈ {}  in [{}, {}]",
                i + 1,
                a.as_str().unwrap_or(""),
                b[0].as_str().unwrap_or(""),
                b[1].as_str().unwrap_or("")
            );
        }
    }
    s
}

fn cmd_solve(
    input: &Path,
    seed: u64,
    retries: usize,
    digits: u32,
    coeff_bound: i64,
    format: Format,
) -> Result<u8, Failure> {
    let a = load_pencil(input)?;
    let cfg = SolveConfig { seed, coeff_bound, max_retries: effective_retries(retries)?, digits };
    cfg.validate().map_err(|e| Failure::usage(e.to_string()))?;
    let report = realdet(&a, &cfg)?;
    let v = report_to_json(&a, &report, seed, digits)?;
    match format {
        Format::Json => print_json(&v),
        Format::Text => print!("{}", solve_text(&v)),
    }
    Ok(exit::OK)
}

fn cmd_bounds(m: usize, n: usize, format: Format) -> Result<u8, Failure> {
    let d = DegreeBounds::new(m, n).map_err(|e| Failure::usage(e.to_string()))?;
    let c = complexity_estimate(m, n);
    match format {
        Format::Json => print_json(&json!({
            "m": m,
            "n": n,
            "delta": d.table.iter().map(|(t, v)| json!({"t": t, "delta": v.to_string()})).collect::<Vec<_>>(),
            "b": d.b.to_string(),
            "complexity": c.to_string(),
        })),
        Format::Text => {
            println!("m = {m}, n = {n}");
            println!("{:>4}  {:>12}", "t", "delta");
            for (t, v) in &d.table {
                println!("{t:>4}  {v:>12}");
            }
            println!("b(m, n) = {}", d.b);
            println!("C(m, n) = {c}");
        }
    }
    Ok(exit::OK)
}

fn cmd_random(m: usize, n: usize, coeff_bound: i64, seed: u64) -> Result<u8, Failure> {
    if m == 0 || n == 0 {
        return Err(Failure::usage("m and n must be positive"));
    }
    if coeff_bound < 0 {
        return Err(Failure::usage("coeff-bound must be non-negative"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_pencil(&mut rng, m, n, coeff_bound);
    println!("{}", serde_json::to_string(&pencil_to_json(&a)).expect("serializable"));
    Ok(exit::OK)
}

fn cmd_verify(input: &Path, samples: &Path, format: Format) -> Result<u8, Failure> {
    let a = load_pencil(input)?;
    let text = read(samples)?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| Failure { code: exit::PARSE, message: format!("{}: {e}", samples.display()) })?;
    let set = sample_set_from_json(&v)
        .map_err(|e| Failure { code: exit::PARSE, message: format!("{}: {e}", samples.display()) })?;
    if set.n() != a.n() {
        return Err(Failure {
            code: exit::PARSE,
            message: format!("samples live in dimension {}, the pencil in {}", set.n(), a.n()),
        });
    }
    let flags = set.verify_on_determinant(&a)?;
    let all = flags.iter().all(|&ok| ok);
    match format {
        Format::Json => print_json(&json!({ "items": flags, "all_pass": all })),
        Format::Text => {
            for (k, ok) in flags.iter().enumerate() {
                println!("item {}: {}", k + 1, if *ok { "pass" } else { "fail" });
            }
            println!("{} of {} items pass", flags.iter().filter(|&&ok| ok).count(), flags.len());
        }
    }
    Ok(if all { exit::OK } else { exit::VERIFY_FAILED })
}

/// Seed of the bench row `(m, n)`.
fn row_seed(seed: u64, m: usize, n: usize) -> u64 {
    seed ^ ((m as u64) << 32 | n as u64).wrapping_mul(0xD6E8_FEB8_6659_FD93)
}

fn cmd_bench(
    m_min: usize,
    m_max: usize,
    n_min: usize,
    n_max: usize,
    seed: u64,
    coeff_bound: i64,
    format: Format,
) -> Result<u8, Failure> {
    if m_min == 0 || n_min == 0 || m_min > m_max || n_min > n_max {
        return Err(Failure::usage("ranges must be non-empty and start at 1 or more"));
    }
    if m_max > BENCH_MAX_M || n_max > BENCH_MAX_N {
        return Err(Failure::usage(format!("bench is limited to m ≤ {BENCH_MAX_M}, n ≤ {BENCH_MAX_N}")));
    }
    let mut rows = Vec::new();
    if format == Format::Text {
        println!("{:>3} {:>3} {:>11} {:>8} {:>12}  status", "m", "n", "degree_sum", "b(m,n)", "seconds");
    }
    for m in m_min..=m_max {
        for n in n_min..=n_max {
            let s = row_seed(seed, m, n);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let a = random_pencil(&mut rng, m, n, coeff_bound);
            let b = b_bound(m, n).map_err(|e| Failure::usage(e.to_string()))?;
            let start = Instant::now();
            let result = realdet(&a, &SolveConfig { seed: s, max_retries: effective_retries(8)?, ..SolveConfig::default() });
            let secs = start.elapsed().as_secs_f64();
            let (deg, status) = match result {
                Ok(r) => (Some(r.degree_sum), "ok".to_string()),
                Err(e) => (None, e.to_string()),
            };
            if format == Format::Text {
                let d = deg.map_or("-".to_string(), |d| d.to_string());
                println!("{m:>3} {n:>3} {d:>11} {b:>8} {secs:>12.3}  {status}");
            }
            rows.push(json!({"m": m, "n": n, "seed": s, "degree_sum": deg, "b": b.to_string(), "seconds": secs, "status": status}));
        }
    }
    if format == Format::Json {
        print_json(&Value::Array(rows));
    }
    Ok(exit::OK)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Solve { input, seed, retries, digits, coeff_bound, format } => {
            cmd_solve(&input, seed, retries, digits, coeff_bound, format)
        }
        Command::Bounds { m, n, format } => cmd_bounds(m, n, format),
        Command::Random { m, n, coeff_bound, seed } => cmd_random(m, n, coeff_bound, seed),
        Command::Verify { input, samples, format } => cmd_verify(&input, &samples, format),
        Command::Bench { m_min, m_max, n_min, n_max, seed, coeff_bound, format } => {
            cmd_bench(m_min, m_max, n_min, n_max, seed, coeff_bound, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
