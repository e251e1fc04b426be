//! `updown` — Euler up/down numbers from the command line.
//!
//! Subcommands print either CSV (default for plain sequences and tables)
//! or a JSON envelope (default for reports). Exit codes are part of the
//! interface:
//!
//! * 0 — success (for reports: everything confirmed and matching),
//! * 1 — a confirmed measurement contradicts an expectation or prediction,
//! * 2 — evidence was insufficient (window too small, table not stable),
//! * 3 — usage or input error.

mod output;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use updown_core::arnold::valuation_rows;
use updown_core::conjectures::SuiteScope;
use updown_core::{
    arnold_sequence, euler_sequence, f_transform, profile_euler, triangle_rows, verify_suite,
    ExactRing, FiniteSeq, ModRing, ModRing64, Nat,
};

#[derive(Parser)]
#[command(
    name = "updown",
    version,
    about = "Euler up/down numbers, their residues, and periodicity diagnostics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format; sequences default to csv, reports to json.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Shorthand for --format json.
    #[arg(long, conflicts_with = "format")]
    json: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn resolve(&self, default: Format) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format.unwrap_or(default)
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print E_0, E_1, ... exactly or reduced mod q.
    Euler {
        /// Number of terms, starting at E_0.
        #[arg(long)]
        count: usize,
        /// Reduce every term modulo this value.
        #[arg(long = "mod", short = 'q', value_name = "Q")]
        modulus: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print triangle rows e_{n,1}..e_{n,n} for n = 1..=rows.
    Entringer {
        #[arg(long)]
        rows: usize,
        /// Reduce every entry modulo this value.
        #[arg(long = "mod", short = 'q', value_name = "Q")]
        modulus: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print 2-adic valuations of triangle entries; `cap` and above print
    /// as inf (entries are computed mod 2^cap).
    Valuations {
        #[arg(long)]
        rows: usize,
        #[arg(long, default_value_t = 32)]
        cap: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Measure the preperiod and period of E_n mod q over a window.
    Period {
        #[arg(long = "mod", short = 'q', value_name = "Q")]
        modulus: String,
        /// How many terms to examine.
        #[arg(long)]
        window: usize,
        /// Full periods of evidence required beyond the first.
        #[arg(long, default_value_t = 3)]
        margin: usize,
        /// Exit 1 unless the confirmed preperiod equals this.
        #[arg(long)]
        expect_s: Option<usize>,
        /// Exit 1 unless the confirmed period equals this.
        #[arg(long)]
        expect_d: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute Arnold's u_1..u_kmax with stability evidence.
    Arnold {
        #[arg(long, default_value_t = 18)]
        kmax: u32,
        /// Diagonals the table must extend past the last u_k.
        #[arg(long, default_value_t = 16)]
        guard: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Iterate the doubling map from a seed sequence.
    Ftransform {
        /// Comma-separated nonnegative integers, e.g. 2,4,4,4.
        #[arg(long)]
        seed: String,
        /// Number of terms to produce.
        #[arg(long)]
        count: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare predicted periodicity against measurements across a scope
    /// of moduli, plus the seed-map check for u_k itself.
    Verify {
        /// Verify odd prime powers below this bound.
        #[arg(long, default_value_t = 200)]
        odd_limit: u64,
        /// Verify 2^1 .. 2^this.
        #[arg(long, default_value_t = 8)]
        pow2_max: u32,
        /// Verify composite moduli up to this bound.
        #[arg(long, default_value_t = 100)]
        composite_limit: u64,
        /// Compute u_1..u_kmax and compare against the seed map.
        #[arg(long, default_value_t = 64)]
        kmax: u32,
        #[arg(long, default_value_t = 3)]
        margin: usize,
        #[arg(long, default_value_t = 16)]
        guard: usize,
        /// Worker threads; 0 picks a default.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Extra rows added to every measurement window.
        #[arg(long, default_value_t = 32)]
        slack: u64,
        /// Hard cap on any measurement window.
        #[arg(long, default_value_t = 1 << 24)]
        max_window: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let started = Instant::now();
    match cli.command {
        Command::Euler {
            count,
            modulus,
            output,
        } => run_euler(count, modulus, output, started),
        Command::Entringer {
            rows,
            modulus,
            output,
        } => run_entringer(rows, modulus, output, started),
        Command::Valuations { rows, cap, output } => run_valuations(rows, cap, output, started),
        Command::Period {
            modulus,
            window,
            margin,
            expect_s,
            expect_d,
            output,
        } => run_period(modulus, window, margin, expect_s, expect_d, output, started),
        Command::Arnold {
            kmax,
            guard,
            output,
        } => run_arnold(kmax, guard, output, started),
        Command::Ftransform {
            seed,
            count,
            output,
        } => run_ftransform(seed, count, output, started),
        Command::Verify {
            odd_limit,
            pow2_max,
            composite_limit,
            kmax,
            margin,
            guard,
            workers,
            slack,
            max_window,
            output,
        } => {
            let scope = SuiteScope {
                odd_limit,
                pow2_max_exp: pow2_max,
                composite_limit,
                arnold_k_max: kmax,
                arnold_guard: guard,
                min_margin: margin,
                window_slack: slack,
                max_window,
                workers,
            };
            run_verify(scope, output, started)
        }
    }
}

fn parse_nat(s: &str) -> Result<Nat, String> {
    s.parse::<Nat>()
        .map_err(|_| format!("'{s}' is not a nonnegative integer"))
}

fn parse_modulus(s: &str) -> Result<Nat, String> {
    let q = parse_nat(s)?;
    if q.bits() == 0 {
        return Err(String::from("modulus must be at least 1"));
    }
    Ok(q)
}

/// The modulus as a machine word when it fits the word ring.
fn word_modulus(q: &Nat) -> Option<u64> {
    u64::try_from(q)
        .ok()
        .filter(|&w| w <= ModRing64::MAX_MODULUS)
}

fn euler_terms(modulus: Option<&Nat>, count: usize) -> Vec<Nat> {
    match modulus {
        None => euler_sequence(ExactRing, count),
        Some(q) => match word_modulus(q) {
            Some(w) => euler_sequence(ModRing64::new(w), count)
                .into_iter()
                .map(Nat::from)
                .collect(),
            None => euler_sequence(ModRing::new(q.clone()), count),
        },
    }
}

fn triangle(modulus: Option<&Nat>, rows: usize) -> Vec<Vec<Nat>> {
    match modulus {
        None => triangle_rows(ExactRing)
            .take(rows)
            .map(|r| r.into_entries())
            .collect(),
        Some(q) => match word_modulus(q) {
            Some(w) => triangle_rows(ModRing64::new(w))
                .take(rows)
                .map(|r| r.into_entries().into_iter().map(Nat::from).collect())
                .collect(),
            None => triangle_rows(ModRing::new(q.clone()))
                .take(rows)
                .map(|r| r.into_entries())
                .collect(),
        },
    }
}

fn emit(output: &OutputArgs, text: &str) -> Result<(), String> {
    match &output.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_euler(
    count: usize,
    modulus: Option<String>,
    output: OutputArgs,
    started: Instant,
) -> Result<u8, String> {
    if count == 0 {
        return Err(String::from("count must be at least 1"));
    }
    let modulus = modulus.as_deref().map(parse_modulus).transpose()?;
    let terms = euler_terms(modulus.as_ref(), count);
    let text = match output.resolve(Format::Csv) {
        Format::Csv => output::euler_csv(&terms),
        Format::Json => {
            let mut params = BTreeMap::new();
            params.insert("count".into(), count.to_string());
            if let Some(q) = &modulus {
                params.insert("mod".into(), q.to_string());
            }
            output::render(
                "euler",
                params,
                output::euler_payload(modulus.as_ref(), &terms),
                started,
            )
        }
    };
    emit(&output, &text)?;
    Ok(0)
}

fn run_entringer(
    rows: usize,
    modulus: Option<String>,
    output: OutputArgs,
    started: Instant,
) -> Result<u8, String> {
    if rows == 0 {
        return Err(String::from("rows must be at least 1"));
    }
    let modulus = modulus.as_deref().map(parse_modulus).transpose()?;
    let table = triangle(modulus.as_ref(), rows);
    let text = match output.resolve(Format::Csv) {
        Format::Csv => output::entringer_csv(&table),
        Format::Json => {
            let mut params = BTreeMap::new();
            params.insert("rows".into(), rows.to_string());
            if let Some(q) = &modulus {
                params.insert("mod".into(), q.to_string());
            }
            output::render(
                "entringer",
                params,
                output::entringer_payload(modulus.as_ref(), &table),
                started,
            )
        }
    };
    emit(&output, &text)?;
    Ok(0)
}

fn run_valuations(
    rows: usize,
    cap: u32,
    output: OutputArgs,
    started: Instant,
) -> Result<u8, String> {
    if rows == 0 {
        return Err(String::from("rows must be at least 1"));
    }
    if cap == 0 {
        return Err(String::from("cap must be at least 1"));
    }
    let table = valuation_rows(rows, cap);
    let text = match output.resolve(Format::Csv) {
        Format::Csv => output::valuations_csv(&table),
        Format::Json => {
            let mut params = BTreeMap::new();
            params.insert("rows".into(), rows.to_string());
            params.insert("cap".into(), cap.to_string());
            output::render(
                "valuations",
                params,
                output::valuations_payload(cap, &table),
                started,
            )
        }
    };
    emit(&output, &text)?;
    Ok(0)
}

fn run_period(
    modulus: String,
    window: usize,
    margin: usize,
    expect_s: Option<usize>,
    expect_d: Option<usize>,
    output: OutputArgs,
    started: Instant,
) -> Result<u8, String> {
    let q = parse_modulus(&modulus)?;
    let profile = profile_euler(&q, window, margin).map_err(|e| e.to_string())?;
    let expectation_matched = if profile.is_confirmed() {
        Some(
            expect_s.is_none_or(|s| s == profile.preperiod)
                && expect_d.is_none_or(|d| d == profile.period),
        )
    } else {
        None
    };
    let text = match output.resolve(Format::Json) {
        Format::Csv => output::period_csv(&profile),
        Format::Json => {
            let mut params = BTreeMap::new();
            params.insert("mod".into(), q.to_string());
            params.insert("window".into(), window.to_string());
            params.insert("margin".into(), margin.to_string());
            if let Some(s) = expect_s {
                params.insert("expect_s".into(), s.to_string());
            }
            if let Some(d) = expect_d {
                params.insert("expect_d".into(), d.to_string());
            }
            output::render(
                "period",
                params,
                output::period_payload(&profile, margin, expect_s, expect_d, expectation_matched),
                started,
            )
        }
    };
    emit(&output, &text)?;
    if !profile.is_confirmed() {
        return Ok(2);
    }
    if expectation_matched == Some(false) {
        return Ok(1);
    }
    Ok(0)
}

fn run_arnold(kmax: u32, guard: usize, output: OutputArgs, started: Instant) -> Result<u8, String> {
    if kmax == 0 {
        return Err(String::from("kmax must be at least 1"));
    }
    let table = match arnold_sequence(kmax, guard) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(2);
        }
    };
    let text = match output.resolve(Format::Json) {
        Format::Csv => output::arnold_csv(&table),
        Format::Json => {
            let mut params = BTreeMap::new();
            params.insert("kmax".into(), kmax.to_string());
            params.insert("guard".into(), guard.to_string());
            output::render("arnold", params, output::arnold_payload(&table), started)
        }
    };
    emit(&output, &text)?;
    Ok(0)
}

fn parse_seed(s: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| format!("seed entry '{}' is not a nonnegative integer", part.trim()))
        })
        .collect()
}

fn run_ftransform(
    seed: String,
    count: usize,
    output: OutputArgs,
    started: Instant,
) -> Result<u8, String> {
    if count == 0 {
        return Err(String::from("count must be at least 1"));
    }
    let entries = parse_seed(&seed)?;
    let seq = FiniteSeq::from_u64s(&entries).map_err(|e| e.to_string())?;
    let terms = f_transform(&seq, count);
    let text = match output.resolve(Format::Csv) {
        Format::Csv => output::ftransform_csv(&terms),
        Format::Json => {
            let mut params = BTreeMap::new();
            params.insert("seed".into(), seed.clone());
            params.insert("count".into(), count.to_string());
            output::render(
                "ftransform",
                params,
                output::ftransform_payload(&entries, &terms),
                started,
            )
        }
    };
    emit(&output, &text)?;
    Ok(0)
}

fn run_verify(scope: SuiteScope, output: OutputArgs, started: Instant) -> Result<u8, String> {
    let report = match verify_suite(&scope) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(2);
        }
    };
    let text = match output.resolve(Format::Json) {
        Format::Csv => output::verify_csv(&report),
        Format::Json => {
            let mut params = BTreeMap::new();
            params.insert("odd_limit".into(), scope.odd_limit.to_string());
            params.insert("pow2_max".into(), scope.pow2_max_exp.to_string());
            params.insert("composite_limit".into(), scope.composite_limit.to_string());
            params.insert("kmax".into(), scope.arnold_k_max.to_string());
            params.insert("margin".into(), scope.min_margin.to_string());
            params.insert("guard".into(), scope.arnold_guard.to_string());
            params.insert("workers".into(), scope.workers.to_string());
            params.insert("slack".into(), scope.window_slack.to_string());
            params.insert("max_window".into(), scope.max_window.to_string());
            output::render("verify", params, output::verify_payload(&report), started)
        }
    };
    emit(&output, &text)?;
    if report.has_mismatch_or_defect() {
        Ok(1)
    } else if report.has_inconclusive() {
        Ok(2)
    } else {
        Ok(0)
    }
}
