//! `hodge`: exact Hurwitz numbers, Hodge integrals and the lambda_g tables.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hodge_core::elsv::lambda_g_check;
use hodge_core::hurwitz::{hurwitz_oracle, hurwitz_solve, oracle_count_f, solve_closure, HurwitzCache, Provenance};
use hodge_core::pipeline::{table_report, Engine, TableKind};
use hodge_core::rational::format_rational;
use hodge_core::verify::{run_suite, Suite};
use hodge_core::{Error, Partition};

#[derive(Parser, Debug)]
#[command(name = "hodge", version, about = "Exact Hurwitz numbers and lambda_g Hodge integrals")]
struct Cli {
    /// Hurwitz cache file, read at start and rewritten when it grows.
    #[arg(long, env = "HODGE_CACHE", global = true)]
    cache: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest degree for `hurwitz` and `cache solve`.
    #[arg(long, default_value_t = 12, global = true)]
    d_max: u32,
    /// Largest genus for `hurwitz` and `cache solve`.
    #[arg(long, default_value_t = 2, global = true)]
    g_max: u32,
    /// Leaf budget for brute-force enumeration.
    #[arg(long, default_value_t = 10_000_000, global = true)]
    oracle_budget: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// A single Hurwitz number H^g_alpha.
    Hurwitz {
        #[arg(long)]
        g: u32,
        /// Parts, comma separated: `2,1`.
        #[arg(long)]
        alpha: String,
        /// Count factorizations by brute force instead of solving.
        #[arg(long)]
        oracle: bool,
    },
    /// Hodge integrals <tau_b lambda_k>_g read off P_{g,n}.
    Witten {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
    },
    /// Checks the lowest part of P_{g,n} and prints c_g.
    Lambdag {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
    },
    /// Computed table rows next to the reference rows.
    Tables {
        #[arg(long, value_parser = parse_table)]
        which: TableKind,
        /// `3` or `1..4`, 1-based and inclusive.
        #[arg(long)]
        rows: Option<String>,
    },
    /// Runs an acceptance suite; exits 0 iff every check passes.
    Verify {
        #[arg(long, value_parser = parse_suite, default_value = "fast")]
        suite: Suite,
    },
    /// Cache management.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    /// Solves every partition with degree <= d-max and genus <= g-max.
    Solve,
    /// Prints the size and bounds of the cache.
    Info,
}

fn parse_table(s: &str) -> Result<TableKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rows(s: Option<&str>, len: usize) -> Result<(usize, usize), Error> {
    let Some(s) = s else {
        return Ok((1, len));
    };
    let bad = || Error::Parse(format!("bad row range {s:?}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => Ok((num(a)?, num(b)?)),
        None => {
            let k = num(s)?;
            Ok((k, k))
        }
    }
}

/// Exit codes: 1 failed check, 2 usage, 3 resource.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidDomain(_) | Error::InvalidRange { .. } => 2,
        Error::BudgetExceeded { .. } | Error::Io(_) => 3,
        _ => 1,
    }
}

struct Session {
    format: Format,
    engine: Engine,
    cache_path: Option<PathBuf>,
    loaded_len: usize,
}

impl Session {
    fn emit(&self, text: String, value: serde_json::Value) {
        match self.format {
            Format::Text => println!("{text}"),
            Format::Json => println!("{value}"),
        }
    }

    fn save(&self) -> Result<(), Error> {
        if let Some(path) = &self.cache_path {
            if self.engine.cache().len() != self.loaded_len {
                self.engine.cache().save(path)?;
            }
        }
        Ok(())
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let cache = match &cli.cache {
        Some(path) => HurwitzCache::load_or_new(path)?,
        None => HurwitzCache::new(),
    };
    let mut s = Session {
        format: cli.format,
        loaded_len: cache.len(),
        engine: Engine::new(cache),
        cache_path: cli.cache.clone(),
    };
    let pass = match cli.command {
        Command::Hurwitz { g, alpha, oracle } => {
            let alpha: Partition = alpha.parse()?;
            if g > cli.g_max || alpha.degree() > cli.d_max {
                return Err(Error::InvalidDomain(format!(
                    "g={g}, d={} is outside g-max={}, d-max={}",
                    alpha.degree(),
                    cli.g_max,
                    cli.d_max
                )));
            }
            if oracle {
                let v = hurwitz_oracle(g, &alpha, cli.oracle_budget)?;
                let f = oracle_count_f(g, &alpha, cli.oracle_budget)?;
                let h = format_rational(&v.h);
                s.emit(
                    format!("H={h} (oracle F={f})"),
                    json!({"g": g, "alpha": alpha.parts(), "r": v.r, "h": h, "f": f, "provenance": v.provenance}),
                );
            } else {
                let v = hurwitz_solve(g, &alpha, s.engine.cache_mut());
                let h = format_rational(&v.h);
                let provenance = if v.provenance == Provenance::Cache { " (cached)" } else { "" };
                s.emit(
                    format!("H={h} r={}{provenance}", v.r),
                    json!({"g": g, "alpha": alpha.parts(), "r": v.r, "h": h, "provenance": v.provenance}),
                );
            }
            true
        }
        Command::Witten { g, n } => {
            let records = s.engine.witten(g, n)?.records();
            let text = records
                .iter()
                .map(|r| {
                    let taus: Vec<String> = r.b.iter().map(|b| format!("tau_{b}")).collect();
                    format!("<{} lambda_{}>_{} = {}", taus.join(" "), r.k, r.g, r.value)
                })
                .collect::<Vec<_>>()
                .join("\n");
            s.emit(text, serde_json::to_value(&records)?);
            true
        }
        Command::Lambdag { g, n } => {
            let report = lambda_g_check(g, n, s.engine.cache_mut())?;
            let c = format_rational(&report.c_g);
            let verdict = if report.pass { "PASS" } else { "FAIL" };
            s.emit(
                format!("c_g={c} {verdict}"),
                json!({"g": g, "n": n, "c_g": c, "pass": report.pass}),
            );
            report.pass
        }
        Command::Tables { which, rows } => {
            let len = match which {
                TableKind::G1 => 6,
                TableKind::Higher => 9,
            };
            let (first, last) = parse_rows(rows.as_deref(), len)?;
            let report = table_report(&mut s.engine, which, first, last)?;
            let text = report.iter().map(|r| r.to_text()).collect::<Vec<_>>().join("\n");
            let value = serde_json::to_value(report.iter().map(|r| r.to_json()).collect::<Vec<_>>())?;
            s.emit(text, value);
            report.iter().all(|r| r.matches)
        }
        Command::Verify { suite } => {
            let format = s.format;
            let results = run_suite(suite, &mut s.engine, cli.oracle_budget, |r| {
                if format == Format::Text {
                    println!("{}", r.line());
                }
            });
            if format == Format::Json {
                println!("{}", serde_json::to_value(&results)?);
            }
            results.iter().all(|r| r.pass)
        }
        Command::Cache { action } => {
            if let CacheAction::Solve = action {
                solve_closure(cli.d_max, cli.g_max, s.engine.cache_mut());
            }
            let cache = s.engine.cache();
            let (d, g) = cache.bounds();
            s.emit(
                format!("entries={} d_max={d} g_max={g}", cache.len()),
                json!({"entries": cache.len(), "d_max": d, "g_max": g}),
            );
            true
        }
    };
    s.save()?;
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let code = exit_code(&e);
            match format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => eprintln!("{}", json!({"error": e.to_string(), "exit": code})),
            }
            ExitCode::from(code)
        }
    }
}
