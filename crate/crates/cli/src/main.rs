//! `ffec`: analyze elliptic curves over F_p(t) for one or many primes.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;

use ffec_core::global::Outcome;
use ffec_core::gfpoly::is_prime;
use ffec_core::{analyze, Error, GlobalReport, WeierstrassModel};

const MAX_PRIME: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "ffec", version, about = "Tate's algorithm, conductor, rank and Sha for elliptic curves over F_p(t)")]
struct Cli {
    /// Use y^2 + t xy + t^3 y = x^3 + t^2 x^2 + t^4 x + t^5.
    #[arg(long, conflicts_with_all = ["a1", "a2", "a3", "a4", "a6"])]
    paper_curve: bool,

    /// Inclusive prime range, e.g. 2..100.
    #[arg(long, value_name = "A..B")]
    primes: Option<String>,

    /// A single prime; may be repeated.
    #[arg(short = 'p', value_name = "N")]
    prime: Vec<u64>,

    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a1: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a2: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a3: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a4: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a6: String,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Print the conductor table and a pass/fail summary instead of reports.
    #[arg(long, requires = "paper_curve")]
    paper_table: bool,

    /// Worker threads (default: all cores).
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
}

enum Failure {
    Usage(String),
    Inconsistent(String),
}

impl Failure {
    fn from_core(p: u64, e: Error) -> Self {
        match e {
            Error::Inconsistency(_) => Failure::Inconsistent(format!("p = {p}: {e}")),
            _ => Failure::Usage(format!("p = {p}: {e}")),
        }
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: u64 = a.trim().parse().map_err(|_| format!("bad range start {a:?}"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("bad range end {b:?}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    if b > MAX_PRIME {
        return Err(format!("range end {b} exceeds {MAX_PRIME}"));
    }
    Ok((a, b))
}

fn prime_list(cli: &Cli) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    if let Some(r) = &cli.primes {
        let (a, b) = parse_range(r)?;
        out.extend((a..=b).filter(|&n| is_prime(n)));
    }
    for &p in &cli.prime {
        if !is_prime(p) {
            return Err(format!("{p} is not prime"));
        }
        if p > MAX_PRIME {
            return Err(format!("{p} exceeds {MAX_PRIME}"));
        }
        out.push(p);
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err("no primes given (use -p N or --primes A..B)".into());
    }
    Ok(out)
}

fn run_one(cli: &Cli, p: u64) -> Result<GlobalReport, Failure> {
    let model = if cli.paper_curve {
        WeierstrassModel::reference_curve(p)
    } else {
        WeierstrassModel::parse(p, [&cli.a1, &cli.a2, &cli.a3, &cli.a4, &cli.a6])
    }
    .map_err(|e| Failure::from_core(p, e))?;
    analyze(p, &model).map_err(|e| Failure::from_core(p, e))
}

/// Certificates expected for the reference curve at `p`, or what is missing.
fn expected_certificates(r: &GlobalReport) -> Result<(), String> {
    let mut missing = Vec::new();
    if r.torsion != Outcome::Value(1) {
        missing.push(format!("torsion {}", r.torsion));
    }
    if r.sha != Outcome::Value(1) {
        missing.push(format!("sha {}", r.sha));
    }
    if r.conductor.degree != 4 {
        missing.push(format!("conductor degree {}", r.conductor.degree));
    }
    if r.prime == 47 {
        if !r.has_certificate("deuring") {
            missing.push("Deuring certificate".into());
        }
        if !r.has_certificate("external-rank") {
            missing.push("external rank".into());
        }
    } else if r.rank_geom != Outcome::Value(0) {
        missing.push(format!("rank {}", r.rank_geom));
    }
    if missing.is_empty() {
        Ok(())
    } else {
        Err(missing.join(", "))
    }
}

fn text_report(r: &GlobalReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "p = {}", r.prime);
    let _ = writeln!(s, "  model        {}", r.model);
    let _ = writeln!(s, "  Δ_min        {}", r.delta_factored);
    let _ = writeln!(s, "  j            {}", r.j);
    let _ = writeln!(s, "  height       {}", r.height);
    let _ = writeln!(s, "  isotrivial   {}", r.isotrivial);
    let _ = writeln!(s, "  places");
    for v in &r.places {
        let _ = writeln!(
            s,
            "    {:<16} {:<5} v(Δ)={:<3} m={:<2} c={:<2} f={}",
            v.place.to_string(),
            v.kodaira.to_string(),
            v.v_delta_min,
            v.m_geom,
            v.tamagawa,
            v.f_cond
        );
    }
    let _ = writeln!(s, "  conductor    {} (degree {})", r.conductor, r.conductor.degree);
    let _ = writeln!(s, "  L-degree     {}", r.l_degree);
    let _ = writeln!(s, "  rank_geom    {}", r.rank_geom);
    let _ = writeln!(s, "  torsion      {}", r.torsion);
    let _ = writeln!(s, "  sha          {}", r.sha);
    let _ = writeln!(s, "  certificates");
    for c in &r.certificates {
        let flag = if c.conditional { " (conditional)" } else { "" };
        let _ = writeln!(s, "    [{}] {}{}", c.lemma, c.claim, flag);
    }
    s
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let primes = prime_list(&cli).map_err(Failure::Usage)?;
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(j) = cli.jobs {
            if j == 0 {
                return Err(Failure::Usage("--jobs must be at least 1".into()));
            }
            b = b.num_threads(j);
        }
        b.build().map_err(|e| Failure::Usage(e.to_string()))?
    };
    let results: Vec<Result<GlobalReport, Failure>> =
        pool.install(|| primes.par_iter().map(|&p| run_one(&cli, p)).collect());
    let mut reports = Vec::with_capacity(results.len());
    for r in results {
        reports.push(r?);
    }

    let checks: Vec<Result<(), String>> = if cli.paper_curve {
        reports.iter().map(expected_certificates).collect()
    } else {
        reports.iter().map(|_| Ok(())).collect()
    };
    let all_ok = checks.iter().all(|c| c.is_ok());

    if cli.paper_table {
        println!("{:>5}  conductor", "p");
        for r in &reports {
            println!("{:>5}  {}", r.prime, r.conductor);
        }
        for (r, c) in reports.iter().zip(&checks) {
            if let Err(why) = c {
                println!("FAIL p = {}: {why}", r.prime);
            }
        }
        let verdict = if all_ok { "PASS" } else { "FAIL" };
        println!("{verdict}: {} of {} primes have E(F_p(t)) = 0 and #Sha = 1 certified", checks.iter().filter(|c| c.is_ok()).count(), reports.len());
        return Ok(all_ok);
    }

    match cli.format {
        Format::Json => {
            let json = serde_json::to_string_pretty(&reports).map_err(|e| Failure::Usage(e.to_string()))?;
            println!("{json}");
        }
        Format::Text => {
            let blocks: Vec<String> = reports.iter().map(text_report).collect();
            print!("{}", blocks.join("\n"));
        }
    }
    if cli.paper_curve {
        for (r, c) in reports.iter().zip(&checks) {
            if let Err(why) = c {
                eprintln!("p = {}: expected certificate missing: {why}", r.prime);
            }
        }
    }
    Ok(all_ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Inconsistent(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
