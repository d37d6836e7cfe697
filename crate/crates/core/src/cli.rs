//! Command-line front end.
//!
//! Exit codes: 0 when every instance is verified (or settled by a witness),
//! 1 when a counterexample shows up, 2 when something stayed unresolved and
//! 3 for usage or configuration errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::arith::{euler_phi, factorize, Factorization, Natural, DEFAULT_RHO_BUDGET};
use crate::cyclotomic::cyclotomic_value;
use crate::harness::{emit_report, run_sweep_with, FactorCache, Format, StatusCounts, SweepConfig};
use crate::theorems::{
    family_case, order_check, verify, CaseParams, CongruenceCase, Family, FamilyCase, Mode, Status,
    VerificationRecord,
};
use crate::Error;

/// Default cache file for `sweep` when `--cache` is not given.
pub const CACHE_ENV: &str = "TOTIENT_VERIFY_CACHE";

const PROGRESS_EVERY: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExitStatus(pub i32);

impl ExitStatus {
    pub const OK: ExitStatus = ExitStatus(0);
    pub const COUNTEREXAMPLE: ExitStatus = ExitStatus(1);
    pub const UNRESOLVED: ExitStatus = ExitStatus(2);
    pub const USAGE: ExitStatus = ExitStatus(3);

    pub fn from_counts(counts: &StatusCounts) -> Self {
        if counts.counterexample > 0 {
            Self::COUNTEREXAMPLE
        } else if counts.unresolved > 0 {
            Self::UNRESOLVED
        } else {
            Self::OK
        }
    }

    fn from_status(status: Status) -> Self {
        let mut counts = StatusCounts::default();
        counts.add(status);
        Self::from_counts(&counts)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "totient-verify",
    version,
    about = "Check n | φ(N) for N built from x^n ± y^n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify a single instance
    Verify(VerifyArgs),
    /// Sweep a grid of instances
    Sweep(SweepArgs),
    /// Tabulate Mersenne, Cunningham or repunit numbers
    Family(FamilyArgs),
    /// Factor a number
    Factor {
        #[arg(value_parser = parse_natural)]
        n: Natural,
        #[arg(long, default_value_t = DEFAULT_RHO_BUDGET)]
        budget: u64,
    },
    /// Euler's totient of a number
    Phi {
        #[arg(value_parser = parse_natural)]
        n: Natural,
        #[arg(long, default_value_t = DEFAULT_RHO_BUDGET)]
        budget: u64,
    },
    /// Evaluate Φ_k(a, b)
    Cyclo {
        #[arg(long)]
        k: u64,
        #[arg(long, value_parser = parse_natural)]
        a: Natural,
        #[arg(long, value_parser = parse_natural)]
        b: Natural,
    },
    /// Check that y/x has order 2n modulo x^n + y^n
    Order {
        #[arg(long, value_parser = parse_natural)]
        x: Natural,
        #[arg(long, value_parser = parse_natural)]
        y: Natural,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// a: x^n+y^n, b: z^n-x^n, c: (z^n-x^n)/(z-x), d: (x^n+y^n)/(x+y)
    #[arg(long, value_parser = parse_case)]
    case: CongruenceCase,
    #[arg(long, value_parser = parse_natural)]
    x: Natural,
    #[arg(long, value_parser = parse_natural, conflicts_with = "z")]
    y: Option<Natural>,
    #[arg(long, value_parser = parse_natural)]
    z: Option<Natural>,
    #[arg(long)]
    n: u64,
    #[arg(long, default_value = "existence", value_parser = parse_mode)]
    mode: Mode,
    #[arg(long, default_value_t = DEFAULT_RHO_BUDGET)]
    budget: u64,
    /// Accept x = y (z = x) and report it as extra-scope
    #[arg(long)]
    allow_degenerate: bool,
    /// Print the record as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, default_value = "a,b,c,d", value_delimiter = ',', value_parser = parse_case)]
    cases: Vec<CongruenceCase>,
    #[arg(long, default_value_t = 1)]
    n_min: u64,
    #[arg(long, default_value_t = 20)]
    n_max: u64,
    #[arg(long, default_value_t = 100)]
    max_value: u64,
    #[arg(long, default_value = "existence", value_parser = parse_mode)]
    mode: Mode,
    #[arg(long, default_value_t = DEFAULT_RHO_BUDGET)]
    budget: u64,
    /// Worker threads (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
    /// Factorization cache file (default: $TOTIENT_VERIFY_CACHE)
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: Format,
    /// Include the quotient sum case at odd n < 5
    #[arg(long)]
    include_extra_scope: bool,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long, value_parser = parse_natural)]
    base: Option<Natural>,
    #[arg(long, default_value_t = 1)]
    n_min: u64,
    #[arg(long, default_value_t = 20)]
    n_max: u64,
    #[arg(long, default_value = "existence", value_parser = parse_mode)]
    mode: Mode,
    #[arg(long, default_value_t = DEFAULT_RHO_BUDGET)]
    budget: u64,
}

fn parse_natural(s: &str) -> Result<Natural, String> {
    crate::decimal::parse(s)
}

fn parse_case(s: &str) -> Result<CongruenceCase, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if help { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if help {
                ExitStatus::OK
            } else {
                ExitStatus::USAGE
            };
        }
    };
    let result = match cli.command {
        Command::Verify(args) => cmd_verify(args, out),
        Command::Sweep(args) => cmd_sweep(args, out, err),
        Command::Family(args) => cmd_family(args, out),
        Command::Factor { n, budget } => cmd_factor(&n, budget, out),
        Command::Phi { n, budget } => cmd_phi(&n, budget, out, err),
        Command::Cyclo { k, a, b } => cyclotomic_value(k, &a, &b).map(|v| {
            let _ = writeln!(out, "{v}");
            ExitStatus::OK
        }),
        Command::Order { x, y, n } => cmd_order(&x, &y, n, out),
    };
    match result {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitStatus::USAGE
        }
    }
}

type CmdResult = Result<ExitStatus, Error>;

fn cmd_verify(args: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let second = match (args.case.is_sum(), args.y, args.z) {
        (_, Some(v), None) | (_, None, Some(v)) => v,
        (true, None, None) => return Err(Error::InvalidParams("--y is required".into())),
        (false, None, None) => return Err(Error::InvalidParams("--z is required".into())),
        (_, Some(_), Some(_)) => unreachable!("clap rejects --y with --z"),
    };
    let params = if args.allow_degenerate {
        CaseParams::degenerate(args.x, second, args.n)?
    } else {
        CaseParams::new(args.x, second, args.n)?
    };
    let cache = FactorCache::in_memory();
    let record = verify(args.case, &params, args.mode, args.budget, &cache)?;
    if args.json {
        let text = serde_json::to_string_pretty(&record).expect("records serialize");
        let _ = writeln!(out, "{text}");
    } else {
        print_record(&record, out);
    }
    Ok(ExitStatus::from_status(record.status))
}

fn print_record(r: &VerificationRecord, out: &mut dyn Write) {
    let second = if r.case.is_sum() { "y" } else { "z" };
    let _ = writeln!(
        out,
        "case {} ({}): x = {}, {second} = {}, n = {}",
        r.case.letter(),
        r.case.formula(),
        r.params.first(),
        r.params.second(),
        r.n()
    );
    let _ = writeln!(out, "N = {}", r.target);
    let _ = writeln!(out, "mode: {}", r.mode);
    if let Some(phi) = &r.phi {
        let _ = writeln!(out, "phi(N) = {phi}");
    }
    if let Some(residue) = &r.residue {
        let _ = writeln!(out, "phi(N) mod n = {residue}");
    }
    if let Some(q) = &r.witness {
        let _ = writeln!(out, "witness q = {q} (q = 1 mod n, q | N)");
    }
    if r.extra_scope {
        let _ = writeln!(out, "note: outside the range the congruence is claimed for");
    }
    let _ = writeln!(out, "status: {}", r.status);
}

fn cmd_sweep(args: SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let parallelism = args
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let cache_path = args
        .cache
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    let config = SweepConfig {
        cases: args.cases,
        n_min: args.n_min,
        n_max: args.n_max,
        value_max: args.max_value,
        mode: args.mode,
        budget: args.budget,
        parallelism,
        cache_path,
        include_extra_scope: args.include_extra_scope,
    };
    config.validate()?;
    let mut sink =
        match &args.out {
            Some(path) => Some(File::create(path).map_err(|e| {
                Error::InvalidConfig(format!("cannot write {}: {e}", path.display()))
            })?),
            None => None,
        };

    let cache = match &config.cache_path {
        Some(path) => FactorCache::open(path),
        None => FactorCache::in_memory(),
    };
    if cache.discarded() > 0 {
        let _ = writeln!(
            err,
            "warning: discarded {} invalid cache lines",
            cache.discarded()
        );
    }
    let total = config.grid_size();
    let progress = move |done: usize| {
        if done.is_multiple_of(PROGRESS_EVERY) {
            eprintln!("{done}/{total} instances");
        }
    };
    let report = run_sweep_with(&config, &cache, Some(&progress))?;

    if let Some(file) = sink.as_mut() {
        file.write_all(&emit_report(&report, args.format))
            .map_err(|e| Error::InvalidConfig(format!("cannot write report: {e}")))?;
    }
    let _ = writeln!(out, "instances: {}", report.counts.total());
    for status in Status::ALL {
        let count = report.counts.get(status);
        if count > 0 {
            let _ = writeln!(out, "{status}: {count}");
        }
    }
    let _ = writeln!(
        out,
        "cache: {} hits, {} misses; runtime {:.0} ms",
        report.cache_hits, report.cache_misses, report.runtime_ms
    );
    Ok(ExitStatus::from_counts(&report.counts))
}

fn cmd_family(args: FamilyArgs, out: &mut dyn Write) -> CmdResult {
    let base = match (args.family, args.base) {
        (_, Some(b)) => b,
        (Family::Mersenne, None) => Natural::from(2u8),
        (_, None) => return Err(Error::InvalidParams("--base is required".into())),
    };
    if args.n_min < 1 || args.n_min > args.n_max {
        return Err(Error::InvalidConfig("need 1 <= n-min <= n-max".into()));
    }
    let members = (args.n_min..=args.n_max)
        .map(|n| {
            family_case(&FamilyCase {
                family: args.family,
                base: base.clone(),
                n,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cache = FactorCache::in_memory();
    let mut counts = StatusCounts::default();
    let _ = writeln!(out, "n\tN\tstatus\tphi\tresidue\twitness");
    for (case, params) in members {
        let n = params.n();
        let r = verify(case, &params, args.mode, args.budget, &cache)?;
        counts.add(r.status);
        let show = |v: &Option<Natural>| {
            v.as_ref()
                .map(ToString::to_string)
                .unwrap_or_else(|| "-".into())
        };
        let _ = writeln!(
            out,
            "{n}\t{}\t{}\t{}\t{}\t{}",
            r.target,
            r.status,
            show(&r.phi),
            show(&r.residue),
            show(&r.witness)
        );
    }
    Ok(ExitStatus::from_counts(&counts))
}

/// `p^e * q * ...`, with `[incomplete cofactor C]` appended when needed.
pub fn format_factorization(f: &Factorization) -> String {
    let mut parts: Vec<String> = f
        .factors()
        .iter()
        .map(|pp| match pp.exponent {
            1 => pp.prime.to_string(),
            e => format!("{}^{e}", pp.prime),
        })
        .collect();
    if parts.is_empty() && f.is_complete() {
        parts.push("1".into());
    }
    let mut text = parts.join(" * ");
    if !f.is_complete() {
        if !text.is_empty() {
            text.push(' ');
        }
        text.push_str(&format!("[incomplete cofactor {}]", f.cofactor()));
    }
    text
}

fn cmd_factor(n: &Natural, budget: u64, out: &mut dyn Write) -> CmdResult {
    let f = factorize(n, budget)?;
    let _ = writeln!(out, "{}", format_factorization(&f));
    Ok(if f.is_complete() {
        ExitStatus::OK
    } else {
        ExitStatus::UNRESOLVED
    })
}

fn cmd_phi(n: &Natural, budget: u64, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let f = factorize(n, budget)?;
    match euler_phi(&f) {
        Ok(phi) => {
            let _ = writeln!(out, "{phi}");
            Ok(ExitStatus::OK)
        }
        Err(e) => {
            let _ = writeln!(err, "{e}: {}", format_factorization(&f));
            Ok(ExitStatus::UNRESOLVED)
        }
    }
}

fn cmd_order(x: &Natural, y: &Natural, n: u64, out: &mut dyn Write) -> CmdResult {
    let cert = order_check(x, y, n)?;
    if cert.holds {
        let _ = writeln!(
            out,
            "order({} mod {}) = {} = 2n: HOLDS",
            cert.element, cert.modulus, cert.claimed_order
        );
        Ok(ExitStatus::OK)
    } else {
        let _ = writeln!(
            out,
            "order({} mod {}) != {} = 2n: FAILS",
            cert.element, cert.modulus, cert.claimed_order
        );
        Ok(ExitStatus::COUNTEREXAMPLE)
    }
}
