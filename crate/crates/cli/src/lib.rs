//! The `mstd` command line.
//!
//! Exit codes: 0 on success, 1 on usage errors (bad flags or arguments the
//! library rejects), 2 when a computation finished but disagrees with the
//! embedded reference data or fails verification.

use std::io::{self, Write};
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mstd_core::asymptotics::{
    conjecture_residual, decimal_rounded, first_order_coefficient, normal_approx_check,
    normal_limit, one_sided_min_prob, random_walk_pn, ratio_table, rational_to_f64,
    second_order_coefficient,
};
use mstd_core::bbs::{count_bbs_dp, count_bbs_reflection, enumerate_bbs};
use mstd_core::construction::enumerate_family;
use mstd_core::density::{census_with_limit, monte_carlo, DensityEstimate, DEFAULT_CENSUS_LIMIT};
use mstd_core::intset::naive;
use mstd_core::IntSet;

mod golden;
pub mod output;

use output::{write_summary, Format, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "mstd", version, about = "MSTD sets from bidirectional ballot sequences")]
struct Cli {
    /// Emit one JSON object per line instead of CSV.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "MSTD_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count or list bidirectional ballot sequences.
    #[command(subcommand)]
    Bbs(BbsCommand),
    /// Reproduce the table of B_n for n = 1..24 and compare with reference values.
    Table1,
    /// n * B_n / 2^(n-2) from exact rationals, compared with reference digits.
    Table2(Table2Args),
    /// Sumset and difference-set sizes of a set.
    #[command(subcommand)]
    Mstd(MstdCommand),
    /// Size, members and verification of the constructed MSTD family.
    Construct(ConstructArgs),
    /// MSTD density by exhaustive census or Monte Carlo.
    #[command(subcommand)]
    Density(DensityCommand),
    /// Numerical checks of the asymptotic statements.
    Asymptotics(AsymptoticsArgs),
}

#[derive(Debug, Subcommand)]
enum BbsCommand {
    /// B_n for each n in a range such as `1..24` (inclusive) or a single `n`.
    Count {
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long, value_enum, default_value_t = Engine::Reflection)]
        engine: Engine,
    },
    /// Every bidirectional ballot sequence of length n, lexicographically.
    List {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Dp,
    Reflection,
    Both,
}

#[derive(Debug, Args)]
struct Table2Args {
    #[arg(long, value_delimiter = ',', default_values_t = [100usize, 1000])]
    n: Vec<usize>,
    #[arg(long, default_value_t = 12)]
    digits: usize,
}

#[derive(Debug, Subcommand)]
enum MstdCommand {
    /// Check a comma-separated set of integers.
    Check {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        set: Vec<i64>,
    },
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(long)]
    n: usize,
    /// Print every member of the family.
    #[arg(long)]
    list: bool,
    /// Re-check every member with a direct pair-enumeration oracle.
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Subcommand)]
enum DensityCommand {
    /// Exact count over all subsets of [0, n-1].
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, env = "MSTD_CENSUS_LIMIT", default_value_t = DEFAULT_CENSUS_LIMIT)]
        limit: usize,
    },
    /// Seeded Monte Carlo estimate.
    Mc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Normal,
    Conjecture,
    Pn,
    Footnote,
}

#[derive(Debug, Args)]
struct AsymptoticsArgs {
    #[arg(long, value_enum)]
    which: Which,
    /// Comma-separated values of n (each check has its own default grid).
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<usize>>,
    /// Offset t for the normal approximation.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    t: f64,
    /// Decimals for exact probabilities.
    #[arg(long, default_value_t = 12)]
    digits: usize,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (parse(lo)?, parse(hi.trim_start_matches('='))?),
        None => {
            let n = parse(s)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(lo..=hi)
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<mstd_core::Error> for Failure {
    fn from(e: mstd_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// `Ok(true)` when every comparison or verification passed.
type Outcome = Result<bool, Failure>;

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let format = if cli.json { Format::Json } else { Format::Csv };
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => {
                // `out` is not Send; buffer inside the pool.
                let mut buf = Vec::new();
                let result = pool.install(|| dispatch(cli.command, format, &mut buf));
                out.write_all(&buf).map_err(Failure::Io).and(result)
            }
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => dispatch(cli.command, format, out),
    };
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_MISMATCH,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, format: Format, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Bbs(BbsCommand::Count { n, engine }) => bbs_count(n, engine, format, out),
        Command::Bbs(BbsCommand::List { n }) => bbs_list(n, format, out),
        Command::Table1 => table1(format, out),
        Command::Table2(args) => table2(&args, format, out),
        Command::Mstd(MstdCommand::Check { set }) => mstd_check(&set, format, out),
        Command::Construct(args) => construct(&args, format, out),
        Command::Density(DensityCommand::Census { n, limit }) => {
            density(census_with_limit(n, limit)?, format, out)
        }
        Command::Density(DensityCommand::Mc { n, samples, seed }) => {
            density(monte_carlo(n, samples, seed)?, format, out)
        }
        Command::Asymptotics(args) => asymptotics(&args, format, out),
    }
}

fn big(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

fn bbs_count(range: RangeInclusive<usize>, engine: Engine, format: Format, out: &mut dyn Write) -> Outcome {
    let mut all_agree = true;
    let mut table = match engine {
        Engine::Both => Table::new(&["n", "dp", "reflection", "agree"]),
        _ => Table::new(&["n", "count"]),
    };
    for n in range {
        match engine {
            Engine::Dp => table.push(vec![json!(n), big(count_bbs_dp(n)?)]),
            Engine::Reflection => table.push(vec![json!(n), big(count_bbs_reflection(n)?)]),
            Engine::Both => {
                let dp = count_bbs_dp(n)?;
                let refl = count_bbs_reflection(n)?;
                let agree = dp == refl;
                all_agree &= agree;
                table.push(vec![json!(n), big(dp), big(refl), json!(agree)]);
            }
        }
    }
    table.write(format, out)?;
    Ok(all_agree)
}

fn bbs_list(n: usize, format: Format, out: &mut dyn Write) -> Outcome {
    let mut table = Table::new(&["sequence"]);
    for s in enumerate_bbs(n) {
        table.push(vec![big(s)]);
    }
    table.write(format, out)?;
    Ok(true)
}

fn table1(format: Format, out: &mut dyn Write) -> Outcome {
    let mut table = Table::new(&["n", "dp", "reflection", "golden", "match"]);
    let mut all_match = true;
    for (n, golden) in golden::table1() {
        let dp = count_bbs_dp(n)?.to_string();
        let refl = count_bbs_reflection(n)?.to_string();
        let ok = dp == golden && refl == golden;
        all_match &= ok;
        table.push(vec![json!(n), big(dp), big(refl), big(golden), json!(ok)]);
    }
    table.write(format, out)?;
    Ok(all_match)
}

fn table2(args: &Table2Args, format: Format, out: &mut dyn Write) -> Outcome {
    let mut table = Table::new(&["n", "ratio", "golden", "match"]);
    let mut all_match = true;
    for value in ratio_table(&args.n, args.digits)? {
        let golden = golden::table2_for(value.n);
        let matched = golden.as_ref().map(|g| {
            decimal_rounded(&value.value, golden::decimals(g)) == *g
        });
        all_match &= matched.unwrap_or(true);
        table.push(vec![
            json!(value.n),
            big(value.rounded()),
            golden.map_or(Value::Null, big),
            matched.map_or(Value::Null, Value::Bool),
        ]);
    }
    table.write(format, out)?;
    Ok(all_match)
}

fn mstd_check(elements: &[i64], format: Format, out: &mut dyn Write) -> Outcome {
    let lo = *elements.iter().min().expect("clap requires a value");
    let hi = *elements.iter().max().expect("clap requires a value");
    let window = usize::try_from(hi - lo + 1).map_err(|e| Failure::Usage(e.to_string()))?;
    let set = IntSet::from_elements(window, elements.iter().map(|x| x - lo))?;
    let sums = set.sumset_len();
    let diffs = set.diffset_len();
    write_summary(
        format,
        &[
            ("sum", json!(sums)),
            ("diff", json!(diffs)),
            ("mstd", json!(sums > diffs)),
        ],
        out,
    )?;
    Ok(true)
}

struct Verdict {
    ok: bool,
    diffs: usize,
}

fn verify_member(set: &IntSet, n: usize) -> Verdict {
    let xs: Vec<i64> = set.iter().collect();
    let sums = naive::sumset(&xs).len();
    let diffs = naive::diffset(&xs).len();
    Verdict {
        ok: sums > diffs && sums == 2 * n - 2 && diffs <= 2 * n - 3,
        diffs,
    }
}

fn construct(args: &ConstructArgs, format: Format, out: &mut dyn Write) -> Outcome {
    let n = args.n;
    let family = enumerate_family(n)?;
    if !args.list && !args.verify {
        let size = count_bbs_reflection(n - 22)?;
        write_summary(format, &[("n", json!(n)), ("family", big(size))], out)?;
        return Ok(true);
    }
    let mut size = 0u64;
    let mut verified = 0u64;
    let mut max_diffs = 0usize;
    for set in family {
        size += 1;
        if args.list {
            match format {
                Format::Csv => {
                    let xs: Vec<String> = set.iter().map(|x| x.to_string()).collect();
                    writeln!(out, "{}", xs.join(" "))?;
                }
                Format::Json => {
                    let xs: Vec<i64> = set.iter().collect();
                    writeln!(out, "{}", json!({ "set": xs }))?;
                }
            }
        }
        if args.verify {
            let verdict = verify_member(&set, n);
            verified += verdict.ok as u64;
            max_diffs = max_diffs.max(verdict.diffs);
        }
    }
    if args.verify {
        match format {
            Format::Csv => write_summary(
                format,
                &[("family", json!(size)), ("verified", json!(verified))],
                out,
            )?,
            Format::Json => write_summary(
                format,
                &[
                    ("n", json!(n)),
                    ("family", json!(size)),
                    ("verified", json!(verified)),
                    ("max_diff_size", json!(max_diffs)),
                ],
                out,
            )?,
        }
        Ok(verified == size)
    } else {
        write_summary(format, &[("n", json!(n)), ("family", json!(size))], out)?;
        Ok(true)
    }
}

fn density(estimate: DensityEstimate, format: Format, out: &mut dyn Write) -> Outcome {
    match format {
        Format::Csv => {
            writeln!(out, "{}", DensityEstimate::CSV_HEADER)?;
            writeln!(out, "{}", estimate.csv_row())?;
        }
        Format::Json => {
            let text = serde_json::to_string(&estimate).map_err(|e| Failure::Usage(e.to_string()))?;
            writeln!(out, "{text}")?;
        }
    }
    Ok(true)
}

fn asymptotics(args: &AsymptoticsArgs, format: Format, out: &mut dyn Write) -> Outcome {
    let grid = |default: &[usize]| args.grid.clone().unwrap_or_else(|| default.to_vec());
    let table = match args.which {
        Which::Normal => {
            let mut table = Table::new(&["n", "t", "value", "limit", "rel_error"]);
            let limit = normal_limit(args.t);
            for n in grid(&[100, 1000, 10_000, 100_000, 1_000_000]) {
                let value = normal_approx_check(n as u64, args.t)?;
                table.push(vec![
                    json!(n),
                    json!(args.t),
                    json!(value),
                    json!(limit),
                    json!((value - limit) / limit),
                ]);
            }
            table
        }
        Which::Conjecture => {
            let mut table = Table::new(&["n", "first_order", "second_order", "residual"]);
            for n in grid(&[100, 200, 400, 800, 1600]) {
                table.push(vec![
                    json!(n),
                    json!(first_order_coefficient(n)?),
                    json!(second_order_coefficient(n)?),
                    json!(conjecture_residual(n)?),
                ]);
            }
            table
        }
        Which::Pn => {
            let mut table = Table::new(&["n", "pn", "n_pn"]);
            for n in grid(&[10, 100, 1000]) {
                let p = random_walk_pn(n)?;
                let scaled = rational_to_f64(&p) * n as f64;
                table.push(vec![json!(n), big(decimal_rounded(&p, args.digits)), json!(scaled)]);
            }
            table
        }
        Which::Footnote => {
            let mut table = Table::new(&["n", "prob", "scaled"]);
            for n in grid(&[100, 1000, 10_000]) {
                let p = one_sided_min_prob(n)?;
                let scaled = rational_to_f64(&p)
                    * (std::f64::consts::PI * n as f64 / 2.0).sqrt();
                table.push(vec![json!(n), big(decimal_rounded(&p, args.digits)), json!(scaled)]);
            }
            table
        }
    };
    table.write(format, out)?;
    Ok(true)
}

/// Convenience for tests: run and capture stdout as a string.
pub fn run_captured<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(args, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("utf-8 output"),
        String::from_utf8(err).expect("utf-8 output"),
    )
}
