use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use reeder_core::oracles::DEFAULT_MAX_RANK;
use reeder_core::rootsys::{build_root_system, small_weights, Family, Weight};
use reeder_core::stembridge::{small_row, RecurrenceRow};
use reeder_core::verify::{self, CheckReport, Mode, Options};
use reeder_core::RationalFn;

/// Exact checks of the graded multiplicity recurrences for small
/// representations of types B and C.
#[derive(Parser)]
#[command(name = "reeder", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the recurrence chains and compare with closed forms and oracles.
    Verify(VerifyArgs),
    /// Run the coefficient and reduction identity suites.
    Identities(IdentitiesArgs),
    /// Print a recurrence row and its solved value as JSON.
    Dump(DumpArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "C", alias = "c")]
    C,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::B => Family::B,
            FamilyArg::C => Family::C,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Recurrence,
    Closedform,
    Oracle,
    All,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Recurrence => Mode::Recurrence,
            ModeArg::Closedform => Mode::Closedform,
            ModeArg::Oracle => Mode::Oracle,
            ModeArg::All => Mode::All,
        }
    }
}

#[derive(Args)]
struct Output {
    /// Write reports here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// One JSON object per check (default).
    #[arg(long, conflicts_with = "plain")]
    json: bool,
    /// One line of text per check.
    #[arg(long)]
    plain: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Smallest rank (and largest, unless --rank-max is given).
    #[arg(long, default_value_t = 2)]
    rank: usize,
    #[arg(long)]
    rank_max: Option<usize>,
    /// Only this weight: `w2`, `w1+w3`, `2w1`, `0` or coordinates `1,1,0`.
    #[arg(long)]
    weight: Option<String>,
    #[arg(long, value_enum, default_value = "all")]
    mode: ModeArg,
    #[arg(long, env = "REEDER_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Allow the brute-force oracles above rank 4.
    #[arg(long)]
    force: bool,
    /// Add 1 to every closed-form side, to exercise the failure path.
    #[arg(long, hide = true)]
    perturb: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct IdentitiesArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, default_value_t = 2)]
    rank: usize,
    /// Largest rank checked.
    #[arg(long)]
    rank_max: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct DumpArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    rank: usize,
    #[arg(long)]
    weight: String,
    #[arg(long, env = "REEDER_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

struct UsageError(String);

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// Parse `w2`, `w1+w3`, `2w1`, `0`, or whole coordinates `1,1,0`.
fn parse_weight(s: &str, n: usize) -> Result<Weight, UsageError> {
    let s = s.trim();
    if s.contains(',') || s.parse::<i64>().is_ok_and(|v| v != 0) {
        let coords: Vec<i64> = s
            .split(',')
            .map(|c| c.trim().parse().map_err(|_| usage(format!("bad coordinate {c:?}"))))
            .collect::<Result<_, _>>()?;
        if coords.len() != n {
            return Err(usage(format!("weight {s} has {} coordinates, rank is {n}", coords.len())));
        }
        return Ok(Weight::from_whole(&coords));
    }
    let mut w = Weight::zero(n);
    if s == "0" {
        return Ok(w);
    }
    for term in s.split('+') {
        let term = term.trim();
        let (mult, idx) = term
            .split_once('w')
            .ok_or_else(|| usage(format!("bad weight term {term:?}")))?;
        let mult: i64 = if mult.is_empty() {
            1
        } else {
            mult.parse().map_err(|_| usage(format!("bad multiplier in {term:?}")))?
        };
        let idx: usize = idx.parse().map_err(|_| usage(format!("bad index in {term:?}")))?;
        if idx == 0 || idx > n {
            return Err(usage(format!("fundamental weight index {idx} out of 1..={n}")));
        }
        w = w.add(&Weight::fundamental(n, idx).scale(mult));
    }
    Ok(w)
}

fn rank_range(rank: usize, rank_max: Option<usize>, min: usize) -> Result<Vec<usize>, UsageError> {
    let hi = rank_max.unwrap_or(rank);
    if rank < min || hi < rank {
        return Err(usage(format!("need {min} <= rank <= rank-max, got {rank}..{hi}")));
    }
    Ok((rank..=hi).collect())
}

fn emit(reports: &[CheckReport], output: &Output) -> io::Result<()> {
    let sink: Box<dyn Write> = match &output.out {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = BufWriter::new(sink);
    for r in reports {
        if output.plain {
            writeln!(w, "{}", r.plain())?;
        } else {
            writeln!(w, "{}", serde_json::to_string(r)?)?;
        }
    }
    if output.plain {
        let failed = reports.iter().filter(|r| r.failed()).count();
        writeln!(w, "{} checks, {} failed", reports.len(), failed)?;
    }
    w.flush()
}

/// Run independent jobs on scoped threads, keeping the job order.
fn run_jobs<T: Sync, F>(jobs: &[T], f: F) -> Vec<CheckReport>
where
    F: Fn(&T) -> Vec<CheckReport> + Sync,
{
    std::thread::scope(|s| {
        let handles: Vec<_> = jobs.iter().map(|j| s.spawn(|| f(j))).collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("job panicked"))
            .collect()
    })
}

fn finish(reports: Vec<CheckReport>, output: &Output) -> Result<ExitCode, UsageError> {
    match emit(&reports, output) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => return Err(usage(format!("cannot write reports: {e}"))),
        _ => {}
    }
    Ok(if reports.iter().any(|r| r.failed()) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode, UsageError> {
    let family = Family::from(a.family);
    let ranks = rank_range(a.rank, a.rank_max, 2)?;
    let mode = Mode::from(a.mode);
    let top = *ranks.last().expect("nonempty range");
    if mode == Mode::Oracle && !a.force && top > DEFAULT_MAX_RANK {
        return Err(usage(format!("oracle mode is limited to rank {DEFAULT_MAX_RANK}; pass --force")));
    }
    let mut jobs = Vec::new();
    for &n in &ranks {
        let weight = match &a.weight {
            Some(s) => {
                let w = parse_weight(s, n)?;
                let rs = build_root_system(family, n).map_err(|e| usage(e.to_string()))?;
                if !w.is_zero() && !small_weights(&rs).contains(&w) {
                    return Err(usage(format!("{w} is not a small weight of {family}{n}")));
                }
                Some(w)
            }
            None => None,
        };
        let opts = Options {
            mode,
            weight,
            max_rank: if a.force { usize::MAX } else { DEFAULT_MAX_RANK },
            cache_dir: a.cache_dir.clone(),
            perturb: a.perturb,
        };
        jobs.push((n, opts));
    }
    let reports = run_jobs(&jobs, |(n, opts)| verify::verify_rank(family, *n, opts));
    finish(reports, &a.output)
}

fn cmd_identities(a: IdentitiesArgs) -> Result<ExitCode, UsageError> {
    let family = Family::from(a.family);
    let ranks = rank_range(a.rank, a.rank_max.or(Some(a.rank)), 1)?;
    let mut reports = run_jobs(&ranks, |&n| verify::identity_reports(family, n as i64));
    let top = *ranks.last().expect("nonempty range");
    if top >= 2 {
        reports.push(verify::counting_report(top.min(6) as i64));
    }
    finish(reports, &a.output)
}

#[derive(Serialize)]
struct Dump<'a> {
    family: Family,
    rank: usize,
    weight: &'a Weight,
    row: &'a RecurrenceRow,
    specialized_row: &'a RecurrenceRow,
    value: &'a RationalFn,
}

fn cmd_dump(a: DumpArgs) -> Result<ExitCode, UsageError> {
    let family = Family::from(a.family);
    let rs = build_root_system(family, a.rank).map_err(|e| usage(e.to_string()))?;
    let lambda = parse_weight(&a.weight, a.rank)?;
    if lambda.is_zero() || !small_weights(&rs).contains(&lambda) {
        return Err(usage(format!("{lambda} is not a nonzero small weight of {family}{}", a.rank)));
    }
    let fail = |e: String| {
        eprintln!("error: {e}");
        ExitCode::from(1)
    };
    let row = match small_row(&lambda, &rs) {
        Ok(r) => r,
        Err(e) => return Ok(fail(e.to_string())),
    };
    let (rows, table, _) = match verify::solved_table(family, a.rank, a.cache_dir.as_deref()) {
        Ok(v) => v,
        Err(e) => return Ok(fail(e)),
    };
    let specialized = rows.iter().find(|r| r.lambda == lambda).expect("row for every small weight");
    let dump = Dump {
        family,
        rank: a.rank,
        weight: &lambda,
        row: &row,
        specialized_row: specialized,
        value: &table.entries[&lambda],
    };
    let json = serde_json::to_string_pretty(&dump).map_err(|e| usage(e.to_string()))?;
    // a closed pipe (e.g. `| head`) is not an error
    let _ = writeln!(io::stdout().lock(), "{json}");
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Identities(a) => cmd_identities(a),
        Command::Dump(a) => cmd_dump(a),
    };
    r.unwrap_or_else(|UsageError(msg)| {
        eprintln!("error: {msg}");
        ExitCode::from(2)
    })
}
