//! `framelab` command-line front end.

mod output;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use framelab_core::difference::ClassifyContext;
use framelab_core::harmonic::FrameReport;
use framelab_core::number_theory::{
    gauss_sum, half_gauss_sum, legendre, quartic_coset_decomposition, residues, GaussSumValue,
    QuarticCosets, ResidueClass,
};
use framelab_core::predictions::{
    dds_angles, gaussian_angles, ndds_angles, pds_angles, quartic_family_angles, rds_angles,
};
use framelab_core::search::DEFAULT_SUBSET_CAP;
use framelab_core::tables::{check_all, find_row, table_row_check, TableRecord};
use framelab_core::verify::{run_suite, Suite, VerifyOptions};
use framelab_core::{
    abelian_groups_of_order, tolerance, AnglePrediction, Classification, Element, Filter, FrameSpec, GroupSpec, SearchJob,
    SearchMode, SearchReport,
};

use output::{emit, write_search, Format, Render};

/// Harmonic frames from finite abelian groups: angles, difference-set
/// classification, closed-form predictions and exhaustive search.
///
/// Groups are written `Z6`, `Z2xZ4`, `Z2xZ2xZ2`. Subsets are comma lists,
/// optionally braced; tuple elements are parenthesized:
/// `0,1,3`, `{0,1,3}`, `(0,0),(1,0),(0,1)`.
///
/// Exit status: 0 on success, 1 on a domain error or failed verification,
/// 2 on a usage error.
#[derive(Parser, Debug)]
#[command(name = "framelab", version, propagate_version = true)]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a subset in the difference-set taxonomy and report its frame.
    Classify(FrameArgs),
    /// Angle profile, tightness and angularity of a harmonic frame.
    Angles(FrameArgs),
    /// Closed-form angle prediction for a difference-set class.
    Predict(PredictArgs),
    /// Enumerate and classify every m-subset of one group or of all groups of an order.
    Search(SearchArgs),
    /// Legendre symbols, Gauss sums and residue cosets mod a prime.
    Gauss(GaussArgs),
    /// Check the closed-form table rows at sample parameters.
    Tables(TablesArgs),
    /// Run a named verification suite and print one line per assertion.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct FrameArgs {
    /// Group, e.g. Z6 or Z2xZ4.
    #[arg(long)]
    group: GroupSpec,
    /// Generator subset, e.g. 0,1,3 or {(0,0),(1,0)}.
    #[arg(long)]
    set: String,
    /// Clustering tolerance on angle magnitudes.
    #[arg(long, default_value_t = tolerance::ANGLE_CLUSTER)]
    tol: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PredictClass {
    Divisible,
    Relative,
    Partial,
    Gaussian,
    NestedDivisible,
    Quartic,
}

#[derive(Args, Debug)]
struct PredictArgs {
    class: PredictClass,
    #[arg(long)]
    n: Option<u64>,
    #[arg(short, long)]
    m: Option<u64>,
    #[arg(long)]
    l: Option<u64>,
    #[arg(long)]
    lambda: Option<u64>,
    #[arg(long)]
    mu: Option<u64>,
    /// Prime for gaussian and quartic predictions.
    #[arg(long)]
    p: Option<u64>,
    /// Partial difference set contains 0.
    #[arg(long)]
    zero_in_s: bool,
    /// Quartic family with 0 adjoined.
    #[arg(long)]
    with_zero: bool,
    /// Group and set for nested-divisible; the chain is read off the set.
    #[arg(long)]
    group: Option<GroupSpec>,
    #[arg(long)]
    set: Option<String>,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("target").required(true).args(["group", "order"])))]
struct SearchArgs {
    #[arg(long)]
    group: Option<GroupSpec>,
    /// Search every abelian group of this order.
    #[arg(long)]
    order: Option<u32>,
    #[arg(short, long)]
    m: usize,
    /// etf, btf, a class name, or angles=a,b (e.g. angles=1/3,sqrt(5)/3). Repeatable.
    #[arg(long)]
    filter: Vec<Filter>,
    /// full enumerates all subsets; reduced only those containing 0.
    #[arg(long, default_value = "reduced")]
    mode: SearchMode,
    /// Worker threads; 0 uses all cores.
    #[arg(long, env = "FRAMELAB_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Refuse jobs with more subsets than this.
    #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
    cap: u128,
    /// Keep aggregates only.
    #[arg(long)]
    no_records: bool,
    /// Write the report here; a .csv extension selects CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GaussArgs {
    /// Odd prime.
    #[arg(long)]
    p: u64,
    /// Single unit a; all of Z_p^* when omitted.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
}

#[derive(Args, Debug)]
struct TablesArgs {
    /// Table number (2, 3 or 4); all tables when omitted.
    #[arg(long)]
    table: Option<u8>,
    #[arg(long, requires = "table")]
    row: Option<u8>,
    /// Variable assignment such as q=5 or q=3,a=1,d=1; needs --table and --row.
    #[arg(long, requires = "row")]
    sample: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name, or `all`.
    suite: String,
    /// With --set, checks the modulation identities of one frame.
    #[arg(long, requires = "set")]
    group: Option<GroupSpec>,
    #[arg(long, requires = "group")]
    set: Option<String>,
    /// Random frames for the modulation suite.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = VerifyOptions::default().seed)]
    seed: u64,
    #[arg(long, env = "FRAMELAB_JOBS", default_value_t = 0)]
    jobs: usize,
}

/// Errors split by exit status.
enum Failure {
    Usage(String),
    Domain(anyhow::Error),
    /// Output already printed; a verification failed.
    Verification,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<framelab_core::Error> for Failure {
    fn from(e: framelab_core::Error) -> Self {
        Failure::Domain(e.into())
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(1),
    }
}

fn run(cli: Cli) -> CliResult {
    let format = cli.format;
    match cli.command {
        Command::Classify(a) => classify(a, format.unwrap_or(Format::Json)),
        Command::Angles(a) => angles(a, format.unwrap_or(Format::Json)),
        Command::Predict(a) => predict(a, format.unwrap_or(Format::Json)),
        Command::Search(a) => search(a, format),
        Command::Gauss(a) => gauss(a, format.unwrap_or(Format::Json)),
        Command::Tables(a) => tables(a, format.unwrap_or(Format::Csv)),
        Command::Verify(a) => verify(a, format.unwrap_or(Format::Text)),
    }
}

fn parse_set(group: &GroupSpec, set: &str) -> CliResult<Vec<Element>> {
    group
        .parse_subset(set)
        .map_err(|e| Failure::Usage(format!("invalid value '{set}' for '--set': {e}")))
}

fn frame_of(a: &FrameArgs) -> CliResult<FrameSpec> {
    let set = parse_set(&a.group, &a.set)?;
    Ok(FrameSpec::new(&a.group, &set)?)
}

#[derive(Serialize)]
struct ClassifyReport {
    schema: u32,
    tags: Vec<&'static str>,
    classification: Classification,
    frame: FrameReport,
}

fn classify(a: FrameArgs, format: Format) -> CliResult {
    let frame = frame_of(&a)?;
    let classification = ClassifyContext::new(&a.group).classify(frame.generators())?;
    let report = ClassifyReport {
        schema: 1,
        tags: classification.tags(),
        frame: FrameReport::build(&frame, a.tol)?,
        classification,
    };
    emit(&report, format)
}

fn angles(a: FrameArgs, format: Format) -> CliResult {
    let frame = frame_of(&a)?;
    emit(&FrameReport::build(&frame, a.tol)?, format)
}

#[derive(Serialize)]
struct PredictReport {
    schema: u32,
    #[serde(flatten)]
    prediction: AnglePrediction,
}

fn need(v: Option<u64>, flag: &str, class: PredictClass) -> CliResult<u64> {
    v.ok_or_else(|| Failure::Usage(format!("predict {class:?} requires --{flag}").to_lowercase()))
}

fn predict(a: PredictArgs, format: Format) -> CliResult {
    use PredictClass::*;
    let c = a.class;
    let prediction = match c {
        Divisible => dds_angles(
            need(a.n, "n", c)?,
            need(a.m, "m", c)?,
            need(a.l, "l", c)?,
            need(a.lambda, "lambda", c)?,
            need(a.mu, "mu", c)?,
        )?,
        Relative => rds_angles(need(a.n, "n", c)?, need(a.m, "m", c)?, need(a.l, "l", c)?, need(a.mu, "mu", c)?)?,
        Partial => pds_angles(
            need(a.n, "n", c)?,
            need(a.m, "m", c)?,
            need(a.lambda, "lambda", c)?,
            need(a.mu, "mu", c)?,
            a.zero_in_s,
        )?,
        Gaussian => gaussian_angles(need(a.p, "p", c)?, need(a.m, "m", c)?, need(a.lambda, "lambda", c)?, need(a.mu, "mu", c)?)?,
        Quartic => quartic_family_angles(need(a.p, "p", c)?, a.with_zero)?,
        NestedDivisible => {
            let (Some(group), Some(set)) = (&a.group, &a.set) else {
                return Err(Failure::Usage("predict nested-divisible requires --group and --set".into()));
            };
            let set = parse_set(group, set)?;
            let cl = ClassifyContext::new(group).classify(&set)?;
            let chain = cl
                .nested_divisible
                .context("the set's difference counts fit no subgroup chain")?;
            ndds_angles(&chain, set.len() as u64)?
        }
    };
    emit(&PredictReport { schema: 1, prediction }, format)
}

/// Reports for every group of an order.
#[derive(Serialize)]
struct OrderSearchReport {
    schema: u32,
    order: u32,
    m: usize,
    total_matches: u64,
    reports: Vec<SearchReport>,
}

fn search(a: SearchArgs, format: Option<Format>) -> CliResult {
    let groups = match (&a.group, a.order) {
        (Some(g), _) => vec![g.clone()],
        (None, Some(n)) => abelian_groups_of_order(n)?,
        (None, None) => unreachable!("clap requires --group or --order"),
    };
    let mut reports = Vec::with_capacity(groups.len());
    for g in &groups {
        let mut job = SearchJob::new(g, a.m)
            .mode(a.mode)
            .jobs(a.jobs)
            .cap(a.cap)
            .keep_records(!a.no_records);
        for f in &a.filter {
            job = job.filter(f.clone());
        }
        reports.push(job.run()?);
    }

    let format = format.unwrap_or(match &a.out {
        Some(p) if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) => Format::Csv,
        _ => Format::Json,
    });
    let body = match a.order {
        Some(order) if a.group.is_none() => Render::Order(OrderSearchReport {
            schema: 1,
            order,
            m: a.m,
            total_matches: reports.iter().map(|r| r.matched).sum(),
            reports,
        }),
        _ => Render::Single(Box::new(reports.pop().expect("one group"))),
    };
    write_search(&body, format, a.out.as_deref())
}

#[derive(Serialize)]
struct GaussEntry {
    a: i64,
    legendre: i8,
    gauss_sum: GaussSumValue,
    gauss_deviation: f64,
    half_gauss_sum: GaussSumValue,
    half_gauss_deviation: f64,
}

#[derive(Serialize)]
struct GaussReport {
    schema: u32,
    p: u64,
    entries: Vec<GaussEntry>,
    squares: ResidueClass,
    /// Present when `p = 1 mod 4`.
    fourth_powers: Option<ResidueClass>,
    quartic_cosets: Option<QuarticCosets>,
}

fn gauss(a: GaussArgs, format: Format) -> CliResult {
    let p = a.p;
    let units: Vec<i64> = match a.a {
        Some(x) => vec![x],
        None => (1..p as i64).collect(),
    };
    let entries = units
        .into_iter()
        .map(|x| -> CliResult<GaussEntry> {
            let g = gauss_sum(x, p)?;
            let h = half_gauss_sum(x, p)?;
            Ok(GaussEntry {
                a: x,
                legendre: legendre(x, p)?,
                gauss_deviation: g.deviation(),
                gauss_sum: g,
                half_gauss_deviation: h.deviation(),
                half_gauss_sum: h,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let quartic = p % 4 == 1;
    let report = GaussReport {
        schema: 1,
        p,
        entries,
        squares: residues(p, 2)?,
        fourth_powers: if quartic { Some(residues(p, 4)?) } else { None },
        quartic_cosets: if quartic { Some(quartic_coset_decomposition(p)?) } else { None },
    };
    emit(&report, format)
}

fn parse_sample(s: &str) -> CliResult<BTreeMap<String, i64>> {
    s.split(',')
        .filter(|kv| !kv.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("expected name=value in --sample, got `{kv}`")))?;
            let v = v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("`{v}` is not an integer")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn tables(a: TablesArgs, format: Format) -> CliResult {
    let records: Vec<TableRecord> = match (a.table, a.row, &a.sample) {
        (Some(t), Some(r), Some(sample)) => {
            let row = find_row(t, r)?;
            let check = table_row_check(t, r, &parse_sample(sample)?)?;
            vec![TableRecord::new(row, &check)]
        }
        (t, r, _) => check_all()
            .iter()
            .filter(|(row, _)| t.is_none_or(|t| row.table.number() == t) && r.is_none_or(|r| row.row == r))
            .map(|(row, check)| TableRecord::new(row, check))
            .collect(),
    };
    if records.is_empty() {
        return Err(Failure::Domain(anyhow::anyhow!("no table row matches the selection")));
    }
    output::emit_table_records(&records, format)
}

fn verify(a: VerifyArgs, format: Format) -> CliResult {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![a.suite.parse().map_err(|e: framelab_core::Error| Failure::Usage(e.to_string()))?]
    };
    let set = match (&a.group, &a.set) {
        (Some(g), Some(s)) => Some(parse_set(g, s)?),
        _ => None,
    };
    let opts = VerifyOptions {
        group: a.group.clone(),
        set,
        samples: a.samples,
        seed: a.seed,
        jobs: a.jobs,
    };
    let reports = suites
        .into_iter()
        .map(|s| run_suite(s, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    output::emit_verify(&reports, format)?;
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
