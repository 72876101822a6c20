//! Exhaustive enumeration of `m`-subsets of a group, each classified and
//! angle-profiled.
//!
//! Subsets are visited in colex order of their element indices. The rank
//! range is cut into blocks that rayon workers process independently;
//! block results are merged in rank order, so records and aggregates do not
//! depend on the number of threads.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::difference::{Classification, ClassifyContext, DEFAULT_CHAIN_NODE_CAP};
use crate::error::{Error, Result};
use crate::group::{abelian_groups_of_order, Element, GroupSpec};
use crate::harmonic::{angularity_of, AngleProfile, Angularity, FrameSpec};
use crate::tolerance;

/// Default bound on the number of subsets a job may enumerate.
pub const DEFAULT_SUBSET_CAP: u128 = 10_000_000;

/// Largest group order accepted by [`cross_group_angle_match`].
pub const MAX_CROSS_GROUP_ORDER: u32 = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Every `m`-subset.
    Full,
    /// Only subsets containing `0`: one representative per translate class
    /// up to the `m` translates that keep `0` inside.
    #[default]
    Reduced,
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(SearchMode::Full),
            "reduced" => Ok(SearchMode::Reduced),
            _ => Err(Error::InvalidParameters(format!("unknown mode `{s}`; use full or reduced"))),
        }
    }
}

/// Class names accepted by [`Filter::Class`]; each maps to a tag of
/// [`Classification::tags`].
pub const CLASS_TAGS: &[&str] = &[
    "difference_set",
    "bidifference",
    "divisible",
    "relative",
    "partial",
    "gaussian",
    "almost",
    "nested_divisible",
];

#[derive(Clone, Debug, PartialEq)]
pub enum Filter {
    Etf,
    Btf,
    Class(&'static str),
    /// Sorted target angles; a profile matches when it has exactly these
    /// angles within `tol`.
    Angles { targets: Vec<f64>, tol: f64 },
}

impl Filter {
    pub fn angles(targets: &[f64]) -> Self {
        let mut targets = targets.to_vec();
        targets.sort_by(f64::total_cmp);
        Filter::Angles { targets, tol: tolerance::ANGLE_MATCH }
    }

    fn accepts(&self, c: &Classification, profile: &AngleProfile, angularity: Angularity) -> bool {
        match self {
            Filter::Etf => angularity == Angularity::Etf,
            Filter::Btf => angularity == Angularity::Btf,
            Filter::Class(tag) => c.tags().contains(tag),
            Filter::Angles { targets, tol } => profile.matches(targets, *tol),
        }
    }
}

/// Evaluates an angle literal such as `1/3`, `sqrt(5)/3` or `0.2171`.
pub fn parse_angle(s: &str) -> Result<f64> {
    let v = exmex::eval_str::<f64>(s.trim())
        .map_err(|e| Error::InvalidParameters(format!("cannot evaluate angle `{s}`: {e}")))?;
    if !(0.0..=1.0 + tolerance::ANGLE_MATCH).contains(&v) {
        return Err(Error::InvalidParameters(format!("angle `{s}` = {v} is outside [0, 1]")));
    }
    Ok(v)
}

/// Splits a comma list at top-level commas only, so `sqrt(2,)` style
/// mistakes surface as evaluation errors rather than silent splits.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl FromStr for Filter {
    type Err = Error;

    /// `etf`, `btf`, a class name, or `angles=a,b,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(list) = s.strip_prefix("angles=") {
            let targets = split_top_level(list)
                .into_iter()
                .map(parse_angle)
                .collect::<Result<Vec<_>>>()?;
            return Ok(Filter::angles(&targets));
        }
        match s {
            "etf" => Ok(Filter::Etf),
            "btf" => Ok(Filter::Btf),
            _ => CLASS_TAGS
                .iter()
                .find(|t| **t == s)
                .map(|t| Filter::Class(t))
                .ok_or_else(|| {
                    Error::InvalidParameters(format!(
                        "unknown filter `{s}`; use etf, btf, angles=a,b or one of {}",
                        CLASS_TAGS.join(", ")
                    ))
                }),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filter::Etf => f.write_str("etf"),
            Filter::Btf => f.write_str("btf"),
            Filter::Class(t) => f.write_str(t),
            Filter::Angles { targets, .. } => {
                let parts: Vec<String> = targets.iter().map(|t| format!("{t}")).collect();
                write!(f, "angles={}", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchJob {
    pub group: GroupSpec,
    pub m: usize,
    /// All filters must accept a subset for it to count as a match.
    pub filters: Vec<Filter>,
    pub mode: SearchMode,
    /// Worker threads; `0` uses the rayon default.
    pub jobs: usize,
    pub cap: u128,
    /// Keep per-subset records of matches; aggregates are always kept.
    pub keep_records: bool,
    pub chain_node_cap: usize,
}

impl SearchJob {
    pub fn new(group: &GroupSpec, m: usize) -> Self {
        SearchJob {
            group: group.clone(),
            m,
            filters: Vec::new(),
            mode: SearchMode::default(),
            jobs: 0,
            cap: DEFAULT_SUBSET_CAP,
            keep_records: true,
            chain_node_cap: DEFAULT_CHAIN_NODE_CAP,
        }
    }

    pub fn mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn filter(mut self, f: Filter) -> Self {
        self.filters.push(f);
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn keep_records(mut self, keep: bool) -> Self {
        self.keep_records = keep;
        self
    }

    /// Number of subsets the job enumerates.
    pub fn subset_count(&self) -> u128 {
        let n = self.group.order() as u64;
        let m = self.m as u64;
        match self.mode {
            SearchMode::Full => binomial(n, m),
            SearchMode::Reduced => binomial(n.saturating_sub(1), m.saturating_sub(1)),
        }
    }

    pub fn run(&self) -> Result<SearchReport> {
        enumerate_and_classify(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubsetRecord {
    pub subset: Vec<Element>,
    pub tags: Vec<String>,
    pub angularity: Angularity,
    pub profile: AngleProfile,
    pub classification: Classification,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleSetCount {
    pub angles: Vec<f64>,
    #[serde(default)]
    pub symbolic: Vec<Option<String>>,
    pub count: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Aggregates {
    pub subsets: u64,
    pub class_counts: BTreeMap<String, u64>,
    pub angularity_counts: BTreeMap<String, u64>,
    /// Angle sets in ascending order of their rounded values.
    pub angle_sets: Vec<AngleSetCount>,
    /// Biangular tight frames whose generator is not a bidifference set.
    pub btf_without_bidifference: u64,
    /// Subsets where "ETF" and "difference set" disagree; always 0.
    pub etf_difference_set_mismatches: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuntimeStats {
    pub elapsed_ms: f64,
    pub jobs: usize,
    pub blocks: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema: u32,
    pub group: GroupSpec,
    pub m: usize,
    pub mode: SearchMode,
    pub filters: Vec<String>,
    pub total_subsets: u64,
    pub matched: u64,
    /// Matching subsets in colex order, when records are kept.
    pub records: Vec<SubsetRecord>,
    pub all: Aggregates,
    pub matches: Aggregates,
    pub stats: RuntimeStats,
}

impl SearchReport {
    /// Everything except the runtime statistics.
    pub fn same_results(&self, other: &SearchReport) -> bool {
        self.total_subsets == other.total_subsets
            && self.matched == other.matched
            && self.records == other.records
            && self.all == other.all
            && self.matches == other.matches
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// The `k`-subset of `{0, ..., n-1}` with colex rank `r`, ascending.
pub fn colex_unrank(mut r: u128, k: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    let mut hi = n;
    for i in (1..=k).rev() {
        // Largest c < hi with C(c, i) <= r.
        let mut c = hi - 1;
        while binomial(c as u64, i as u64) > r {
            c -= 1;
        }
        out[i - 1] = c;
        r -= binomial(c as u64, i as u64);
        hi = c;
    }
    out
}

pub fn colex_rank(c: &[usize]) -> u128 {
    c.iter()
        .enumerate()
        .map(|(i, &x)| binomial(x as u64, i as u64 + 1))
        .sum()
}

/// Advances to the colex successor; false after the last subset.
pub fn colex_next(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for j in 0..k {
        let limit = if j + 1 < k { c[j + 1] } else { n };
        if c[j] + 1 < limit {
            c[j] += 1;
            for (i, x) in c[..j].iter_mut().enumerate() {
                *x = i;
            }
            return true;
        }
    }
    false
}

#[derive(Default)]
struct PartialAggregates {
    subsets: u64,
    class_counts: BTreeMap<String, u64>,
    angularity_counts: BTreeMap<String, u64>,
    angle_sets: BTreeMap<Vec<i64>, (AngleProfile, u64)>,
    btf_without_bidifference: u64,
    etf_mismatches: u64,
}

impl PartialAggregates {
    fn add(&mut self, c: &Classification, profile: &AngleProfile, angularity: Angularity) {
        self.subsets += 1;
        for t in c.tags() {
            *self.class_counts.entry(t.to_string()).or_default() += 1;
        }
        *self.angularity_counts.entry(angularity.label()).or_default() += 1;
        self.angle_sets
            .entry(angle_key(profile))
            .or_insert_with(|| (profile.clone(), 0))
            .1 += 1;
        if angularity == Angularity::Btf && !c.is_bidifference() {
            self.btf_without_bidifference += 1;
        }
        if (angularity == Angularity::Etf) != c.is_difference_set() {
            self.etf_mismatches += 1;
        }
    }

    fn merge(&mut self, other: PartialAggregates) {
        self.subsets += other.subsets;
        for (k, v) in other.class_counts {
            *self.class_counts.entry(k).or_default() += v;
        }
        for (k, v) in other.angularity_counts {
            *self.angularity_counts.entry(k).or_default() += v;
        }
        for (k, (p, v)) in other.angle_sets {
            self.angle_sets.entry(k).or_insert_with(|| (p, 0)).1 += v;
        }
        self.btf_without_bidifference += other.btf_without_bidifference;
        self.etf_mismatches += other.etf_mismatches;
    }

    fn finish(self, m: usize, exponent: u64) -> Aggregates {
        let angle_sets = self
            .angle_sets
            .into_values()
            .map(|(p, count)| {
                let p = p.with_symbolic(m, exponent);
                AngleSetCount {
                    angles: p.values(),
                    symbolic: p.angles.iter().map(|a| a.symbolic.clone()).collect(),
                    count,
                }
            })
            .collect();
        Aggregates {
            subsets: self.subsets,
            class_counts: self.class_counts,
            angularity_counts: self.angularity_counts,
            angle_sets,
            btf_without_bidifference: self.btf_without_bidifference,
            etf_difference_set_mismatches: self.etf_mismatches,
        }
    }
}

fn angle_key(p: &AngleProfile) -> Vec<i64> {
    p.angles
        .iter()
        .map(|a| (a.value / tolerance::ANGLE_MATCH).round() as i64)
        .collect()
}

#[derive(Default)]
struct BlockResult {
    records: Vec<SubsetRecord>,
    all: PartialAggregates,
    matches: PartialAggregates,
    matched: u64,
}

impl BlockResult {
    fn merge(&mut self, other: BlockResult) {
        self.records.extend(other.records);
        self.all.merge(other.all);
        self.matches.merge(other.matches);
        self.matched += other.matched;
    }
}

/// Enumerates, classifies and profiles every subset of the job.
pub fn enumerate_and_classify(job: &SearchJob) -> Result<SearchReport> {
    let start = Instant::now();
    let g = &job.group;
    let n = g.order();
    let m = job.m;
    if m < 2 || m > n {
        return Err(Error::InvalidParameters(format!("need 2 <= m <= {n}, got m = {m}")));
    }
    let total = job.subset_count();
    if total > job.cap {
        return Err(Error::Capacity { what: "subset count", actual: total, limit: job.cap });
    }
    let ctx = ClassifyContext::new(g).with_chain_node_cap(job.chain_node_cap);

    // In reduced mode enumerate (m-1)-subsets of {1, ..., n-1} and prepend 0.
    let (k, universe, offset) = match job.mode {
        SearchMode::Full => (m, n, 0),
        SearchMode::Reduced => (m - 1, n - 1, 1),
    };

    let run_blocks = |workers: usize| -> Result<(BlockResult, usize)> {
        let per_block = (total / (workers as u128 * 16).max(1)).clamp(1, 4096);
        let blocks = total.div_ceil(per_block) as usize;
        let results: Vec<Result<BlockResult>> = (0..blocks)
            .into_par_iter()
            .map(|b| {
                let lo = b as u128 * per_block;
                let hi = (lo + per_block).min(total);
                process_block(job, &ctx, lo, hi, k, universe, offset)
            })
            .collect();
        let mut merged = BlockResult::default();
        for r in results {
            merged.merge(r?);
        }
        Ok((merged, blocks))
    };

    let (merged, blocks, workers) = if job.jobs == 0 {
        let w = rayon::current_num_threads();
        let (r, b) = run_blocks(w)?;
        (r, b, w)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(job.jobs)
            .build()
            .map_err(|e| Error::InvalidOperation(format!("cannot build thread pool: {e}")))?;
        let (r, b) = pool.install(|| run_blocks(job.jobs))?;
        (r, b, job.jobs)
    };

    let exponent = g.exponent();
    Ok(SearchReport {
        schema: 1,
        group: g.clone(),
        m,
        mode: job.mode,
        filters: job.filters.iter().map(|f| f.to_string()).collect(),
        total_subsets: total as u64,
        matched: merged.matched,
        records: merged.records,
        all: merged.all.finish(m, exponent),
        matches: merged.matches.finish(m, exponent),
        stats: RuntimeStats {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            jobs: workers,
            blocks,
        },
    })
}

fn process_block(
    job: &SearchJob,
    ctx: &ClassifyContext,
    lo: u128,
    hi: u128,
    k: usize,
    universe: usize,
    offset: usize,
) -> Result<BlockResult> {
    let g = &job.group;
    let (n, m) = (g.order(), job.m);
    let mut out = BlockResult::default();
    let mut comb = colex_unrank(lo, k, universe);
    let mut subset = vec![0usize; m];
    for rank in lo..hi {
        if rank > lo {
            colex_next(&mut comb, universe);
        }
        let tail = m - k;
        for (dst, &c) in subset[tail..].iter_mut().zip(&comb) {
            *dst = c + offset;
        }
        let c = ctx.classify_idx(&subset)?;
        let profile = FrameSpec::from_indices(g, &subset)?.angle_profile();
        // Distinct characters are orthogonal, so every harmonic frame is tight.
        let angularity = angularity_of(&profile, n, m, true)?;
        out.all.add(&c, &profile, angularity);
        if job.filters.iter().all(|f| f.accepts(&c, &profile, angularity)) {
            out.matched += 1;
            out.matches.add(&c, &profile, angularity);
            if job.keep_records {
                out.records.push(SubsetRecord {
                    subset: c.subset.clone(),
                    tags: c.tags().into_iter().map(String::from).collect(),
                    angularity,
                    profile,
                    classification: c,
                });
            }
        }
    }
    Ok(out)
}

/// All `m`-subsets of `group` generating biangular tight frames.
pub fn find_btfs(group: &GroupSpec, m: usize, mode: SearchMode) -> Result<SearchReport> {
    SearchJob::new(group, m).mode(mode).filter(Filter::Btf).run()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupMatchCount {
    pub group: GroupSpec,
    pub subsets: u64,
    pub matches: u64,
    /// Matches whose counts take at most two values.
    pub bidifference: u64,
    pub proper_nested_divisible: u64,
    pub difference_sets: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossGroupReport {
    pub schema: u32,
    pub order: u32,
    pub m: usize,
    pub target: Vec<f64>,
    pub tolerance: f64,
    pub groups: Vec<GroupMatchCount>,
}

impl CrossGroupReport {
    pub fn total_matches(&self) -> u64 {
        self.groups.iter().map(|g| g.matches).sum()
    }

    pub fn bidifference_matches(&self) -> u64 {
        self.groups.iter().map(|g| g.bidifference).sum()
    }
}

/// Counts, for every abelian group of the given order, the `m`-subsets
/// (all of them, no translate reduction) whose frames have exactly the
/// target angle set.
pub fn cross_group_angle_match(order: u32, m: usize, target: &[f64], tol: f64, jobs: usize) -> Result<CrossGroupReport> {
    if order > MAX_CROSS_GROUP_ORDER {
        return Err(Error::Capacity {
            what: "group order",
            actual: order as u128,
            limit: MAX_CROSS_GROUP_ORDER as u128,
        });
    }
    let mut targets = target.to_vec();
    targets.sort_by(f64::total_cmp);
    let mut groups = Vec::new();
    for g in abelian_groups_of_order(order)? {
        let report = SearchJob::new(&g, m)
            .mode(SearchMode::Full)
            .filter(Filter::Angles { targets: targets.clone(), tol })
            .jobs(jobs)
            .run()?;
        let count = |pred: fn(&Classification) -> bool| {
            report.records.iter().filter(|r| pred(&r.classification)).count() as u64
        };
        groups.push(GroupMatchCount {
            group: g.clone(),
            subsets: report.total_subsets,
            matches: report.matched,
            bidifference: count(Classification::is_bidifference),
            proper_nested_divisible: count(Classification::is_proper_nested_divisible),
            difference_sets: count(Classification::is_difference_set),
        });
    }
    Ok(CrossGroupReport {
        schema: 1,
        order,
        m,
        target: targets,
        tolerance: tol,
        groups,
    })
}
