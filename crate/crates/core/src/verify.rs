//! Named verification suites. Each suite recomputes a known result from
//! scratch and reports one assertion per checked fact.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::difference::{classify, pds_zero_toggle, translate, Classification, ClassifyContext};
use crate::error::{Error, Result};
use crate::group::{abelian_groups_of_order, Element, GroupSpec};
use crate::harmonic::{angularity_of, btf_multiplicities_from_angles, Angularity, FrameSpec};
use crate::number_theory::{
    gauss_sum, half_gauss_sum, is_prime, paley_pds, quartic_coset_decomposition, quartic_gaussian_ds,
    quartic_special_cases, ExpectedQuartic,
};
use crate::predictions::{dds_angles, gaussian_angles, ndds_angles, pds_angles, quartic_family_angles};
use crate::search::{colex_next, colex_unrank, cross_group_angle_match, Filter, SearchJob, SearchMode};
use crate::tables::check_all;
use crate::tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    ExhaustionOrder8,
    Z6,
    Z9,
    EtfDs,
    Paley,
    Gauss,
    Quartic,
    QuarticSpecial,
    Modulation,
    Tables,
    Predictions,
    Properties,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::ExhaustionOrder8,
        Suite::Z6,
        Suite::Z9,
        Suite::EtfDs,
        Suite::Paley,
        Suite::Gauss,
        Suite::Quartic,
        Suite::QuarticSpecial,
        Suite::Modulation,
        Suite::Tables,
        Suite::Predictions,
        Suite::Properties,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ExhaustionOrder8 => "exhaustion-order8",
            Suite::Z6 => "z6",
            Suite::Z9 => "z9",
            Suite::EtfDs => "etf-ds",
            Suite::Paley => "paley",
            Suite::Gauss => "gauss",
            Suite::Quartic => "quartic",
            Suite::QuarticSpecial => "quartic-special",
            Suite::Modulation => "modulation",
            Suite::Tables => "tables",
            Suite::Predictions => "predictions",
            Suite::Properties => "properties",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::InvalidParameters(format!("unknown suite `{s}`; use all or one of {}", names.join(", ")))
            })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// With `set`, restricts the modulation suite to one frame.
    pub group: Option<GroupSpec>,
    pub set: Option<Vec<Element>>,
    /// Random frames for the modulation suite.
    pub samples: usize,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            group: None,
            set: None,
            samples: 200,
            seed: 0x5eed,
            jobs: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub passed: bool,
    pub elapsed_ms: f64,
    pub assertions: Vec<Assertion>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.passed)
    }
}

#[derive(Default)]
struct Checks(Vec<Assertion>);

impl Checks {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Assertion { name: name.into(), passed, detail: detail.into() });
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut c = Checks::default();
    match suite {
        Suite::ExhaustionOrder8 => exhaustion_order8(&mut c, opts)?,
        Suite::Z6 => z6(&mut c)?,
        Suite::Z9 => z9(&mut c)?,
        Suite::EtfDs => etf_ds(&mut c, opts)?,
        Suite::Paley => paley(&mut c)?,
        Suite::Gauss => gauss(&mut c)?,
        Suite::Quartic => quartic(&mut c)?,
        Suite::QuarticSpecial => quartic_special(&mut c)?,
        Suite::Modulation => modulation(&mut c, opts)?,
        Suite::Tables => tables(&mut c),
        Suite::Predictions => predictions(&mut c)?,
        Suite::Properties => properties(&mut c, opts)?,
    }
    Ok(SuiteReport {
        schema: 1,
        suite: suite.name().into(),
        passed: c.0.iter().all(|a| a.passed),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        assertions: c.0,
    })
}

pub fn run_all(opts: &VerifyOptions) -> Result<Vec<SuiteReport>> {
    Suite::ALL.iter().map(|&s| run_suite(s, opts)).collect()
}

fn group(s: &str) -> GroupSpec {
    s.parse().expect("built-in group spec")
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn exhaustion_order8(c: &mut Checks, opts: &VerifyOptions) -> Result<()> {
    let target = [1.0 / 3.0, 5f64.sqrt() / 3.0];
    let report = cross_group_angle_match(8, 3, &target, tolerance::ANGLE_MATCH, opts.jobs)?;
    for (name, expected) in [("Z2xZ2xZ2", 0u64), ("Z2xZ4", 32), ("Z8", 16)] {
        let found = report.groups.iter().find(|g| g.group.to_string() == name);
        let got = found.map(|g| g.matches);
        c.check(
            format!("{name}: {expected} subsets with angles {{1/3, sqrt(5)/3}}"),
            got == Some(expected),
            format!("found {got:?} of {} subsets", found.map_or(0, |g| g.subsets)),
        );
    }
    // Recheck each match individually for the (8, 3, 3) chain.
    let mut all_nested = true;
    let mut any_bidifference = false;
    for g in abelian_groups_of_order(8)? {
        let r = SearchJob::new(&g, 3)
            .mode(SearchMode::Full)
            .filter(Filter::angles(&target))
            .jobs(opts.jobs)
            .run()?;
        for rec in &r.records {
            let cl = &rec.classification;
            let ok = cl.nested_divisible.as_ref().is_some_and(|ch| ch.proper && ch.t == 3)
                && cl.n == 8
                && cl.m == 3;
            all_nested &= ok;
            any_bidifference |= cl.is_bidifference();
        }
    }
    c.check("every match is a proper (8,3,3)-nested divisible difference set", all_nested, "");
    c.check("no match is a bidifference set", !any_bidifference, format!("bidifference matches: {}", report.bidifference_matches()));
    Ok(())
}

fn z6(c: &mut Checks) -> Result<()> {
    let g = group("Z6");
    let s = g.parse_subset("0,1,3")?;
    let cl = classify(&g, &s)?;
    let d = cl.divisible.as_ref();
    c.check(
        "{0,1,3} is a (6,3,2,2,1)-divisible difference set",
        d.is_some_and(|d| (d.n, d.m, d.l, d.lambda, d.mu) == (6, 3, 2, 2, 1)),
        format!("{d:?}"),
    );
    let profile = FrameSpec::new(&g, &s)?.angle_profile();
    let pred = dds_angles(6, 3, 2, 2, 1)?;
    let gap = max_gap(&profile.values(), &pred.sorted_values());
    c.check("brute-force angles {1/3, 1/sqrt(3)} match the divisible predictor", gap <= 1e-10, format!("max gap {gap:e}"));
    c.check(
        "brute-force angles equal 1/3 and 1/sqrt(3)",
        max_gap(&profile.values(), &[1.0 / 3.0, 1.0 / 3f64.sqrt()]) <= 1e-10,
        format!("{:?}", profile.values()),
    );
    let mults = profile.multiplicities();
    c.check("counted multiplicities: 3 for 1/3, 2 for 1/sqrt(3)", mults == vec![3, 2], format!("{mults:?}"));
    let (t1, t2) = btf_multiplicities_from_angles(6, 3, 1.0 / 3.0, 1.0 / 3f64.sqrt())?;
    c.check("multiplicities forced by the tight-frame identity agree", (t1, t2) == (3, 2), format!("({t1}, {t2})"));
    c.check(
        "stated tau_1 = n/l disagreement is flagged",
        pred.multiplicity_note.is_some() && pred.stated_multiplicities == Some(vec![3, 2]) && pred.multiplicities() == Some(vec![2, 3]),
        pred.multiplicity_note.clone().unwrap_or_default(),
    );
    Ok(())
}

fn z9(c: &mut Checks) -> Result<()> {
    let g = group("Z9");
    let s = g.parse_subset("0,1,3,4")?;
    let cl = classify(&g, &s)?;
    let bd = cl.bidifference.iter().find(|b| b.lambda == 2 && b.mu == 1);
    c.check(
        "{0,1,3,4} is a bidifference set with (n,m,lambda,mu) = (9,4,2,1)",
        cl.is_proper_bidifference() && bd.is_some_and(|b| b.n == 9 && b.m == 4),
        format!("{:?}", cl.bidifference.iter().map(|b| (b.n, b.m, b.l, b.lambda, b.mu)).collect::<Vec<_>>()),
    );
    c.check(
        "|A| = 5 from the difference counts (the example's l = 4 does not satisfy the counting identity)",
        bd.is_some_and(|b| b.l == 5 && 4 * 3 == 2 * (b.l - 1) + (9 - b.l)),
        format!("l = {:?}", bd.map(|b| b.l)),
    );
    let frame = FrameSpec::new(&g, &s)?;
    let profile = frame.angle_profile();
    let ang = angularity_of(&profile, 9, 4, frame.verify_tightness()?.tight)?;
    c.check("the frame is 4-angular, not biangular", ang == Angularity::Angular { d: 4 }, format!("{} angles {:?}", ang.label(), profile.values()));
    Ok(())
}

fn etf_ds(c: &mut Checks, opts: &VerifyOptions) -> Result<()> {
    let mut subsets = 0u64;
    let mut mismatches = 0u64;
    let mut etfs = 0u64;
    for n in 2..=10u32 {
        for g in abelian_groups_of_order(n)? {
            for m in 2..=n as usize {
                let r = SearchJob::new(&g, m)
                    .mode(SearchMode::Full)
                    .keep_records(false)
                    .jobs(opts.jobs)
                    .run()?;
                subsets += r.total_subsets;
                mismatches += r.all.etf_difference_set_mismatches;
                etfs += r.all.angularity_counts.get("ETF").copied().unwrap_or(0);
            }
        }
    }
    c.check(
        "ETF iff difference set, every subset with 2 <= m <= n of every abelian group of order <= 10",
        mismatches == 0,
        format!("{subsets} subsets, {etfs} ETFs, {mismatches} disagreements"),
    );
    Ok(())
}

fn paley(c: &mut Checks) -> Result<()> {
    for p in [13u64, 17, 29, 37, 41] {
        let ps = paley_pds(p)?;
        let pd = ps.classification.partial.as_ref();
        c.check(
            format!("p = {p}: R2 is a ({p},{},{},{}) partial difference set", (p - 1) / 2, (p - 5) / 4, (p - 1) / 4),
            ps.verified,
            format!("{pd:?}"),
        );
        let g = GroupSpec::cyclic(p as u32)?;
        let set: Vec<Element> = ps.set.iter().map(|&x| Element::from(x as u32)).collect();
        let values = FrameSpec::new(&g, &set)?.angle_profile().values();
        let r = (p as f64).sqrt();
        let gap = max_gap(&values, &[1.0 / (r + 1.0), 1.0 / (r - 1.0)]);
        c.check(format!("p = {p}: angles 1/(sqrt(p) +- 1)"), gap <= 1e-9, format!("max gap {gap:e}"));
    }
    for p in [7u64, 11, 19, 23] {
        let ps = paley_pds(p)?;
        c.check(
            format!("p = {p}: R2 is a ({p},{},{}) difference set", (p - 1) / 2, (p - 3) / 4),
            ps.verified,
            format!("{:?}", ps.classification.difference_set),
        );
        let g = GroupSpec::cyclic(p as u32)?;
        let set: Vec<Element> = ps.set.iter().map(|&x| Element::from(x as u32)).collect();
        let ang = FrameSpec::new(&g, &set)?.classify_angularity()?;
        c.check(format!("p = {p}: the frame is an ETF"), ang == Angularity::Etf, ang.label());
    }
    Ok(())
}

fn odd_primes_to(limit: u64) -> impl Iterator<Item = u64> {
    (3..=limit).filter(|&p| is_prime(p))
}

fn gauss(c: &mut Checks) -> Result<()> {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for p in odd_primes_to(97) {
        for a in 1..p as i64 {
            worst = worst.max(gauss_sum(a, p)?.deviation());
            count += 1;
        }
    }
    c.check("quadratic Gauss sums equal their closed forms for odd p <= 97", worst <= tolerance::GAUSS_SUM, format!("{count} sums, max deviation {worst:e}"));

    // Four cases: p mod 4 in {1, 3} times (a/p) in {1, -1}.
    let mut cases = [(0usize, 0.0f64); 4];
    for p in odd_primes_to(97) {
        for a in 1..p as i64 {
            let h = half_gauss_sum(a, p)?;
            let square = crate::number_theory::legendre(a, p)? == 1;
            let k = 2 * usize::from(p % 4 == 3) + usize::from(!square);
            cases[k].0 += 1;
            cases[k].1 = cases[k].1.max(h.deviation());
        }
    }
    let labels = ["p = 1 mod 4, a square", "p = 1 mod 4, a non-square", "p = 3 mod 4, a square", "p = 3 mod 4, a non-square"];
    for (label, (n, dev)) in labels.iter().zip(cases) {
        c.check(format!("half Gauss sum, {label}"), n > 0 && dev <= tolerance::GAUSS_SUM, format!("{n} sums, max deviation {dev:e}"));
    }
    Ok(())
}

const QUARTIC_PRIMES: [u64; 5] = [13, 29, 37, 53, 61];

fn quartic(c: &mut Checks) -> Result<()> {
    for p in QUARTIC_PRIMES {
        let q = quartic_gaussian_ds(p, false)?;
        c.check(
            format!("p = {p}: R4 is a Gaussian difference set with lambda + mu = (p-5)/8"),
            q.classification.gaussian.is_some() && q.lambda + q.mu == (p - 5) / 8,
            format!("lambda = {}, mu = {}", q.lambda, q.mu),
        );
        let cosets = quartic_coset_decomposition(p)?;
        c.check(
            format!("p = {p}: -1 in 4R4 and -2 in 8R4"),
            cosets.generator == 2 && cosets.coset_of(p - 1) == Some(2) && cosets.coset_of(p - 2) == Some(3),
            format!("cosets of -1, -2: {:?}, {:?}", cosets.coset_of(p - 1), cosets.coset_of(p - 2)),
        );
        let g = GroupSpec::cyclic(p as u32)?;
        let set: Vec<Element> = q.set.iter().map(|&x| Element::from(x as u32)).collect();
        let profile = FrameSpec::new(&g, &set)?.angle_profile();
        let pred = gaussian_angles(p, set.len() as u64, q.lambda, q.mu)?;
        let gap = max_gap(&profile.values(), &pred.sorted_values());
        if pred.etf {
            c.check(format!("p = {p}: lambda = mu, equiangular frame at the Welch bound"), gap <= tolerance::PREDICTION, format!("max gap {gap:e}"));
        } else {
            let half = (p as usize - 1) / 2;
            c.check(
                format!("p = {p}: angles match the Gaussian predictor, multiplicities (p-1)/2"),
                gap <= tolerance::PREDICTION && profile.multiplicities() == vec![half, half],
                format!("max gap {gap:e}, multiplicities {:?}", profile.multiplicities()),
            );
        }
    }
    Ok(())
}

fn quartic_special(c: &mut Checks) -> Result<()> {
    let s37 = quartic_special_cases(37)?;
    c.check(
        "p = 37 = 4*3^2 + 1: R4 is a (37,9,2) difference set",
        s37.cases.iter().any(|k| !k.with_zero && k.verified && k.implied == ExpectedQuartic::DifferenceSet { n: 37, m: 9, lambda: 2 }),
        format!("{:?}", s37.cases.iter().map(|k| (&k.condition, k.verified)).collect::<Vec<_>>()),
    );
    let s29 = quartic_special_cases(29)?;
    c.check(
        "p = 29 = 25 + 4: R4 is a (29,7,1,14) almost difference set",
        s29.cases.iter().any(|k| !k.with_zero && k.verified && k.implied == ExpectedQuartic::AlmostDifferenceSet { n: 29, m: 7, lambda: 1, t: 14 }),
        format!("{:?}", s29.cases.iter().map(|k| (&k.condition, k.verified)).collect::<Vec<_>>()),
    );
    let g = group("Z29");
    let r4: Vec<Element> = crate::number_theory::residues(29, 4)?
        .elements
        .iter()
        .map(|&x| Element::from(x as u32))
        .collect();
    let values = FrameSpec::new(&g, &r4)?.angle_profile().values();
    let r = 29f64.sqrt();
    let expected = sorted(vec![(88.0 - 8.0 * r).sqrt() / 28.0, (88.0 + 8.0 * r).sqrt() / 28.0]);
    let gap = max_gap(&values, &expected);
    c.check("p = 29: brute-force angles equal (1/28) sqrt(88 +- 8 sqrt(29))", gap <= tolerance::PREDICTION, format!("max gap {gap:e}"));
    let pred = quartic_family_angles(29, false)?;
    let gap = max_gap(&values, &pred.sorted_values());
    c.check("p = 29: quartic family predictor agrees", gap <= tolerance::PREDICTION, format!("max gap {gap:e}"));
    Ok(())
}

fn modulation(c: &mut Checks, opts: &VerifyOptions) -> Result<()> {
    if let (Some(g), Some(s)) = (&opts.group, &opts.set) {
        let r = FrameSpec::new(g, s)?.verify_modulation_identities()?;
        c.check(format!("{g} {}: modulation identities", GroupSpec::format_subset(s)), r.passed, format!("{r:?}"));
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut failures = Vec::new();
    let mut worst = [0.0f64; 4];
    for _ in 0..opts.samples {
        let n = rng.gen_range(2..=32u32);
        let groups = abelian_groups_of_order(n)?;
        let g = &groups[rng.gen_range(0..groups.len())];
        let m = rng.gen_range(1..=n as usize);
        let idx = sample(&mut rng, n as usize, m).into_vec();
        let frame = FrameSpec::from_indices(g, &idx)?;
        let r = frame.verify_modulation_identities()?;
        worst[0] = worst[0].max(r.hs_orthogonality_max);
        worst[1] = worst[1].max(r.fourier_inversion_max);
        worst[2] = worst[2].max(r.angle_encoding_max);
        worst[3] = worst[3].max(r.closed_form_max);
        if !r.passed {
            failures.push(format!("{g} {}", GroupSpec::format_subset(frame.generators())));
        }
    }
    c.check(
        format!("{} random frames with n <= 32: HS orthogonality, Fourier inversion, angle encoding", opts.samples),
        failures.is_empty(),
        format!(
            "max residuals: orthogonality {:e}, inversion {:e}, encoding {:e}, closed form {:e}; failures {:?}",
            worst[0], worst[1], worst[2], worst[3], failures
        ),
    );
    Ok(())
}

fn tables(c: &mut Checks) {
    let checks = check_all();
    let mut rows: Vec<(String, usize, usize)> = Vec::new();
    for (row, chk) in &checks {
        match rows.iter_mut().find(|r| r.0 == row.id()) {
            Some(r) => {
                r.1 += usize::from(chk.passed());
                r.2 += 1;
            }
            None => rows.push((row.id(), usize::from(chk.passed()), 1)),
        }
    }
    for (id, passed, total) in rows {
        let detail: Vec<String> = checks
            .iter()
            .filter(|(r, _)| r.id() == id)
            .map(|(_, k)| format!("{:?}: {:?} dev {:?}", k.sample, k.status, k.max_deviation))
            .collect();
        c.check(format!("table row {id}: at least two instantiations pass"), passed >= 2 && passed == total, detail.join("; "));
    }
}

fn predictions(c: &mut Checks) -> Result<()> {
    let mut check_pred = |label: String, g: &GroupSpec, set: &[Element], pred: crate::predictions::AnglePrediction| -> Result<()> {
        let profile = FrameSpec::new(g, set)?.angle_profile();
        let gap = pred.deviation_from(&profile).unwrap_or(f64::INFINITY);
        let identity = pred.tight_identity_residual().map_or(0.0, f64::abs);
        c.check(
            label,
            gap <= tolerance::PREDICTION && identity <= 1e-10,
            format!("max gap {gap:e}, tight identity residual {identity:e}"),
        );
        Ok(())
    };
    let z6 = group("Z6");
    check_pred("Z6 {0,1,3}: divisible predictor".into(), &z6, &z6.parse_subset("0,1,3")?, dds_angles(6, 3, 2, 2, 1)?)?;

    for p in [5u64, 13, 17, 29, 37, 41, 53, 61] {
        let ps = paley_pds(p)?;
        let g = GroupSpec::cyclic(p as u32)?;
        let set: Vec<Element> = ps.set.iter().map(|&x| Element::from(x as u32)).collect();
        let pd = ps.classification.partial.clone().ok_or_else(|| Error::InvalidOperation(format!("R2 of {p} is not partial")))?;
        let pred = pds_angles(p, pd.m as u64, pd.lambda as u64, pd.mu as u64, pd.zero_in_s)?;
        check_pred(format!("Paley p = {p}: partial predictor"), &g, &set, pred)?;
    }

    for p in QUARTIC_PRIMES {
        let q = quartic_gaussian_ds(p, false)?;
        let g = GroupSpec::cyclic(p as u32)?;
        let set: Vec<Element> = q.set.iter().map(|&x| Element::from(x as u32)).collect();
        check_pred(format!("R4 of {p}: Gaussian predictor"), &g, &set, gaussian_angles(p, set.len() as u64, q.lambda, q.mu)?)?;
    }

    let g = group("Z2xZ4");
    let s = g.parse_subset("(0,0),(1,0),(0,1)")?;
    let chain = classify(&g, &s)?
        .nested_divisible
        .ok_or_else(|| Error::InvalidOperation("Z2xZ4 example has no chain".into()))?;
    check_pred("Z2xZ4 nested divisible predictor".into(), &g, &s, ndds_angles(&chain, 3)?)?;
    Ok(())
}

/// Fields of a classification that depend only on the difference counts.
fn translation_invariant_part(cl: &Classification) -> Classification {
    let mut cl = cl.clone();
    cl.subset.clear();
    cl.partial = None;
    cl.reversible = false;
    cl.regular = false;
    cl
}

fn properties(c: &mut Checks, opts: &VerifyOptions) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x9e37);
    let mut frames = 0u64;
    let mut translation_failures = Vec::new();
    let mut equidist_worst: f64 = 0.0;
    let mut identity_worst: f64 = 0.0;
    let mut pds_found = 0u64;
    let mut pds_irreversible = Vec::new();
    let mut toggles = 0u64;
    let mut toggle_failures = Vec::new();

    let mut visit = |g: &GroupSpec, ctx: &ClassifyContext, idx: &[usize], rng: &mut ChaCha8Rng| -> Result<()> {
        let n = g.order();
        let cl = ctx.classify_idx(idx)?;
        let frame = FrameSpec::from_indices(g, idx)?;
        frames += 1;

        let shift = g.element(rng.gen_range(0..n));
        let moved = translate(g, &cl.subset, &shift)?;
        let cl2 = ctx.classify(&moved)?;
        if translation_invariant_part(&cl) != translation_invariant_part(&cl2) {
            translation_failures.push(format!("{g} {} + {shift}", GroupSpec::format_subset(&cl.subset)));
        }

        equidist_worst = equidist_worst.max(frame.equidistribution_deviation()?);
        let profile = frame.angle_profile();
        identity_worst = identity_worst.max(profile.tight_identity_residual(n, idx.len()).abs());

        if let Some(pd) = cl.partial.as_ref().filter(|p| p.proper) {
            pds_found += 1;
            if !pd.reversible {
                pds_irreversible.push(GroupSpec::format_subset(&cl.subset));
            }
            if pd.reversible && (!pd.zero_in_s || (pd.lambda >= 2 && idx.len() > 2)) {
                toggles += 1;
                if let Err(e) = pds_zero_toggle(g, &cl.subset, pd) {
                    toggle_failures.push(format!("{}: {e}", GroupSpec::format_subset(&cl.subset)));
                }
            }
        }
        Ok(())
    };

    // Every subset containing 0 of every abelian group of order <= 12.
    for n in 2..=12u32 {
        for g in abelian_groups_of_order(n)? {
            let ctx = ClassifyContext::new(&g);
            let n = n as usize;
            for m in 2..n {
                let mut comb = colex_unrank(0, m - 1, n - 1);
                loop {
                    let idx: Vec<usize> = std::iter::once(0).chain(comb.iter().map(|x| x + 1)).collect();
                    visit(&g, &ctx, &idx, &mut rng)?;
                    if !colex_next(&mut comb, n - 1) {
                        break;
                    }
                }
            }
        }
    }
    // Paley sets and their zero-augmented versions give larger partial difference sets.
    for p in [13u64, 17, 29, 37, 41, 53, 61] {
        let g = GroupSpec::cyclic(p as u32)?;
        let ctx = ClassifyContext::new(&g);
        let ps = paley_pds(p)?;
        let idx: Vec<usize> = ps.set.iter().map(|&x| x as usize).collect();
        visit(&g, &ctx, &idx, &mut rng)?;
        let with0: Vec<usize> = std::iter::once(0).chain(idx).collect();
        visit(&g, &ctx, &with0, &mut rng)?;
    }

    c.check(
        "classification is translation invariant (partial, reversible and regular flags excluded)",
        translation_failures.is_empty(),
        format!("{frames} subsets; failures {:?}", &translation_failures[..translation_failures.len().min(5)]),
    );
    c.check("every harmonic frame is equidistributed", equidist_worst <= 1e-9, format!("max spread {equidist_worst:e}"));
    c.check("tight-frame identity sum tau alpha^2 = (n-m)/m on every profile", identity_worst <= tolerance::TIGHT_IDENTITY, format!("max residual {identity_worst:e}"));
    c.check("every proper partial difference set is reversible", pds_found > 0 && pds_irreversible.is_empty(), format!("{pds_found} found; irreversible {pds_irreversible:?}"));
    c.check("zero toggle (n, m +- 1, lambda +- 2, mu) re-verified by reclassification", toggles > 0 && toggle_failures.is_empty(), format!("{toggles} toggles; failures {toggle_failures:?}"));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn fast_suites_pass() {
        let opts = VerifyOptions { samples: 10, ..Default::default() };
        for s in [Suite::ExhaustionOrder8, Suite::Z6, Suite::Z9, Suite::Paley, Suite::QuarticSpecial, Suite::Tables, Suite::Modulation] {
            let r = run_suite(s, &opts).unwrap();
            assert!(r.passed, "{}: {:?}", s, r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn slow_suites_pass() {
        let opts = VerifyOptions::default();
        for s in [Suite::EtfDs, Suite::Gauss, Suite::Quartic, Suite::Predictions, Suite::Properties] {
            let r = run_suite(s, &opts).unwrap();
            assert!(r.passed, "{}: {:?}", s, r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn single_frame_modulation() {
        let g = group("Z6");
        let opts = VerifyOptions {
            set: Some(g.parse_subset("0,1,3").unwrap()),
            group: Some(g),
            ..Default::default()
        };
        let r = run_suite(Suite::Modulation, &opts).unwrap();
        assert!(r.passed);
        assert_eq!(r.assertions.len(), 1);
    }
}
