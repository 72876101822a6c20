//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every criterion runs the library's verification suite under its runtime
//! budget and cross-checks the headline numbers against a small oracle in
//! this file that computes inner products and difference counts straight
//! from their definitions.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use framelab_core::verify::{run_suite, Suite, SuiteReport, VerifyOptions};

/// Direct evaluation on `Z_{n_1} x ... x Z_{n_k}` with elements as tuples.
mod oracle {
    use super::*;

    pub fn elements(factors: &[u32]) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for &f in factors {
            out = out
                .into_iter()
                .flat_map(|e| (0..f).map(move |x| [e.clone(), vec![x]].concat()))
                .collect();
        }
        out
    }

    /// `|<f_x, f_0>|` for every nonzero `x`.
    pub fn magnitudes(factors: &[u32], set: &[Vec<u32>]) -> Vec<f64> {
        let m = set.len() as f64;
        elements(factors)
            .into_iter()
            .filter(|x| x.iter().any(|&c| c != 0))
            .map(|x| {
                let (mut re, mut im) = (0.0, 0.0);
                for g in set {
                    let theta: f64 = g
                        .iter()
                        .zip(&x)
                        .zip(factors)
                        .map(|((&gi, &xi), &n)| 2.0 * PI * ((gi as u64 * xi as u64) % n as u64) as f64 / n as f64)
                        .sum();
                    re += theta.cos();
                    im += theta.sin();
                }
                (re * re + im * im).sqrt() / m
            })
            .collect()
    }

    /// Distinct magnitudes (merged within `tol`) with multiplicities.
    pub fn angles(factors: &[u32], set: &[Vec<u32>], tol: f64) -> Vec<(f64, usize)> {
        let mut mags = magnitudes(factors, set);
        mags.sort_by(f64::total_cmp);
        let mut out: Vec<(f64, usize)> = Vec::new();
        for v in mags {
            match out.last_mut() {
                Some((a, k)) if v - *a <= tol => *k += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }

    /// Number of ordered pairs `(a, b)`, `a != b`, with `a - b = z`, for each nonzero `z`.
    pub fn difference_counts(factors: &[u32], set: &[Vec<u32>]) -> BTreeMap<Vec<u32>, usize> {
        let mut counts = BTreeMap::new();
        for x in elements(factors).into_iter().filter(|x| x.iter().any(|&c| c != 0)) {
            counts.insert(x, 0);
        }
        for a in set {
            for b in set {
                if a != b {
                    let d: Vec<u32> = a.iter().zip(b).zip(factors).map(|((&x, &y), &n)| (x + n - y) % n).collect();
                    *counts.get_mut(&d).unwrap() += 1;
                }
            }
        }
        counts
    }

    pub fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
        if m == 0 {
            return vec![vec![]];
        }
        if n < m {
            return vec![];
        }
        let mut with: Vec<Vec<usize>> = subsets(n - 1, m - 1);
        for s in &mut with {
            s.push(n - 1);
        }
        let mut out = subsets(n - 1, m);
        out.extend(with);
        out
    }

    pub fn cyclic(set: &[u64]) -> Vec<Vec<u32>> {
        set.iter().map(|&x| vec![x as u32]).collect()
    }

    pub fn residues(p: u64, k: u64) -> Vec<u64> {
        let mut r: Vec<u64> = (1..p).map(|x| (0..k).fold(1, |acc, _| acc * x % p)).collect();
        r.sort_unstable();
        r.dedup();
        r
    }
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn run_timed(suite: Suite, opts: &VerifyOptions) -> (SuiteReport, Duration) {
    let start = Instant::now();
    let report = run_suite(suite, opts).unwrap_or_else(|e| panic!("{suite}: {e}"));
    (report, start.elapsed())
}

/// Library suite, budget and oracle together.
fn judge(suite: Suite, budget: Option<Duration>, opts: &VerifyOptions, oracle: impl FnOnce() -> Result<String, String>) -> Outcome {
    let (report, elapsed) = run_timed(suite, opts);
    let mut problems: Vec<String> = report.failures().map(|a| format!("{} [{}]", a.name, a.detail)).collect();
    if let Some(b) = budget {
        if elapsed > b {
            problems.push(format!("took {elapsed:.2?}, budget {b:?}"));
        }
    }
    let oracle_note = match oracle() {
        Ok(note) => note,
        Err(e) => {
            problems.push(format!("oracle: {e}"));
            String::new()
        }
    };
    let timing = match budget {
        Some(b) => format!("{elapsed:.3?} of {b:?}"),
        None => format!("{elapsed:.3?}"),
    };
    let detail = if problems.is_empty() {
        format!("{} assertions, {timing}; {oracle_note}", report.assertions.len())
    } else {
        format!("{timing}; {}", problems.join("; "))
    };
    Outcome { passed: problems.is_empty(), detail }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same_values(got: &[(f64, usize)], want: &[f64], tol: f64) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|((g, _), w)| (g - w).abs() <= tol)
}

fn exhaustion_oracle() -> Result<String, String> {
    let target = [1.0 / 3.0, 5f64.sqrt() / 3.0];
    let mut found = Vec::new();
    for factors in [vec![2u32, 2, 2], vec![2, 4], vec![8]] {
        let elems = oracle::elements(&factors);
        let mut matches = 0;
        for idx in oracle::subsets(8, 3) {
            let set: Vec<Vec<u32>> = idx.iter().map(|&i| elems[i].clone()).collect();
            if same_values(&oracle::angles(&factors, &set, 1e-7), &target, 1e-7) {
                matches += 1;
                let distinct = oracle::difference_counts(&factors, &set).into_values().collect::<std::collections::BTreeSet<_>>();
                ensure(distinct.len() > 2, || format!("{set:?} in {factors:?} is a bidifference set"))?;
            }
        }
        found.push(matches);
    }
    ensure(found == [0, 32, 16], || format!("oracle counts {found:?}"))?;
    Ok("oracle counts 0/32/16".into())
}

fn z6_oracle() -> Result<String, String> {
    let set = oracle::cyclic(&[0, 1, 3]);
    let angles = oracle::angles(&[6], &set, 1e-7);
    ensure(same_values(&angles, &[1.0 / 3.0, 1.0 / 3f64.sqrt()], 1e-10), || format!("{angles:?}"))?;
    ensure(angles[0].1 == 3 && angles[1].1 == 2, || format!("multiplicities {angles:?}"))?;
    // Tight-frame identity with the counted multiplicities.
    let lhs: f64 = angles.iter().map(|(a, k)| *k as f64 * a * a).sum();
    ensure((lhs - 1.0).abs() < 1e-10, || format!("sum tau alpha^2 = {lhs}"))?;
    Ok("oracle angles 1/3 x3, 1/sqrt(3) x2".into())
}

fn z9_oracle() -> Result<String, String> {
    let set = oracle::cyclic(&[0, 1, 3, 4]);
    let counts = oracle::difference_counts(&[9], &set);
    let lambda2: Vec<u32> = counts.iter().filter(|(_, &c)| c == 2).map(|(x, _)| x[0]).collect();
    let mu1 = counts.values().filter(|&&c| c == 1).count();
    ensure(lambda2 == [1, 3, 6, 8] && mu1 == 4, || format!("counts {counts:?}"))?;
    let angles = oracle::angles(&[9], &set, 1e-7);
    ensure(angles.len() == 4, || format!("{angles:?}"))?;
    Ok("oracle: lambda=2 on {1,3,6,8}, mu=1 elsewhere, 4 angles".into())
}

fn paley_oracle() -> Result<String, String> {
    for p in [13u64, 17, 29, 37, 41] {
        let set = oracle::cyclic(&oracle::residues(p, 2));
        let angles = oracle::angles(&[p as u32], &set, 1e-7);
        let r = (p as f64).sqrt();
        ensure(same_values(&angles, &[1.0 / (r + 1.0), 1.0 / (r - 1.0)], 1e-9), || format!("p = {p}: {angles:?}"))?;
    }
    for p in [7u64, 11, 19, 23] {
        let set = oracle::cyclic(&oracle::residues(p, 2));
        let counts = oracle::difference_counts(&[p as u32], &set);
        let lambda = (p as usize - 3) / 4;
        ensure(counts.values().all(|&c| c == lambda), || format!("p = {p} is not a difference set"))?;
    }
    Ok("oracle angles for 5 primes, 4 difference sets".into())
}

fn gauss_oracle() -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for p in (3u64..=97).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)) {
        let squares = oracle::residues(p, 2);
        for a in 1..p {
            let (re, im) = (0..p).fold((0.0, 0.0), |(re, im), x| {
                let t = 2.0 * PI * (a * x * x % p) as f64 / p as f64;
                (re + t.cos(), im + t.sin())
            });
            let chi = if squares.binary_search(&a).is_ok() { 1.0 } else { -1.0 };
            let r = (p as f64).sqrt();
            let (cre, cim) = if p % 4 == 1 { (chi * r, 0.0) } else { (0.0, chi * r) };
            worst = worst.max(((re - cre).powi(2) + (im - cim).powi(2)).sqrt());
        }
    }
    ensure(worst <= 1e-9, || format!("oracle deviation {worst:e}"))?;
    Ok(format!("oracle max deviation {worst:.1e}"))
}

fn quartic_oracle() -> Result<String, String> {
    for p in [13u64, 29, 37, 53, 61] {
        let r4 = oracle::residues(p, 4);
        let r2 = oracle::residues(p, 2);
        // -1 is a square but not a fourth power; -2 is neither.
        ensure(r2.contains(&(p - 1)) && !r4.contains(&(p - 1)), || format!("p = {p}: -1"))?;
        ensure(!r2.contains(&(p - 2)), || format!("p = {p}: -2"))?;
        let angles = oracle::angles(&[p as u32], &oracle::cyclic(&r4), 1e-7);
        let half = (p as usize - 1) / 2;
        ensure(angles.len() == 1 || angles.iter().all(|a| a.1 == half), || format!("p = {p}: {angles:?}"))?;
    }
    Ok("oracle cosets of -1, -2 and (p-1)/2 multiplicities".into())
}

fn quartic_special_oracle() -> Result<String, String> {
    let set = oracle::cyclic(&oracle::residues(37, 4));
    let counts = oracle::difference_counts(&[37], &set);
    ensure(set.len() == 9 && counts.values().all(|&c| c == 2), || "p = 37 is not a (37,9,2) set".into())?;
    let set = oracle::cyclic(&oracle::residues(29, 4));
    let counts = oracle::difference_counts(&[29], &set);
    let ones = counts.values().filter(|&&c| c == 1).count();
    let twos = counts.values().filter(|&&c| c == 2).count();
    ensure(set.len() == 7 && ones == 14 && twos == 14, || format!("p = 29 counts {ones}/{twos}"))?;
    let r = 29f64.sqrt();
    let want = [(88.0 - 8.0 * r).sqrt() / 28.0, (88.0 + 8.0 * r).sqrt() / 28.0];
    let angles = oracle::angles(&[29], &set, 1e-7);
    ensure(same_values(&angles, &want, 1e-8), || format!("p = 29 angles {angles:?}"))?;
    Ok("oracle (37,9,2) and (29,7,1,14)".into())
}

fn etf_oracle() -> Result<String, String> {
    // Independent spot check on the cyclic groups of order <= 10.
    let mut agreements = 0;
    for n in 2..=10u32 {
        for m in 2..=n as usize {
            for idx in oracle::subsets(n as usize, m) {
                let set: Vec<Vec<u32>> = idx.iter().map(|&i| vec![i as u32]).collect();
                let angles = oracle::angles(&[n], &set, 1e-7);
                let welch = ((n as f64 - m as f64) / (m as f64 * (n as f64 - 1.0))).sqrt();
                let etf = angles.len() == 1 && (angles[0].0 - welch).abs() <= 1e-7;
                let distinct: std::collections::BTreeSet<usize> = oracle::difference_counts(&[n], &set).into_values().collect();
                ensure(etf == (distinct.len() == 1), || format!("Z{n} {idx:?}"))?;
                agreements += 1;
            }
        }
    }
    Ok(format!("oracle agrees on {agreements} cyclic subsets"))
}

fn main() -> ExitCode {
    // Warm up lazily initialised state so timings reflect steady-state work.
    let opts = VerifyOptions::default();
    let _ = run_suite(Suite::Z6, &opts);

    let secs = Duration::from_secs_f64;
    let outcomes: Vec<(&str, Outcome)> = vec![
        ("1 exhaustion over groups of order 8", judge(Suite::ExhaustionOrder8, Some(secs(1.0)), &opts, exhaustion_oracle)),
        ("2 Z6 divisible difference set", judge(Suite::Z6, Some(secs(0.1)), &opts, z6_oracle)),
        ("3 Z9 bidifference set, 4-angular", judge(Suite::Z9, Some(secs(0.1)), &opts, z9_oracle)),
        ("4 ETF iff difference set, order <= 10", judge(Suite::EtfDs, Some(secs(30.0)), &opts, etf_oracle)),
        ("5 Paley family", judge(Suite::Paley, Some(secs(5.0)), &opts, paley_oracle)),
        ("6 Gauss sums", judge(Suite::Gauss, Some(secs(5.0)), &opts, gauss_oracle)),
        ("7 quartic residues", judge(Suite::Quartic, Some(secs(10.0)), &opts, quartic_oracle)),
        ("8 quartic special cases", judge(Suite::QuarticSpecial, None, &opts, quartic_special_oracle)),
        ("9 modulation identities", judge(Suite::Modulation, None, &opts, || Ok(format!("{} random frames", opts.samples)))),
        ("10 table consistency", judge(Suite::Tables, None, &opts, || Ok(String::new()))),
        ("11 property suites", judge(Suite::Properties, None, &opts, || Ok(String::new()))),
    ];

    let mut failed = 0;
    for (name, o) in &outcomes {
        println!("{} criterion {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail.trim_end_matches("; "));
        failed += usize::from(!o.passed);
    }
    println!("{} of {} criteria pass", outcomes.len() - failed, outcomes.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
