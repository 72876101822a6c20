//! JSON, CSV and plain-text rendering of command results.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::Context;
use clap::ValueEnum;
use serde::Serialize;

use framelab_core::harmonic::{FrameAngle, FrameReport};
use framelab_core::search::SubsetRecord;
use framelab_core::tables::TableRecord;
use framelab_core::verify::SuiteReport;
use framelab_core::{GroupSpec, SearchReport};

use crate::{ClassifyReport, CliResult, GaussReport, OrderSearchReport, PredictReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A report that can also be flattened into rows or prose.
pub trait Tabular: Serialize {
    fn header(&self) -> Vec<&'static str>;
    fn rows(&self) -> Vec<Vec<String>>;
    fn text(&self) -> String;
}

pub fn emit<T: Tabular>(report: &T, format: Format) -> CliResult {
    let stdout = io::stdout();
    render(report, format, &mut stdout.lock())
}

fn render<T: Tabular, W: Write>(report: &T, format: Format, out: &mut W) -> CliResult {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report).context("writing JSON")?;
            writeln!(out).context("writing output")?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(report.header()).context("writing CSV")?;
            for row in report.rows() {
                w.write_record(row).context("writing CSV")?;
            }
            w.flush().context("writing CSV")?;
        }
        Format::Text => write!(out, "{}", report.text()).context("writing output")?,
    }
    Ok(())
}

fn join_values(angles: &[FrameAngle]) -> String {
    angles.iter().map(|a| a.value.to_string()).collect::<Vec<_>>().join(";")
}

fn join_mults(angles: &[FrameAngle]) -> String {
    angles.iter().map(|a| a.multiplicity.to_string()).collect::<Vec<_>>().join(";")
}

fn angle_lines(angles: &[FrameAngle]) -> String {
    let mut s = String::new();
    for a in angles {
        let sym = a.symbolic.as_deref().map(|x| format!(" = {x}")).unwrap_or_default();
        s += &format!("  {:.12}{sym}  x{}\n", a.value, a.multiplicity);
    }
    s
}

impl Tabular for FrameReport {
    fn header(&self) -> Vec<&'static str> {
        vec!["group", "subset", "angle", "multiplicity", "symbolic"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let subset = GroupSpec::format_subset(&self.subset);
        self.angles
            .iter()
            .map(|a| {
                vec![
                    self.group.to_string(),
                    subset.clone(),
                    a.value.to_string(),
                    a.multiplicity.to_string(),
                    a.symbolic.clone().unwrap_or_default(),
                ]
            })
            .collect()
    }

    fn text(&self) -> String {
        let mut s = format!(
            "{} {}: n = {}, m = {}, {} ({} angles{})\n",
            self.group,
            GroupSpec::format_subset(&self.subset),
            self.n,
            self.m,
            self.angularity.label(),
            self.angles.len(),
            if self.is_tight { ", tight" } else { "" },
        );
        if let Some(w) = self.welch_bound {
            s += &format!("welch bound {w:.12}\n");
        }
        s + &angle_lines(&self.angles)
    }
}

impl Tabular for ClassifyReport {
    fn header(&self) -> Vec<&'static str> {
        vec!["group", "subset", "n", "m", "tags", "count_values", "angularity", "angles", "multiplicities"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let c = &self.classification;
        vec![vec![
            c.group.to_string(),
            GroupSpec::format_subset(&c.subset),
            c.n.to_string(),
            c.m.to_string(),
            self.tags.join(";"),
            c.count_values.iter().map(u32::to_string).collect::<Vec<_>>().join(";"),
            self.frame.angularity.label(),
            join_values(&self.frame.angles),
            join_mults(&self.frame.angles),
        ]]
    }

    fn text(&self) -> String {
        let c = &self.classification;
        let mut s = format!(
            "{} {}: {}\n",
            c.group,
            GroupSpec::format_subset(&c.subset),
            if self.tags.is_empty() { "no class".to_string() } else { self.tags.join(", ") }
        );
        if let Some(d) = &c.difference_set {
            s += &format!("difference set ({}, {}, {})\n", d.n, d.m, d.lambda);
        }
        if let Some(d) = &c.divisible {
            s += &format!("divisible ({}, {}, {}, {}, {})\n", d.n, d.m, d.l, d.lambda, d.mu);
        }
        if let Some(r) = &c.relative {
            s += &format!("relative ({}, {}, {}, {})\n", r.n, r.m, r.l, r.mu);
        }
        if let Some(p) = c.partial.as_ref().filter(|p| p.proper) {
            s += &format!("partial ({}, {}, {}, {})\n", p.n, p.m, p.lambda, p.mu);
        }
        if let Some(a) = &c.almost {
            s += &format!("almost ({}, {}, {}, {})\n", a.n, a.m, a.lambda, a.t);
        }
        for b in &c.bidifference {
            s += &format!("bidifference ({}, {}, {}, {}, {})\n", b.n, b.m, b.l, b.lambda, b.mu);
        }
        if let Some(ch) = &c.nested_divisible {
            s += &format!("nested chain orders {:?}, counts {:?}\n", ch.orders(), ch.lambdas);
        }
        s + &self.frame.text()
    }
}

impl Tabular for PredictReport {
    fn header(&self) -> Vec<&'static str> {
        vec!["class", "n", "m", "angle", "symbolic", "multiplicity"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let p = &self.prediction;
        p.angles
            .iter()
            .map(|a| {
                vec![
                    format!("{:?}", p.class).to_lowercase(),
                    p.n.to_string(),
                    p.m.to_string(),
                    a.value.to_string(),
                    a.symbolic.clone(),
                    a.multiplicity.map(|x| x.to_string()).unwrap_or_default(),
                ]
            })
            .collect()
    }

    fn text(&self) -> String {
        let p = &self.prediction;
        let mut s = format!("{:?} prediction, n = {}, m = {}{}\n", p.class, p.n, p.m, if p.etf { ", equiangular" } else { "" });
        for a in &p.angles {
            let mult = a.multiplicity.map(|x| format!("  x{x}")).unwrap_or_default();
            s += &format!("  {:.12} = {}{mult}\n", a.value, a.symbolic);
        }
        if let Some(b) = p.biangular {
            s += &format!("biangular: {b}\n");
        }
        if let Some(note) = &p.multiplicity_note {
            s += &format!("note: {note}\n");
        }
        s
    }
}

impl Tabular for GaussReport {
    fn header(&self) -> Vec<&'static str> {
        vec!["p", "a", "legendre", "gauss_re", "gauss_im", "closed_re", "closed_im", "deviation", "half_re", "half_im", "half_deviation"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|e| {
                vec![
                    self.p.to_string(),
                    e.a.to_string(),
                    e.legendre.to_string(),
                    e.gauss_sum.value.re.to_string(),
                    e.gauss_sum.value.im.to_string(),
                    e.gauss_sum.closed_form.re.to_string(),
                    e.gauss_sum.closed_form.im.to_string(),
                    e.gauss_deviation.to_string(),
                    e.half_gauss_sum.value.re.to_string(),
                    e.half_gauss_sum.value.im.to_string(),
                    e.half_gauss_deviation.to_string(),
                ]
            })
            .collect()
    }

    fn text(&self) -> String {
        let mut s = format!("p = {}\nsquares {:?}\n", self.p, self.squares.elements);
        if let Some(c) = &self.quartic_cosets {
            for (j, coset) in c.cosets.iter().enumerate() {
                s += &format!("{}^{j} R4 {:?}\n", c.generator, coset);
            }
        }
        for e in &self.entries {
            s += &format!(
                "a = {:>3}  ({:>2})  g = {:.9} {:+.9}i  dev {:.1e}\n",
                e.a, e.legendre, e.gauss_sum.value.re, e.gauss_sum.value.im, e.gauss_deviation
            );
        }
        s
    }
}

#[derive(Serialize)]
struct TableReport<'a> {
    schema: u32,
    rows: &'a [TableRecord],
}

pub fn emit_table_records(records: &[TableRecord], format: Format) -> CliResult {
    let mut out = io::stdout().lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &TableReport { schema: 1, rows: records }).context("writing JSON")?;
            writeln!(out).context("writing output")?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            for r in records {
                w.serialize(r).context("writing CSV")?;
            }
            w.flush().context("writing CSV")?;
        }
        Format::Text => {
            for r in records {
                writeln!(
                    out,
                    "{:<7} T{}r{} {:<24} {} | a1 = {}, a2 = {}{}",
                    format!("{:?}", r.status).to_uppercase(),
                    r.table,
                    r.row,
                    r.sample,
                    r.parameters,
                    r.alpha1_formula,
                    r.alpha2_formula,
                    r.reason.as_deref().map(|x| format!(" ({x})")).unwrap_or_default(),
                )
                .context("writing output")?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    schema: u32,
    passed: bool,
    suites: &'a [SuiteReport],
}

pub fn emit_verify(reports: &[SuiteReport], format: Format) -> CliResult {
    let mut out = io::stdout().lock();
    match format {
        Format::Json => {
            let r = VerifyReport { schema: 1, passed: reports.iter().all(|r| r.passed), suites: reports };
            serde_json::to_writer_pretty(&mut out, &r).context("writing JSON")?;
            writeln!(out).context("writing output")?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["suite", "assertion", "passed", "detail"]).context("writing CSV")?;
            for r in reports {
                for a in &r.assertions {
                    w.write_record([r.suite.as_str(), &a.name, if a.passed { "true" } else { "false" }, &a.detail])
                        .context("writing CSV")?;
                }
            }
            w.flush().context("writing CSV")?;
        }
        Format::Text => {
            for r in reports {
                for a in &r.assertions {
                    let status = if a.passed { "PASS" } else { "FAIL" };
                    let detail = if a.detail.is_empty() { String::new() } else { format!("  [{}]", a.detail) };
                    writeln!(out, "{status} {}: {}{detail}", r.suite, a.name).context("writing output")?;
                }
                writeln!(
                    out,
                    "{} {} ({} assertions, {:.0} ms)",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.suite,
                    r.assertions.len(),
                    r.elapsed_ms
                )
                .context("writing output")?;
            }
        }
    }
    Ok(())
}

pub enum Render {
    Single(Box<SearchReport>),
    Order(OrderSearchReport),
}

impl Render {
    fn reports(&self) -> &[SearchReport] {
        match self {
            Render::Single(r) => std::slice::from_ref(r),
            Render::Order(o) => &o.reports,
        }
    }
}

impl Serialize for Render {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Render::Single(r) => r.serialize(s),
            Render::Order(o) => o.serialize(s),
        }
    }
}

fn record_row(group: &GroupSpec, r: &SubsetRecord) -> Vec<String> {
    vec![
        group.to_string(),
        GroupSpec::format_subset(&r.subset),
        r.tags.join(";"),
        r.angularity.label(),
        join_values(&r.profile.angles),
        join_mults(&r.profile.angles),
    ]
}

impl Tabular for Render {
    fn header(&self) -> Vec<&'static str> {
        vec!["group", "subset", "tags", "angularity", "angles", "multiplicities"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.reports()
            .iter()
            .flat_map(|rep| rep.records.iter().map(move |r| record_row(&rep.group, r)))
            .collect()
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for rep in self.reports() {
            s += &format!(
                "{} m = {} ({:?}): {} of {} subsets match [{}] in {:.0} ms\n",
                rep.group,
                rep.m,
                rep.mode,
                rep.matched,
                rep.total_subsets,
                rep.filters.join(", "),
                rep.stats.elapsed_ms
            );
            for (class, count) in &rep.matches.class_counts {
                s += &format!("  {class}: {count}\n");
            }
            for set in &rep.matches.angle_sets {
                let names: Vec<String> = set
                    .angles
                    .iter()
                    .zip(set.symbolic.iter().chain(std::iter::repeat(&None)))
                    .map(|(v, sym)| sym.clone().unwrap_or_else(|| format!("{v:.9}")))
                    .collect();
                s += &format!("  angles {{{}}}: {}\n", names.join(", "), set.count);
            }
            for r in &rep.records {
                s += &format!("  {} {} [{}]\n", GroupSpec::format_subset(&r.subset), r.angularity.label(), r.tags.join(", "));
            }
        }
        s
    }
}

pub fn write_search(body: &Render, format: Format, out: Option<&Path>) -> CliResult {
    match out {
        None => emit(body, format),
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = io::BufWriter::new(file);
            render(body, format, &mut w)?;
            w.flush().with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {} ({} matches)", path.display(), body.reports().iter().map(|r| r.matched).sum::<u64>());
            Ok(())
        }
    }
}
