//! Output formats for the subcommands. JSON and CSV output never contains
//! timings, so it is a function of the inputs alone.

use std::fmt::Write as _;

use leibniz_core::cohomology::{BlockAnalysis, CohomologyReport};
use leibniz_core::derivations::DerivationDecomposition;
use leibniz_core::verify::{ClaimStatus, SuiteReport, SCHEMA_VERSION};
use leibniz_core::{AlgebraStructure, IdentityViolation, SparseRationalMatrix, SparseVector};
use serde::Serialize;

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv_text(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> Result<()>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w)?;
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn vector(v: &SparseVector, labels: &[String]) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter().map(|(i, c)| format!("{c} {}", labels[i])).collect::<Vec<_>>().join(" + ")
}

pub fn check(a: &AlgebraStructure, defects: &[IdentityViolation], grading: Option<bool>) -> String {
    let labels = a.labels();
    let mut s = String::new();
    if defects.is_empty() {
        writeln!(s, "leibniz identity: ok").unwrap();
    } else {
        writeln!(s, "leibniz identity: {} violations", defects.len()).unwrap();
        for d in defects {
            let (x, y, z) = d.triple;
            writeln!(s, "  ({}, {}, {}): defect {}", labels[x], labels[y], labels[z], vector(&d.defect, labels)).unwrap();
        }
    }
    let g = match grading {
        Some(true) => "valid",
        Some(false) => "invalid",
        None => "none declared",
    };
    writeln!(s, "grading: {g}").unwrap();
    s
}

#[derive(Serialize)]
struct CohomologyOutput<'a> {
    schema_version: u32,
    cohomology: &'a CohomologyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    blocks: Option<&'a [BlockAnalysis]>,
}

pub fn cohomology_json(report: &CohomologyReport, blocks: Option<&[BlockAnalysis]>) -> Result<String> {
    json(&CohomologyOutput { schema_version: SCHEMA_VERSION, cohomology: report, blocks })
}

const COHOMOLOGY_COLUMNS: [&str; 11] = [
    "kind",
    "n",
    "degree",
    "dim_z",
    "dim_b",
    "dim_h",
    "signature",
    "cocycle_dim",
    "projection_dim",
    "supported_dim",
    "projection_injective",
];

pub fn cohomology_csv(report: &CohomologyReport, blocks: Option<&[BlockAnalysis]>) -> Result<String> {
    csv_text(|w| {
        w.write_record(COHOMOLOGY_COLUMNS)?;
        let n = report.n.to_string();
        let (z, b, h) = (report.dim_z.to_string(), report.dim_b.to_string(), report.dim_h.to_string());
        w.write_record(["total", &n, "", &z, &b, &h, "", "", "", "", ""])?;
        for d in &report.per_degree {
            w.write_record([
                "degree",
                &n,
                &d.degree.to_string(),
                &d.dim_z.to_string(),
                &d.dim_b.to_string(),
                &d.dim_h.to_string(),
                "",
                "",
                "",
                "",
                "",
            ])?;
        }
        for blk in blocks.unwrap_or_default() {
            w.write_record([
                "block",
                "2",
                &blk.degree.to_string(),
                "",
                "",
                "",
                &blk.signature,
                &blk.cocycle_dim.to_string(),
                &blk.projection_dim.to_string(),
                &blk.supported_dim.to_string(),
                &blk.projection_injective.to_string(),
            ])?;
        }
        Ok(())
    })
}

pub fn cohomology_pretty(report: &CohomologyReport, blocks: Option<&[BlockAnalysis]>) -> String {
    let mut s = String::new();
    let n = report.n;
    writeln!(s, "n = {n}").unwrap();
    writeln!(s, "dim ZL^{n} = {}  dim BL^{n} = {}  dim HL^{n} = {}", report.dim_z, report.dim_b, report.dim_h).unwrap();
    if !report.per_degree.is_empty() {
        writeln!(s, "{:>6} {:>8} {:>8} {:>8}", "degree", "ZL", "BL", "HL").unwrap();
        for d in &report.per_degree {
            writeln!(s, "{:>6} {:>8} {:>8} {:>8}", d.degree, d.dim_z, d.dim_b, d.dim_h).unwrap();
        }
    }
    if let Some(blocks) = blocks {
        writeln!(s, "blocks of ZL^2_(i):").unwrap();
        writeln!(s, "{:>6}  {:<16} {:>8} {:>10} {:>9}  injective", "degree", "block", "cocycles", "projection", "supported").unwrap();
        for b in blocks {
            writeln!(
                s,
                "{:>6}  {:<16} {:>8} {:>10} {:>9}  {}",
                b.degree, b.signature, b.cocycle_dim, b.projection_dim, b.supported_dim, b.projection_injective
            )
            .unwrap();
        }
    }
    s
}

pub fn suite_json(suite: &SuiteReport) -> Result<String> {
    json(suite)
}

pub fn suite_csv(suite: &SuiteReport) -> Result<String> {
    csv_text(|w| {
        w.write_record(["m", "id", "anchor", "expected", "computed", "status"])?;
        for r in &suite.reports {
            for c in &r.claims {
                let status = match c.status {
                    ClaimStatus::Pass => "pass",
                    ClaimStatus::Fail => "fail",
                    ClaimStatus::Skipped => "skipped",
                };
                w.write_record([
                    r.m.to_string(),
                    c.id.clone(),
                    c.anchor.clone(),
                    c.expected.to_string(),
                    c.computed.to_string(),
                    status.to_string(),
                ])?;
            }
        }
        Ok(())
    })
}

pub fn suite_pretty(suite: &SuiteReport) -> String {
    let mut s = String::new();
    for r in &suite.reports {
        let skipped = r.claims.iter().filter(|c| c.status == ClaimStatus::Skipped).count();
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        writeln!(s, "m = {}: {verdict} ({} claims, {skipped} skipped)", r.m, r.claims.len()).unwrap();
        for c in &r.claims {
            let tag = match c.status {
                ClaimStatus::Pass => "ok  ",
                ClaimStatus::Fail => "FAIL",
                ClaimStatus::Skipped => "skip",
            };
            writeln!(s, "  [{tag}] {:<24} {:<48} expected {:<6} computed {}", c.id, c.anchor, c.expected, c.computed).unwrap();
        }
        for o in &r.observations {
            writeln!(s, "  [info] {:<24} {}", o.id, o.value).unwrap();
        }
        let times: Vec<String> = r.timings.iter().map(|(name, d)| format!("{name} {:.1?}", d)).collect();
        writeln!(s, "  time: {}", times.join(", ")).unwrap();
    }
    writeln!(s, "overall: {}", if suite.pass { "PASS" } else { "FAIL" }).unwrap();
    s
}

pub struct DerivationSummary<'a> {
    pub algebra: &'a AlgebraStructure,
    pub dim: usize,
    pub decompositions: Option<&'a [DerivationDecomposition]>,
    pub delta_generators: &'a [SparseRationalMatrix],
    pub note: Option<String>,
}

impl DerivationSummary<'_> {
    fn delta_present(&self) -> bool {
        !self.delta_generators.is_empty() || self.decompositions.is_some_and(|d| d.iter().any(|x| x.has_delta()))
    }
}

#[derive(Serialize)]
struct MapEntry {
    from: String,
    to: String,
    value: String,
}

fn map_entries(m: &SparseRationalMatrix, labels: &[String]) -> Vec<MapEntry> {
    let mut entries: Vec<MapEntry> = Vec::new();
    let mut by_source: Vec<(usize, usize, String)> = m.entries().map(|(q, p, v)| (p, q, v.to_string())).collect();
    by_source.sort();
    for (p, q, v) in by_source {
        entries.push(MapEntry { from: labels[p].clone(), to: labels[q].clone(), value: v });
    }
    entries
}

#[derive(Serialize)]
struct DecompositionOutput {
    a: Vec<String>,
    lambda: String,
    delta: Vec<MapEntry>,
    residual: Vec<MapEntry>,
    exact: bool,
}

#[derive(Serialize)]
struct DerivationOutput {
    schema_version: u32,
    dim: usize,
    delta_present: bool,
    decompositions: Option<Vec<DecompositionOutput>>,
    delta_generators: Vec<Vec<MapEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn derivation_output(s: &DerivationSummary) -> DerivationOutput {
    let labels = s.algebra.labels();
    DerivationOutput {
        schema_version: SCHEMA_VERSION,
        dim: s.dim,
        delta_present: s.delta_present(),
        decompositions: s.decompositions.map(|ds| {
            ds.iter()
                .map(|d| DecompositionOutput {
                    a: d.a.iter().map(ToString::to_string).collect(),
                    lambda: d.lambda.to_string(),
                    delta: map_entries(&d.delta, labels),
                    residual: map_entries(&d.residual, labels),
                    exact: d.is_exact(),
                })
                .collect()
        }),
        delta_generators: s.delta_generators.iter().map(|m| map_entries(m, labels)).collect(),
        note: s.note.clone(),
    }
}

pub fn derivations_json(s: &DerivationSummary) -> Result<String> {
    json(&derivation_output(s))
}

pub fn derivations_csv(s: &DerivationSummary) -> Result<String> {
    let out = derivation_output(s);
    csv_text(|w| {
        w.write_record(["index", "a", "lambda", "delta", "exact"])?;
        for (i, d) in out.decompositions.iter().flatten().enumerate() {
            let delta: Vec<String> = d.delta.iter().map(|e| format!("{}->{}:{}", e.from, e.to, e.value)).collect();
            w.write_record([i.to_string(), d.a.join(" "), d.lambda.clone(), delta.join(" "), d.exact.to_string()])?;
        }
        Ok(())
    })
}

pub fn derivations_pretty(s: &DerivationSummary) -> String {
    let out = derivation_output(s);
    let mut text = String::new();
    writeln!(text, "dim Der = {}", out.dim).unwrap();
    writeln!(text, "Delta present: {}", if out.delta_present { "yes" } else { "no" }).unwrap();
    let fmt_map = |m: &[MapEntry]| {
        if m.is_empty() {
            "0".to_string()
        } else {
            m.iter().map(|e| format!("{}->{} {}", e.from, e.to, e.value)).collect::<Vec<_>>().join(", ")
        }
    };
    if let Some(ds) = &out.decompositions {
        writeln!(text, "basis decompositions d = R_a + lambda P_I + Delta:").unwrap();
        for (i, d) in ds.iter().enumerate() {
            writeln!(text, "  d{i}: a = ({}), lambda = {}, Delta = {}", d.a.join(", "), d.lambda, fmt_map(&d.delta)).unwrap();
            if !d.exact {
                writeln!(text, "      residual = {}", fmt_map(&d.residual)).unwrap();
            }
        }
    }
    for (i, g) in out.delta_generators.iter().enumerate() {
        writeln!(text, "Delta generator {i}: {}", fmt_map(g)).unwrap();
    }
    if let Some(n) = &out.note {
        writeln!(text, "{n}").unwrap();
    }
    text
}
