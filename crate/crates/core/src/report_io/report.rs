//! The JSON verification report.
//!
//! Key order follows field declaration order, every number is an integer,
//! and nothing time- or host-dependent is recorded, so identical inputs,
//! options and seeds give byte-identical reports.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::axioms::{AxiomVerdict, Status};
use crate::duality::DualityReport;
use crate::flats::FlatKind;
use crate::incidence::LineSet;
use crate::tetra::{HarmonicityReport, TripleCensus};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub model: ModelDigest,
    pub axioms: AxiomSection,
    pub flats: FlatSection,
    pub triples: TripleSection,
    pub harmonicity: HarmonicitySection,
    pub duality: DualitySection,
    pub runtime: RuntimeInfo,
    pub seeds: SeedInfo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDigest {
    pub lines: usize,
    pub pairs: usize,
    /// SHA-256 of the canonical model text.
    pub sha256: String,
    pub generator: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomSection {
    pub all_passed: bool,
    pub verdicts: Vec<AxiomVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatEntry {
    pub id: usize,
    pub kind: Option<FlatKind>,
    pub lines: LineSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatSection {
    /// `null` when the catalog was built and labelled; otherwise why not.
    pub error: Option<String>,
    pub total: usize,
    pub points: usize,
    pub planes: usize,
    pub catalog: Vec<FlatEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSection {
    pub skipped: Option<String>,
    pub census: Option<TripleCensus>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicitySection {
    pub skipped: Option<String>,
    pub report: Option<HarmonicityReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualitySection {
    pub unsupported: Option<String>,
    pub report: Option<DualityReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuntimeInfo {
    pub tool: String,
    pub version: String,
    pub schema_version: u32,
}

impl Default for RuntimeInfo {
    fn default() -> Self {
        Self {
            tool: "tetrad".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            schema_version: SCHEMA_VERSION,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedInfo {
    pub mode: String,
    pub seed: u64,
    /// Incident pairs sampled for axioms 2.2 and 2.3, if any.
    pub axiom_pair_samples: Option<usize>,
    /// Quadruples drawn by a sampled harmonicity survey, if any.
    pub survey_samples: Option<u64>,
    /// Triples and quadruples drawn per flat by a sampled duality check.
    pub duality_per_flat: Option<usize>,
}

/// What `check` signals through its exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Axioms hold and every tetrad is harmonic.
    AllHold,
    /// Some axiom does not hold.
    AxiomFailure,
    /// Axioms hold but harmonicity does not.
    HarmonicityFails,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::AllHold => 0,
            Outcome::AxiomFailure => 1,
            Outcome::HarmonicityFails => 2,
        }
    }
}

impl VerificationReport {
    pub fn outcome(&self) -> Outcome {
        if !self.axioms.all_passed {
            return Outcome::AxiomFailure;
        }
        match &self.harmonicity.report {
            Some(h) if h.axiom_h_holds => Outcome::AllHold,
            _ => Outcome::HarmonicityFails,
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn emit_report(report: &VerificationReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report is serializable");
    s.push('\n');
    s
}

pub fn parse_report(text: &str) -> Result<VerificationReport, serde_json::Error> {
    serde_json::from_str(text)
}

/// A short human-readable summary.
pub fn render_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let m = &r.model;
    let _ = writeln!(
        out,
        "model: {} lines, {} incident pairs, sha256 {}{}",
        m.lines,
        m.pairs,
        &m.sha256[..16.min(m.sha256.len())],
        m.generator
            .as_ref()
            .map(|g| format!(", generator {g}"))
            .unwrap_or_default()
    );
    for v in &r.axioms.verdicts {
        let status = match v.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "N/A",
        };
        let sampled = v
            .sampling
            .map(|s| {
                format!(
                    " (sampled {} of {}, seed {})",
                    s.samples, s.population, s.seed
                )
            })
            .unwrap_or_default();
        let id = v.axiom.to_string();
        let _ = write!(out, "axiom {id:<8} {status:<5} {} cases{sampled}", v.cases);
        if let Some(w) = &v.counterexample {
            let _ = write!(out, "  {}", serde_json::to_string(w).unwrap_or_default());
        }
        out.push('\n');
    }
    match &r.flats.error {
        None => {
            let _ = writeln!(
                out,
                "flats: {} ({} POINT, {} PLANE)",
                r.flats.total, r.flats.points, r.flats.planes
            );
        }
        Some(e) => {
            let _ = writeln!(out, "flats: {} found, unlabelled: {e}", r.flats.total);
        }
    }
    if let Some(c) = &r.triples.census {
        let _ = writeln!(
            out,
            "triples: {} total, {} flat pencil, {} plane triads, {} point triads",
            c.total, c.flat_pencil, c.plane_triad, c.point_triad
        );
    }
    match (&r.harmonicity.report, &r.harmonicity.skipped) {
        (Some(h), _) => {
            let _ = writeln!(
                out,
                "harmonicity ({}): PLANE {} over {} tetrads, POINT {} over {} tetrads, agree={}, [H]={}",
                r.seeds.mode,
                serde_name(&h.plane.verdict),
                h.plane.tetrads,
                serde_name(&h.point.verdict),
                h.point.tetrads,
                h.verdicts_agree,
                h.axiom_h_holds
            );
        }
        (None, Some(why)) => {
            let _ = writeln!(out, "harmonicity: skipped ({why})");
        }
        (None, None) => {}
    }
    match (&r.duality.report, &r.duality.unsupported) {
        (Some(d), _) => {
            let _ = writeln!(out, "duality: all_passed={}", d.all_passed);
        }
        (None, Some(why)) => {
            let _ = writeln!(out, "duality: unsupported ({why})");
        }
        (None, None) => {}
    }
    let _ = writeln!(out, "mode {} seed {}", r.seeds.mode, r.seeds.seed);
    out
}

fn serde_name<T: Serialize>(value: &T) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}
