//! JSON and CSV serialization of certification reports.

use std::io::Write;

use serde::Serialize;

use super::{CertificationReport, ExpectedSign, PointReport, Verdict};
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ReportSummary {
    pub points: usize,
    pub certified: usize,
    pub violations: usize,
    pub hypothesis_unmet: usize,
    pub indeterminate: usize,
}

#[derive(Serialize)]
struct Params {
    a: String,
    c: String,
    sequence: String,
}

#[derive(Serialize)]
struct PointJson<'a> {
    mu: String,
    nu: String,
    exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    zero_coefficients: Option<usize>,
    #[serde(flatten)]
    verdict: &'a Verdict,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    schema: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<&'a str>,
    theorem: &'a str,
    family: String,
    expected_sign: ExpectedSign,
    params: Params,
    order: usize,
    precision_bits: u32,
    summary: ReportSummary,
    points: Vec<PointJson<'a>>,
}

fn output_error(e: impl std::fmt::Display) -> Error {
    Error::Output(e.to_string())
}

impl CertificationReport {
    pub fn summary(&self) -> ReportSummary {
        let mut s = ReportSummary {
            points: self.points.len(),
            ..Default::default()
        };
        for p in &self.points {
            match p.verdict {
                Verdict::Certified => s.certified += 1,
                Verdict::Violation { .. } => s.violations += 1,
                Verdict::HypothesisUnmet { .. } => s.hypothesis_unmet += 1,
                Verdict::Indeterminate { .. } => s.indeterminate += 1,
            }
        }
        s
    }

    /// Pretty-printed JSON. The timestamp is the only field that may vary
    /// between identical runs, so it is supplied by the caller.
    pub fn to_json(&self, timestamp: Option<&str>) -> Result<String> {
        let doc = ReportJson {
            schema: SCHEMA_VERSION,
            timestamp,
            theorem: self.theorem.label(),
            family: self.spec.family.to_string(),
            expected_sign: self.theorem.expected_sign(),
            params: Params {
                a: self.spec.a.to_string(),
                c: self.spec.c.to_string(),
                sequence: self.spec.sequence.to_string(),
            },
            order: self.order,
            precision_bits: self.precision_bits,
            summary: self.summary(),
            points: self
                .points
                .iter()
                .map(|p| PointJson {
                    mu: p.mu.to_string(),
                    nu: p.nu.to_string(),
                    exact: p.exact,
                    zero_coefficients: p.zero_coefficients,
                    verdict: &p.verdict,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).map_err(output_error)
    }

    /// One row per grid point, with a header.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "theorem",
            "mu",
            "nu",
            "order",
            "verdict",
            "exact",
            "violation_index",
            "coefficient",
            "indeterminate_indices",
            "zero_coefficients",
            "reason",
        ])
        .map_err(output_error)?;
        for p in &self.points {
            w.write_record(csv_row(self, p)).map_err(output_error)?;
        }
        w.flush().map_err(output_error)
    }
}

fn csv_row(report: &CertificationReport, p: &PointReport) -> Vec<String> {
    let (label, index, coefficient, indices, reason) = match &p.verdict {
        Verdict::Certified => ("CERTIFIED", String::new(), String::new(), String::new(), String::new()),
        Verdict::Violation { index, coefficient } => {
            ("VIOLATION", index.to_string(), coefficient.clone(), String::new(), String::new())
        }
        Verdict::HypothesisUnmet { reason } => {
            ("HYPOTHESIS_UNMET", String::new(), String::new(), String::new(), reason.clone())
        }
        Verdict::Indeterminate { indices } => (
            "INDETERMINATE",
            String::new(),
            String::new(),
            indices.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "),
            String::new(),
        ),
    };
    vec![
        report.theorem.label().to_string(),
        p.mu.to_string(),
        p.nu.to_string(),
        report.order.to_string(),
        label.to_string(),
        p.exact.to_string(),
        index,
        coefficient,
        indices,
        p.zero_coefficients.map(|z| z.to_string()).unwrap_or_default(),
        reason,
    ]
}
