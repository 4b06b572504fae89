//! Report documents and their three renderings: aligned text, CSV and JSON.
//!
//! CSV and JSON print floats in shortest round-trip form, so identical
//! inputs give byte-identical output. Missing values (`quadratic` when the
//! gap vanishes, oracle columns without `--oracle`) are empty CSV cells and
//! absent JSON fields.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bounds::{BoundReport, DegenerateRow, SingularBoundReport};
use crate::certifier::CertificationReport;
use crate::eigensolvers::LanczosDemo;
use crate::error::{Error, Result};
use crate::fuzz::{FuzzConfig, FuzzSummary};
use crate::linalg::Block;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool_version: String,
    /// Subcommand that produced the report.
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Seconds since the Unix epoch; omitted for reproducible output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
}

impl Metadata {
    pub fn new(command: &str, seed: Option<u64>) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            seed,
            generated_at: None,
        }
    }

    pub fn stamped(mut self) -> Self {
        self.generated_at = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDescriptor {
    /// Role in the computation, such as `A`, `B` or `X1`.
    pub role: String,
    pub rows: usize,
    pub cols: usize,
    /// File path, or a generator description.
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportBody {
    Bound(BoundReport),
    Singular(SingularBoundReport),
    OneSided {
        rows: Vec<DegenerateRow>,
    },
    Certification(CertificationReport),
    LanczosDemo(LanczosDemo),
    Fuzz {
        config: FuzzConfig,
        summary: FuzzSummary,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub metadata: Metadata,
    pub matrices: Vec<MatrixDescriptor>,
    pub body: ReportBody,
}

impl ReportDocument {
    pub fn new(metadata: Metadata, matrices: Vec<MatrixDescriptor>, body: ReportBody) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            metadata,
            matrices,
            body,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self =
            serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::Serialization(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    /// Rows of the body in tabular form.
    pub fn table(&self) -> Table {
        self.body.table()
    }

    pub fn to_csv(&self) -> Result<String> {
        self.table().to_csv()
    }

    /// Human-readable summary followed by the table.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in self.body.summary_lines() {
            let _ = writeln!(out, "{line}");
        }
        let table = self.table();
        if !table.rows.is_empty() {
            out.push('\n');
            out.push_str(&table.to_text());
        }
        out
    }
}

/// Header plus rows of already formatted cells.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(usize),
    Float(f64),
    Missing,
    Text(String),
}

impl Cell {
    fn opt(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Float)
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => x.to_string(),
            Cell::Missing => String::new(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format!("{x:.6e}"),
            Cell::Missing => "-".into(),
            Cell::Text(s) => s.clone(),
        }
    }
}

fn block_name(b: Block) -> Cell {
    Cell::Text(
        match b {
            Block::Block1 => "block1",
            Block::Block2 => "block2",
        }
        .into(),
    )
}

impl Table {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let ser = |e: csv::Error| Error::Serialization(e.to_string());
        w.write_record(&self.headers).map_err(ser)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(ser)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Serialization(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::text).collect())
            .collect();
        let widths: Vec<usize> = self
            .headers
            .iter()
            .enumerate()
            .map(|(j, h)| cells.iter().map(|r| r[j].len()).fold(h.len(), usize::max))
            .collect();
        let mut out = String::new();
        let line = |out: &mut String, items: &mut dyn Iterator<Item = String>| {
            let parts: Vec<String> = items
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&mut out, &mut self.headers.iter().map(|h| h.to_string()));
        for r in cells {
            line(&mut out, &mut r.into_iter());
        }
        out
    }
}

impl ReportBody {
    pub fn table(&self) -> Table {
        match self {
            ReportBody::Bound(r) => Table {
                headers: vec![
                    "i",
                    "lambda_tilde",
                    "provenance",
                    "eta_i",
                    "weyl",
                    "quadratic",
                    "main_i",
                    "main_global",
                    "lambda",
                    "true_diff",
                ],
                rows: r
                    .rows
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        vec![
                            Cell::Int(i),
                            Cell::Float(row.lambda_tilde),
                            block_name(row.provenance),
                            Cell::Float(row.eta_i),
                            Cell::Float(row.weyl),
                            Cell::opt(row.quadratic),
                            Cell::Float(row.main_i),
                            Cell::Float(row.main_global),
                            Cell::opt(row.lambda),
                            Cell::opt(row.true_diff),
                        ]
                    })
                    .collect(),
            },
            ReportBody::Singular(r) => Table {
                headers: vec![
                    "i",
                    "sigma_tilde",
                    "provenance",
                    "eta_i",
                    "main_i",
                    "main_global",
                    "sigma",
                    "true_diff",
                ],
                rows: r
                    .rows
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        vec![
                            Cell::Int(i),
                            Cell::Float(row.sigma_tilde),
                            block_name(row.provenance),
                            Cell::Float(row.eta_i),
                            Cell::Float(row.main_i),
                            Cell::Float(row.main_global),
                            Cell::opt(row.sigma),
                            Cell::opt(row.true_diff),
                        ]
                    })
                    .collect(),
            },
            ReportBody::OneSided { rows } => Table {
                headers: vec!["i", "sigma_tilde", "bound", "sigma", "true_diff"],
                rows: rows
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        vec![
                            Cell::Int(i),
                            Cell::Float(row.sigma_tilde),
                            Cell::Float(row.bound),
                            Cell::opt(row.sigma),
                            Cell::opt(row.true_diff),
                        ]
                    })
                    .collect(),
            },
            ReportBody::Certification(r) => certification_table(r),
            ReportBody::LanczosDemo(d) => certification_table(&d.report),
            ReportBody::Fuzz { summary, .. } => Table {
                headers: vec!["kind", "trial", "index", "check", "lhs", "rhs"],
                rows: summary
                    .violations
                    .iter()
                    .map(|v| {
                        vec![
                            Cell::Text(
                                serde_json::to_value(v.kind)
                                    .ok()
                                    .and_then(|x| x.as_str().map(str::to_string))
                                    .unwrap_or_default(),
                            ),
                            Cell::Int(v.trial as usize),
                            Cell::Int(v.index),
                            Cell::Text(v.check.clone()),
                            Cell::Float(v.lhs),
                            Cell::Float(v.rhs),
                        ]
                    })
                    .collect(),
            },
        }
    }

    pub fn summary_lines(&self) -> Vec<String> {
        match self {
            ReportBody::Bound(r) => vec![
                format!("partition m = {}, n = {}", r.m, r.n),
                format!("||E|| = {:.6e}, eta = {:.6e}", r.norm_e, r.eta),
            ],
            ReportBody::Singular(r) => vec![
                format!("blocks (m, n, k, l) = {:?}", r.blocks),
                format!(
                    "epsilon = {:.6e}, eta = {:.6e}, zero tail length = {}",
                    r.epsilon, r.eta, r.tail_len
                ),
            ],
            ReportBody::OneSided { rows } => vec![format!("{} singular values", rows.len())],
            ReportBody::Certification(r) => certification_summary(r),
            ReportBody::LanczosDemo(d) => {
                let mut lines = vec![format!(
                    "dim = {}, steps = {}, seed = {}, selected = {:?}",
                    d.dim, d.steps, d.seed, d.selected
                )];
                lines.extend(certification_summary(&d.report));
                if let Some(med) = d.median_interior_bound() {
                    lines.push(format!("median interior per-column bound = {med:.6e}"));
                }
                lines
            }
            ReportBody::Fuzz { config, summary } => {
                let opt = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.6e}"));
                vec![
                    format!(
                        "trials: eigen {}, singular {}, one-sided {} (seed {}, max dim {})",
                        summary.eigen_trials,
                        summary.singular_trials,
                        summary.one_sided_trials,
                        config.seed,
                        config.max_dim
                    ),
                    format!("zero-gap eigen trials: {}", summary.zero_gap_trials),
                    format!("worst slack eigen: {}", opt(summary.worst_slack_eigen)),
                    format!(
                        "worst slack singular: {}",
                        opt(summary.worst_slack_singular)
                    ),
                    format!(
                        "worst slack one-sided: {}",
                        opt(summary.worst_slack_one_sided)
                    ),
                    format!(
                        "largest zero-tail singular value: {}",
                        opt(summary.max_tail)
                    ),
                    format!(
                        "checks: {}, violations: {}",
                        summary.checks,
                        summary.violations.len()
                    ),
                ]
            }
        }
    }
}

fn certification_summary(r: &CertificationReport) -> Vec<String> {
    vec![
        format!("N = {}, m = {}", r.dim, r.m),
        format!("||R|| = {:.6e}, ||A|| = {:.6e}", r.whole_r_norm, r.norm_a),
    ]
}

fn certification_table(r: &CertificationReport) -> Table {
    Table {
        headers: vec![
            "i",
            "ritz_value",
            "global_index",
            "column_index",
            "col_residual_norm",
            "eta_i",
            "hat_eta_i",
            "per_column_bound",
            "whole_bound",
            "true_error",
            "true_error_column",
        ],
        rows: r
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                vec![
                    Cell::Int(i),
                    Cell::Float(row.ritz_value),
                    Cell::Int(row.global_index),
                    Cell::Int(row.column_index),
                    Cell::Float(row.col_residual_norm),
                    Cell::Float(row.eta_i),
                    Cell::Float(row.hat_eta_i),
                    Cell::Float(row.per_column_bound),
                    Cell::Float(row.whole_bound),
                    Cell::opt(row.true_error),
                    Cell::opt(row.true_error_column),
                ]
            })
            .collect(),
    }
}
