//! Rendering of command results as TSV or JSON.

use bipolar_core::measures::Eq6Report;
use bipolar_core::{Graded, PossibilityDistribution, Rational, VariableTable};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

/// A rectangular result that renders to either format. JSON output is an
/// object holding the rows under `rows` plus any extra top-level fields.
pub trait Report: Serialize {
    fn header(&self) -> &'static [&'static str];
    fn rows(&self) -> Vec<Vec<String>>;

    /// Lines appended to the TSV output after a blank line.
    fn footer(&self) -> Vec<Vec<String>> {
        Vec::new()
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => {
                let mut out = tsv_line(self.header().iter().map(|s| s.to_string()));
                for row in self.rows() {
                    out.push_str(&tsv_line(row));
                }
                let footer = self.footer();
                if !footer.is_empty() {
                    out.push('\n');
                    for row in footer {
                        out.push_str(&tsv_line(row));
                    }
                }
                out
            }
            Format::Json => {
                let mut out = serde_json::to_string_pretty(self).expect("reports serialize");
                out.push('\n');
                out
            }
        }
    }
}

fn tsv_line(cells: impl IntoIterator<Item = String>) -> String {
    let mut line = cells.into_iter().collect::<Vec<_>>().join("\t");
    line.push('\n');
    line
}

#[derive(Debug, Serialize)]
pub struct Eq6Json {
    pub upper_normalized: bool,
    pub lower_vanishes: bool,
    pub holds: bool,
    pub exhaustive: bool,
    pub violation: Option<Vec<String>>,
}

impl Eq6Json {
    pub fn new(report: &Eq6Report, vars: &VariableTable) -> Self {
        Eq6Json {
            upper_normalized: report.upper_normalized,
            lower_vanishes: report.lower_vanishes,
            holds: report.holds(),
            exhaustive: report.exhaustive,
            violation: report.violation.as_ref().map(|e| e.iter().map(|u| vars.label(u)).collect()),
        }
    }

    pub fn tsv(&self) -> Vec<Vec<String>> {
        let yes = |b: bool| if b { "yes" } else { "no" }.to_string();
        let mut rows = vec![
            vec!["eq6-upper-normalized".into(), yes(self.upper_normalized)],
            vec!["eq6-lower-vanishes".into(), yes(self.lower_vanishes)],
            vec!["eq6-holds".into(), yes(self.holds)],
        ];
        if let Some(v) = &self.violation {
            rows.push(vec!["eq6-violation".into(), v.join(", ")]);
        }
        rows
    }
}

#[derive(Debug, Serialize)]
pub struct DistributionRow {
    pub interpretation: String,
    pub lower: String,
    pub upper: String,
}

/// Lower and upper degree of every interpretation.
#[derive(Debug, Serialize)]
pub struct DistributionReport {
    pub vars: Vec<String>,
    pub rows: Vec<DistributionRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eq6: Option<Eq6Json>,
}

impl DistributionReport {
    pub fn new(
        vars: &VariableTable,
        lower: &PossibilityDistribution<Rational>,
        upper: &PossibilityDistribution<Rational>,
    ) -> Self {
        let rows = (0..vars.world_count())
            .map(|u| DistributionRow {
                interpretation: vars.label(u),
                lower: lower.degree(u).render(),
                upper: upper.degree(u).render(),
            })
            .collect();
        DistributionReport { vars: vars.names().to_vec(), rows, consistent: None, eq6: None }
    }
}

impl Report for DistributionReport {
    fn header(&self) -> &'static [&'static str] {
        &["interpretation", "lower", "upper"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| vec![r.interpretation.clone(), r.lower.clone(), r.upper.clone()]).collect()
    }

    fn footer(&self) -> Vec<Vec<String>> {
        self.eq6.as_ref().map(Eq6Json::tsv).unwrap_or_default()
    }
}

#[derive(Debug, Serialize)]
pub struct QueryReport {
    pub formula: String,
    pub delta: String,
    pub pi: String,
    pub necessity: String,
    pub potential_necessity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eq6: Option<Eq6Json>,
}

impl Report for QueryReport {
    fn header(&self) -> &'static [&'static str] {
        &["formula", "delta", "pi", "necessity", "potential_necessity"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.formula.clone(),
            self.delta.clone(),
            self.pi.clone(),
            self.necessity.clone(),
            self.potential_necessity.clone(),
        ]]
    }

    fn footer(&self) -> Vec<Vec<String>> {
        self.eq6.as_ref().map(Eq6Json::tsv).unwrap_or_default()
    }
}

#[derive(Debug, Serialize)]
pub struct ConditionReport {
    pub evidence: String,
    pub hypothesis: String,
    pub delta: String,
    pub pi: String,
    pub necessity: String,
}

impl Report for ConditionReport {
    fn header(&self) -> &'static [&'static str] {
        &["evidence", "hypothesis", "delta", "pi", "necessity"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.evidence.clone(),
            self.hypothesis.clone(),
            self.delta.clone(),
            self.pi.clone(),
            self.necessity.clone(),
        ]]
    }
}

#[derive(Debug, Serialize)]
pub struct Stratum {
    pub order: &'static str,
    pub stratum: usize,
    pub degree: String,
    pub interpretations: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct WopReport {
    pub vars: Vec<String>,
    pub rows: Vec<Stratum>,
}

impl Report for WopReport {
    fn header(&self) -> &'static [&'static str] {
        &["order", "stratum", "degree", "interpretations"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|s| vec![s.order.to_string(), s.stratum.to_string(), s.degree.clone(), s.interpretations.join(", ")])
            .collect()
    }
}

#[derive(Debug, Serialize)]
pub struct Finding {
    pub kind: &'static str,
    pub subject: String,
    pub detail: String,
}

/// Findings of a network check.
#[derive(Debug, Serialize)]
pub struct NetCheckReport {
    pub vars: Vec<String>,
    pub valid: bool,
    pub consistent: bool,
    pub rows: Vec<Finding>,
}

impl Report for NetCheckReport {
    fn header(&self) -> &'static [&'static str] {
        &["kind", "subject", "detail"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|f| vec![f.kind.to_string(), f.subject.clone(), f.detail.clone()]).collect()
    }
}

#[derive(Debug, Serialize)]
pub struct RankedCause {
    pub rank: usize,
    pub cause: String,
    pub cons: String,
    pub rel: String,
}

#[derive(Debug, Serialize)]
pub struct DiagnosisReport {
    pub rows: Vec<RankedCause>,
}

impl Report for DiagnosisReport {
    fn header(&self) -> &'static [&'static str] {
        &["rank", "cause", "cons", "rel"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| vec![r.rank.to_string(), r.cause.clone(), r.cons.clone(), r.rel.clone()]).collect()
    }
}

#[derive(Debug, Serialize)]
pub struct FileStatus {
    pub file: String,
    pub kind: String,
    pub status: &'static str,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub rows: Vec<FileStatus>,
}

impl Report for CheckReport {
    fn header(&self) -> &'static [&'static str] {
        &["file", "kind", "status", "detail"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| vec![r.file.clone(), r.kind.clone(), r.status.to_string(), r.detail.clone()]).collect()
    }
}
