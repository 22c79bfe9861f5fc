//! Run configuration and the JSON / CSV / text report.
//!
//! Schema (field names are stable):
//!
//! ```text
//! { "config":  { max_n, oracle_check, workers, output_format, seed },
//!   "results": [ { id, kind, pattern_sets, counts, family, claimed?,
//!                  derivation?, status, witness?, notes? } ],
//!   "summary": { pass, fail, unknown } }
//! ```
//!
//! Results are kept in the order they were produced, which is fixed for a
//! given command, so the same config and seed give byte-identical output.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classify::{ClassifiedClass, Coverage, DedupeReport, DerivationCheck, RandomCheck, RowCheck};
use crate::error::{Error, Result};
use crate::lemmas::{LemmaKind, LemmaRecord, NegativeControl};
use crate::pattern::{PatternSet, Permutation};
use crate::sequences::Identification;

pub const DEFAULT_MAX_N: usize = 9;
/// Longest window when the naive oracle runs alongside.
pub const MAX_N_WITH_ORACLE: usize = 10;
pub const MAX_N_WITHOUT_ORACLE: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        match text.to_ascii_lowercase().as_str() {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Data(format!("unknown output format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub max_n: usize,
    /// Cross-check counts against the naive filter for `n <= 8`.
    pub oracle_check: bool,
    pub workers: usize,
    pub output_format: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_n: DEFAULT_MAX_N,
            oracle_check: true,
            workers: std::thread::available_parallelism().map_or(1, usize::from),
            output_format: OutputFormat::Text,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let max = if self.oracle_check {
            MAX_N_WITH_ORACLE
        } else {
            MAX_N_WITHOUT_ORACLE
        };
        if self.max_n == 0 || self.max_n > max {
            return Err(Error::LengthOutOfRange {
                n: self.max_n,
                min: 1,
                max,
            });
        }
        if self.workers == 0 {
            return Err(Error::Data("workers must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub id: String,
    pub kind: String,
    pub pattern_sets: Vec<PatternSet>,
    pub counts: Vec<u64>,
    /// Family identified from the counts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Identification>,
    /// Family claimed by the table, verbatim.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation: Option<DerivationCheck>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Permutation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ResultRecord {
    pub fn new(id: impl Into<String>, kind: &str, status: Status) -> Self {
        ResultRecord {
            id: id.into(),
            kind: kind.to_string(),
            pattern_sets: Vec::new(),
            counts: Vec::new(),
            family: None,
            claimed: None,
            derivation: None,
            status,
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn from_row(row: &RowCheck) -> Self {
        let mut notes = row.notes.clone();
        if row.structure_ok == Some(true) {
            notes.push("avoiders match the explicit structure".into());
        }
        if row.oracle_ok == Some(false) {
            notes.push("naive oracle disagrees".into());
        }
        ResultRecord {
            pattern_sets: vec![row.patterns.clone()],
            counts: row.counts.clone(),
            family: Some(row.identification.clone()),
            claimed: Some(row.claimed.text.clone()),
            derivation: row.derivation.clone(),
            witness: row.witness.clone(),
            notes,
            ..ResultRecord::new(format!("table{}/{}", row.table_id, row.label), "table_row", Status::from_bool(row.passed()))
        }
    }

    pub fn from_lemma(lemma: &LemmaRecord) -> Self {
        let kind = match lemma.kind {
            LemmaKind::Closure => "closure",
            LemmaKind::ContainmentImplication => "implication",
            LemmaKind::Structure => "structure",
        };
        let mut record = ResultRecord::new(lemma.id.clone(), kind, Status::from_bool(lemma.holds));
        record.witness = lemma.witness.clone();
        record.notes.push(match &lemma.generator {
            Some(g) => format!("{g} => {} for n <= {}", lemma.conclusion, lemma.verified_up_to),
            None => format!("{} => {} for n <= {}", lemma.premise, lemma.conclusion, lemma.verified_up_to),
        });
        record.pattern_sets = match &lemma.generator {
            Some(g) => g.expand(),
            None => vec![lemma.premise.clone()],
        };
        record
    }

    /// A negative control passes when the statement fails with the expected
    /// witness.
    pub fn from_negative_control(control: &NegativeControl) -> Self {
        let mut record = ResultRecord::from_lemma(&control.record);
        record.kind = "negative_control".into();
        record.status = Status::from_bool(control.confirmed());
        record.notes.push(format!("expected to fail with witness {}", control.expected_witness));
        record
    }

    pub fn from_class(class: &ClassifiedClass) -> Self {
        let status = if !class.consistent() {
            Status::Fail
        } else if class.table_rows.is_empty() {
            Status::Unknown
        } else {
            Status::Pass
        };
        let id = class.class.name.clone().unwrap_or_else(|| class.class.canonical.to_string());
        let mut notes: Vec<String> = class
            .table_rows
            .iter()
            .map(|r| format!("table {} {}: {}{}", r.table_id, r.label, r.claimed, if r.agrees { "" } else { " (disagrees)" }))
            .collect();
        if class.oracle_agrees == Some(false) {
            notes.push("naive oracle disagrees".into());
        }
        ResultRecord {
            pattern_sets: class.class.members.clone(),
            counts: class.counts.clone(),
            family: Some(class.identification.clone()),
            notes,
            ..ResultRecord::new(id, "class", status)
        }
    }

    pub fn from_dedupe(report: &DedupeReport) -> Self {
        let ok = report.claimed_distinct.is_none_or(|c| c == report.distinct);
        let mut record = ResultRecord::new(format!("dedupe{}", report.table_id), "dedupe", Status::from_bool(ok));
        record.notes.push(format!("{} raw sets, {} distinct symmetry classes", report.raw, report.distinct));
        if let Some(c) = report.claimed_distinct {
            record.notes.push(format!("claimed {c} distinct classes"));
        }
        let rows: Vec<String> = report.duplicate_rows.iter().map(ToString::to_string).collect();
        record.notes.push(format!("duplicates from box-rows {}", rows.join(", ")));
        for d in &report.duplicates {
            record.notes.push(format!("{} repeats {}", d.label, d.same_class_as));
        }
        record
    }

    pub fn from_coverage(coverage: &Coverage) -> Self {
        let mut record = ResultRecord::new(format!("coverage{}", coverage.k), "coverage", Status::from_bool(coverage.exact()));
        record.notes.push(format!("{} classes, {} table rows", coverage.classes, coverage.rows));
        record.pattern_sets = coverage.unlisted_classes.clone();
        for shared in &coverage.shared_classes {
            record.notes.push(format!("rows in one class: {}", shared.join(", ")));
        }
        record
    }

    pub fn from_random(check: &RandomCheck) -> Self {
        let mut record = ResultRecord::new(check.id.clone(), &check.kind, Status::from_bool(check.ok));
        record.pattern_sets = vec![check.set.clone()];
        record.counts = check.counts.clone();
        record
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub results: Vec<ResultRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: RunConfig, results: Vec<ResultRecord>) -> Self {
        let mut summary = Summary::default();
        for r in &results {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Unknown => summary.unknown += 1,
            }
        }
        Report {
            config,
            results,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Data(e.to_string()))
    }

    /// One row per `(result, n)`; results without counts get a single row.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["id", "kind", "status", "pattern_sets", "family", "n", "count"])
            .expect("in-memory write");
        for r in &self.results {
            let sets = r.pattern_sets.iter().map(ToString::to_string).collect::<Vec<_>>().join(" | ");
            let family = r.family.as_ref().map(ToString::to_string).unwrap_or_default();
            let head = [r.id.as_str(), r.kind.as_str(), r.status.label(), sets.as_str(), family.as_str()];
            if r.counts.is_empty() {
                writer.write_record(head.iter().copied().chain(["", ""])).expect("in-memory write");
            }
            for (i, c) in r.counts.iter().enumerate() {
                let (n, c) = ((i + 1).to_string(), c.to_string());
                writer
                    .write_record(head.iter().copied().chain([n.as_str(), c.as_str()]))
                    .expect("in-memory write");
            }
        }
        String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let _ = write!(out, "{:<7} {}", r.status.label(), r.id);
            if let [set] = r.pattern_sets.as_slice() {
                let _ = write!(out, "  {set}");
            }
            if !r.counts.is_empty() {
                let counts: Vec<String> = r.counts.iter().map(ToString::to_string).collect();
                let _ = write!(out, "  [{}]", counts.join(", "));
            }
            if let Some(f) = &r.family {
                let _ = write!(out, "  {f}");
            }
            if let Some(w) = &r.witness {
                let _ = write!(out, "  witness {w}");
            }
            out.push('\n');
            for note in &r.notes {
                let _ = writeln!(out, "        {note}");
            }
        }
        let s = self.summary;
        let _ = writeln!(out, "summary: {} pass, {} fail, {} unknown", s.pass, s.fail, s.unknown);
        out
    }

    pub fn render(&self) -> String {
        match self.config.output_format {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Json => self.to_json() + "\n",
            OutputFormat::Csv => self.to_csv(),
        }
    }
}
