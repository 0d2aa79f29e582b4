//! Gold annotations and corpus-wide comparison.

use std::fmt::Write;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{analyze, AnalysisReport};
use crate::argumentation::{AmbiguityKind, DeviceKind};
use crate::corpus::{load_report, Span};
use crate::error::{Error, Result};
use crate::events::{EvidenceKind, ImpactStatus};
use crate::knowledge::KnowledgeBase;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedDevice {
    pub kind: DeviceKind,
    /// Text whose first occurrence in the report the device must overlap.
    pub trigger: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedReading {
    pub kind: AmbiguityKind,
    pub trigger: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldAnnotation {
    pub report_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_entity_count: Option<usize>,
    pub expected_impact_status: ImpactStatus,
    /// Exact multiset of impact evidence kinds.
    pub expected_clue_kinds: Vec<EvidenceKind>,
    /// Devices that must be found; extra devices are only reported.
    #[serde(default)]
    pub expected_devices: Vec<ExpectedDevice>,
    /// One entry per ambiguity site, with the reading that must be chosen.
    #[serde(default)]
    pub expected_chosen_readings: Vec<ExpectedReading>,
}

pub fn load_gold(path: impl AsRef<Path>) -> Result<GoldAnnotation> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Gold {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Result of checking one analysis against its gold annotation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GoldOutcome {
    pub mismatches: Vec<String>,
    /// Devices found but not annotated; informative only.
    pub false_positives: Vec<String>,
}

impl GoldOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn trigger_span(body: &str, trigger: &str) -> Option<Span> {
    let byte = body.find(trigger)?;
    let start = body[..byte].chars().count();
    Some(Span::new(start, start + trigger.chars().count()))
}

fn label<T: Serialize>(v: T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

pub fn compare_gold(gold: &GoldAnnotation, analysis: &AnalysisReport, body: &str) -> GoldOutcome {
    let mut out = GoldOutcome::default();
    if gold.report_id != analysis.report_id {
        out.mismatches.push(format!(
            "gold is for `{}`, analysis for `{}`",
            gold.report_id, analysis.report_id
        ));
    }
    if let Some(n) = gold.expected_entity_count {
        if analysis.entities.len() != n {
            out.mismatches.push(format!(
                "entities: expected {n}, found {}",
                analysis.entities.len()
            ));
        }
    }
    let status = analysis.impact.as_ref().map(|i| i.status);
    if status != Some(gold.expected_impact_status) {
        out.mismatches.push(format!(
            "impact: expected {}, found {}",
            label(gold.expected_impact_status),
            status.map_or("none".to_string(), label)
        ));
    }
    let mut want = gold.expected_clue_kinds.clone();
    let mut got: Vec<EvidenceKind> = analysis
        .impact
        .iter()
        .flat_map(|i| i.evidence.iter().map(|e| e.kind))
        .collect();
    want.sort();
    got.sort();
    if want != got {
        out.mismatches.push(format!(
            "clues: expected [{}], found [{}]",
            want.iter().map(label).collect::<Vec<_>>().join(", "),
            got.iter().map(label).collect::<Vec<_>>().join(", ")
        ));
    }

    let mut matched = vec![false; analysis.devices.len()];
    for exp in &gold.expected_devices {
        let Some(span) = trigger_span(body, &exp.trigger) else {
            out.mismatches.push(format!(
                "device trigger `{}` does not occur in the text",
                exp.trigger
            ));
            continue;
        };
        let hit = analysis
            .devices
            .iter()
            .position(|d| d.kind == exp.kind && d.span.overlaps(span));
        match hit {
            Some(i) => matched[i] = true,
            None => out
                .mismatches
                .push(format!("missing device {} at `{}`", exp.kind, exp.trigger)),
        }
    }
    for (d, m) in analysis.devices.iter().zip(&matched) {
        if !m {
            let text: String = body
                .chars()
                .skip(d.span.start)
                .take(d.span.end - d.span.start)
                .collect();
            out.false_positives.push(format!("{} at `{text}`", d.kind));
        }
    }

    if gold.expected_chosen_readings.len() != analysis.ambiguity_sites.len() {
        out.mismatches.push(format!(
            "ambiguity sites: expected {}, found {}",
            gold.expected_chosen_readings.len(),
            analysis.ambiguity_sites.len()
        ));
    }
    for exp in &gold.expected_chosen_readings {
        let Some(span) = trigger_span(body, &exp.trigger) else {
            out.mismatches.push(format!(
                "ambiguity trigger `{}` does not occur in the text",
                exp.trigger
            ));
            continue;
        };
        let site = analysis
            .ambiguity_sites
            .iter()
            .find(|s| s.kind == exp.kind && s.span.overlaps(span));
        match site.and_then(|s| s.chosen()) {
            Some(r) if r.label == exp.label => {}
            Some(r) => out.mismatches.push(format!(
                "ambiguity at `{}`: expected {}, chose {}",
                exp.trigger, exp.label, r.label
            )),
            None => out.mismatches.push(format!(
                "no resolved {} site at `{}`",
                label(exp.kind),
                exp.trigger
            )),
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct CorpusRow {
    pub id: String,
    pub path: PathBuf,
    pub analysis: AnalysisReport,
    /// `None` when the report has no gold file.
    pub outcome: Option<GoldOutcome>,
}

impl CorpusRow {
    fn ambiguity(&self) -> String {
        let chosen: Vec<&str> = self
            .analysis
            .ambiguity_sites
            .iter()
            .filter_map(|s| s.chosen().map(|r| r.label.as_str()))
            .collect();
        if chosen.is_empty() {
            "-".to_string()
        } else {
            chosen.join("; ")
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct CorpusRun {
    pub rows: Vec<CorpusRow>,
    pub warnings: Vec<String>,
}

impl CorpusRun {
    pub fn passed(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.outcome.as_ref().is_none_or(GoldOutcome::passed))
    }

    pub fn render_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<6} {:>8} {:<9} {:>3} {:>3}  {:<6} ambiguity",
            "id", "entities", "impact", "#A", "#B", "gold"
        );
        for r in &self.rows {
            let sum = r.analysis.summary();
            let impact = r
                .analysis
                .impact
                .as_ref()
                .map_or("none".to_string(), |i| label(i.status));
            let gold = match &r.outcome {
                None => "-",
                Some(o) if o.passed() => "pass",
                Some(_) => "FAIL",
            };
            let _ = writeln!(
                s,
                "{:<6} {:>8} {:<9} {:>3} {:>3}  {:<6} {}",
                r.id,
                r.analysis.entities.len(),
                impact,
                sum.a_count,
                sum.b_count,
                gold,
                r.ambiguity()
            );
            if let Some(o) = &r.outcome {
                for m in &o.mismatches {
                    let _ = writeln!(s, "       mismatch: {m}");
                }
                for f in &o.false_positives {
                    let _ = writeln!(s, "       extra: {f}");
                }
            }
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        s
    }
}

/// `T2` before `T10`.
fn natural_key(id: &str) -> (String, u64, String) {
    let prefix: String = id.chars().take_while(|c| !c.is_ascii_digit()).collect();
    let digits: String = id[prefix.len()..]
        .chars()
        .take_while(char::is_ascii_digit)
        .collect();
    let rest = id[prefix.len() + digits.len()..].to_string();
    (prefix, digits.parse().unwrap_or(0), rest)
}

/// Analyses every `*.txt` report in `corpus_dir` and checks it against
/// `<id>.gold.json` in `gold_dir` when present.
pub fn run_corpus(corpus_dir: &Path, gold_dir: &Path, kb: &KnowledgeBase) -> Result<CorpusRun> {
    let mut paths: Vec<PathBuf> = fs::read_dir(corpus_dir)
        .map_err(|e| Error::io(corpus_dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "txt"))
        .collect();
    let reports = paths
        .drain(..)
        .map(|p| load_report(&p).map(|r| (p, r)))
        .collect::<Result<Vec<_>>>()?;

    let analyses: Vec<Result<AnalysisReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = reports
            .iter()
            .map(|(_, r)| scope.spawn(move || analyze(r, kb)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("analysis thread panicked"))
            .collect()
    });

    let mut run = CorpusRun::default();
    for ((path, report), analysis) in reports.into_iter().zip(analyses) {
        let analysis = analysis?;
        let gold_path = gold_dir.join(format!("{}.gold.json", report.id));
        let outcome = if gold_path.exists() {
            let gold = load_gold(&gold_path)?;
            Some(compare_gold(&gold, &analysis, &report.body))
        } else {
            run.warnings
                .push(format!("no gold annotation for {}", report.id));
            None
        };
        run.rows.push(CorpusRow {
            id: report.id,
            path,
            analysis,
            outcome,
        });
    }
    run.rows.sort_by_key(|a| natural_key(&a.id));
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_order() {
        let mut ids = vec!["T10", "T2", "T1", "T15"];
        ids.sort_by_key(|i| natural_key(i));
        assert_eq!(ids, ["T1", "T2", "T10", "T15"]);
    }

    #[test]
    fn trigger_offsets_are_in_chars() {
        assert_eq!(trigger_span("é hit", "hit"), Some(Span::new(2, 5)));
        assert_eq!(trigger_span("abc", "z"), None);
    }

    #[test]
    fn empty_corpus_succeeds() {
        let dir = tempfile::tempdir().unwrap();
        let run = run_corpus(dir.path(), dir.path(), &KnowledgeBase::seed()).unwrap();
        assert!(run.rows.is_empty());
        assert!(run.passed());
    }

    #[test]
    fn corrupt_gold_names_the_file() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("Z1.en.txt"), "Vehicle B hit me.").unwrap();
        fs::write(dir.path().join("Z1.gold.json"), "{ not json").unwrap();
        let err = run_corpus(dir.path(), dir.path(), &KnowledgeBase::seed()).unwrap_err();
        assert!(matches!(&err, Error::Gold { path, .. } if path.ends_with("Z1.gold.json")));
        assert!(err.to_string().contains("Z1.gold.json"));
    }

    #[test]
    fn missing_gold_is_a_warning() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("Z2.en.txt"), "Vehicle B hit me.").unwrap();
        let run = run_corpus(dir.path(), dir.path(), &KnowledgeBase::seed()).unwrap();
        assert_eq!(run.rows.len(), 1);
        assert!(run.passed());
        assert_eq!(run.warnings.len(), 1);
    }
}
